#include "causelab/causet.hpp"

#include <algorithm>
#include <unordered_map>

#include "causelab/errors.hpp"

namespace causelab {

std::vector<int> Region::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

namespace {

// Finds a cycle in the (unclosed) successor lists by DFS; returns it as a
// path v0 -> v1 -> ... -> v0, or empty when the relation is acyclic.
std::vector<int> find_cycle(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> state(n, 0), parent(n, -1);
  for (int root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj[v].size()) {
        const int w = adj[v][next++];
        if (state[w] == 1) {
          std::vector<int> cycle{w};
          for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
          cycle.push_back(w);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (state[w] == 0) {
          state[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

Causet Causet::from_indices(std::vector<std::string> elements,
                            const std::vector<std::pair<int, int>>& relations) {
  const int n = static_cast<int>(elements.size());
  if (n > Region::kMaxElements) {
    throw LimitError("causet has " + std::to_string(n) + " elements; at most " +
                     std::to_string(Region::kMaxElements) + " are supported");
  }
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < n; ++i) {
      if (!seen.emplace(elements[i], i).second) {
        throw DuplicateElementError("duplicate element '" + elements[i] + "'");
      }
    }
  }
  std::vector<std::vector<int>> adj(n);
  for (auto [x, y] : relations) {
    if (x < 0 || y < 0 || x >= n || y >= n) {
      throw UnknownElementError("relation index out of range");
    }
    adj[x].push_back(y);
  }
  if (auto cycle = find_cycle(adj); !cycle.empty()) {
    std::string msg = "relation is cyclic: ";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) msg += " < ";
      msg += elements[cycle[i]];
    }
    throw CycleError(msg);
  }

  Causet c;
  c.names_ = std::move(elements);
  c.preds_.assign(n, Region{});
  c.succs_.assign(n, Region{});
  for (auto [x, y] : relations) c.preds_[y].insert(x);
  // Warshall over predecessor masks.
  for (int k = 0; k < n; ++k) {
    for (int v = 0; v < n; ++v) {
      if (c.preds_[v].contains(k)) c.preds_[v] |= c.preds_[k];
    }
  }
  for (int y = 0; y < n; ++y) {
    for (int x : c.preds_[y].members()) c.succs_[x].insert(y);
  }
  return c;
}

Causet Causet::build(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& relations) {
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) index.emplace(elements[i], i);
  std::vector<std::pair<int, int>> idx;
  idx.reserve(relations.size());
  for (const auto& [a, b] : relations) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw UnknownElementError("relation names unknown element '" + a + "'");
    if (ib == index.end()) throw UnknownElementError("relation names unknown element '" + b + "'");
    idx.emplace_back(ia->second, ib->second);
  }
  return from_indices(std::move(elements), idx);
}

int Causet::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

std::vector<std::pair<int, int>> Causet::order() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < size(); ++x) {
    for (int y : succs_[x].members()) out.emplace_back(x, y);
  }
  return out;
}

void Causet::check(Region r) const {
  if (!r.subset_of(elements())) {
    throw ForeignRegionError("region references elements outside the causet");
  }
}

Region Causet::region(const std::vector<std::string>& names) const {
  Region r;
  for (const auto& nm : names) {
    const int i = index_of(nm);
    if (i < 0) throw UnknownElementError("unknown element '" + nm + "'");
    r.insert(i);
  }
  return r;
}

std::vector<std::string> Causet::names_of(Region r) const {
  check(r);
  std::vector<std::string> out;
  for (int i : r.members()) out.push_back(names_[i]);
  return out;
}

Region past(const Causet& c, Region r) {
  c.check(r);
  Region out = r;
  for (std::uint64_t b = r.bits(); b != 0; b &= b - 1) {
    out |= c.predecessors(std::countr_zero(b));
  }
  return out;
}

bool is_spacelike(const Causet& c, Region r1, Region r2) {
  return past(c, r1).disjoint(r2) && r1.disjoint(past(c, r2));
}

Region mutual_past(const Causet& c, Region r1, Region r2) {
  return past(c, r1) & past(c, r2);
}

Region truncated_joint_past(const Causet& c, Region r1, Region r2) {
  return (past(c, r1) | past(c, r2)) - (r1 | r2);
}

Region causal_complement(const Causet& c, Region r) {
  c.check(r);
  Region related;
  for (int y : r.members()) {
    related |= c.predecessors(y) | c.successors(y) | Region::of({y});
  }
  return c.elements() - related;
}

Region causal_closure(const Causet& c, Region r) {
  return causal_complement(c, causal_complement(c, r));
}

bool is_causally_finite(const Causet& c, Region r) {
  const Region closure = causal_closure(c, r);
  return !(past(c, closure) - closure).empty();
}

FlankRegions flank_regions(const Causet& c, Region a, Region b) {
  const Region pa = past(c, a), pb = past(c, b);
  return {(pa - a) - pb, (pb - b) - pa};
}

CrucialIdentityReport verify_crucial_identity(const Causet& c, Region a, Region b) {
  if (!is_spacelike(c, a, b)) {
    throw NotSpacelikeError("regions are not spacelike separated");
  }
  CrucialIdentityReport rep;
  const auto [x, y] = flank_regions(c, a, b);
  rep.flank_x = x;
  rep.flank_y = y;
  rep.extended_a = a | x;
  rep.extended_b = b | y;
  rep.truncated_joint = truncated_joint_past(c, rep.extended_a, rep.extended_b);
  rep.mutual = mutual_past(c, a, b);
  rep.extended_spacelike = is_spacelike(c, rep.extended_a, rep.extended_b);
  rep.identity_holds = rep.truncated_joint == rep.mutual;
  return rep;
}

namespace causets {

Causet chain2() { return Causet::build({"u", "v"}, {{"u", "v"}}); }
Causet chain3() {
  return Causet::build({"c1", "c2", "c3"}, {{"c1", "c2"}, {"c2", "c3"}});
}
Causet anti2() { return Causet::build({"x", "y"}, {}); }
Causet diamond() {
  return Causet::build({"p", "a", "b", "t"}, {{"p", "a"}, {"p", "b"}, {"a", "t"}, {"b", "t"}});
}
Causet w_causet() { return Causet::build({"q", "a", "b"}, {{"q", "a"}}); }

}  // namespace causets

}  // namespace causelab
