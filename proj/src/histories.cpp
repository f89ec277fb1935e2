#include "causelab/histories.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

#include "causelab/errors.hpp"

namespace causelab {

// ---------------------------------------------------------------- Event

Event Event::full(std::size_t universe) {
  Event e(universe);
  for (auto& w : e.words_) w = ~std::uint64_t{0};
  if (universe % 64 != 0) e.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return e;
}

bool Event::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool Event::is_full() const { return count() == universe_; }

std::size_t Event::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool Event::subset_of(const Event& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~o.words_[i]) return false;
  }
  return true;
}

bool Event::disjoint(const Event& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & o.words_[i]) return false;
  }
  return true;
}

Event Event::complement() const { return full(universe_) - *this; }

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::uint64_t b = words_[i]; b != 0; b &= b - 1) {
      out.push_back(i * 64 + std::countr_zero(b));
    }
  }
  return out;
}

Event Event::operator&(const Event& o) const { Event r = *this; return r &= o; }
Event Event::operator|(const Event& o) const { Event r = *this; return r |= o; }

Event Event::operator-(const Event& o) const {
  Event r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
  return r;
}

Event& Event::operator&=(const Event& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Event& Event::operator|=(const Event& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

// --------------------------------------------------------- HistorySpace

HistorySpace::HistorySpace(Causet causet, int alphabet)
    : causet_(std::move(causet)), alphabet_(alphabet), size_(1) {
  if (alphabet < 2 || alphabet > 10) {
    throw LimitError("alphabet size must lie in [2, 10], got " + std::to_string(alphabet));
  }
  strides_.reserve(causet_.size());
  for (int i = 0; i < causet_.size(); ++i) {
    strides_.push_back(size_);
    if (size_ > kMaxHistories / static_cast<std::size_t>(alphabet)) {
      throw LimitError("history space alphabet^elements exceeds " +
                       std::to_string(kMaxHistories) + " histories");
    }
    size_ *= alphabet;
  }
}

std::string HistorySpace::key(std::size_t h) const {
  std::string out;
  out.reserve(elements());
  for (int i = 0; i < elements(); ++i) out.push_back(static_cast<char>('0' + value(h, i)));
  return out;
}

std::size_t HistorySpace::parse_key(const std::string& key) const {
  if (static_cast<int>(key.size()) != elements()) {
    throw ModelFormatError("history key '" + key + "' must have one digit per element (" +
                           std::to_string(elements()) + ")");
  }
  std::size_t h = 0;
  for (int i = 0; i < elements(); ++i) {
    const int v = key[i] - '0';
    if (v < 0 || v >= alphabet_) {
      throw ModelFormatError("history key '" + key + "' has a value outside the alphabet");
    }
    h += static_cast<std::size_t>(v) * strides_[i];
  }
  return h;
}

Event HistorySpace::cylinder(const std::vector<std::pair<int, int>>& fixed) const {
  Event e(size_);
  for (std::size_t h = 0; h < size_; ++h) {
    bool match = true;
    for (auto [el, v] : fixed) {
      if (value(h, el) != v) { match = false; break; }
    }
    if (match) e.insert(h);
  }
  return e;
}

std::vector<Event> HistorySpace::cylinders(Region r) const {
  causet_.check(r);
  const auto members = r.members();
  std::size_t count = 1;
  for (std::size_t i = 0; i < members.size(); ++i) count *= alphabet_;
  std::vector<Event> out(count, Event(size_));
  for (std::size_t h = 0; h < size_; ++h) {
    std::size_t idx = 0, mult = 1;
    for (int m : members) {
      idx += static_cast<std::size_t>(value(h, m)) * mult;
      mult *= alphabet_;
    }
    out[idx].insert(h);
  }
  return out;
}

// ------------------------------------------------------------------ dom

Region canonical_dom(const HistorySpace& space, const Event& e) {
  Region out;
  for (int s = 0; s < space.elements(); ++s) {
    bool depends = false;
    for (std::size_t h = 0; h < space.size() && !depends; ++h) {
      if (space.value(h, s) != 0) continue;
      const bool in = e.contains(h);
      for (int v = 1; v < space.alphabet(); ++v) {
        if (e.contains(space.with_value(h, s, v)) != in) { depends = true; break; }
      }
    }
    if (depends) out.insert(s);
  }
  return out;
}

Region DomMap::of(const HistorySpace& space, const Event& e) const {
  if (!overrides_.empty()) {
    if (auto it = overrides_.find(e); it != overrides_.end()) return it->second;
  }
  return canonical_dom(space, e);
}

std::uint64_t gamma_size_bound(const HistorySpace& space, Region r) {
  std::uint64_t atoms = 1;
  for (int i = 0; i < r.size(); ++i) {
    atoms *= space.alphabet();
    if (atoms >= 64) return std::numeric_limits<std::uint64_t>::max();
  }
  return std::uint64_t{1} << atoms;
}

std::vector<Event> gamma(const HistorySpace& space, const DomMap& dom, Region r,
                         std::uint64_t max_events) {
  const std::uint64_t bound = gamma_size_bound(space, r);
  if (bound > max_events) {
    throw CapExceededError("event algebra of a " + std::to_string(r.size()) +
                           "-element region exceeds the cap of " + std::to_string(max_events));
  }
  const auto atoms = space.cylinders(r);
  std::vector<Event> events(bound);
  events[0] = space.empty_event();
  for (std::uint64_t m = 1; m < bound; ++m) {
    events[m] = events[m & (m - 1)] | atoms[std::countr_zero(m)];
  }
  if (dom.is_canonical()) return events;

  std::vector<Event> out;
  out.reserve(events.size());
  for (auto& e : events) {
    auto it = dom.overrides().find(e);
    if (it == dom.overrides().end() || it->second.subset_of(r)) out.push_back(std::move(e));
  }
  for (const auto& [e, region] : dom.overrides()) {
    if (region.subset_of(r) && !canonical_dom(space, e).subset_of(r)) out.push_back(e);
  }
  return out;
}

std::vector<Event> generated_atoms(const HistorySpace& space, std::span<const Event> generators) {
  const std::size_t n = space.size();
  std::vector<std::uint32_t> label(n, 0);
  std::uint32_t labels = 1;
  std::vector<std::uint32_t> remap;
  for (const auto& g : generators) {
    remap.assign(2 * static_cast<std::size_t>(labels), std::numeric_limits<std::uint32_t>::max());
    std::uint32_t next = 0;
    for (std::size_t h = 0; h < n; ++h) {
      auto& slot = remap[2 * static_cast<std::size_t>(label[h]) + (g.contains(h) ? 1 : 0)];
      if (slot == std::numeric_limits<std::uint32_t>::max()) slot = next++;
      label[h] = slot;
    }
    labels = next;
    if (labels == n) break;  // already discrete
  }
  std::vector<Event> atoms(labels, Event(n));
  for (std::size_t h = 0; h < n; ++h) atoms[label[h]].insert(h);
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::vector<Event> full_specifications_by_definition(const HistorySpace& space,
                                                    const DomMap& dom, Region r) {
  const auto decidable = gamma(space, dom, r);
  const auto atoms = generated_atoms(space, decidable);
  std::vector<std::size_t> atom_of(space.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (auto h : atoms[i].members()) atom_of[h] = i;
  }
  std::vector<Event> out;
  for (const auto& f : decidable) {
    if (f.empty()) continue;
    const auto first = f.members().front();
    if (f.subset_of(atoms[atom_of[first]])) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Event> full_specifications(const HistorySpace& space, const DomMap& dom, Region r) {
  if (!dom.is_canonical()) return full_specifications_by_definition(space, dom, r);
  // Canonical dom on a product space: Γ(r) is the algebra of r-cylinders and
  // its atoms are the only events satisfying the definition.
  auto out = space.cylinders(r);
  std::sort(out.begin(), out.end());
  return out;
}

// ----------------------------------------------------------- dom axioms

namespace {

void fail(AxiomResult& res, std::vector<Event> witness, std::vector<Region> regions,
          std::string detail) {
  if (!res.passed) return;
  res.passed = false;
  res.witness = std::move(witness);
  res.witness_regions = std::move(regions);
  res.detail = std::move(detail);
}

}  // namespace

DomAxiomReport check_dom_axioms(const HistorySpace& space, const DomMap& dom,
                                const DomAxiomOptions& opts) {
  std::vector<Event> events = opts.pool;
  if (events.empty()) {
    if (space.size() > opts.exhaustive_cap) {
      throw CapExceededError("exhaustive dom-axiom check needs |Omega| <= " +
                             std::to_string(opts.exhaustive_cap) + "; supply an event pool");
    }
    const std::uint64_t total = std::uint64_t{1} << space.size();
    events.reserve(total);
    for (std::uint64_t m = 0; m < total; ++m) {
      Event e(space.size());
      for (std::size_t h = 0; h < space.size(); ++h) {
        if ((m >> h) & 1U) e.insert(h);
      }
      events.push_back(std::move(e));
    }
  } else {
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
  }
  std::vector<Region> doms;
  doms.reserve(events.size());
  for (const auto& e : events) doms.push_back(dom.of(space, e));

  DomAxiomReport rep;
  const std::size_t n = events.size();
  const int fam = std::max(1, opts.family_size);

  // Axiom 1: pairwise disjoint doms => dom(∩) is the disjoint union.
  {
    auto& res = rep.axiom[0];
    std::vector<std::size_t> chosen;
    auto check = [&](const std::vector<std::size_t>& idx) {
      bool has_null = false;
      Event inter = space.omega();
      Region uni;
      for (auto i : idx) {
        has_null |= events[i].empty();
        inter &= events[i];
        uni |= doms[i];
      }
      if (has_null) { ++rep.null_families_skipped; return; }
      ++res.checked;
      const Region d = dom.of(space, inter);
      if (d != uni) {
        std::vector<Event> w;
        std::vector<Region> wr;
        for (auto i : idx) { w.push_back(events[i]); wr.push_back(doms[i]); }
        wr.push_back(d);
        fail(res, std::move(w), std::move(wr),
             "dom of the intersection differs from the disjoint union of doms");
      }
    };
    // Depth-first over index-increasing families, extending only while doms
    // stay pairwise disjoint.
    auto rec = [&](auto&& self, std::size_t start, Region used) -> void {
      for (std::size_t i = start; i < n; ++i) {
        if (!doms[i].disjoint(used)) continue;
        chosen.push_back(i);
        if (chosen.size() >= 2) check(chosen);
        if (static_cast<int>(chosen.size()) < fam) self(self, i + 1, used | doms[i]);
        chosen.pop_back();
      }
    };
    rec(rec, 0, Region{});
  }

  // Axiom 2: equal doms => dom(∩) ⊆ the common dom.
  {
    auto& res = rep.axiom[1];
    std::map<Region, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[doms[i]].push_back(i);
    for (const auto& [d, members] : groups) {
      std::vector<std::size_t> chosen;
      auto rec = [&](auto&& self, std::size_t start, const Event& inter) -> void {
        for (std::size_t k = start; k < members.size(); ++k) {
          chosen.push_back(members[k]);
          const Event next = inter & events[members[k]];
          if (chosen.size() >= 2) {
            ++res.checked;
            const Region di = dom.of(space, next);
            if (!di.subset_of(d)) {
              std::vector<Event> w;
              for (auto i : chosen) w.push_back(events[i]);
              fail(res, std::move(w), {d, di}, "dom of the intersection escapes the common dom");
            }
          }
          if (static_cast<int>(chosen.size()) < fam) self(self, k + 1, next);
          chosen.pop_back();
        }
      };
      rec(rec, 0, space.omega());
    }
  }

  // Axiom 3: dom(X^c) = dom(X).
  {
    auto& res = rep.axiom[2];
    for (std::size_t i = 0; i < n; ++i) {
      ++res.checked;
      const Region dc = dom.of(space, events[i].complement());
      if (dc != doms[i]) {
        fail(res, {events[i]}, {doms[i], dc}, "dom of the complement differs");
      }
    }
  }

  // Axiom 4: dom(Z) = X ⊔ Y => Z lies in the algebra generated by Γ(X) ∪ Γ(Y).
  {
    auto& res = rep.axiom[3];
    std::map<Region, std::vector<Event>> gamma_cache;
    std::map<std::pair<Region, Region>, std::vector<Event>> atom_cache;
    auto gamma_of = [&](Region r) -> const std::vector<Event>& {
      auto it = gamma_cache.find(r);
      if (it == gamma_cache.end()) it = gamma_cache.emplace(r, gamma(space, dom, r)).first;
      return it->second;
    };
    for (std::size_t i = 0; i < n; ++i) {
      const Region d = doms[i];
      // Every split of d into (X, d \ X); submask enumeration includes X = ∅.
      std::uint64_t sub = d.bits();
      while (true) {
        const Region x(sub), y = d - Region(sub);
        const auto key = std::make_pair(std::min(x, y), std::max(x, y));
        auto it = atom_cache.find(key);
        if (it == atom_cache.end()) {
          std::vector<Event> gens = gamma_of(x);
          const auto& gy = gamma_of(y);
          gens.insert(gens.end(), gy.begin(), gy.end());
          it = atom_cache.emplace(key, generated_atoms(space, gens)).first;
        }
        ++res.checked;
        for (const auto& atom : it->second) {
          if (!atom.subset_of(events[i]) && !atom.disjoint(events[i])) {
            fail(res, {events[i]}, {x, y}, "event is not generated by the decidable events of the split");
            break;
          }
        }
        if (sub == 0) break;
        sub = (sub - 1) & d.bits();
      }
    }
  }
  return rep;
}

Event compose_full_specs(const HistorySpace& space, const DomMap& dom,
                         const std::vector<std::pair<Region, Event>>& parts) {
  Region uni;
  for (const auto& [r, e] : parts) {
    if (!r.disjoint(uni)) throw NotDisjointError("composed regions overlap");
    uni |= r;
  }
  Event inter = space.omega();
  for (const auto& [r, e] : parts) {
    const auto phi = full_specifications(space, dom, r);
    if (!std::binary_search(phi.begin(), phi.end(), e)) {
      throw NotFullSpecError("part event is not a full specification of its region");
    }
    inter &= e;
  }
  if (inter.empty()) {
    throw EmptyIntersectionError("full specifications of disjoint regions have empty intersection");
  }
  const auto phi = full_specifications(space, dom, uni);
  if (!std::binary_search(phi.begin(), phi.end(), inter)) {
    throw NotFullSpecError("intersection is not a full specification of the union");
  }
  return inter;
}

}  // namespace causelab
