#include "causelab/theorems.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <functional>

#include "causelab/enumerate.hpp"
#include "causelab/errors.hpp"

namespace causelab {

void SweepReport::fail(std::string what) {
  passed = false;
  ++failure_count;
  if (failures.size() < 64) failures.push_back(std::move(what));
}

namespace {

struct Partial {
  std::uint64_t checked = 0;
  std::vector<std::string> failures;
};

// All causets with 1..max_elements elements, smallest first.
std::vector<Causet> causets_up_to(int max_elements, std::vector<std::uint64_t>& per_size) {
  std::vector<Causet> out;
  per_size.assign(static_cast<std::size_t>(std::max(0, max_elements)) + 1, 0);
  for (int n = 1; n <= max_elements; ++n) {
    auto level = enumerate_causets(n);
    per_size[n] = level.size();
    for (auto& c : level) out.push_back(std::move(c));
  }
  return out;
}

// Runs `body` once per causet and merges partial results in causet order.
SweepReport sweep(std::string name, int max_elements, const Execution& exec,
                  const std::function<Partial(const Causet&)>& body) {
  SweepReport rep;
  rep.name = std::move(name);
  const auto causets = causets_up_to(max_elements, rep.causets_per_size);
  std::vector<Partial> parts(causets.size());
  std::vector<std::exception_ptr> errors(causets.size());
  auto one = [&](std::size_t i) {
    try {
      parts[i] = body(causets[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec.backend == Backend::openmp && exec.workers > 1) {
    const auto count = static_cast<std::ptrdiff_t>(causets.size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.workers)
    for (std::ptrdiff_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < causets.size(); ++i) one(i);
  }
  for (std::size_t i = 0; i < causets.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    ++rep.models;
    rep.checked += parts[i].checked;
    for (auto& f : parts[i].failures) rep.fail(causet_fingerprint(causets[i]) + ": " + f);
  }
  return rep;
}

std::string region_text(const Causet& c, Region r) {
  std::string out = "{";
  bool first = true;
  for (const auto& nm : c.names_of(r)) {
    if (!first) out += ",";
    out += nm;
    first = false;
  }
  return out + "}";
}

}  // namespace

SweepReport region_theorem_sweep(int max_elements, const Execution& exec) {
  return sweep("region-theorems", max_elements, exec, [](const Causet& c) {
    Partial p;
    for (const auto& [a, b] : spacelike_pairs(c, c.size(), false)) {
      ++p.checked;
      const auto rep = verify_crucial_identity(c, a, b);
      const Region p1 = mutual_past(c, a, b);
      const Region p2 = truncated_joint_past(c, a, b);
      const bool disjoint = rep.flank_x.disjoint(rep.flank_y) && rep.flank_x.disjoint(p1) &&
                            rep.flank_y.disjoint(p1);
      const bool decomposes = disjoint && (rep.flank_x | rep.flank_y | p1) == p2;
      const bool untruncated = p1.disjoint(a | b);
      if (!rep.holds() || !decomposes || !untruncated) {
        std::string what = "pair " + region_text(c, a) + " " + region_text(c, b) + ":";
        if (!rep.extended_spacelike) what += " extended regions not spacelike;";
        if (!rep.identity_holds) what += " P2(A∪X,B∪Y) != P1(A,B);";
        if (!decomposes) what += " P2 != X ⊔ Y ⊔ P1;";
        if (!untruncated) what += " P1 meets A ∪ B;";
        p.failures.push_back(std::move(what));
      }
    }
    return p;
  });
}

SweepReport partition_sweep(int max_elements, int alphabet, const Execution& exec) {
  return sweep("full-specification-partition", max_elements, exec, [alphabet](const Causet& c) {
    Partial p;
    const HistorySpace space(c, alphabet);
    const DomMap dom;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.size()); ++m) {
      const Region r(m);
      ++p.checked;
      const auto phi = full_specifications_by_definition(space, dom, r);
      std::size_t expected = 1;
      for (int i = 0; i < r.size(); ++i) expected *= static_cast<std::size_t>(alphabet);
      Event seen = space.empty_event();
      bool ok = phi.size() == expected;
      for (const auto& f : phi) {
        ok = ok && !f.empty() && f.disjoint(seen);
        seen |= f;
      }
      ok = ok && seen.is_full();
      if (!ok) {
        p.failures.push_back("region " + region_text(c, r) + ": " + std::to_string(phi.size()) +
                             " specifications, not a partition of size " + std::to_string(expected));
      }
    }
    return p;
  });
}

SweepReport composition_sweep(int max_elements, int alphabet, const Execution& exec) {
  return sweep("full-specification-composition", max_elements, exec, [alphabet](const Causet& c) {
    Partial p;
    const HistorySpace space(c, alphabet);
    const DomMap dom;
    const std::uint64_t all = c.elements().bits();
    for (std::uint64_t x = 0; x <= all; ++x) {
      const std::uint64_t rest = all & ~x;
      // Unordered pairs: keep x <= y.
      for (std::uint64_t y = rest;; y = (y - 1) & rest) {
        if (y >= x) {
          ++p.checked;
          const auto fx = full_specifications_by_definition(space, dom, Region(x));
          const auto fy = full_specifications_by_definition(space, dom, Region(y));
          std::vector<Event> composed;
          for (const auto& f : fx) {
            for (const auto& g : fy) composed.push_back(f & g);
          }
          std::sort(composed.begin(), composed.end());
          composed.erase(std::unique(composed.begin(), composed.end()), composed.end());
          const auto joint = full_specifications_by_definition(space, dom, Region(x | y));
          if (composed != joint) {
            p.failures.push_back("regions " + region_text(c, Region(x)) + " " +
                                 region_text(c, Region(y)) + ": composed specifications differ");
          }
        }
        if (y == 0) break;
      }
    }
    return p;
  });
}

SweepReport dom_axiom_sweep(const DomSweepOptions& opts, const Execution& exec) {
  const int top = std::max(opts.exhaustive_elements, opts.sampled_elements);
  return sweep("dom-axioms", top, exec, [&opts](const Causet& c) {
    Partial p;
    const int n = c.size();
    if (n > opts.exhaustive_elements && n != opts.sampled_elements) return p;
    const HistorySpace space(c, opts.alphabet);
    const DomMap dom;
    DomAxiomOptions ax;
    ax.family_size = opts.family_size;
    if (n > opts.exhaustive_elements) {
      ax.pool = sample_events(space, opts.sampled_events, opts.seed ^ canonical_code(c), n);
    } else {
      ax.exhaustive_cap = space.size();
    }
    const auto rep = check_dom_axioms(space, dom, ax);
    for (int i = 0; i < 4; ++i) {
      p.checked += rep.axiom[i].checked;
      if (!rep.axiom[i].passed) {
        p.failures.push_back("axiom " + std::to_string(i + 1) + ": " + rep.axiom[i].detail);
      }
    }
    return p;
  });
}

SweepReport replication_sweep(int max_elements, const CheckOptions& opts, const Execution& exec) {
  return sweep("so1-to-so2-replication", max_elements, exec, [&opts](const Causet& c) {
    Partial p;
    const HistorySpace space(c, 2);
    const Model model(space, DomMap{}, MeasureTable::uniform(space), Model::AxiomCheck::skip);
    if (!check_principle(model, Principle::so1, opts).satisfied) return p;
    for (const auto& [a, b] : spacelike_pairs(c, opts.caps.max_region_size, false)) {
      ++p.checked;
      const auto rep = replicate_so1_to_so2(model, a, b, opts);
      const auto gap = gap_closure_check(model, a, b);
      const std::string where = "pair " + region_text(c, a) + " " + region_text(c, b);
      if (!rep.applicable) p.failures.push_back(where + ": not applicable (" + rep.reason + ")");
      if (!rep.step1.passed) p.failures.push_back(where + ": step 1: " + rep.step1.witness);
      if (!rep.step2.passed) p.failures.push_back(where + ": step 2: " + rep.step2.witness);
      if (!rep.step3.passed) p.failures.push_back(where + ": step 3: " + rep.step3.witness);
      if (!gap.equal) {
        p.failures.push_back(where + ": gap closure mismatch (" + std::to_string(gap.missing.size()) +
                             " missing, " + std::to_string(gap.extra.size()) + " extra)");
      }
    }
    return p;
  });
}

}  // namespace causelab
