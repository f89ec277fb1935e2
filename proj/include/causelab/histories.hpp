#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causelab/causet.hpp"

namespace causelab {

// A set of histories: one bit per history index.
class Event {
 public:
  Event() = default;
  explicit Event(std::size_t universe) : words_((universe + 63) / 64, 0), universe_(universe) {}

  static Event full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  bool contains(std::size_t h) const { return (words_[h >> 6] >> (h & 63)) & 1U; }
  void insert(std::size_t h) { words_[h >> 6] |= std::uint64_t{1} << (h & 63); }
  void erase(std::size_t h) { words_[h >> 6] &= ~(std::uint64_t{1} << (h & 63)); }

  bool empty() const;
  bool is_full() const;
  std::size_t count() const;
  bool subset_of(const Event& o) const;
  bool disjoint(const Event& o) const;
  Event complement() const;
  std::vector<std::size_t> members() const;

  Event operator&(const Event& o) const;
  Event operator|(const Event& o) const;
  Event operator-(const Event& o) const;
  Event& operator&=(const Event& o);
  Event& operator|=(const Event& o);

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const Event&) const = default;
  // Arbitrary but fixed total order, used for sorted containers and output.
  bool operator<(const Event& o) const {
    return universe_ != o.universe_ ? universe_ < o.universe_ : words_ < o.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t universe_ = 0;
};

// Ω = alphabet^elements. History index h encodes the value of element i as
// digit i of h in base `alphabet` (element 0 least significant).
class HistorySpace {
 public:
  static constexpr std::size_t kMaxHistories = std::size_t{1} << 20;

  HistorySpace(Causet causet, int alphabet);

  const Causet& causet() const { return causet_; }
  int alphabet() const { return alphabet_; }
  int elements() const { return causet_.size(); }
  std::size_t size() const { return size_; }

  int value(std::size_t h, int element) const {
    return static_cast<int>((h / strides_[element]) % alphabet_);
  }
  std::size_t stride(int element) const { return strides_[element]; }
  // History with element set to v, all other values unchanged.
  std::size_t with_value(std::size_t h, int element, int v) const {
    return h + (static_cast<std::size_t>(v) - value(h, element)) * strides_[element];
  }

  // Digits in element order, e.g. "01" for x=0, y=1.
  std::string key(std::size_t h) const;
  std::size_t parse_key(const std::string& key) const;

  Event empty_event() const { return Event(size_); }
  Event omega() const { return Event::full(size_); }
  // All histories taking the given value at each listed element.
  Event cylinder(const std::vector<std::pair<int, int>>& fixed) const;
  // Cylinders fixing every element of r, in order of the assignment read as
  // a base-alphabet number (lowest member least significant).
  std::vector<Event> cylinders(Region r) const;

 private:
  Causet causet_;
  int alphabet_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

// Smallest region whose values decide membership in e: the elements s for
// which some pair of histories differing only at s is split by e.
Region canonical_dom(const HistorySpace& space, const Event& e);

// Least domain of decidability. Events without an override get their
// canonical dom; overrides model non-canonical or deliberately broken maps.
class DomMap {
 public:
  DomMap() = default;

  void set(const Event& e, Region r) { overrides_[e] = r; }
  bool is_canonical() const { return overrides_.empty(); }
  const std::map<Event, Region>& overrides() const { return overrides_; }

  Region of(const HistorySpace& space, const Event& e) const;

 private:
  std::map<Event, Region> overrides_;
};

// Upper bound on |Γ(r)| for the canonical part: 2^(alphabet^|r|), saturating.
std::uint64_t gamma_size_bound(const HistorySpace& space, Region r);

// Γ(r) = {X : dom(X) ⊆ r}. Subset read non-strictly. Throws CapExceededError
// when the canonical algebra on r has more than `max_events` members.
std::vector<Event> gamma(const HistorySpace& space, const DomMap& dom, Region r,
                         std::uint64_t max_events = std::uint64_t{1} << 20);

// Φ(r): nonempty events F with dom(F) ⊆ r such that F ⊆ X or F ⊆ X^c for
// every X ∈ Γ(r). Sorted. Canonical dom takes the cylinder shortcut.
std::vector<Event> full_specifications(const HistorySpace& space, const DomMap& dom, Region r);
// Same set, always computed from Γ(r) and the atoms it generates.
std::vector<Event> full_specifications_by_definition(const HistorySpace& space,
                                                    const DomMap& dom, Region r);

// Atoms of the Boolean algebra generated by `generators`, sorted.
std::vector<Event> generated_atoms(const HistorySpace& space, std::span<const Event> generators);

struct AxiomResult {
  bool passed = true;
  std::uint64_t checked = 0;
  std::vector<Event> witness;       // offending event(s)
  std::vector<Region> witness_regions;
  std::string detail;
};

struct DomAxiomOptions {
  int family_size = 3;
  // Events to draw families from. When empty, all 2^|Ω| events are used;
  // that requires |Ω| <= exhaustive_cap.
  std::vector<Event> pool;
  std::size_t exhaustive_cap = 8;
};

struct DomAxiomReport {
  AxiomResult axiom[4];
  // Families skipped by axiom 1 because a member is the null event.
  std::uint64_t null_families_skipped = 0;
  bool passed() const {
    return axiom[0].passed && axiom[1].passed && axiom[2].passed && axiom[3].passed;
  }
};

// Validates dom against its four axioms over families of up to
// `family_size` distinct events. Axiom 1 is checked on families of nonempty
// events; axiom 4 uses the finite Boolean algebra generated by Γ(X) ∪ Γ(Y).
DomAxiomReport check_dom_axioms(const HistorySpace& space, const DomMap& dom,
                                const DomAxiomOptions& opts = {});

// Intersection of full specifications of pairwise disjoint regions. Checks
// that the result is a full specification of the union. Throws
// NotDisjointError, NotFullSpecError or EmptyIntersectionError.
Event compose_full_specs(const HistorySpace& space, const DomMap& dom,
                         const std::vector<std::pair<Region, Event>>& parts);

}  // namespace causelab
