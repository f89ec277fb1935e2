#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace causelab {

// A set of causet elements, one bit per element index. Causets are limited
// to kMaxElements so a region is a single machine word.
class Region {
 public:
  static constexpr int kMaxElements = 64;

  constexpr Region() = default;
  constexpr explicit Region(std::uint64_t bits) : bits_(bits) {}

  static Region of(std::initializer_list<int> members) {
    Region r;
    for (int m : members) r.insert(m);
    return r;
  }
  static constexpr Region all(int n) {
    return Region(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr void insert(int i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr bool subset_of(Region other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(Region other) const { return (bits_ & other.bits_) == 0; }

  constexpr Region operator|(Region o) const { return Region(bits_ | o.bits_); }
  constexpr Region operator&(Region o) const { return Region(bits_ & o.bits_); }
  // Set difference.
  constexpr Region operator-(Region o) const { return Region(bits_ & ~o.bits_); }
  constexpr Region& operator|=(Region o) { bits_ |= o.bits_; return *this; }
  constexpr Region& operator&=(Region o) { bits_ &= o.bits_; return *this; }

  constexpr bool operator==(const Region&) const = default;
  constexpr auto operator<=>(const Region&) const = default;

  // Member indices in increasing order.
  std::vector<int> members() const;

 private:
  std::uint64_t bits_ = 0;
};

// Finite causal set: elements with a strict partial order stored
// transitively closed as per-element predecessor/successor masks.
// Immutable once built.
class Causet {
 public:
  // Builds the transitive closure of `relations` (pairs of element names,
  // first precedes second). Throws DuplicateElementError, UnknownElementError
  // or CycleError (the message names a witnessing cycle).
  static Causet build(std::vector<std::string> elements,
                      const std::vector<std::pair<std::string, std::string>>& relations);
  // Same, with relations given by element index.
  static Causet from_indices(std::vector<std::string> elements,
                             const std::vector<std::pair<int, int>>& relations);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_[i]; }
  int index_of(const std::string& name) const;  // -1 when absent

  Region elements() const { return Region::all(size()); }
  bool precedes(int x, int y) const { return preds_[y].contains(x); }
  Region predecessors(int x) const { return preds_[x]; }
  Region successors(int x) const { return succs_[x]; }

  // Closed order as (x, y) index pairs with x < y, sorted.
  std::vector<std::pair<int, int>> order() const;

  // Throws ForeignRegionError if r names indices outside this causet.
  void check(Region r) const;

  // Region from element names; throws UnknownElementError.
  Region region(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(Region r) const;

  bool operator==(const Causet& o) const {
    return names_ == o.names_ && preds_ == o.preds_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Region> preds_;
  std::vector<Region> succs_;
};

// J^-(r): r together with everything preceding one of its points.
Region past(const Causet& c, Region r);

// Neither region meets the other's past. Overlapping regions never qualify.
bool is_spacelike(const Causet& c, Region r1, Region r2);

// J^-(r1) ∩ J^-(r2).
Region mutual_past(const Causet& c, Region r1, Region r2);
// J^-(r1) ∪ J^-(r2), without r1 ∪ r2.
Region truncated_joint_past(const Causet& c, Region r1, Region r2);

// Points spacelike to every point of r. Two points are spacelike when they
// differ and neither precedes the other. The complement of ∅ is everything.
Region causal_complement(const Causet& c, Region r);
// (r')'.
Region causal_closure(const Causet& c, Region r);
// Past of the closure strictly exceeds the closure. Literal reading: ∅ and
// the full element set are causally infinite.
bool is_causally_finite(const Causet& c, Region r);

struct FlankRegions {
  Region x;  // [J^-(A) \ A] \ J^-(B)
  Region y;  // [J^-(B) \ B] \ J^-(A)
};
FlankRegions flank_regions(const Causet& c, Region a, Region b);

struct CrucialIdentityReport {
  Region flank_x;
  Region flank_y;
  Region extended_a;       // A ∪ X
  Region extended_b;       // B ∪ Y
  Region truncated_joint;  // P2(A ∪ X, B ∪ Y)
  Region mutual;           // P1(A, B)
  bool extended_spacelike = false;
  bool identity_holds = false;
  bool holds() const { return extended_spacelike && identity_holds; }
};

// Checks that A ∪ X, B ∪ Y are spacelike and that their truncated joint past
// equals the mutual past of A and B. Throws NotSpacelikeError unless a and b
// are spacelike.
CrucialIdentityReport verify_crucial_identity(const Causet& c, Region a, Region b);

namespace causets {
// Small named causets used across tests, docs and the CLI.
Causet chain2();   // u < v
Causet chain3();   // c1 < c2 < c3
Causet anti2();    // x, y unrelated
Causet diamond();  // p < a, b < t
Causet w_causet(); // q < a; b unrelated
}  // namespace causets

}  // namespace causelab
