#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causelab/causet.hpp"

namespace causelab {

inline constexpr int kEnumerationHardLimit = 7;

// Canonical form of a causet up to order-isomorphism: the smallest relation
// code over all labellings that are linear extensions. The code packs the
// upper triangle column by column (pairs (0,1), (0,2), (1,2), (0,3), ...),
// first pair most significant.
std::uint64_t canonical_code(const Causet& c);

// Causet on elements "e0".."e{n-1}" whose labelling realizes `code`.
Causet causet_from_code(int n, std::uint64_t code);

// "n:hex" rendering of the canonical code.
std::string causet_fingerprint(const Causet& c);

// All causets on n elements up to isomorphism, canonical and sorted by code.
// Throws LimitError when n exceeds hard_limit.
std::vector<Causet> enumerate_causets(int n, int hard_limit = kEnumerationHardLimit);

}  // namespace causelab
