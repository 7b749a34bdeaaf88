#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "essbasis/integer_set.hpp"

namespace essbasis {

// A way of writing `target` as a sum of at most `size_bound` nonzero members.
// Parts are stored in non-increasing order; the empty sum represents 0.
struct Representation {
  uint64_t target = 0;
  std::vector<uint64_t> parts;
  uint64_t size_bound = 0;

  friend bool operator==(const Representation&, const Representation&) = default;
};

// {a + b : a in lhs, b in rhs} ∩ [0, limit].
IntegerSet sumset(const IntegerSet& lhs, const IntegerSet& rhs, uint64_t limit);

// hA ∩ [0, limit]. Requires 0 ∈ A and h >= 1, so this is also the set of sums
// of at most h nonzero members.
IntegerSet h_fold_sumset(const IntegerSet& a, uint32_t h, uint64_t limit);

// True iff [lo, hi] ⊆ hA. The window must lie inside A's truncation.
bool is_basis_window(const IntegerSet& a, uint32_t h, uint64_t lo, uint64_t hi);

// Every multiset of at most size_bound nonzero members of A summing to target,
// each listed once. Parts are non-increasing; the list is ordered
// lexicographically descending.
std::vector<Representation> enumerate_representations(const IntegerSet& a, uint64_t target,
                                                       uint64_t size_bound);

// Streaming form of enumerate_representations. The visitor returns false to
// stop early; the function returns the number of representations visited.
uint64_t for_each_representation(const IntegerSet& a, uint64_t target, uint64_t size_bound,
                                 const std::function<bool(const std::vector<uint64_t>&)>& visit);

}  // namespace essbasis
