#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "essbasis/integer_set.hpp"

namespace essbasis {

struct GapParams {
  // Members below the cutoff are ignored when measuring progression structure.
  // 0 means the whole truncation is examined.
  uint64_t tail_cutoff = 0;
};

struct EssentialityReport {
  std::vector<uint64_t> subset;  // P, ascending
  uint64_t gap = 0;              // d(P) = gap of A \ P
  bool essential = false;
  // For each proper subset Q ⊊ P (ascending members), the gap of A \ Q.
  std::vector<std::pair<std::vector<uint64_t>, uint64_t>> minimality_witnesses;
};

struct EnumerateParams {
  GapParams gap;
  // Largest element a candidate subset may contain; unset means limit / 2.
  std::optional<uint64_t> head_bound;
  // Restrict the residue-class search to primes <= max_prime (0 = unrestricted).
  uint64_t max_prime = 0;
};

// gcd of the differences of the members >= tail_cutoff: the largest d such
// that the tail lies in a single residue class mod d.
uint64_t progression_gap(const IntegerSet& s, const GapParams& params = {});

// Same, for s with the members of `removed` deleted (removed ascending).
uint64_t progression_gap_without(const IntegerSet& s, std::span<const uint64_t> removed,
                                 const GapParams& params = {});

EssentialityReport is_essential_subset(const IntegerSet& a, std::span<const uint64_t> subset,
                                       const GapParams& params = {});

// All essential subsets of size <= k with max element <= head bound, sorted by
// gap then lexicographically by subset.
std::vector<EssentialityReport> enumerate_essential_subsets(const IntegerSet& a, uint32_t k,
                                                            const EnumerateParams& params = {});

bool pairwise_coprime(std::span<const uint64_t> gaps);

}  // namespace essbasis
