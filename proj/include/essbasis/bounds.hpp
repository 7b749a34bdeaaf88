#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace essbasis {

// The first n primes, ascending. Backed by a process-wide incremental sieve
// that is safe for concurrent callers.
std::vector<uint64_t> first_primes(size_t n);
uint64_t nth_prime(size_t n);  // 1-based: nth_prime(1) == 2

// Product of the first n primes; primorial(0) == 1.
mpz_class primorial(size_t n);

struct BoundResult {
  uint64_t k = 0;
  uint64_t h = 0;
  uint64_t phi = 0;
  mpz_class primorial_at_phi;
  uint64_t first_failure = 0;
};

// Largest phi with (k*phi + 1)^h >= p_phi#, by exact integer comparison.
BoundResult phi_bound(uint64_t k, uint64_t h);

// log(p_n#) / (n log n), n >= 2.
double primorial_growth_ratio(size_t n);

enum class ProbeMode { kFixedHGrowingK, kFixedKGrowingH };

struct ProbeRow {
  uint64_t parameter = 0;
  uint64_t phi = 0;
};

std::vector<ProbeRow> asymptotic_probe(ProbeMode mode, uint64_t fixed_value,
                                       std::span<const uint64_t> samples);

}  // namespace essbasis
