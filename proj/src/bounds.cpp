#include "essbasis/bounds.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "essbasis/error.hpp"

namespace essbasis {
namespace {

class PrimeCache {
 public:
  std::vector<uint64_t> first(size_t n) {
    {
      std::shared_lock lock(mu_);
      if (primes_.size() >= n) return {primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(n)};
    }
    std::unique_lock lock(mu_);
    while (primes_.size() < n) grow();
    return {primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(n)};
  }

 private:
  // Doubles the sieved range; callers hold the unique lock.
  void grow() {
    const uint64_t lo = sieved_to_ + 1;
    const uint64_t hi = std::max<uint64_t>(2 * sieved_to_, 1024);
    std::vector<bool> composite(hi - lo + 1, false);
    for (uint64_t p = 2; p * p <= hi; ++p) {
      uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (uint64_t m = start; m <= hi; m += p) composite[m - lo] = true;
    }
    for (uint64_t x = std::max<uint64_t>(lo, 2); x <= hi; ++x)
      if (!composite[x - lo]) primes_.push_back(x);
    sieved_to_ = hi;
  }

  std::shared_mutex mu_;
  std::vector<uint64_t> primes_;
  uint64_t sieved_to_ = 1;
};

PrimeCache& cache() {
  static PrimeCache instance;
  return instance;
}

mpz_class ipow(uint64_t base, uint64_t exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace

std::vector<uint64_t> first_primes(size_t n) { return cache().first(n); }

uint64_t nth_prime(size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "primes are 1-indexed");
  return cache().first(n).back();
}

mpz_class primorial(size_t n) {
  mpz_class out = 1;
  for (uint64_t p : first_primes(n)) out *= p;
  return out;
}

BoundResult phi_bound(uint64_t k, uint64_t h) {
  if (k == 0 || h == 0) fail(ErrorCode::kInvalidArgument, "phi_bound needs k >= 1 and h >= 1");
  BoundResult result{k, h, 0, 1, 0};
  mpz_class prim = 1;
  std::vector<uint64_t> primes = first_primes(64);
  for (uint64_t phi = 1;; ++phi) {
    if (phi > UINT64_MAX / k) fail(ErrorCode::kOverflow, "k * phi overflows");
    if (phi > primes.size()) primes = first_primes(2 * primes.size());
    prim *= primes[phi - 1];
    const mpz_class lhs = ipow(k * phi + 1, h);
    if (lhs >= prim) {
      result.phi = phi;
      result.primorial_at_phi = prim;
    }
    // phi log 2 - h log(k phi + 1) is convex in phi and zero at phi = 0, so once
    // 2^phi exceeds the left side it does so for every larger phi, and
    // p_phi# >= 2^phi rules those out.
    if (ipow(2, phi) > lhs) break;
  }
  result.first_failure = result.phi + 1;
  return result;
}

double primorial_growth_ratio(size_t n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "growth ratio needs n >= 2");
  const mpz_class prim = primorial(n);
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, prim.get_mpz_t());
  const double log_prim = std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
  const double dn = static_cast<double>(n);
  return log_prim / (dn * std::log(dn));
}

std::vector<ProbeRow> asymptotic_probe(ProbeMode mode, uint64_t fixed_value,
                                       std::span<const uint64_t> samples) {
  if (fixed_value == 0) fail(ErrorCode::kInvalidArgument, "fixed value must be positive");
  std::vector<ProbeRow> rows;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && samples[i] < samples[i - 1])
      fail(ErrorCode::kInvalidArgument, "probe samples must be ascending");
    const uint64_t s = samples[i];
    const auto r = mode == ProbeMode::kFixedHGrowingK ? phi_bound(s, fixed_value)
                                                      : phi_bound(fixed_value, s);
    rows.push_back({s, r.phi});
  }
  return rows;
}

}  // namespace essbasis
