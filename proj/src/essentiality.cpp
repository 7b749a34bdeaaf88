#include "essbasis/essentiality.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "essbasis/error.hpp"

namespace essbasis {
namespace {

constexpr size_t kMaxSubsetSize = 20;

std::vector<uint64_t> normalized(std::span<const uint64_t> xs) {
  std::vector<uint64_t> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

uint64_t progression_gap_without(const IntegerSet& s, std::span<const uint64_t> removed,
                                 const GapParams& params) {
  if (params.tail_cutoff > s.limit())
    fail(ErrorCode::kInvalidArgument, "tail cutoff exceeds set limit");
  uint64_t first = 0;
  uint64_t g = 0;
  size_t seen = 0;
  s.for_each(
      [&](uint64_t x) {
        if (std::binary_search(removed.begin(), removed.end(), x)) return true;
        if (seen++ == 0) {
          first = x;
          return true;
        }
        g = std::gcd(g, x - first);
        return g != 1;
      },
      params.tail_cutoff);
  if (seen < 2) fail(ErrorCode::kInvalidArgument, "gap undefined on near-empty tail");
  return g;
}

uint64_t progression_gap(const IntegerSet& s, const GapParams& params) {
  return progression_gap_without(s, {}, params);
}

EssentialityReport is_essential_subset(const IntegerSet& a, std::span<const uint64_t> subset,
                                       const GapParams& params) {
  EssentialityReport report;
  report.subset = normalized(subset);
  const auto& p = report.subset;
  if (p.size() > kMaxSubsetSize)
    fail(ErrorCode::kInvalidArgument,
         "candidate subset too large for minimality testing (" + std::to_string(p.size()) + ")");
  for (uint64_t x : p)
    if (!a.contains(x))
      fail(ErrorCode::kInvalidArgument, "candidate element " + std::to_string(x) + " is not in A");

  report.gap = progression_gap_without(a, p, params);

  // Every proper subset, as a bitmask over p.
  const uint64_t full = (uint64_t{1} << p.size()) - 1;
  bool all_witnesses_one = true;
  std::vector<uint64_t> q;
  for (uint64_t mask = 0; mask < full; ++mask) {
    q.clear();
    for (size_t i = 0; i < p.size(); ++i)
      if ((mask >> i) & 1u) q.push_back(p[i]);
    const uint64_t g = progression_gap_without(a, q, params);
    all_witnesses_one = all_witnesses_one && g == 1;
    report.minimality_witnesses.emplace_back(q, g);
  }
  report.essential = !p.empty() && report.gap >= 2 && all_witnesses_one;
  return report;
}

std::vector<EssentialityReport> enumerate_essential_subsets(const IntegerSet& a, uint32_t k,
                                                            const EnumerateParams& params) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "subset size bound k must be positive");
  const uint64_t head_bound = params.head_bound.value_or(a.limit() / 2);
  const auto tail = a.members(params.gap.tail_cutoff);
  std::vector<EssentialityReport> out;
  if (tail.size() < 3) return out;

  // If A \ P lies in one class mod d and |P| <= k, two of the first k + 2 tail
  // members survive, so every prime divisor of d divides one of their differences.
  const size_t probe = std::min<size_t>(tail.size(), size_t{k} + 2);
  std::set<uint64_t> primes;
  for (size_t i = 0; i < probe; ++i)
    for (size_t j = i + 1; j < probe; ++j)
      for (uint64_t pr : prime_factors(tail[j] - tail[i]))
        if (params.max_prime == 0 || pr <= params.max_prime) primes.insert(pr);

  std::set<std::vector<uint64_t>> tried;
  for (uint64_t pr : primes) {
    // The surviving class holds all but <= k members, so it is the class of
    // one of the first k + 1 members.
    std::set<uint64_t> classes;
    for (size_t i = 0; i < std::min(probe, size_t{k} + 1); ++i) classes.insert(tail[i] % pr);
    for (uint64_t c : classes) {
      std::vector<uint64_t> candidate;
      bool too_big = false;
      for (uint64_t x : tail) {
        if (x % pr == c) continue;
        if (candidate.size() == k || x > head_bound) {
          too_big = true;
          break;
        }
        candidate.push_back(x);
      }
      if (too_big || candidate.empty() || tail.size() - candidate.size() < 2) continue;
      if (!tried.insert(candidate).second) continue;
      auto report = is_essential_subset(a, candidate, params.gap);
      if (report.essential) out.push_back(std::move(report));
    }
  }
  std::sort(out.begin(), out.end(), [](const EssentialityReport& l, const EssentialityReport& r) {
    if (l.gap != r.gap) return l.gap < r.gap;
    return l.subset < r.subset;
  });
  return out;
}

bool pairwise_coprime(std::span<const uint64_t> gaps) {
  for (size_t i = 0; i < gaps.size(); ++i)
    for (size_t j = i + 1; j < gaps.size(); ++j)
      if (std::gcd(gaps[i], gaps[j]) != 1) return false;
  return true;
}

}  // namespace essbasis
