#include <doctest.h>

#include <numeric>
#include <random>

#include "essbasis/bounds.hpp"
#include "essbasis/core_sets.hpp"
#include "essbasis/error.hpp"
#include "essbasis/essentiality.hpp"

using namespace essbasis;

namespace {

IntegerSet threes_plus_one(uint64_t limit) {
  IntegerSet a(limit);
  a.insert_run({0, limit / 3 * 3, 3});
  a.insert(1);
  return a;
}

}  // namespace

TEST_CASE("progression_gap examples") {
  CHECK(progression_gap(IntegerSet::from_members(10, std::vector<uint64_t>{0, 4, 10})) == 2);
  CHECK(progression_gap(IntegerSet::interval(100, 0, 100)) == 1);
  IntegerSet threes(99);
  threes.insert_run({0, 99, 3});
  CHECK(progression_gap(threes) == 3);
  CHECK_THROWS_WITH_AS(progression_gap(IntegerSet::from_members(10, std::vector<uint64_t>{7})),
                       "gap undefined on near-empty tail", Error);
}

TEST_CASE("progression_gap honours the tail cutoff") {
  IntegerSet a = threes_plus_one(99);
  CHECK(progression_gap(a) == 1);
  CHECK(progression_gap(a, {2}) == 3);
}

TEST_CASE("progression_gap is translation invariant and scales under dilation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<uint64_t> xs;
    const size_t n = 2 + rng() % 6;
    for (size_t i = 0; i < n; ++i) xs.push_back(rng() % 60);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) continue;
    const uint64_t g = progression_gap(IntegerSet::from_members(60, xs));
    const uint64_t shift = rng() % 50;
    const uint64_t m = 1 + rng() % 5;
    std::vector<uint64_t> shifted, dilated;
    for (uint64_t x : xs) {
      shifted.push_back(x + shift);
      dilated.push_back(m * x);
    }
    CHECK(progression_gap(IntegerSet::from_members(110, shifted)) == g);
    CHECK(progression_gap(IntegerSet::from_members(300, dilated)) == m * g);
  }
}

TEST_CASE("is_essential_subset examples") {
  IntegerSet a = threes_plus_one(99);
  const std::vector<uint64_t> one{1};
  auto r = is_essential_subset(a, one);
  CHECK(r.essential);
  CHECK(r.gap == 3);
  REQUIRE(r.minimality_witnesses.size() == 1);
  CHECK(r.minimality_witnesses[0].first.empty());
  CHECK(r.minimality_witnesses[0].second == 1);

  auto n0 = IntegerSet::interval(100, 0, 100);
  const std::vector<uint64_t> five{5};
  auto r2 = is_essential_subset(n0, five);
  CHECK_FALSE(r2.essential);
  CHECK(r2.gap == 1);

  auto r3 = is_essential_subset(n0, std::vector<uint64_t>{});
  CHECK_FALSE(r3.essential);

  CHECK_THROWS_AS(is_essential_subset(a, std::vector<uint64_t>{2}), Error);
  auto tiny = IntegerSet::from_members(5, std::vector<uint64_t>{0, 1, 2});
  CHECK_THROWS_AS(is_essential_subset(tiny, std::vector<uint64_t>{0, 1}), Error);
}

TEST_CASE("essential reports satisfy their invariant") {
  // 6N ∪ {2, 3}: removing 2 leaves multiples of 3, removing 3 leaves evens.
  IntegerSet a(60);
  a.insert_run({0, 60, 6});
  a.insert(2);
  a.insert(3);
  auto reports = enumerate_essential_subsets(a, 2);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].subset == std::vector<uint64_t>{3});
  CHECK(reports[0].gap == 2);
  CHECK(reports[1].subset == std::vector<uint64_t>{2});
  CHECK(reports[1].gap == 3);
  for (const auto& r : reports) {
    CHECK(r.essential);
    CHECK(r.gap >= 2);
    for (const auto& [q, g] : r.minimality_witnesses) CHECK(g == 1);
  }
  std::vector<uint64_t> gaps{reports[0].gap, reports[1].gap};
  CHECK(pairwise_coprime(gaps));
}

TEST_CASE("enumerate_essential_subsets examples") {
  CHECK(enumerate_essential_subsets(IntegerSet::interval(100, 0, 100), 3).empty());
  auto reports = enumerate_essential_subsets(threes_plus_one(99), 1);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].subset == std::vector<uint64_t>{1});
  CHECK(reports[0].gap == 3);
  std::vector<uint64_t> gaps{reports[0].gap};
  CHECK(pairwise_coprime(gaps));
}

TEST_CASE("enumerate respects head bound and prime restriction") {
  IntegerSet a(60);
  a.insert_run({0, 60, 6});
  a.insert(2);
  a.insert(3);
  EnumerateParams only_two;
  only_two.max_prime = 2;
  auto r = enumerate_essential_subsets(a, 2, only_two);
  REQUIRE(r.size() == 1);
  CHECK(r[0].gap == 2);
  EnumerateParams low_head;
  low_head.head_bound = 2;
  auto r2 = enumerate_essential_subsets(a, 2, low_head);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].subset == std::vector<uint64_t>{2});
}

TEST_CASE("pairwise_coprime") {
  CHECK(pairwise_coprime(std::vector<uint64_t>{2, 3, 5}));
  CHECK_FALSE(pairwise_coprime(std::vector<uint64_t>{2, 4}));
  CHECK(pairwise_coprime(std::vector<uint64_t>{3}));
}

TEST_CASE("pairwise coprime gaps multiply to at least the primorial") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<uint64_t> ds;
    const size_t n = 1 + rng() % 6;
    for (size_t tries = 0; ds.size() < n && tries < 100; ++tries) {
      const uint64_t d = 2 + rng() % 40;
      bool ok = true;
      for (uint64_t e : ds) ok = ok && std::gcd(d, e) == 1;
      if (ok) ds.push_back(d);
    }
    REQUIRE(pairwise_coprime(ds));
    mpz_class t = 1;
    for (uint64_t d : ds) t *= d;
    CHECK(t >= primorial(ds.size()));
  }
}

TEST_CASE("hY meeting every class mod t forces |Y|^h >= t") {
  std::mt19937_64 rng(23);
  int covering = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const uint64_t t = 2 + rng() % 30;
    const uint32_t h = 1 + static_cast<uint32_t>(rng() % 3);
    IntegerSet y(40);
    y.insert(0);
    const size_t extra = rng() % 5;
    for (size_t i = 0; i < extra; ++i) y.insert(1 + rng() % 40);
    // A window of length >= t inside hY's range.
    const auto sums = h_fold_sumset(y, h, 40 * h);
    std::vector<bool> hit(t, false);
    sums.for_each([&](uint64_t x) {
      hit[x % t] = true;
      return true;
    });
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      ++covering;
      mpz_class lhs;
      mpz_ui_pow_ui(lhs.get_mpz_t(), y.size(), h);
      CHECK(lhs >= t);
    }
  }
  CHECK(covering > 0);
}
