#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "essbasis/core_sets.hpp"
#include "essbasis/error.hpp"

using namespace essbasis;

namespace {

// Sums over all ordered h-tuples, kept independent of the bitset kernel.
std::set<uint64_t> naive_sumset(const std::vector<uint64_t>& a, uint32_t h, uint64_t limit) {
  std::set<uint64_t> out;
  std::vector<size_t> idx(h, 0);
  for (;;) {
    uint64_t s = 0;
    for (size_t i : idx) s += a[i];
    if (s <= limit) out.insert(s);
    size_t pos = 0;
    while (pos < h && ++idx[pos] == a.size()) idx[pos++] = 0;
    if (pos == h) break;
  }
  return out;
}

std::vector<uint64_t> as_vec(const std::set<uint64_t>& s) { return {s.begin(), s.end()}; }

IntegerSet random_set_with_zero(std::mt19937_64& rng, uint64_t limit, size_t max_size) {
  IntegerSet s(limit);
  s.insert(0);
  const size_t n = 1 + rng() % max_size;
  for (size_t i = 0; i < n; ++i) s.insert(rng() % (limit + 1));
  return s;
}

}  // namespace

TEST_CASE("h_fold_sumset small cases") {
  auto a = IntegerSet::from_members(10, std::vector<uint64_t>{0, 1});
  CHECK(h_fold_sumset(a, 2, 10).members() == std::vector<uint64_t>{0, 1, 2});
  auto b = IntegerSet::from_members(10, std::vector<uint64_t>{0, 3});
  CHECK(h_fold_sumset(b, 2, 10).members() == std::vector<uint64_t>{0, 3, 6});
  // A_1 = [0, 2] with h = 2 gives [0, 4].
  auto a1 = IntegerSet::interval(4, 0, 2);
  auto s = h_fold_sumset(a1, 2, 4);
  CHECK(s.contains_all(0, 4));
  CHECK(s.size() == 5);
}

TEST_CASE("h_fold_sumset rejects bad input") {
  auto no_zero = IntegerSet::from_members(10, std::vector<uint64_t>{1, 2});
  CHECK_THROWS_AS(h_fold_sumset(no_zero, 2, 10), Error);
  auto a = IntegerSet::from_members(10, std::vector<uint64_t>{0, 2});
  CHECK_THROWS_AS(h_fold_sumset(a, 0, 10), Error);
}

TEST_CASE("bitset sumset equals naive tuple enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const uint64_t limit = 5 + rng() % 150;
    auto a = random_set_with_zero(rng, limit, 11);  // |A| <= 12
    const uint32_t h = 1 + static_cast<uint32_t>(rng() % 4);
    const uint64_t window = rng() % (h * limit + 1);
    auto got = h_fold_sumset(a, h, window).members();
    CHECK(got == as_vec(naive_sumset(a.members(), h, window)));
  }
}

TEST_CASE("sumset of long runs equals naive enumeration") {
  std::vector<Run> runs{{0, 2, 1}, {4, 14, 2}, {15, 30, 1}, {33, 90, 3}};
  auto a = IntegerSet::from_runs(90, runs);
  for (uint32_t h = 1; h <= 3; ++h) {
    auto got = h_fold_sumset(a, h, 200).members();
    CHECK(got == as_vec(naive_sumset(a.members(), h, 200)));
  }
}

TEST_CASE("sumset monotonicity and nesting") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const uint64_t limit = 20 + rng() % 200;
    auto a = random_set_with_zero(rng, limit, 10);
    IntegerSet b = a;
    for (int i = 0; i < 5; ++i) b.insert(rng() % (limit + 1));
    const uint32_t h = 1 + static_cast<uint32_t>(rng() % 4);
    const uint64_t window = 2 * limit;
    auto sa = h_fold_sumset(a, h, window);
    CHECK(sa.is_subset_of(h_fold_sumset(b, h, window)));
    CHECK(sa.is_subset_of(h_fold_sumset(a, h + 1, window)));
  }
}

TEST_CASE("is_basis_window") {
  auto n0 = IntegerSet::interval(100, 0, 100);
  CHECK(is_basis_window(n0, 1, 0, 100));

  IntegerSet threes_plus(100);
  threes_plus.insert_run({0, 99, 3});
  threes_plus.insert(1);
  threes_plus.insert(2);
  CHECK(is_basis_window(threes_plus, 3, 0, 90));

  IntegerSet threes(100);
  threes.insert_run({0, 99, 3});
  CHECK_FALSE(is_basis_window(threes, 5, 10, 90));

  CHECK_THROWS_AS(is_basis_window(threes, 2, 0, 101), Error);
  CHECK_THROWS_AS(is_basis_window(threes, 2, 50, 40), Error);
}

TEST_CASE("enumerate_representations examples") {
  auto a = IntegerSet::from_members(2, std::vector<uint64_t>{0, 1, 2});
  auto reps = enumerate_representations(a, 2, 2);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].parts == std::vector<uint64_t>{2});
  CHECK(reps[1].parts == std::vector<uint64_t>{1, 1});

  auto zero = enumerate_representations(a, 0, 3);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].parts.empty());

  auto b = IntegerSet::from_members(10, std::vector<uint64_t>{0, 3});
  CHECK(enumerate_representations(b, 4, 5).empty());
  CHECK_THROWS_AS(enumerate_representations(b, 11, 2), Error);
}

TEST_CASE("representations are complete, valid and duplicate-free") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const uint64_t limit = 10 + rng() % 40;
    auto a = random_set_with_zero(rng, limit, 8);
    const uint64_t target = rng() % (limit + 1);
    const uint64_t bound = 1 + rng() % 4;
    auto reps = enumerate_representations(a, target, bound);

    // Brute force: multisets as sorted tuples of nonzero members.
    std::set<std::vector<uint64_t>> expect;
    std::vector<uint64_t> parts;
    for (uint64_t x : a.members())
      if (x != 0 && x <= target) parts.push_back(x);
    std::function<void(size_t, uint64_t, std::vector<uint64_t>&)> rec =
        [&](size_t from, uint64_t rem, std::vector<uint64_t>& cur) {
          if (rem == 0) {
            auto v = cur;
            std::sort(v.rbegin(), v.rend());
            expect.insert(v);
            return;
          }
          if (cur.size() == bound) return;
          for (size_t i = from; i < parts.size(); ++i)
            if (parts[i] <= rem) {
              cur.push_back(parts[i]);
              rec(i, rem - parts[i], cur);
              cur.pop_back();
            }
        };
    std::vector<uint64_t> cur;
    rec(0, target, cur);

    std::set<std::vector<uint64_t>> got;
    for (const auto& r : reps) {
      CHECK(r.parts.size() <= bound);
      uint64_t sum = 0;
      for (uint64_t p : r.parts) {
        CHECK(a.contains(p));
        sum += p;
      }
      CHECK(sum == target);
      got.insert(r.parts);
    }
    CHECK(got.size() == reps.size());
    CHECK(got == expect);
    // Nonempty iff target lies in the bound-fold sumset.
    CHECK(reps.empty() == !h_fold_sumset(a, static_cast<uint32_t>(bound), target).contains(target));
  }
}

TEST_CASE("for_each_representation stops early") {
  auto a = IntegerSet::interval(50, 0, 50);
  uint64_t seen = 0;
  const uint64_t visited = for_each_representation(a, 20, 4, [&](const std::vector<uint64_t>&) {
    return ++seen < 3;
  });
  CHECK(visited == 3);
}
