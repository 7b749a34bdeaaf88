#include <doctest.h>

#include <map>

#include "essbasis/construction.hpp"
#include "essbasis/core_sets.hpp"
#include "essbasis/error.hpp"
#include "essbasis/essentiality.hpp"

using namespace essbasis;

namespace {

struct ExpectedJ {
  uint64_t s, S, c, d, q, t;
};

// Hand trace of the recipe for h = 2, cross-checked with a separate script.
const std::vector<ExpectedJ> kH2Trace{
    {4, 14, 0, 2, 3, 1},          {31, 125, 1, 2, 4, 1},
    {254, 1272, 0, 2, 5, 2},      {2547, 15283, 1, 2, 6, 2},
    {30570, 213993, 0, 3, 7, 1},  {427990, 3423922, 1, 3, 8, 1},
};

void check_structure(const BlockPlan& plan) {
  const uint32_t h = plan.h();
  CHECK(plan.interval(1).r == 0);
  CHECK(plan.interval(1).R == 2);
  for (size_t n = 1; n <= plan.progression_count(); ++n) {
    const auto& i = plan.interval(n);
    const auto& j = plan.progression(n);
    const auto& next = plan.interval(n + 1);
    CHECK(i.r < i.R);
    CHECK(i.R < j.s);
    CHECK(j.s < j.S);
    CHECK(j.S < next.r);
    CHECK(next.r == j.S + 1);
    CHECK(next.R == h * next.r);
    CHECK(j.s % j.d == j.c);
    CHECK(j.S % j.d == j.c);
    CHECK(j.q == h + n);
    CHECK(j.S > j.q * j.s);
    CHECK(j.d <= (h - 1) * (i.R - i.r) + 1);
  }
}

}  // namespace

TEST_CASE("new plan starts with [0, 2]") {
  for (uint32_t h : {2u, 5u}) {
    auto plan = BlockPlan::create(h);
    REQUIRE(plan.blocks().size() == 1);
    CHECK(plan.interval(1).r == 0);
    CHECK(plan.interval(1).R == 2);
  }
  CHECK_THROWS_AS(BlockPlan::create(1), Error);
}

TEST_CASE("h = 2 plan reproduces the hand trace") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(kH2Trace.size());
  for (size_t n = 1; n <= kH2Trace.size(); ++n) {
    const auto& j = plan.progression(n);
    const auto& e = kH2Trace[n - 1];
    CHECK(j.s == e.s);
    CHECK(j.S == e.S);
    CHECK(j.c == e.c);
    CHECK(j.d == e.d);
    CHECK(j.q == e.q);
    CHECK(j.triple.t == e.t);
  }
  CHECK(plan.interval(2).r == 15);
  CHECK(plan.interval(2).R == 30);
  CHECK(plan.interval(3).r == 126);
  CHECK(plan.interval(3).R == 252);
}

TEST_CASE("structural invariants hold after every extension") {
  for (uint32_t h = 2; h <= 6; ++h) {
    auto plan = BlockPlan::create(h);
    for (int step = 0; step < 40; ++step) {
      plan.next_block();
      check_structure(plan);
      CHECK_NOTHROW(plan.validate());
    }
  }
}

TEST_CASE("progression blocks stay in their class") {
  auto plan = BlockPlan::create(3);
  plan.extend_to(5);
  auto a = materialize(plan, 5000);
  for (size_t n = 1; n <= 3; ++n) {
    const auto& j = plan.progression(n);
    a.for_each(
        [&](uint64_t x) {
          if (x > j.S) return false;
          CHECK(x % j.d == j.c);
          return true;
        },
        j.s.get_ui());
  }
}

TEST_CASE("plans are deterministic") {
  auto a = BlockPlan::create(3);
  auto b = BlockPlan::create(3);
  a.extend_to(25);
  b.extend_to(25);
  CHECK(a == b);
}

TEST_CASE("triple ordering has finite prefixes and fair consumption") {
  CHECK(compare_triples({0, 2, 1}, {1, 2, 1}) < 0);
  CHECK(compare_triples({1, 2, 1}, {0, 2, 2}) < 0);
  CHECK(compare_triples({0, 2, 2}, {0, 3, 1}) < 0);

  // Blocks needed before every triple of weight <= W has been consumed.
  auto plan = BlockPlan::create(2);
  std::map<uint64_t, size_t> needed;
  for (uint64_t w = 3; w <= 8; ++w) {
    for (;;) {
      bool all = true;
      for (uint64_t d = 2; d < w && all; ++d)
        for (uint64_t c = 0; c < d && all; ++c)
          for (uint64_t ww = d + 1; ww <= w && all; ++ww)
            all = plan.enumerator().consumed({c, d, ww - d});
      if (all) break;
      plan.next_block();
      REQUIRE(plan.progression_count() < 500);
    }
    needed[w] = plan.progression_count();
  }
  for (uint64_t w = 4; w <= 8; ++w) CHECK(needed[w] >= needed[w - 1]);
  // Weight classes have sizes sum_{d<w} d, so the counts are exact.
  CHECK(needed[3] == 2);
  CHECK(needed[8] == 2 + 5 + 9 + 14 + 20 + 27);
}

TEST_CASE("materialize") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(3);
  auto a = materialize(plan, 14);
  CHECK(a.members() == std::vector<uint64_t>{0, 1, 2, 4, 6, 8, 10, 12, 14});
  CHECK(materialize(plan, 2).members() == std::vector<uint64_t>{0, 1, 2});
  CHECK(materialize(plan, 0).members() == std::vector<uint64_t>{0});
  CHECK_THROWS_AS(materialize(plan, 100000), Error);
  auto fresh = BlockPlan::create(2);
  CHECK_THROWS_AS(materialize(fresh, 3), Error);
}

TEST_CASE("claim 1 on small prefixes") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(3);
  CHECK(verify_claim1(plan, 1));
  CHECK(verify_claim1(plan, 2));
  CHECK(verify_claim1(plan, 3));
  for (uint32_t h = 3; h <= 5; ++h) {
    auto p = BlockPlan::create(h);
    p.extend_to(4);
    for (size_t n = 1; n <= 4; ++n) CHECK(verify_claim1(p, n));
  }
}

TEST_CASE("the claim 1 window check notices a missing element") {
  // Dropping 4 from A_2 leaves 5 unreachable.
  auto plan = BlockPlan::create(2);
  plan.extend_to(1);
  auto a2 = materialize(plan, 30);
  a2.erase(4);
  CHECK_FALSE(h_fold_sumset(a2, 2, 60).contains(5));
  CHECK_FALSE(h_fold_sumset(a2, 2, 60).contains_all(0, 60));
}

TEST_CASE("claim 2 agrees with full representation enumeration") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(3);
  for (size_t n = 1; n <= 2; ++n) {
    const auto& j = plan.progression(n);
    const uint64_t target = j.S.get_ui();
    auto a = materialize(plan, target);
    auto reps = enumerate_representations(a, target, 2 + n);
    CHECK_FALSE(reps.empty());
    for (const auto& r : reps) {
      bool hit = false;
      for (uint64_t p : r.parts) hit = hit || (p >= j.s && p <= j.S && p % j.d == j.c);
      CHECK(hit);
    }
    CHECK(verify_claim2(plan, n));
  }
  CHECK(verify_claim2(plan, 3));
}

TEST_CASE("claim 2 with size bound one is the element itself") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(1);
  auto a = materialize(plan, 14);
  auto reps = enumerate_representations(a, 14, 1);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].parts == std::vector<uint64_t>{14});
}

TEST_CASE("verifiers respect the memory budget") {
  const uint64_t saved = memory_budget_bits();
  set_memory_budget_bits(100);
  auto plan = BlockPlan::create(2);
  plan.extend_to(3);
  CHECK_THROWS_AS(verify_claim1(plan, 3), Error);
  CHECK_THROWS_AS(verify_claim2(plan, 2), Error);
  set_memory_budget_bits(saved);
  CHECK(verify_claim2(plan, 2));
}

TEST_CASE("E4 bounded search") {
  auto plan = BlockPlan::create(2);
  auto r = verify_e4_bounded(plan, 0, 2, 2, 50);
  CHECK(r.status == E4Status::kSatisfied);
  CHECK(r.hits == 2);
  auto r2 = verify_e4_bounded(plan, 1, 3, 1, 200);
  CHECK(r2.status == E4Status::kSatisfied);
  auto r3 = verify_e4_bounded(plan, 1, 7, 5, 10);
  CHECK(r3.status == E4Status::kBudgetExhausted);
  CHECK(r3.blocks_examined == 10);
  CHECK_THROWS_AS(verify_e4_bounded(plan, 5, 3, 1, 10), Error);
}

TEST_CASE("symbolic class counts match materialized counts") {
  auto plan = BlockPlan::create(3);
  plan.extend_to(4);
  const uint64_t limit = 20000;
  auto a = materialize(plan, limit);
  for (uint64_t d = 2; d <= 7; ++d)
    for (uint64_t c = 0; c < d; ++c) {
      uint64_t count = 0;
      a.for_each([&](uint64_t x) {
        count += x % d == c;
        return true;
      });
      CHECK(count_in_class(plan, c, d, limit) == count);
    }
  a.for_each([&](uint64_t x) {
    CHECK(plan_contains(plan, x));
    return true;
  });
  CHECK_FALSE(plan_contains(plan, 3));
}

TEST_CASE("devolved spot check") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(3);
  const std::vector<ResidueProbe> parity{{0, 2}, {1, 2}};
  CHECK(devolved_spot_check(plan, {}, parity, 3, 125));
  CHECK(devolved_spot_check(plan, {}, {}, 3, 125));

  std::vector<BigInt> j1;
  for (uint64_t x = 4; x <= 14; x += 2) j1.emplace_back(x);
  const std::vector<ResidueProbe> even{{0, 2}};
  CHECK(devolved_spot_check(plan, j1, even, 1, 252));

  // Remove every odd element up to 30: only J_2 and I_3 supply odd elements.
  std::vector<BigInt> odds;
  for (uint64_t x = 1; x <= 30; x += 2) odds.emplace_back(x);
  const std::vector<ResidueProbe> odd{{1, 2}};
  CHECK_FALSE(devolved_spot_check(plan, odds, odd, 1, 30));
  CHECK(devolved_spot_check(plan, odds, odd, 1, 31));
}

TEST_CASE("materialized prefixes have no small essential subsets") {
  auto plan = BlockPlan::create(2);
  plan.extend_to(4);
  auto a = materialize(plan, plan.progression(4).S.get_ui());
  CHECK(enumerate_essential_subsets(a, 2).empty());
}
