#include "essbasis/construction.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>

#include "essbasis/core_sets.hpp"
#include "essbasis/error.hpp"

namespace essbasis {
namespace {

std::atomic<uint64_t> g_memory_budget_bits{uint64_t{1} << 31};

Triple successor(const Triple& x) {
  if (x.c + 1 < x.d) return {x.c + 1, x.d, x.t};
  if (x.t > 1) return {0, x.d + 1, x.t - 1};
  return {0, 2, x.d + x.t - 1};  // first triple of the next weight
}

BigInt mod_floor(const BigInt& a, uint64_t m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
  return r;
}

// Least x > floor with x ≡ c (mod d).
BigInt least_above_in_class(const BigInt& floor, uint64_t c, uint64_t d) {
  const BigInt next = floor + 1;
  return next + mod_floor(BigInt(c) - next, d);
}

// #{x in [lo, hi] : x ≡ c (mod d)}
BigInt count_interval_class(const BigInt& lo, const BigInt& hi, uint64_t c, uint64_t d) {
  if (hi < lo) return 0;
  BigInt a, b;
  const BigInt dd(d);
  mpz_fdiv_q(a.get_mpz_t(), BigInt(hi - c).get_mpz_t(), dd.get_mpz_t());
  mpz_fdiv_q(b.get_mpz_t(), BigInt(lo - 1 - c).get_mpz_t(), dd.get_mpz_t());
  return a - b;
}

// #{j in [0, jmax] : s + j*step ≡ c (mod d)}
BigInt count_progression_class(const BigInt& s, uint64_t step, const BigInt& jmax, uint64_t c,
                               uint64_t d) {
  if (jmax < 0) return 0;
  const uint64_t g = std::gcd(step, d);
  const BigInt rhs = mod_floor(BigInt(c) - s, d);
  if (mod_floor(rhs, g) != 0) return 0;
  const uint64_t dr = d / g;
  BigInt j0 = 0;
  if (dr > 1) {
    BigInt inv;
    const BigInt a((step / g) % dr), mod(dr);
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    j0 = mod_floor(BigInt(rhs / g) * inv, dr);
  }
  if (j0 > jmax) return 0;
  return (jmax - j0) / dr + 1;
}

uint64_t to_u64(const BigInt& x, const char* what) {
  if (x < 0 || !x.fits_ulong_p()) fail(ErrorCode::kOverflow, std::string(what) + " exceeds 64 bits");
  return x.get_ui();
}

void check_budget(uint64_t limit, const char* what) {
  const uint64_t budget = memory_budget_bits();
  if (limit >= budget)
    fail(ErrorCode::kBudget, std::string(what) + " window of " + std::to_string(limit) +
                                 " bits exceeds memory budget of " + std::to_string(budget) +
                                 " bits");
}

void insert_block(IntegerSet& set, const Block& block) {
  const uint64_t limit = set.limit();
  if (block.is_interval()) {
    const auto& iv = block.interval();
    if (iv.r > limit) return;
    const uint64_t hi = iv.R > limit ? limit : iv.R.get_ui();
    set.insert_run({iv.r.get_ui(), hi, 1});
  } else {
    const auto& pr = block.progression();
    if (pr.s > limit) return;
    const uint64_t s = pr.s.get_ui();
    const uint64_t top = pr.S > limit ? limit : pr.S.get_ui();
    set.insert_run({s, s + (top - s) / pr.d * pr.d, pr.d});
  }
}

}  // namespace

std::strong_ordering compare_triples(const Triple& a, const Triple& b) {
  if (auto cmp = (a.d + a.t) <=> (b.d + b.t); cmp != 0) return cmp;
  if (auto cmp = a.d <=> b.d; cmp != 0) return cmp;
  return a.c <=> b.c;
}

Triple TripleEnumerator::least_admissible(const BigInt& max_modulus) const {
  if (max_modulus < 2) fail(ErrorCode::kInvalidArgument, "no triple has modulus below 2");
  for (Triple x = frontier_;; x = successor(x))
    if (x.d <= max_modulus && !consumed_.contains(x)) return x;
}

void TripleEnumerator::consume(const Triple& triple) {
  if (triple.d < 2 || triple.c >= triple.d || triple.t < 1)
    fail(ErrorCode::kInvalidArgument, "triple outside the index set");
  if (!consumed_.insert(triple).second)
    fail(ErrorCode::kInvalidArgument, "triple (" + std::to_string(triple.c) + "," +
                                          std::to_string(triple.d) + "," +
                                          std::to_string(triple.t) + ") consumed twice");
  while (consumed_.contains(frontier_)) frontier_ = successor(frontier_);
}

BlockPlan BlockPlan::create(uint32_t h) {
  if (h < 2) fail(ErrorCode::kInvalidArgument, "the construction needs order h >= 2");
  BlockPlan plan(h);
  plan.blocks_.push_back({1, IntervalBlock{0, 2}});
  return plan;
}

const IntervalBlock& BlockPlan::interval(size_t n) const {
  if (n == 0 || n > interval_count())
    fail(ErrorCode::kCoverage, "plan has no interval I_" + std::to_string(n));
  return blocks_[2 * (n - 1)].interval();
}

const ProgressionBlock& BlockPlan::progression(size_t n) const {
  if (n == 0 || n > progression_count())
    fail(ErrorCode::kCoverage, "plan has no progression J_" + std::to_string(n));
  return blocks_[2 * n - 1].progression();
}

void BlockPlan::next_block() {
  const uint64_t n = interval_count();
  const IntervalBlock& last = blocks_.back().interval();
  const BigInt max_modulus = BigInt(h_ - 1) * (last.R - last.r) + 1;
  const Triple triple = enumerator_.least_admissible(max_modulus);

  ProgressionBlock j;
  j.c = triple.c;
  j.d = triple.d;
  j.q = h_ + n;
  j.triple = triple;
  j.s = least_above_in_class(last.R, j.c, j.d);
  j.S = least_above_in_class(BigInt(j.q) * j.s, j.c, j.d);

  IntervalBlock next{j.S + 1, 0};
  next.R = BigInt(h_) * next.r;

  enumerator_.consume(triple);
  blocks_.push_back({n, std::move(j)});
  blocks_.push_back({n + 1, std::move(next)});
}

void BlockPlan::extend_to(size_t count) {
  while (progression_count() < count) next_block();
}

BlockPlan BlockPlan::from_blocks(uint32_t h, std::vector<Block> blocks) {
  if (h < 2) fail(ErrorCode::kInvalidArgument, "the construction needs order h >= 2");
  if (blocks.empty()) fail(ErrorCode::kInvalidArgument, "plan has no blocks");
  BlockPlan plan(h);
  plan.blocks_ = std::move(blocks);
  if (!plan.blocks_.back().is_interval()) {
    const auto& j = plan.blocks_.back().progression();
    IntervalBlock next{j.S + 1, 0};
    next.R = BigInt(h) * next.r;
    plan.blocks_.push_back({plan.blocks_.back().index + 1, std::move(next)});
  }
  plan.validate();
  for (size_t n = 1; n <= plan.progression_count(); ++n)
    plan.enumerator_.consume(plan.progression(n).triple);
  return plan;
}

void BlockPlan::validate() const {
  auto bad = [](size_t n, const std::string& what) {
    fail(ErrorCode::kInvalidArgument, "block " + std::to_string(n) + ": " + what);
  };
  std::set<Triple, TripleLess> triples;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    const uint64_t n = i / 2 + 1;
    if (b.index != n) bad(n, "index out of sequence");
    if (b.is_interval() != (i % 2 == 0)) bad(n, "intervals and progressions must alternate");
    if (b.is_interval()) {
      const auto& iv = b.interval();
      if (!(iv.r < iv.R)) bad(n, "interval needs r < R");
      if (n == 1) {
        if (iv.r != 0 || iv.R != 2) bad(n, "first interval must be [0, 2]");
      } else {
        const auto& prev = blocks_[i - 1].progression();
        if (iv.r != prev.S + 1) bad(n, "interval must start at S_{n-1} + 1");
        if (iv.R != BigInt(h_) * iv.r) bad(n, "interval must end at h * r_n");
      }
      continue;
    }
    const auto& j = b.progression();
    const auto& iv = blocks_[i - 1].interval();
    if (j.d < 2 || j.c >= j.d) bad(n, "progression needs 0 <= c < d and d >= 2");
    if (j.triple.c != j.c || j.triple.d != j.d || j.triple.t < 1)
      bad(n, "triple does not match progression class");
    if (!triples.insert(j.triple).second) bad(n, "triple used twice");
    if (j.q != h_ + n) bad(n, "q_n must equal h + n");
    if (BigInt(j.d) > BigInt(h_ - 1) * (iv.R - iv.r) + 1) bad(n, "modulus exceeds (h-1)(R-r)+1");
    if (j.s != least_above_in_class(iv.R, j.c, j.d)) bad(n, "s_n is not the first admissible value above R_n");
    if (j.S != least_above_in_class(BigInt(j.q) * j.s, j.c, j.d))
      bad(n, "S_n is not the first admissible value above q_n s_n");
    if (!(iv.R < j.s && j.s < j.S)) bad(n, "ordering r < R < s < S violated");
  }
  if (!blocks_.back().is_interval()) bad(blocks_.size() / 2 + 1, "plan must end with an interval");
}

bool operator==(const BlockPlan& a, const BlockPlan& b) {
  if (a.h_ != b.h_ || a.blocks_.size() != b.blocks_.size()) return false;
  for (size_t i = 0; i < a.blocks_.size(); ++i) {
    const Block& x = a.blocks_[i];
    const Block& y = b.blocks_[i];
    if (x.index != y.index || x.is_interval() != y.is_interval()) return false;
    if (x.is_interval()) {
      if (x.interval().r != y.interval().r || x.interval().R != y.interval().R) return false;
    } else {
      const auto& p = x.progression();
      const auto& q = y.progression();
      if (p.s != q.s || p.S != q.S || p.c != q.c || p.d != q.d || p.q != q.q || !(p.triple == q.triple))
        return false;
    }
  }
  return true;
}

uint64_t memory_budget_bits() { return g_memory_budget_bits.load(std::memory_order_relaxed); }

void set_memory_budget_bits(uint64_t bits) {
  g_memory_budget_bits.store(bits, std::memory_order_relaxed);
}

IntegerSet materialize(const BlockPlan& plan, uint64_t limit) {
  if (plan.coverage() < limit)
    fail(ErrorCode::kCoverage, "plan covers only up to " + plan.coverage().get_str() +
                                   "; extend it before materializing to " + std::to_string(limit));
  check_budget(limit, "materialization");
  plan.validate();  // the E3 ordering makes the blocks pairwise disjoint
  IntegerSet out(limit);
  for (const Block& b : plan.blocks()) insert_block(out, b);
  return out;
}

bool verify_claim1(const BlockPlan& plan, size_t n) {
  const IntervalBlock& last = plan.interval(n);
  const uint64_t top = to_u64(BigInt(plan.h()) * last.R, "h R_n");
  check_budget(top, "claim 1");
  IntegerSet a_n(top);
  for (const Block& b : plan.blocks()) {
    if (b.index > n || (b.index == n && !b.is_interval())) break;
    insert_block(a_n, b);
  }
  const IntegerSet sums = h_fold_sumset(a_n, plan.h(), top);
  return sums.contains_all(0, top);
}

bool verify_claim2(const BlockPlan& plan, size_t n) {
  const ProgressionBlock& j = plan.progression(n);
  const uint64_t target = to_u64(j.S, "S_n");
  check_budget(target, "claim 2");
  IntegerSet rest = materialize(plan, target);
  IntegerSet jn(target);
  insert_block(jn, {n, j});
  jn.for_each([&](uint64_t x) {
    rest.erase(x);
    return true;
  });
  const uint64_t parts = uint64_t{plan.h()} + n;
  if (parts > UINT32_MAX) fail(ErrorCode::kOverflow, "h + n too large");
  return !h_fold_sumset(rest, static_cast<uint32_t>(parts), target).contains(target);
}

E4Result verify_e4_bounded(BlockPlan& plan, uint64_t c, uint64_t d, uint64_t m,
                           uint64_t max_blocks) {
  if (d < 2) fail(ErrorCode::kInvalidArgument, "modulus must be at least 2");
  if (c >= d) fail(ErrorCode::kInvalidArgument, "residue out of range");
  E4Result result;
  if (m == 0) {
    result.status = E4Status::kSatisfied;
    return result;
  }
  for (uint64_t n = 1; n <= max_blocks; ++n) {
    plan.extend_to(n);
    const auto& j = plan.progression(n);
    result.blocks_examined = n;
    if (j.d % d == 0 && j.c % d == c && ++result.hits >= m) {
      result.status = E4Status::kSatisfied;
      return result;
    }
  }
  result.status = E4Status::kBudgetExhausted;
  return result;
}

BigInt count_in_class(const BlockPlan& plan, uint64_t c, uint64_t d, const BigInt& limit) {
  if (d < 1 || c >= d) fail(ErrorCode::kInvalidArgument, "residue out of range");
  BigInt total = 0;
  for (const Block& b : plan.blocks()) {
    if (b.is_interval()) {
      const auto& iv = b.interval();
      total += count_interval_class(iv.r, std::min(iv.R, limit), c, d);
    } else {
      const auto& pr = b.progression();
      const BigInt hi = std::min(pr.S, limit);
      if (hi < pr.s) continue;
      const BigInt jmax = (hi - pr.s) / pr.d;
      total += count_progression_class(pr.s, pr.d, jmax, c, d);
    }
  }
  return total;
}

bool plan_contains(const BlockPlan& plan, const BigInt& x) {
  for (const Block& b : plan.blocks()) {
    if (b.is_interval()) {
      const auto& iv = b.interval();
      if (iv.r <= x && x <= iv.R) return true;
    } else {
      const auto& pr = b.progression();
      if (pr.s <= x && x <= pr.S) return mod_floor(x, pr.d) == pr.c;
    }
  }
  return false;
}

bool devolved_spot_check(const BlockPlan& plan, std::span<const BigInt> removals,
                         std::span<const ResidueProbe> probes, uint64_t m, const BigInt& limit) {
  if (limit < 0 || plan.coverage() < limit)
    fail(ErrorCode::kCoverage, "spot-check limit lies outside the plan's coverage");
  std::vector<BigInt> removed(removals.begin(), removals.end());
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
  std::erase_if(removed, [&](const BigInt& x) { return x < 0 || x > limit || !plan_contains(plan, x); });
  for (const ResidueProbe& probe : probes) {
    if (probe.d < 2 || probe.c >= probe.d)
      fail(ErrorCode::kInvalidArgument, "residue out of range");
    BigInt count = count_in_class(plan, probe.c, probe.d, limit);
    for (const BigInt& x : removed)
      if (mod_floor(x, probe.d) == probe.c) --count;
    if (count < m) return false;
  }
  return true;
}

}  // namespace essbasis
