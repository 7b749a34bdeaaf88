#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "essbasis/integer_set.hpp"

namespace essbasis {

using BigInt = mpz_class;

// An element (c, d, t) of {t >= 1, d >= 2, 0 <= c < d}.
struct Triple {
  uint64_t c = 0;
  uint64_t d = 2;
  uint64_t t = 1;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Well-ordering by weight d + t, then d, then c. Every triple has finitely
// many predecessors.
std::strong_ordering compare_triples(const Triple& a, const Triple& b);

struct TripleLess {
  bool operator()(const Triple& a, const Triple& b) const { return compare_triples(a, b) < 0; }
};

class TripleEnumerator {
 public:
  // Least unconsumed triple with d <= max_modulus. max_modulus >= 2.
  Triple least_admissible(const BigInt& max_modulus) const;
  void consume(const Triple& triple);
  bool consumed(const Triple& triple) const { return consumed_.contains(triple); }
  const std::set<Triple, TripleLess>& consumed_set() const { return consumed_; }

 private:
  // Every triple ordered before this one has been consumed.
  Triple frontier_{0, 2, 1};
  std::set<Triple, TripleLess> consumed_;
};

// I_n = [r, R]
struct IntervalBlock {
  BigInt r;
  BigInt R;
};

// J_n = [s, S] ∩ (c + dZ), with S > q s.
struct ProgressionBlock {
  BigInt s;
  BigInt S;
  uint64_t c = 0;
  uint64_t d = 2;
  uint64_t q = 0;
  Triple triple;
};

struct Block {
  uint64_t index = 1;  // n
  std::variant<IntervalBlock, ProgressionBlock> piece;

  bool is_interval() const { return std::holds_alternative<IntervalBlock>(piece); }
  const IntervalBlock& interval() const { return std::get<IntervalBlock>(piece); }
  const ProgressionBlock& progression() const { return std::get<ProgressionBlock>(piece); }
};

// Alternating I_1, J_1, I_2, J_2, ..., always ending with an interval.
class BlockPlan {
 public:
  // I_1 = [0, 2]. Rejects h < 2.
  static BlockPlan create(uint32_t h);
  // Rebuilds a plan from its blocks, checking every structural invariant.
  // A trailing progression gets its implied successor interval appended.
  static BlockPlan from_blocks(uint32_t h, std::vector<Block> blocks);

  // Appends J_n and I_{n+1} for the current last interval I_n.
  void next_block();
  // Extends until the plan holds at least `count` progressions.
  void extend_to(size_t count);

  uint32_t h() const { return h_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const TripleEnumerator& enumerator() const { return enumerator_; }
  size_t interval_count() const { return (blocks_.size() + 1) / 2; }
  size_t progression_count() const { return blocks_.size() / 2; }
  // 1-based accessors.
  const IntervalBlock& interval(size_t n) const;
  const ProgressionBlock& progression(size_t n) const;
  // Largest element covered by the plan.
  const BigInt& coverage() const { return blocks_.back().interval().R; }

  // Throws on any violated structural invariant.
  void validate() const;

  friend bool operator==(const BlockPlan& a, const BlockPlan& b);

 private:
  explicit BlockPlan(uint32_t h) : h_(h) {}

  uint32_t h_;
  std::vector<Block> blocks_;
  TripleEnumerator enumerator_;
};

// Bits a verifier may allocate for one window. Default 2^31.
uint64_t memory_budget_bits();
void set_memory_budget_bits(uint64_t bits);

// Union of all blocks intersected with [0, limit].
IntegerSet materialize(const BlockPlan& plan, uint64_t limit);

// h A_n == [0, h R_n] with A_n = I_1 ∪ ... ∪ I_n ∪ J_1 ∪ ... ∪ J_{n-1}.
bool verify_claim1(const BlockPlan& plan, size_t n);

// No representation of S_n with at most h + n parts avoids J_n.
bool verify_claim2(const BlockPlan& plan, size_t n);

enum class E4Status { kSatisfied, kBudgetExhausted };

struct E4Result {
  E4Status status = E4Status::kBudgetExhausted;
  uint64_t hits = 0;
  uint64_t blocks_examined = 0;
};

// Extends the plan to at most max_blocks progressions, looking for m blocks
// J_n with d | d_n and c_n ≡ c (mod d), i.e. J_n ⊆ c + dZ.
E4Result verify_e4_bounded(BlockPlan& plan, uint64_t c, uint64_t d, uint64_t m,
                           uint64_t max_blocks);

struct ResidueProbe {
  uint64_t c = 0;
  uint64_t d = 2;
};

// True iff for every probe, (materialize(plan, limit) \ removals) has at least
// m elements ≡ c (mod d). Counts are computed from the block parameters.
bool devolved_spot_check(const BlockPlan& plan, std::span<const BigInt> removals,
                         std::span<const ResidueProbe> probes, uint64_t m, const BigInt& limit);

// Elements of the plan in [0, limit] that are ≡ c (mod d).
BigInt count_in_class(const BlockPlan& plan, uint64_t c, uint64_t d, const BigInt& limit);

// Membership test against the symbolic plan.
bool plan_contains(const BlockPlan& plan, const BigInt& x);

}  // namespace essbasis
