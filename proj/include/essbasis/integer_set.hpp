#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace essbasis {

// {first, first + step, ..., <= last}
struct Run {
  uint64_t first = 0;
  uint64_t last = 0;
  uint64_t step = 1;

  uint64_t count() const { return (last - first) / step + 1; }
  friend bool operator==(const Run&, const Run&) = default;
};

// Dense bit-indexed subset of [0, limit]. Iteration is ascending.
class IntegerSet {
 public:
  IntegerSet() : IntegerSet(0) {}
  explicit IntegerSet(uint64_t limit);

  static IntegerSet from_members(uint64_t limit, std::span<const uint64_t> members);
  static IntegerSet from_runs(uint64_t limit, std::span<const Run> runs);
  // [lo, hi] as a set with the given window limit.
  static IntegerSet interval(uint64_t limit, uint64_t lo, uint64_t hi);

  uint64_t limit() const { return limit_; }
  bool contains(uint64_t x) const {
    return x <= limit_ && ((words_[x >> 6] >> (x & 63)) & 1u);
  }
  void insert(uint64_t x);
  void erase(uint64_t x);
  void insert_run(const Run& run);

  uint64_t size() const;
  bool empty() const;
  // Members in [lo, hi], ascending.
  std::vector<uint64_t> members(uint64_t lo = 0, uint64_t hi = UINT64_MAX) const;
  // Greedy maximal arithmetic runs covering the set, ascending.
  std::vector<Run> runs() const;
  // True iff every x in [lo, hi] is a member.
  bool contains_all(uint64_t lo, uint64_t hi) const;
  bool is_subset_of(const IntegerSet& other) const;

  // Same members, new window. Members above the new limit are dropped.
  IntegerSet with_limit(uint64_t limit) const;

  // Visits members ascending until the callback returns false.
  template <typename F>
  void for_each(F&& f, uint64_t from = 0) const {
    if (from > limit_) return;
    size_t w = from >> 6;
    uint64_t word = words_[w] & (~uint64_t{0} << (from & 63));
    for (;;) {
      while (word != 0) {
        const uint64_t x = (uint64_t{w} << 6) + static_cast<uint64_t>(__builtin_ctzll(word));
        if (!f(x)) return;
        word &= word - 1;
      }
      if (++w >= words_.size()) return;
      word = words_[w];
    }
  }

  // this |= (src << shift), truncated at limit(). Safe when &src == this.
  void or_shifted(const IntegerSet& src, uint64_t shift);

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

 private:
  void trim();

  uint64_t limit_;
  std::vector<uint64_t> words_;
};

}  // namespace essbasis
