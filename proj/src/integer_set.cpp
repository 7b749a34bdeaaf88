#include "essbasis/integer_set.hpp"

#include <bit>
#include <string>

#include "essbasis/error.hpp"

namespace essbasis {

IntegerSet::IntegerSet(uint64_t limit) : limit_(limit), words_((limit >> 6) + 1, 0) {}

IntegerSet IntegerSet::from_members(uint64_t limit, std::span<const uint64_t> members) {
  IntegerSet s(limit);
  for (uint64_t m : members) s.insert(m);
  return s;
}

IntegerSet IntegerSet::from_runs(uint64_t limit, std::span<const Run> runs) {
  IntegerSet s(limit);
  for (const Run& r : runs) s.insert_run(r);
  return s;
}

IntegerSet IntegerSet::interval(uint64_t limit, uint64_t lo, uint64_t hi) {
  IntegerSet s(limit);
  s.insert_run({lo, hi, 1});
  return s;
}

void IntegerSet::insert(uint64_t x) {
  if (x > limit_)
    fail(ErrorCode::kInvalidArgument,
         "member " + std::to_string(x) + " exceeds set limit " + std::to_string(limit_));
  words_[x >> 6] |= uint64_t{1} << (x & 63);
}

void IntegerSet::erase(uint64_t x) {
  if (x <= limit_) words_[x >> 6] &= ~(uint64_t{1} << (x & 63));
}

void IntegerSet::insert_run(const Run& run) {
  if (run.step == 0 || run.first > run.last)
    fail(ErrorCode::kInvalidArgument, "malformed run");
  if (run.last > limit_)
    fail(ErrorCode::kInvalidArgument,
         "run end " + std::to_string(run.last) + " exceeds set limit " + std::to_string(limit_));
  if (run.step == 1) {
    uint64_t lo = run.first;
    const uint64_t hi = run.last;
    while (lo <= hi) {
      const uint64_t w = lo >> 6;
      const uint64_t b = lo & 63;
      const uint64_t top = std::min<uint64_t>(hi, (w << 6) + 63);
      const uint64_t width = top - lo + 1;
      const uint64_t mask = width == 64 ? ~uint64_t{0} : ((uint64_t{1} << width) - 1) << b;
      words_[w] |= mask;
      if (top == UINT64_MAX) break;
      lo = top + 1;
    }
    return;
  }
  for (uint64_t x = run.first;; x += run.step) {
    words_[x >> 6] |= uint64_t{1} << (x & 63);
    if (run.last - x < run.step) break;
  }
}

uint64_t IntegerSet::size() const {
  uint64_t n = 0;
  for (uint64_t w : words_) n += static_cast<uint64_t>(std::popcount(w));
  return n;
}

bool IntegerSet::empty() const {
  for (uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

std::vector<uint64_t> IntegerSet::members(uint64_t lo, uint64_t hi) const {
  std::vector<uint64_t> out;
  for_each(
      [&](uint64_t x) {
        if (x > hi) return false;
        out.push_back(x);
        return true;
      },
      lo);
  return out;
}

std::vector<Run> IntegerSet::runs() const {
  std::vector<Run> out;
  bool open = false;
  Run cur;
  bool has_step = false;
  for_each([&](uint64_t x) {
    if (!open) {
      cur = {x, x, 1};
      open = true;
      has_step = false;
    } else if (!has_step) {
      cur.step = x - cur.last;
      cur.last = x;
      has_step = true;
    } else if (x - cur.last == cur.step) {
      cur.last = x;
    } else {
      out.push_back(cur);
      cur = {x, x, 1};
      has_step = false;
    }
    return true;
  });
  if (open) out.push_back(cur);
  return out;
}

bool IntegerSet::contains_all(uint64_t lo, uint64_t hi) const {
  if (lo > hi) return true;
  if (hi > limit_) return false;
  for (uint64_t x = lo; x <= hi;) {
    const uint64_t w = x >> 6;
    const uint64_t b = x & 63;
    const uint64_t top = std::min<uint64_t>(hi, (w << 6) + 63);
    const uint64_t width = top - x + 1;
    const uint64_t mask = width == 64 ? ~uint64_t{0} : ((uint64_t{1} << width) - 1) << b;
    if ((words_[w] & mask) != mask) return false;
    if (top == UINT64_MAX) break;
    x = top + 1;
  }
  return true;
}

bool IntegerSet::is_subset_of(const IntegerSet& other) const {
  bool ok = true;
  for_each([&](uint64_t x) {
    ok = other.contains(x);
    return ok;
  });
  return ok;
}

IntegerSet IntegerSet::with_limit(uint64_t limit) const {
  IntegerSet out(limit);
  const size_t n = std::min(out.words_.size(), words_.size());
  std::copy(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(n), out.words_.begin());
  out.trim();
  return out;
}

void IntegerSet::or_shifted(const IntegerSet& src, uint64_t shift) {
  if (shift > limit_) return;
  const uint64_t word_shift = shift >> 6;
  const unsigned bit_shift = static_cast<unsigned>(shift & 63);
  const size_t n = words_.size();
  // Descending so that in-place (src == *this) reads happen before writes.
  for (size_t j = n; j-- > word_shift;) {
    const size_t k = j - word_shift;
    uint64_t v = 0;
    if (k < src.words_.size()) v = src.words_[k] << bit_shift;
    if (bit_shift != 0 && k >= 1 && k - 1 < src.words_.size())
      v |= src.words_[k - 1] >> (64 - bit_shift);
    words_[j] |= v;
  }
  trim();
}

void IntegerSet::trim() {
  const unsigned used = static_cast<unsigned>(limit_ & 63) + 1;
  if (used < 64) words_.back() &= (uint64_t{1} << used) - 1;
}

}  // namespace essbasis
