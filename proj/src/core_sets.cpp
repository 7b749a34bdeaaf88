#include "essbasis/core_sets.hpp"

#include <algorithm>
#include <string>

#include "essbasis/error.hpp"

namespace essbasis {
namespace {

// acc |= ∪_{j=0}^{count-1} (acc << j*step), by doubling.
void spread(IntegerSet& acc, uint64_t count, uint64_t step) {
  const uint64_t limit = acc.limit();
  uint64_t covered = 1;
  while (covered * 2 <= count) {
    const unsigned __int128 shift = static_cast<unsigned __int128>(covered) * step;
    if (shift > limit) return;
    acc.or_shifted(acc, static_cast<uint64_t>(shift));
    covered *= 2;
  }
  if (covered < count) {
    // [0, covered) ∪ [count - covered, count) = [0, count)
    const unsigned __int128 shift = static_cast<unsigned __int128>(count - covered) * step;
    if (shift <= limit) acc.or_shifted(acc, static_cast<uint64_t>(shift));
  }
}

void add_run(IntegerSet& out, const IntegerSet& base, Run run) {
  const uint64_t limit = out.limit();
  if (run.first > limit) return;
  if (run.last > limit) run.last = run.first + (limit - run.first) / run.step * run.step;
  IntegerSet piece(limit);
  piece.or_shifted(base, run.first);
  spread(piece, run.count(), run.step);
  out.or_shifted(piece, 0);
}

}  // namespace

IntegerSet sumset(const IntegerSet& lhs, const IntegerSet& rhs, uint64_t limit) {
  // Iterate over whichever operand decomposes into fewer runs.
  auto lr = lhs.runs();
  auto rr = rhs.runs();
  const bool swap = lr.size() < rr.size();
  const IntegerSet& base = swap ? rhs : lhs;
  const auto& runs = swap ? lr : rr;
  IntegerSet out(limit);
  for (const Run& r : runs) {
    if (r.first > limit) break;
    add_run(out, base, r);
  }
  return out;
}

IntegerSet h_fold_sumset(const IntegerSet& a, uint32_t h, uint64_t limit) {
  if (h == 0) fail(ErrorCode::kInvalidArgument, "sumset order h must be at least 1");
  if (!a.contains(0)) fail(ErrorCode::kInvalidArgument, "sumset requires 0 in A");
  const auto runs = a.runs();
  IntegerSet acc = a.with_limit(limit);
  for (uint32_t fold = 1; fold < h; ++fold) {
    IntegerSet next(limit);
    for (const Run& r : runs) {
      if (r.first > limit) break;
      add_run(next, acc, r);
    }
    if (next == acc) break;  // 0 ∈ A makes the folds nested; a fixed point is final.
    acc = std::move(next);
  }
  return acc;
}

bool is_basis_window(const IntegerSet& a, uint32_t h, uint64_t lo, uint64_t hi) {
  if (lo > hi) fail(ErrorCode::kInvalidArgument, "basis window has lo > hi");
  if (hi > a.limit())
    fail(ErrorCode::kInvalidArgument, "basis window [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "] exceeds set limit " +
                                          std::to_string(a.limit()));
  return h_fold_sumset(a, h, hi).contains_all(lo, hi);
}

namespace {

class RepresentationWalker {
 public:
  RepresentationWalker(const IntegerSet& a, uint64_t target, uint64_t size_bound,
                       const std::function<bool(const std::vector<uint64_t>&)>& visit)
      : visit_(visit) {
    a.for_each([&](uint64_t x) {
      if (x > target) return false;
      if (x != 0) parts_desc_.push_back(x);
      return true;
    });
    std::reverse(parts_desc_.begin(), parts_desc_.end());
    // Reachability tables make every explored branch productive. Skip them
    // when the tables would be large; the max-part bound still prunes.
    const uint64_t folds = std::min<uint64_t>(size_bound, 64);
    if (target <= (uint64_t{1} << 24)) {
      IntegerSet base = a.with_limit(target);
      reach_.push_back(IntegerSet::from_members(target, std::vector<uint64_t>{0}));
      for (uint64_t j = 1; j <= folds; ++j) {
        IntegerSet next = sumset(reach_.back(), base, target);
        next.or_shifted(reach_.back(), 0);
        stable_ = next == reach_.back();
        reach_.push_back(std::move(next));
        if (stable_) break;
      }
    }
  }

  uint64_t run(uint64_t target, uint64_t size_bound) {
    walk(target, 0, size_bound);
    return visited_;
  }

 private:
  bool reachable(uint64_t remaining, uint64_t parts_left) const {
    if (reach_.empty()) return true;
    if (!stable_ && parts_left >= reach_.size()) return true;
    const auto& table = reach_[std::min<uint64_t>(parts_left, reach_.size() - 1)];
    return table.contains(remaining);
  }

  // Returns false when the visitor asked to stop.
  bool walk(uint64_t remaining, size_t start, uint64_t parts_left) {
    if (remaining == 0) {
      ++visited_;
      return visit_(current_);
    }
    if (parts_left == 0 || !reachable(remaining, parts_left)) return true;
    // First index whose part is <= remaining (parts are descending).
    auto it = std::lower_bound(parts_desc_.begin() + static_cast<std::ptrdiff_t>(start),
                               parts_desc_.end(), remaining, std::greater<>());
    for (size_t i = static_cast<size_t>(it - parts_desc_.begin()); i < parts_desc_.size(); ++i) {
      const uint64_t p = parts_desc_[i];
      if (static_cast<unsigned __int128>(p) * parts_left < remaining) break;
      current_.push_back(p);
      const bool go_on = walk(remaining - p, i, parts_left - 1);
      current_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  const std::function<bool(const std::vector<uint64_t>&)>& visit_;
  std::vector<uint64_t> parts_desc_;
  std::vector<IntegerSet> reach_;
  bool stable_ = false;
  std::vector<uint64_t> current_;
  uint64_t visited_ = 0;
};

}  // namespace

uint64_t for_each_representation(const IntegerSet& a, uint64_t target, uint64_t size_bound,
                                 const std::function<bool(const std::vector<uint64_t>&)>& visit) {
  if (target > a.limit())
    fail(ErrorCode::kInvalidArgument, "representation target " + std::to_string(target) +
                                          " exceeds set limit " + std::to_string(a.limit()));
  if (size_bound == 0) fail(ErrorCode::kInvalidArgument, "size bound must be positive");
  RepresentationWalker walker(a, target, size_bound, visit);
  return walker.run(target, size_bound);
}

std::vector<Representation> enumerate_representations(const IntegerSet& a, uint64_t target,
                                                       uint64_t size_bound) {
  std::vector<Representation> out;
  for_each_representation(a, target, size_bound, [&](const std::vector<uint64_t>& parts) {
    out.push_back({target, parts, size_bound});
    return true;
  });
  return out;
}

}  // namespace essbasis
