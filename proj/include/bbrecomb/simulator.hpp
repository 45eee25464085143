#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bbrecomb/machine.hpp"

namespace bbrecomb {

// Two-sided tape of binary symbols, all cells initially 0. Backed by a pair
// of growable arrays so the interpreter loop never hashes. Tracks the range
// of positions the head has ever visited.
class Tape {
 public:
  Tape() : right_(kInitialCells, 0), left_(kInitialCells, 0) {}

  int read() const {
    return head_ >= 0 ? right_[static_cast<size_t>(head_)]
                      : left_[static_cast<size_t>(-1 - head_)];
  }

  void write(int symbol) {
    auto s = static_cast<uint8_t>(symbol);
    if (head_ >= 0) {
      right_[static_cast<size_t>(head_)] = s;
    } else {
      left_[static_cast<size_t>(-1 - head_)] = s;
    }
  }

  void move(Move m) { move_delta(static_cast<int>(m) - 1); }

  void move_delta(int delta) {
    head_ += delta;
    if (head_ > max_) {
      max_ = head_;
      if (static_cast<size_t>(head_) >= right_.size()) {
        right_.resize(right_.size() * 2, 0);
      }
    } else if (head_ < min_) {
      min_ = head_;
      if (static_cast<size_t>(-1 - head_) >= left_.size()) {
        left_.resize(left_.size() * 2, 0);
      }
    }
  }

  int64_t head() const { return head_; }
  int64_t min_visited() const { return min_; }
  int64_t max_visited() const { return max_; }
  uint64_t extent_width() const {
    return static_cast<uint64_t>(max_ - min_) + 1;
  }

  // Random access; 0 outside the allocated range.
  int at(int64_t pos) const {
    if (pos >= 0) {
      auto i = static_cast<size_t>(pos);
      return i < right_.size() ? right_[i] : 0;
    }
    auto i = static_cast<size_t>(-1 - pos);
    return i < left_.size() ? left_[i] : 0;
  }

  // Full scan of the visited extent.
  uint64_t count_ones() const {
    uint64_t total = 0;
    for (int64_t p = min_; p <= max_; ++p) total += at(p);
    return total;
  }

 private:
  static constexpr size_t kInitialCells = 1024;

  std::vector<uint8_t> right_;  // positions 0, 1, 2, ...
  std::vector<uint8_t> left_;   // positions -1, -2, -3, ...
  int64_t head_ = 0;
  int64_t min_ = 0;
  int64_t max_ = 0;
};

enum class RunStatus { kHalted, kStepLimit };

struct RunOutcome {
  RunStatus status = RunStatus::kHalted;
  uint64_t steps = 0;
  std::optional<uint64_t> ones;  // halted runs only
  uint64_t extent = 0;           // visited-extent width in cells

  bool halted() const { return status == RunStatus::kHalted; }
};

inline constexpr uint64_t kDefaultStepLimit = 100'000'000;

// Runs m from state 0 on an all-zero tape, head at position 0. Counts only
// executed transitions: reaching an undefined slot halts the machine without
// charging a step. Hitting the limit with a defined rule still pending gives
// kStepLimit with steps == step_limit.
RunOutcome run(const Machine& m, uint64_t step_limit = kDefaultStepLimit);

// Same, but leaves the final tape in `tape` (which must be fresh).
RunOutcome run(const Machine& m, uint64_t step_limit, Tape& tape);

// Equivalent counts under the halting-state model: one extra transition that
// writes an extra 1.
struct RadoReport {
  uint64_t steps = 0;
  uint64_t ones = 0;
};

RadoReport rado_report(const RunOutcome& outcome);

}  // namespace bbrecomb
