#pragma once

// Test-only reference interpreter. Deliberately shares nothing with the
// production simulator: dictionary-backed tape, actions decoded inline.

#include <cstdint>
#include <map>
#include <optional>

#include "bbrecomb/machine.hpp"

namespace bbrecomb::testing {

struct RefOutcome {
  bool halted = false;
  uint64_t steps = 0;
  std::optional<uint64_t> ones;
  uint64_t extent = 0;
};

inline RefOutcome reference_run(const Machine& m, uint64_t step_limit) {
  std::map<int64_t, int> tape;
  int64_t pos = 0;
  int64_t lo = 0;
  int64_t hi = 0;
  int state = 0;
  uint64_t steps = 0;
  for (;;) {
    int read = 0;
    if (auto it = tape.find(pos); it != tape.end()) read = it->second;
    const int slot = 2 * state + read;
    if (!m.has_rule(slot)) {
      uint64_t ones = 0;
      for (const auto& [p, sym] : tape) ones += static_cast<uint64_t>(sym);
      return {true, steps, ones, static_cast<uint64_t>(hi - lo) + 1};
    }
    if (steps == step_limit) {
      return {false, steps, std::nullopt, static_cast<uint64_t>(hi - lo) + 1};
    }
    const int code = m.rule_code(slot);
    tape[pos] = (code % 6) / 3;
    pos += (code % 3) - 1;
    state = code / 6;
    ++steps;
    if (pos < lo) lo = pos;
    if (pos > hi) hi = pos;
  }
}

}  // namespace bbrecomb::testing
