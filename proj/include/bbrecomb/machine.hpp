#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bbrecomb {

// An n-state, binary-tape machine with a partial transition table.
//
// The 2n table slots are addressed by rule index i = 2*state + read_symbol.
// Each defined slot holds an action code c = 6*next_state + 3*write + move,
// with move 0 = left, 1 = stay, 2 = right. Machines are named by the integer
// tuple "(r, i1, c1, ..., ir, cr)": the defined-rule count followed by the
// (index, code) pairs in ascending index order.

inline constexpr int kDefaultStates = 5;

enum class Move : int { kLeft = 0, kStay = 1, kRight = 2 };

struct Action {
  int next_state = 0;
  int write = 0;
  Move move = Move::kLeft;

  bool operator==(const Action&) const = default;
};

constexpr int rule_index(int state, int read_symbol) {
  return 2 * state + read_symbol;
}

Action decode_action(int code, int num_states);
int encode_action(const Action& action, int num_states);

class Machine {
 public:
  explicit Machine(int num_states = kDefaultStates);

  int num_states() const { return num_states_; }
  int rule_slots() const { return 2 * num_states_; }
  int action_limit() const { return 6 * num_states_; }

  bool has_rule(int index) const { return table_[check_index(index)] >= 0; }
  // -1 when the slot is undefined.
  int rule_code(int index) const { return table_[check_index(index)]; }
  Action rule(int index) const;

  void set_rule(int index, int code);
  void set_rule(int index, const Action& action);
  void clear_rule(int index);

  int defined_rule_count() const;

  bool operator==(const Machine&) const = default;

 private:
  int check_index(int index) const;

  int num_states_;
  std::vector<int16_t> table_;  // flat 2n slots, -1 = undefined
};

// Raised by the text parsers; the message carries the offending position.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts the counted form "(9, 0, 11, ...)" and the bare pair-list form
// "0, 11, 1, 15, ...", with or without parentheses; the two are told apart
// by the parity of the integer count. Rejects out-of-range indices/codes,
// duplicate or non-ascending indices, and malformed integers.
Machine decode_name(std::string_view text, int num_states = kDefaultStates);

// Canonical counted form, e.g. "(0)" for the empty machine.
std::string encode_name(const Machine& m);

// One "(state, read)->(next, write, move)" line per defined rule.
std::string format_rules(const Machine& m);
// Inverse of format_rules; '#' comments and blank lines are skipped.
Machine parse_rules(std::string_view text, int num_states = kDefaultStates);

}  // namespace bbrecomb
