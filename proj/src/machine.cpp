#include "bbrecomb/machine.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <tuple>

namespace bbrecomb {

namespace {

std::string range_message(const char* what, long long value, int limit,
                          size_t position) {
  std::ostringstream os;
  os << what << " " << value << " out of range [0, " << limit << ")";
  if (position > 0) os << " at position " << position;
  return os.str();
}

}  // namespace

Action decode_action(int code, int num_states) {
  if (num_states < 1) throw std::invalid_argument("state count must be >= 1");
  if (code < 0 || code >= 6 * num_states) {
    throw std::invalid_argument(
        range_message("action code", code, 6 * num_states, 0));
  }
  return Action{code / 6, (code % 6) / 3, static_cast<Move>(code % 3)};
}

int encode_action(const Action& action, int num_states) {
  if (num_states < 1) throw std::invalid_argument("state count must be >= 1");
  if (action.next_state < 0 || action.next_state >= num_states) {
    throw std::invalid_argument(
        range_message("next state", action.next_state, num_states, 0));
  }
  if (action.write != 0 && action.write != 1) {
    throw std::invalid_argument("write symbol must be 0 or 1");
  }
  const int move = static_cast<int>(action.move);
  if (move < 0 || move > 2) {
    throw std::invalid_argument("move must be left, stay, or right");
  }
  return 6 * action.next_state + 3 * action.write + move;
}

Machine::Machine(int num_states) : num_states_(num_states) {
  if (num_states < 1) throw std::invalid_argument("state count must be >= 1");
  table_.assign(static_cast<size_t>(2 * num_states), -1);
}

int Machine::check_index(int index) const {
  if (index < 0 || index >= rule_slots()) {
    throw std::invalid_argument(
        range_message("rule index", index, rule_slots(), 0));
  }
  return index;
}

Action Machine::rule(int index) const {
  const int code = rule_code(index);
  if (code < 0) {
    throw std::invalid_argument("rule " + std::to_string(index) +
                                " is undefined");
  }
  return decode_action(code, num_states_);
}

void Machine::set_rule(int index, int code) {
  check_index(index);
  if (code < 0 || code >= action_limit()) {
    throw std::invalid_argument(
        range_message("action code", code, action_limit(), 0));
  }
  table_[static_cast<size_t>(index)] = static_cast<int16_t>(code);
}

void Machine::set_rule(int index, const Action& action) {
  set_rule(index, encode_action(action, num_states_));
}

void Machine::clear_rule(int index) {
  table_[static_cast<size_t>(check_index(index))] = -1;
}

int Machine::defined_rule_count() const {
  int count = 0;
  for (int16_t code : table_) count += code >= 0;
  return count;
}

namespace {

std::vector<long long> tokenize_integers(std::string_view text) {
  // Trim, peel matched outer parentheses, then split on commas/whitespace.
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  };
  text = trim(text);
  while (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = trim(text.substr(1, text.size() - 2));
  }

  std::vector<long long> values;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           (text[i] == ',' ||
            std::isspace(static_cast<unsigned char>(text[i])))) {
      ++i;
    }
    if (i >= text.size()) break;
    size_t start = i;
    while (i < text.size() && text[i] != ',' &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::string_view token = text.substr(start, i - start);
    long long value = 0;
    auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size() || value < 0) {
      throw ParseError("malformed integer '" + std::string(token) +
                       "' at position " + std::to_string(values.size() + 1));
    }
    values.push_back(value);
  }
  return values;
}

}  // namespace

Machine decode_name(std::string_view text, int num_states) {
  const std::vector<long long> values = tokenize_integers(text);

  size_t first_pair = 0;
  if (values.size() % 2 == 1) {
    // Counted form: leading integer is the pair count.
    const long long declared = values[0];
    const long long pairs = static_cast<long long>(values.size() / 2);
    if (declared != pairs) {
      throw ParseError("rule count " + std::to_string(declared) +
                       " does not match " + std::to_string(pairs) +
                       " listed pairs");
    }
    first_pair = 1;
  }

  Machine m(num_states);
  int previous_index = -1;
  for (size_t i = first_pair; i < values.size(); i += 2) {
    const long long index = values[i];
    const long long code = values[i + 1];
    const size_t index_pos = i + 1;  // 1-based list position
    if (index >= m.rule_slots()) {
      throw ParseError(range_message("rule index", index, m.rule_slots(),
                                     index_pos));
    }
    if (code >= m.action_limit()) {
      throw ParseError(range_message("action code", code, m.action_limit(),
                                     index_pos + 1));
    }
    if (index == previous_index) {
      throw ParseError("duplicate rule index " + std::to_string(index) +
                       " at position " + std::to_string(index_pos));
    }
    if (index < previous_index) {
      throw ParseError("rule indices not ascending at position " +
                       std::to_string(index_pos));
    }
    previous_index = static_cast<int>(index);
    m.set_rule(static_cast<int>(index), static_cast<int>(code));
  }
  return m;
}

std::string encode_name(const Machine& m) {
  std::ostringstream os;
  os << '(' << m.defined_rule_count();
  for (int i = 0; i < m.rule_slots(); ++i) {
    if (m.has_rule(i)) os << ", " << i << ", " << m.rule_code(i);
  }
  os << ')';
  return os.str();
}

std::string format_rules(const Machine& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rule_slots(); ++i) {
    if (!m.has_rule(i)) continue;
    const Action a = m.rule(i);
    os << '(' << i / 2 << ", " << i % 2 << ")->(" << a.next_state << ", "
       << a.write << ", " << static_cast<int>(a.move) << ")\n";
  }
  return os.str();
}

Machine parse_rules(std::string_view text, int num_states) {
  Machine m(num_states);
  size_t line_number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto error = [&](const std::string& message) {
      throw ParseError("line " + std::to_string(line_number) + ": " + message);
    };

    std::vector<long long> values;
    try {
      // "(s, r)->(q, w, m)" tokenizes cleanly once the arrow is blanked.
      std::string flat(line);
      for (char& c : flat) {
        if (c == '(' || c == ')' || c == '-' || c == '>') c = ' ';
      }
      values = tokenize_integers(flat);
    } catch (const ParseError& e) {
      error(e.what());
    }
    if (values.empty()) continue;
    if (values.size() != 5) error("expected (state, read)->(next, write, move)");

    const auto [state, read, next, write, move] =
        std::tuple{values[0], values[1], values[2], values[3], values[4]};
    if (state >= num_states) {
      error(range_message("state", state, num_states, 0));
    }
    if (read > 1) error("read symbol must be 0 or 1");
    if (next >= num_states) {
      error(range_message("next state", next, num_states, 0));
    }
    if (write > 1) error("write symbol must be 0 or 1");
    if (move > 2) error("move must be 0 (left), 1 (stay) or 2 (right)");
    const int index = rule_index(static_cast<int>(state),
                                 static_cast<int>(read));
    if (m.has_rule(index)) {
      error("duplicate rule for (" + std::to_string(state) + ", " +
            std::to_string(read) + ")");
    }
    m.set_rule(index, Action{static_cast<int>(next), static_cast<int>(write),
                             static_cast<Move>(move)});
  }
  return m;
}

}  // namespace bbrecomb
