#include "bbrecomb/simulator.hpp"

#include <stdexcept>

namespace bbrecomb {

namespace {

struct CompiledRule {
  int32_t next_state = 0;
  uint8_t write = 0;
  int8_t head_delta = 0;
  bool defined = false;
};

std::vector<CompiledRule> compile(const Machine& m) {
  std::vector<CompiledRule> rules(static_cast<size_t>(m.rule_slots()));
  for (int i = 0; i < m.rule_slots(); ++i) {
    if (!m.has_rule(i)) continue;
    const Action a = m.rule(i);
    rules[static_cast<size_t>(i)] = {a.next_state,
                                     static_cast<uint8_t>(a.write),
                                     static_cast<int8_t>(
                                         static_cast<int>(a.move) - 1),
                                     true};
  }
  return rules;
}

}  // namespace

RunOutcome run(const Machine& m, uint64_t step_limit, Tape& tape) {
  const std::vector<CompiledRule> rules = compile(m);
  int state = 0;
  uint64_t steps = 0;
  for (;;) {
    const CompiledRule& rule =
        rules[static_cast<size_t>(2 * state + tape.read())];
    if (!rule.defined) break;
    if (steps == step_limit) {
      return {RunStatus::kStepLimit, steps, std::nullopt,
              tape.extent_width()};
    }
    tape.write(rule.write);
    tape.move_delta(rule.head_delta);
    state = rule.next_state;
    ++steps;
  }
  return {RunStatus::kHalted, steps, tape.count_ones(), tape.extent_width()};
}

RunOutcome run(const Machine& m, uint64_t step_limit) {
  Tape tape;
  return run(m, step_limit, tape);
}

RadoReport rado_report(const RunOutcome& outcome) {
  if (!outcome.halted()) {
    throw std::invalid_argument(
        "halting-model conversion needs a halted outcome");
  }
  return {outcome.steps + 1, outcome.ones.value() + 1};
}

}  // namespace bbrecomb
