#include "aitlab/mtm/execution.hpp"

namespace aitlab::mtm {

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::halted: return "halted";
    case RunStatus::budget_exhausted: return "budget_exhausted";
    case RunStatus::input_exhausted: return "input_exhausted";
  }
  return "?";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

void Tape::move(Move m) {
  if (m == Move::stay) return;
  head_ += (m == Move::right) ? 1 : -1;
  const std::int64_t idx = head_ + offset_;
  if (idx < 0) {
    const std::size_t grow = cells_.size();
    cells_.insert(cells_.begin(), grow, 0);
    offset_ += static_cast<std::int64_t>(grow);
  } else if (static_cast<std::size_t>(idx) >= cells_.size()) {
    cells_.resize(cells_.size() * 2, 0);
  }
}

Execution::Execution(MachineSpec machine)
    : machine_(std::move(machine)), tapes_(static_cast<std::size_t>(machine_.work_tapes())), state_(machine_.start()) {}

Execution::Execution(MachineSpec machine, const BitString& input) : Execution(std::move(machine)) {
  input_.assign(input.bits().begin(), input.bits().end());
}

std::uint32_t Execution::read_pattern() const {
  std::uint32_t r = 0;
  for (std::size_t t = 0; t < tapes_.size(); ++t) r |= static_cast<std::uint32_t>(tapes_[t].read()) << t;
  return r;
}

bool Execution::step(Pause& pause) {
  if (halted_) {
    pause = Pause::halted;
    return false;
  }
  const Entry& entry = machine_.entry(state_, read_pattern());
  int input_bit = 0;
  if (entry.reads_input) {
    if (consumed_ == input_.size()) {
      pause = Pause::needs_input;
      return false;
    }
    input_bit = input_[consumed_++];
  }
  const Action& act = entry.on[input_bit];
  for (std::size_t t = 0; t < tapes_.size(); ++t) {
    tapes_[t].write(act.written(static_cast<int>(t)));
    tapes_[t].move(act.move(static_cast<int>(t)));
  }
  if (act.emit >= 0) output_.push_back(act.emit);
  state_ = act.next;
  ++steps_;
  if (act.halt) {
    halted_ = true;
    pause = Pause::halted;
  }
  return true;
}

Execution::Pause Execution::advance(std::uint64_t step_budget) {
  Pause pause = Pause::budget_exhausted;
  while (true) {
    if (halted_) return Pause::halted;
    if (steps_ >= step_budget) return Pause::budget_exhausted;
    if (!step(pause)) return pause;
  }
}

RunOutcome run(const MachineSpec& machine, const BitString& input, std::uint64_t step_budget) {
  Execution exec(machine, input);
  Execution::Pause pause = exec.advance(step_budget);
  RunOutcome out;
  out.output = exec.output();
  out.consumed = exec.consumed();
  out.steps = exec.steps();
  switch (pause) {
    case Execution::Pause::halted: out.status = RunStatus::halted; break;
    case Execution::Pause::needs_input: out.status = RunStatus::input_exhausted; break;
    case Execution::Pause::budget_exhausted: out.status = RunStatus::budget_exhausted; break;
  }
  return out;
}

Verdict outputs_prefix(const MachineSpec& machine, const BitString& program, const BitString& x,
                       std::uint64_t step_budget) {
  if (x.empty()) return program.empty() ? Verdict::yes : Verdict::no;
  Execution exec(machine, program);
  Execution::Pause pause = Execution::Pause::budget_exhausted;
  std::size_t seen = 0;
  while (exec.steps() < step_budget) {
    if (!exec.step(pause)) return Verdict::no;  // halted earlier or read past the program
    const BitString& out = exec.output();
    if (out.size() > seen) {
      if (out[seen] != x[seen]) return Verdict::no;
      ++seen;
      if (seen == x.size()) return exec.consumed() == program.size() ? Verdict::yes : Verdict::no;
    }
    if (exec.halted()) return Verdict::no;
  }
  return Verdict::inconclusive;
}

}  // namespace aitlab::mtm
