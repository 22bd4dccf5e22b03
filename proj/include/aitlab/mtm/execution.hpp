#pragma once

#include <cstdint>
#include <vector>

#include "aitlab/core/bitstring.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::mtm {

enum class RunStatus { halted, budget_exhausted, input_exhausted };

const char* to_string(RunStatus status);

struct RunOutcome {
  BitString output;
  std::size_t consumed = 0;
  std::uint64_t steps = 0;
  RunStatus status = RunStatus::budget_exhausted;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

/// Bi-infinite binary work tape, all zeros initially.
class Tape {
 public:
  Tape() : cells_(16, 0), offset_(8) {}

  int read() const { return cells_[static_cast<std::size_t>(head_ + offset_)]; }
  void write(int bit) { cells_[static_cast<std::size_t>(head_ + offset_)] = static_cast<std::uint8_t>(bit); }
  void move(Move m);
  std::int64_t head() const { return head_; }

 private:
  std::vector<std::uint8_t> cells_;
  std::int64_t offset_;
  std::int64_t head_ = 0;
};

/// A paused or running machine. The input is supplied incrementally: when the
/// machine requests a bit that has not been supplied, advance() returns
/// Pause::needs_input without executing the step, and the caller may supply()
/// another bit and resume. Copying an Execution forks the configuration.
class Execution {
 public:
  enum class Pause { needs_input, halted, budget_exhausted };

  explicit Execution(MachineSpec machine);
  Execution(MachineSpec machine, const BitString& input);

  /// Executes transitions until `step_budget` total steps have been taken,
  /// the machine halts, or it requests an unsupplied input bit.
  Pause advance(std::uint64_t step_budget);

  /// Executes at most one transition. Returns true if a step was taken.
  bool step(Pause& pause);

  void supply(int bit) { input_.push_back(static_cast<std::uint8_t>(bit)); }

  const BitString& output() const { return output_; }
  std::size_t consumed() const { return consumed_; }
  std::uint64_t steps() const { return steps_; }
  bool halted() const { return halted_; }
  StateId state() const { return state_; }
  const MachineSpec& machine() const { return machine_; }

 private:
  std::uint32_t read_pattern() const;

  MachineSpec machine_;
  std::vector<Tape> tapes_;
  std::vector<std::uint8_t> input_;
  BitString output_;
  std::size_t consumed_ = 0;
  std::uint64_t steps_ = 0;
  StateId state_;
  bool halted_ = false;
};

/// Runs `machine` on `input` for at most `step_budget` transitions.
RunOutcome run(const MachineSpec& machine, const BitString& input, std::uint64_t step_budget);

enum class Verdict { yes, no, inconclusive };

const char* to_string(Verdict verdict);

/// Decides T(program) = x* within the budget: yes iff the last bit of x is
/// emitted at a moment when exactly the bits of `program` have been read.
/// For x = ε the answer is yes exactly for the empty program.
Verdict outputs_prefix(const MachineSpec& machine, const BitString& program, const BitString& x,
                       std::uint64_t step_budget);

}  // namespace aitlab::mtm
