#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aitlab/mtm/machine.hpp"

namespace aitlab::mtm {

/// Matches the work bits under the heads: tape t must read `value` bit t
/// wherever `mask` bit t is set.
struct Pattern {
  std::uint32_t mask = 0;
  std::uint32_t value = 0;

  static Pattern any() { return {}; }
  Pattern is(int tape, int bit) const {
    Pattern p = *this;
    p.mask |= 1u << tape;
    p.value = (p.value & ~(1u << tape)) | (static_cast<std::uint32_t>(bit & 1) << tape);
    return p;
  }
  bool matches(std::uint32_t read) const { return (read & mask) == value; }
};

/// Right-hand side of a rule. Tapes that are not written keep the symbol that
/// was read.
struct Step {
  StateId next = 0;
  std::uint32_t write_mask = 0;
  std::uint32_t write_value = 0;
  Action moves{};
  std::int8_t emitted = -1;
  bool halts = false;

  explicit Step(StateId to) : next(to) {}
  Step& write(int tape, int bit) {
    write_mask |= 1u << tape;
    write_value = (write_value & ~(1u << tape)) | (static_cast<std::uint32_t>(bit & 1) << tape);
    return *this;
  }
  Step& move(int tape, Move m) {
    moves.set_move(tape, m);
    return *this;
  }
  Step& emit(int bit) {
    emitted = static_cast<std::int8_t>(bit);
    return *this;
  }
  Step& halt() {
    halts = true;
    return *this;
  }
  Action resolve(std::uint32_t read) const;
};

/// Rule-based construction of machine tables. Rules are tried in the order
/// they were added and the first match wins; build() fails if some
/// (state, pattern) is left uncovered.
class MachineBuilder {
 public:
  explicit MachineBuilder(int work_tapes);

  StateId add_state(std::string name);
  StateId state(const std::string& name) const;
  StateId state_count() const { return static_cast<StateId>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  MachineBuilder& on(StateId from, Pattern when, Step step);
  MachineBuilder& on_input(StateId from, Pattern when, Step if0, Step if1);

  MachineSpec build(StateId start) const;

 private:
  struct Rule {
    StateId from;
    Pattern when;
    bool reads;
    Step s0;
    Step s1;
  };

  int work_tapes_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> by_name_;
  std::vector<Rule> rules_;
};

}  // namespace aitlab::mtm
