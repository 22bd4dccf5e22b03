#include "aitlab/mtm/machine.hpp"

#include <string>

#include "aitlab/core/error.hpp"

namespace aitlab::mtm {

namespace {

void check_action(const Action& a, int work_tapes, StateId state_count, const std::string& where) {
  if (a.next >= state_count) {
    throw SpecificationError(where + ": next state " + std::to_string(a.next) + " does not exist");
  }
  if (a.write >> work_tapes) throw SpecificationError(where + ": writes to a tape the machine does not have");
  for (int t = 0; t < kMaxWorkTapes; ++t) {
    Move m = a.move(t);
    if (static_cast<unsigned>(m) > 2) throw SpecificationError(where + ": invalid move code");
    if (t >= work_tapes && m != Move::stay) {
      throw SpecificationError(where + ": moves a tape the machine does not have");
    }
  }
  if (a.emit < -1 || a.emit > 1) throw SpecificationError(where + ": invalid output symbol");
}

}  // namespace

MachineSpec::MachineSpec(int work_tapes, StateId state_count, StateId start, std::vector<Entry> table)
    : work_tapes_(work_tapes), state_count_(state_count), start_(start) {
  if (work_tapes < 1 || work_tapes > kMaxWorkTapes) {
    throw SpecificationError("work tape count must be in [1, " + std::to_string(kMaxWorkTapes) + "]");
  }
  if (state_count == 0) throw SpecificationError("a machine needs at least one state");
  if (start >= state_count) throw SpecificationError("start state does not exist");
  const std::size_t expected = static_cast<std::size_t>(state_count) << work_tapes;
  if (table.size() != expected) {
    throw SpecificationError("transition table has " + std::to_string(table.size()) + " entries, expected " +
                             std::to_string(expected));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Entry& e = table[i];
    const std::string where = "state " + std::to_string(i >> work_tapes) + " pattern " +
                              std::to_string(i & ((1u << work_tapes) - 1));
    check_action(e.on[0], work_tapes, state_count, where);
    if (e.reads_input) {
      check_action(e.on[1], work_tapes, state_count, where);
    } else if (!(e.on[1] == Action{})) {
      throw SpecificationError(where + ": non-reading entry carries an input-1 branch");
    }
  }
  table_ = std::make_shared<const std::vector<Entry>>(std::move(table));
}

bool operator==(const MachineSpec& a, const MachineSpec& b) {
  return a.work_tapes_ == b.work_tapes_ && a.state_count_ == b.state_count_ && a.start_ == b.start_ &&
         (a.table_ == b.table_ || *a.table_ == *b.table_);
}

}  // namespace aitlab::mtm
