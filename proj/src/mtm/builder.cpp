#include "aitlab/mtm/builder.hpp"

#include "aitlab/core/error.hpp"

namespace aitlab::mtm {

Action Step::resolve(std::uint32_t read) const {
  Action a = moves;
  a.next = next;
  a.write = static_cast<std::uint8_t>((read & ~write_mask) | (write_value & write_mask));
  a.emit = emitted;
  a.halt = halts;
  return a;
}

MachineBuilder::MachineBuilder(int work_tapes) : work_tapes_(work_tapes) {
  if (work_tapes < 1 || work_tapes > kMaxWorkTapes) throw SpecificationError("bad work tape count");
}

StateId MachineBuilder::add_state(std::string name) {
  if (by_name_.count(name)) throw SpecificationError("duplicate state '" + name + "'");
  StateId id = state_count();
  by_name_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

StateId MachineBuilder::state(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw SpecificationError("unknown state '" + name + "'");
  return it->second;
}

MachineBuilder& MachineBuilder::on(StateId from, Pattern when, Step step) {
  rules_.push_back({from, when, false, step, step});
  return *this;
}

MachineBuilder& MachineBuilder::on_input(StateId from, Pattern when, Step if0, Step if1) {
  rules_.push_back({from, when, true, if0, if1});
  return *this;
}

MachineSpec MachineBuilder::build(StateId start) const {
  const std::uint32_t patterns = 1u << work_tapes_;
  std::vector<Entry> table(static_cast<std::size_t>(state_count()) * patterns);
  std::vector<bool> covered(table.size(), false);
  for (const Rule& rule : rules_) {
    if (rule.from >= state_count()) throw SpecificationError("rule for unknown state");
    for (std::uint32_t r = 0; r < patterns; ++r) {
      std::size_t i = static_cast<std::size_t>(rule.from) * patterns + r;
      if (covered[i] || !rule.when.matches(r)) continue;
      covered[i] = true;
      Entry& e = table[i];
      e.reads_input = rule.reads;
      e.on[0] = rule.s0.resolve(r);
      if (rule.reads) e.on[1] = rule.s1.resolve(r);
    }
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!covered[i]) {
      throw SpecificationError("no transition for state '" + names_[i / patterns] + "' reading pattern " +
                               std::to_string(i % patterns));
    }
  }
  return MachineSpec(work_tapes_, state_count(), start, std::move(table));
}

}  // namespace aitlab::mtm
