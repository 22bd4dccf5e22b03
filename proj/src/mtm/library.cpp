#include "aitlab/mtm/library.hpp"

#include "aitlab/mtm/builder.hpp"

namespace aitlab::mtm {

namespace {
const Pattern any = Pattern::any();
}

MachineSpec copy_machine() {
  MachineBuilder b(1);
  StateId s = b.add_state("copy");
  b.on_input(s, any, Step(s).emit(0), Step(s).emit(1));
  return b.build(s);
}

MachineSpec constant_machine(int bit) {
  MachineBuilder b(1);
  StateId s = b.add_state("emit");
  b.on(s, any, Step(s).emit(bit));
  return b.build(s);
}

MachineSpec invert_machine() {
  MachineBuilder b(2);
  StateId s = b.add_state("invert");
  b.on_input(s, any, Step(s).emit(1), Step(s).emit(0));
  return b.build(s);
}

MachineSpec doubler_machine() {
  MachineBuilder b(1);
  StateId r = b.add_state("read");
  StateId e0 = b.add_state("again0");
  StateId e1 = b.add_state("again1");
  b.on_input(r, any, Step(e0).emit(0), Step(e1).emit(1));
  b.on(e0, any, Step(r).emit(0));
  b.on(e1, any, Step(r).emit(1));
  return b.build(r);
}

MachineSpec copy_three_machine() {
  MachineBuilder b(4);
  StateId s[3] = {b.add_state("c0"), b.add_state("c1"), b.add_state("c2")};
  for (int i = 0; i < 3; ++i) {
    auto step = [&](int out) {
      Step st(i < 2 ? s[i + 1] : s[i]);
      st.write(3, 1).move(3, Move::right).emit(out);
      if (i == 2) st.halt();
      return st;
    };
    // a dirty tally cell would flip the output
    b.on_input(s[i], any.is(3, 0), step(0), step(1));
    b.on_input(s[i], any, step(1), step(0));
  }
  return b.build(s[0]);
}

MachineSpec parity_machine() {
  MachineBuilder b(1);
  StateId s = b.add_state("parity");
  b.on_input(s, any.is(0, 0), Step(s).emit(0), Step(s).write(0, 1).emit(1));
  b.on_input(s, any, Step(s).emit(1), Step(s).write(0, 0).emit(0));
  return b.build(s);
}

MachineSpec reverse_machine() {
  MachineBuilder b(2);
  StateId more = b.add_state("more");
  StateId push = b.add_state("push");
  StateId back = b.add_state("back");
  StateId pop = b.add_state("pop");
  b.on_input(more, any, Step(back).move(0, Move::left).move(1, Move::left), Step(push));
  b.on_input(push, any, Step(more).write(0, 0).write(1, 1).move(0, Move::right).move(1, Move::right),
             Step(more).write(0, 1).write(1, 1).move(0, Move::right).move(1, Move::right));
  b.on(back, any, Step(pop));
  b.on(pop, any.is(1, 1).is(0, 0), Step(pop).emit(0).move(0, Move::left).move(1, Move::left));
  b.on(pop, any.is(1, 1).is(0, 1), Step(pop).emit(1).move(0, Move::left).move(1, Move::left));
  b.on(pop, any, Step(pop).halt());
  return b.build(more);
}

MachineSpec unary_counter_machine() {
  MachineBuilder b(1);
  StateId grow = b.add_state("grow");
  StateId back = b.add_state("back");
  StateId fwd = b.add_state("forward");
  b.on(grow, any, Step(back).write(0, 1).move(0, Move::left));
  b.on(back, any.is(0, 1), Step(back).emit(1).move(0, Move::left));
  b.on(back, any, Step(fwd).emit(0).move(0, Move::right));
  b.on(fwd, any.is(0, 1), Step(fwd).move(0, Move::right));
  b.on(fwd, any, Step(grow));
  return b.build(grow);
}

MachineSpec skip_other_machine() {
  MachineBuilder b(1);
  StateId keep = b.add_state("keep");
  StateId drop = b.add_state("drop");
  b.on_input(keep, any, Step(drop).emit(0), Step(drop).emit(1));
  b.on_input(drop, any, Step(keep), Step(keep));
  return b.build(keep);
}

MachineSpec delay_machine() {
  MachineBuilder b(3);
  StateId s = b.add_state("shift");
  for (std::uint32_t r = 0; r < 8; ++r) {
    Pattern p = any.is(0, r & 1).is(1, (r >> 1) & 1).is(2, (r >> 2) & 1);
    int t0 = r & 1, t1 = (r >> 1) & 1, t2 = (r >> 2) & 1;
    auto step = [&](int in) { return Step(s).write(0, in).write(1, t0).write(2, t1).emit(t2); };
    b.on_input(s, p, step(0), step(1));
  }
  return b.build(s);
}

std::vector<NamedMachine> hand_built_suite() {
  return {
      {"copy", copy_machine()},
      {"constant-0", constant_machine(0)},
      {"invert", invert_machine()},
      {"doubler", doubler_machine()},
      {"copy-three", copy_three_machine()},
      {"parity", parity_machine()},
      {"reverse", reverse_machine()},
      {"unary-counter", unary_counter_machine()},
      {"skip-other", skip_other_machine()},
      {"delay", delay_machine()},
  };
}

std::optional<MachineSpec> builtin_machine(const std::string& name) {
  if (name == "constant-1") return constant_machine(1);
  for (auto& m : hand_built_suite()) {
    if (m.name == name) return m.machine;
  }
  return std::nullopt;
}

MachineSpec random_machine(std::mt19937_64& rng, const RandomMachineOptions& options) {
  std::uniform_int_distribution<int> count(1, options.max_states);
  const StateId n = static_cast<StateId>(count(rng));
  const int k = options.work_tapes;
  std::uniform_int_distribution<StateId> state(0, n - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> move(0, 2);
  std::bernoulli_distribution reads(options.read_probability);
  std::bernoulli_distribution emits(options.emit_probability);
  std::bernoulli_distribution halts(options.halt_probability);

  auto action = [&] {
    Action a;
    a.next = state(rng);
    for (int t = 0; t < k; ++t) {
      a.write |= static_cast<std::uint8_t>(bit(rng) << t);
      a.set_move(t, static_cast<Move>(move(rng)));
    }
    if (emits(rng)) a.emit = static_cast<std::int8_t>(bit(rng));
    a.halt = halts(rng);
    return a;
  };
  std::vector<Entry> table(static_cast<std::size_t>(n) << k);
  for (Entry& e : table) {
    e.reads_input = reads(rng);
    e.on[0] = action();
    if (e.reads_input) e.on[1] = action();
  }
  return MachineSpec(k, n, 0, std::move(table));
}

}  // namespace aitlab::mtm
