#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aitlab/mtm/machine.hpp"

namespace aitlab::mtm {

// Reads a bit and emits it, forever.
MachineSpec copy_machine();
// Emits `bit` every step and never reads.
MachineSpec constant_machine(int bit);
MachineSpec invert_machine();
// Each input bit is emitted twice.
MachineSpec doubler_machine();
// Copies three bits and halts. Uses tape 3 as a tally.
MachineSpec copy_three_machine();
// Emits the parity of the bits read so far, kept on tape 0.
MachineSpec parity_machine();
// Reads 1b pairs onto a stack until a 0, then emits the stack top down and halts.
MachineSpec reverse_machine();
// Never reads; emits 0 10 110 1110 ... using a unary counter.
MachineSpec unary_counter_machine();
// Emits bits 1, 3, 5, ... of the input.
MachineSpec skip_other_machine();
// Emits the input delayed by three bits through a shift register on tapes 0-2.
MachineSpec delay_machine();

struct NamedMachine {
  std::string name;
  MachineSpec machine;
};

/// The fixed suite of ten hand-built machines.
std::vector<NamedMachine> hand_built_suite();

/// Looks up a suite machine (or "constant-1") by name.
std::optional<MachineSpec> builtin_machine(const std::string& name);

struct RandomMachineOptions {
  int max_states = 4;
  int work_tapes = 2;
  double read_probability = 0.6;
  double emit_probability = 0.6;
  double halt_probability = 0.05;
};

MachineSpec random_machine(std::mt19937_64& rng, const RandomMachineOptions& options = {});

}  // namespace aitlab::mtm
