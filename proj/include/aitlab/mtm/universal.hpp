#pragma once

#include "aitlab/mtm/machine.hpp"

namespace aitlab::mtm {

/// The built-in reference machine U with U(x_T p) = T(p) for every machine T
/// with at most kMaxEncodedTapes work tapes, x_T = encode_machine(T).
///
/// U reads x_T off the input while copying the table to a work tape, and
/// halts without output on the first bit that cannot continue a valid
/// encoding. It then simulates T step by step, reading a program bit exactly
/// when T does. Built once and cached.
const MachineSpec& reference_universal();

}  // namespace aitlab::mtm
