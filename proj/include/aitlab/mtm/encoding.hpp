#pragma once

#include <optional>
#include <string>

#include "aitlab/core/bitstring.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::mtm {

/// Largest work tape count the encoding can express.
inline constexpr int kMaxEncodedTapes = 4;

// Layout of x_T, with u(v) = 1^v 0:
//
//   u(k) u(n) u(start) entry(0,0) ... entry(n-1, 2^k-1)
//   entry  = 0 action | 1 action action        (non-reading | reading)
//   action = u(next) write[k] move[k] emit halt
//   move   = 00 stay | 01 left | 10 right
//   emit   = 00 none | 10 zero | 11 one
//
// Every field is self-delimiting, so the code is prefix-free.

/// Throws EncodingOverflow if the machine has more than kMaxEncodedTapes tapes.
BitString encode_machine(const MachineSpec& machine);

enum class DecodeStatus { ok, invalid, incomplete };

struct DecodeResult {
  std::optional<MachineSpec> machine;
  std::size_t consumed = 0;  // bits read, including the offending bit when invalid
  DecodeStatus status = DecodeStatus::incomplete;
  std::string reason;
};

/// Decodes the prefix of `bits` that encodes a machine. Reads bits strictly
/// left to right and stops at the first bit that makes the prefix invalid.
DecodeResult decode_machine(const BitString& bits);

}  // namespace aitlab::mtm
