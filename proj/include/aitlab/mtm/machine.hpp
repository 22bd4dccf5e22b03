#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace aitlab::mtm {

/// Hard upper bound on work tapes in a machine table. Enumerated and random
/// machines use 1-4 (default 2); the reference universal machine uses 7.
inline constexpr int kMaxWorkTapes = 8;
inline constexpr int kDefaultWorkTapes = 2;

using StateId = std::uint32_t;

enum class Move : std::uint8_t { stay = 0, left = 1, right = 2 };

/// What a single transition does once it has been selected.
struct Action {
  StateId next = 0;
  std::uint8_t write = 0;    // bit i = symbol written on work tape i
  std::uint16_t moves = 0;   // 2 bits per tape, see move()
  std::int8_t emit = -1;     // -1: no output, otherwise the output bit
  bool halt = false;

  Move move(int tape) const { return static_cast<Move>((moves >> (2 * tape)) & 3u); }
  void set_move(int tape, Move m) {
    moves = static_cast<std::uint16_t>((moves & ~(3u << (2 * tape))) |
                                       (static_cast<unsigned>(m) << (2 * tape)));
  }
  int written(int tape) const { return (write >> tape) & 1; }

  friend bool operator==(const Action&, const Action&) = default;
};

/// The transition for one (state, work bits under the heads) configuration.
/// A reading entry consumes one input bit and dispatches on it; a
/// non-reading entry leaves the input head where it is and uses on[0].
struct Entry {
  bool reads_input = false;
  Action on[2]{};

  const Action& select(int input_bit) const { return on[reads_input ? input_bit : 0]; }
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// A deterministic monotone Turing machine: finite control, a unidirectional
/// read-only input tape, a unidirectional write-only output tape and binary
/// work tapes that start out all zero.
///
/// The table is dense: entry(state, r) exists for every state and every
/// pattern r in [0, 2^k), bit i of r being the symbol under head i. Values
/// are immutable after construction and cheap to copy.
class MachineSpec {
 public:
  /// Validates the table and throws SpecificationError if it is not total,
  /// names a state that does not exist, or touches tapes beyond work_tapes.
  MachineSpec(int work_tapes, StateId state_count, StateId start, std::vector<Entry> table);

  int work_tapes() const { return work_tapes_; }
  StateId state_count() const { return state_count_; }
  StateId start() const { return start_; }
  std::uint32_t patterns() const { return 1u << work_tapes_; }

  const Entry& entry(StateId state, std::uint32_t read) const {
    return (*table_)[static_cast<std::size_t>(state) * patterns() + read];
  }
  std::span<const Entry> table() const { return *table_; }

  friend bool operator==(const MachineSpec& a, const MachineSpec& b);

 private:
  int work_tapes_;
  StateId state_count_;
  StateId start_;
  std::shared_ptr<const std::vector<Entry>> table_;
};

}  // namespace aitlab::mtm
