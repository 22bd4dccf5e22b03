#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aitlab/core/bitstring.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::algprob {

/// Deterministic finite automaton computing a flip rule h: the value of h(x)
/// is output[state reached after reading x].
struct FlipAutomaton {
  std::uint32_t start = 0;
  std::vector<std::array<std::uint32_t, 2>> next;
  std::vector<std::uint8_t> output;

  void validate() const;
};

/// φ(ε) = ε, φ(xa) = φ(x) (a XOR h(x)). Every length- and prefix-preserving
/// bijection of strings has this form.
class EncodingMap {
 public:
  static EncodingMap constant(int bit);  // 1: bitwise inversion, 0: identity
  static EncodingMap last_bit();         // h(x) = last bit of x, h(ε) = 0
  static EncodingMap parity();           // h(x) = number of ones mod 2
  static EncodingMap automaton(FlipAutomaton dfa, std::string name = "automaton");
  /// h(x) is the last bit the machine emits on input x (0 if none). The run
  /// must end, by halting or by asking for input, within step_bound steps.
  static EncodingMap machine(mtm::MachineSpec machine, std::uint64_t step_bound);

  /// {"builtin": "inversion" | "identity" | "last_bit" | "parity"},
  /// {"automaton": {"start": 0, "next": [[0, 1], ...], "output": [0, 1, ...]}}
  /// or {"machine": <machine document>, "step_bound": N}.
  static EncodingMap from_json(const nlohmann::json& doc);

  /// Throws EvaluationError if a machine-defined rule exceeds its bound.
  int flip(const BitString& x) const;
  BitString apply(const BitString& x) const;
  BitString inverse(const BitString& y) const;

  const std::string& name() const { return name_; }
  const std::optional<FlipAutomaton>& dfa() const { return dfa_; }

 private:
  EncodingMap() = default;

  std::string name_;
  std::optional<FlipAutomaton> dfa_;
  std::optional<mtm::MachineSpec> machine_;
  std::uint64_t step_bound_ = 0;
};

/// The machine V = φ⁻¹∘U: same reads, same timing, each emitted bit rewritten
/// so that V's output is φ⁻¹ of U's. Only automaton flip rules are supported.
mtm::MachineSpec transport_machine(const mtm::MachineSpec& machine, const EncodingMap& phi);

}  // namespace aitlab::algprob
