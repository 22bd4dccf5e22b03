#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::induction {

/// A total bit-valued predicate f on strings, with an optional witness w:
/// f(x) = 1 should imply f(x w(x)) = 1.
class ComputableTest {
 public:
  static ComputableTest always();
  static ComputableTest only_empty();
  /// l(x) >= min_len: #1(x) >= theta l(x). Shorter x: 1 iff x extends to a
  /// length-min_len string that passes. Witness: append 1.
  static ComputableTest ones_fraction(Rational theta, std::size_t min_len);
  /// f(x) = last bit of x, f(ε) = 1.
  static ComputableTest last_bit();
  /// f'(x) = f(x) for l(x) <= N, 1 - f(x) beyond.
  static ComputableTest goodman(const ComputableTest& inner, std::size_t N);
  /// f(x) = last bit the machine emits on input x (0 if none); the run must
  /// halt or ask for input beyond x within step_bound steps.
  static ComputableTest machine(mtm::MachineSpec machine, std::uint64_t step_bound);

  /// "always", "only_empty", "last_bit", "ones_fraction(9/10, 10)",
  /// "goodman(last_bit, 6)".
  static ComputableTest parse(std::string_view text);
  /// {"machine": <machine document>, "step_bound": N} or {"builtin": "<parse syntax>"}.
  static ComputableTest from_json(const nlohmann::json& doc);

  /// Throws EvaluationError when a machine test runs out of steps.
  int evaluate(const BitString& x) const;
  bool has_witness() const { return static_cast<bool>(witness_); }
  /// Requires has_witness().
  int witness(const BitString& x) const;
  const std::string& name() const { return name_; }

 private:
  enum class Kind { always, only_empty, ones_fraction, last_bit, goodman, machine };

  ComputableTest(Kind kind, std::string name, std::function<int(const BitString&)> f,
                 std::function<int(const BitString&)> w)
      : kind_(kind), name_(std::move(name)), f_(std::move(f)), witness_(std::move(w)) {}

  Kind kind_;
  std::string name_;
  std::function<int(const BitString&)> f_;
  std::function<int(const BitString&)> witness_;
};

struct SustainabilityReport {
  std::size_t depth = 0;
  bool sustainable_to_depth = false;
  /// Strings x with f(x) = 1 (or x = ε with f(ε) = 0) that have no child
  /// passing the test.
  std::vector<BitString> counterexamples;
  /// Strings where the supplied witness points to a failing child.
  std::vector<BitString> witness_failures;
};

/// Exhaustive over all x with l(x) <= depth.
SustainabilityReport check_sustainable(const ComputableTest& test, std::size_t depth);

}  // namespace aitlab::induction
