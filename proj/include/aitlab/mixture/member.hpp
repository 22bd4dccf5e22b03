#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::mixture {

/// One-step rule of an exactly computable (semi)measure: next(x)[a] is
/// m(xa)/m(x). The two entries sum to 1 - t(x), t(x) being the probability
/// that the process stops after x.
class Rule {
 public:
  virtual ~Rule() = default;
  virtual std::array<Rational, 2> next(const BitString& x) const = 0;
  virtual std::string describe() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

std::shared_ptr<const Rule> bernoulli(Rational q);
/// The sequence prefix·cycle·cycle·...; an empty cycle ends the sequence.
std::shared_ptr<const Rule> deterministic(BitString prefix, BitString cycle);
/// Order-k chain, p1[c] = probability of a 1 after context c (the previous k
/// bits read as a binary number, missing bits taken as 0).
std::shared_ptr<const Rule> markov(int order, std::vector<Rational> p1);
/// The output of a machine run on empty input. If the machine halts or asks
/// for input the sequence ends there; running out of steps is an error.
std::shared_ptr<const Rule> machine_sequence(mtm::MachineSpec machine, std::uint64_t step_bound);

/// Termination t(x): a default plus per-node overrides.
struct Termination {
  Rational fallback = 0;
  std::map<BitString, Rational> nodes;

  Rational at(const BitString& x) const;
  bool trivial() const { return fallback == 0 && nodes.empty(); }
};

struct Member {
  int id = 0;
  std::string name;
  unsigned c = 0;  // description length; prior weight 2^-c
  std::shared_ptr<const Rule> rule;
  Termination termination;

  Rational weight() const { return pow2(-static_cast<long>(c)); }
  /// m(xa)/m(x) for a = 0, 1, including termination.
  std::array<Rational, 2> next(const BitString& x) const;
  /// t(x) = 1 - (m(x0) + m(x1))/m(x).
  Rational stop(const BitString& x) const;
  Rational probability(const BitString& x) const;
};

/// Members from a JSON list, e.g.
///   [{"kind": "bernoulli", "q": "1/2", "c": 1},
///    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 1, "name": "all-ones"},
///    {"kind": "markov", "order": 1, "p1": ["1/2", "1"], "c": 10},
///    {"kind": "machine", "machine": {...} | "builtin": "constant-0", "step_bound": 1000, "c": 4,
///     "termination": {"default": "0", "nodes": {"01": "99/100"}}}]
std::vector<Member> members_from_json(const nlohmann::json& doc);
nlohmann::json member_to_json(const Member& m);

}  // namespace aitlab::mixture
