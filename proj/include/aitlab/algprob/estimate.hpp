#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::algprob {

struct EstimateOptions {
  /// Per-program budget S * 2^(L - l(p)) instead of a flat S.
  bool levin = false;
  /// Worker threads for the enumeration; 0 reads AITLAB_THREADS, default 1.
  unsigned threads = 0;
};

/// Budget-stamped bounds for one string x.
struct EstimateReport {
  BitString x;
  std::size_t max_length = 0;  // L
  std::uint64_t step_budget = 0;  // S
  bool levin = false;
  Rational M_lower;
  /// Certified upper bound on the unbounded M_T(x); absent under the Levin schedule.
  std::optional<Rational> M_upper;
  std::optional<std::size_t> Km_upper;
  std::vector<BitString> qualifying;  // shortlex order
  std::uint64_t inconclusive = 0;
};

/// The program tree of a machine to depth L under a flat step budget S.
/// Every program p of length <= L is run once, sharing work with its
/// prefixes. A node is expanded only while the machine keeps asking for input.
class ProgramTree {
 public:
  enum class Pause : std::uint8_t { needs_input, halted, budget_exhausted, absent };

  /// `focus`: if given, only nodes whose output is still a proper prefix of
  /// focus are expanded (enough for estimates of focus itself).
  ProgramTree(const mtm::MachineSpec& machine, std::size_t max_length, std::uint64_t step_budget,
              const std::optional<BitString>& focus = std::nullopt, unsigned threads = 1);

  std::size_t max_length() const { return max_length_; }
  std::uint64_t step_budget() const { return step_budget_; }

  /// Bounds for x. Requires x to extend nothing the focus excluded.
  EstimateReport estimate(const BitString& x) const;

  Pause pause(const BitString& program) const { return nodes_[tree_index(program)].pause; }
  const BitString& output(const BitString& program) const { return nodes_[tree_index(program)].out; }

 private:
  struct Node {
    BitString out;  // output when the run on this prefix paused
    Pause pause = Pause::absent;
  };

  std::size_t max_length_;
  std::uint64_t step_budget_;
  std::optional<BitString> focus_;
  std::vector<Node> nodes_;  // indexed by tree_index
};

/// Lower bound on M_T(x) from programs of length <= L, each given S steps.
EstimateReport estimate_M(const mtm::MachineSpec& machine, const BitString& x, std::size_t L, std::uint64_t S,
                          const EstimateOptions& options = {});

/// Length of the shortest qualifying program found, an upper bound on Km_T(x).
std::optional<std::size_t> estimate_Km(const mtm::MachineSpec& machine, const BitString& x, std::size_t L,
                                       std::uint64_t S, const EstimateOptions& options = {});

/// Reports for every x with l(x) <= depth, indexed by tree_index(x).
std::vector<EstimateReport> estimate_all(const mtm::MachineSpec& machine, std::size_t depth, std::size_t L,
                                         std::uint64_t S, const EstimateOptions& options = {});

/// Thread count from AITLAB_THREADS, at least 1.
unsigned default_threads();

}  // namespace aitlab::algprob
