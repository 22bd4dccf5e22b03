#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/mixture/member.hpp"

namespace aitlab::mixture {

/// A finite family V with prior weights 2^-c_j, conditioned on an observed
/// prefix z. Immutable: observe() returns a new state.
class MixtureState {
 public:
  /// Throws InputError if sum 2^-c_j > 1.
  explicit MixtureState(std::vector<Member> members);

  const std::vector<Member>& members() const { return *members_; }
  const BitString& observed() const { return z_; }

  /// m_j(z) for each member.
  const std::vector<Rational>& likelihoods() const { return m_; }
  /// M_V(z) = sum_j 2^-c_j m_j(z).
  const Rational& total() const { return total_; }

  /// The state after also seeing y. Throws DomainError if M_V(zy) = 0.
  MixtureState observe(const BitString& y) const;

  /// Posterior weights u_j(z) = 2^-c_j m_j(z) / M_V(z).
  std::vector<Rational> posterior() const;

  /// M_V(zy)/M_V(z) and m_j(zy)/m_j(z), computed without building a new state.
  Rational conditional(const BitString& y) const;
  /// nullopt if m_j(z) = 0.
  std::optional<Rational> member_conditional(std::size_t j, const BitString& y) const;

  /// M_V(x) for any x, from the prior.
  Rational prior_probability(const BitString& x) const;

 private:
  MixtureState() = default;

  std::shared_ptr<const std::vector<Member>> members_;
  BitString z_;
  std::vector<Rational> m_;
  Rational total_;
};

/// u_j(z) for every member after observing z from the prior.
std::vector<Rational> posterior(const std::vector<Member>& family, const BitString& z);

struct ZombieReport {
  std::size_t member = 0;
  unsigned horizon = 0;
  Rational distance;          // exact, or the estimate when sampled
  std::optional<double> standard_error;  // set for the sampled estimate
  bool zombie = false;  // distance > threshold
  std::uint64_t samples = 0;
};

/// Total variation distance between M_V(. | z) and m_j(. | z) over strings of
/// length `horizon`. Exhaustive up to horizon 12.
ZombieReport zombie_report(const MixtureState& state, std::size_t member, unsigned horizon, const Rational& threshold);

/// Monte Carlo version for long horizons: importance-samples y from an even
/// mix of the two conditionals; unbiased, reported with its standard error.
ZombieReport zombie_report_sampled(const MixtureState& state, std::size_t member, unsigned horizon,
                                   const Rational& threshold, std::uint64_t samples, std::uint64_t seed);

struct SurvivalEntry {
  int id = 0;
  Rational posterior;
  std::optional<Rational> stop;  // t_j(z); nullopt when m_j(z) = 0
  Rational continuing;           // renormalized weight among runs that go on
};

struct SurvivalReport {
  BitString z;
  std::vector<SurvivalEntry> members;
  Rational continue_probability;  // M_V(z0)+M_V(z1) over M_V(z)
};

/// Per-member stopping probability at z and the posterior restricted to
/// members whose process continues. Throws DomainError if none does.
SurvivalReport survival_deficiency(const MixtureState& state);

struct Explanation {
  int id = 0;
  std::string name;
  unsigned c = 0;
  Rational weight;  // 2^-c_j m_j(z)
  Rational posterior;
};

/// Members by 2^-c_j m_j(z), largest first; ties broken by ascending id.
std::vector<Explanation> explanation_ranking(const MixtureState& state);

}  // namespace aitlab::mixture
