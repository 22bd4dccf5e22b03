#include "aitlab/mixture/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "aitlab/core/error.hpp"

namespace aitlab::mixture {

namespace {

constexpr unsigned kExhaustiveHorizon = 12;

}  // namespace

MixtureState::MixtureState(std::vector<Member> members) {
  Rational kraft = 0;
  for (const auto& m : members) {
    if (!m.rule) throw InputError("mixture member '" + m.name + "' has no rule");
    kraft += m.weight();
  }
  if (kraft > 1) throw InputError("mixture weights violate sum 2^-c <= 1 (sum is " + to_string(kraft) + ")");
  members_ = std::make_shared<const std::vector<Member>>(std::move(members));
  m_.assign(members_->size(), Rational(1));
  total_ = kraft;
}

MixtureState MixtureState::observe(const BitString& y) const {
  MixtureState next;
  next.members_ = members_;
  next.z_ = z_;
  next.m_ = m_;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < next.m_.size(); ++j) {
      if (next.m_[j] != 0) next.m_[j] *= (*members_)[j].next(next.z_)[y[i]];
    }
    next.z_.push_back(y[i]);
  }
  next.total_ = 0;
  for (std::size_t j = 0; j < next.m_.size(); ++j) next.total_ += (*members_)[j].weight() * next.m_[j];
  if (next.total_ == 0) throw DomainError("M_V(" + next.z_.str() + ") = 0; cannot condition on it");
  return next;
}

std::vector<Rational> MixtureState::posterior() const {
  std::vector<Rational> u(m_.size());
  if (total_ == 0) throw DomainError("M_V(" + z_.str() + ") = 0; posterior undefined");
  for (std::size_t j = 0; j < m_.size(); ++j) u[j] = (*members_)[j].weight() * m_[j] / total_;
  return u;
}

std::optional<Rational> MixtureState::member_conditional(std::size_t j, const BitString& y) const {
  if (m_.at(j) == 0) return std::nullopt;
  const Member& m = (*members_)[j];
  Rational r = 1;
  BitString x = z_;
  for (std::size_t i = 0; i < y.size() && r != 0; ++i) {
    r *= m.next(x)[y[i]];
    x.push_back(y[i]);
  }
  return r;
}

Rational MixtureState::conditional(const BitString& y) const {
  Rational num = 0;
  for (std::size_t j = 0; j < m_.size(); ++j) {
    if (m_[j] == 0) continue;
    num += (*members_)[j].weight() * m_[j] * *member_conditional(j, y);
  }
  return num / total_;
}

Rational MixtureState::prior_probability(const BitString& x) const {
  Rational sum = 0;
  for (const auto& m : *members_) sum += m.weight() * m.probability(x);
  return sum;
}

std::vector<Rational> posterior(const std::vector<Member>& family, const BitString& z) {
  return MixtureState(family).observe(z).posterior();
}

ZombieReport zombie_report(const MixtureState& state, std::size_t member, unsigned horizon, const Rational& threshold) {
  const auto& members = state.members();
  if (member >= members.size()) throw InputError("zombie report: no member " + std::to_string(member));
  if (horizon > kExhaustiveHorizon) {
    throw InputError("zombie report: exhaustive horizon is at most " + std::to_string(kExhaustiveHorizon) +
                     "; use the sampled version");
  }
  if (state.likelihoods()[member] == 0) {
    throw DomainError("zombie report: member " + std::to_string(member) + " has m_j(z) = 0");
  }
  const std::size_t n = members.size();
  const auto u = state.posterior();

  // Depth-first over y, carrying m_i(zy)/m_i(z) for each live member.
  Rational sum = 0;
  BitString x = state.observed();
  std::vector<std::vector<Rational>> ratios(horizon + 1, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) ratios[0][i] = state.likelihoods()[i] == 0 ? Rational(0) : Rational(1);

  std::function<void(unsigned)> visit = [&](unsigned depth) {
    if (depth == horizon) {
      Rational a = 0;
      for (std::size_t i = 0; i < n; ++i) a += u[i] * ratios[depth][i];
      sum += abs(a - ratios[depth][member]);
      return;
    }
    std::vector<std::array<Rational, 2>> steps(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (ratios[depth][i] != 0) steps[i] = members[i].next(x);
    }
    for (int b = 0; b < 2; ++b) {
      bool live = false;
      for (std::size_t i = 0; i < n; ++i) {
        ratios[depth + 1][i] = ratios[depth][i] == 0 ? Rational(0) : ratios[depth][i] * steps[i][b];
        live = live || ratios[depth + 1][i] != 0;
      }
      if (!live) continue;
      x.push_back(b);
      visit(depth + 1);
      x.pop_back();
    }
  };
  visit(0);

  ZombieReport r;
  r.member = member;
  r.horizon = horizon;
  r.distance = sum / 2;
  r.zombie = r.distance > threshold;
  return r;
}

ZombieReport zombie_report_sampled(const MixtureState& state, std::size_t member, unsigned horizon,
                                   const Rational& threshold, std::uint64_t samples, std::uint64_t seed) {
  const auto& members = state.members();
  if (member >= members.size()) throw InputError("zombie report: no member " + std::to_string(member));
  if (samples < 2) throw InputError("zombie report: need at least 2 samples");
  if (state.likelihoods()[member] == 0) {
    throw DomainError("zombie report: member " + std::to_string(member) + " has m_j(z) = 0");
  }
  const std::size_t n = members.size();
  std::vector<double> u;
  for (const auto& w : state.posterior()) u.push_back(to_double(w));

  // Proposal: with probability 1/2 a member drawn from the posterior, else
  // member j; each generates bits from its step probabilities renormalized
  // (uniform once its mass is gone). The density g(y) is tracked exactly
  // enough in doubles to weight |a - b| / 2.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::discrete_distribution<std::size_t> pick(u.begin(), u.end());

  double mean = 0, m2 = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t source = unit(rng) < 0.5 ? pick(rng) : member;
    BitString x = state.observed();
    std::vector<double> mass(n, 1.0), proposal(n, 1.0);
    for (unsigned d = 0; d < horizon; ++d) {
      std::vector<std::array<double, 2>> step(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (mass[i] == 0 && proposal[i] == 0) continue;
        auto p = members[i].next(x);
        step[i] = {to_double(p[0]), to_double(p[1])};
      }
      auto normalized = [&](std::size_t i) -> std::array<double, 2> {
        double t = step[i][0] + step[i][1];
        if (t <= 0) return {0.5, 0.5};
        return {step[i][0] / t, step[i][1] / t};
      };
      const int b = unit(rng) < normalized(source)[0] ? 0 : 1;
      for (std::size_t i = 0; i < n; ++i) {
        mass[i] *= step[i][b];
        proposal[i] *= normalized(i)[b];
      }
      x.push_back(b);
    }
    double a = 0, g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a += u[i] * mass[i];
      g += 0.5 * u[i] * proposal[i];
    }
    g += 0.5 * proposal[member];
    const double v = g > 0 ? 0.5 * std::abs(a - mass[member]) / g : 0.0;
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }

  ZombieReport r;
  r.member = member;
  r.horizon = horizon;
  r.samples = samples;
  r.distance = Rational(mean);
  r.standard_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  r.zombie = r.distance > threshold;
  return r;
}

SurvivalReport survival_deficiency(const MixtureState& state) {
  const auto& members = state.members();
  const auto u = state.posterior();
  SurvivalReport r;
  r.z = state.observed();
  Rational go_on = 0;
  for (std::size_t j = 0; j < members.size(); ++j) {
    SurvivalEntry e;
    e.id = members[j].id;
    e.posterior = u[j];
    if (state.likelihoods()[j] != 0) {
      e.stop = members[j].stop(r.z);
      e.continuing = u[j] * (1 - *e.stop);
    }
    go_on += e.continuing;
    r.members.push_back(std::move(e));
  }
  if (go_on == 0) throw DomainError("every member stops at " + r.z.str() + "; nothing to condition on");
  for (auto& e : r.members) e.continuing /= go_on;
  r.continue_probability = go_on;
  return r;
}

std::vector<Explanation> explanation_ranking(const MixtureState& state) {
  const auto& members = state.members();
  const auto u = state.total() == 0 ? std::vector<Rational>(members.size()) : state.posterior();
  std::vector<Explanation> out;
  for (std::size_t j = 0; j < members.size(); ++j) {
    out.push_back({members[j].id, members[j].name, members[j].c, members[j].weight() * state.likelihoods()[j], u[j]});
  }
  std::stable_sort(out.begin(), out.end(), [](const Explanation& a, const Explanation& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
  });
  return out;
}

}  // namespace aitlab::mixture
