#include "aitlab/algprob/normalize.hpp"

#include "aitlab/algprob/estimate.hpp"
#include "aitlab/core/error.hpp"

namespace aitlab::algprob {

const std::optional<Rational>& TreeValues::at(const BitString& x) const {
  if (!contains(x)) throw InputError("node " + x.str() + " is below the computed depth");
  return values_[tree_index(x)];
}

void TreeValues::set(const BitString& x, std::optional<Rational> v) {
  if (!contains(x)) throw InputError("node " + x.str() + " is below the computed depth");
  values_[tree_index(x)] = std::move(v);
}

NormalizedMeasure normalize(const mtm::MachineSpec& machine, std::size_t depth, std::size_t L, std::uint64_t S) {
  NormalizedMeasure out;
  out.max_length = L;
  out.step_budget = S;
  out.M_lower = TreeValues(depth);
  out.P = TreeValues(depth);
  std::vector<EstimateReport> reports = estimate_all(machine, depth, L, S);
  for_each_string(depth, [&](const BitString& x) { out.M_lower.set(x, reports[tree_index(x)].M_lower); });
  out.P.set(BitString(), Rational(1));
  for_each_string(depth == 0 ? 0 : depth - 1, [&](const BitString& x) {
    if (depth == 0) return;
    const auto& px = out.P.at(x);
    if (!px) return;
    const Rational m0 = *out.M_lower.at(x.with(0));
    const Rational m1 = *out.M_lower.at(x.with(1));
    const Rational denom = m0 + m1;
    if (denom == 0) {
      out.undefined_below.push_back(x);
      return;
    }
    out.P.set(x.with(0), *px * m0 / denom);
    out.P.set(x.with(1), *px * m1 / denom);
  });
  return out;
}

Rational conditional(const TreeValues& m, const BitString& y, const BitString& x) {
  const auto& mx = m.at(x);
  const auto& mxy = m.at(x + y);
  if (!mx || !mxy) throw DomainError("conditional on an undefined node");
  if (*mx == 0) throw DomainError("conditioning on " + (x.empty() ? std::string("ε") : x.str()) + " which has probability zero");
  return *mxy / *mx;
}

}  // namespace aitlab::algprob
