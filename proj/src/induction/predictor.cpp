#include "aitlab/induction/predictor.hpp"

#include <algorithm>
#include <sstream>

#include "aitlab/core/error.hpp"

namespace aitlab::induction {

namespace {

constexpr std::size_t kMaxFrontier = std::size_t{1} << 22;

void check_depth(const Predictor& p, const BitString& x) {
  if (x.size() > p.depth()) {
    throw InputError("predictor is only defined to depth " + std::to_string(p.depth()) + ", asked for " + x.str());
  }
}

Rational ratio_hi(const Rational& num_hi, const Rational& den_lo) {
  if (den_lo == 0) return 1;
  return std::min(Rational(1), num_hi / den_lo);
}

}  // namespace

Bracket MixturePredictor::value(const BitString& x) const {
  Rational v = state_.conditional(x);
  return {v, v};
}

std::string MixturePredictor::describe() const {
  std::string s = "mixture(" + std::to_string(state_.members().size()) + " members";
  if (!state_.observed().empty()) s += ", z=" + state_.observed().str();
  return s + ")";
}

Bracket NormalizedPredictor::value(const BitString& x) const {
  check_depth(*this, x);
  const auto& v = measure_.P.at(x);
  if (!v) throw DomainError("normalized measure is undefined at " + x.str());
  return {*v, *v};
}

std::string NormalizedPredictor::describe() const {
  return "normalized(L=" + std::to_string(measure_.max_length) + ", S=" + std::to_string(measure_.step_budget) + ")";
}

EnumerationPredictor::EnumerationPredictor(const mtm::MachineSpec& machine, std::size_t depth, std::size_t L,
                                           std::uint64_t S)
    : depth_(depth), L_(L), S_(S), reports_(algprob::estimate_all(machine, depth, L, S)) {}

Bracket EnumerationPredictor::value(const BitString& x) const {
  check_depth(*this, x);
  const auto& r = reports_[tree_index(x)];
  return {r.M_lower, r.M_upper ? std::min(Rational(1), *r.M_upper) : Rational(1)};
}

std::string EnumerationPredictor::describe() const {
  return "enumeration(L=" + std::to_string(L_) + ", S=" + std::to_string(S_) + ")";
}

PersistenceCurve persistence_curve(const Predictor& predictor, const ComputableTest& test, std::size_t n_max) {
  if (n_max > predictor.depth()) {
    throw InputError("persistence curve to n=" + std::to_string(n_max) + " needs a predictor of depth " +
                     std::to_string(n_max));
  }
  PersistenceCurve curve;
  curve.predictor = predictor.describe();
  curve.test = test.name();
  curve.exact = predictor.exact();

  // frontier: strings of length n whose test history is 1^n, with their values
  struct Node {
    BitString x;
    Bracket v;
  };
  std::vector<Node> frontier{{BitString(), predictor.value(BitString())}};
  Bracket cum{0, 0};
  for (std::size_t n = 0; n < n_max; ++n) {
    Bracket held{0, 0};
    for (const auto& node : frontier) {
      held.lo += node.v.lo;
      held.hi += node.v.hi;
    }
    if (held.hi == 0 || (curve.exact && held.lo == 0)) {
      throw DomainError("p(1^" + std::to_string(n) + ") = 0 under " + curve.predictor + "; curve undefined from n=" +
                        std::to_string(n));
    }
    std::vector<Node> next;
    Bracket pass{0, 0}, fail{0, 0};
    for (const auto& node : frontier) {
      for (int b = 0; b < 2; ++b) {
        BitString y = node.x.with(b);
        Bracket v = predictor.value(y);
        if (test.evaluate(y) == 1) {
          pass.lo += v.lo;
          pass.hi += v.hi;
          if (v.hi != 0) next.push_back({std::move(y), v});
        } else {
          fail.lo += v.lo;
          fail.hi += v.hi;
        }
      }
    }
    if (next.size() > kMaxFrontier) throw InputError("persistence curve: more than 2^22 strings in the conditioning event");
    CurvePoint pt;
    pt.n = n;
    pt.p1 = {pass.lo / held.hi, ratio_hi(pass.hi, held.lo)};
    pt.p0 = {fail.lo / held.hi, ratio_hi(fail.hi, held.lo)};
    cum.lo += pt.p0.lo;
    cum.hi += pt.p0.hi;
    pt.cum_exception = cum;
    curve.points.push_back(std::move(pt));
    frontier = std::move(next);
  }
  return curve;
}

std::string curve_csv(const PersistenceCurve& curve) {
  std::ostringstream out;
  if (curve.exact) {
    out << "n,p1,cum_exception\n";
    for (const auto& p : curve.points) out << p.n << ',' << to_string(p.p1.lo) << ',' << to_string(p.cum_exception.lo) << '\n';
  } else {
    out << "n,p1_lo,p1_hi,cum_exception_lo,cum_exception_hi\n";
    for (const auto& p : curve.points) {
      out << p.n << ',' << to_string(p.p1.lo) << ',' << to_string(p.p1.hi) << ',' << to_string(p.cum_exception.lo)
          << ',' << to_string(p.cum_exception.hi) << '\n';
    }
  }
  return out.str();
}

NextBit predict_next(const Predictor& predictor, const BitString& x) {
  check_depth(predictor, x.with(0));
  const Rational px = predictor.value(x).lo;
  if (px == 0) throw DomainError("predictor value at " + (x.empty() ? std::string("ε") : x.str()) + " is 0");
  NextBit r;
  r.p0 = predictor.value(x.with(0)).lo / px;
  r.p1 = predictor.value(x.with(1)).lo / px;
  r.deficiency = 1 - r.p0 - r.p1;
  return r;
}

}  // namespace aitlab::induction
