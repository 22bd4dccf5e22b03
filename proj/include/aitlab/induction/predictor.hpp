#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "aitlab/algprob/estimate.hpp"
#include "aitlab/algprob/normalize.hpp"
#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/induction/test.hpp"
#include "aitlab/mixture/mixture.hpp"

namespace aitlab::induction {

struct Bracket {
  Rational lo;
  Rational hi;
};

/// A (semi)measure p on strings, known exactly or up to a bracket.
class Predictor {
 public:
  virtual ~Predictor() = default;
  /// lo <= p(x) <= hi. Throws InputError beyond depth(), DomainError where p
  /// is undefined.
  virtual Bracket value(const BitString& x) const = 0;
  virtual bool exact() const = 0;
  virtual std::size_t depth() const { return std::numeric_limits<std::size_t>::max(); }
  virtual std::string describe() const = 0;
};

/// p(x) = M_V(x | z) for the state's observed z.
class MixturePredictor : public Predictor {
 public:
  explicit MixturePredictor(mixture::MixtureState state) : state_(std::move(state)) {}
  Bracket value(const BitString& x) const override;
  bool exact() const override { return true; }
  std::string describe() const override;

 private:
  mixture::MixtureState state_;
};

/// p = the normalized measure P; undefined nodes raise DomainError.
class NormalizedPredictor : public Predictor {
 public:
  explicit NormalizedPredictor(algprob::NormalizedMeasure measure) : measure_(std::move(measure)) {}
  Bracket value(const BitString& x) const override;
  bool exact() const override { return true; }
  std::size_t depth() const override { return measure_.P.depth(); }
  std::string describe() const override;

 private:
  algprob::NormalizedMeasure measure_;
};

/// p = M_T, bracketed by [M_lower, M_upper] from a bounded enumeration.
class EnumerationPredictor : public Predictor {
 public:
  EnumerationPredictor(const mtm::MachineSpec& machine, std::size_t depth, std::size_t L, std::uint64_t S);
  Bracket value(const BitString& x) const override;
  bool exact() const override { return false; }
  std::size_t depth() const override { return depth_; }
  std::string describe() const override;

 private:
  std::size_t depth_, L_;
  std::uint64_t S_;
  std::vector<algprob::EstimateReport> reports_;
};

struct CurvePoint {
  std::size_t n = 0;  // p(1 | 1^n): test passed at steps 1..n
  Bracket p1;
  Bracket p0;
  Bracket cum_exception;  // sum over j <= n of p(0 | 1^j)
};

struct PersistenceCurve {
  std::string predictor;
  std::string test;
  bool exact = true;
  std::vector<CurvePoint> points;  // n = 0 .. n_max-1
};

/// p(b | 1^n) marginalizes over all strings whose test history is 1^n.
/// Throws DomainError when the conditioning event has probability 0.
PersistenceCurve persistence_curve(const Predictor& predictor, const ComputableTest& test, std::size_t n_max);

/// Columns n,p1,cum_exception for exact curves; bracketed curves carry
/// n,p1_lo,p1_hi,cum_exception_lo,cum_exception_hi. Rationals as num/den.
std::string curve_csv(const PersistenceCurve& curve);

struct NextBit {
  Rational p0, p1, deficiency;
};

/// p(xb)/p(x) from the lower values. Throws DomainError if p(x) is zero or
/// undefined.
NextBit predict_next(const Predictor& predictor, const BitString& x);

}  // namespace aitlab::induction
