#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "json.hpp"

#include "aitlab/core/rational.hpp"

namespace aitlab::bell {

/// Alice's outcome, including the non-detection ∅. Bob's outcomes are ±1.
enum class Outcome { null, minus, plus };

inline constexpr int kRows = 6;
inline constexpr int kColumns = 4;

/// Row of (v, w): (∅,−), (∅,+), (−,−), (−,+), (+,−), (+,+).
inline constexpr int row(Outcome v, int w) { return 2 * static_cast<int>(v) + (w > 0 ? 1 : 0); }
/// Column of the settings (a, b): 00, 01, 10, 11.
inline constexpr int column(int a, int b) { return 2 * a + b; }
inline constexpr int sign(Outcome v) { return v == Outcome::plus ? 1 : v == Outcome::minus ? -1 : 0; }

/// P(v, w | a, b) as a 6x4 table in the row/column layout above.
template <typename Scalar>
struct Correlation {
  using Table = Eigen::Matrix<Scalar, kRows, kColumns>;
  Table p = Table::Zero();

  Scalar& at(Outcome v, int w, int a, int b) { return p(row(v, w), column(a, b)); }
  const Scalar& at(Outcome v, int w, int a, int b) const { return p(row(v, w), column(a, b)); }

  /// P(∅ | a, b).
  Scalar null_mass(int a, int b) const { return p(0, column(a, b)) + p(1, column(a, b)); }
  bool has_null() const {
    for (int c = 0; c < kColumns; ++c) {
      if (p(0, c) != Scalar(0) || p(1, c) != Scalar(0)) return true;
    }
    return false;
  }
  /// Σ_w P(v, w | a, b).
  Scalar alice(Outcome v, int a, int b) const { return at(v, -1, a, b) + at(v, 1, a, b); }
  /// Σ_v P(v, w | a, b), ∅ included.
  Scalar bob(int w, int a, int b) const {
    return at(Outcome::null, w, a, b) + at(Outcome::minus, w, a, b) + at(Outcome::plus, w, a, b);
  }

  template <typename Other>
  Correlation<Other> cast() const {
    Correlation<Other> out;
    for (int r = 0; r < kRows; ++r)
      for (int c = 0; c < kColumns; ++c) out.p(r, c) = static_cast<Other>(p(r, c));
    return out;
  }

  friend bool operator==(const Correlation& x, const Correlation& y) { return x.p == y.p; }
};

using Exact = Correlation<Rational>;

/// Entries in [0, 1], each column summing to 1. Throws InputError otherwise.
void validate(const Exact& P);

/// A deterministic local behavior: Alice answers alice[a], Bob answers bob[b].
struct Response {
  std::array<Outcome, 2> alice{Outcome::plus, Outcome::plus};
  std::array<int, 2> bob{1, 1};

  /// Shorthand l_0 l_1 l'_0 l'_1 with '+', '-' (or U+2212) and '∅' (or '0').
  static Response parse(std::string_view text);
  std::string str() const;
  Exact behavior() const;
};

struct HiddenVariableModel {
  struct Value {
    Rational q;
    Response response;
  };
  std::vector<Value> values;

  /// q ≥ 0 summing to 1. Throws InputError otherwise.
  void validate() const;
};

/// λ uniform over +∅++, ∅++−, ∅−−+, −∅−−.
HiddenVariableModel loop_model();
/// P(−,−) = P(+,+) = 1/2 for (a,b) ≠ (1,1), P(−,+) = P(+,−) = 1/2 at (1,1).
Exact pr_box();

/// Σ_λ q(λ) P_λ.
Exact behavior_from_hvm(const HiddenVariableModel& hvm);

/// P(v,w|a,b) = P0(v,w|a,b) / (1 − P0(∅|a)) over v ≠ ∅. Throws DomainError
/// if P0(∅|a) depends on b or equals 1.
Exact postselect(const Exact& P0);

struct ChshReport {
  std::array<Rational, 4> E;  // indexed by column(a, b)
  Rational value;             // |E00 + E01 + E10 − E11|
  std::string regime;         // classical-compatible, quantum-range, superquantum
  static constexpr int classical_bound = 2;
  static constexpr int tsirelson_squared = 8;  // (2√2)²
};

/// Throws DomainError if P has ∅ mass.
ChshReport chsh(const Exact& P);

struct SignallingReport {
  Rational a_to_b;  // max change of Bob's marginal with a
  Rational b_to_a;  // max change of Alice's marginal with b, ∅ included
  bool nonsignalling = false;
};

SignallingReport signalling_report(const Exact& P);

struct ClassicalityReport {
  bool feasible = false;
  /// On success: weights over deterministic behaviors, zero weights omitted.
  std::vector<std::pair<Response, Rational>> decomposition;
  /// On failure: a Farkas certificate. Every local behavior L has
  /// <Y, L> <= bound, while <Y, P> > bound.
  Exact certificate;
  Rational bound;
  Rational violation;  // <Y, P> − bound
  std::size_t vertices = 0;
};

/// Exact feasibility of P over the deterministic local behaviors (36 with
/// Alice's ∅, else 16) by a two-phase-style simplex on rationals.
ClassicalityReport is_classical(const Exact& P);

/// Σ_{v,w,a,b} Y(v,w|a,b) P(v,w|a,b).
Rational pairing(const Exact& Y, const Exact& P);

struct LemmaReport {
  bool b_to_a_ok = false;
  bool cond_indep = false;  // P0(∅,w|a,b) = P0(∅|a) P0(w|b)
  bool a_to_b_ok = false;
  SignallingReport postselected;
  double float_cross_check = 0;  // A→B deviation recomputed in doubles
};

/// Throws DomainError if P0 itself signals or P0(∅|a) = 1.
LemmaReport check_lemma_a1(const Exact& P0);

/// Two λ with correlated non-detection: a non-signalling P0 violating the
/// independence condition whose postselection signals from Alice to Bob.
HiddenVariableModel lemma_counterexample();

/// A random non-signalling P0 satisfying the independence condition, built
/// from local random responses. Denominators bounded by `grain`.
Exact random_independent_p0(std::uint64_t seed, int grain = 12);

/// A random hidden-variable model with up to `max_values` values.
HiddenVariableModel random_hvm(std::uint64_t seed, int max_values = 5, int grain = 12);

struct SimulationReport {
  std::uint64_t rounds = 0;
  std::uint64_t seed = 0;
  std::uint64_t loops = 0;  // λ resamples caused by ∅
  std::array<std::array<std::uint64_t, kRows>, kColumns> tallies{};
  Correlation<double> empirical;
  Exact target;
  double distance = 0;  // max over (a,b) of the TV distance per column
};

/// Observer-loop protocol: per round draw (a,b) uniformly, draw λ, and while
/// Alice's answer is ∅ draw λ again; record (v,w).
SimulationReport run_loop_simulation(const HiddenVariableModel& hvm, std::uint64_t seed, std::uint64_t rounds);

/// Rows (v,w), columns (a,b), rational entries.
std::string format_table(const Exact& P, bool with_null);

nlohmann::json to_json(const Exact& P);
Exact correlation_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const HiddenVariableModel& hvm);
/// {"values": [{"q": "1/4", "lambda": "+∅++"}, ...]}
HiddenVariableModel hvm_from_json(const nlohmann::json& doc);

}  // namespace aitlab::bell
