#include "aitlab/bell/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "aitlab/core/error.hpp"

namespace aitlab::bell {

using nlohmann::json;

namespace {

constexpr std::array<Outcome, 3> kAlice = {Outcome::null, Outcome::minus, Outcome::plus};
constexpr std::array<int, 2> kBob = {-1, 1};
constexpr std::uint64_t kLoopGuard = 1'000'000;

const char* symbol(Outcome v) { return v == Outcome::null ? "∅" : v == Outcome::minus ? "-" : "+"; }

std::string label(Outcome v, int w) {
  std::string s = "(";
  s += v == Outcome::null ? "∅" : v == Outcome::minus ? "-1" : "+1";
  s += w > 0 ? ",+1)" : ",-1)";
  return s;
}

Rational random_rational(std::mt19937_64& rng, int grain) {
  std::uniform_int_distribution<int> d(0, grain);
  return Rational(d(rng), grain);
}

// Weights w_i = r_i / Σ r, with r_i drawn from 1..grain.
std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t n, int grain) {
  std::uniform_int_distribution<int> d(1, grain);
  std::vector<Rational> w(n);
  Rational sum = 0;
  for (auto& x : w) {
    x = d(rng);
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

std::vector<Response> vertices(bool with_null) {
  std::vector<Response> out;
  for (Outcome a0 : kAlice) {
    for (Outcome a1 : kAlice) {
      if (!with_null && (a0 == Outcome::null || a1 == Outcome::null)) continue;
      for (int b0 : kBob) {
        for (int b1 : kBob) out.push_back(Response{{a0, a1}, {b0, b1}});
      }
    }
  }
  return out;
}

}  // namespace

void validate(const Exact& P) {
  for (int c = 0; c < kColumns; ++c) {
    Rational sum = 0;
    for (int r = 0; r < kRows; ++r) {
      if (P.p(r, c) < 0 || P.p(r, c) > 1) throw InputError("correlation entries must lie in [0, 1]");
      sum += P.p(r, c);
    }
    if (sum != 1) throw InputError("correlation column " + std::to_string(c) + " sums to " + to_string(sum));
  }
}

Response Response::parse(std::string_view text) {
  std::vector<Outcome> symbols;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '+') {
      symbols.push_back(Outcome::plus);
      ++i;
    } else if (text[i] == '-') {
      symbols.push_back(Outcome::minus);
      ++i;
    } else if (text[i] == '0') {
      symbols.push_back(Outcome::null);
      ++i;
    } else if (text.substr(i, 3) == "−") {
      symbols.push_back(Outcome::minus);
      i += 3;
    } else if (text.substr(i, 3) == "∅") {
      symbols.push_back(Outcome::null);
      i += 3;
    } else {
      throw InputError("hidden variable '" + std::string(text) + "': unexpected character");
    }
  }
  if (symbols.size() != 4) throw InputError("hidden variable '" + std::string(text) + "': need four symbols");
  if (symbols[2] == Outcome::null || symbols[3] == Outcome::null) {
    throw InputError("hidden variable '" + std::string(text) + "': Bob's detector has no ∅");
  }
  Response r;
  r.alice = {symbols[0], symbols[1]};
  r.bob = {sign(symbols[2]), sign(symbols[3])};
  return r;
}

std::string Response::str() const {
  std::string s = symbol(alice[0]);
  s += symbol(alice[1]);
  s += bob[0] > 0 ? "+" : "-";
  s += bob[1] > 0 ? "+" : "-";
  return s;
}

Exact Response::behavior() const {
  Exact P;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) P.at(alice[a], bob[b], a, b) = 1;
  return P;
}

void HiddenVariableModel::validate() const {
  if (values.empty()) throw InputError("hidden variable model has no values");
  Rational sum = 0;
  for (const auto& v : values) {
    if (v.q < 0) throw InputError("hidden variable weights must be non-negative");
    sum += v.q;
  }
  if (sum != 1) throw InputError("hidden variable weights sum to " + to_string(sum) + ", not 1");
}

HiddenVariableModel loop_model() {
  HiddenVariableModel m;
  for (const char* l : {"+∅++", "∅++-", "∅--+", "-∅--"}) m.values.push_back({Rational(1, 4), Response::parse(l)});
  return m;
}

Exact pr_box() {
  Exact P;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const bool anti = a == 1 && b == 1;
      P.at(Outcome::minus, anti ? 1 : -1, a, b) = Rational(1, 2);
      P.at(Outcome::plus, anti ? -1 : 1, a, b) = Rational(1, 2);
    }
  }
  return P;
}

Exact behavior_from_hvm(const HiddenVariableModel& hvm) {
  hvm.validate();
  Exact P;
  for (const auto& v : hvm.values) P.p += v.response.behavior().p * v.q;
  return P;
}

Exact postselect(const Exact& P0) {
  validate(P0);
  Exact P;
  for (int a = 0; a < 2; ++a) {
    const Rational n0 = P0.null_mass(a, 0);
    if (P0.null_mass(a, 1) != n0) {
      throw DomainError("P0(∅|a=" + std::to_string(a) + ") depends on b; postselection is ill-posed");
    }
    if (n0 == 1) throw DomainError("P0(∅|a=" + std::to_string(a) + ") = 1; nothing survives postselection");
    for (int b = 0; b < 2; ++b) {
      for (int r = 2; r < kRows; ++r) P.p(r, column(a, b)) = P0.p(r, column(a, b)) / (1 - n0);
    }
  }
  return P;
}

ChshReport chsh(const Exact& P) {
  if (P.has_null()) throw DomainError("CHSH needs a table without ∅; postselect first");
  ChshReport r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Rational e = 0;
      for (Outcome v : {Outcome::minus, Outcome::plus})
        for (int w : kBob) e += Rational(sign(v) * w) * P.at(v, w, a, b);
      r.E[column(a, b)] = e;
    }
  }
  r.value = abs(r.E[0] + r.E[1] + r.E[2] - r.E[3]);
  if (r.value <= ChshReport::classical_bound) {
    r.regime = "classical-compatible";
  } else if (r.value * r.value <= ChshReport::tsirelson_squared) {
    r.regime = "quantum-range";
  } else {
    r.regime = "superquantum";
  }
  return r;
}

SignallingReport signalling_report(const Exact& P) {
  SignallingReport r;
  for (int b = 0; b < 2; ++b)
    for (int w : kBob) r.a_to_b = std::max(r.a_to_b, abs(P.bob(w, 0, b) - P.bob(w, 1, b)));
  for (int a = 0; a < 2; ++a)
    for (Outcome v : kAlice) r.b_to_a = std::max(r.b_to_a, abs(P.alice(v, a, 0) - P.alice(v, a, 1)));
  r.nonsignalling = r.a_to_b == 0 && r.b_to_a == 0;
  return r;
}

Rational pairing(const Exact& Y, const Exact& P) {
  Rational s = 0;
  for (int r = 0; r < kRows; ++r)
    for (int c = 0; c < kColumns; ++c) s += Y.p(r, c) * P.p(r, c);
  return s;
}

ClassicalityReport is_classical(const Exact& P) {
  validate(P);
  using Matrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
  const std::vector<Response> verts = vertices(P.has_null());
  const int n = static_cast<int>(verts.size());
  const int m = kRows * kColumns + 1;

  // Σ_k x_k V_k = P, Σ_k x_k = 1, x ≥ 0; phase one with one artificial per row.
  Matrix T = Matrix::Zero(m, n + m + 1);
  for (int k = 0; k < n; ++k) {
    const Exact V = verts[k].behavior();
    for (int r = 0; r < kRows; ++r)
      for (int c = 0; c < kColumns; ++c) T(r * kColumns + c, k) = V.p(r, c);
    T(m - 1, k) = 1;
  }
  for (int r = 0; r < kRows; ++r)
    for (int c = 0; c < kColumns; ++c) T(r * kColumns + c, n + m) = P.p(r, c);
  T(m - 1, n + m) = 1;
  for (int i = 0; i < m; ++i) T(i, n + i) = 1;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  Eigen::Matrix<Rational, 1, Eigen::Dynamic> z = Eigen::Matrix<Rational, 1, Eigen::Dynamic>::Zero(n + m + 1);
  for (int j = 0; j < n + m + 1; ++j) {
    if (j >= n && j < n + m) continue;
    for (int i = 0; i < m; ++i) z(j) -= T(i, j);
  }

  // Bland's rule: smallest entering index, smallest basic index on ties.
  for (;;) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (z(j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) <= 0) continue;
      Rational ratio = T(i, n + m) / T(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    const Rational pivot = T(leave, enter);
    T.row(leave) /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i != leave && T(i, enter) != 0) T.row(i) -= T.row(leave) * Rational(T(i, enter));
    }
    if (z(enter) != 0) z -= T.row(leave) * Rational(z(enter));
    basis[leave] = enter;
  }

  ClassicalityReport rep;
  rep.vertices = verts.size();
  const Rational infeasibility = -z(n + m);
  if (infeasibility == 0) {
    rep.feasible = true;
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n && T(i, n + m) != 0) rep.decomposition.push_back({verts[basis[i]], T(i, n + m)});
    }
    std::sort(rep.decomposition.begin(), rep.decomposition.end(),
              [](const auto& x, const auto& y) { return x.first.str() < y.first.str(); });
    return rep;
  }
  // Reduced cost of artificial i is 1 − y_i; y certifies y·A ≤ 0, y·b > 0.
  std::vector<Rational> y(m);
  for (int i = 0; i < m; ++i) y[i] = 1 - z(n + i);
  for (int r = 0; r < kRows; ++r)
    for (int c = 0; c < kColumns; ++c) rep.certificate.p(r, c) = y[r * kColumns + c];
  if (!P.has_null()) {
    // extend to behaviors with ∅: never better than the best detected answer
    for (int c = 0; c < kColumns; ++c)
      for (int w = 0; w < 2; ++w) rep.certificate.p(w, c) = std::min(rep.certificate.p(2 + w, c), rep.certificate.p(4 + w, c));
  }
  rep.bound = -y[m - 1];
  rep.violation = pairing(rep.certificate, P) - rep.bound;
  return rep;
}

LemmaReport check_lemma_a1(const Exact& P0) {
  validate(P0);
  if (!signalling_report(P0).nonsignalling) throw DomainError("P0 signals; the lemma assumes a non-signalling P0");
  const Exact P = postselect(P0);
  LemmaReport r;
  r.postselected = signalling_report(P);
  r.b_to_a_ok = r.postselected.b_to_a == 0;
  r.cond_indep = true;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int w : kBob) {
        if (P0.at(Outcome::null, w, a, b) != P0.null_mass(a, b) * P0.bob(w, a, b)) r.cond_indep = false;
      }
  r.a_to_b_ok = r.postselected.a_to_b == 0;

  const Correlation<double> F = P0.cast<double>();
  double dev = 0;
  for (int b = 0; b < 2; ++b) {
    for (int w : kBob) {
      double m[2];
      for (int a = 0; a < 2; ++a) {
        double keep = 1.0 - F.null_mass(a, b);
        m[a] = (F.at(Outcome::minus, w, a, b) + F.at(Outcome::plus, w, a, b)) / keep;
      }
      dev = std::max(dev, std::abs(m[0] - m[1]));
    }
  }
  r.float_cross_check = dev;
  return r;
}

HiddenVariableModel lemma_counterexample() {
  HiddenVariableModel m;
  m.values.push_back({Rational(1, 2), Response::parse("∅+++")});
  m.values.push_back({Rational(1, 2), Response::parse("----")});
  return m;
}

Exact random_independent_p0(std::uint64_t seed, int grain) {
  std::mt19937_64 rng(seed);
  // Q: a non-signalling table without ∅ (local vertices plus a PR box share).
  const auto local = vertices(false);
  auto w = random_weights(rng, local.size() + 1, grain);
  Exact Q;
  for (std::size_t k = 0; k < local.size(); ++k) Q.p += local[k].behavior().p * w[k];
  Q.p += pr_box().p * w.back();
  // ∅ independent of Bob: P0(∅,w|a,b) = d_a Q_B(w|b), P0(v,w|a,b) = (1 − d_a) Q(v,w|a,b).
  Exact P0;
  for (int a = 0; a < 2; ++a) {
    Rational d = random_rational(rng, grain);
    if (d == 1) d = Rational(grain - 1, grain);
    for (int b = 0; b < 2; ++b) {
      for (int wb : kBob) P0.at(Outcome::null, wb, a, b) = d * Q.bob(wb, a, b);
      for (int r = 2; r < kRows; ++r) P0.p(r, column(a, b)) = (1 - d) * Q.p(r, column(a, b));
    }
  }
  return P0;
}

HiddenVariableModel random_hvm(std::uint64_t seed, int max_values, int grain) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, max_values);
  const auto all = vertices(true);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  const int n = count(rng);
  auto w = random_weights(rng, static_cast<std::size_t>(n), grain);
  HiddenVariableModel m;
  for (int i = 0; i < n; ++i) m.values.push_back({w[i], all[pick(rng)]});
  return m;
}

SimulationReport run_loop_simulation(const HiddenVariableModel& hvm, std::uint64_t seed, std::uint64_t rounds) {
  if (rounds < 1) throw InputError("simulation needs at least one round");
  const Exact P0 = behavior_from_hvm(hvm);
  SimulationReport r;
  r.rounds = rounds;
  r.seed = seed;
  r.target = postselect(P0);

  std::vector<double> q;
  for (const auto& v : hvm.values) q.push_back(to_double(v.q));
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> lambda(q.begin(), q.end());
  std::uniform_int_distribution<int> setting(0, 1);
  for (std::uint64_t i = 0; i < rounds; ++i) {
    const int a = setting(rng), b = setting(rng);
    std::uint64_t guard = 0;
    for (;;) {
      const Response& l = hvm.values[lambda(rng)].response;
      if (l.alice[a] != Outcome::null) {
        ++r.tallies[column(a, b)][row(l.alice[a], l.bob[b])];
        break;
      }
      ++r.loops;
      if (++guard > kLoopGuard) throw DomainError("observer loop did not end within the guard");
    }
  }
  for (int c = 0; c < kColumns; ++c) {
    std::uint64_t total = 0;
    for (int k = 0; k < kRows; ++k) total += r.tallies[c][k];
    double tv = 0;
    for (int k = 0; k < kRows; ++k) {
      r.empirical.p(k, c) = total ? static_cast<double>(r.tallies[c][k]) / static_cast<double>(total) : 0.0;
      tv += std::abs(r.empirical.p(k, c) - to_double(r.target.p(k, c)));
    }
    r.distance = std::max(r.distance, tv / 2);
  }
  return r;
}

std::string format_table(const Exact& P, bool with_null) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"P(v,w|a,b)", "(0,0)", "(0,1)", "(1,0)", "(1,1)"});
  for (int r = with_null ? 0 : 2; r < kRows; ++r) {
    std::vector<std::string> line{label(kAlice[r / 2], kBob[r % 2])};
    for (int c = 0; c < kColumns; ++c) line.push_back(to_string(P.p(r, c)));
    cells.push_back(std::move(line));
  }
  // display width: count code points, not bytes
  auto width = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
    return n;
  };
  std::vector<std::size_t> w(5, 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) w[i] = std::max(w[i], width(line[i]));
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << line[i] << std::string(w[i] - width(line[i]), ' ');
      out << (i + 1 < line.size() ? " | " : "\n");
    }
  }
  return out.str();
}

json to_json(const Exact& P) {
  json rows = json::array();
  for (int r = 0; r < kRows; ++r) {
    json line = json::array();
    for (int c = 0; c < kColumns; ++c) line.push_back(to_string(P.p(r, c)));
    rows.push_back(line);
  }
  return {{"rows", {"(∅,-1)", "(∅,+1)", "(-1,-1)", "(-1,+1)", "(+1,-1)", "(+1,+1)"}},
          {"columns", {"(0,0)", "(0,1)", "(1,0)", "(1,1)"}},
          {"table", rows}};
}

Exact correlation_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("table")) throw InputError("correlation: expected an object with 'table'");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "table" && it.key() != "rows" && it.key() != "columns") {
      throw InputError("correlation: unknown field '" + it.key() + "'");
    }
  }
  const json& t = doc["table"];
  if (!t.is_array() || (t.size() != 6 && t.size() != 4)) {
    throw InputError("correlation: 'table' needs 6 rows (with ∅) or 4 rows (without)");
  }
  const int offset = t.size() == 6 ? 0 : 2;
  Exact P;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (!t[r].is_array() || t[r].size() != 4) throw InputError("correlation: each row needs 4 entries");
    for (int c = 0; c < kColumns; ++c) {
      const json& e = t[r][c];
      if (e.is_string()) {
        P.p(static_cast<int>(r) + offset, c) = parse_rational(e.get<std::string>());
      } else if (e.is_number_integer()) {
        P.p(static_cast<int>(r) + offset, c) = e.get<long>();
      } else {
        throw InputError("correlation: entries must be \"num/den\" strings");
      }
    }
  }
  validate(P);
  return P;
}

json to_json(const HiddenVariableModel& hvm) {
  json values = json::array();
  for (const auto& v : hvm.values) values.push_back({{"q", to_string(v.q)}, {"lambda", v.response.str()}});
  return {{"values", values}};
}

HiddenVariableModel hvm_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("values") || doc.size() != 1) {
    throw InputError("hidden variable model: expected {\"values\": [...]}");
  }
  HiddenVariableModel m;
  for (const auto& v : doc["values"]) {
    if (!v.is_object() || !v.contains("q") || !v.contains("lambda") || v.size() != 2) {
      throw InputError("hidden variable model: each value needs exactly 'q' and 'lambda'");
    }
    m.values.push_back({parse_rational(v["q"].get<std::string>()), Response::parse(v["lambda"].get<std::string>())});
  }
  m.validate();
  return m;
}

}  // namespace aitlab::bell
