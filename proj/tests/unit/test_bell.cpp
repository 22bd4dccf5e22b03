#include <gtest/gtest.h>

#include "aitlab/bell/correlation.hpp"
#include "aitlab/core/error.hpp"

using namespace aitlab;
using namespace aitlab::bell;

namespace {

Exact from_rows(const std::vector<std::array<Rational, 4>>& rows) {
  Exact P;
  const int offset = rows.size() == 6 ? 0 : 2;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < 4; ++c) P.p(static_cast<int>(r) + offset, c) = rows[r][c];
  return P;
}

const Rational q(1, 4), h(1, 2), o(0), l(1);

// The table and the four deterministic behaviors, typed in by hand.
Exact printed_p0() {
  return from_rows({{q, q, q, q}, {q, q, q, q}, {q, q, q, o}, {o, o, o, q}, {o, o, o, q}, {q, q, q, o}});
}
Exact printed_pr() { return from_rows({{h, h, h, o}, {o, o, o, h}, {o, o, o, h}, {h, h, h, o}}); }

// Independent oracle: the maximum of <Y, L> over every local deterministic L.
Rational max_over_local(const Exact& Y) {
  const Outcome alice[] = {Outcome::null, Outcome::minus, Outcome::plus};
  Rational best = -1000;
  for (Outcome a0 : alice)
    for (Outcome a1 : alice)
      for (int b0 : {-1, 1})
        for (int b1 : {-1, 1}) {
          Rational s = 0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += Y.at(a ? a1 : a0, b ? b1 : b0, a, b);
          best = std::max(best, s);
        }
  return best;
}

Exact product(const std::array<std::array<Rational, 3>, 2>& alice, const std::array<Rational, 2>& bob_plus) {
  Exact P;
  const Outcome outs[] = {Outcome::null, Outcome::minus, Outcome::plus};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 3; ++i) {
        P.at(outs[i], 1, a, b) = alice[a][i] * bob_plus[b];
        P.at(outs[i], -1, a, b) = alice[a][i] * (1 - bob_plus[b]);
      }
  return P;
}

}  // namespace

TEST(Bell, LoopModelTable) {
  EXPECT_EQ(behavior_from_hvm(loop_model()), printed_p0());
  Exact P0 = behavior_from_hvm(loop_model());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_EQ(P0.at(Outcome::null, -1, a, b), q);
}

TEST(Bell, LoopBehaviorsAndConvexCombination) {
  Exact a = from_rows({{o, o, o, o}, {o, o, l, l}, {o, o, o, o}, {o, o, o, o}, {o, o, o, o}, {l, l, o, o}});
  Exact b = from_rows({{o, l, o, o}, {l, o, o, o}, {o, o, o, o}, {o, o, o, o}, {o, o, o, l}, {o, o, l, o}});
  Exact c = from_rows({{l, o, o, o}, {o, l, o, o}, {o, o, l, o}, {o, o, o, l}, {o, o, o, o}, {o, o, o, o}});
  Exact d = from_rows({{o, o, l, l}, {o, o, o, o}, {l, l, o, o}, {o, o, o, o}, {o, o, o, o}, {o, o, o, o}});
  auto m = loop_model();
  EXPECT_EQ(m.values[0].response.behavior(), a);
  EXPECT_EQ(m.values[1].response.behavior(), b);
  EXPECT_EQ(m.values[2].response.behavior(), c);
  EXPECT_EQ(m.values[3].response.behavior(), d);
  Exact sum;
  sum.p = (a.p + b.p + c.p + d.p) * q;
  EXPECT_EQ(behavior_from_hvm(m), sum);
}

TEST(Bell, PointMassAndBadWeights) {
  HiddenVariableModel m;
  m.values.push_back({1, Response::parse("++++")});
  Exact P = behavior_from_hvm(m);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_EQ(P.at(Outcome::plus, 1, a, b), 1);
  m.values.push_back({Rational(1, 3), Response::parse("----")});
  EXPECT_THROW(behavior_from_hvm(m), InputError);
  EXPECT_THROW(Response::parse("+∅+"), InputError);
  EXPECT_THROW(Response::parse("++∅+"), InputError);
  EXPECT_EQ(Response::parse("0−-+").str(), "∅--+");
}

TEST(Bell, PostselectionGivesPrBox) {
  EXPECT_EQ(postselect(behavior_from_hvm(loop_model())), printed_pr());
  EXPECT_EQ(printed_pr(), pr_box());
  EXPECT_EQ(postselect(pr_box()), pr_box());
}

TEST(Bell, PostselectionOfProductIsProduct) {
  Exact P0 = product({{{Rational(1, 3), Rational(1, 6), Rational(1, 2)}, {Rational(1, 5), Rational(2, 5), Rational(2, 5)}}},
                     {Rational(1, 7), Rational(3, 4)});
  Exact P = postselect(P0);
  Exact expected = product({{{0, Rational(1, 4), Rational(3, 4)}, {0, Rational(1, 2), Rational(1, 2)}}},
                           {Rational(1, 7), Rational(3, 4)});
  EXPECT_EQ(P, expected);
}

TEST(Bell, PostselectionErrors) {
  HiddenVariableModel always_null;
  always_null.values.push_back({1, Response::parse("∅+++")});
  EXPECT_THROW(postselect(behavior_from_hvm(always_null)), DomainError);
  // ∅ for a=0 only when b=1: signalling P0, ill-posed postselection.
  Exact P0;
  P0.at(Outcome::plus, 1, 0, 0) = 1;
  P0.at(Outcome::null, 1, 0, 1) = Rational(1, 2);
  P0.at(Outcome::plus, 1, 0, 1) = Rational(1, 2);
  P0.at(Outcome::plus, 1, 1, 0) = 1;
  P0.at(Outcome::plus, 1, 1, 1) = 1;
  EXPECT_THROW(postselect(P0), DomainError);
}

TEST(Bell, Chsh) {
  auto r = chsh(pr_box());
  EXPECT_EQ(r.value, 4);
  EXPECT_EQ(r.regime, "superquantum");
  Exact uniform;
  uniform.p.bottomRows(4).setConstant(Rational(1, 4));
  EXPECT_EQ(chsh(uniform).value, 0);
  HiddenVariableModel m;
  m.values.push_back({1, Response::parse("++++")});
  auto d = chsh(behavior_from_hvm(m));
  EXPECT_EQ(d.value, 2);
  EXPECT_EQ(d.regime, "classical-compatible");
  for (int i = 0; i < 4; ++i) EXPECT_EQ(d.E[i], 1);
  for (const char* a : {"++", "+-", "-+", "--"})
    for (const char* b : {"++", "+-", "-+", "--"}) {
      HiddenVariableModel v;
      v.values.push_back({1, Response::parse(std::string(a) + b)});
      EXPECT_LE(chsh(behavior_from_hvm(v)).value, 2);
    }
  EXPECT_THROW(chsh(behavior_from_hvm(loop_model())), DomainError);
  // A table between the bounds: mix of PR box and uniform noise.
  Exact mix;
  mix.p = pr_box().p * Rational(3, 5) + uniform.p * Rational(2, 5);
  EXPECT_EQ(chsh(mix).value, Rational(12, 5));
  EXPECT_EQ(chsh(mix).regime, "quantum-range");
}

TEST(Bell, Signalling) {
  auto pr = signalling_report(pr_box());
  EXPECT_EQ(pr.a_to_b, 0);
  EXPECT_EQ(pr.b_to_a, 0);
  EXPECT_TRUE(pr.nonsignalling);
  Exact s;  // Bob outputs + iff a = 1
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s.at(Outcome::plus, a ? 1 : -1, a, b) = 1;
  EXPECT_EQ(signalling_report(s).a_to_b, 1);
  EXPECT_EQ(signalling_report(s).b_to_a, 0);
  Exact p = product({{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {0, Rational(1, 4), Rational(3, 4)}}},
                    {Rational(1, 2), Rational(1, 9)});
  EXPECT_TRUE(signalling_report(p).nonsignalling);
}

TEST(Classical, LoopTableFeasible) {
  Exact P0 = behavior_from_hvm(loop_model());
  auto r = is_classical(P0);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.vertices, 36u);
  Exact back;
  Rational total = 0;
  for (const auto& [resp, w] : r.decomposition) {
    EXPECT_GT(w, 0);
    back.p += resp.behavior().p * w;
    total += w;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(back, P0);
}

TEST(Classical, PrBoxInfeasibleWithCertificate) {
  auto r = is_classical(pr_box());
  ASSERT_FALSE(r.feasible);
  EXPECT_EQ(r.vertices, 16u);
  EXPECT_GT(r.violation, 0);
  EXPECT_EQ(max_over_local(r.certificate) <= r.bound, true);
  EXPECT_GT(pairing(r.certificate, pr_box()), r.bound);
}

TEST(Classical, DeterministicIsSingleVertex) {
  HiddenVariableModel m;
  m.values.push_back({1, Response::parse("∅-+-")});
  auto r = is_classical(behavior_from_hvm(m));
  ASSERT_TRUE(r.feasible);
  ASSERT_EQ(r.decomposition.size(), 1u);
  EXPECT_EQ(r.decomposition[0].first.str(), "∅-+-");
  EXPECT_EQ(r.decomposition[0].second, 1);
}

TEST(Classical, RandomModelsAreClassical) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Exact P = behavior_from_hvm(random_hvm(s));
    auto r = is_classical(P);
    ASSERT_TRUE(r.feasible) << s;
    Exact back;
    for (const auto& [resp, w] : r.decomposition) back.p += resp.behavior().p * w;
    EXPECT_EQ(back, P);
  }
}

TEST(Classical, NoisyPrBoxThreshold) {
  Exact uniform;
  uniform.p.bottomRows(4).setConstant(Rational(1, 4));
  for (auto [num, den] : {std::pair{1, 2}, std::pair{1, 1}, std::pair{1, 3}, std::pair{3, 5}}) {
    Exact mix;
    mix.p = pr_box().p * Rational(num, den) + uniform.p * (1 - Rational(num, den));
    // local iff CHSH ≤ 2 for this family, i.e. weight ≤ 1/2
    EXPECT_EQ(is_classical(mix).feasible, Rational(num, den) <= Rational(1, 2)) << num << "/" << den;
  }
}

TEST(Lemma, LoopModel) {
  auto r = check_lemma_a1(behavior_from_hvm(loop_model()));
  EXPECT_TRUE(r.b_to_a_ok);
  EXPECT_TRUE(r.cond_indep);
  EXPECT_TRUE(r.a_to_b_ok);
  EXPECT_TRUE(r.postselected.nonsignalling);
  EXPECT_EQ(r.float_cross_check, 0.0);
}

TEST(Lemma, ProductWithNull) {
  Exact P0 = product({{{Rational(1, 3), Rational(1, 6), Rational(1, 2)}, {Rational(1, 5), Rational(2, 5), Rational(2, 5)}}},
                     {Rational(1, 7), Rational(3, 4)});
  auto r = check_lemma_a1(P0);
  EXPECT_TRUE(r.b_to_a_ok && r.cond_indep && r.a_to_b_ok);
}

TEST(Lemma, CorrelatedNonDetectionSignals) {
  Exact P0 = behavior_from_hvm(lemma_counterexample());
  auto r = check_lemma_a1(P0);
  EXPECT_FALSE(r.cond_indep);
  EXPECT_TRUE(r.b_to_a_ok);
  EXPECT_FALSE(r.a_to_b_ok);
  EXPECT_EQ(r.postselected.a_to_b, Rational(1, 2));
  EXPECT_GT(r.float_cross_check, 0.4);
}

TEST(Lemma, RandomIndependentP0) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Exact P0 = random_independent_p0(s);
    validate(P0);
    auto r = check_lemma_a1(P0);
    EXPECT_TRUE(r.cond_indep) << s;
    EXPECT_EQ(r.postselected.a_to_b, 0) << s;
    EXPECT_EQ(r.postselected.b_to_a, 0) << s;
  }
}

TEST(Lemma, BobToAliceHoldsWithoutCondition) {
  int violations = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto m = random_hvm(1000 + s);
    Exact P0 = behavior_from_hvm(m);
    bool dead = false;
    for (int a = 0; a < 2; ++a) dead = dead || P0.null_mass(a, 0) == 1;
    if (dead) continue;
    auto r = check_lemma_a1(P0);
    EXPECT_TRUE(r.b_to_a_ok) << s;
    if (!r.cond_indep) ++violations;
  }
  EXPECT_GT(violations, 0);
  EXPECT_THROW(check_lemma_a1([] {
                 Exact s;
                 for (int a = 0; a < 2; ++a)
                   for (int b = 0; b < 2; ++b) s.at(Outcome::plus, a ? 1 : -1, a, b) = 1;
                 return s;
               }()),
               DomainError);
}

TEST(Simulation, LoopModelApproachesPrBox) {
  auto r = run_loop_simulation(loop_model(), 2024, 100000);
  EXPECT_LT(r.distance, 0.02);
  EXPECT_EQ(r.target, pr_box());
  EXPECT_GT(r.loops, 0u);
  auto again = run_loop_simulation(loop_model(), 2024, 100000);
  EXPECT_EQ(r.tallies, again.tallies);
}

TEST(Simulation, NoNullMeansNoLoops) {
  HiddenVariableModel m;
  m.values.push_back({Rational(1, 3), Response::parse("+-+-")});
  m.values.push_back({Rational(2, 3), Response::parse("--++")});
  auto r = run_loop_simulation(m, 7, 20000);
  EXPECT_EQ(r.loops, 0u);
  EXPECT_EQ(r.target, behavior_from_hvm(m));
  EXPECT_LT(r.distance, 0.02);
}

TEST(Simulation, GuaranteedLoopRejected) {
  HiddenVariableModel m;
  m.values.push_back({1, Response::parse("∅+++")});
  EXPECT_THROW(run_loop_simulation(m, 1, 10), DomainError);
  EXPECT_THROW(run_loop_simulation(loop_model(), 1, 0), InputError);
}

TEST(Bell, JsonRoundTrip) {
  Exact P0 = behavior_from_hvm(loop_model());
  EXPECT_EQ(correlation_from_json(to_json(P0)), P0);
  EXPECT_EQ(behavior_from_hvm(hvm_from_json(to_json(loop_model()))), P0);
  auto four = nlohmann::json::parse(R"({"table": [["1/2","1/2","1/2","0"],["0","0","0","1/2"],["0","0","0","1/2"],["1/2","1/2","1/2","0"]]})");
  EXPECT_EQ(correlation_from_json(four), pr_box());
  EXPECT_THROW(correlation_from_json(nlohmann::json::parse(R"({"table": [["1","1","1","1"]]})")), InputError);
  EXPECT_THROW(hvm_from_json(nlohmann::json::parse(R"({"values": [{"q": "1/2", "lambda": "++++"}]})")), InputError);
  EXPECT_NE(format_table(P0, true).find("(∅,-1)"), std::string::npos);
}
