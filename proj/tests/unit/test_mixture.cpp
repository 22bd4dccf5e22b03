#include <gtest/gtest.h>

#include <random>

#include "aitlab/core/error.hpp"
#include "aitlab/mixture/mixture.hpp"
#include "aitlab/mtm/library.hpp"

using namespace aitlab;
using namespace aitlab::mixture;

namespace {

Member make(int id, std::string name, unsigned c, std::shared_ptr<const Rule> rule) {
  Member m;
  m.id = id;
  m.name = std::move(name);
  m.c = c;
  m.rule = std::move(rule);
  return m;
}

Member all_ones(int id, unsigned c) { return make(id, "all-ones", c, deterministic(BitString(), BitString("1"))); }
Member fair(int id, unsigned c) { return make(id, "fair", c, bernoulli(Rational(1, 2))); }

// Closed forms, independent of the step rules.
Rational bernoulli_prob(const Rational& q, const BitString& x) {
  Rational r = 1;
  for (std::size_t i = 0; i < x.size(); ++i) r *= x[i] ? q : 1 - q;
  return r;
}
Rational ones_prob(const BitString& x) { return x.count_ones() == x.size() ? 1 : 0; }

}  // namespace

TEST(Mixture, SingleDeterministicMember) {
  MixtureState s({all_ones(0, 1)});
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(s.prior_probability(BitString::repeat(1, n)), Rational(1, 2));
}

TEST(Mixture, TwoMemberValueAgainstClosedForm) {
  MixtureState s({fair(0, 1), all_ones(1, 1)});
  EXPECT_EQ(s.prior_probability(BitString("11")), Rational(5, 8));
  for_each_string(6, [&](const BitString& x) {
    Rational oracle = Rational(1, 2) * bernoulli_prob(Rational(1, 2), x) + Rational(1, 2) * ones_prob(x);
    EXPECT_EQ(s.prior_probability(x), oracle) << x;
  });
}

TEST(Mixture, KraftViolationRejected) {
  EXPECT_THROW(MixtureState({fair(0, 1), fair(1, 1), fair(2, 1)}), InputError);
}

TEST(Mixture, PosteriorExamples) {
  MixtureState s({fair(0, 1), all_ones(1, 1)});
  auto u = s.observe(BitString::repeat(1, 10)).posterior();
  EXPECT_EQ(u[1], Rational(1024, 1025));
  EXPECT_EQ(u[0] + u[1], 1);
  auto prior = s.posterior();
  EXPECT_EQ(prior[0], Rational(1, 2));
  EXPECT_EQ(prior[1], Rational(1, 2));
  EXPECT_EQ(s.observe(BitString("1101")).posterior()[1], 0);
  EXPECT_EQ(posterior(s.members(), BitString::repeat(1, 10))[1], Rational(1024, 1025));
}

TEST(Mixture, ImpossibleEvidence) {
  MixtureState s({all_ones(0, 1)});
  EXPECT_THROW(s.observe(BitString("10")), DomainError);
}

TEST(Mixture, ConditionalExamples) {
  MixtureState s({fair(0, 1), all_ones(1, 1)});
  auto z = s.observe(BitString::repeat(1, 10));
  EXPECT_EQ(z.conditional(BitString("1")), Rational(2049, 2050));
  // Chain rule and agreement with the ratio of prior values.
  for_each_string(4, [&](const BitString& y) {
    EXPECT_EQ(z.conditional(y), s.prior_probability(z.observed() + y) / s.prior_probability(z.observed()));
    if (!y.empty()) {
      BitString head = y.prefix(1), tail = y.suffix_from(1);
      if (z.conditional(head) != 0) EXPECT_EQ(z.conditional(y), z.conditional(head) * z.observe(head).conditional(tail));
    }
  });
  MixtureState single({make(0, "b", 3, bernoulli(Rational(1, 3)))});
  EXPECT_EQ(single.observe(BitString("01")).conditional(BitString("11")), Rational(1, 9));
}

TEST(Mixture, DominanceAndSemimeasure) {
  Member t = make(2, "stopping", 3, markov(1, {Rational(1, 3), Rational(4, 5)}));
  t.termination.fallback = Rational(1, 10);
  t.termination.nodes[BitString("01")] = Rational(1, 2);
  MixtureState s({fair(0, 2), all_ones(1, 2), t});
  for_each_string(6, [&](const BitString& x) {
    Rational mv = s.prior_probability(x);
    for (const auto& m : s.members()) EXPECT_GE(mv, m.weight() * m.probability(x));
    for (const auto& m : s.members()) {
      Rational px = m.probability(x);
      EXPECT_EQ(m.probability(x.with(0)) + m.probability(x.with(1)) + px * m.stop(x), px);
      EXPECT_GE(m.stop(x), 0);
    }
  });
  EXPECT_EQ(t.probability(BitString()), 1);
}

TEST(Mixture, MarkovPadding) {
  auto chain = markov(2, {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)});
  // First bit: context 00. Second: context 0x1 = 01 if first bit 1.
  EXPECT_EQ(chain->next(BitString())[1], Rational(1, 2));
  EXPECT_EQ(chain->next(BitString("1"))[1], Rational(1, 3));
  EXPECT_EQ(chain->next(BitString("10"))[1], Rational(1, 4));
  EXPECT_EQ(chain->next(BitString("011"))[1], Rational(1, 5));
  EXPECT_THROW(markov(1, {Rational(1, 2)}), InputError);
  EXPECT_THROW(bernoulli(Rational(3, 2)), InputError);
}

TEST(Mixture, MachineSequenceMember) {
  auto spec = *mtm::builtin_machine("constant-0");
  Member m = make(0, "zeros", 1, machine_sequence(spec, 1000));
  EXPECT_EQ(m.probability(BitString("0000")), 1);
  EXPECT_EQ(m.probability(BitString("0010")), 0);
  // copy on empty input asks for input at once: the sequence is empty.
  Member copy = make(1, "copy", 1, machine_sequence(*mtm::builtin_machine("copy"), 1000));
  EXPECT_EQ(copy.stop(BitString()), 1);
  Member tight = make(2, "tight", 1, machine_sequence(spec, 3));
  EXPECT_THROW(tight.probability(BitString("00000000")), EvaluationError);
}

TEST(Zombie, NoEvidenceIsZombie) {
  MixtureState s({fair(0, 1), all_ones(1, 6)});
  auto r = zombie_report(s, 1, 3, Rational(1, 5));
  // Oracle: direct sum over the 8 strings with closed-form member values.
  Rational total = Rational(1, 2) + Rational(1, 64), sum = 0;
  for (const auto& y : strings_of_length(3)) {
    Rational mv = (Rational(1, 2) * bernoulli_prob(Rational(1, 2), y) + Rational(1, 64) * ones_prob(y)) / total;
    sum += abs(mv - ones_prob(y));
  }
  EXPECT_EQ(r.distance, sum / 2);
  EXPECT_EQ(r.distance, Rational(28, 33));
  EXPECT_TRUE(r.zombie);
}

TEST(Zombie, SingletonIsNeverZombie) {
  MixtureState s({make(0, "b", 2, bernoulli(Rational(2, 7)))});
  for (unsigned h = 0; h <= 6; ++h) {
    auto r = zombie_report(s.observe(BitString("0110")), 0, h, Rational(0));
    EXPECT_EQ(r.distance, 0);
    EXPECT_FALSE(r.zombie);
  }
}

TEST(Zombie, EvidenceRemovesZombie) {
  MixtureState s({fair(0, 1), all_ones(1, 6)});
  auto r = zombie_report(s.observe(BitString::repeat(1, 30)), 1, 3, Rational(1, 5));
  EXPECT_LT(r.distance, pow2(-20));
  EXPECT_FALSE(r.zombie);
  EXPECT_THROW(zombie_report(s, 1, 13, Rational(1, 5)), InputError);
  EXPECT_THROW(zombie_report(s.observe(BitString("0")), 1, 2, Rational(1, 5)), DomainError);
}

TEST(Zombie, DistanceMonotoneInHorizonAndBounded) {
  Member t = make(2, "chain", 3, markov(1, {Rational(1, 3), Rational(4, 5)}));
  MixtureState s({fair(0, 2), all_ones(1, 2), t});
  auto z = s.observe(BitString("11"));
  for (std::size_t j = 0; j < 3; ++j) {
    Rational prev = 0;
    for (unsigned h = 0; h <= 8; ++h) {
      auto r = zombie_report(z, j, h, Rational(1, 2));
      EXPECT_GE(r.distance, prev);
      EXPECT_LE(r.distance, 1);
      prev = r.distance;
    }
  }
}

TEST(Zombie, SampledAgreesWithExact) {
  Member t = make(2, "chain", 3, markov(1, {Rational(1, 3), Rational(4, 5)}));
  MixtureState s({fair(0, 2), all_ones(1, 2), t});
  auto z = s.observe(BitString("111"));
  for (std::size_t j = 0; j < 3; ++j) {
    auto exact = zombie_report(z, j, 8, Rational(1, 2));
    auto mc = zombie_report_sampled(z, j, 8, Rational(1, 2), 4000, 17 + j);
    ASSERT_TRUE(mc.standard_error);
    EXPECT_NEAR(to_double(mc.distance), to_double(exact.distance), 5 * *mc.standard_error + 1e-12) << j;
  }
}

TEST(Survival, MeteoriteBranch) {
  Member doomed = all_ones(0, 1);
  doomed.name = "meteorite";
  doomed.termination.nodes[BitString("1")] = Rational(99, 100);
  Member other = make(1, "elsewhere", 1, bernoulli(Rational(1, 99)));
  auto z = MixtureState({doomed, other}).observe(BitString("1"));
  auto u = z.posterior();
  EXPECT_EQ(u[0], Rational(99, 100));
  auto r = survival_deficiency(z);
  EXPECT_EQ(*r.members[0].stop, Rational(99, 100));
  EXPECT_EQ(*r.members[1].stop, 0);
  EXPECT_EQ(r.members[0].continuing, Rational(99, 199));
  EXPECT_EQ(r.members[1].continuing, Rational(100, 199));
  EXPECT_EQ(r.continue_probability, z.conditional(BitString("0")) + z.conditional(BitString("1")));
}

TEST(Survival, MeasuresHaveNoDeficiency) {
  auto z = MixtureState({fair(0, 1), all_ones(1, 2)}).observe(BitString("11"));
  auto r = survival_deficiency(z);
  auto u = z.posterior();
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_EQ(*r.members[j].stop, 0);
    EXPECT_EQ(r.members[j].continuing, u[j]);
  }
}

TEST(Survival, CertainTerminationIsAnError) {
  Member m = fair(0, 1);
  m.termination.nodes[BitString("0")] = 1;
  auto z = MixtureState({m}).observe(BitString("0"));
  EXPECT_THROW(survival_deficiency(z), DomainError);
}

TEST(Ranking, Boltzmann) {
  for (std::size_t len : {10u, 20u, 30u}) {
    BitString z = BitString("0") + BitString::repeat(1, len - 1);
    Member planet = make(0, "planet", 10, markov(1, {Rational(1, 2), Rational(1)}));
    Member fluctuation = make(1, "random fluctuation", 10, bernoulli(Rational(1, 2)));
    auto r = explanation_ranking(MixtureState({planet, fluctuation}).observe(z));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].name, "planet");
    EXPECT_EQ(r[0].weight, pow2(-10) / 4);
    EXPECT_EQ(r[0].weight / r[1].weight, pow2(static_cast<long>(len) - 2));
  }
}

TEST(Ranking, HardcodedVersusPlanet) {
  for (std::size_t len = 1; len <= 8; ++len) {
    BitString z = len == 1 ? BitString("0") : BitString("0") + BitString::repeat(1, len - 1);
    Member planet = make(0, "planet", 10, markov(1, {Rational(1, 2), Rational(1)}));
    Member hard = make(1, "hardcoded", static_cast<unsigned>(10 + len), deterministic(z, BitString()));
    auto r = explanation_ranking(MixtureState({planet, hard}).observe(z));
    Rational planet_m = len == 1 ? Rational(1, 2) : Rational(1, 4);
    const bool strict = r[0].name == "planet" && r[0].weight > r[1].weight;
    EXPECT_EQ(strict, planet_m * pow2(-10) > pow2(-static_cast<long>(10 + len))) << len;
    if (len >= 2) EXPECT_EQ(strict, len > 2) << len;
  }
}

TEST(Ranking, TiesAndEmpty) {
  auto r = explanation_ranking(MixtureState({fair(5, 2), fair(3, 2), fair(4, 1)}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].id, 4);
  EXPECT_EQ(r[1].id, 3);
  EXPECT_EQ(r[2].id, 5);
  EXPECT_TRUE(explanation_ranking(MixtureState(std::vector<Member>{})).empty());
}

TEST(Mixture, ConcentrationOnTrueMember) {
  MixtureState s({fair(0, 2), make(1, "biased", 2, bernoulli(Rational(9, 10))), all_ones(2, 3)});
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.9);
  double mean = 0;
  const int runs = 40;
  for (int t = 0; t < runs; ++t) {
    BitString z;
    for (int i = 0; i < 60; ++i) z.push_back(coin(rng) ? 1 : 0);
    mean += to_double(s.observe(z).posterior()[1]);
  }
  EXPECT_GT(mean / runs, 0.9);
}

TEST(Mixture, JsonFamilyRoundTrip) {
  auto doc = nlohmann::json::parse(R"([
    {"kind": "bernoulli", "q": "1/2", "c": 2},
    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 2, "name": "all-ones"},
    {"kind": "markov", "order": 1, "p1": ["1/2", "1"], "c": 3},
    {"kind": "machine", "builtin": "constant-0", "step_bound": 500, "c": 4,
     "termination": {"default": "0", "nodes": {"00": "99/100"}}}
  ])");
  auto members = members_from_json(doc);
  ASSERT_EQ(members.size(), 4u);
  EXPECT_EQ(members[1].name, "all-ones");
  EXPECT_EQ(members[3].stop(BitString("00")), Rational(99, 100));
  nlohmann::json back = nlohmann::json::array();
  for (const auto& m : members) back.push_back(member_to_json(m));
  auto again = members_from_json(back);
  MixtureState a(members), b(again);
  for_each_string(5, [&](const BitString& x) { EXPECT_EQ(a.prior_probability(x), b.prior_probability(x)); });

  EXPECT_THROW(members_from_json(nlohmann::json::parse(R"([{"kind": "bernoulli", "q": "1/2", "c": 1, "x": 1}])")),
               InputError);
  EXPECT_THROW(members_from_json(nlohmann::json::parse(R"([{"kind": "poisson", "c": 1}])")), InputError);
  EXPECT_THROW(members_from_json(nlohmann::json::parse(R"([{"kind": "bernoulli", "q": "1/2"}])")), InputError);
}
