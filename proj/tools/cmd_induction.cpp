#include <filesystem>
#include <map>
#include <memory>
#include <sstream>

#include "cli.hpp"

#include "aitlab/algprob/normalize.hpp"
#include "aitlab/core/error.hpp"
#include "aitlab/induction/predictor.hpp"
#include "aitlab/induction/test.hpp"
#include "aitlab/mixture/member.hpp"
#include "aitlab/mixture/mixture.hpp"

namespace aitlab::cli {
namespace {

using nlohmann::json;
using mixture::MixtureState;

induction::ComputableTest load_test(const std::string& spec) {
  if (std::filesystem::exists(spec)) return induction::ComputableTest::from_json(read_json(spec));
  return induction::ComputableTest::parse(spec);
}

std::vector<mixture::Member> load_family(const std::string& path) {
  if (path.empty()) throw InputError("--family is required");
  return mixture::members_from_json(read_json(path));
}

std::size_t member_index(const MixtureState& s, int id) {
  for (std::size_t j = 0; j < s.members().size(); ++j)
    if (s.members()[j].id == id) return j;
  throw InputError("no member with id " + std::to_string(id));
}

json curve_json(const induction::PersistenceCurve& c) {
  json pts = json::array();
  for (const auto& p : c.points) {
    json row = {{"n", p.n}};
    if (c.exact) {
      row["p1"] = to_string(p.p1.lo);
      row["p0"] = to_string(p.p0.lo);
      row["cum_exception"] = to_string(p.cum_exception.lo);
    } else {
      row["p1"] = {to_string(p.p1.lo), to_string(p.p1.hi)};
      row["p0"] = {to_string(p.p0.lo), to_string(p.p0.hi)};
      row["cum_exception"] = {to_string(p.cum_exception.lo), to_string(p.cum_exception.hi)};
    }
    pts.push_back(row);
  }
  return {{"predictor", c.predictor}, {"test", c.test}, {"exact", c.exact}, {"points", pts}};
}

json family_json(const MixtureState& s) {
  json out = json::array();
  auto u = s.total() == 0 ? std::vector<Rational>(s.members().size(), Rational(0)) : s.posterior();
  for (std::size_t j = 0; j < s.members().size(); ++j) {
    const auto& m = s.members()[j];
    out.push_back({{"id", m.id},
                   {"name", m.name},
                   {"c", m.c},
                   {"m_z", to_string(s.likelihoods()[j])},
                   {"posterior", to_string(u[j])}});
  }
  return out;
}

json zombie_json(const MixtureState& s, const mixture::ZombieReport& r) {
  json out = {{"member", s.members()[r.member].id}, {"horizon", r.horizon}, {"zombie", r.zombie}};
  if (r.standard_error) {
    out["distance_estimate"] = to_double(r.distance);
    out["standard_error"] = *r.standard_error;
    out["samples"] = r.samples;
  } else {
    out["distance"] = to_string(r.distance);
  }
  return out;
}

std::string demo_persist() {
  std::ostringstream s;
  using induction::ComputableTest;
  s << "# computable tests\n";
  auto ninety = ComputableTest::parse("ones_fraction(9/10, 10)");
  for (const char* x : {"1101111111", "1111111111", "11011111110", "110"}) {
    s << ninety.name() << "(" << x << ") = " << ninety.evaluate(BitString(x)) << "\n";
  }
  for (const char* t : {"ones_fraction(9/10, 10)", "only_empty", "goodman(last_bit, 6)"}) {
    auto r = induction::check_sustainable(ComputableTest::parse(t), 12);
    s << t << ": sustainable to depth 12: " << (r.sustainable_to_depth ? "yes" : "no");
    if (!r.counterexamples.empty()) s << ", first counterexample " << show(r.counterexamples.front());
    s << "\n";
  }

  s << "\n# persistence: {Bernoulli(1/2): 1/2, all-ones: 1/2}, test last_bit\n";
  auto fam = mixture::members_from_json(json::parse(R"([
    {"kind": "bernoulli", "q": "1/2", "c": 1, "name": "fair"},
    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 1, "name": "all-ones"}])"));
  induction::MixturePredictor half{MixtureState(fam)};
  auto curve = induction::persistence_curve(half, ComputableTest::last_bit(), 8);
  s << induction::curve_csv(curve);
  s << "closed form (1 + 2^-(n+1))/(1 + 2^-n):";
  for (std::size_t n = 0; n < 8; ++n) s << " " << to_string((1 + pow2(-static_cast<long>(n) - 1)) / (1 + pow2(-static_cast<long>(n))));
  s << "\n";

  s << "\n# exception bound: all-ones at weight 1/4, sum of p(0|1^j) <= log2(4) = 2\n";
  auto quarter = mixture::members_from_json(json::parse(R"([
    {"kind": "bernoulli", "q": "1/2", "c": 1, "name": "fair"},
    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 2, "name": "all-ones"}])"));
  auto qc = induction::persistence_curve(induction::MixturePredictor{MixtureState(quarter)},
                                         ComputableTest::last_bit(), 64);
  const auto& last = qc.points.back();
  s << "n=" << last.n << " cum_exception " << to_double(last.cum_exception.lo) << " <= 2: "
    << (last.cum_exception.hi <= 2 ? "yes" : "no") << "\n";
  return s.str();
}

std::string demo_mixture() {
  std::ostringstream s;
  auto fam = mixture::members_from_json(json::parse(R"([
    {"kind": "bernoulli", "q": "1/2", "c": 1, "name": "fair"},
    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 1, "name": "all-ones"}])"));
  MixtureState prior(fam);
  s << "# {Bernoulli(1/2): c=1, all-ones: c=1}\n";
  s << "M_V(11) = " << to_string(prior.prior_probability(BitString("11"))) << "\n";
  auto z10 = prior.observe(BitString::repeat(1, 10));
  s << "posterior on all-ones after 1^10 = " << to_string(z10.posterior()[1]) << "\n";
  s << "M_V(1 | 1^10) = " << to_string(z10.conditional(BitString("1"))) << "\n";

  s << "\n# probabilistic zombies: {Bernoulli(1/2): c=1, all-ones: c=6}, j = all-ones, horizon 3\n";
  auto zfam = mixture::members_from_json(json::parse(R"([
    {"kind": "bernoulli", "q": "1/2", "c": 1, "name": "fair"},
    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 6, "name": "all-ones"}])"));
  MixtureState zs(zfam);
  auto r0 = mixture::zombie_report(zs, 1, 3, Rational(1, 5));
  s << "z=ε: distance " << to_string(r0.distance) << ", zombie at 1/5: " << (r0.zombie ? "yes" : "no") << "\n";
  auto r30 = mixture::zombie_report(zs.observe(BitString::repeat(1, 30)), 1, 3, Rational(1, 5));
  s << "z=1^30: distance < 2^-20: " << (r30.distance < pow2(-20) ? "yes" : "no")
    << ", zombie: " << (r30.zombie ? "yes" : "no") << "\n";

  s << "\n# subjective immortality: meteorite branch stops with probability 99/100 after z=1\n";
  auto sfam = mixture::members_from_json(json::parse(R"([
    {"kind": "deterministic", "prefix": "", "cycle": "1", "c": 1, "id": 0, "name": "meteorite",
     "termination": {"default": "0", "nodes": {"1": "99/100"}}},
    {"kind": "bernoulli", "q": "1/99", "c": 1, "id": 1, "name": "elsewhere"}])"));
  auto sv = mixture::survival_deficiency(MixtureState(sfam).observe(BitString("1")));
  for (const auto& e : sv.members) {
    s << "member " << e.id << ": posterior " << to_string(e.posterior) << ", stop "
      << (e.stop ? to_string(*e.stop) : "-") << ", continuing " << to_string(e.continuing) << "\n";
  }

  s << "\n# explanation ranking: planet (c=10, m=1/4) vs random fluctuation (c=10, m=2^-l)\n";
  for (std::size_t len : {10u, 20u, 30u}) {
    auto bfam = mixture::members_from_json(json::parse(R"([
      {"kind": "markov", "order": 1, "p1": ["1/2", "1"], "c": 10, "id": 0, "name": "planet"},
      {"kind": "bernoulli", "q": "1/2", "c": 10, "id": 1, "name": "random fluctuation"}])"));
    auto rk = mixture::explanation_ranking(MixtureState(bfam).observe(BitString("0") + BitString::repeat(1, len - 1)));
    s << "l=" << len << ": first " << rk[0].name << ", factor " << to_string(rk[0].weight / rk[1].weight) << "\n";
  }
  return s.str();
}

}  // namespace

void add_induction_commands(CLI::App& app, Context& ctx) {
  // persist
  {
    auto* cmd = app.add_subcommand("persist", "persistence curves p(1 | test passed n times)");
    auto* demo = cmd->add_subcommand("demo-paper", "worked persistence examples");
    cmd->require_subcommand(0, 1);
    struct Args {
      std::string family;
      std::string z;
      MachineArgs machine;
      std::string predictor = "normalized";
      std::size_t L = 10;
      std::uint64_t S = 100;
      std::string test = "last_bit";
      std::size_t n = 16;
      std::string format = "csv";
      std::size_t sustain = 0;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("--family", a->family, "mixture family JSON (mixture predictor)");
    cmd->add_option("--z", a->z, "evidence the mixture is conditioned on first");
    a->machine.add_to(cmd);
    cmd->add_option("--predictor", a->predictor, "for machines: normalized or enumeration")
        ->check(CLI::IsMember({"normalized", "enumeration"}))
        ->capture_default_str();
    cmd->add_option("--L", a->L, "maximum program length")->capture_default_str();
    cmd->add_option("--S", a->S, "step budget per program")->capture_default_str();
    cmd->add_option("--test", a->test, "test JSON file or expression, e.g. ones_fraction(9/10, 10)")
        ->capture_default_str();
    cmd->add_option("--n", a->n, "number of curve points")->capture_default_str();
    cmd->add_option("--format", a->format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--sustain-depth", a->sustain, "also check sustainability to this depth (json)");
    demo->callback([&ctx] { ctx.emit(demo_persist()); });
    cmd->callback([&ctx, a, demo] {
      if (demo->parsed()) return;
      auto test = load_test(a->test);
      std::unique_ptr<induction::Predictor> p;
      json settings = {{"test", test.name()}, {"n", a->n}};
      if (!a->family.empty()) {
        if (!a->machine.file.empty() || !a->machine.builtin.empty())
          throw InputError("give either --family or a machine");
        MixtureState st(load_family(a->family));
        if (!a->z.empty()) st = st.observe(parse_bits(a->z));
        p = std::make_unique<induction::MixturePredictor>(st);
        settings["family"] = a->family;
        settings["z"] = a->z;
      } else {
        if (a->n > 16 || a->L > 24) throw InputError("machine predictors need --n <= 16 and --L <= 24");
        auto m = a->machine.load();
        if (a->predictor == "normalized")
          p = std::make_unique<induction::NormalizedPredictor>(algprob::normalize(m, a->n, a->L, a->S));
        else
          p = std::make_unique<induction::EnumerationPredictor>(m, a->n, a->L, a->S);
        settings["machine"] = a->machine.describe();
        settings["predictor"] = a->predictor;
        settings["L"] = a->L;
        settings["S"] = a->S;
      }
      auto curve = induction::persistence_curve(*p, test, a->n);
      if (a->format == "csv") {
        ctx.emit(induction::curve_csv(curve));
        return;
      }
      json doc = {{"provenance", ctx.provenance(settings)}, {"curve", curve_json(curve)}};
      if (a->sustain > 0) {
        if (a->sustain > 24) throw InputError("--sustain-depth above 24 is not supported");
        auto r = induction::check_sustainable(test, a->sustain);
        json ce = json::array(), wf = json::array();
        for (const auto& x : r.counterexamples) ce.push_back(x.str());
        for (const auto& x : r.witness_failures) wf.push_back(x.str());
        doc["sustainability"] = {{"depth", r.depth},
                                 {"sustainable", r.sustainable_to_depth},
                                 {"counterexamples", ce},
                                 {"witness_failures", wf}};
      }
      ctx.emit(doc);
    });
  }

  // mixture
  {
    auto* cmd = app.add_subcommand("mixture", "finite mixtures: posterior, conditional, zombie, survival, ranking");
    cmd->require_subcommand(1);
    struct Args {
      std::string family;
      std::string z;
      std::string y;
      int member = 0;
      unsigned horizon = 3;
      std::string theta = "1/5";
      std::uint64_t samples = 0;
      std::uint64_t seed = 0;
    };
    auto a = std::make_shared<Args>();
    auto state = [a] {
      MixtureState st(load_family(a->family));
      return a->z.empty() ? st : st.observe(parse_bits(a->z));
    };
    auto common = [a](CLI::App* sub) {
      sub->add_option("--family", a->family, "family JSON file")->required();
      sub->add_option("--z", a->z, "observed prefix");
    };
    auto base = [&ctx, a](json extra = json::object()) {
      json s = {{"family", a->family}, {"z", a->z}};
      s.update(extra);
      return ctx.provenance(s);
    };

    auto* post = cmd->add_subcommand("posterior", "M_V(z) and the posterior weights");
    common(post);
    post->callback([&ctx, state, base] {
      auto st = state();
      ctx.emit(json{{"provenance", base()}, {"M_V", to_string(st.total())}, {"members", family_json(st)}});
    });

    auto* cond = cmd->add_subcommand("conditional", "M_V(y | z) and each member's m_j(y | z)");
    common(cond);
    cond->add_option("--y", a->y, "continuation")->required();
    cond->callback([&ctx, a, state, base] {
      auto st = state();
      BitString y = parse_bits(a->y);
      json per = json::array();
      for (std::size_t j = 0; j < st.members().size(); ++j) {
        auto c = st.member_conditional(j, y);
        per.push_back({{"id", st.members()[j].id}, {"conditional", c ? json(to_string(*c)) : json(nullptr)}});
      }
      ctx.emit(json{{"provenance", base({{"y", a->y}})}, {"conditional", to_string(st.conditional(y))}, {"members", per}});
    });

    auto* zom = cmd->add_subcommand("zombie", "total variation between M_V(. | z) and m_j(. | z)");
    common(zom);
    zom->add_option("--member", a->member, "member id")->required();
    zom->add_option("--horizon", a->horizon, "length of continuations")->capture_default_str();
    zom->add_option("--theta", a->theta, "zombie threshold")->capture_default_str();
    zom->add_option("--samples", a->samples, "Monte Carlo samples (0: exact)")->capture_default_str();
    auto* seed_opt = zom->add_option("--seed", a->seed, "seed, required with --samples");
    zom->callback([&ctx, a, state, base, seed_opt] {
      auto st = state();
      auto j = member_index(st, a->member);
      Rational theta = parse_rational(a->theta);
      json extra = {{"member", a->member}, {"horizon", a->horizon}, {"theta", to_string(theta)}};
      mixture::ZombieReport r;
      if (a->samples > 0) {
        if (seed_opt->count() == 0) throw InputError("--seed is required with --samples");
        r = mixture::zombie_report_sampled(st, j, a->horizon, theta, a->samples, a->seed);
        extra["samples"] = a->samples;
        extra["seed"] = a->seed;
      } else {
        r = mixture::zombie_report(st, j, a->horizon, theta);
      }
      ctx.emit(json{{"provenance", base(extra)}, {"report", zombie_json(st, r)}});
    });

    auto* surv = cmd->add_subcommand("survival", "stopping probabilities and the posterior among continuing runs");
    common(surv);
    surv->callback([&ctx, state, base] {
      auto r = mixture::survival_deficiency(state());
      json members = json::array();
      for (const auto& e : r.members) {
        members.push_back({{"id", e.id},
                           {"posterior", to_string(e.posterior)},
                           {"stop", e.stop ? json(to_string(*e.stop)) : json(nullptr)},
                           {"continuing", to_string(e.continuing)}});
      }
      ctx.emit(json{{"provenance", base()},
                    {"continue_probability", to_string(r.continue_probability)},
                    {"members", members}});
    });

    auto* rank = cmd->add_subcommand("ranking", "members by 2^-c m_j(z)");
    common(rank);
    rank->callback([&ctx, state, base] {
      json out = json::array();
      for (const auto& e : mixture::explanation_ranking(state())) {
        out.push_back({{"id", e.id},
                       {"name", e.name},
                       {"c", e.c},
                       {"weight", to_string(e.weight)},
                       {"posterior", to_string(e.posterior)}});
      }
      ctx.emit(json{{"provenance", base()}, {"ranking", out}});
    });

    auto* demo = cmd->add_subcommand("demo-paper", "worked mixture examples");
    demo->callback([&ctx] { ctx.emit(demo_mixture()); });
  }
}

}  // namespace aitlab::cli
