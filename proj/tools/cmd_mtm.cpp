#include <memory>
#include <sstream>

#include "cli.hpp"

#include "aitlab/algprob/encoding_map.hpp"
#include "aitlab/algprob/estimate.hpp"
#include "aitlab/algprob/normalize.hpp"
#include "aitlab/core/error.hpp"
#include "aitlab/mtm/encoding.hpp"
#include "aitlab/mtm/execution.hpp"
#include "aitlab/mtm/library.hpp"
#include "aitlab/mtm/machine_json.hpp"
#include "aitlab/mtm/universal.hpp"

namespace aitlab::cli {
namespace {

using nlohmann::json;

json report_json(const algprob::EstimateReport& r) {
  json q = json::array();
  for (const auto& p : r.qualifying) q.push_back(p.str());
  json out = {{"x", r.x.str()}, {"M_lower", to_string(r.M_lower)}};
  out["M_upper"] = r.M_upper ? json(to_string(*r.M_upper)) : json(nullptr);
  out["Km_upper"] = r.Km_upper ? json(*r.Km_upper) : json(nullptr);
  out["qualifying"] = q;
  out["inconclusive"] = r.inconclusive;
  return out;
}

json outcome_json(const mtm::RunOutcome& o) {
  return {{"output", o.output.str()}, {"consumed", o.consumed}, {"steps", o.steps}, {"status", mtm::to_string(o.status)}};
}

algprob::EncodingMap load_map(const std::string& spec) {
  if (spec.find('.') != std::string::npos || spec.find('/') != std::string::npos)
    return algprob::EncodingMap::from_json(read_json(spec));
  return algprob::EncodingMap::from_json({{"builtin", spec}});
}

std::string run_line(const std::string& name, const mtm::MachineSpec& m, const BitString& p, std::uint64_t budget) {
  auto o = mtm::run(m, p, budget);
  std::ostringstream s;
  s << name << "(" << show(p) << ") budget " << budget << ": output " << show(o.output) << ", read " << o.consumed
    << ", steps " << o.steps << ", " << mtm::to_string(o.status) << "\n";
  return s.str();
}

std::string demo_run() {
  std::ostringstream s;
  s << "# monotone machines\n";
  s << run_line("copy", mtm::copy_machine(), BitString("101"), 100);
  s << run_line("constant-0", mtm::constant_machine(0), BitString(), 5);
  s << run_line("doubler", mtm::doubler_machine(), BitString("10"), 100);
  s << run_line("copy-three", mtm::copy_three_machine(), BitString("1101"), 100);
  s << run_line("reverse", mtm::reverse_machine(), BitString("1110110"), 200);
  s << "\n# T(p) = x* checks\n";
  auto verdict = [&](const std::string& name, const mtm::MachineSpec& m, const char* p, const char* x) {
    s << name << ": p=" << show(parse_bits(p)) << " x=" << show(parse_bits(x)) << " -> "
      << mtm::to_string(mtm::outputs_prefix(m, parse_bits(p), parse_bits(x), 100)) << "\n";
  };
  verdict("copy", mtm::copy_machine(), "101", "101");
  verdict("copy", mtm::copy_machine(), "1011", "101");
  verdict("constant-0", mtm::constant_machine(0), "", "000");
  verdict("constant-0", mtm::constant_machine(0), "", "");
  s << "\n# universal machine: U(x_T p) = T(p)\n";
  const auto& U = mtm::reference_universal();
  for (const auto& [name, T] :
       std::vector<std::pair<std::string, mtm::MachineSpec>>{{"copy", mtm::copy_machine()},
                                                             {"invert", mtm::invert_machine()},
                                                             {"doubler", mtm::doubler_machine()}}) {
    BitString x = mtm::encode_machine(T);
    BitString p("1101");
    auto direct = mtm::run(T, p, 1000);
    auto sim = mtm::run(U, x + p, 2000000);
    s << name << ": l(x_T)=" << x.size() << " T(1101)=" << show(direct.output) << " U(x_T 1101)=" << show(sim.output)
      << (direct.output == sim.output ? " equal" : " DIFFERENT") << "\n";
  }
  return s.str();
}

std::string estimate_line(const std::string& name, const mtm::MachineSpec& m, const char* x, std::size_t L,
                          std::uint64_t S) {
  auto r = algprob::estimate_M(m, parse_bits(x), L, S);
  std::ostringstream s;
  s << name << " x=" << show(r.x) << " L=" << L << " S=" << S << ": M_lower " << to_string(r.M_lower) << ", M_upper "
    << (r.M_upper ? to_string(*r.M_upper) : "none") << ", Km <= "
    << (r.Km_upper ? std::to_string(*r.Km_upper) : "none") << "\n";
  return s.str();
}

std::string demo_estimate() {
  std::ostringstream s;
  s << "# budget-bounded M and Km\n";
  s << estimate_line("copy", mtm::copy_machine(), "101", 3, 100);
  s << estimate_line("copy", mtm::copy_machine(), "1011", 4, 100);
  s << estimate_line("copy", mtm::copy_machine(), "1011", 3, 100);
  s << estimate_line("constant-0", mtm::constant_machine(0), "0000", 3, 100);
  s << estimate_line("constant-0", mtm::constant_machine(0), "01", 3, 100);
  s << estimate_line("doubler", mtm::doubler_machine(), "1100", 4, 100);
  s << estimate_line("doubler", mtm::doubler_machine(), "110", 4, 100);
  s << "\n# semimeasure: M(x) >= M(x0) + M(x1)\n";
  auto all = algprob::estimate_all(mtm::doubler_machine(), 3, 6, 100);
  for (const char* x : {"", "1", "11"}) {
    BitString b = parse_bits(x);
    s << "doubler M(" << show(b) << ")=" << to_string(all[tree_index(b)].M_lower) << " M(" << show(b.with(0))
      << ")+M(" << show(b.with(1)) << ")=" << to_string(all[tree_index(b.with(0))].M_lower + all[tree_index(b.with(1))].M_lower)
      << "\n";
  }
  return s.str();
}

std::string demo_normalize() {
  std::ostringstream s;
  s << "# Solomonoff normalization\n";
  auto nm = algprob::normalize(mtm::doubler_machine(), 4, 8, 100);
  for (const char* x : {"", "0", "1", "00", "01", "11", "110", "1100", "1101"}) {
    BitString b = parse_bits(x);
    const auto& m = nm.M_lower.at(b);
    const auto& p = nm.P.at(b);
    s << "doubler " << show(b) << ": M " << (m ? to_string(*m) : "undefined") << ", P "
      << (p ? to_string(*p) : "undefined") << "\n";
  }
  s << "undefined below:";
  for (const auto& x : nm.undefined_below) s << " " << show(x);
  s << "\n";
  return s.str();
}

std::string demo_transport() {
  std::ostringstream s;
  s << "# encoding invariance: M_V(x) = M_U(phi(x)), V = phi^-1 o U\n";
  auto v = algprob::transport_machine(mtm::constant_machine(0), algprob::EncodingMap::constant(1));
  s << "V = transport(constant-0, inversion): V(ε) = " << show(mtm::run(v, BitString(), 6).output) << "\n";
  for (const char* name : {"inversion", "last_bit", "parity"}) {
    auto phi = load_map(name);
    auto u = mtm::copy_machine();
    auto vm = algprob::transport_machine(u, phi);
    auto mu = algprob::estimate_all(u, 3, 5, 60);
    auto mv = algprob::estimate_all(vm, 3, 5, 60);
    std::size_t equal = 0, total = 0;
    for_each_string(3, [&](const BitString& x) {
      ++total;
      if (mv[tree_index(x)].M_lower == mu[tree_index(phi.apply(x))].M_lower) ++equal;
    });
    s << "copy under " << name << ": phi(110)=" << phi.apply(BitString("110")).str() << ", " << equal << "/" << total
      << " strings with l <= 3 agree\n";
  }
  return s.str();
}

}  // namespace

void add_mtm_commands(CLI::App& app, Context& ctx) {
  // machine
  {
    auto* cmd = app.add_subcommand("machine", "print a builtin machine as a JSON document");
    auto name = std::make_shared<std::string>();
    cmd->add_option("name", *name, "builtin name")->required();
    cmd->callback([&ctx, name] {
      MachineArgs m;
      m.builtin = *name;
      ctx.emit(mtm::machine_to_json(m.load()));
    });
  }

  // run
  {
    auto* cmd = app.add_subcommand("run", "run a machine on a finite input");
    auto* demo = cmd->add_subcommand("demo-paper", "worked examples for monotone machines");
    cmd->require_subcommand(0, 1);
    struct Args {
      MachineArgs machine;
      std::string input;
      std::uint64_t budget = 1000;
    };
    auto a = std::make_shared<Args>();
    a->machine.add_to(cmd);
    cmd->add_option("--input", a->input, "input bits (default empty)");
    cmd->add_option("--budget", a->budget, "step budget")->capture_default_str();
    demo->callback([&ctx] { ctx.emit(demo_run()); });
    cmd->callback([&ctx, a, demo] {
      if (demo->parsed()) return;
      auto m = a->machine.load();
      auto o = mtm::run(m, parse_bits(a->input), a->budget);
      json doc = {{"provenance", ctx.provenance({{"machine", a->machine.describe()},
                                                 {"input", a->input},
                                                 {"budget", a->budget}})}};
      doc["outcome"] = outcome_json(o);
      ctx.emit(doc);
    });
  }

  // estimate
  {
    auto* cmd = app.add_subcommand("estimate", "bounds on M_T(x) and Km_T(x) by bounded enumeration");
    auto* demo = cmd->add_subcommand("demo-paper", "worked examples for M and Km");
    cmd->require_subcommand(0, 1);
    struct Args {
      MachineArgs machine;
      std::vector<std::string> xs;
      int depth = -1;
      std::size_t L = 8;
      std::uint64_t S = 100;
      bool levin = false;
    };
    auto a = std::make_shared<Args>();
    a->machine.add_to(cmd);
    cmd->add_option("--x", a->xs, "target string (repeatable)");
    cmd->add_option("--depth", a->depth, "every x with l(x) <= depth instead of --x");
    cmd->add_option("--L", a->L, "maximum program length")->capture_default_str();
    cmd->add_option("--S", a->S, "step budget per program")->capture_default_str();
    cmd->add_flag("--levin", a->levin, "budget S 2^(L - l(p)) per program");
    demo->callback([&ctx] { ctx.emit(demo_estimate()); });
    cmd->callback([&ctx, a, demo] {
      if (demo->parsed()) return;
      if (a->xs.empty() == (a->depth < 0)) throw InputError("give --x or --depth");
      if (a->L > 24) throw InputError("--L above 24 is not supported");
      auto m = a->machine.load();
      algprob::EstimateOptions opt;
      opt.levin = a->levin;
      json reports = json::array();
      if (a->depth >= 0) {
        if (a->depth > 16) throw InputError("--depth above 16 is not supported");
        auto all = algprob::estimate_all(m, static_cast<std::size_t>(a->depth), a->L, a->S, opt);
        for_each_string(static_cast<std::size_t>(a->depth),
                        [&](const BitString& x) { reports.push_back(report_json(all[tree_index(x)])); });
      } else {
        for (const auto& x : a->xs) reports.push_back(report_json(algprob::estimate_M(m, parse_bits(x), a->L, a->S, opt)));
      }
      json doc = {{"provenance", ctx.provenance({{"machine", a->machine.describe()},
                                                 {"L", a->L},
                                                 {"S", a->S},
                                                 {"levin", a->levin}})}};
      doc["reports"] = reports;
      ctx.emit(doc);
    });
  }

  // normalize
  {
    auto* cmd = app.add_subcommand("normalize", "Solomonoff normalization of the lower estimates");
    auto* demo = cmd->add_subcommand("demo-paper", "worked normalization example");
    cmd->require_subcommand(0, 1);
    struct Args {
      MachineArgs machine;
      std::size_t depth = 4;
      std::size_t L = 8;
      std::uint64_t S = 100;
    };
    auto a = std::make_shared<Args>();
    a->machine.add_to(cmd);
    cmd->add_option("--depth", a->depth, "tree depth")->capture_default_str();
    cmd->add_option("--L", a->L, "maximum program length")->capture_default_str();
    cmd->add_option("--S", a->S, "step budget per program")->capture_default_str();
    demo->callback([&ctx] { ctx.emit(demo_normalize()); });
    cmd->callback([&ctx, a, demo] {
      if (demo->parsed()) return;
      if (a->depth > 16 || a->L > 24) throw InputError("--depth <= 16 and --L <= 24");
      auto nm = algprob::normalize(a->machine.load(), a->depth, a->L, a->S);
      json nodes = json::array();
      for_each_string(a->depth, [&](const BitString& x) {
        const auto& m = nm.M_lower.at(x);
        const auto& p = nm.P.at(x);
        nodes.push_back({{"x", x.str()},
                         {"M_lower", m ? json(to_string(*m)) : json(nullptr)},
                         {"P", p ? json(to_string(*p)) : json(nullptr)}});
      });
      json undefined = json::array();
      for (const auto& x : nm.undefined_below) undefined.push_back(x.str());
      json doc = {{"provenance", ctx.provenance({{"machine", a->machine.describe()},
                                                 {"depth", a->depth},
                                                 {"L", a->L},
                                                 {"S", a->S}})}};
      doc["nodes"] = nodes;
      doc["undefined_below"] = undefined;
      ctx.emit(doc);
    });
  }

  // transport
  {
    auto* cmd = app.add_subcommand("transport", "check M_V(x) = M_U(phi(x)) for V = transport(U, phi)");
    auto* demo = cmd->add_subcommand("demo-paper", "worked encoding invariance example");
    cmd->require_subcommand(0, 1);
    struct Args {
      MachineArgs machine;
      std::string map = "inversion";
      std::size_t depth = 4;
      std::size_t L = 8;
      std::uint64_t S = 100;
    };
    auto a = std::make_shared<Args>();
    a->machine.add_to(cmd);
    cmd->add_option("--map", a->map, "map JSON file or builtin: inversion, identity, last_bit, parity")
        ->capture_default_str();
    cmd->add_option("--depth", a->depth, "check every x with l(x) <= depth")->capture_default_str();
    cmd->add_option("--L", a->L, "maximum program length")->capture_default_str();
    cmd->add_option("--S", a->S, "step budget per program")->capture_default_str();
    demo->callback([&ctx] { ctx.emit(demo_transport()); });
    cmd->callback([&ctx, a, demo] {
      if (demo->parsed()) return;
      if (a->depth > 16 || a->L > 24) throw InputError("--depth <= 16 and --L <= 24");
      auto u = a->machine.load();
      auto phi = load_map(a->map);
      auto v = algprob::transport_machine(u, phi);
      auto mu = algprob::estimate_all(u, a->depth, a->L, a->S);
      auto mv = algprob::estimate_all(v, a->depth, a->L, a->S);
      json rows = json::array();
      bool all_equal = true;
      for_each_string(a->depth, [&](const BitString& x) {
        BitString y = phi.apply(x);
        const auto& rv = mv[tree_index(x)];
        const auto& ru = mu[tree_index(y)];
        bool eq = rv.M_lower == ru.M_lower && rv.Km_upper == ru.Km_upper;
        all_equal = all_equal && eq;
        rows.push_back({{"x", x.str()},
                        {"phi_x", y.str()},
                        {"M_V", to_string(rv.M_lower)},
                        {"M_U_phi", to_string(ru.M_lower)},
                        {"equal", eq}});
      });
      json doc = {{"provenance", ctx.provenance({{"machine", a->machine.describe()},
                                                 {"map", phi.name()},
                                                 {"depth", a->depth},
                                                 {"L", a->L},
                                                 {"S", a->S}})}};
      doc["invariant"] = all_equal;
      doc["rows"] = rows;
      ctx.emit(doc);
    });
  }
}

}  // namespace aitlab::cli
