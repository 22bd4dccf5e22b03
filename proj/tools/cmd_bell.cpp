#include <iomanip>
#include <memory>
#include <sstream>

#include "cli.hpp"

#include "aitlab/bell/correlation.hpp"
#include "aitlab/core/error.hpp"

namespace aitlab::cli {
namespace {

using nlohmann::json;
namespace b = aitlab::bell;

struct Source {
  std::string hvm;
  std::string table;
  std::string builtin;
  std::string format = "text";

  void add_to(CLI::App* app, bool table_allowed = true) {
    app->add_option("--hvm", hvm, "hidden variable model JSON");
    if (table_allowed) app->add_option("--table", table, "correlation table JSON");
    app->add_option("--builtin", builtin, "loop-model, pr-box or counterexample")
        ->check(CLI::IsMember({"loop-model", "pr-box", "counterexample"}));
    app->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  }
  int given() const { return !hvm.empty() + !table.empty() + !builtin.empty(); }
  b::HiddenVariableModel model() const {
    if (!hvm.empty()) return b::hvm_from_json(read_json(hvm));
    if (builtin == "loop-model") return b::loop_model();
    if (builtin == "counterexample") return b::lemma_counterexample();
    throw InputError("this command needs a hidden variable model (--hvm or --builtin loop-model|counterexample)");
  }
  b::Exact correlation() const {
    if (given() != 1) throw InputError("give exactly one of --hvm, --table, --builtin");
    if (!table.empty()) {
      auto P = b::correlation_from_json(read_json(table));
      b::validate(P);
      return P;
    }
    if (builtin == "pr-box") return b::pr_box();
    return b::behavior_from_hvm(model());
  }
  std::string describe() const {
    if (!hvm.empty()) return hvm;
    if (!table.empty()) return table;
    return "builtin:" + builtin;
  }
};

json signalling_json(const b::SignallingReport& r) {
  return {{"a_to_b", to_string(r.a_to_b)}, {"b_to_a", to_string(r.b_to_a)}, {"nonsignalling", r.nonsignalling}};
}

json chsh_json(const b::ChshReport& r) {
  json E = json::object();
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) E[std::to_string(a) + std::to_string(c)] = to_string(r.E[b::column(a, c)]);
  return {{"E", E}, {"value", to_string(r.value)}, {"regime", r.regime}};
}

json classical_json(const b::ClassicalityReport& r) {
  json out = {{"feasible", r.feasible}, {"vertices", r.vertices}};
  if (r.feasible) {
    json d = json::array();
    for (const auto& [resp, w] : r.decomposition) d.push_back({{"lambda", resp.str()}, {"weight", to_string(w)}});
    out["decomposition"] = d;
  } else {
    out["certificate"] = b::to_json(r.certificate);
    out["bound"] = to_string(r.bound);
    out["violation"] = to_string(r.violation);
  }
  return out;
}

json lemma_json(const b::LemmaReport& r) {
  return {{"b_to_a_ok", r.b_to_a_ok},
          {"cond_indep", r.cond_indep},
          {"a_to_b_ok", r.a_to_b_ok},
          {"postselected", signalling_json(r.postselected)},
          {"float_cross_check", r.float_cross_check}};
}

std::string chsh_text(const b::ChshReport& r) {
  std::ostringstream s;
  s << "E(0,0)=" << to_string(r.E[0]) << " E(0,1)=" << to_string(r.E[1]) << " E(1,0)=" << to_string(r.E[2])
    << " E(1,1)=" << to_string(r.E[3]) << "\n";
  s << "CHSH = " << to_string(r.value) << " (" << r.regime << "; classical bound " << b::ChshReport::classical_bound
    << ", Tsirelson 2*sqrt(2))\n";
  return s.str();
}

std::string classical_text(const b::ClassicalityReport& r) {
  std::ostringstream s;
  s << "classical: " << (r.feasible ? "yes" : "no") << " (" << r.vertices << " deterministic behaviors)\n";
  if (r.feasible) {
    for (const auto& [resp, w] : r.decomposition) s << "  " << to_string(w) << " x " << resp.str() << "\n";
  } else {
    s << "certificate: <Y, L> <= " << to_string(r.bound) << " for every local L, <Y, P> exceeds it by "
      << to_string(r.violation) << "\n";
    s << b::format_table(r.certificate, r.vertices == 36);
  }
  return s.str();
}

std::string signalling_text(const b::SignallingReport& r) {
  return "signalling: A->B " + to_string(r.a_to_b) + ", B->A " + to_string(r.b_to_a) +
         (r.nonsignalling ? ", non-signalling\n" : ", signalling\n");
}

std::string lemma_text(const b::LemmaReport& r) {
  std::ostringstream s;
  s << "P0 non-signalling from Bob to Alice: " << (r.b_to_a_ok ? "yes" : "no") << "\n";
  s << "null outcome independent of w given (a,b): " << (r.cond_indep ? "yes" : "no") << "\n";
  s << "postselected P non-signalling from Alice to Bob: " << (r.a_to_b_ok ? "yes" : "no") << "\n";
  s << "postselected " << signalling_text(r.postselected);
  return s.str();
}

std::string demo_bell() {
  std::ostringstream s;
  auto hvm = b::loop_model();
  s << "# hidden variable model, lambda uniform\n";
  for (const auto& v : hvm.values) s << "  " << to_string(v.q) << " x " << v.response.str() << "\n";
  auto P0 = b::behavior_from_hvm(hvm);
  s << "\n# P0(v,w|a,b)\n" << b::format_table(P0, true);
  s << "P0(∅|a): a=0 " << to_string(P0.null_mass(0, 0)) << ", a=1 " << to_string(P0.null_mass(1, 0)) << "\n";
  s << "P0 " << signalling_text(b::signalling_report(P0));
  auto c0 = b::is_classical(P0);
  s << "P0 " << classical_text(c0);

  auto P = b::postselect(P0);
  s << "\n# postselected P(v,w|a,b) = P0(v,w|a,b)/(1 - P0(∅|a))\n" << b::format_table(P, false);
  s << "equals the PR box: " << (P == b::pr_box() ? "yes" : "no") << "\n";
  s << chsh_text(b::chsh(P));
  s << signalling_text(b::signalling_report(P));
  s << classical_text(b::is_classical(P));

  s << "\n# postselection lemma on P0\n" << lemma_text(b::check_lemma_a1(P0));
  auto ce = b::lemma_counterexample();
  s << "\n# correlated non-detection:";
  for (const auto& v : ce.values) s << " " << to_string(v.q) << " x " << v.response.str();
  s << "\n" << lemma_text(b::check_lemma_a1(b::behavior_from_hvm(ce)));
  return s.str();
}

}  // namespace

void add_bell_commands(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("bell", "exact Bell tables: table, postselect, chsh, classical, lemma-a1, simulate");
  cmd->require_subcommand(1);

  auto emit = [&ctx](const Source& src, json extra, const json& body, const std::string& text) {
    if (src.format == "text") {
      ctx.emit(text);
      return;
    }
    json settings = {{"source", src.describe()}};
    settings.update(extra);
    json doc = {{"provenance", ctx.provenance(settings)}};
    doc.update(body);
    ctx.emit(doc);
  };

  {
    auto* sub = cmd->add_subcommand("table", "the correlation table of a model or file");
    auto src = std::make_shared<Source>();
    src->add_to(sub);
    sub->callback([src, emit] {
      auto P = src->correlation();
      emit(*src, json::object(), {{"correlation", b::to_json(P)}}, b::format_table(P, true));
    });
  }
  {
    auto* sub = cmd->add_subcommand("postselect", "condition on Alice's outcome being detected");
    auto src = std::make_shared<Source>();
    src->add_to(sub);
    sub->callback([src, emit] {
      auto P = b::postselect(src->correlation());
      emit(*src, json::object(), {{"correlation", b::to_json(P)}}, b::format_table(P, false));
    });
  }
  {
    auto* sub = cmd->add_subcommand("chsh", "CHSH value of a null-free table");
    auto src = std::make_shared<Source>();
    auto post = std::make_shared<bool>(false);
    src->add_to(sub);
    sub->add_flag("--postselect", *post, "postselect first");
    sub->callback([src, post, emit] {
      auto P = src->correlation();
      if (*post) P = b::postselect(P);
      auto r = b::chsh(P);
      emit(*src, {{"postselect", *post}}, {{"chsh", chsh_json(r)}}, chsh_text(r));
    });
  }
  {
    auto* sub = cmd->add_subcommand("classical", "exact local hidden variable decomposition or a certificate");
    auto src = std::make_shared<Source>();
    auto post = std::make_shared<bool>(false);
    src->add_to(sub);
    sub->add_flag("--postselect", *post, "postselect first");
    sub->callback([src, post, emit] {
      auto P = src->correlation();
      if (*post) P = b::postselect(P);
      auto r = b::is_classical(P);
      auto sig = b::signalling_report(P);
      emit(*src, {{"postselect", *post}}, {{"classical", classical_json(r)}, {"signalling", signalling_json(sig)}},
           classical_text(r) + signalling_text(sig));
    });
  }
  {
    auto* sub = cmd->add_subcommand("lemma-a1", "no-signalling of the postselected table");
    auto src = std::make_shared<Source>();
    src->add_to(sub);
    sub->callback([src, emit] {
      auto r = b::check_lemma_a1(src->correlation());
      emit(*src, json::object(), {{"lemma", lemma_json(r)}}, lemma_text(r));
    });
  }
  {
    auto* sub = cmd->add_subcommand("simulate", "Monte Carlo of the observer loop protocol");
    auto src = std::make_shared<Source>();
    struct Run {
      std::uint64_t seed = 0;
      std::uint64_t rounds = 100000;
    };
    auto run = std::make_shared<Run>();
    src->add_to(sub, false);
    sub->add_option("--seed", run->seed, "random seed")->required();
    sub->add_option("--rounds", run->rounds, "rounds")->capture_default_str();
    sub->callback([src, run, emit] {
      if (src->given() != 1) throw InputError("give exactly one of --hvm, --builtin");
      auto r = b::run_loop_simulation(src->model(), run->seed, run->rounds);
      json tallies = json::object();
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) tallies[std::to_string(a) + std::to_string(c)] = r.tallies[b::column(a, c)];
      json emp = json::array();
      for (int row = 0; row < b::kRows; ++row) {
        json line = json::array();
        for (int c = 0; c < b::kColumns; ++c) line.push_back(r.empirical.p(row, c));
        emp.push_back(line);
      }
      std::ostringstream t;
      t << "rounds " << r.rounds << ", seed " << r.seed << ", loop resamples " << r.loops << "\n";
      t << "target\n" << b::format_table(r.target, r.target.has_null());
      t << std::setprecision(4) << "empirical\n";
      for (int row = 0; row < b::kRows; ++row) {
        for (int c = 0; c < b::kColumns; ++c) t << (c ? " " : "  ") << std::fixed << r.empirical.p(row, c);
        t << "\n";
      }
      t << "max per-setting total variation distance " << r.distance << "\n";
      emit(*src, {{"seed", run->seed}, {"rounds", run->rounds}},
           {{"loops", r.loops},
            {"tallies_per_setting", tallies},
            {"target", b::to_json(r.target)},
            {"monte_carlo", {{"empirical", emp}, {"tv_distance", r.distance}}}},
           t.str());
    });
  }
  {
    auto* sub = cmd->add_subcommand("demo-paper", "the worked hidden variable example, exactly");
    sub->callback([&ctx] { ctx.emit(demo_bell()); });
  }
}

}  // namespace aitlab::cli
