#include "aitlab/mixture/member.hpp"

#include <set>

#include "aitlab/core/error.hpp"
#include "aitlab/mtm/execution.hpp"
#include "aitlab/mtm/library.hpp"
#include "aitlab/mtm/machine_json.hpp"

namespace aitlab::mixture {

using nlohmann::json;

namespace {

void check_probability(const Rational& p, const std::string& what) {
  if (p < 0 || p > 1) throw InputError(what + " must lie in [0, 1], got " + to_string(p));
}

class Bernoulli : public Rule {
 public:
  explicit Bernoulli(Rational q) : q_(std::move(q)) { check_probability(q_, "Bernoulli parameter"); }
  std::array<Rational, 2> next(const BitString&) const override { return {1 - q_, q_}; }
  std::string describe() const override { return "bernoulli(" + to_string(q_) + ")"; }
  json to_json() const override { return {{"kind", "bernoulli"}, {"q", to_string(q_)}}; }

 private:
  Rational q_;
};

class Deterministic : public Rule {
 public:
  Deterministic(BitString prefix, BitString cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {}

  std::array<Rational, 2> next(const BitString& x) const override {
    const std::size_t i = x.size();
    std::optional<int> bit;
    if (i < prefix_.size()) {
      bit = prefix_[i];
    } else if (!cycle_.empty()) {
      bit = cycle_[(i - prefix_.size()) % cycle_.size()];
    }
    if (!bit) return {0, 0};
    std::array<Rational, 2> out{0, 0};
    out[*bit] = 1;
    return out;
  }
  std::string describe() const override {
    return "deterministic(" + prefix_.str() + "(" + cycle_.str() + ")*)";
  }
  json to_json() const override { return {{"kind", "deterministic"}, {"prefix", prefix_.str()}, {"cycle", cycle_.str()}}; }

 private:
  BitString prefix_;
  BitString cycle_;
};

class Markov : public Rule {
 public:
  Markov(int order, std::vector<Rational> p1) : order_(order), p1_(std::move(p1)) {
    if (order < 0 || order > 16) throw InputError("Markov order must be in [0, 16]");
    if (p1_.size() != (std::size_t{1} << order)) {
      throw InputError("Markov chain of order " + std::to_string(order) + " needs " +
                       std::to_string(std::size_t{1} << order) + " rows");
    }
    for (const auto& p : p1_) check_probability(p, "Markov row");
  }

  std::array<Rational, 2> next(const BitString& x) const override {
    std::size_t ctx = 0;
    for (int i = order_; i >= 1; --i) {
      ctx <<= 1;
      if (x.size() >= static_cast<std::size_t>(i)) ctx |= static_cast<std::size_t>(x[x.size() - i]);
    }
    return {1 - p1_[ctx], p1_[ctx]};
  }
  std::string describe() const override { return "markov(order " + std::to_string(order_) + ")"; }
  json to_json() const override {
    json rows = json::array();
    for (const auto& p : p1_) rows.push_back(to_string(p));
    return {{"kind", "markov"}, {"order", order_}, {"p1", rows}};
  }

 private:
  int order_;
  std::vector<Rational> p1_;
};

class MachineSequence : public Rule {
 public:
  MachineSequence(mtm::MachineSpec machine, std::uint64_t step_bound)
      : machine_(std::move(machine)), step_bound_(step_bound) {}

  std::array<Rational, 2> next(const BitString& x) const override {
    const BitString& seq = produce(x.size() + 1);
    std::array<Rational, 2> out{0, 0};
    if (!x.is_prefix_of(seq) || seq.size() <= x.size()) return out;
    out[seq[x.size()]] = 1;
    return out;
  }
  std::string describe() const override { return "machine-sequence"; }
  json to_json() const override {
    return {{"kind", "machine"}, {"machine", mtm::machine_to_json(machine_)}, {"step_bound", step_bound_}};
  }

 private:
  // Output of the first run long enough, or the whole output of a finished run.
  const BitString& produce(std::size_t length) const {
    if (cache_.size() >= length || finished_) return cache_;
    mtm::Execution e(machine_);
    while (e.output().size() < length) {
      mtm::Execution::Pause p;
      if (e.steps() >= step_bound_) {
        throw EvaluationError("machine sequence needs more than " + std::to_string(step_bound_) + " steps for " +
                              std::to_string(length) + " bits");
      }
      if (!e.step(p)) {
        finished_ = true;
        break;
      }
      if (e.halted()) {
        finished_ = true;
        break;
      }
    }
    cache_ = e.output();
    return cache_;
  }

  mtm::MachineSpec machine_;
  std::uint64_t step_bound_;
  mutable BitString cache_;
  mutable bool finished_ = false;
};

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError(where + ": expected a \"num/den\" string");
}

void only_fields(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
}

}  // namespace

std::shared_ptr<const Rule> bernoulli(Rational q) { return std::make_shared<Bernoulli>(std::move(q)); }
std::shared_ptr<const Rule> deterministic(BitString prefix, BitString cycle) {
  return std::make_shared<Deterministic>(std::move(prefix), std::move(cycle));
}
std::shared_ptr<const Rule> markov(int order, std::vector<Rational> p1) {
  return std::make_shared<Markov>(order, std::move(p1));
}
std::shared_ptr<const Rule> machine_sequence(mtm::MachineSpec machine, std::uint64_t step_bound) {
  return std::make_shared<MachineSequence>(std::move(machine), step_bound);
}

Rational Termination::at(const BitString& x) const {
  auto it = nodes.find(x);
  return it == nodes.end() ? fallback : it->second;
}

std::array<Rational, 2> Member::next(const BitString& x) const {
  std::array<Rational, 2> p = rule->next(x);
  if (!termination.trivial()) {
    Rational keep = 1 - termination.at(x);
    p[0] *= keep;
    p[1] *= keep;
  }
  return p;
}

Rational Member::stop(const BitString& x) const {
  auto p = next(x);
  return 1 - p[0] - p[1];
}

Rational Member::probability(const BitString& x) const {
  Rational m = 1;
  BitString prefix;
  for (std::size_t i = 0; i < x.size() && m != 0; ++i) {
    m *= next(prefix)[x[i]];
    prefix.push_back(x[i]);
  }
  return m;
}

std::vector<Member> members_from_json(const json& doc) {
  if (!doc.is_array()) throw InputError("family: expected a JSON list of members");
  std::vector<Member> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& d = doc[i];
    const std::string where = "member " + std::to_string(i);
    if (!d.is_object() || !d.contains("kind") || !d.contains("c")) throw InputError(where + ": needs 'kind' and 'c'");
    Member m;
    m.id = d.contains("id") ? d["id"].get<int>() : static_cast<int>(i);
    if (!d["c"].is_number_unsigned()) throw InputError(where + ": 'c' must be a non-negative integer");
    m.c = d["c"].get<unsigned>();
    const std::string kind = d["kind"].get<std::string>();
    std::set<std::string> common = {"kind", "c", "id", "name", "termination"};
    auto allow = [&](std::initializer_list<const char*> extra) {
      std::set<std::string> s = common;
      for (auto e : extra) s.insert(e);
      only_fields(d, s, where);
    };
    if (kind == "bernoulli") {
      allow({"q"});
      m.rule = bernoulli(rational_field(d.at("q"), where + ".q"));
    } else if (kind == "deterministic") {
      allow({"prefix", "cycle"});
      m.rule = deterministic(BitString(d.value("prefix", std::string())), BitString(d.value("cycle", std::string())));
    } else if (kind == "markov") {
      allow({"order", "p1"});
      std::vector<Rational> rows;
      for (const auto& r : d.at("p1")) rows.push_back(rational_field(r, where + ".p1"));
      m.rule = markov(d.at("order").get<int>(), std::move(rows));
    } else if (kind == "machine") {
      allow({"machine", "builtin", "step_bound"});
      std::uint64_t bound = d.value("step_bound", std::uint64_t{10000});
      if (d.contains("builtin")) {
        auto spec = mtm::builtin_machine(d["builtin"].get<std::string>());
        if (!spec) throw InputError(where + ": unknown builtin machine");
        m.rule = machine_sequence(*spec, bound);
      } else {
        m.rule = machine_sequence(mtm::machine_from_json(d.at("machine")), bound);
      }
    } else {
      throw InputError(where + ": unknown kind '" + kind + "'");
    }
    m.name = d.value("name", m.rule->describe());
    if (d.contains("termination")) {
      const json& t = d["termination"];
      only_fields(t, {"default", "nodes"}, where + ".termination");
      if (t.contains("default")) m.termination.fallback = rational_field(t["default"], where + ".termination");
      check_probability(m.termination.fallback, where + ".termination.default");
      if (t.contains("nodes")) {
        for (auto it = t["nodes"].begin(); it != t["nodes"].end(); ++it) {
          Rational v = rational_field(it.value(), where + ".termination");
          check_probability(v, where + ".termination");
          m.termination.nodes[BitString(it.key())] = v;
        }
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

json member_to_json(const Member& m) {
  json j = m.rule->to_json();
  j["id"] = m.id;
  j["name"] = m.name;
  j["c"] = m.c;
  if (!m.termination.trivial()) {
    json nodes = json::object();
    for (const auto& [k, v] : m.termination.nodes) nodes[k.str()] = to_string(v);
    j["termination"] = {{"default", to_string(m.termination.fallback)}, {"nodes", nodes}};
  }
  return j;
}

}  // namespace aitlab::mixture
