#include "aitlab/algprob/encoding_map.hpp"

#include "aitlab/core/error.hpp"
#include "aitlab/mtm/execution.hpp"
#include "aitlab/mtm/machine_json.hpp"

namespace aitlab::algprob {

void FlipAutomaton::validate() const {
  if (next.empty() || next.size() != output.size()) throw InputError("flip automaton: need one output per state");
  if (start >= next.size()) throw InputError("flip automaton: start state out of range");
  for (const auto& row : next) {
    if (row[0] >= next.size() || row[1] >= next.size()) throw InputError("flip automaton: transition out of range");
  }
  for (auto o : output) {
    if (o > 1) throw InputError("flip automaton: outputs must be bits");
  }
}

EncodingMap EncodingMap::constant(int bit) {
  FlipAutomaton a{0, {{0, 0}}, {static_cast<std::uint8_t>(bit & 1)}};
  return automaton(a, bit ? "inversion" : "identity");
}

EncodingMap EncodingMap::last_bit() {
  // state = last bit read; ε behaves as 0
  return automaton(FlipAutomaton{0, {{0, 1}, {0, 1}}, {0, 1}}, "last_bit");
}

EncodingMap EncodingMap::parity() {
  return automaton(FlipAutomaton{0, {{0, 1}, {1, 0}}, {0, 1}}, "parity");
}

EncodingMap EncodingMap::automaton(FlipAutomaton dfa, std::string name) {
  dfa.validate();
  EncodingMap m;
  m.name_ = std::move(name);
  m.dfa_ = std::move(dfa);
  return m;
}

EncodingMap EncodingMap::machine(mtm::MachineSpec machine, std::uint64_t step_bound) {
  EncodingMap m;
  m.name_ = "machine";
  m.machine_ = std::move(machine);
  m.step_bound_ = step_bound;
  return m;
}

EncodingMap EncodingMap::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.size() == 0) throw InputError("encoding map: expected an object");
  if (doc.contains("builtin")) {
    if (doc.size() != 1 || !doc["builtin"].is_string()) throw InputError("encoding map: malformed builtin");
    const std::string b = doc["builtin"].get<std::string>();
    if (b == "inversion") return constant(1);
    if (b == "identity") return constant(0);
    if (b == "last_bit") return last_bit();
    if (b == "parity") return parity();
    throw InputError("encoding map: unknown builtin '" + b + "'");
  }
  if (doc.contains("automaton")) {
    if (doc.size() != 1) throw InputError("encoding map: unexpected fields next to 'automaton'");
    const auto& a = doc["automaton"];
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (it.key() != "start" && it.key() != "next" && it.key() != "output") {
        throw InputError("encoding map: unknown field '" + it.key() + "'");
      }
    }
    try {
      FlipAutomaton dfa;
      dfa.start = a.at("start").get<std::uint32_t>();
      for (const auto& row : a.at("next")) dfa.next.push_back({row.at(0).get<std::uint32_t>(), row.at(1).get<std::uint32_t>()});
      for (const auto& o : a.at("output")) dfa.output.push_back(o.get<std::uint8_t>());
      return automaton(std::move(dfa));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("encoding map: ") + e.what());
    }
  }
  if (doc.contains("machine")) {
    if (!doc.contains("step_bound") || !doc["step_bound"].is_number_unsigned() || doc.size() != 2) {
      throw InputError("encoding map: machine rules need exactly 'machine' and 'step_bound'");
    }
    return machine(mtm::machine_from_json(doc["machine"]), doc["step_bound"].get<std::uint64_t>());
  }
  throw InputError("encoding map: expected 'builtin', 'automaton' or 'machine'");
}

int EncodingMap::flip(const BitString& x) const {
  if (dfa_) {
    std::uint32_t s = dfa_->start;
    for (auto b : x.bits()) s = dfa_->next[s][b];
    return dfa_->output[s];
  }
  mtm::RunOutcome out = mtm::run(*machine_, x, step_bound_);
  if (out.status == mtm::RunStatus::budget_exhausted) {
    throw EvaluationError("flip rule did not finish within " + std::to_string(step_bound_) + " steps on " +
                          (x.empty() ? std::string("ε") : x.str()));
  }
  return out.output.empty() ? 0 : out.output.back();
}

BitString EncodingMap::apply(const BitString& x) const {
  BitString y;
  BitString prefix;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y.push_back(x[i] ^ flip(prefix));
    prefix.push_back(x[i]);
  }
  return y;
}

BitString EncodingMap::inverse(const BitString& y) const {
  BitString x;
  for (std::size_t i = 0; i < y.size(); ++i) x.push_back(y[i] ^ flip(x));
  return x;
}

mtm::MachineSpec transport_machine(const mtm::MachineSpec& machine, const EncodingMap& phi) {
  if (!phi.dfa()) throw InputError("transport needs a finite-automaton flip rule");
  const FlipAutomaton& dfa = *phi.dfa();
  const auto q = static_cast<mtm::StateId>(dfa.next.size());
  const mtm::StateId n = machine.state_count();
  const std::uint32_t patterns = machine.patterns();
  // state (s, d) -> s * q + d; d tracks the automaton on V's own output
  std::vector<mtm::Entry> table(static_cast<std::size_t>(n) * q * patterns);
  for (mtm::StateId s = 0; s < n; ++s) {
    for (mtm::StateId d = 0; d < q; ++d) {
      for (std::uint32_t r = 0; r < patterns; ++r) {
        const mtm::Entry& src = machine.entry(s, r);
        mtm::Entry& dst = table[(static_cast<std::size_t>(s) * q + d) * patterns + r];
        dst.reads_input = src.reads_input;
        for (int b = 0; b < (src.reads_input ? 2 : 1); ++b) {
          mtm::Action a = src.on[b];
          mtm::StateId d2 = d;
          if (a.emit >= 0) {
            int v = a.emit ^ dfa.output[d];
            a.emit = static_cast<std::int8_t>(v);
            d2 = dfa.next[d][v];
          }
          a.next = src.on[b].next * q + d2;
          dst.on[b] = a;
        }
      }
    }
  }
  return mtm::MachineSpec(machine.work_tapes(), n * q, machine.start() * q + dfa.start, std::move(table));
}

}  // namespace aitlab::algprob
