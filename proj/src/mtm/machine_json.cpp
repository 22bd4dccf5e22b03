#include "aitlab/mtm/machine_json.hpp"

#include <fstream>
#include <set>
#include <unordered_map>

#include "aitlab/core/error.hpp"

namespace aitlab::mtm {

using nlohmann::json;

namespace {

void only_fields(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
  for (const auto& f : allowed) {
    if (!obj.contains(f) && f != "input") throw InputError(where + ": missing field '" + f + "'");
  }
}

std::uint32_t bits_field(const json& v, int k, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a bit string");
  const std::string s = v.get<std::string>();
  if (static_cast<int>(s.size()) != k) throw InputError(where + ": expected " + std::to_string(k) + " bits");
  std::uint32_t out = 0;
  for (int t = 0; t < k; ++t) {
    if (s[t] != '0' && s[t] != '1') throw InputError(where + ": bits must be '0' or '1'");
    out |= static_cast<std::uint32_t>(s[t] - '0') << t;
  }
  return out;
}

std::string bits_text(std::uint32_t v, int k) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int t = 0; t < k; ++t) s[t] = static_cast<char>('0' + ((v >> t) & 1));
  return s;
}

}  // namespace

MachineSpec machine_from_json(const json& doc) {
  only_fields(doc, {"states", "start", "work_tapes", "transitions"}, "machine");
  if (!doc["states"].is_array() || doc["states"].empty()) throw InputError("machine: 'states' must be a non-empty array");
  std::unordered_map<std::string, StateId> ids;
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) throw InputError("machine: state names must be strings");
    if (!ids.emplace(s.get<std::string>(), static_cast<StateId>(ids.size())).second) {
      throw InputError("machine: duplicate state '" + s.get<std::string>() + "'");
    }
  }
  auto state_of = [&](const json& v, const std::string& where) {
    if (!v.is_string() || !ids.count(v.get<std::string>())) throw InputError(where + ": unknown state");
    return ids.at(v.get<std::string>());
  };
  if (!doc["work_tapes"].is_number_integer()) throw InputError("machine: 'work_tapes' must be an integer");
  const int k = doc["work_tapes"].get<int>();
  if (k < 1 || k > kMaxWorkTapes) throw InputError("machine: 'work_tapes' out of range");
  const StateId start = state_of(doc["start"], "machine.start");
  const StateId n = static_cast<StateId>(ids.size());
  const std::uint32_t patterns = 1u << k;

  std::vector<Entry> table(static_cast<std::size_t>(n) * patterns);
  // bit 0: non-consuming record, bit 1/2: consuming record for input 0/1
  std::vector<int> seen(table.size(), 0);
  if (!doc["transitions"].is_array()) throw InputError("machine: 'transitions' must be an array");
  std::size_t index = 0;
  for (const auto& t : doc["transitions"]) {
    const std::string where = "transition " + std::to_string(index++);
    only_fields(t, {"from", "to", "read", "write", "move", "emit", "consume", "input", "halt"}, where);
    StateId from = state_of(t["from"], where + ".from");
    Action a;
    a.next = state_of(t["to"], where + ".to");
    std::uint32_t read = bits_field(t["read"], k, where + ".read");
    a.write = static_cast<std::uint8_t>(bits_field(t["write"], k, where + ".write"));
    if (!t["move"].is_string() || static_cast<int>(t["move"].get<std::string>().size()) != k) {
      throw InputError(where + ".move: expected one of L/R/S per tape");
    }
    const std::string mv = t["move"].get<std::string>();
    for (int i = 0; i < k; ++i) {
      switch (mv[i]) {
        case 'L': a.set_move(i, Move::left); break;
        case 'R': a.set_move(i, Move::right); break;
        case 'S': a.set_move(i, Move::stay); break;
        default: throw InputError(where + ".move: expected one of L/R/S per tape");
      }
    }
    if (t["emit"].is_null()) {
      a.emit = -1;
    } else if (t["emit"] == "0" || t["emit"] == "1") {
      a.emit = static_cast<std::int8_t>(t["emit"].get<std::string>()[0] - '0');
    } else {
      throw InputError(where + ".emit: expected null, \"0\" or \"1\"");
    }
    if (!t["consume"].is_boolean() || !t["halt"].is_boolean()) throw InputError(where + ": consume/halt must be booleans");
    a.halt = t["halt"].get<bool>();
    const bool consume = t["consume"].get<bool>();

    const std::size_t slot = static_cast<std::size_t>(from) * patterns + read;
    Entry& e = table[slot];
    if (consume) {
      if (!t.contains("input") || !(t["input"] == "0" || t["input"] == "1")) {
        throw InputError(where + ": consuming transitions need \"input\": \"0\" or \"1\"");
      }
      int bit = t["input"].get<std::string>()[0] - '0';
      int flag = bit ? 4 : 2;
      if (seen[slot] & (flag | 1)) throw InputError(where + ": duplicate transition");
      seen[slot] |= flag;
      e.reads_input = true;
      e.on[bit] = a;
    } else {
      if (t.contains("input")) throw InputError(where + ": 'input' given on a non-consuming transition");
      if (seen[slot]) throw InputError(where + ": duplicate transition");
      seen[slot] = 1;
      e.on[0] = a;
    }
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (seen[i] != 1 && seen[i] != 6) {
      throw SpecificationError("machine: state '" + doc["states"][i / patterns].get<std::string>() + "' reading " +
                               bits_text(static_cast<std::uint32_t>(i % patterns), k) +
                               (seen[i] ? " lacks one input branch" : " has no transition"));
    }
  }
  return MachineSpec(k, n, start, std::move(table));
}

json machine_to_json(const MachineSpec& machine) {
  const int k = machine.work_tapes();
  json states = json::array();
  for (StateId s = 0; s < machine.state_count(); ++s) states.push_back("q" + std::to_string(s));
  json transitions = json::array();
  auto record = [&](StateId s, std::uint32_t r, const Action& a, bool consume, int input) {
    std::string mv;
    for (int t = 0; t < k; ++t) mv += "SLR"[static_cast<int>(a.move(t))];
    json rec = {{"from", states[s]}, {"read", bits_text(r, k)}, {"to", states[a.next]},
                {"write", bits_text(a.write, k)}, {"move", mv},
                {"emit", a.emit < 0 ? json(nullptr) : json(std::string(1, static_cast<char>('0' + a.emit)))},
                {"consume", consume}, {"halt", a.halt}};
    if (consume) rec["input"] = std::string(1, static_cast<char>('0' + input));
    transitions.push_back(rec);
  };
  for (StateId s = 0; s < machine.state_count(); ++s) {
    for (std::uint32_t r = 0; r < machine.patterns(); ++r) {
      const Entry& e = machine.entry(s, r);
      if (e.reads_input) {
        record(s, r, e.on[0], true, 0);
        record(s, r, e.on[1], true, 1);
      } else {
        record(s, r, e.on[0], false, 0);
      }
    }
  }
  return {{"states", states}, {"start", states[machine.start()]}, {"work_tapes", k}, {"transitions", transitions}};
}

MachineSpec load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open machine file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("machine file '" + path + "': " + e.what());
  }
  return machine_from_json(doc);
}

}  // namespace aitlab::mtm
