#include "cli.hpp"

#include <fstream>
#include <iostream>

#include "aitlab/core/error.hpp"
#include "aitlab/mtm/library.hpp"
#include "aitlab/mtm/machine_json.hpp"
#include "aitlab/mtm/universal.hpp"

namespace aitlab::cli {

void Context::emit(const std::string& text) const {
  const bool newline = text.empty() || text.back() != '\n';
  if (out.empty()) {
    std::cout << text << (newline ? "\n" : "");
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write " + out);
  f << text << (newline ? "\n" : "");
}

nlohmann::json Context::provenance(nlohmann::json settings) const {
  std::string cmd;
  for (std::size_t i = 0; i < argv.size(); ++i) cmd += (i ? " " : "") + argv[i];
  return {{"tool", "aitlab"}, {"version", kVersion}, {"command", cmd}, {"settings", std::move(settings)}};
}

void MachineArgs::add_to(CLI::App* app) {
  app->add_option("--machine", file, "machine JSON file");
  app->add_option("--builtin", builtin,
                  "builtin machine: copy, constant-0, constant-1, invert, doubler, copy-three, parity, reverse, "
                  "unary-counter, skip-other, delay, universal");
}

mtm::MachineSpec MachineArgs::load() const {
  if (!file.empty() && !builtin.empty()) throw InputError("give either --machine or --builtin, not both");
  if (!file.empty()) return mtm::load_machine(file);
  if (builtin == "universal") return mtm::reference_universal();
  if (builtin.empty()) throw InputError("a machine is required (--machine FILE or --builtin NAME)");
  auto m = mtm::builtin_machine(builtin);
  if (!m) throw InputError("unknown builtin machine '" + builtin + "'");
  return *m;
}

std::string MachineArgs::describe() const { return file.empty() ? "builtin:" + builtin : file; }

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

BitString parse_bits(const std::string& text) {
  if (text.empty() || text == "e" || text == "ε") return BitString();
  return BitString(text);
}

std::string show(const BitString& x) { return x.empty() ? "ε" : x.str(); }

}  // namespace aitlab::cli
