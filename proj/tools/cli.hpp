#pragma once

#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::cli {

inline constexpr const char* kVersion = "0.1.0";

struct Context {
  std::vector<std::string> argv;
  std::string out;  // empty: stdout

  /// Writes to --out or stdout; a trailing newline is added if missing.
  void emit(const std::string& text) const;
  void emit(const nlohmann::json& doc) const { emit(doc.dump(2)); }
  /// The command line plus the given settings, embedded in every report.
  nlohmann::json provenance(nlohmann::json settings) const;
};

/// Where a machine comes from: a JSON file or a builtin name.
struct MachineArgs {
  std::string file;
  std::string builtin;

  void add_to(CLI::App* app);
  mtm::MachineSpec load() const;
  std::string describe() const;
};

nlohmann::json read_json(const std::string& path);
/// "", "e" and "ε" are the empty string.
BitString parse_bits(const std::string& text);
std::string show(const BitString& x);

void add_mtm_commands(CLI::App& app, Context& ctx);
void add_induction_commands(CLI::App& app, Context& ctx);
void add_bell_commands(CLI::App& app, Context& ctx);

}  // namespace aitlab::cli
