#include <iostream>

#include "cli.hpp"

#include "aitlab/core/error.hpp"

int main(int argc, char** argv) {
  using namespace aitlab;
  cli::Context ctx;
  for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(i == 0 ? "aitlab" : argv[i]);

  CLI::App app{"aitlab: monotone machines, algorithmic probability, induction, mixtures and Bell tables"};
  app.set_version_flag("--version", cli::kVersion);
  app.add_option("--out", ctx.out, "write the report here instead of stdout");
  app.require_subcommand(1);
  cli::add_mtm_commands(app, ctx);
  cli::add_induction_commands(app, ctx);
  cli::add_bell_commands(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
