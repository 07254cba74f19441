#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

void add_common(CLI::App* cmd, eqindex::cli::Overrides& o, std::string& window) {
  cmd->add_option("--config", o.config, "INI config file");
  cmd->add_option("--model", o.model, "model kind (overrides [model] kind)");
  cmd->add_option("--tol", o.tol, "relative rank tolerance (overrides [policy] relative_factor)");
  cmd->add_option("--window", window, "weight window lo:hi, e.g. --window=-8:8");
  cmd->add_option("--resolution", o.resolution, "discretization size: n_r, N or K depending on the model");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eqindex::cli;
  CLI::App app{"Fredholm and equivariant indices of finite operator models"};
  app.require_subcommand(1);

  Overrides run_opts, suite_opts, dump_opts;
  std::string run_window, suite_window, dump_window;
  std::string suite_name;

  auto* run = app.add_subcommand("run", "build the configured model and compute its index");
  add_common(run, run_opts, run_window);
  auto* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("name", suite_name, "acceptance, stability, homotopy, gluing, convergence or symbols")
      ->required();
  add_common(suite, suite_opts, suite_window);
  auto* dump = app.add_subcommand("dump", "write the dense model matrix with its labels");
  add_common(dump, dump_opts, dump_window);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  CommandOutput result;
  try {
    if (run->parsed()) {
      if (!run_window.empty()) run_opts.window = parse_window(run_window);
      result = cmd_run(run_opts);
    } else if (suite->parsed()) {
      if (!suite_window.empty()) suite_opts.window = parse_window(suite_window);
      result = cmd_suite(suite_name, suite_opts);
    } else {
      if (!dump_window.empty()) dump_opts.window = parse_window(dump_window);
      result = cmd_dump(dump_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
