#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Bound states of the radial Schrodinger equation with position-dependent mass"};
  cli.require_subcommand(1);

  std::string config;
  std::string out_dir;
  const auto with_config = [&](CLI::App* sub) {
    sub->add_option("config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out-dir", out_dir, "Output directory (overrides output.directory)");
  };
  CLI::App* solve = cli.add_subcommand("solve", "Solve every configured state and write the energy table");
  CLI::App* coeffs = cli.add_subcommand("coefficients", "Write normalized series coefficients per state");
  CLI::App* sample = cli.add_subcommand("sample", "Write sampled wavefunctions per state");
  with_config(solve);
  with_config(coeffs);
  with_config(sample);

  std::uint64_t seed = pdmapp::kDefaultVerifySeed;
  CLI::App* verify = cli.add_subcommand("verify", "Check the closed-form coefficient identities");
  verify->add_option("--seed", seed, "Random seed for the parameter draws");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : pdmapp::kExitConfigError;
  }

  const std::optional<std::string> dir = out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir);
  if (solve->parsed()) return pdmapp::run_solve(config, dir, std::cout, std::cerr);
  if (coeffs->parsed()) return pdmapp::run_coefficients(config, dir, std::cout, std::cerr);
  if (sample->parsed()) return pdmapp::run_sample(config, dir, std::cout, std::cerr);
  return pdmapp::run_verify(seed, std::cout);
}
