#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <pdmseries/model.hpp>

#include "run_config.hpp"

namespace pdmapp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitConfigError = 2;

struct StateRow {
  int dim = 0;
  int ell = 0;
  int n = 0;
  /// Empty on success, otherwise the failure message.
  std::string error;
  pdmseries::EigenResult result;
};

/// Solves every (N, l, n) of the config, one scan per (N, l) channel.
/// Channels run concurrently; rows come back in config order.
std::vector<StateRow> solve_states(const RunConfig& cfg);

enum class Tables : unsigned { energies = 1, coefficients = 2, wavefunctions = 4 };

/// Writes the requested tables to cfg.output.directory in every configured
/// format. Returns the paths written.
std::vector<std::string> write_tables(const RunConfig& cfg, const std::vector<StateRow>& rows, unsigned tables);

std::string energies_csv(const std::vector<StateRow>& rows);
std::string energies_json(const std::vector<StateRow>& rows);
std::string coefficients_csv(const std::vector<StateRow>& rows);
std::string coefficients_json(const std::vector<StateRow>& rows);
std::string wavefunctions_csv(const RunConfig& cfg, const std::vector<StateRow>& rows);
std::string wavefunctions_json(const RunConfig& cfg, const std::vector<StateRow>& rows);

/// solve / coefficients / sample front ends. out_dir overrides
/// output.directory when set. Diagnostics go to err.
int run_solve(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& out,
              std::ostream& err);
int run_coefficients(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& out,
                     std::ostream& err);
int run_sample(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& out,
               std::ostream& err);

inline constexpr std::uint64_t kDefaultVerifySeed = 20240517;

struct IdentityCheck {
  std::string name;
  int cases = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_deviation < tolerance; }
};

struct VerifyReport {
  std::uint64_t seed = kDefaultVerifySeed;
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Closed-form and cross-derivation identities at randomized admissible
/// parameters.
VerifyReport verify_identities(std::uint64_t seed);
int run_verify(std::uint64_t seed, std::ostream& out);

}  // namespace pdmapp
