#pragma once

#include <map>
#include <string>
#include <vector>

#include <pdmseries/eigensolver.hpp>
#include <pdmseries/model.hpp>

namespace pdmapp {

/// Invalid configuration; the message carries file:line:column when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialConfig {
  /// coulomb | oscillator | linear | cornell | general
  std::string kind = "coulomb";
  /// Kind-specific keys: coulomb {z}; oscillator {omega, offset}; linear {b, offset};
  /// cornell {a, b, c}; general {v1, v2, v3, alpha, beta}.
  std::map<std::string, double> params{{"z", 1.0}};

  pdmseries::PotentialSpec build() const;
  bool operator==(const PotentialConfig&) const = default;
};

struct MassConfig {
  /// constant | exponential | custom
  std::string kind = "constant";
  double m0 = 1.0;
  double lambda = 0.0;
  std::vector<double> coefficients;

  pdmseries::MassProfile build(int order) const;
  bool operator==(const MassConfig&) const = default;
};

struct QuantumConfig {
  std::vector<int> dims{3};
  std::vector<int> ells{0};
  std::vector<int> radial{0};
  bool operator==(const QuantumConfig&) const = default;
};

struct SolverBlock {
  double e_lo = -1.0;
  double e_hi = -0.01;
  int scan_steps = 200;
  double match_radius = 0.0;
  int truncation_order = 64;
  double tol_e = 1e-10;
  int max_iter = 200;
  /// auto picks the specialized recurrence matching the potential and mass.
  std::string recurrence = "auto";
  bool oracle = false;

  bool operator==(const SolverBlock&) const = default;
};

struct SampleGrid {
  double r_min = 0.0;
  double r_max = 20.0;
  int count = 201;
  bool operator==(const SampleGrid&) const = default;
};

struct OutputConfig {
  std::string directory = ".";
  std::vector<std::string> formats{"csv"};
  bool coefficients = false;
  bool wavefunctions = false;
  SampleGrid samples;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  PotentialConfig potential;
  MassConfig mass;
  QuantumConfig quantum;
  SolverBlock solver;
  OutputConfig output;

  pdmseries::RecurrenceKind recurrence_kind() const;
  pdmseries::SolverConfig solver_config() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses YAML text; source names the input in diagnostics.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace pdmapp
