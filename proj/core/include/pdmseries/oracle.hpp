#pragma once

#include <vector>

#include "pdmseries/model.hpp"

// Direct integration of the radial equation with fixed-step RK4. Nothing here
// touches the series machinery.

namespace pdmseries::oracle {

inline constexpr double kDefaultRMin = 1e-6;
inline constexpr int kDefaultPoints = 20000;
inline constexpr double kResolutionThreshold = 1e-8;

struct GridSpec {
  double r_min = kDefaultRMin;
  /// 0 selects the radius automatically from the energy.
  double r_max = 0.0;
  int points = kDefaultPoints;

  double step() const { return (r_max - r_min) / (points - 1); }
};

enum class Direction { outward, inward };

struct RadialSamples {
  std::vector<double> r;
  std::vector<double> value;
  std::vector<double> derivative;
};

/// R and R' on grid.points radii in [r_min, r_max]. Outward samples are spaced
/// uniformly in ln r and start from R ~ r^((k-1)/2) (1 + c1 r); inward samples
/// are uniform in r and start from the local WKB decay. The step-halving error
/// estimate must stay below 1e-8, otherwise ResolutionError.
RadialSamples integrate_radial(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                               const GridSpec& grid, Direction direction);

/// Continuous matching function at e: outward and inward legs meet at the
/// outer classical turning point; zero at an eigenvalue.
struct MatchSample {
  double mismatch = 0.0;
  int nodes = 0;
  double match_radius = 0.0;
  /// Change of the matching angle under step halving.
  double resolution = 0.0;
};

MatchSample match(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                  const GridSpec& grid, double match_radius = 0.0);

struct OracleResult {
  double energy = 0.0;
  int nodes = 0;
  int iterations = 0;
};

/// Bisection on the matching function inside [e_lo, e_hi] to 1e-9 relative.
/// Constant and non-constant masses share the RK4 backend.
OracleResult numerov_eigenvalue(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                                double e_lo, double e_hi, const GridSpec& grid = {});

struct OracleBracket {
  double e_lo = 0.0;
  double e_hi = 0.0;
  int nodes = 0;
};

std::vector<OracleBracket> scan(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                                double e_lo, double e_hi, int steps, const GridSpec& grid = {});

/// Scan plus bisection for the state with q.radial_n nodes.
OracleResult find_state(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e_lo,
                        double e_hi, int steps, const GridSpec& grid = {});

}  // namespace pdmseries::oracle
