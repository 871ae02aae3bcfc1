#pragma once

#include "pdmseries/model.hpp"

namespace pdmseries {

/// R(r) = r^((k-1)/2) e^(-br) sum_i a_i r^i built from a SeriesSolution.
class RadialWavefunction {
 public:
  explicit RadialWavefunction(SeriesSolution solution);

  const SeriesSolution& solution() const noexcept { return solution_; }
  int k() const noexcept { return solution_.quantum.k(); }
  double prefactor_power() const noexcept { return 0.5 * (k() - 1); }
  bool normalized() const noexcept { return normalized_; }
  /// Radius where the last two retained terms reach 1e-3 of sum |a_i| r^i;
  /// evaluations beyond it are flagged as extrapolated.
  double eval_cutoff() const noexcept { return eval_cutoff_; }

 private:
  friend RadialWavefunction normalize(const RadialWavefunction& w, double r_max);

  SeriesSolution solution_;
  bool normalized_ = false;
  double eval_cutoff_ = 0.0;
};

/// Largest radius any trust region is reported as.
inline constexpr double kTrustRadiusCap = 1e6;

/// Trust-region radius of the truncated series (see eval_cutoff()).
double trust_radius(const SeriesSolution& solution);

struct RadialValue {
  double value = 0.0;
  bool extrapolated = false;
};

/// R and its first two analytic derivatives at r > 0.
struct RadialJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
  bool extrapolated = false;
};

RadialValue evaluate(const RadialWavefunction& w, double r);
RadialJet evaluate_jet(const RadialWavefunction& w, double r);

/// Rescales a0 so that int_0^inf R^2 dr = 1, integrating the series up to
/// r_max (which must lie inside the trust region) and closing with the tail
/// R(r_max)^2 / (2b) of the e^(-br) envelope.
RadialWavefunction normalize(const RadialWavefunction& w, double r_max);

struct ResidualBreakdown {
  /// |R'' + (m'/m)((N-1)/(2r) - d/dr)R - (k-1)(k-3)/(4r^2) R + 2m(E-V)R|
  double residual = 0.0;
  /// Sum of the magnitudes of the individual terms (floating-point floor scale).
  double scale = 0.0;
};

ResidualBreakdown ode_residual_breakdown(const RadialWavefunction& w, const PotentialSpec& pot,
                                         const MassProfile& mass, double e, double r);

/// Absolute residual of the radial equation at r > 0, from analytic series
/// derivatives.
double ode_residual(const RadialWavefunction& w, const PotentialSpec& pot, const MassProfile& mass, double e,
                    double r);

inline constexpr int kDefaultNodeSamples = 2048;

/// Sign changes of R on (0, r_max); candidates are refined and rejected when
/// R' vanishes there as well (a touch rather than a crossing).
int count_nodes(const RadialWavefunction& w, double r_max, int samples = kDefaultNodeSamples);

}  // namespace pdmseries
