#pragma once

#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "pdmseries/errors.hpp"
#include "pdmseries/series.hpp"

// Shared domain types. Units: hbar = 1 throughout.

namespace pdmseries {

/// V(r) = -v1 r^(-alpha) + v2 r^beta + v3.
///
/// Exponents are non-negative integers so the index shifts of the series
/// recurrence stay integral. v1 and v2 are non-negative; a zero coupling
/// expresses an absent term.
class PotentialSpec {
 public:
  enum class Terms { require_coupling, allow_free };

  PotentialSpec(double v1, double v2, double v3, int alpha, int beta,
                Terms terms = Terms::require_coupling);

  double v1() const noexcept { return v1_; }
  double v2() const noexcept { return v2_; }
  double v3() const noexcept { return v3_; }
  int alpha() const noexcept { return alpha_; }
  int beta() const noexcept { return beta_; }

  /// V(r) for r > 0.
  double operator()(double r) const noexcept;

  bool operator==(const PotentialSpec&) const = default;

 private:
  double v1_;
  double v2_;
  double v3_;
  int alpha_;
  int beta_;
};

/// -a/r + b_lin r + c (alpha = beta = 1).
PotentialSpec make_cornell(double a, double b_lin, double c);
/// -z/r.
PotentialSpec make_coulomb(double z);
/// omega^2 r^2.
PotentialSpec make_oscillator(double omega);
/// b_lin r.
PotentialSpec make_linear(double b_lin);

/// Dimension N, orbital l and radial (node) index n. The radial problem sees
/// N and l only through k = N + 2l when the mass is constant.
class QuantumNumbers {
 public:
  QuantumNumbers(int dim_n, int ell, int radial_n);

  int dim_n() const noexcept { return dim_n_; }
  int ell() const noexcept { return ell_; }
  int radial_n() const noexcept { return radial_n_; }
  int k() const noexcept { return dim_n_ + 2 * ell_; }

  bool operator==(const QuantumNumbers&) const = default;

 private:
  int dim_n_;
  int ell_;
  int radial_n_;
};

enum class MassKind { constant, exponential, custom_series };

std::string_view to_string(MassKind kind) noexcept;

/// Position-dependent mass m(r) as a series about the origin together with the
/// series of m'/m. Build through the factories in mass_expansion.hpp.
class MassProfile {
 public:
  /// Validates b_0 = m0 > 0, the kind-specific shape and the consistency
  /// (b' * b)[nu] == (nu + 1) b_{nu+1}.
  MassProfile(MassKind kind, double lambda, SeriesVector mass_series, SeriesVector logderiv_series);

  MassKind kind() const noexcept { return kind_; }
  double m0() const noexcept { return mass_series_[0]; }
  /// Decay rate of the exponential profile (0 otherwise).
  double lambda() const noexcept { return lambda_; }
  const SeriesVector& mass_series() const noexcept { return mass_series_; }
  const SeriesVector& logderiv_series() const noexcept { return logderiv_series_; }
  /// Highest index for which both b_nu and b'_nu are known.
  int order() const noexcept;

  /// m(r): closed form for constant and exponential kinds, the explicit
  /// polynomial for custom series.
  double value(double r) const;
  /// m'(r)/m(r), same conventions as value().
  double logderiv(double r) const;

 private:
  MassKind kind_;
  double lambda_;
  SeriesVector mass_series_;
  SeriesVector logderiv_series_;
  SeriesVector mass_derivative_;
};

/// Output of the coefficient recurrence at one trial energy.
///
/// True coefficients are coeffs[i] * exp(log_scale); log_scale is non-zero
/// only after the generator rescaled an overflowing prefix.
struct SeriesSolution {
  double energy = 0.0;
  double b = 0.0;
  std::vector<double> coeffs;
  double a0 = 1.0;
  int truncation_order = 0;
  QuantumNumbers quantum{3, 0, 0};
  double log_scale = 0.0;

  double coefficient(int i) const { return coeffs.at(static_cast<std::size_t>(i)) * std::exp(log_scale); }
};

struct EigenResult {
  double energy = 0.0;
  int nodes = 0;
  /// Factor applied to a0 = 1 so that the composite R has unit norm.
  double norm_const = 1.0;
  /// |normalized Wronskian| between the origin series and the inward solution.
  double tail_residual = 0.0;
  /// |E_series - E_oracle|; NaN when the oracle was not run.
  double oracle_gap = std::numeric_limits<double>::quiet_NaN();
  double match_radius = 0.0;
  double far_radius = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  SeriesSolution series;
};

/// b = sqrt(-2 m0 E).
double b_from_energy(double e, double m0);

}  // namespace pdmseries
