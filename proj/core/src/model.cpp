#include "pdmseries/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pdmseries {

PotentialSpec::PotentialSpec(double v1, double v2, double v3, int alpha, int beta, Terms terms)
    : v1_(v1), v2_(v2), v3_(v3), alpha_(alpha), beta_(beta) {
  if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(v3))
    throw DomainError("potential parameters must be finite");
  if (v1 < 0.0) throw DomainError("v1 must be >= 0, got " + std::to_string(v1));
  if (v2 < 0.0) throw DomainError("v2 must be >= 0, got " + std::to_string(v2));
  if (alpha < 0 || beta < 0) throw DomainError("exponents alpha, beta must be non-negative integers");
  if (terms == Terms::require_coupling && v1 == 0.0 && v2 == 0.0)
    throw DomainError("at least one of v1, v2 must be non-zero (request a free particle explicitly)");
}

double PotentialSpec::operator()(double r) const noexcept {
  double v = v3_;
  if (v1_ != 0.0) v -= v1_ * std::pow(r, -alpha_);
  if (v2_ != 0.0) v += v2_ * std::pow(r, beta_);
  return v;
}

PotentialSpec make_cornell(double a, double b_lin, double c) {
  if (a < 0.0 || b_lin < 0.0) throw DomainError("Cornell couplings must be >= 0");
  return PotentialSpec(a, b_lin, c, 1, 1, PotentialSpec::Terms::allow_free);
}

PotentialSpec make_coulomb(double z) {
  if (!(z > 0.0)) throw DomainError("Coulomb charge must be > 0");
  return PotentialSpec(z, 0.0, 0.0, 1, 0);
}

PotentialSpec make_oscillator(double omega) {
  if (!(omega > 0.0)) throw DomainError("oscillator frequency must be > 0");
  return PotentialSpec(0.0, omega * omega, 0.0, 0, 2);
}

PotentialSpec make_linear(double b_lin) {
  if (!(b_lin > 0.0)) throw DomainError("linear coupling must be > 0");
  return PotentialSpec(0.0, b_lin, 0.0, 0, 1);
}

QuantumNumbers::QuantumNumbers(int dim_n, int ell, int radial_n)
    : dim_n_(dim_n), ell_(ell), radial_n_(radial_n) {
  if (dim_n < 1) throw DomainError("dimension N must be >= 1");
  if (ell < 0) throw DomainError("orbital quantum number l must be >= 0");
  if (radial_n < 0) throw DomainError("radial quantum number n must be >= 0");
}

std::string_view to_string(MassKind kind) noexcept {
  switch (kind) {
    case MassKind::constant: return "constant";
    case MassKind::exponential: return "exponential";
    case MassKind::custom_series: return "series";
  }
  return "unknown";
}

MassProfile::MassProfile(MassKind kind, double lambda, SeriesVector mass_series,
                         SeriesVector logderiv_series)
    : kind_(kind),
      lambda_(lambda),
      mass_series_(std::move(mass_series)),
      logderiv_series_(std::move(logderiv_series)),
      mass_derivative_(mass_series_.derivative()) {
  if (!(mass_series_[0] > 0.0)) throw DomainError("mass at the origin must be > 0");
  switch (kind_) {
    case MassKind::constant:
      lambda_ = 0.0;
      for (int i = 1; i <= mass_series_.order(); ++i)
        if (mass_series_[i] != 0.0) throw DomainError("constant mass with non-zero higher coefficients");
      for (double c : logderiv_series_.coeffs())
        if (c != 0.0) throw DomainError("constant mass with non-zero m'/m");
      break;
    case MassKind::exponential:
      if (!(lambda_ > 0.0)) throw DomainError("exponential mass needs lambda > 0");
      if (logderiv_series_[0] != -lambda_) throw DomainError("exponential mass needs m'/m = -lambda");
      for (int i = 1; i <= logderiv_series_.order(); ++i)
        if (logderiv_series_[i] != 0.0) throw DomainError("exponential mass m'/m must be constant");
      break;
    case MassKind::custom_series:
      lambda_ = 0.0;
      break;
  }
  const int top = std::min(mass_series_.order() - 1, logderiv_series_.order());
  for (int nu = 0; nu <= top; ++nu) {
    double lhs = 0.0;
    double scale = 0.0;
    for (int j = 0; j <= nu; ++j) {
      const double t = logderiv_series_.at(j) * mass_series_.at(nu - j);
      lhs += t;
      scale += std::abs(t);
    }
    const double rhs = (nu + 1) * mass_series_.at(nu + 1);
    scale += std::abs(rhs);
    if (std::abs(lhs - rhs) > 1e-12 * scale + 1e-300)
      throw DomainError("mass series and m'/m series are inconsistent at index " + std::to_string(nu));
  }
}

int MassProfile::order() const noexcept {
  if (kind_ == MassKind::constant) return std::numeric_limits<int>::max();
  return std::min(mass_series_.order(), logderiv_series_.order());
}

double MassProfile::value(double r) const {
  switch (kind_) {
    case MassKind::constant: return m0();
    case MassKind::exponential: return m0() * std::exp(-lambda_ * r);
    case MassKind::custom_series: {
      const double m = mass_series_.evaluate(r);
      if (!(m > 0.0)) throw DomainError("custom mass profile is not positive at r = " + std::to_string(r));
      return m;
    }
  }
  return m0();
}

double MassProfile::logderiv(double r) const {
  switch (kind_) {
    case MassKind::constant: return 0.0;
    case MassKind::exponential: return -lambda_;
    case MassKind::custom_series: return mass_derivative_.evaluate(r) / value(r);
  }
  return 0.0;
}

double b_from_energy(double e, double m0) {
  if (!(e < 0.0)) throw BoundStateError("bound states need E < 0, got " + std::to_string(e));
  if (!(m0 > 0.0)) throw DomainError("m0 must be > 0");
  return std::sqrt(-2.0 * m0 * e);
}

}  // namespace pdmseries
