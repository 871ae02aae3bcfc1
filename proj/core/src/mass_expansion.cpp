#include "pdmseries/mass_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pdmseries {

MassProfile expand_exponential(double m0, double lambda, int order) {
  if (!(m0 > 0.0)) throw DomainError("m0 must be > 0");
  if (!(lambda > 0.0)) throw DomainError("exponential mass needs lambda > 0, got " + std::to_string(lambda));
  if (order < 0) throw DomainError("order must be >= 0");
  std::vector<double> b(static_cast<std::size_t>(order) + 1);
  b[0] = m0;
  for (int nu = 1; nu <= order; ++nu) b[static_cast<std::size_t>(nu)] = b[static_cast<std::size_t>(nu) - 1] * (-lambda) / nu;
  std::vector<double> bp(static_cast<std::size_t>(order) + 1, 0.0);
  bp[0] = -lambda;
  return MassProfile(MassKind::exponential, lambda, SeriesVector(std::move(b)), SeriesVector(std::move(bp)));
}

MassProfile constant_mass(double m0, int order) {
  if (!(m0 > 0.0)) throw DomainError("m0 must be > 0");
  if (order < 0) throw DomainError("order must be >= 0");
  std::vector<double> b(static_cast<std::size_t>(order) + 1, 0.0);
  b[0] = m0;
  return MassProfile(MassKind::constant, 0.0, SeriesVector(std::move(b)),
                     SeriesVector(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0)));
}

MassProfile custom_mass(std::vector<double> coefficients, int order) {
  if (order < 0) throw DomainError("order must be >= 0");
  SeriesVector given(std::move(coefficients));
  if (!(given[0] > 0.0)) throw DomainError("mass series must have a positive leading coefficient");
  SeriesVector mass = given.resized(std::max(order, given.order()));
  SeriesVector logderiv = logderiv_from_series(mass, mass.order());
  return MassProfile(MassKind::custom_series, 0.0, std::move(mass), std::move(logderiv));
}

SeriesVector logderiv_from_series(const SeriesVector& mass_series) {
  return logderiv_from_series(mass_series, std::max(mass_series.order() - 1, 0));
}

SeriesVector logderiv_from_series(const SeriesVector& mass_series, int order) {
  const double lead = mass_series[0];
  if (!(lead > 0.0)) throw DomainError("cannot divide by a series with non-positive leading coefficient");
  if (order < 0) throw DomainError("order must be >= 0");
  // b' b = m'  =>  b'_nu = ((nu+1) b_{nu+1} - sum_{j<nu} b'_j b_{nu-j}) / b_0
  std::vector<double> q(static_cast<std::size_t>(order) + 1, 0.0);
  for (int nu = 0; nu <= order; ++nu) {
    double s = (nu + 1) * mass_series.at(nu + 1);
    for (int j = 0; j < nu; ++j) s -= q[static_cast<std::size_t>(j)] * mass_series.at(nu - j);
    q[static_cast<std::size_t>(nu)] = s / lead;
  }
  return SeriesVector(std::move(q));
}

double eval_series(const SeriesVector& s, double r) {
  if (r < 0.0) throw DomainError("series evaluated at negative radius");
  return s.evaluate(r);
}

}  // namespace pdmseries
