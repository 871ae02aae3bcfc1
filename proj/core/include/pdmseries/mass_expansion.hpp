#pragma once

#include <vector>

#include "pdmseries/model.hpp"
#include "pdmseries/series.hpp"

namespace pdmseries {

inline constexpr int kDefaultTruncationOrder = 64;

/// m(r) = m0 exp(-lambda r): b_nu = m0 (-lambda)^nu / nu!, m'/m = -lambda.
MassProfile expand_exponential(double m0, double lambda, int order = kDefaultTruncationOrder);

MassProfile constant_mass(double m0, int order = kDefaultTruncationOrder);

/// Mass given as an explicit polynomial b_0 + b_1 r + ...; coefficients past
/// the list are zero. The m'/m series comes from formal division.
MassProfile custom_mass(std::vector<double> coefficients, int order = kDefaultTruncationOrder);

/// Formal quotient m'/m, using only the known coefficients of mass_series:
/// the result has order mass_series.order() - 1 (order 0 for a constant).
SeriesVector logderiv_from_series(const SeriesVector& mass_series);

/// Formal quotient m'/m to the given order; coefficients of mass_series past
/// its end are read as zero.
SeriesVector logderiv_from_series(const SeriesVector& mass_series, int order);

/// Partial sum sum_nu c_nu r^nu.
double eval_series(const SeriesVector& s, double r);

}  // namespace pdmseries
