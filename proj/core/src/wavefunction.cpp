#include "pdmseries/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pdmseries/errors.hpp"

namespace pdmseries {

namespace {

constexpr double kTrustRatio = 1e-3;

double log_sum_exp(const std::vector<double>& xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - hi);
  return hi + std::log(s);
}

// log( (|a_{M-1}| r^{M-1} + |a_M| r^M) / sum_i |a_i| r^i )
double log_tail_ratio(const std::vector<double>& coeffs, double log_r) {
  const int order = static_cast<int>(coeffs.size()) - 1;
  std::vector<double> all;
  std::vector<double> tail;
  for (int i = 0; i <= order; ++i) {
    const double c = std::abs(coeffs[static_cast<std::size_t>(i)]);
    if (c == 0.0) continue;
    const double t = std::log(c) + i * log_r;
    all.push_back(t);
    if (i >= order - 1) tail.push_back(t);
  }
  if (tail.empty()) return -std::numeric_limits<double>::infinity();
  return log_sum_exp(tail) - log_sum_exp(all);
}

struct SeriesJet {
  double u = 0.0;
  double du = 0.0;
  double d2u = 0.0;
};

SeriesJet series_jet(const std::vector<double>& a, double r) {
  SeriesJet j;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    j.d2u = j.d2u * r + 2.0 * j.du;
    j.du = j.du * r + j.u;
    j.u = j.u * r + *it;
  }
  return j;
}

}  // namespace

double trust_radius(const SeriesSolution& solution) {
  const double target = std::log(kTrustRatio);
  const auto& a = solution.coeffs;
  double lo = std::log(1e-8);
  double hi = std::log(kTrustRadiusCap);
  if (log_tail_ratio(a, hi) <= target) return kTrustRadiusCap;
  if (log_tail_ratio(a, lo) > target) return std::exp(lo);
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_tail_ratio(a, mid) <= target ? lo : hi) = mid;
  }
  return std::exp(lo);
}

RadialWavefunction::RadialWavefunction(SeriesSolution solution) : solution_(std::move(solution)) {
  if (solution_.coeffs.empty()) throw DomainError("wavefunction needs at least one coefficient");
  eval_cutoff_ = trust_radius(solution_);
}

RadialValue evaluate(const RadialWavefunction& w, double r) {
  if (!(r >= 0.0)) throw DomainError("wavefunction evaluated at negative radius");
  const auto& sol = w.solution();
  RadialValue out;
  out.extrapolated = r > w.eval_cutoff();
  if (r == 0.0) {
    out.value = (w.k() > 1) ? 0.0 : sol.coeffs.front() * std::exp(sol.log_scale);
    return out;
  }
  double u = 0.0;
  for (auto it = sol.coeffs.rbegin(); it != sol.coeffs.rend(); ++it) u = u * r + *it;
  out.value = std::exp(w.prefactor_power() * std::log(r) - sol.b * r + sol.log_scale) * u;
  return out;
}

RadialJet evaluate_jet(const RadialWavefunction& w, double r) {
  if (!(r > 0.0)) throw DomainError("derivatives of R need r > 0");
  const auto& sol = w.solution();
  const double s = w.prefactor_power();
  const double p = std::exp(s * std::log(r) - sol.b * r + sol.log_scale);
  const double g = s / r - sol.b;  // P'/P
  const SeriesJet j = series_jet(sol.coeffs, r);
  RadialJet out;
  out.value = p * j.u;
  out.first = p * (j.du + g * j.u);
  out.second = p * (j.d2u + 2.0 * g * j.du + (g * g - s / (r * r)) * j.u);
  out.extrapolated = r > w.eval_cutoff();
  return out;
}

RadialWavefunction normalize(const RadialWavefunction& w, double r_max) {
  if (!(r_max > 0.0)) throw DomainError("normalization radius must be > 0");
  if (r_max > w.eval_cutoff())
    throw DomainError("normalization radius " + std::to_string(r_max) + " lies beyond the series trust region " +
                      std::to_string(w.eval_cutoff()));
  const auto density = [&](double r) {
    const double v = evaluate(w, r).value;
    return v * v;
  };
  double err = 0.0;
  const double body =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(density, 0.0, r_max, 20, 1e-13, &err);
  const double edge = evaluate(w, r_max).value;
  const double tail = w.solution().b > 0.0 ? edge * edge / (2.0 * w.solution().b) : 0.0;
  const double total = body + tail;
  if (!std::isfinite(total) || !(total > 0.0))
    throw DegenerateWavefunctionError("norm integral is zero or not finite");

  const double factor = 1.0 / std::sqrt(total);
  RadialWavefunction out = w;
  for (double& c : out.solution_.coeffs) c *= factor;
  out.solution_.a0 *= factor;
  out.normalized_ = true;
  return out;
}

ResidualBreakdown ode_residual_breakdown(const RadialWavefunction& w, const PotentialSpec& pot,
                                         const MassProfile& mass, double e, double r) {
  if (!(r > 0.0)) throw DomainError("the radial equation is singular at r = 0");
  const RadialJet jet = evaluate_jet(w, r);
  const int k = w.k();
  const int dim = w.solution().quantum.dim_n();
  const double g = mass.logderiv(r);
  const double m = mass.value(r);
  const double terms[] = {
      jet.second,
      g * (dim - 1) / (2.0 * r) * jet.value,
      -g * jet.first,
      -(k - 1.0) * (k - 3.0) / (4.0 * r * r) * jet.value,
      2.0 * m * (e - pot(r)) * jet.value,
  };
  ResidualBreakdown out;
  double sum = 0.0;
  for (double t : terms) {
    sum += t;
    out.scale += std::abs(t);
  }
  out.residual = std::abs(sum);
  return out;
}

double ode_residual(const RadialWavefunction& w, const PotentialSpec& pot, const MassProfile& mass, double e,
                    double r) {
  return ode_residual_breakdown(w, pot, mass, e, r).residual;
}

int count_nodes(const RadialWavefunction& w, double r_max, int samples) {
  if (samples < 100) throw DomainError("node counting needs at least 100 samples");
  if (!(r_max > 0.0)) throw DomainError("node counting needs r_max > 0");
  const double h = r_max / samples;
  std::vector<double> values(static_cast<std::size_t>(samples));
  double peak = 0.0;
  for (int j = 1; j < samples; ++j) {
    values[static_cast<std::size_t>(j)] = evaluate(w, j * h).value;
    peak = std::max(peak, std::abs(values[static_cast<std::size_t>(j)]));
  }
  if (peak == 0.0) return 0;
  const double floor = 1e-12 * peak;
  const auto at = [&](double r) { return evaluate(w, r).value; };

  int nodes = 0;
  int last_sign = 0;
  double last_r = 0.0;
  double last_v = 0.0;
  for (int j = 1; j < samples; ++j) {
    const double v = values[static_cast<std::size_t>(j)];
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      // Illinois-style false position between the two significant samples.
      double a = last_r, fa = last_v, b = j * h, fb = v;
      int side = 0;
      double root = 0.5 * (a + b);
      for (int it = 0; it < 60 && b - a > 1e-14 * b; ++it) {
        root = (a * fb - b * fa) / (fb - fa);
        const double fr = at(root);
        if (fr == 0.0) break;
        if ((fr > 0.0) == (fa > 0.0)) {
          a = root;
          fa = fr;
          if (side == -1) fb *= 0.5;
          side = -1;
        } else {
          b = root;
          fb = fr;
          if (side == 1) fa *= 0.5;
          side = 1;
        }
      }
      const double slope = std::abs(evaluate_jet(w, root).first);
      if (slope > 1e-9 * peak / r_max) ++nodes;
    }
    last_sign = sign;
    last_r = j * h;
    last_v = v;
  }
  return nodes;
}

}  // namespace pdmseries
