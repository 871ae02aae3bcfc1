#include "pdmseries/eigensolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "pdmseries/errors.hpp"
#include "pdmseries/oracle.hpp"
#include "pdmseries/wavefunction.hpp"

namespace pdmseries {

namespace {

namespace odeint = boost::numeric::odeint;

constexpr double kMatchFactor = 1.5;
constexpr double kTrustFraction = 0.5;
constexpr double kFarDecayLengths = 10.0;
constexpr double kFarPhase = 40.0;
constexpr double kOdeRtol = 1e-12;
constexpr double kOdeAtol = 1e-300;
constexpr double kRenormalize = 1e100;
constexpr int kChunks = 32;

// (R, R', int_r^far R^2)
using InwardState = std::array<double, 3>;

struct RadialEquation {
  const PotentialSpec& pot;
  const MassProfile& mass;
  int dim;
  double centrifugal;
  double e;

  RadialEquation(const PotentialSpec& p, const MassProfile& m, const QuantumNumbers& q, double energy)
      : pot(p), mass(m), dim(q.dim_n()), centrifugal((q.k() - 1.0) * (q.k() - 3.0) / 4.0), e(energy) {}

  // R'' = g R' + q_eff R
  double q_eff(double r) const {
    return centrifugal / (r * r) - mass.logderiv(r) * (dim - 1) / (2.0 * r) + 2.0 * mass.value(r) * (pot(r) - e);
  }

  double decay(double r) const {
    const double g = mass.logderiv(r);
    return 0.5 * (std::sqrt(std::max(g * g + 4.0 * q_eff(r), 0.0)) - g);
  }

  void operator()(const InwardState& y, InwardState& dy, double r) const {
    dy[0] = y[1];
    dy[1] = mass.logderiv(r) * y[1] + q_eff(r) * y[0];
    dy[2] = -y[0] * y[0];
  }
};

void check_energy(double e) {
  if (!(e < 0.0)) throw BoundStateError("bound states need E < 0, got " + std::to_string(e));
  if (std::abs(e) < kMinBindingEnergy)
    throw BoundStateError("|E| below " + std::to_string(kMinBindingEnergy) + " is too close to threshold");
}

SeriesSolution series_at(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                         const SolverConfig& cfg) {
  return generate_coefficients(cfg.kind, pot, mass, q, e, cfg.truncation_order);
}

double auto_match_radius(double b, double trust) { return std::min(kMatchFactor / b, kTrustFraction * trust); }

// Past the outermost turning point far enough that the growing inward mode has
// swamped the other one by e^40.
double auto_far_radius(const RadialEquation& eq, double b, double r_match) {
  const double r_min_far = r_match + kFarDecayLengths / b;
  const double dr = 0.02 / b;
  double r = r_match;
  double phase = 0.0;
  for (std::int64_t it = 0; it < 50'000'000; ++it) {
    const double mid = r + 0.5 * dr;
    const double qv = eq.q_eff(mid);
    if (qv < 0.0) {
      phase = 0.0;
    } else {
      const double g = eq.mass.logderiv(mid);
      phase += std::sqrt(g * g + 4.0 * qv) * dr;
    }
    r += dr;
    if (phase >= kFarPhase && r >= r_min_far) return r;
  }
  return r;
}

struct InwardResult {
  InwardState end{};
  double far_decay = 0.0;
  double far_value = 1.0;
  int nodes = 0;
  /// R at each requested stop, in the order given.
  std::vector<double> stops;
};

// Integrates from r_far down to r_match. stops must lie in (r_match, r_far]
// and be sorted descending. The final state and stops share one scale.
InwardResult integrate_inward(const RadialEquation& eq, double r_far, double r_match,
                              const std::vector<double>& stops = {}) {
  InwardResult res;
  res.far_decay = eq.decay(r_far);
  InwardState y{1.0, -res.far_decay, 0.0};

  std::vector<double> marks;
  for (int c = 1; c < kChunks; ++c) marks.push_back(r_far - (r_far - r_match) * c / kChunks);
  marks.insert(marks.end(), stops.begin(), stops.end());
  marks.push_back(r_match);
  std::sort(marks.begin(), marks.end(), std::greater<>());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  auto stepper = odeint::make_controlled(kOdeAtol, kOdeRtol, odeint::runge_kutta_dopri5<InwardState>());
  int last_sign = 1;
  const auto observer = [&](const InwardState& s, double) {
    if (s[0] == 0.0) return;
    const int sign = s[0] > 0.0 ? 1 : -1;
    if (sign != last_sign) ++res.nodes;
    last_sign = sign;
  };

  std::vector<double> stop_values(stops.size(), 0.0);
  double here = r_far;
  double dt = -0.01 * (r_far - r_match) / kChunks;
  for (double target : marks) {
    if (target >= here) continue;
    odeint::integrate_adaptive(stepper, eq, y, here, target, dt, observer);
    here = target;
    for (std::size_t i = 0; i < stops.size(); ++i)
      if (stops[i] == target) stop_values[i] = y[0];
    const double big = std::max(std::abs(y[0]), std::abs(y[1]));
    if (big > kRenormalize) {
      const double f = 1.0 / big;
      y[0] *= f;
      y[1] *= f;
      y[2] *= f * f;
      res.far_value *= f;
      for (double& v : stop_values) v *= f;
    }
  }
  res.end = y;
  res.stops = std::move(stop_values);
  return res;
}

// Zeros of the regular solution continued outward from the match radius. At an
// energy below E_n the regular solution has exactly n zeros on (0, inf).
int outward_zeros(const RadialEquation& eq, double value, double slope, double r_match, double r_far) {
  InwardState y{value, slope, 0.0};
  auto stepper = odeint::make_controlled(kOdeAtol, kOdeRtol, odeint::runge_kutta_dopri5<InwardState>());
  int zeros = 0;
  int last_sign = value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
  const auto observer = [&](const InwardState& s, double) {
    if (s[0] == 0.0) return;
    const int sign = s[0] > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++zeros;
    last_sign = sign;
  };
  double here = r_match;
  double dt = 0.01 * (r_far - r_match) / kChunks;
  for (int c = 1; c <= kChunks; ++c) {
    const double target = r_match + (r_far - r_match) * c / kChunks;
    odeint::integrate_adaptive(stepper, eq, y, here, target, dt, observer);
    here = target;
    const double big = std::max(std::abs(y[0]), std::abs(y[1]));
    if (big > kRenormalize) {
      y[0] /= big;
      y[1] /= big;
      y[2] = 0.0;
    }
  }
  return zeros;
}

double normalized_wronskian(double rs, double drs, double ri, double dri, double b) {
  const double ns = std::hypot(rs, drs / b);
  const double ni = std::hypot(ri, dri / b);
  if (ns == 0.0 || ni == 0.0) throw DegenerateWavefunctionError("solution vanishes with its derivative");
  return (rs * dri - drs * ri) / (b * ns * ni);
}

struct Radii {
  double match;
  double far;
};

struct Evaluation {
  double mismatch = 0.0;
  SeriesSolution series;
  RadialJet jet;
  InwardResult inward;
};

Evaluation evaluate_at(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                       const SolverConfig& cfg, Radii radii, const std::vector<double>& stops = {}) {
  Evaluation ev;
  ev.series = series_at(pot, mass, q, e, cfg);
  SeriesSolution unscaled = ev.series;
  unscaled.log_scale = 0.0;
  ev.jet = evaluate_jet(RadialWavefunction(std::move(unscaled)), radii.match);
  ev.inward = integrate_inward(RadialEquation(pot, mass, q, e), radii.far, radii.match, stops);
  ev.mismatch = normalized_wronskian(ev.jet.value, ev.jet.first, ev.inward.end[0], ev.inward.end[1], ev.series.b);
  return ev;
}

Radii radii_for(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                const SolverConfig& cfg, double match_radius, double far_radius) {
  Radii radii{};
  const SeriesSolution s = series_at(pot, mass, q, e, cfg);
  const double trust = trust_radius(s);
  if (match_radius > 0.0) {
    if (match_radius > trust)
      throw ConfigurationError("match radius " + std::to_string(match_radius) + " exceeds the series trust region " +
                               std::to_string(trust));
    radii.match = match_radius;
  } else {
    radii.match = auto_match_radius(s.b, trust);
  }
  radii.far = far_radius > 0.0 ? far_radius : auto_far_radius(RadialEquation(pot, mass, q, e), s.b, radii.match);
  if (!(radii.far > radii.match)) throw ConfigurationError("far radius must exceed the match radius");
  return radii;
}

int composite_nodes(const RadialWavefunction& w, const InwardResult& inward, double r_match) {
  return count_nodes(w, r_match) + inward.nodes;
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.e_lo < cfg.e_hi) || !(cfg.e_hi < 0.0))
    throw ConfigurationError("energy bracket must satisfy e_lo < e_hi < 0");
  check_energy(cfg.e_hi);
  if (!(cfg.tol_e > 0.0)) throw ConfigurationError("tol_e must be > 0");
  if (cfg.max_iter < 1) throw ConfigurationError("max_iter must be >= 1");
  if (cfg.truncation_order < 1) throw ConfigurationError("truncation_order must be >= 1");
}

double oracle_energy(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                     const SolverConfig& cfg) {
  // Tight bracket around the series root, widened until the oracle sees a sign
  // change; never wider than the caller's bracket.
  for (double width = 1e-7; width < 1.0; width *= 10.0) {
    const double lo = std::max(cfg.e_lo, e - width * std::abs(e));
    const double hi = std::min(cfg.e_hi, e + width * std::abs(e));
    try {
      return oracle::numerov_eigenvalue(pot, mass, q, lo, hi).energy;
    } catch (const BracketError&) {
      if (lo == cfg.e_lo && hi == cfg.e_hi) throw;
    }
  }
  return oracle::numerov_eigenvalue(pot, mass, q, cfg.e_lo, cfg.e_hi).energy;
}

}  // namespace

MismatchSample evaluate_mismatch(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                                 double e, const SolverConfig& cfg, double match_radius, double far_radius) {
  check_energy(e);
  const Radii radii = radii_for(pot, mass, q, e, cfg, match_radius, far_radius);
  MismatchSample out;
  out.energy = e;
  out.match_radius = radii.match;
  out.far_radius = radii.far;
  out.mismatch = evaluate_at(pot, mass, q, e, cfg, radii).mismatch;
  return out;
}

EigenResult find_eigenvalue(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                            const SolverConfig& cfg) {
  check_config(cfg);

  // Radii are frozen over the bracket so the mismatch is continuous in E.
  const double e_mid = 0.5 * (cfg.e_lo + cfg.e_hi);
  Radii radii{};
  {
    const Radii at_mid = radii_for(pot, mass, q, e_mid, cfg, cfg.match_radius, 0.0);
    double trust = kTrustRadiusCap;
    for (double e : {cfg.e_lo, e_mid, cfg.e_hi}) trust = std::min(trust, trust_radius(series_at(pot, mass, q, e, cfg)));
    if (cfg.match_radius > 0.0) {
      if (cfg.match_radius > trust)
        throw ConfigurationError("match radius " + std::to_string(cfg.match_radius) +
                                 " exceeds the series trust region " + std::to_string(trust));
      radii.match = cfg.match_radius;
    } else {
      radii.match = std::min(at_mid.match, kTrustFraction * trust);
    }
    const double b_hi = b_from_energy(cfg.e_hi, mass.m0());
    radii.far = std::max(at_mid.far, auto_far_radius(RadialEquation(pot, mass, q, cfg.e_hi), b_hi, radii.match));
  }

  int evaluations = 0;
  const auto f = [&](double e) {
    ++evaluations;
    return evaluate_at(pot, mass, q, e, cfg, radii).mismatch;
  };
  const double f_lo = f(cfg.e_lo);
  const double f_hi = f(cfg.e_hi);
  if ((f_lo > 0.0) == (f_hi > 0.0) && f_lo != 0.0 && f_hi != 0.0)
    throw BracketError("mismatch has no sign change in [" + std::to_string(cfg.e_lo) + ", " +
                       std::to_string(cfg.e_hi) + "]");

  double energy = 0.0;
  if (f_lo == 0.0) {
    energy = cfg.e_lo;
  } else if (f_hi == 0.0) {
    energy = cfg.e_hi;
  } else {
    const auto tol = [&](double a, double b) { return std::abs(b - a) <= cfg.tol_e * std::min(std::abs(a), std::abs(b)); };
    auto iters = static_cast<std::uintmax_t>(cfg.max_iter);
    const auto root = boost::math::tools::toms748_solve(f, cfg.e_lo, cfg.e_hi, f_lo, f_hi, tol, iters);
    if (!tol(root.first, root.second))
      throw BracketError("root finder did not reach tol_e within " + std::to_string(cfg.max_iter) + " iterations");
    energy = 0.5 * (root.first + root.second);
  }

  const Evaluation ev = evaluate_at(pot, mass, q, energy, cfg, radii);
  const RadialWavefunction w(ev.series);
  const int nodes = composite_nodes(w, ev.inward, radii.match);
  if (nodes != q.radial_n())
    throw WrongStateError("converged state at E = " + std::to_string(energy) + " has " + std::to_string(nodes) +
                              " nodes, expected " + std::to_string(q.radial_n()),
                          nodes);

  // Tie the inward solution to the series by least squares on (R, R'/b).
  const double b = ev.series.b;
  const RadialJet jet = evaluate_jet(w, radii.match);
  const double ri = ev.inward.end[0];
  const double dri = ev.inward.end[1];
  const double amp = (jet.value * ri + jet.first * dri / (b * b)) / (ri * ri + dri * dri / (b * b));
  const auto density = [&](double r) {
    const double v = evaluate(w, r).value;
    return v * v;
  };
  const double inner =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(density, 0.0, radii.match, 20, 1e-13);
  const double far_tail = ev.inward.far_decay > 0.0
                              ? ev.inward.far_value * ev.inward.far_value / (2.0 * ev.inward.far_decay)
                              : 0.0;
  const double total = inner + amp * amp * (ev.inward.end[2] + far_tail);
  if (!std::isfinite(total) || !(total > 0.0)) throw DegenerateWavefunctionError("norm integral is zero or not finite");

  EigenResult out;
  out.energy = energy;
  out.nodes = nodes;
  out.norm_const = 1.0 / std::sqrt(total);
  out.tail_residual = std::abs(ev.mismatch);
  out.match_radius = radii.match;
  out.far_radius = radii.far;
  out.bracket_lo = cfg.e_lo;
  out.bracket_hi = cfg.e_hi;
  out.iterations = evaluations;
  out.series = ev.series;
  for (double& c : out.series.coeffs) c *= out.norm_const;
  out.series.a0 = out.norm_const;
  if (cfg.run_oracle) out.oracle_gap = std::abs(energy - oracle_energy(pot, mass, q, energy, cfg));
  return out;
}

std::vector<SpectrumBracket> scan_spectrum(const PotentialSpec& pot, const MassProfile& mass,
                                           const QuantumNumbers& q, double e_lo, double e_hi, int steps,
                                           const SolverConfig& cfg) {
  if (!(e_lo < e_hi) || !(e_hi < 0.0)) throw ConfigurationError("scan range must satisfy e_lo < e_hi < 0");
  if (steps < 10) throw ConfigurationError("scan needs at least 10 steps");
  check_energy(e_hi);
  const double m0 = mass.m0();
  const double b_deep = b_from_energy(e_lo, m0);
  const double b_shallow = b_from_energy(e_hi, m0);
  const auto energy_at = [&](int j) {
    const double b = b_deep + (b_shallow - b_deep) * j / steps;
    return -b * b / (2.0 * m0);
  };
  // The sign of the Wronskian does not depend on where it is taken, so each
  // grid point may use its own radii.
  const auto mismatch_at = [&](double e) { return evaluate_mismatch(pot, mass, q, e, cfg).mismatch; };

  std::vector<SpectrumBracket> out;
  double e_prev = energy_at(0);
  double f_prev = mismatch_at(e_prev);
  for (int j = 1; j <= steps; ++j) {
    const double e = energy_at(j);
    const double fv = mismatch_at(e);
    if ((fv > 0.0) != (f_prev > 0.0)) {
      // Sturm count at the lower edge: eigenvalues strictly below it.
      const Radii radii = radii_for(pot, mass, q, e_prev, cfg, 0.0, 0.0);
      SeriesSolution s = series_at(pot, mass, q, e_prev, cfg);
      s.log_scale = 0.0;
      const RadialWavefunction w(std::move(s));
      const RadialJet jet = evaluate_jet(w, radii.match);
      const int below = count_nodes(w, radii.match) +
                        outward_zeros(RadialEquation(pot, mass, q, e_prev), jet.value, jet.first, radii.match,
                                      radii.far);
      out.push_back({e_prev, e, below});
    }
    e_prev = e;
    f_prev = fv;
  }
  return out;
}

EigenResult find_state(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e_lo,
                       double e_hi, int steps, const SolverConfig& cfg) {
  const auto brackets = scan_spectrum(pot, mass, q, e_lo, e_hi, steps, cfg);
  for (const SpectrumBracket& br : brackets) {
    if (br.approx_nodes != q.radial_n()) continue;
    SolverConfig local = cfg;
    local.e_lo = br.e_lo;
    local.e_hi = br.e_hi;
    return find_eigenvalue(pot, mass, q, local);
  }
  throw BracketError("no bracket with " + std::to_string(q.radial_n()) + " nodes in [" + std::to_string(e_lo) +
                     ", " + std::to_string(e_hi) + "]");
}

double coulomb_reference_energy(double a_coupling, double m0, const QuantumNumbers& q) {
  if (!(a_coupling > 0.0)) throw DomainError("Coulomb coupling must be > 0");
  if (!(m0 > 0.0)) throw DomainError("m0 must be > 0");
  const double nu = q.radial_n() + 0.5 * (q.k() - 1);
  if (!(nu > 0.0)) throw StructuralError("n + (k-1)/2 vanishes");
  return -a_coupling * a_coupling * m0 / (2.0 * nu * nu);
}

std::vector<double> sample_state(const PotentialSpec& pot, const MassProfile& mass, const EigenResult& result,
                                 const std::vector<double>& radii) {
  const SeriesSolution& s = result.series;
  const RadialWavefunction w(s);
  const double r_match = result.match_radius;
  const double r_far = result.far_radius;

  std::vector<double> outer;
  for (double r : radii) {
    if (!(r >= 0.0)) throw DomainError("sample radius must be >= 0");
    if (r > r_match && r <= r_far) outer.push_back(r);
  }
  std::sort(outer.begin(), outer.end(), std::greater<>());
  outer.erase(std::unique(outer.begin(), outer.end()), outer.end());

  const RadialEquation eq(pot, mass, s.quantum, result.energy);
  const InwardResult inward = integrate_inward(eq, r_far, r_match, outer);
  const RadialJet jet = evaluate_jet(w, r_match);
  const double b = s.b;
  const double ri = inward.end[0];
  const double dri = inward.end[1];
  const double amp = (jet.value * ri + jet.first * dri / (b * b)) / (ri * ri + dri * dri / (b * b));

  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) {
    if (r <= r_match) {
      values.push_back(evaluate(w, r).value);
    } else if (r <= r_far) {
      const auto it = std::find(outer.begin(), outer.end(), r);
      values.push_back(amp * inward.stops[static_cast<std::size_t>(it - outer.begin())]);
    } else {
      values.push_back(amp * inward.far_value * std::exp(-inward.far_decay * (r - r_far)));
    }
  }
  return values;
}

}  // namespace pdmseries
