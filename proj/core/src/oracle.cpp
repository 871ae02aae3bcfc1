#include "pdmseries/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pdmseries/errors.hpp"

namespace pdmseries::oracle {

namespace {

constexpr double kOverflow = 1e200;
constexpr double kFarDecay = 60.0;

using State = std::array<double, 2>;

struct Problem {
  const PotentialSpec& pot;
  const MassProfile& mass;
  int dim;
  int ell;
  int k;
  double e;
  double centrifugal;
  double b;

  Problem(const PotentialSpec& p, const MassProfile& m, const QuantumNumbers& q, double energy)
      : pot(p),
        mass(m),
        dim(q.dim_n()),
        ell(q.ell()),
        k(q.k()),
        e(energy),
        centrifugal((q.k() - 1.0) * (q.k() - 3.0) / 4.0),
        b(std::sqrt(-2.0 * m.m0() * energy)) {}

  // R'' from the radial equation with the m'/m coupling kept explicit.
  double second(double r, double value, double slope) const {
    const double g = mass.logderiv(r);
    return g * slope - g * (dim - 1) / (2.0 * r) * value + centrifugal / (r * r) * value -
           2.0 * mass.value(r) * (e - pot(r)) * value;
  }

  double q_eff(double r) const {
    const double g = mass.logderiv(r);
    return centrifugal / (r * r) - g * (dim - 1) / (2.0 * r) + 2.0 * mass.value(r) * (pot(r) - e);
  }

  // Decaying root of mu^2 + g mu - q_eff = 0.
  double local_decay(double r) const {
    const double g = mass.logderiv(r);
    const double disc = std::max(g * g + 4.0 * q_eff(r), 0.0);
    return 0.5 * (std::sqrt(disc) - g);
  }
};

void validate(const QuantumNumbers& q, double e) {
  if (!(e < 0.0)) throw BoundStateError("oracle needs E < 0, got " + std::to_string(e));
  if (q.k() < 2) throw StructuralError("k = 1 has no regular power-law start at the origin");
}

double outer_turning_point(const Problem& p) {
  constexpr int kSamples = 4000;
  const double lo = std::log(1e-4 / p.b);
  const double hi = std::log(1e4 / p.b);
  int last_allowed = -1;
  for (int j = 0; j < kSamples; ++j) {
    const double r = std::exp(lo + (hi - lo) * j / (kSamples - 1));
    if (p.q_eff(r) < 0.0) last_allowed = j;
  }
  if (last_allowed < 0) return 1.0 / p.b;
  if (last_allowed == kSamples - 1) return std::exp(hi);
  double a = std::exp(lo + (hi - lo) * last_allowed / (kSamples - 1));
  double c = std::exp(lo + (hi - lo) * (last_allowed + 1) / (kSamples - 1));
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (a + c);
    (p.q_eff(mid) < 0.0 ? a : c) = mid;
  }
  return 0.5 * (a + c);
}

double auto_far_radius(const Problem& p, double r_turn) {
  const double floor_radius = r_turn + 20.0 / p.b;
  const double dr = 0.01 / p.b;
  double r = r_turn;
  double phase = 0.0;
  for (int it = 0; it < 10000000; ++it) {
    const double g = p.mass.logderiv(r + 0.5 * dr);
    phase += std::sqrt(std::max(g * g + 4.0 * p.q_eff(r + 0.5 * dr), 0.0)) * dr;
    r += dr;
    if (phase >= kFarDecay && r >= floor_radius) break;
  }
  return std::max(r, 20.0 / p.b);
}

struct Leg {
  RadialSamples samples;
  State end{};
  double end_r = 0.0;
};

// Fixed-step RK4. Outward legs step in x = ln r with state (R, r R'); inward
// legs step in r with state (R, R').
Leg integrate_leg(const Problem& p, double r_from, double r_to, int points, Direction dir, bool keep) {
  Leg leg;
  if (keep) {
    leg.samples.r.reserve(static_cast<std::size_t>(points));
    leg.samples.value.reserve(static_cast<std::size_t>(points));
    leg.samples.derivative.reserve(static_cast<std::size_t>(points));
  }
  const auto rescale_if_needed = [&](State& y) {
    const double big = std::max(std::abs(y[0]), std::abs(y[1]));
    if (big < kOverflow) return;
    const double f = 1.0 / big;
    y[0] *= f;
    y[1] *= f;
    for (double& v : leg.samples.value) v *= f;
    for (double& v : leg.samples.derivative) v *= f;
  };

  if (dir == Direction::outward) {
    const double s = 0.5 * (p.k - 1);
    const double v1_term = p.pot.alpha() == 1 ? p.pot.v1() : 0.0;
    const double c1 = (p.ell * p.mass.logderiv(0.0) - 2.0 * p.mass.m0() * v1_term) / (p.k - 1);
    const double x0 = std::log(r_from);
    const double hx = (std::log(r_to) - x0) / (points - 1);
    const auto f = [&](double x, const State& y) -> State {
      const double r = std::exp(x);
      return {y[1], y[1] + r * r * p.second(r, y[0], y[1] / r)};
    };
    State y{1.0 + c1 * r_from, s * (1.0 + c1 * r_from) + c1 * r_from};
    for (int j = 0; j < points; ++j) {
      const double x = x0 + j * hx;
      if (keep) {
        const double r = std::exp(x);
        leg.samples.r.push_back(r);
        leg.samples.value.push_back(y[0]);
        leg.samples.derivative.push_back(y[1] / r);
      }
      if (j == points - 1) break;
      const State k1 = f(x, y);
      const State k2 = f(x + 0.5 * hx, {y[0] + 0.5 * hx * k1[0], y[1] + 0.5 * hx * k1[1]});
      const State k3 = f(x + 0.5 * hx, {y[0] + 0.5 * hx * k2[0], y[1] + 0.5 * hx * k2[1]});
      const State k4 = f(x + hx, {y[0] + hx * k3[0], y[1] + hx * k3[1]});
      y[0] += hx / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
      y[1] += hx / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
      rescale_if_needed(y);
    }
    leg.end_r = r_to;
    leg.end = {y[0], y[1] / r_to};
    return leg;
  }

  const double h = (r_to - r_from) / (points - 1);
  const auto f = [&](double r, const State& y) -> State { return {y[1], p.second(r, y[0], y[1])}; };
  State y{1.0, -p.local_decay(r_from)};
  for (int j = 0; j < points; ++j) {
    const double r = r_from + j * h;
    if (keep) {
      leg.samples.r.push_back(r);
      leg.samples.value.push_back(y[0]);
      leg.samples.derivative.push_back(y[1]);
    }
    if (j == points - 1) break;
    const State k1 = f(r, y);
    const State k2 = f(r + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const State k3 = f(r + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const State k4 = f(r + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    rescale_if_needed(y);
  }
  leg.end_r = r_to;
  leg.end = y;
  return leg;
}

// Angle of (R, R'/b); insensitive to the overall scale of the solution.
double angle(const State& y, double b) { return std::atan2(y[1] / b, y[0]); }

double angle_gap(double a, double c) {
  double d = std::fmod(std::abs(a - c), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

int sign_changes(const std::vector<double>& v) {
  int count = 0;
  int last = 0;
  for (double x : v) {
    if (x == 0.0) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

double wronskian(const State& out, const State& in, double b) {
  const double n_out = std::hypot(out[0], out[1] / b);
  const double n_in = std::hypot(in[0], in[1] / b);
  return (out[0] * in[1] - out[1] * in[0]) / (b * n_out * n_in);
}

struct Radii {
  double turn;
  double far;
};

MatchSample match_at(const Problem& p, const GridSpec& grid, Radii radii, bool check_resolution) {
  const Leg out = integrate_leg(p, grid.r_min, radii.turn, grid.points, Direction::outward, true);
  const Leg in = integrate_leg(p, radii.far, radii.turn, grid.points, Direction::inward, true);
  MatchSample m;
  m.match_radius = radii.turn;
  m.mismatch = wronskian(out.end, in.end, p.b);
  m.nodes = sign_changes(out.samples.value) + sign_changes(in.samples.value);
  if (check_resolution) {
    const int fine = 2 * grid.points - 1;
    const Leg out2 = integrate_leg(p, grid.r_min, radii.turn, fine, Direction::outward, false);
    const Leg in2 = integrate_leg(p, radii.far, radii.turn, fine, Direction::inward, false);
    m.resolution = std::max(angle_gap(angle(out.end, p.b), angle(out2.end, p.b)),
                            angle_gap(angle(in.end, p.b), angle(in2.end, p.b)));
  }
  return m;
}

Radii auto_radii(const Problem& p, const GridSpec& grid, double match_radius) {
  Radii radii{};
  radii.turn = match_radius > 0.0 ? match_radius : outer_turning_point(p);
  radii.far = grid.r_max > 0.0 ? grid.r_max : auto_far_radius(p, radii.turn);
  if (!(radii.far > radii.turn)) throw DomainError("outer grid radius must exceed the match radius");
  if (!(radii.turn > grid.r_min)) throw DomainError("match radius must exceed r_min");
  return radii;
}

void check_grid(const GridSpec& grid) {
  if (!(grid.r_min > 0.0)) throw DomainError("grid r_min must be > 0");
  if (grid.points < 1000) throw DomainError("grid needs at least 1000 points");
}

}  // namespace

RadialSamples integrate_radial(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                               const GridSpec& grid, Direction direction) {
  validate(q, e);
  check_grid(grid);
  const Problem p(pot, mass, q, e);
  GridSpec g = grid;
  if (!(g.r_max > 0.0)) g.r_max = auto_far_radius(p, outer_turning_point(p));
  if (!(g.r_max > g.r_min)) throw DomainError("grid r_max must exceed r_min");

  const bool outward = direction == Direction::outward;
  const double from = outward ? g.r_min : g.r_max;
  const double to = outward ? g.r_max : g.r_min;
  Leg leg = integrate_leg(p, from, to, g.points, direction, true);
  const Leg fine = integrate_leg(p, from, to, 2 * g.points - 1, direction, false);
  const double err = angle_gap(angle(leg.end, p.b), angle(fine.end, p.b));
  if (!(err <= kResolutionThreshold))
    throw ResolutionError("step-halving changes the end state by " + std::to_string(err));
  return std::move(leg.samples);
}

MatchSample match(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e,
                  const GridSpec& grid, double match_radius) {
  validate(q, e);
  check_grid(grid);
  const Problem p(pot, mass, q, e);
  return match_at(p, grid, auto_radii(p, grid, match_radius), true);
}

OracleResult numerov_eigenvalue(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                                double e_lo, double e_hi, const GridSpec& grid) {
  if (!(e_lo < e_hi)) throw BracketError("oracle bracket needs e_lo < e_hi");
  validate(q, e_hi);
  check_grid(grid);

  // Radii stay fixed across the bracket so the matching function is continuous.
  const Problem mid_problem(pot, mass, q, 0.5 * (e_lo + e_hi));
  const Problem hi_problem(pot, mass, q, e_hi);
  Radii radii{};
  radii.turn = outer_turning_point(mid_problem);
  radii.far = grid.r_max > 0.0 ? grid.r_max : auto_far_radius(hi_problem, outer_turning_point(hi_problem));

  const auto f = [&](double e) { return match_at(Problem(pot, mass, q, e), grid, radii, false).mismatch; };
  double lo = e_lo;
  double hi = e_hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, match_at(Problem(pot, mass, q, lo), grid, radii, false).nodes, 0};
  if (f_hi == 0.0) return {hi, match_at(Problem(pot, mass, q, hi), grid, radii, false).nodes, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw BracketError("matching function has no sign change in [" + std::to_string(e_lo) + ", " +
                       std::to_string(e_hi) + "]");

  OracleResult result;
  for (; result.iterations < 200; ++result.iterations) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-11 * std::abs(mid)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  result.energy = 0.5 * (lo + hi);
  const MatchSample final = match_at(Problem(pot, mass, q, result.energy), grid, radii, true);
  if (!(final.resolution <= kResolutionThreshold))
    throw ResolutionError("oracle grid under-resolved: step halving moves the matching angle by " +
                          std::to_string(final.resolution));
  result.nodes = final.nodes;
  return result;
}

std::vector<OracleBracket> scan(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                                double e_lo, double e_hi, int steps, const GridSpec& grid) {
  if (!(e_lo < e_hi) || !(e_hi < 0.0)) throw DomainError("scan range must satisfy e_lo < e_hi < 0");
  if (steps < 10) throw DomainError("scan needs at least 10 steps");
  validate(q, e_hi);
  check_grid(grid);
  const double m0 = mass.m0();
  const double b_shallow = std::sqrt(-2.0 * m0 * e_hi);
  const double b_deep = std::sqrt(-2.0 * m0 * e_lo);
  const auto energy_at = [&](int j) {
    const double b = b_deep + (b_shallow - b_deep) * j / steps;
    return -b * b / (2.0 * m0);
  };
  const auto mismatch_at = [&](double e) {
    const Problem p(pot, mass, q, e);
    return match_at(p, grid, auto_radii(p, grid, 0.0), false).mismatch;
  };

  std::vector<OracleBracket> out;
  double e_prev = energy_at(0);
  double f_prev = mismatch_at(e_prev);
  for (int j = 1; j <= steps; ++j) {
    const double e = energy_at(j);
    const double f = mismatch_at(e);
    if ((f > 0.0) != (f_prev > 0.0)) {
      const double e_mid = 0.5 * (e_prev + e);
      const Problem p(pot, mass, q, e_mid);
      out.push_back({e_prev, e, match_at(p, grid, auto_radii(p, grid, 0.0), false).nodes});
    }
    e_prev = e;
    f_prev = f;
  }
  return out;
}

OracleResult find_state(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e_lo,
                        double e_hi, int steps, const GridSpec& grid) {
  for (const OracleBracket& br : scan(pot, mass, q, e_lo, e_hi, steps, grid)) {
    if (br.nodes == q.radial_n()) return numerov_eigenvalue(pot, mass, q, br.e_lo, br.e_hi, grid);
  }
  throw BracketError("no bracket with " + std::to_string(q.radial_n()) + " nodes in [" + std::to_string(e_lo) +
                     ", " + std::to_string(e_hi) + "]");
}

}  // namespace pdmseries::oracle
