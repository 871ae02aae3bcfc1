#include "pdmseries/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdmseries/errors.hpp"

namespace pdmseries {

ConvolutionTables::ConvolutionTables(const MassProfile& mass, int capacity) {
  const auto n = static_cast<std::size_t>(capacity) + 1;
  mass_.resize(n);
  logderiv_.resize(n);
  for (int i = 0; i <= capacity; ++i) {
    mass_[static_cast<std::size_t>(i)] = mass.mass_series().at(i);
    logderiv_[static_cast<std::size_t>(i)] = mass.logderiv_series().at(i);
  }
  a_.reserve(n);
  m_.reserve(n);
  mprime_.reserve(n);
  t_.reserve(n);
}

void ConvolutionTables::append(double a) {
  a_.push_back(a);
  const int i = filled_to();
  if (i >= static_cast<int>(mass_.size())) throw DomainError("convolution tables are full");
  double m = 0.0;
  double mp = 0.0;
  double t = 0.0;
  for (int j = 0; j <= i; ++j) {
    const double aj = a_[static_cast<std::size_t>(j)];
    const auto nu = static_cast<std::size_t>(i - j);
    m += aj * mass_[nu];
    mp += aj * logderiv_[nu];
    t += j * aj * logderiv_[nu];
  }
  m_.push_back(m);
  mprime_.push_back(mp);
  t_.push_back(t);
}

void ConvolutionTables::rescale(double factor) {
  for (auto* v : {&a_, &m_, &mprime_, &t_})
    for (double& x : *v) x *= factor;
}

ConvolutionTables ConvolutionTables::recompute(const MassProfile& mass, std::span<const double> coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  ConvolutionTables tables(mass, std::max(n, 0));
  tables.a_.assign(coeffs.begin(), coeffs.end());
  for (int i = 0; i <= n; ++i) {
    double m = 0.0;
    double mp = 0.0;
    double t = 0.0;
    for (int nu = 0; nu <= i; ++nu) {
      const int j = i - nu;
      m += coeffs[static_cast<std::size_t>(j)] * tables.mass_[static_cast<std::size_t>(nu)];
      mp += coeffs[static_cast<std::size_t>(j)] * tables.logderiv_[static_cast<std::size_t>(nu)];
      t += j * coeffs[static_cast<std::size_t>(j)] * tables.logderiv_[static_cast<std::size_t>(nu)];
    }
    tables.m_.push_back(m);
    tables.mprime_.push_back(mp);
    tables.t_.push_back(t);
  }
  return tables;
}

std::string_view to_string(RecurrenceKind::Tag tag) noexcept {
  switch (tag) {
    case RecurrenceKind::Tag::general: return "general";
    case RecurrenceKind::Tag::coulomb: return "coulomb";
    case RecurrenceKind::Tag::oscillator: return "oscillator";
    case RecurrenceKind::Tag::linear: return "linear";
    case RecurrenceKind::Tag::cornell: return "cornell";
    case RecurrenceKind::Tag::exp_mass_cornell: return "exp_mass_cornell";
  }
  return "unknown";
}

namespace {

using Tag = RecurrenceKind::Tag;

void require(bool ok, Tag tag, const char* what) {
  if (!ok) throw DomainError(std::string(to_string(tag)) + " recurrence: " + what);
}

void validate_kind(const RecurrenceKind& kind, const PotentialSpec& pot, const MassProfile& mass) {
  switch (kind.tag) {
    case Tag::general: break;
    case Tag::coulomb:
      require(pot.alpha() == 1 && pot.v2() == 0.0 && pot.v3() == 0.0, kind.tag,
              "needs alpha = 1 and v2 = v3 = 0");
      break;
    case Tag::oscillator:
      require(pot.beta() == 2 && pot.v1() == 0.0 && pot.v3() == 0.0, kind.tag,
              "needs beta = 2 and v1 = v3 = 0");
      break;
    case Tag::linear:
      require(pot.beta() == 1 && pot.v1() == 0.0 && pot.v3() == 0.0, kind.tag,
              "needs beta = 1 and v1 = v3 = 0");
      break;
    case Tag::cornell:
      require(pot.alpha() == 1 && pot.beta() == 1, kind.tag, "needs alpha = beta = 1");
      break;
    case Tag::exp_mass_cornell:
      require(pot.alpha() == 1 && pot.beta() == 1, kind.tag, "needs alpha = beta = 1");
      require(kind.lambda > 0.0, kind.tag, "needs lambda > 0");
      require(mass.kind() == MassKind::exponential && mass.lambda() == kind.lambda, kind.tag,
              "mass profile must be the exponential profile with the same lambda");
      break;
  }
}

// Right-hand side of the r^n balance, divided later by (n+1)(n+k-1).
double master_rhs(const RecurrenceKind& kind, const PotentialSpec& pot, const ConvolutionTables& tb,
                  int n, int k, int ell, double e, double b) {
  const auto a = [&](int i) { return i < 0 ? 0.0 : tb.coeffs()[static_cast<std::size_t>(i)]; };
  double rhs = ((k - 1) + 2.0 * n) * b * a(n) + ell * tb.mprime(n) - b * tb.mprime(n - 1) + tb.t(n) -
               2.0 * e * tb.m(n - 1) - b * b * a(n - 1);
  switch (kind.tag) {
    case Tag::general:
      rhs += -2.0 * pot.v1() * tb.m(n + pot.alpha() - 1) + 2.0 * pot.v2() * tb.m(n - pot.beta() - 1) +
             2.0 * pot.v3() * tb.m(n - 1);
      break;
    case Tag::coulomb: rhs += -2.0 * pot.v1() * tb.m(n); break;
    case Tag::oscillator: rhs += 2.0 * pot.v2() * tb.m(n - 3); break;
    case Tag::linear: rhs += 2.0 * pot.v2() * tb.m(n - 2); break;
    case Tag::cornell:
      rhs += -2.0 * pot.v1() * tb.m(n) + 2.0 * pot.v2() * tb.m(n - 2) + 2.0 * pot.v3() * tb.m(n - 1);
      break;
    case Tag::exp_mass_cornell: break;
  }
  return rhs;
}

SeriesSolution generate_master(const RecurrenceKind& kind, const PotentialSpec& pot, const MassProfile& mass,
                               const QuantumNumbers& q, double e, double b, int order, double a0) {
  const int k = q.k();
  ConvolutionTables tables(mass, order);
  tables.append(a0);
  double log_scale = 0.0;
  for (int n = 0; n < order; ++n) {
    const double denom = (n + 1.0) * (n + k - 1.0);
    const double next = master_rhs(kind, pot, tables, n, k, q.ell(), e, b) / denom;
    tables.append(next);
    if (std::abs(next) > kRescaleThreshold) {
      log_scale += std::log(std::abs(next));
      tables.rescale(1.0 / std::abs(next));
    }
  }
  SeriesSolution sol;
  sol.energy = e;
  sol.b = b;
  sol.coeffs.assign(tables.coeffs().begin(), tables.coeffs().end());
  sol.a0 = a0;
  sol.truncation_order = order;
  sol.quantum = q;
  sol.log_scale = log_scale;
  return sol;
}

// Cornell with m = m0 exp(-lambda r), solved for a_n:
//   n(n+k-2) a_n = [b(k-1) + (2b - lambda)(n-1) - l lambda] a_{n-1} - b(b - lambda) a_{n-2}
//                  - 2E S_{n-2} - 2A S_{n-1} + 2B S_{n-3} + 2C S_{n-2},
// with S_i = sum_{j+nu=i} m_nu a_j.
SeriesSolution generate_expmass(const PotentialSpec& pot, double m0, double lambda, const QuantumNumbers& q,
                                double e, double b, int order, double a0) {
  const int k = q.k();
  const int ell = q.ell();
  std::vector<double> m(static_cast<std::size_t>(order) + 1);
  m[0] = m0;
  for (int nu = 1; nu <= order; ++nu) m[static_cast<std::size_t>(nu)] = m[static_cast<std::size_t>(nu) - 1] * (-lambda) / nu;

  std::vector<double> a;
  a.reserve(static_cast<std::size_t>(order) + 1);
  a.push_back(a0);
  const auto at = [&](int i) { return i < 0 ? 0.0 : a[static_cast<std::size_t>(i)]; };
  const auto conv = [&](int i) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += m[static_cast<std::size_t>(i - j)] * a[static_cast<std::size_t>(j)];
    return s;
  };
  double log_scale = 0.0;
  for (int n = 1; n <= order; ++n) {
    const double denom = static_cast<double>(n) * (n + k - 2.0);
    const double rhs = (b * (k - 1) + (2.0 * b - lambda) * (n - 1) - ell * lambda) * at(n - 1) -
                       b * (b - lambda) * at(n - 2) - 2.0 * e * conv(n - 2) - 2.0 * pot.v1() * conv(n - 1) +
                       2.0 * pot.v2() * conv(n - 3) + 2.0 * pot.v3() * conv(n - 2);
    const double next = rhs / denom;
    a.push_back(next);
    if (std::abs(next) > kRescaleThreshold) {
      const double f = 1.0 / std::abs(next);
      log_scale -= std::log(f);
      for (double& x : a) x *= f;
    }
  }
  SeriesSolution sol;
  sol.energy = e;
  sol.b = b;
  sol.coeffs = std::move(a);
  sol.a0 = a0;
  sol.truncation_order = order;
  sol.quantum = q;
  sol.log_scale = log_scale;
  return sol;
}

void require_channel(const QuantumNumbers& q) {
  if (q.k() <= 1)
    throw StructuralError("k = N + 2l = 1 makes the leading denominator vanish (degenerate channel)");
}

}  // namespace

SeriesSolution generate_coefficients(const RecurrenceKind& kind, const PotentialSpec& pot,
                                     const MassProfile& mass, const QuantumNumbers& q, double e, int order,
                                     double a0) {
  if (order < 1) throw DomainError("truncation order must be >= 1");
  if (a0 == 0.0 || !std::isfinite(a0)) throw DomainError("a0 must be finite and non-zero");
  const double b = b_from_energy(e, mass.m0());
  require_channel(q);
  if (pot.alpha() >= 2 && pot.v1() != 0.0)
    throw StructuralError("alpha >= 2 couples a_{n+1} into M_{n+alpha-1}; only alpha <= 1 is explicit");
  validate_kind(kind, pot, mass);
  if (mass.order() < order)
    throw DomainError("mass series has order " + std::to_string(mass.order()) + " < truncation order " +
                      std::to_string(order));
  if (kind.tag == Tag::exp_mass_cornell) return generate_expmass(pot, mass.m0(), kind.lambda, q, e, b, order, a0);
  return generate_master(kind, pot, mass, q, e, b, order, a0);
}

LeadingCoefficients coefficient_closed_forms_cornell(const PotentialSpec& pot, const MassProfile& mass,
                                                     const QuantumNumbers& q, double e) {
  if (pot.alpha() != 1 || pot.beta() != 1) throw DomainError("Cornell closed forms need alpha = beta = 1");
  require_channel(q);
  const double b = b_from_energy(e, mass.m0());
  const double k = q.k();
  const double l = q.ell();
  const double A = pot.v1(), B = pot.v2(), C = pot.v3();
  const double m0 = mass.m0();
  const double b1 = mass.mass_series().at(1), b2 = mass.mass_series().at(2);
  const SeriesVector& lg = mass.logderiv_series();
  const double p0 = lg.at(0), p1 = lg.at(1), p2 = lg.at(2);

  LeadingCoefficients c;
  c.a1 = b + (l * p0 - 2.0 * A * m0) / (k - 1.0);
  c.a2 = ((k + 1.0) * b + (l + 1.0) * p0 - 2.0 * A * m0) / (2.0 * k) * c.a1 +
         (l * p1 - b * p0 - 2.0 * A * b1 + 2.0 * C * m0) / (2.0 * k);
  const double d3 = 3.0 * (k + 1.0);
  c.a3 = ((k + 3.0) * b + (l + 2.0) * p0 - 2.0 * A * m0) / d3 * c.a2 +
         ((l + 1.0) * p1 - b * p0 - 2.0 * A * b1 + 2.0 * C * m0) / d3 * c.a1 +
         (l * p2 - b * p1 + 2.0 * (C - e) * b1 - 2.0 * A * b2 + 2.0 * B * m0) / d3;
  return c;
}

LeadingCoefficients coefficient_closed_forms_expmass(const PotentialSpec& pot, double m0, double lambda,
                                                     const QuantumNumbers& q, double e) {
  if (pot.alpha() != 1 || pot.beta() != 1) throw DomainError("Cornell closed forms need alpha = beta = 1");
  if (!(lambda > 0.0)) throw DomainError("exponential mass needs lambda > 0");
  require_channel(q);
  const double b = b_from_energy(e, m0);
  const double k = q.k();
  const double l = q.ell();
  const double A = pot.v1(), B = pot.v2(), C = pot.v3();
  const double m1 = -m0 * lambda;
  const double m2 = m0 * lambda * lambda / 2.0;

  LeadingCoefficients c;
  c.a1 = b - (l * lambda + 2.0 * A * m0) / (k - 1.0);
  c.a2 = ((k + 1.0) * b - lambda * (l + 1.0) - 2.0 * A * m0) / (2.0 * k) * c.a1 +
         (2.0 * C * m0 + lambda * b - 2.0 * A * m1) / (2.0 * k);
  const double d3 = 3.0 * (k + 1.0);
  c.a3 = ((k + 3.0) * b - (l + 2.0) * lambda - 2.0 * A * m0) / d3 * c.a2 +
         (lambda * b + 2.0 * C * m0 - 2.0 * A * m1) / d3 * c.a1 +
         (2.0 * B * m0 + 2.0 * (C - e) * m1 - 2.0 * A * m2) / d3;
  return c;
}

LeadingCoefficients coefficient_closed_forms_coulomb_expmass(double a_coupling, double m0, double lambda,
                                                             const QuantumNumbers& q) {
  if (q.dim_n() != 3) throw DomainError("exponential-mass Coulomb closed forms are written for N = 3");
  if (!(a_coupling > 0.0) || !(m0 > 0.0) || !(lambda > 0.0))
    throw DomainError("need A > 0, m0 > 0, lambda > 0");
  const double A = a_coupling;
  const double l = q.ell();
  const double nu = q.radial_n() + l + 1.0;
  const double m1 = -m0 * lambda;
  const double m2 = m0 * lambda * lambda / 2.0;
  const double am = A * m0;

  LeadingCoefficients c;
  c.a1 = am / (l + 1.0) * ((l + 1.0) / nu - l * lambda / (2.0 * am) - 1.0);
  c.a2 = am / (2.0 * l + 3.0) *
         (((l + 2.0) / nu - (l + 1.0) * lambda / (2.0 * am) - 1.0) * c.a1 + (lambda / (2.0 * nu) - m1 / m0));
  // The a_0 term follows from the general a_3 form with E = -b^2 / (2 m0).
  c.a3 = am / (3.0 * (l + 2.0)) *
         (((l + 3.0) / nu - (l + 2.0) * lambda / (2.0 * am) - 1.0) * c.a2 +
          (lambda / (2.0 * nu) - m1 / m0) * c.a1 + (A * m1 / (2.0 * nu * nu) - m2 / m0));
  return c;
}

double coulomb_closed_form_coefficient(double a_coupling, double m0, const QuantumNumbers& q, int i, double a0) {
  if (q.dim_n() != 3) throw DomainError("Coulomb polynomial closed form is written for N = 3");
  if (!(a_coupling > 0.0) || !(m0 > 0.0)) throw DomainError("need A > 0 and m0 > 0");
  if (i < 0) throw DomainError("coefficient index must be >= 0");
  const int n = q.radial_n();
  const int l = q.ell();
  if (i > n) return 0.0;
  if (i == 0) return a0;
  const double x = 2.0 * a_coupling * m0 / (n + l + 1.0);
  const double log_mag = i * std::log(x) + std::lgamma(2.0 * l + 2.0) + std::lgamma(n + 1.0) -
                         std::lgamma(2.0 * l + 2.0 + i) - std::lgamma(n - i + 1.0) - std::lgamma(i + 1.0);
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag) * a0;
}

}  // namespace pdmseries
