#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include <pdmseries/mass_expansion.hpp>
#include <pdmseries/recurrence.hpp>
#include <pdmseries/wavefunction.hpp>

namespace {

using namespace pdmseries;

SeriesSolution coulomb_state(double a, double m0, const QuantumNumbers& q, int order = 32, double a0 = 1.0) {
  const double b = a * m0 / (q.radial_n() + q.ell() + 1.0);
  return generate_coefficients(RecurrenceKind::coulomb(), make_coulomb(a), constant_mass(m0), q, -b * b / (2.0 * m0),
                               order, a0);
}

TEST(Evaluate, VanishesAtOriginForPositivePower) {
  const RadialWavefunction w(coulomb_state(1.0, 1.0, QuantumNumbers(3, 0, 0)));
  EXPECT_EQ(evaluate(w, 0.0).value, 0.0);
  EXPECT_THROW(evaluate(w, -1.0), DomainError);
}

TEST(Evaluate, CoulombGroundStateAtBohrRadius) {
  const double a = 0.5, m0 = 1.5;
  const RadialWavefunction w(coulomb_state(a, m0, QuantumNumbers(3, 0, 0)));
  const double r = 1.0 / (a * m0);
  EXPECT_NEAR(evaluate(w, r).value, std::exp(-1.0) / (a * m0), 1e-15);
}

TEST(Evaluate, LinearInA0) {
  const PotentialSpec pot = make_cornell(1.0, 0.3, -0.2);
  const MassProfile mass = expand_exponential(1.0, 0.2, 24);
  const QuantumNumbers q(3, 1, 0);
  const RadialWavefunction one(generate_coefficients(RecurrenceKind::general(), pot, mass, q, -0.7, 24));
  const RadialWavefunction two(generate_coefficients(RecurrenceKind::general(), pot, mass, q, -0.7, 24, 2.0));
  for (double r : {0.1, 0.5, 1.0, 1.7}) EXPECT_NEAR(evaluate(two, r).value, 2.0 * evaluate(one, r).value, 1e-14);
}

TEST(Evaluate, SmallRadiusPowerLaw) {
  // R ~ a0 r^((k-1)/2) near the origin, including half-integer powers.
  for (int dim : {2, 4}) {
    const QuantumNumbers q(dim, 0, 0);
    const RadialWavefunction w(generate_coefficients(RecurrenceKind::general(), make_cornell(1.0, 0.1, 0.0),
                                                     constant_mass(1.0), q, -0.5, 16));
    const double r = 1e-8;
    EXPECT_NEAR(evaluate(w, r).value / std::pow(r, 0.5 * (q.k() - 1)), 1.0, 1e-6) << dim;
  }
}

TEST(Evaluate, ExtrapolationFlagBeyondTrustRegion) {
  const RadialWavefunction w(generate_coefficients(RecurrenceKind::general(), make_cornell(1.0, 0.5, 0.0),
                                                   constant_mass(1.0), QuantumNumbers(3, 0, 0), -0.4, 16));
  ASSERT_LT(w.eval_cutoff(), kTrustRadiusCap);
  EXPECT_FALSE(evaluate(w, 0.5 * w.eval_cutoff()).extrapolated);
  EXPECT_TRUE(evaluate(w, 2.0 * w.eval_cutoff()).extrapolated);
}

TEST(Evaluate, TerminatingSeriesIsTrustedEverywhere) {
  const RadialWavefunction w(coulomb_state(1.0, 1.0, QuantumNumbers(3, 0, 2)));
  EXPECT_GT(w.eval_cutoff(), 1e3);
}

TEST(Evaluate, JetMatchesFiniteDifferences) {
  const PotentialSpec pot = make_cornell(0.8, 0.3, -0.1);
  const MassProfile mass = expand_exponential(1.0, 0.15, 40);
  const RadialWavefunction w(generate_coefficients(RecurrenceKind::general(), pot, mass, QuantumNumbers(4, 1, 0), -0.6, 40));
  for (double r : {0.3, 0.9, 1.6}) {
    const double h = 1e-4;
    const RadialJet j = evaluate_jet(w, r);
    const double fp = evaluate(w, r + h).value, fm = evaluate(w, r - h).value, f0 = evaluate(w, r).value;
    EXPECT_NEAR(j.value, f0, 1e-15);
    EXPECT_NEAR(j.first, (fp - fm) / (2.0 * h), 1e-7 * std::max(1.0, std::abs(j.first)));
    EXPECT_NEAR(j.second, (fp - 2.0 * f0 + fm) / (h * h), 1e-5 * std::max(1.0, std::abs(j.second)));
  }
}

TEST(Evaluate, MatchesCoulombPolynomialForm) {
  const double a = 1.2, m0 = 0.9;
  for (int l = 0; l <= 2; ++l)
    for (int n = 0; n <= 3; ++n) {
      const QuantumNumbers q(3, l, n);
      const RadialWavefunction w(coulomb_state(a, m0, q));
      const double b = a * m0 / (n + l + 1.0);
      const double r_end = 10.0 / (a * m0);
      for (int j = 1; j <= 50; ++j) {
        const double r = r_end * j / 50.0;
        double poly = 0.0;
        for (int i = 0; i <= n; ++i) poly += coulomb_closed_form_coefficient(a, m0, q, i) * std::pow(r, i);
        const double ref = std::pow(r, l + 1) * std::exp(-b * r) * poly;
        EXPECT_NEAR(evaluate(w, r).value, ref, 1e-10) << "l=" << l << " n=" << n << " r=" << r;
      }
    }
}

TEST(Normalize, CoulombGroundStateAmplitude) {
  const double a = 0.5, m0 = 1.5;
  const RadialWavefunction w = normalize(RadialWavefunction(coulomb_state(a, m0, QuantumNumbers(3, 0, 0))), 60.0);
  EXPECT_TRUE(w.normalized());
  EXPECT_NEAR(w.solution().a0, 2.0 * std::pow(a * m0, 1.5), 1e-10);
  EXPECT_NEAR(w.solution().coefficient(0), 2.0 * std::pow(a * m0, 1.5), 1e-10);
}

TEST(Normalize, ProjectiveInvariance) {
  const QuantumNumbers q(3, 1, 2);
  const RadialWavefunction x = normalize(RadialWavefunction(coulomb_state(1.0, 1.0, q, 32, 1.0)), 120.0);
  const RadialWavefunction y = normalize(RadialWavefunction(coulomb_state(1.0, 1.0, q, 32, 2.0)), 120.0);
  for (double r : {0.5, 3.0, 10.0, 25.0}) EXPECT_NEAR(evaluate(x, r).value, evaluate(y, r).value, 1e-13);
}

TEST(Normalize, UnitNormByIndependentQuadrature) {
  const QuantumNumbers q(3, 0, 1);
  const RadialWavefunction w = normalize(RadialWavefunction(coulomb_state(1.0, 1.0, q)), 80.0);
  // Composite Simpson on a fine grid as an independent check.
  const int n = 20000;
  const double h = 80.0 / n;
  double s = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double v = evaluate(w, j * h).value;
    s += (j == 0 || j == n ? 1.0 : (j % 2 ? 4.0 : 2.0)) * v * v;
  }
  EXPECT_NEAR(s * h / 3.0, 1.0, 1e-9);
}

TEST(Normalize, RejectsRadiusOutsideTrustRegion) {
  const RadialWavefunction w(generate_coefficients(RecurrenceKind::general(), make_cornell(1.0, 0.5, 0.0),
                                                   constant_mass(1.0), QuantumNumbers(3, 0, 0), -0.4, 16));
  EXPECT_THROW(normalize(w, 2.0 * w.eval_cutoff()), DomainError);
  EXPECT_THROW(normalize(w, 0.0), DomainError);
}

TEST(OdeResidual, ExactCoulombPolynomialSolvesTheEquation) {
  for (int n = 0; n <= 3; ++n) {
    const QuantumNumbers q(3, 1, n);
    const RadialWavefunction w(coulomb_state(1.0, 1.0, q));
    const double e = w.solution().energy;
    double peak = 0.0;
    for (int j = 1; j <= 200; ++j) peak = std::max(peak, std::abs(evaluate(w, 0.1 * j).value));
    for (int j = 1; j <= 50; ++j) {
      const double r = 0.1 + 4.9 * j / 50.0;
      EXPECT_LT(ode_residual(w, make_coulomb(1.0), constant_mass(1.0), e, r), 1e-10 * peak) << n << " " << r;
    }
  }
}

TEST(OdeResidual, SingularAtOrigin) {
  const RadialWavefunction w(coulomb_state(1.0, 1.0, QuantumNumbers(3, 0, 0)));
  EXPECT_THROW(ode_residual(w, make_coulomb(1.0), constant_mass(1.0), -0.5, 0.0), DomainError);
}

TEST(OdeResidual, DecreasesWithTruncationOrder) {
  const PotentialSpec pot = make_cornell(1.0, 0.2, -0.5);
  const MassProfile mass = expand_exponential(1.0, 0.1, 64);
  const QuantumNumbers q(3, 1, 0);
  const double e = -0.9;
  const double cut8 = RadialWavefunction(generate_coefficients(RecurrenceKind::general(), pot, mass, q, e, 8)).eval_cutoff();
  for (double frac : {0.25, 0.5, 0.9}) {
    const double r = frac * cut8;
    double prev = std::numeric_limits<double>::infinity();
    for (int order : {8, 16, 32, 64}) {
      const RadialWavefunction w(generate_coefficients(RecurrenceKind::general(), pot, mass, q, e, order));
      const ResidualBreakdown rb = ode_residual_breakdown(w, pot, mass, e, r);
      const double floor = 1e-12 * rb.scale;
      if (prev > floor) EXPECT_LT(rb.residual, std::max(prev, floor)) << "r=" << r << " order=" << order;
      prev = rb.residual;
    }
  }
}

TEST(CountNodes, CoulombStates) {
  EXPECT_EQ(count_nodes(RadialWavefunction(coulomb_state(1.0, 1.0, QuantumNumbers(3, 0, 0))), 40.0), 0);
  const RadialWavefunction w(coulomb_state(1.0, 1.0, QuantumNumbers(3, 0, 2)));
  EXPECT_EQ(count_nodes(w, 60.0), 2);
  // Roots of 1 + a1 r + a2 r^2.
  const double a1 = coulomb_closed_form_coefficient(1.0, 1.0, QuantumNumbers(3, 0, 2), 1);
  const double a2 = coulomb_closed_form_coefficient(1.0, 1.0, QuantumNumbers(3, 0, 2), 2);
  const double disc = std::sqrt(a1 * a1 - 4.0 * a2);
  const double r1 = (-a1 - disc) / (2.0 * a2), r2 = (-a1 + disc) / (2.0 * a2);
  EXPECT_EQ(count_nodes(w, 0.5 * (r1 + r2)), 1);
  EXPECT_EQ(count_nodes(w, 0.99 * std::min(r1, r2)), 0);
}

TEST(CountNodes, SignInvariant) {
  for (int n = 0; n <= 4; ++n) {
    const QuantumNumbers q(3, 1, n);
    const RadialWavefunction plus(coulomb_state(1.0, 1.0, q, 32, 1.0));
    const RadialWavefunction minus(coulomb_state(1.0, 1.0, q, 32, -1.0));
    EXPECT_EQ(count_nodes(plus, 120.0), n);
    EXPECT_EQ(count_nodes(minus, 120.0), n);
  }
}

TEST(CountNodes, RejectsBadArguments) {
  const RadialWavefunction w(coulomb_state(1.0, 1.0, QuantumNumbers(3, 0, 0)));
  EXPECT_THROW(count_nodes(w, 10.0, 50), DomainError);
  EXPECT_THROW(count_nodes(w, 0.0), DomainError);
}

}  // namespace
