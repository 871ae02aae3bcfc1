#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <pdmseries/mass_expansion.hpp>
#include <pdmseries/recurrence.hpp>
#include <pdmseries/wavefunction.hpp>

namespace {

using namespace pdmseries;

double max_coeff(const SeriesSolution& s) {
  double m = 0.0;
  for (int i = 0; i <= s.truncation_order; ++i) m = std::max(m, std::abs(s.coefficient(i)));
  return m;
}

TEST(GenerateCoefficients, CornellConstantMassFirstTwo) {
  const double a = 0.8, bl = 0.3, c = -0.2, m0 = 1.4, e = -0.9;
  const QuantumNumbers q(3, 1, 0);
  const int k = q.k();
  const double b = b_from_energy(e, m0);
  const SeriesSolution s =
      generate_coefficients(RecurrenceKind::general(), make_cornell(a, bl, c), constant_mass(m0), q, e, 4);
  EXPECT_EQ(s.coefficient(0), 1.0);
  const double a1 = b - 2.0 * a * m0 / (k - 1);
  EXPECT_NEAR(s.coefficient(1), a1, 1e-14);
  const double a2 = ((k + 1) * b - 2.0 * a * m0) / (2.0 * k) * a1 + 2.0 * c * m0 / (2.0 * k);
  EXPECT_NEAR(s.coefficient(2), a2, 1e-14);
}

TEST(GenerateCoefficients, ExpMassCornellFirstCoefficient) {
  const double a = 0.6, m0 = 1.1, lambda = 0.3, e = -0.7;
  const QuantumNumbers q(3, 2, 0);
  const double b = b_from_energy(e, m0);
  const SeriesSolution s = generate_coefficients(RecurrenceKind::exp_mass_cornell(lambda), make_cornell(a, 0.2, 0.1),
                                                 expand_exponential(m0, lambda, 6), q, e, 6);
  EXPECT_NEAR(s.coefficient(1), b - (q.ell() * lambda + 2.0 * a * m0) / (q.k() - 1), 1e-14);
}

TEST(GenerateCoefficients, FreeParticleSatisfiesRadialEquation) {
  const PotentialSpec free(0.0, 0.0, 0.0, 1, 1, PotentialSpec::Terms::allow_free);
  const QuantumNumbers q(3, 1, 0);
  const double e = -0.6;
  const RadialWavefunction w(generate_coefficients(RecurrenceKind::general(), free, constant_mass(1.0), q, e, 40));
  for (double r : {0.05, 0.3, 0.6, 0.95}) EXPECT_LT(ode_residual(w, free, constant_mass(1.0), e, r), 1e-10) << r;
}

TEST(GenerateCoefficients, HomogeneousInA0) {
  const PotentialSpec pot = make_cornell(1.0, 0.4, -0.3);
  const MassProfile mass = expand_exponential(1.0, 0.2, 20);
  const QuantumNumbers q(3, 0, 0);
  const SeriesSolution one = generate_coefficients(RecurrenceKind::general(), pot, mass, q, -1.2, 20);
  const SeriesSolution two = generate_coefficients(RecurrenceKind::general(), pot, mass, q, -1.2, 20, 2.5);
  for (int i = 0; i <= 20; ++i) EXPECT_NEAR(two.coefficient(i), 2.5 * one.coefficient(i), 1e-13 * max_coeff(two));
}

TEST(GenerateCoefficients, Errors) {
  const PotentialSpec pot = make_coulomb(1.0);
  const MassProfile mass = constant_mass(1.0);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::general(), pot, mass, QuantumNumbers(3, 0, 0), 0.0, 8),
               BoundStateError);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::general(), pot, mass, QuantumNumbers(1, 0, 0), -0.5, 8),
               StructuralError);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::general(), PotentialSpec(1.0, 0.0, 0.0, 2, 0), mass,
                                     QuantumNumbers(3, 0, 0), -0.5, 8),
               StructuralError);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::general(), pot, mass, QuantumNumbers(3, 0, 0), -0.5, 0),
               DomainError);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::general(), pot, expand_exponential(1.0, 0.1, 4),
                                     QuantumNumbers(3, 0, 0), -0.5, 10),
               DomainError);
}

TEST(GenerateCoefficients, SpecializedKindRejectsWrongPotential) {
  const MassProfile mass = constant_mass(1.0);
  const QuantumNumbers q(3, 0, 0);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::coulomb(), make_cornell(1.0, 0.1, 0.0), mass, q, -0.5, 8),
               DomainError);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::oscillator(), make_linear(1.0), mass, q, -0.5, 8), DomainError);
  EXPECT_THROW(generate_coefficients(RecurrenceKind::exp_mass_cornell(0.2), make_cornell(1.0, 0.1, 0.0),
                                     expand_exponential(1.0, 0.3, 8), q, -0.5, 8),
               DomainError);
}

TEST(GenerateCoefficients, RescalesInsteadOfOverflowing) {
  // Deep binding makes b large, so the raw coefficients grow like b^n / n!.
  const SeriesSolution s = generate_coefficients(RecurrenceKind::general(), make_cornell(1.0, 5.0, 0.0),
                                                 constant_mass(1.0), QuantumNumbers(3, 0, 0), -1e6, 400);
  for (double c : s.coeffs) EXPECT_TRUE(std::isfinite(c));
  EXPECT_NE(s.log_scale, 0.0);
}

TEST(SpecializedRecurrences, MatchGeneralExactly) {
  const QuantumNumbers q(4, 1, 0);
  const MassProfile mass = custom_mass({1.2, -0.1, 0.05}, 30);
  struct Case {
    RecurrenceKind kind;
    PotentialSpec pot;
  };
  const Case cases[] = {{RecurrenceKind::coulomb(), make_coulomb(0.9)},
                        {RecurrenceKind::oscillator(), make_oscillator(0.7)},
                        {RecurrenceKind::linear(), make_linear(0.4)},
                        {RecurrenceKind::cornell(), make_cornell(0.9, 0.4, -0.3)}};
  for (const Case& c : cases) {
    const SeriesSolution x = generate_coefficients(c.kind, c.pot, mass, q, -0.8, 30);
    const SeriesSolution y = generate_coefficients(RecurrenceKind::general(), c.pot, mass, q, -0.8, 30);
    const double scale = max_coeff(y);
    for (int i = 0; i <= 30; ++i)
      EXPECT_NEAR(x.coefficient(i), y.coefficient(i), 1e-14 * scale) << to_string(c.kind.tag) << " i=" << i;
  }
}

TEST(ExpMassRecursion, AgreesWithMasterRecurrenceToOrderTwenty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.1 + 1.9 * u(rng);
    const double bl = u(rng);
    const double c = 2.0 * u(rng) - 1.0;
    const double m0 = 0.5 + 1.5 * u(rng);
    const double lambda = 0.01 + u(rng);
    const double e = -0.05 - 2.95 * u(rng);
    const QuantumNumbers q(2 + trial % 4, trial % 3, 0);
    const PotentialSpec pot = make_cornell(a, bl, c);
    const MassProfile mass = expand_exponential(m0, lambda, 20);
    const SeriesSolution x = generate_coefficients(RecurrenceKind::exp_mass_cornell(lambda), pot, mass, q, e, 20);
    const SeriesSolution y = generate_coefficients(RecurrenceKind::general(), pot, mass, q, e, 20);
    const double scale = max_coeff(y);
    for (int i = 0; i <= 20; ++i) EXPECT_NEAR(x.coefficient(i), y.coefficient(i), 1e-12 * scale);
  }
}

TEST(CornellClosedForms, MatchRecurrence) {
  const PotentialSpec pot = make_cornell(0.7, 0.25, -0.4);
  const MassProfile mass = custom_mass({1.3, 0.2, -0.15, 0.05}, 8);
  const QuantumNumbers q(3, 2, 0);
  const LeadingCoefficients c = coefficient_closed_forms_cornell(pot, mass, q, -1.1);
  const SeriesSolution s = generate_coefficients(RecurrenceKind::general(), pot, mass, q, -1.1, 8);
  EXPECT_NEAR(c.a1, s.coefficient(1), 1e-12);
  EXPECT_NEAR(c.a2, s.coefficient(2), 1e-12);
  EXPECT_NEAR(c.a3, s.coefficient(3), 1e-12);
}

TEST(CornellClosedForms, NoCouplingGivesA1EqualB) {
  const PotentialSpec pot(0.0, 0.3, 0.0, 1, 1);
  const LeadingCoefficients c = coefficient_closed_forms_cornell(pot, constant_mass(1.0), QuantumNumbers(3, 0, 0), -2.0);
  EXPECT_DOUBLE_EQ(c.a1, 2.0);
}

TEST(CornellClosedForms, ExponentialMassAgreesWithExpMassForms) {
  const PotentialSpec pot = make_cornell(0.5, 0.3, 0.2);
  const QuantumNumbers q(3, 1, 0);
  const LeadingCoefficients x = coefficient_closed_forms_cornell(pot, expand_exponential(1.2, 0.4, 8), q, -0.6);
  const LeadingCoefficients y = coefficient_closed_forms_expmass(pot, 1.2, 0.4, q, -0.6);
  EXPECT_NEAR(x.a1, y.a1, 1e-13);
  EXPECT_NEAR(x.a2, y.a2, 1e-13);
  EXPECT_NEAR(x.a3, y.a3, 1e-13);
}

TEST(CornellClosedForms, DegenerateChannelAndWrongShape) {
  EXPECT_THROW(coefficient_closed_forms_cornell(make_cornell(1.0, 0.1, 0.0), constant_mass(1.0, 8),
                                                QuantumNumbers(1, 0, 0), -0.5),
               StructuralError);
  EXPECT_THROW(coefficient_closed_forms_expmass(make_cornell(1.0, 0.1, 0.0), 1.0, 0.2, QuantumNumbers(1, 0, 0), -0.5),
               StructuralError);
  EXPECT_THROW(coefficient_closed_forms_cornell(make_oscillator(1.0), constant_mass(1.0, 8), QuantumNumbers(3, 0, 0),
                                                -0.5),
               DomainError);
  EXPECT_THROW(coefficient_closed_forms_expmass(make_cornell(1.0, 0.1, 0.0), 1.0, 0.0, QuantumNumbers(3, 0, 0), -0.5),
               DomainError);
}

TEST(ExpMassClosedForms, SmallLambdaApproachesConstantMass) {
  const PotentialSpec pot = make_cornell(0.9, 0.2, -0.1);
  const QuantumNumbers q(3, 1, 0);
  const LeadingCoefficients ref = coefficient_closed_forms_cornell(pot, constant_mass(1.0, 8), q, -0.8);
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const LeadingCoefficients c = coefficient_closed_forms_expmass(pot, 1.0, lambda, q, -0.8);
    const double gap = std::max({std::abs(c.a1 - ref.a1), std::abs(c.a2 - ref.a2), std::abs(c.a3 - ref.a3)});
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(ExpMassClosedForms, CoulombSubcaseMatchesPdmCoulombForms) {
  const double a = 1.0, m0 = 1.0, lambda = 0.1;
  for (int l = 0; l <= 2; ++l)
    for (int n = 0; n <= 2; ++n) {
      const QuantumNumbers q(3, l, n);
      const double b = a * m0 / (n + l + 1.0);
      const double e = -b * b / (2.0 * m0);
      const LeadingCoefficients x = coefficient_closed_forms_expmass(make_cornell(a, 0.0, 0.0), m0, lambda, q, e);
      const LeadingCoefficients y = coefficient_closed_forms_coulomb_expmass(a, m0, lambda, q);
      EXPECT_NEAR(x.a1, y.a1, 1e-13);
      EXPECT_NEAR(x.a2, y.a2, 1e-13);
      EXPECT_NEAR(x.a3, y.a3, 1e-13);
    }
}

TEST(CoulombClosedForm, FirstCoefficients) {
  const double a = 1.3, m0 = 0.8;
  const QuantumNumbers q(3, 1, 3);
  const double x = -2.0 * a * m0 / (q.radial_n() + q.ell() + 1.0);
  const int n = q.radial_n(), l = q.ell();
  EXPECT_DOUBLE_EQ(coulomb_closed_form_coefficient(a, m0, q, 0, 1.7), 1.7);
  EXPECT_NEAR(coulomb_closed_form_coefficient(a, m0, q, 1), x * n / (2.0 * l + 2.0), 1e-14);
  EXPECT_NEAR(coulomb_closed_form_coefficient(a, m0, q, 2), x * x * n * (n - 1) / (2.0 * (2 * l + 3) * (2 * l + 2)),
              1e-14);
  EXPECT_EQ(coulomb_closed_form_coefficient(a, m0, q, 4), 0.0);
  EXPECT_THROW(coulomb_closed_form_coefficient(a, m0, QuantumNumbers(2, 0, 1), 1), DomainError);
}

TEST(CoulombClosedForm, RecurrenceTerminatesAtEigenvalue) {
  for (int l = 0; l <= 3; ++l)
    for (int n = 0; n <= 5; ++n) {
      const QuantumNumbers q(3, l, n);
      const double b = 1.0 / (n + l + 1.0);
      const SeriesSolution s = generate_coefficients(RecurrenceKind::coulomb(), make_coulomb(1.0), constant_mass(1.0),
                                                     q, -0.5 * b * b, 20);
      const double scale = max_coeff(s);
      for (int i = 0; i <= n; ++i)
        EXPECT_NEAR(s.coefficient(i), coulomb_closed_form_coefficient(1.0, 1.0, q, i), 1e-12 * scale);
      for (int i = n + 1; i <= 20; ++i) EXPECT_LT(std::abs(s.coefficient(i)), 1e-10 * scale);
    }
}

TEST(ConvolutionTables, IncrementalMatchesRecompute) {
  const MassProfile mass = expand_exponential(1.5, 0.3, 12);
  ConvolutionTables inc(mass, 12);
  std::vector<double> a;
  for (int i = 0; i <= 12; ++i) {
    a.push_back(std::sin(1.0 + i));
    inc.append(a.back());
  }
  const ConvolutionTables full = ConvolutionTables::recompute(mass, a);
  for (int i = 0; i <= 12; ++i) {
    EXPECT_NEAR(inc.m(i), full.m(i), 1e-15);
    EXPECT_NEAR(inc.mprime(i), full.mprime(i), 1e-15);
    EXPECT_NEAR(inc.t(i), full.t(i), 1e-15);
  }
  EXPECT_EQ(inc.m(-1), 0.0);
  EXPECT_EQ(inc.t(0), 0.0);
  EXPECT_THROW(inc.append(1.0), DomainError);
}

TEST(ConvolutionTables, RescaleIsLinear) {
  const MassProfile mass = custom_mass({1.0, 0.5}, 4);
  ConvolutionTables t(mass, 4);
  for (double x : {1.0, -2.0, 0.5}) t.append(x);
  const double m2 = t.m(2), p2 = t.mprime(2), t2 = t.t(2);
  t.rescale(0.25);
  EXPECT_DOUBLE_EQ(t.m(2), 0.25 * m2);
  EXPECT_DOUBLE_EQ(t.mprime(2), 0.25 * p2);
  EXPECT_DOUBLE_EQ(t.t(2), 0.25 * t2);
  EXPECT_DOUBLE_EQ(t.coeffs()[1], -0.5);
}

}  // namespace
