#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pdmseries/model.hpp"

namespace pdmseries {

/// Coefficients above this magnitude trigger a rescale of the whole prefix.
inline constexpr double kRescaleThreshold = 1e150;

/// Partial Cauchy products of the wavefunction series a_j with the mass
/// series b_nu and the m'/m series b'_nu:
///
///   M_i  = sum_{j+nu=i} a_j b_nu
///   M'_i = sum_{j+nu=i} a_j b'_nu
///   T_i  = sum_{j+nu=i} j a_j b'_nu        (T_0 = 0)
///
/// Entry i depends on a_0..a_i only, so appending a_{i} completes row i.
/// Negative indices read as zero.
class ConvolutionTables {
 public:
  ConvolutionTables(const MassProfile& mass, int capacity);

  /// Appends a_{filled_to()+1} and fills row filled_to()+1 of every table.
  void append(double a);

  /// Multiplies the coefficient prefix and every table entry by factor.
  void rescale(double factor);

  /// Rebuilds all rows from scratch for the given prefix.
  static ConvolutionTables recompute(const MassProfile& mass, std::span<const double> coeffs);

  double m(int i) const noexcept { return read(m_, i); }
  double mprime(int i) const noexcept { return read(mprime_, i); }
  double t(int i) const noexcept { return read(t_, i); }
  int filled_to() const noexcept { return static_cast<int>(a_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return a_; }

 private:
  static double read(const std::vector<double>& v, int i) noexcept {
    return (i < 0 || i >= static_cast<int>(v.size())) ? 0.0 : v[static_cast<std::size_t>(i)];
  }

  std::vector<double> mass_;
  std::vector<double> logderiv_;
  std::vector<double> a_;
  std::vector<double> m_;
  std::vector<double> mprime_;
  std::vector<double> t_;
};

/// Which form of the recurrence generates the coefficients.
///
///  general          full three-parameter potential, any admissible mass
///  coulomb          -Z/r only (v1 = Z, alpha = 1, v2 = v3 = 0)
///  oscillator       omega^2 r^2 only (v2 = omega^2, beta = 2, v1 = v3 = 0)
///  linear           B r only (v2 = B, beta = 1, v1 = v3 = 0)
///  cornell          -A/r + B r + C (alpha = beta = 1)
///  exp_mass_cornell Cornell with m = m0 exp(-lambda r), written directly in
///                   the mass coefficients m_nu without the m'/m tables
struct RecurrenceKind {
  enum class Tag { general, coulomb, oscillator, linear, cornell, exp_mass_cornell };

  Tag tag = Tag::general;
  double lambda = 0.0;

  static RecurrenceKind general() { return {Tag::general, 0.0}; }
  static RecurrenceKind coulomb() { return {Tag::coulomb, 0.0}; }
  static RecurrenceKind oscillator() { return {Tag::oscillator, 0.0}; }
  static RecurrenceKind linear() { return {Tag::linear, 0.0}; }
  static RecurrenceKind cornell() { return {Tag::cornell, 0.0}; }
  static RecurrenceKind exp_mass_cornell(double lambda) { return {Tag::exp_mass_cornell, lambda}; }
};

std::string_view to_string(RecurrenceKind::Tag tag) noexcept;

/// Coefficients a_0..a_order of u(r) in R = r^((k-1)/2) e^(-br) u(r) at trial
/// energy e. Each step solves the order-r^n balance for a_{n+1}:
///
///   (n+1)(n+k-1) a_{n+1} = ((k-1) + 2n) b a_n + l M'_n - b M'_{n-1} + T_n
///                          - 2E M_{n-1} - b^2 a_{n-1} - 2 V1 M_{n+alpha-1}
///                          + 2 V2 M_{n-beta-1} + 2 V3 M_{n-1}
///
/// Throws BoundStateError for e >= 0, StructuralError for k = 1 or alpha >= 2.
SeriesSolution generate_coefficients(const RecurrenceKind& kind, const PotentialSpec& pot,
                                     const MassProfile& mass, const QuantumNumbers& q, double e,
                                     int order, double a0 = 1.0);

/// a_1..a_3 for a_0 = 1.
struct LeadingCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Closed forms of the first three Cornell coefficients for an arbitrary mass
/// series (uses b_1, b_2, b'_0, b'_1, b'_2). Independent of the recurrence loop.
LeadingCoefficients coefficient_closed_forms_cornell(const PotentialSpec& pot, const MassProfile& mass,
                                                     const QuantumNumbers& q, double e);

/// The same three coefficients written for m = m0 exp(-lambda r) with
/// m_nu = m0 (-lambda)^nu / nu!.
LeadingCoefficients coefficient_closed_forms_expmass(const PotentialSpec& pot, double m0, double lambda,
                                                     const QuantumNumbers& q, double e);

/// Exponential-mass Coulomb coefficients (B = C = 0, N = 3) after setting
/// b = A m0 / (n + l + 1).
LeadingCoefficients coefficient_closed_forms_coulomb_expmass(double a_coupling, double m0, double lambda,
                                                             const QuantumNumbers& q);

/// Terminating constant-mass Coulomb polynomial (N = 3):
///
///   a_i = (-2 A m0 / (n+l+1))^i (2l+1)! n! / ((2l+1+i)! (n-i)! i!) a_0
///
/// and 0 for i > n. Factorials go through lgamma.
double coulomb_closed_form_coefficient(double a_coupling, double m0, const QuantumNumbers& q, int i,
                                       double a0 = 1.0);

}  // namespace pdmseries
