#pragma once

#include <vector>

#include "pdmseries/mass_expansion.hpp"
#include "pdmseries/model.hpp"
#include "pdmseries/recurrence.hpp"

namespace pdmseries {

struct SolverConfig {
  double e_lo = -1.0;
  double e_hi = -1e-3;
  /// 0 selects 1.5/b at the bracket midpoint, clamped to half the series
  /// trust region.
  double match_radius = 0.0;
  int truncation_order = kDefaultTruncationOrder;
  double tol_e = 1e-10;
  int max_iter = 200;
  /// Also solve with the direct integrator and fill EigenResult::oracle_gap.
  bool run_oracle = false;
  RecurrenceKind kind = RecurrenceKind::general();
};

/// Energies closer to threshold than this are refused.
inline constexpr double kMinBindingEnergy = 1e-12;

/// One evaluation of the quantization mismatch at trial energy e.
struct MismatchSample {
  double energy = 0.0;
  /// Normalized Wronskian of the origin series and the decaying inward
  /// solution at the match radius, in [-1, 1]; zero at an eigenvalue.
  double mismatch = 0.0;
  double match_radius = 0.0;
  double far_radius = 0.0;
};

/// Mismatch at e for fixed radii. match_radius and far_radius <= 0 pick the
/// automatic values for this energy.
MismatchSample evaluate_mismatch(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                                 double e, const SolverConfig& cfg, double match_radius = 0.0,
                                 double far_radius = 0.0);

/// Root of the mismatch inside [cfg.e_lo, cfg.e_hi], checked against
/// q.radial_n. The returned series is scaled to unit norm.
EigenResult find_eigenvalue(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q,
                            const SolverConfig& cfg);

struct SpectrumBracket {
  double e_lo = 0.0;
  double e_hi = 0.0;
  int approx_nodes = 0;
};

/// Sign changes of the mismatch on a grid uniform in sqrt(-E), lowest energy
/// first. Each bracket is labeled with the number of eigenvalues below its
/// lower edge (a Sturm count). q.radial_n is ignored.
std::vector<SpectrumBracket> scan_spectrum(const PotentialSpec& pot, const MassProfile& mass,
                                           const QuantumNumbers& q, double e_lo, double e_hi, int steps,
                                           const SolverConfig& cfg = {});

/// Scans [e_lo, e_hi] and refines the bracket whose midpoint carries
/// q.radial_n nodes.
EigenResult find_state(const PotentialSpec& pot, const MassProfile& mass, const QuantumNumbers& q, double e_lo,
                       double e_hi, int steps, const SolverConfig& cfg = {});

/// -A^2 m0 / (2 (n + (k-1)/2)^2) for the constant-mass Coulomb problem.
double coulomb_reference_energy(double a_coupling, double m0, const QuantumNumbers& q);

/// Normalized composite R (series inside the match radius, inward solution
/// outside) at the given radii.
std::vector<double> sample_state(const PotentialSpec& pot, const MassProfile& mass, const EigenResult& result,
                                 const std::vector<double>& radii);

}  // namespace pdmseries
