#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "szegolab/hydrogen.hpp"
#include "szegolab/linalg.hpp"

namespace szegolab {

struct ClusterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coulomb-Sturmian basis block: radial scale kappa, n_max radial functions
/// per angular momentum, angular momenta |m| <= l <= l_max at fixed magnetic
/// quantum number m.
struct SturmianBasis {
  double kappa = 1.0;
  int n_max = 30;
  int l_max = 4;
  int m = 0;

  int dimension() const { return (l_max - std::abs(m) + 1) * n_max; }
  void validate() const;
};

/// Dilated Hamiltonian e^{-2i theta}(-Laplace/2) - e^{-i theta}/|x| +
/// e^{i theta} * field * x_3, orthonormalized over the Sturmian overlap.
/// The matrix is complex symmetric for theta > 0.
struct ScaledOperator {
  SemiclassicalConfig config;
  double theta = 0.0;
  SturmianBasis basis;
  double field = 0.0;  // the effective field actually placed in the operator
  CMat h;
};

/// Assemble one m-block. `field_override` < 0 uses config.effective_field;
/// otherwise it is the computable field knob of the resonance experiments.
ScaledOperator build_scaled_hamiltonian(const SemiclassicalConfig& config, double theta,
                                        const SturmianBasis& basis,
                                        double field_override = -1.0);

/// All eigenvalues of the block (in-house balancing + Hessenberg + QR).
std::vector<Complex> solve_eigen(const ScaledOperator& op);

/// Merged eigenvalues of every m block relevant for the shell cluster of
/// config.shell (|m| <= shell-1, using the m -> -m degeneracy).
std::vector<Complex> resonance_eigenvalues(const SemiclassicalConfig& config, double theta,
                                           double kappa, int n_max, int l_max,
                                           double field_override = -1.0);

struct TaggedEigenvalue {
  Complex z;
  int m = 0;
};
std::vector<TaggedEigenvalue> resonance_eigenvalues_tagged(const SemiclassicalConfig& config,
                                                           double theta, double kappa,
                                                           int n_max, int l_max,
                                                           double field_override = -1.0);

struct ResonanceCluster {
  double center = 0.0;
  std::vector<Complex> shifts;
  double selection_radius = 0.0;
  bool radius_enlarged = false;
};

/// Eigenvalues within the contour |z - (-1/(2N^2))| < radius, as shifts.
/// radius <= 0 selects the default 1/(8 N^3), enlarged to 3x the observed
/// cluster spread when the field splitting exceeds the contour.
ResonanceCluster extract_cluster(const std::vector<Complex>& eigs, int N, double radius = 0.0);

/// Max nearest-neighbor cluster distance across a theta grid.
struct ThetaScanResult {
  std::vector<double> thetas;
  std::vector<ResonanceCluster> clusters;
  double max_matched_distance = 0.0;
  double center_error = 0.0;  // max |cluster mean - exact center| over theta
};
ThetaScanResult theta_independence_scan(const SemiclassicalConfig& config, double kappa,
                                        int n_max, int l_max,
                                        const std::vector<double>& theta_grid,
                                        double field_override = -1.0);

/// Trace-identity residuals: resonance-side moment sums against the shell
/// matrix moments, with a measured tolerance budget (basis refinement +
/// field-knob Richardson terms).
struct TraceIdentityRow {
  int m = 0;
  Complex resonance_side;
  double quantum_side = 0.0;
  double residual = 0.0;
  double budget = 0.0;
};
std::vector<TraceIdentityRow> verify_trace_identity(const SemiclassicalConfig& config,
                                                    double theta, double kappa, int n_max,
                                                    int l_max, int m_max,
                                                    double field_knob);

/// Rayleigh-quotient half-plane check for the V = 0 operator with complex
/// field e^{3 i theta} * field; returns the number of violations.
int numerical_range_check(const SemiclassicalConfig& config, double theta,
                          const SturmianBasis& basis, int n_samples, std::uint64_t seed,
                          double field_override = -1.0, double tol = 1e-8);

/// One Gaussian-polynomial margin of the quadratic estimate.
struct QuadraticMargin {
  std::string psi;
  Complex alpha;
  double margin = 0.0;
  double h_norm_sq = 0.0;
  double lower_bound = 0.0;  // beta (|Delta psi|^2 + |x1 psi|^2) - c |psi|^2
};

/// Margins over the built-in Gaussian-polynomial suite for one complex field.
std::vector<QuadraticMargin> quadratic_estimate_check(Complex alpha_field);

/// Constants of the quadratic estimate.
double quadratic_estimate_c(Complex alpha_field);
double quadratic_estimate_beta(Complex alpha_field);

}  // namespace szegolab
