#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "szegolab/alpha.hpp"
#include "szegolab/harmonics.hpp"

namespace szegolab {

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Complex dilation parameter; coherent-state evaluations are analytic for
/// |Im theta| < pi/2.
struct DilationParam {
  std::complex<double> theta;
  void validate() const;
};

/// Normalization a(l) of the sphere coherent states, by S^3 quadrature.
double normalization_a(int l);
/// Same value from the independent torus-coordinate rule.
double normalization_a_oracle(int l);

/// Phi_{alpha,l}(omega) = a(l) (alpha . omega)^l.
std::complex<double> sphere_coherent(const CoherentParam& alpha, int l, const SpherePoint& omega);

/// Momentum-space coherent state of shell l at dilation theta (theta = 0 is
/// the undilated state).
std::complex<double> momentum_coherent(const CoherentParam& alpha, int l, const Vec3& p,
                                       std::complex<double> theta);

/// Momentum-space product quadrature adapted to shell `shell` (exact for
/// shell-supported integrands). `scale` defaults to the shell index; pass
/// shell*exp(theta) to keep dilated integrands exactly integrable.
struct MomentumGrid {
  std::vector<Vec3> p;
  std::vector<double> w;
  std::vector<SpherePoint> omega;  // stereographic image of scale*p
  int shell = 0;
};
MomentumGrid momentum_grid(int shell, int order = 0, double scale = 0.0);

/// <Psi_alpha, Psi_beta> for shell l by 3D momentum-space quadrature.
std::complex<double> coherent_overlap(const CoherentParam& alpha, const CoherentParam& beta,
                                      int l);

/// L2(R^3) norm of momentum_coherent(alpha, l, ., theta) for real theta.
double momentum_norm(const CoherentParam& alpha, int l, double theta);

/// Expansion coefficients of Psi_alpha against the orthonormal (l,m) shell
/// eigenbasis in momentum space; index l*(l+1)+m, size N^2.
std::vector<std::complex<double>> shell_expansion(const CoherentParam& alpha, int N);

/// Monte Carlo resolution-of-identity check for the shell projector.
struct ProjectorCheck {
  double in_shell_deviation;   // max over shell basis states of |P_hat psi - psi|
  double out_shell_deviation;  // |P_hat psi| for a next-shell state
};
ProjectorCheck projector_resolution_check(int shell, long samples, std::uint64_t seed,
                                          int workers = 0);

/// Moment of the dilated state outside radius r0:
///   int_{|x|>r0} |x|^n |D_{N^2} Psi_{alpha,N}(e^{i theta} x)|^2 d^3x,
/// with r0 > 1 and |theta| < pi/4.
double tail_mass(const CoherentParam& alpha, int N, double r0, int n, double theta);

/// Full dilated radial moment (r0 = 0 companion of tail_mass).
double dilated_radial_moment(const CoherentParam& alpha, int N, int n, double theta);

/// <Psi_{alpha,N}, D_{N^2}^{-1} (F x_1) D_{N^2} Psi_{alpha,N}>: the
/// Bohr-rescaled dipole matrix element that approaches the classical orbit
/// average of F x_1 as N grows.
double coherent_stark_diagonal(const CoherentParam& alpha, int N, double F);

}  // namespace szegolab
