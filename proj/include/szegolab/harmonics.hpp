#pragma once

#include <complex>
#include <vector>

#include "szegolab/alpha.hpp"

namespace szegolab {

/// Complex spherical harmonic Y_l^m(theta, phi) with Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double costheta, double phi);

/// All Y_l^m for l <= lmax at one point; out[l*(l+1) + m].
void spherical_harmonics_all(int lmax, double costheta, double phi,
                             std::vector<std::complex<double>>& out);

/// chi-part of the S^3 harmonic of degree L and angular momentum l, as a
/// function of the fourth sphere coordinate:
///   N_{Ll} (1 - w4^2)^{l/2} C_{L-l}^{(l+1)}(w4),
/// normalized so the full harmonic (times Y_lm of the spatial direction) has
/// unit norm on S^3.
double hyperspherical_radial(int L, int l, double w4);

/// Product quadrature on S^3, exact for polynomials in the sphere coordinates
/// of total degree <= 2*order - 1.
struct S3Grid {
  std::vector<SpherePoint> omega;
  std::vector<double> w;
};
S3Grid s3_product_grid(int order);

/// Independent S^3 rule in torus coordinates (oracle for cross-checks).
S3Grid s3_torus_grid(int order);

/// Product rule on S^2 (Gauss-Legendre in cos(theta), trapezoid in phi),
/// exact for polynomial degree <= 2*order - 1.
struct S2Grid {
  std::vector<double> ct, st, phi, w;
};
S2Grid s2_product_grid(int order);

}  // namespace szegolab
