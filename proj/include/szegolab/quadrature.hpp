#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace szegolab {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nodes and weights of an n-point rule.
struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre on [-1, 1]; results are cached per node count.
const Quadrature& gauss_legendre(int n);

/// Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
///
/// For large nodes the plain weight underflows; `sqrt_scaled_w[i]` carries
/// sqrt(w_i * e^{x_i}) so integrands can be assembled from e^{-x/2}-scaled
/// factors without overflow. Node counts are capped at 320 (x_max ~ 1.3e3),
/// far beyond anything the radial integrals here require.
struct LaguerreRule {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> sqrt_scaled_w;
};
const LaguerreRule& gauss_laguerre(int n);

/// e^{-x/2}-scaled associated Laguerre value L_q^{(a)}(x) * e^{-x/2}.
/// The scaling keeps magnitudes representable across the whole Gauss-Laguerre
/// node range.
double laguerre_scaled(int q, double a, double x);
std::complex<double> laguerre_scaled(int q, double a, std::complex<double> x);

/// Gegenbauer polynomial C_k^{(lambda)}(t) by the three-term recurrence.
double gegenbauer(int k, double lambda, double t);

}  // namespace szegolab
