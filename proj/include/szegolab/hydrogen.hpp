#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace szegolab {

struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Global semiclassical parameter bundle. The Planck parameter is stored as
/// 1/N and every derived field is computed once at construction, so the
/// defining identities hold bit-for-bit on read-back.
struct SemiclassicalConfig {
  int shell = 1;                 // N
  double planck = 1.0;           // h = 1/N
  double field = 0.1;            // F > 0, atomic units
  int decay_power = 6;           // K >= 6
  double decay_delta = 0.1;      // delta in (0,1)
  double epsilon = 0.0;          // h^(K+delta)
  double effective_field = 0.0;  // h^4 * epsilon * F

  static SemiclassicalConfig make(int N, double F, int K, double delta);

  std::string to_key_value() const;
  static SemiclassicalConfig from_key_value(const std::string& text);
};

struct SphericalLabel {
  int n = 1;
  int l = 0;
  int m = 0;
  void validate() const;
};

struct ParabolicLabel {
  int n1 = 0;
  int n2 = 0;
  int m = 0;
  void validate() const;
  int shell() const { return n1 + n2 + std::abs(m) + 1; }
};

/// Number of bound states in shell N.
int shell_dimension(int N);

/// -1 / (2 h^2 k^2).
double bohr_eigenvalue(int k, double h);

/// <r^k> in the (n, l) radial state by the upward moment recursion.
/// Rejects k < 0; k = 0 returns 1, k = 1 the closed first moment.
double radial_moment(int n, int l, int k);

/// Same moment by Gauss-Laguerre quadrature on the explicit radial function;
/// two node counts are compared and disagreement raises QuadratureError.
double radial_moment_oracle(int n, int l, int k);

/// Radial bound-state function R_nl(r), normalized so that
/// int_0^inf R^2 r^2 dr = 1. The complex overload continues R_nl to complex
/// radius (entire in r), used by the dilated evaluations.
double radial_eigenfunction(int n, int l, double r);
std::complex<double> radial_eigenfunction(int n, int l, std::complex<double> r);

/// Momentum-space radial function: psi_hat_{nlm}(p) = (-i)^l * momentum_radial(n,l,p) * Y_lm(p_hat),
/// normalized so that int_0^inf momentum_radial^2 p^2 dp = 1. Closed
/// Gegenbauer form; the phase and normalization are pinned by tests against a
/// direct spherical Bessel transform of radial_eigenfunction.
double momentum_radial(int n, int l, double p);

}  // namespace szegolab
