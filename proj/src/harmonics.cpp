#include "szegolab/harmonics.hpp"

#include <cmath>

#include "szegolab/quadrature.hpp"

namespace szegolab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Normalized associated Legendre P~_l^m for m >= 0, including the
// sqrt((2l+1)(l-m)!/(4 pi (l+m)!)) factor and Condon-Shortley phase.
// Fills tab[l] for l = m..lmax.
void legendre_column(int lmax, int m, double x, std::vector<double>& tab) {
  double somx2 = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int k = 1; k <= m; ++k)
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * somx2;
  tab[m] = pmm;
  if (lmax == m) return;
  double pmmp1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  tab[m + 1] = pmmp1;
  for (int l = m + 2; l <= lmax; ++l) {
    double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    double b = std::sqrt(((2.0 * l + 1.0) * ((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m)) /
                         ((2.0 * l - 3.0) * (static_cast<double>(l) * l - static_cast<double>(m) * m)));
    double pl = a * x * pmmp1 - b * pmm;
    pmm = pmmp1;
    pmmp1 = pl;
    tab[l] = pl;
  }
}

}  // namespace

std::complex<double> spherical_harmonic(int l, int m, double costheta, double phi) {
  if (l < 0 || std::abs(m) > l) throw SpecError("invalid spherical harmonic labels");
  int am = std::abs(m);
  std::vector<double> tab(l + 1, 0.0);
  legendre_column(l, am, costheta, tab);
  std::complex<double> e(std::cos(am * phi), std::sin(am * phi));
  std::complex<double> y = tab[l] * e;
  if (m < 0) y = (am % 2 ? -1.0 : 1.0) * std::conj(y);
  return y;
}

void spherical_harmonics_all(int lmax, double costheta, double phi,
                             std::vector<std::complex<double>>& out) {
  out.assign(static_cast<std::size_t>(lmax + 1) * (lmax + 1), 0.0);
  std::vector<double> tab(lmax + 1, 0.0);
  for (int m = 0; m <= lmax; ++m) {
    legendre_column(lmax, m, costheta, tab);
    std::complex<double> e(std::cos(m * phi), std::sin(m * phi));
    double parity = (m % 2 ? -1.0 : 1.0);
    for (int l = m; l <= lmax; ++l) {
      std::complex<double> y = tab[l] * e;
      out[static_cast<std::size_t>(l) * (l + 1) + m] = y;
      if (m > 0) out[static_cast<std::size_t>(l) * (l + 1) - m] = parity * std::conj(y);
    }
  }
}

double hyperspherical_radial(int L, int l, double w4) {
  if (L < 0 || l < 0 || l > L) throw SpecError("invalid hyperspherical labels");
  int k = L - l;
  double logn2 = (2.0 * l + 1.0) * std::log(2.0) + std::lgamma(k + 1.0) +
                 std::log(static_cast<double>(k + l + 1)) + 2.0 * std::lgamma(l + 1.0) -
                 std::log(kPi) - std::lgamma(k + 2.0 * l + 2.0);
  double s2 = std::max(0.0, 1.0 - w4 * w4);
  return std::exp(0.5 * logn2) * std::pow(s2, 0.5 * l) * gegenbauer(k, l + 1.0, w4);
}

S2Grid s2_product_grid(int order) {
  const Quadrature& gl = gauss_legendre(order);
  int nphi = 2 * order + 1;
  S2Grid g;
  g.ct.reserve(static_cast<std::size_t>(order) * nphi);
  g.st.reserve(g.ct.capacity());
  g.phi.reserve(g.ct.capacity());
  g.w.reserve(g.ct.capacity());
  double wphi = 2.0 * kPi / nphi;
  for (int i = 0; i < order; ++i) {
    double ct = gl.x[i];
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < nphi; ++j) {
      g.ct.push_back(ct);
      g.st.push_back(st);
      g.phi.push_back(wphi * j);
      g.w.push_back(gl.w[i] * wphi);
    }
  }
  return g;
}

S3Grid s3_product_grid(int order) {
  // fourth coordinate by Gauss-Chebyshev (second kind), spatial direction by
  // the S^2 product rule
  S3Grid g;
  S2Grid s2 = s2_product_grid(order);
  int m = order;
  g.omega.reserve(static_cast<std::size_t>(m) * s2.w.size());
  g.w.reserve(g.omega.capacity());
  for (int k = 1; k <= m; ++k) {
    double a = kPi * k / (m + 1.0);
    double u = std::cos(a);
    double su = std::sin(a);
    double wu = kPi / (m + 1.0) * su * su;
    double rho = su;  // radius of the S^2 slice
    for (std::size_t j = 0; j < s2.w.size(); ++j) {
      SpherePoint p;
      p.omega[0] = rho * s2.st[j] * std::cos(s2.phi[j]);
      p.omega[1] = rho * s2.st[j] * std::sin(s2.phi[j]);
      p.omega[2] = rho * s2.ct[j];
      p.omega[3] = u;
      g.omega.push_back(p);
      g.w.push_back(wu * s2.w[j]);
    }
  }
  return g;
}

S3Grid s3_torus_grid(int order) {
  const Quadrature& gl = gauss_legendre(order);
  int nphi = 2 * order + 1;
  double wphi = 2.0 * kPi / nphi;
  S3Grid g;
  g.omega.reserve(static_cast<std::size_t>(order) * nphi * nphi);
  g.w.reserve(g.omega.capacity());
  for (int i = 0; i < order; ++i) {
    double u = 0.5 * (gl.x[i] + 1.0);  // sin^2(psi) in (0,1)
    double wu = 0.25 * gl.w[i];        // du/2 mapped from [-1,1]
    double sp = std::sqrt(u), cp = std::sqrt(1.0 - u);
    for (int j1 = 0; j1 < nphi; ++j1) {
      double f1 = wphi * j1;
      for (int j2 = 0; j2 < nphi; ++j2) {
        double f2 = wphi * j2;
        SpherePoint p;
        p.omega[0] = sp * std::cos(f1);
        p.omega[1] = sp * std::sin(f1);
        p.omega[2] = cp * std::cos(f2);
        p.omega[3] = cp * std::sin(f2);
        g.omega.push_back(p);
        g.w.push_back(wu * wphi * wphi);
      }
    }
  }
  return g;
}

}  // namespace szegolab
