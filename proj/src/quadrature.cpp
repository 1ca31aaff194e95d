#include "szegolab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace szegolab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Implicit QL on a symmetric tridiagonal matrix (Elhay-Kautsky style).
// d: diagonal, e: subdiagonal (length n, last entry ignored), z: on input a
// vector, on output Q^T z. Eigenvalues land in d, ascending.
void imtqlx(int n, std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  if (n == 1) return;
  const double prec = 2.220446049250313e-16;
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        if (std::abs(e[m]) <= prec * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++iter > 40) throw QuadratureError("tridiagonal QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        if (std::abs(g) <= std::abs(f)) {
          c = g / f;
          r = std::hypot(c, 1.0);
          e[i + 1] = f * r;
          s = 1.0 / r;
          c *= s;
        } else {
          s = f / g;
          r = std::hypot(s, 1.0);
          e[i + 1] = g * r;
          c = 1.0 / r;
          s *= c;
        }
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  // sort ascending, carrying z along
  for (int i = 0; i < n - 1; ++i) {
    int k = i;
    for (int j = i + 1; j < n; ++j)
      if (d[j] < d[k]) k = j;
    if (k != i) {
      std::swap(d[i], d[k]);
      std::swap(z[i], z[k]);
    }
  }
}

Quadrature make_legendre(int n) {
  // Newton iteration on the Legendre recurrence; standard symmetric layout.
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    q.x[i] = -z;
    q.x[n - 1 - i] = z;
    q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.w[n - 1 - i] = q.w[i];
  }
  return q;
}

LaguerreRule make_laguerre(int n) {
  if (n > 320) throw QuadratureError("Gauss-Laguerre node count capped at 320");
  std::vector<double> d(n), e(n), z(n, 0.0);
  for (int i = 0; i < n; ++i) {
    d[i] = 2.0 * i + 1.0;
    e[i] = static_cast<double>(i + 1);
  }
  z[0] = 1.0;  // sqrt of the zeroth moment of e^{-x}
  imtqlx(n, d, e, z);
  LaguerreRule rule;
  rule.x = d;
  rule.w.resize(n);
  rule.sqrt_scaled_w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.w[i] = z[i] * z[i];
    rule.sqrt_scaled_w[i] = std::abs(z[i]) * std::exp(0.5 * d[i]);
  }
  return rule;
}

std::mutex cache_mutex;

}  // namespace

const Quadrature& gauss_legendre(int n) {
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
  return it->second;
}

const LaguerreRule& gauss_laguerre(int n) {
  static std::map<int, LaguerreRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_laguerre(n)).first;
  return it->second;
}

double laguerre_scaled(int q, double a, double x) {
  double em = std::exp(-0.5 * x);
  if (q == 0) return em;
  double lm1 = em;                  // L_0 * e^{-x/2}
  double l = (1.0 + a - x) * em;    // L_1 * e^{-x/2}
  for (int k = 1; k < q; ++k) {
    double lp = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp;
  }
  return l;
}

std::complex<double> laguerre_scaled(int q, double a, std::complex<double> x) {
  std::complex<double> em = std::exp(-0.5 * x);
  if (q == 0) return em;
  std::complex<double> lm1 = em;
  std::complex<double> l = (1.0 + a - x) * em;
  for (int k = 1; k < q; ++k) {
    std::complex<double> lp = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp;
  }
  return l;
}

double gegenbauer(int k, double lambda, double t) {
  if (k == 0) return 1.0;
  double cm1 = 1.0;
  double c = 2.0 * lambda * t;
  for (int j = 2; j <= k; ++j) {
    double cp = (2.0 * t * (j + lambda - 1.0) * c - (j + 2.0 * lambda - 2.0) * cm1) / j;
    cm1 = c;
    c = cp;
  }
  return c;
}

}  // namespace szegolab
