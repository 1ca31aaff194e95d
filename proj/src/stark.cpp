#include "szegolab/stark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "szegolab/harmonics.hpp"
#include "szegolab/kepler.hpp"
#include "szegolab/quadrature.hpp"

namespace szegolab {

namespace {

int shell_index(int l, int m) { return l * l + l + m; }

// cos(theta) ladder coefficient <Y_{l+1,m}| cos |Y_{l,m}>
double cos_coefficient(int l, int m) {
  double num = (static_cast<double>(l) + 1) * (l + 1) - static_cast<double>(m) * m;
  return std::sqrt(num / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

// int_0^inf R_{Nl} R_{N,l+1} r^3 dr by Gauss-Laguerre, exact for the
// polynomial integrand
double radial_cross(int N, int l, int nodes) {
  const LaguerreRule& rule = gauss_laguerre(nodes);
  double a1 = 2.0 / (static_cast<double>(N) * N) *
              std::exp(0.5 * (std::lgamma(N - l) - std::lgamma(N + l + 1)));
  double a2 = 2.0 / (static_cast<double>(N) * N) *
              std::exp(0.5 * (std::lgamma(N - l - 1) - std::lgamma(N + l + 2)));
  int q1 = N - l - 1, q2 = N - l - 2;
  double al1 = 2.0 * l + 1.0, al2 = 2.0 * l + 3.0;
  int pw = 2 * l + 1 + 3;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    if (rule.w[i] == 0.0) continue;
    double x = rule.x[i];
    double t1 = rule.sqrt_scaled_w[i] * laguerre_scaled(q1, al1, x);
    double t2 = rule.sqrt_scaled_w[i] * laguerre_scaled(q2, al2, x);
    sum += t1 * t2 * std::pow(x, pw);
  }
  return a1 * a2 * std::pow(0.5 * N, 4.0) * sum;
}

double radial_cross_checked(int N, int l) {
  double a = radial_cross(N, l, 2 * N + 30);
  double b = radial_cross(N, l, 2 * N + 45);
  if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(b)))
    throw QuadratureError("shell dipole radial integral did not converge");
  return b;
}

}  // namespace

ShellMatrix build_shell_matrix(int N, double F) {
  if (N < 1) throw SpecError("shell index must be >= 1");
  if (N > 48) throw SpecError("shell matrix capped at N <= 48");
  if (!(F > 0.0)) throw SpecError("field strength must be positive");
  const int d = N * N;
  ShellMatrix sm;
  sm.shell = N;
  sm.field = F;
  sm.entries = Mat(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 0.0);
  const double scale = F / (static_cast<double>(N) * N);
  for (int l = 0; l + 1 < N; ++l) {
    double rad = radial_cross_checked(N, l);
    for (int m = -l; m <= l; ++m) {
      double v = scale * cos_coefficient(l, m) * rad;
      int i = shell_index(l, m), j = shell_index(l + 1, m);
      sm.entries(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
      sm.entries(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
    }
  }
  return sm;
}

CMat build_shell_matrix_x1(int N, double F) {
  if (N < 1 || N > 12) throw SpecError("x1 variant intended for small shells");
  if (!(F > 0.0)) throw SpecError("field strength must be positive");
  const int d = N * N;
  CMat h(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 0.0);
  const double scale = F / (static_cast<double>(N) * N);
  // angular factors <Y_{l'm'}| sin(theta) cos(phi) |Y_{lm}> by the exact
  // product rule on S^2
  S2Grid grid = s2_product_grid(N + 6);
  std::vector<std::vector<Complex>> ylm(grid.w.size());
  for (std::size_t i = 0; i < grid.w.size(); ++i)
    spherical_harmonics_all(N - 1, grid.ct[i], grid.phi[i], ylm[i]);
  for (int l = 0; l + 1 < N; ++l) {
    double rad = radial_cross_checked(N, l);
    for (int m = -l; m <= l; ++m) {
      for (int mp = -(l + 1); mp <= l + 1; ++mp) {
        if (std::abs(mp - m) != 1) continue;
        Complex ang = 0.0;
        for (std::size_t i = 0; i < grid.w.size(); ++i) {
          double x1dir = grid.st[i] * std::cos(grid.phi[i]);
          ang += grid.w[i] * std::conj(ylm[i][static_cast<std::size_t>(l + 1) * (l + 2) + mp]) *
                 x1dir * ylm[i][static_cast<std::size_t>(l) * (l + 1) + m];
        }
        Complex v = scale * rad * ang;
        int a = shell_index(l + 1, mp), b = shell_index(l, m);
        h(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = v;
        h(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = std::conj(v);
      }
    }
  }
  return h;
}

ClusterSpectrum parabolic_oracle(int N, double F) {
  if (N < 1) throw SpecError("shell index must be >= 1");
  if (!(F > 0.0)) throw SpecError("field strength must be positive");
  // diagonal of the separable first-order computation: Laguerre moment
  // ratios r1 = <x>, r2 = <x^2> for weight x^alpha e^{-x}
  auto r1 = [](int n, int alpha) { return 2.0 * n + alpha + 1.0; };
  auto r2 = [](int n, int alpha) {
    return (n + 1.0) * (n + alpha + 1.0) + (2.0 * n + alpha + 1.0) * (2.0 * n + alpha + 1.0) +
           static_cast<double>(n) * (n + alpha);
  };
  ClusterSpectrum cs;
  cs.center = -1.0 / (2.0 * static_cast<double>(N) * N);
  const double scale = F / (static_cast<double>(N) * N);
  for (int am = 0; am <= N - 1; ++am) {
    for (int n1 = 0; n1 + am <= N - 1; ++n1) {
      int n2 = N - 1 - am - n1;
      double x3 = 0.5 * N * (r2(n1, am) - r2(n2, am)) / (r1(n1, am) + r1(n2, am));
      double v = scale * x3;
      cs.values.push_back(v);
      if (am > 0) cs.values.push_back(v);
    }
  }
  std::sort(cs.values.begin(), cs.values.end());
  return cs;
}

ClusterSpectrum diagonalize_shell(const ShellMatrix& matrix) {
  const int N = matrix.shell;
  const std::size_t d = matrix.entries.rows();
  if (d != static_cast<std::size_t>(N) * N) throw SpecError("shell matrix has wrong dimension");
  double norm_full = frobenius_norm(matrix.entries);
  ClusterSpectrum cs;
  cs.center = -1.0 / (2.0 * static_cast<double>(N) * N);
  cs.values.reserve(d);
  // the polar-axis field conserves m: diagonalize each m block
  for (int m = -(N - 1); m <= N - 1; ++m) {
    int lmin = std::abs(m);
    std::size_t b = static_cast<std::size_t>(N - lmin);
    Mat block(b, b, 0.0);
    for (int la = lmin; la < N; ++la)
      for (int lb = lmin; lb < N; ++lb)
        block(static_cast<std::size_t>(la - lmin), static_cast<std::size_t>(lb - lmin)) =
            matrix.entries(static_cast<std::size_t>(shell_index(la, m)),
                           static_cast<std::size_t>(shell_index(lb, m)));
    SymmetricEigen eig = jacobi_eigensolve(block);
    // residual certification against the block
    for (std::size_t k = 0; k < b; ++k) {
      double res = 0.0;
      for (std::size_t i = 0; i < b; ++i) {
        double r = -eig.values[k] * eig.vectors(i, k);
        for (std::size_t j = 0; j < b; ++j) r += block(i, j) * eig.vectors(j, k);
        res += r * r;
      }
      if (std::sqrt(res) > 1e-10 * std::max(norm_full, 1e-300))
        throw LinalgError("shell eigenpair residual exceeded certification bound");
    }
    cs.values.insert(cs.values.end(), eig.values.begin(), eig.values.end());
  }
  std::sort(cs.values.begin(), cs.values.end());
  return cs;
}

double quantum_moment(int N, double F, int m) {
  if (m < 1) throw SpecError("moment order must be >= 1");
  ClusterSpectrum cs = diagonalize_shell(build_shell_matrix(N, F));
  double sum = 0.0;
  for (double v : cs.values) sum += std::pow(v, m);
  return sum / static_cast<double>(cs.values.size());
}

EmpiricalDistribution quantum_distribution(int N, double F) {
  ClusterSpectrum cs = diagonalize_shell(build_shell_matrix(N, F));
  return EmpiricalDistribution::uniform_atoms(std::move(cs.values));
}

double PowerSeries::eval(double s) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k];
  return acc;
}

PowerSeries PowerSeries::monomial(int degree, const std::string& name) {
  if (degree < 0) throw SpecError("monomial degree must be nonnegative");
  PowerSeries p;
  p.name = name;
  p.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  p.coeffs.back() = 1.0;
  p.radius = std::numeric_limits<double>::infinity();
  p.tail_bound = 0.0;
  return p;
}

PowerSeries PowerSeries::exp_scaled(double F, int degree) {
  if (!(F > 0.0)) throw SpecError("field strength must be positive");
  PowerSeries p;
  p.name = "exp(s/(3F))";
  p.coeffs.resize(static_cast<std::size_t>(degree) + 1);
  double c = 1.0;
  for (int k = 0; k <= degree; ++k) {
    p.coeffs[static_cast<std::size_t>(k)] = c;
    c /= (3.0 * F * (k + 1.0));
  }
  p.radius = std::numeric_limits<double>::infinity();
  // remainder of the exponential series at |s| = 2F: ratio 2/3 per order
  double term = std::pow(2.0 / 3.0, degree + 1) / std::tgamma(degree + 2.0);
  p.tail_bound = term / (1.0 - 2.0 / 3.0);
  return p;
}

std::vector<SzegoRow> szego_compare(const std::vector<int>& shells, double F,
                                    const std::vector<PowerSeries>& rhos, long mc_samples,
                                    std::uint64_t seed, int workers) {
  if (shells.empty()) throw SpecError("szego comparison needs at least one shell");
  for (const PowerSeries& p : rhos)
    if (!(p.radius >= 3.0 * F))
      throw SpecError("test function '" + p.name + "' declares radius < 3F");
  std::vector<SzegoRow> rows;
  std::uint64_t rho_tag = 0;
  for (const PowerSeries& p : rhos) {
    MonteCarloEstimate cls = classical_functional([&](double s) { return p.eval(s); }, F,
                                                  mc_samples, seed + rho_tag, workers);
    ++rho_tag;
    for (int N : shells) {
      ClusterSpectrum cs = diagonalize_shell(build_shell_matrix(N, F));
      double q = 0.0;
      for (double v : cs.values) q += p.eval(v);
      q /= static_cast<double>(cs.values.size());
      rows.push_back(SzegoRow{N, p.name, q, cls.value, q - cls.value, cls.std_error,
                              p.tail_bound});
    }
  }
  return rows;
}

}  // namespace szegolab
