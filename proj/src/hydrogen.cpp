#include "szegolab/hydrogen.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "szegolab/quadrature.hpp"

namespace szegolab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double radial_norm_constant(int n, int l) {
  // (2/n^2) * sqrt((n-l-1)! / (n+l)!)
  return 2.0 / (static_cast<double>(n) * n) *
         std::exp(0.5 * (std::lgamma(n - l) - std::lgamma(n + l + 1)));
}

void check_radial_labels(int n, int l) {
  if (n < 1 || l < 0 || l > n - 1) throw SpecError("radial labels require 0 <= l <= n-1, n >= 1");
}

}  // namespace

SemiclassicalConfig SemiclassicalConfig::make(int N, double F, int K, double delta) {
  if (N < 1) throw SpecError("shell index N must be >= 1");
  if (!(F > 0.0)) throw SpecError("field strength F must be positive");
  if (K < 6) throw SpecError("decay power K must be >= 6");
  if (!(delta > 0.0 && delta < 1.0)) throw SpecError("delta must lie in (0,1)");
  SemiclassicalConfig c;
  c.shell = N;
  c.planck = 1.0 / static_cast<double>(N);
  c.field = F;
  c.decay_power = K;
  c.decay_delta = delta;
  c.epsilon = std::pow(c.planck, static_cast<double>(K) + delta);
  c.effective_field = std::pow(c.planck, 4.0) * c.epsilon * F;
  return c;
}

std::string SemiclassicalConfig::to_key_value() const {
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof buf, "N=%d\n", shell);
  out += buf;
  std::snprintf(buf, sizeof buf, "F=%.17g\n", field);
  out += buf;
  std::snprintf(buf, sizeof buf, "K=%d\n", decay_power);
  out += buf;
  std::snprintf(buf, sizeof buf, "delta=%.17g\n", decay_delta);
  out += buf;
  return out;
}

SemiclassicalConfig SemiclassicalConfig::from_key_value(const std::string& text) {
  int N = 0, K = 0;
  double F = 0.0, delta = 0.0;
  bool have_n = false, have_f = false, have_k = false, have_d = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    if (key == "N") {
      N = std::stoi(val);
      have_n = true;
    } else if (key == "F") {
      F = std::stod(val);
      have_f = true;
    } else if (key == "K") {
      K = std::stoi(val);
      have_k = true;
    } else if (key == "delta") {
      delta = std::stod(val);
      have_d = true;
    }
  }
  if (!(have_n && have_f && have_k && have_d))
    throw SpecError("config record must provide keys N, F, K, delta");
  return make(N, F, K, delta);
}

void SphericalLabel::validate() const {
  if (n < 1 || l < 0 || l > n - 1 || std::abs(m) > l)
    throw SpecError("invalid spherical label");
}

void ParabolicLabel::validate() const {
  if (n1 < 0 || n2 < 0) throw SpecError("invalid parabolic label");
}

int shell_dimension(int N) {
  if (N < 1) throw SpecError("shell index N must be >= 1");
  return N * N;
}

double bohr_eigenvalue(int k, double h) {
  if (k < 1) throw SpecError("level index k must be >= 1");
  if (!(h > 0.0)) throw SpecError("Planck parameter h must be positive");
  return -1.0 / (2.0 * h * h * static_cast<double>(k) * k);
}

double radial_moment(int n, int l, int k) {
  check_radial_labels(n, l);
  if (k < 0) throw SpecError("negative moments are not supported by the upward recursion");
  const double n2 = static_cast<double>(n) * n;
  double mkm2 = 1.0;                                        // <r^0>
  if (k == 0) return mkm2;
  double mkm1 = 0.5 * (3.0 * n2 - static_cast<double>(l) * (l + 1));  // <r^1>
  if (k == 1) return mkm1;
  double tl = 2.0 * l + 1.0;
  double mk = 0.0;
  for (int j = 2; j <= k; ++j) {
    mk = n2 * (2.0 * j + 1.0) / (j + 1.0) * mkm1 -
         n2 * j / (4.0 * (j + 1.0)) * (tl * tl - static_cast<double>(j) * j) * mkm2;
    mkm2 = mkm1;
    mkm1 = mk;
  }
  return mk;
}

namespace {

double radial_moment_quadrature(int n, int l, int k, int nodes) {
  const LaguerreRule& rule = gauss_laguerre(nodes);
  const double a = radial_norm_constant(n, l);
  const double scale = a * a * std::pow(0.5 * n, k + 3.0);
  const int q = n - l - 1;
  const double alpha = 2.0 * l + 1.0;
  const int pw = k + 2 * l + 2;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    if (rule.w[i] == 0.0) continue;
    double t = rule.sqrt_scaled_w[i] * laguerre_scaled(q, alpha, rule.x[i]);
    sum += t * t * std::pow(rule.x[i], pw);
  }
  return scale * sum;
}

}  // namespace

double radial_moment_oracle(int n, int l, int k) {
  check_radial_labels(n, l);
  if (k < 0) throw SpecError("negative moments are not supported");
  int m1 = 4 * n + 2 * k + 20;
  int m2 = 2 * m1;
  double a = radial_moment_quadrature(n, l, k, m1);
  double b = radial_moment_quadrature(n, l, k, m2);
  double ref = std::max({std::abs(a), std::abs(b), 1.0});
  if (std::abs(a - b) > 1e-11 * ref)
    throw QuadratureError("radial moment quadrature did not converge across node counts");
  return b;
}

double radial_eigenfunction(int n, int l, double r) {
  check_radial_labels(n, l);
  if (r < 0.0) throw SpecError("radius must be nonnegative");
  const double x = 2.0 * r / n;
  return radial_norm_constant(n, l) * std::pow(x, l) *
         laguerre_scaled(n - l - 1, 2.0 * l + 1.0, x);
}

std::complex<double> radial_eigenfunction(int n, int l, std::complex<double> r) {
  check_radial_labels(n, l);
  const std::complex<double> x = 2.0 * r / static_cast<double>(n);
  std::complex<double> xl = 1.0;
  for (int j = 0; j < l; ++j) xl *= x;
  return radial_norm_constant(n, l) * xl * laguerre_scaled(n - l - 1, 2.0 * l + 1.0, x);
}

double momentum_radial(int n, int l, double p) {
  check_radial_labels(n, l);
  const int k = n - l - 1;
  const double q = static_cast<double>(n) * p;
  const double q2 = q * q;
  const double t = (q2 - 1.0) / (q2 + 1.0);
  const double sc = 2.0 * q / (q2 + 1.0);      // sin(chi)
  const double fall = 2.0 / (q2 + 1.0);        // stereographic factor
  // hyperspherical normalization on S^3
  const double logn2 = (2.0 * l + 1.0) * std::log(2.0) + std::lgamma(k + 1.0) +
                       std::log(static_cast<double>(k + l + 1)) + 2.0 * std::lgamma(l + 1.0) -
                       std::log(kPi) - std::lgamma(k + 2.0 * l + 2.0);
  const double norm = std::exp(0.5 * logn2);
  return std::pow(static_cast<double>(n), 1.5) * norm * fall * fall * std::pow(sc, l) *
         gegenbauer(k, l + 1.0, t);
}

}  // namespace szegolab
