#include "szegolab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "szegolab/quadrature.hpp"
#include "szegolab/rng.hpp"
#include "szegolab/stark.hpp"

namespace szegolab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// ----- Coulomb-Sturmian closed-form matrix elements -------------------------
//
// Reduced radial functions u_{nl}(r) = N_n (2 kappa r)^{l+1} e^{-kappa r}
// L_{n-l-1}^{(2l+1)}(2 kappa r), unit normalized. The overlap is tridiagonal,
// 1/r is diagonal, and the radial kinetic operator is kappa^2 (I - S/2).

double overlap_sub(int l, int j) {
  // <u_{n}, u_{n+1}> with n = l+1+j
  double n = l + 1.0 + j;
  return -0.5 * std::sqrt((j + 1.0) * (2.0 * l + 2.0 + j) / (n * (n + 1.0)));
}

// <L_c^{(b)}, x L_{q}^{(b)}> over the weight x^b e^{-x}, divided by
// sqrt(h_qa h_qb) of the two block normalizations (log-stable).
double dipole_radial(double kappa, int l, int j, int jp) {
  const int q = j;        // degree in the l block
  const int qp = jp;      // degree in the l+1 block
  const double b = 2.0 * l + 3.0;
  const double a = 2.0 * l + 1.0;
  const double n = l + 1.0 + j;
  const double np = l + 2.0 + jp;
  // expansion L_q^{(b-2)} = L_q^{(b)} - 2 L_{q-1}^{(b)} + L_{q-2}^{(b)}
  const int cs[3] = {q, q - 1, q - 2};
  const double coef[3] = {1.0, -2.0, 1.0};
  const double lognorm = 0.5 * ((std::lgamma(q + a + 1.0) - std::lgamma(q + 1.0)) +
                                (std::lgamma(qp + b + 1.0) - std::lgamma(qp + 1.0)));
  auto hfac = [&](int x) {
    return std::exp(std::lgamma(x + b + 1.0) - std::lgamma(x + 1.0) - lognorm);
  };
  double sum = 0.0;
  for (int t = 0; t < 3; ++t) {
    int c = cs[t];
    if (c < 0) continue;
    double term = 0.0;
    if (c == qp) term += (2.0 * qp + b + 1.0) * hfac(qp);
    if (c == qp + 1) term -= (qp + 1.0) * hfac(qp + 1);
    if (c == qp - 1) term -= (qp + b) * hfac(qp - 1);
    sum += coef[t] * term;
  }
  // N_n N_n' / (4 kappa^2) with the h factors already divided out
  return sum * kappa / (4.0 * kappa * kappa * std::sqrt(n * np));
}

double cos_ladder(int l, int m) {
  double num = (static_cast<double>(l) + 1) * (l + 1) - static_cast<double>(m) * m;
  return std::sqrt(num / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

struct BlockPieces {
  int dim = 0;
  int lmin = 0;
  int n_max = 0;
  Mat kinetic;   // includes the centrifugal term
  Mat coulomb;   // attractive magnitude (enters with minus sign)
  Mat dipole;    // x_3 including angular factors
  std::vector<BidiagonalCholesky> chol;  // per-l overlap factors
};

BlockPieces assemble_block(const SturmianBasis& basis) {
  basis.validate();
  const int lmin = std::abs(basis.m);
  const int nl = basis.l_max - lmin + 1;
  const int nm = basis.n_max;
  const int dim = nl * nm;
  const double kap = basis.kappa;
  BlockPieces out;
  out.dim = dim;
  out.lmin = lmin;
  out.n_max = nm;
  out.kinetic = Mat(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), 0.0);
  out.coulomb = Mat(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), 0.0);
  out.dipole = Mat(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), 0.0);
  auto idx = [&](int l, int j) { return (l - lmin) * nm + j; };
  for (int l = lmin; l <= basis.l_max; ++l) {
    std::vector<double> sdiag(static_cast<std::size_t>(nm), 1.0);
    std::vector<double> ssub(static_cast<std::size_t>(nm) - 1, 0.0);
    for (int j = 0; j < nm; ++j) {
      int n = l + 1 + j;
      std::size_t i = static_cast<std::size_t>(idx(l, j));
      out.kinetic(i, i) = 0.5 * kap * kap;
      out.coulomb(i, i) = kap / n;
      if (j + 1 < nm) {
        double s = overlap_sub(l, j);
        ssub[static_cast<std::size_t>(j)] = s;
        std::size_t ip = static_cast<std::size_t>(idx(l, j + 1));
        out.kinetic(i, ip) = -0.5 * kap * kap * s;
        out.kinetic(ip, i) = -0.5 * kap * kap * s;
      }
    }
    out.chol.push_back(cholesky_tridiagonal(sdiag, ssub));
    if (l + 1 <= basis.l_max) {
      double ang = cos_ladder(l, basis.m);
      for (int j = 0; j < nm; ++j) {
        for (int jp = std::max(0, j - 3); jp <= std::min(nm - 1, j + 1); ++jp) {
          double v = ang * dipole_radial(kap, l, j, jp);
          out.dipole(static_cast<std::size_t>(idx(l, j)),
                     static_cast<std::size_t>(idx(l + 1, jp))) = v;
          out.dipole(static_cast<std::size_t>(idx(l + 1, jp)),
                     static_cast<std::size_t>(idx(l, j))) = v;
        }
      }
    }
  }
  return out;
}

// y <- L^{-1} y on one l-block slice of a column (forward substitution)
void solve_block_rows(const BidiagonalCholesky& f, CMat& h, int row0, int nm) {
  const std::size_t cols = h.cols();
  for (std::size_t col = 0; col < cols; ++col) {
    Complex prev = 0.0;
    for (int j = 0; j < nm; ++j) {
      std::size_t r = static_cast<std::size_t>(row0 + j);
      Complex v = h(r, col);
      if (j > 0) v -= f.sub[static_cast<std::size_t>(j - 1)] * prev;
      v /= f.diag[static_cast<std::size_t>(j)];
      h(r, col) = v;
      prev = v;
    }
  }
}

// row slices <- row * L^{-T} (same forward substitution acting on columns)
void solve_block_cols(const BidiagonalCholesky& f, CMat& h, int col0, int nm) {
  const std::size_t rows = h.rows();
  for (std::size_t row = 0; row < rows; ++row) {
    Complex prev = 0.0;
    for (int j = 0; j < nm; ++j) {
      std::size_t c = static_cast<std::size_t>(col0 + j);
      Complex v = h(row, c);
      if (j > 0) v -= f.sub[static_cast<std::size_t>(j - 1)] * prev;
      v /= f.diag[static_cast<std::size_t>(j)];
      h(row, c) = v;
      prev = v;
    }
  }
}

CMat combine_and_orthonormalize(const BlockPieces& pieces, Complex ck, Complex cc, Complex cd) {
  const int dim = pieces.dim;
  CMat h(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), 0.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(dim); ++i)
    for (std::size_t j = 0; j < static_cast<std::size_t>(dim); ++j)
      h(i, j) = ck * pieces.kinetic(i, j) - cc * pieces.coulomb(i, j) + cd * pieces.dipole(i, j);
  for (std::size_t b = 0; b < pieces.chol.size(); ++b) {
    int row0 = static_cast<int>(b) * pieces.n_max;
    solve_block_rows(pieces.chol[b], h, row0, pieces.n_max);
    solve_block_cols(pieces.chol[b], h, row0, pieces.n_max);
  }
  return h;
}

}  // namespace

void SturmianBasis::validate() const {
  if (!(kappa > 0.0)) throw SpecError("Sturmian scale kappa must be positive");
  if (n_max < 1) throw SpecError("Sturmian basis needs n_max >= 1");
  if (l_max < std::abs(m)) throw SpecError("Sturmian basis needs l_max >= |m|");
}

ScaledOperator build_scaled_hamiltonian(const SemiclassicalConfig& config, double theta,
                                        const SturmianBasis& basis, double field_override) {
  if (!(theta >= 0.0 && theta < kPi / 3))
    throw SpecError("dilation angle must lie in [0, pi/3)");
  if (basis.l_max < config.shell)
    throw SpecError("basis too small: l_max below the target shell");
  double field = (field_override >= 0.0) ? field_override : config.effective_field;
  BlockPieces pieces = assemble_block(basis);
  ScaledOperator op;
  op.config = config;
  op.theta = theta;
  op.basis = basis;
  op.field = field;
  Complex i(0.0, 1.0);
  op.h = combine_and_orthonormalize(pieces, std::exp(-2.0 * i * theta),
                                    std::exp(-i * theta), field * std::exp(i * theta));
  return op;
}

std::vector<Complex> solve_eigen(const ScaledOperator& op) {
  if (op.h.rows() > 2500) throw SpecError("eigenproblem dimension capped at 2500");
  return dense_eigenvalues(op.h);
}

std::vector<TaggedEigenvalue> resonance_eigenvalues_tagged(const SemiclassicalConfig& config,
                                                           double theta, double kappa,
                                                           int n_max, int l_max,
                                                           double field_override) {
  const int N = config.shell;
  if (l_max < N) throw SpecError("basis too small: l_max below the target shell");
  const double center = -1.0 / (2.0 * static_cast<double>(N) * N);
  const double near = 2.0 / (8.0 * static_cast<double>(N) * N * N);
  std::vector<TaggedEigenvalue> out;
  for (int m = 0; m <= std::min(l_max, N - 1); ++m) {
    SturmianBasis basis{kappa, n_max, l_max, m};
    ScaledOperator op = build_scaled_hamiltonian(config, theta, basis, field_override);
    std::vector<Complex> eigs = solve_eigen(op);
    for (const Complex& z : eigs) {
      // certify eigenvalues near the target cluster
      if (std::abs(z - center) < near) {
        double res = inverse_iteration_residual(op.h, z);
        if (res > 1e-8)
          throw LinalgError("cluster eigenvalue failed residual certification");
      }
      out.push_back({z, m});
      if (m > 0) out.push_back({z, -m});  // m <-> -m degeneracy
    }
  }
  return out;
}

std::vector<Complex> resonance_eigenvalues(const SemiclassicalConfig& config, double theta,
                                           double kappa, int n_max, int l_max,
                                           double field_override) {
  std::vector<TaggedEigenvalue> tagged =
      resonance_eigenvalues_tagged(config, theta, kappa, n_max, l_max, field_override);
  std::vector<Complex> out;
  out.reserve(tagged.size());
  for (const TaggedEigenvalue& t : tagged) out.push_back(t.z);
  return out;
}

ResonanceCluster extract_cluster(const std::vector<Complex>& eigs, int N, double radius) {
  if (N < 1) throw SpecError("cluster extraction needs N >= 1");
  const double center = -1.0 / (2.0 * static_cast<double>(N) * N);
  const std::size_t want = static_cast<std::size_t>(N) * N;
  ResonanceCluster rc;
  rc.center = center;
  rc.selection_radius = (radius > 0.0) ? radius : 1.0 / (8.0 * std::pow(N, 3.0));

  std::vector<Complex> sorted(eigs);
  std::sort(sorted.begin(), sorted.end(), [&](const Complex& a, const Complex& b) {
    return std::abs(a - center) < std::abs(b - center);
  });
  if (sorted.size() < want) throw ClusterError("fewer eigenvalues than the cluster dimension");

  double spread = std::abs(sorted[want - 1] - center);
  if (spread >= rc.selection_radius) {
    // field splitting exceeds the default contour: widen to 3x the spread
    rc.selection_radius = 3.0 * spread;
    rc.radius_enlarged = true;
  }
  std::size_t count = 0;
  while (count < sorted.size() && std::abs(sorted[count] - center) < rc.selection_radius)
    ++count;
  if (count != want) {
    double nearest_excluded = (count < sorted.size())
                                  ? std::abs(sorted[count] - center)
                                  : std::numeric_limits<double>::infinity();
    throw ClusterError("cluster not separated: found " + std::to_string(count) + " of " +
                       std::to_string(want) + " eigenvalues; nearest excluded at distance " +
                       std::to_string(nearest_excluded));
  }
  rc.shifts.reserve(want);
  for (std::size_t k = 0; k < want; ++k) rc.shifts.push_back(sorted[k] - center);
  return rc;
}

ThetaScanResult theta_independence_scan(const SemiclassicalConfig& config, double kappa,
                                        int n_max, int l_max,
                                        const std::vector<double>& theta_grid,
                                        double field_override) {
  if (theta_grid.size() < 2) throw SpecError("theta scan needs at least two angles");
  for (double t : theta_grid)
    if (!(t > 0.05 && t < 1.0)) throw SpecError("theta grid must lie inside (0.05, 1.0)");
  ThetaScanResult out;
  for (double t : theta_grid) {
    out.thetas.push_back(t);
    out.clusters.push_back(
        extract_cluster(resonance_eigenvalues(config, t, kappa, n_max, l_max, field_override),
                        config.shell));
  }
  const double center = out.clusters.front().center;
  for (const auto& c : out.clusters) {
    Complex mean = 0.0;
    for (const Complex& s : c.shifts) mean += s;
    mean /= static_cast<double>(c.shifts.size());
    out.center_error = std::max(out.center_error, std::abs(mean));
    (void)center;
  }
  for (std::size_t a = 0; a + 1 < out.clusters.size(); ++a) {
    const auto& ca = out.clusters[a].shifts;
    const auto& cb = out.clusters[a + 1].shifts;
    if (ca.size() != cb.size()) throw ClusterError("cluster count mismatch across theta");
    std::vector<bool> used(cb.size(), false);
    for (const Complex& z : ca) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t k = 0; k < cb.size(); ++k) {
        if (used[k]) continue;
        double dd = std::abs(z - cb[k]);
        if (dd < best) {
          best = dd;
          arg = k;
        }
      }
      used[arg] = true;
      out.max_matched_distance = std::max(out.max_matched_distance, best);
    }
  }
  return out;
}

std::vector<TraceIdentityRow> verify_trace_identity(const SemiclassicalConfig& config,
                                                    double theta, double kappa, int n_max,
                                                    int l_max, int m_max, double field_knob) {
  if (m_max < 1) throw SpecError("trace identity needs m_max >= 1");
  if (!(field_knob > 0.0)) throw SpecError("trace identity needs a positive field knob");
  const int N = config.shell;
  const double d = static_cast<double>(N) * N;
  const double scale_out = config.field / (field_knob * static_cast<double>(N) * N);

  auto scaled_moments = [&](int nmax_run, double knob) {
    ResonanceCluster rc = extract_cluster(
        resonance_eigenvalues(config, theta, kappa, nmax_run, l_max, knob), N);
    std::vector<Complex> mom(static_cast<std::size_t>(m_max) + 1, 0.0);
    double s_out = config.field / (knob * static_cast<double>(N) * N);
    for (const Complex& nu : rc.shifts) {
      Complex z = nu * s_out;
      Complex pw = 1.0;
      for (int m = 1; m <= m_max; ++m) {
        pw *= z;
        mom[static_cast<std::size_t>(m)] += pw;
      }
    }
    for (Complex& v : mom) v /= d;
    return mom;
  };
  (void)scale_out;

  ClusterSpectrum quantum = diagonalize_shell(build_shell_matrix(N, config.field));
  std::vector<double> qm(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (double v : quantum.values) {
    double pw = 1.0;
    for (int m = 1; m <= m_max; ++m) {
      pw *= v;
      qm[static_cast<std::size_t>(m)] += pw;
    }
  }
  for (double& v : qm) v /= d;

  std::vector<Complex> full = scaled_moments(n_max, field_knob);
  std::vector<Complex> coarse = scaled_moments(std::max(n_max - 10, N + 5), field_knob);
  std::vector<Complex> halfknob = scaled_moments(n_max, 0.5 * field_knob);

  std::vector<TraceIdentityRow> rows;
  for (int m = 1; m <= m_max; ++m) {
    TraceIdentityRow row;
    row.m = m;
    row.resonance_side = full[static_cast<std::size_t>(m)];
    row.quantum_side = qm[static_cast<std::size_t>(m)];
    row.residual = std::abs(row.resonance_side - row.quantum_side);
    double basis_term = std::abs(full[static_cast<std::size_t>(m)] -
                                 coarse[static_cast<std::size_t>(m)]);
    double knob_term = std::abs(full[static_cast<std::size_t>(m)] -
                                halfknob[static_cast<std::size_t>(m)]);
    row.budget = 3.0 * basis_term + 2.5 * knob_term + 1e-12;
    rows.push_back(row);
  }
  return rows;
}

int numerical_range_check(const SemiclassicalConfig& config, double theta,
                          const SturmianBasis& basis, int n_samples, std::uint64_t seed,
                          double field_override, double tol) {
  double field = (field_override >= 0.0) ? field_override : config.effective_field;
  if (!(field > 0.0)) throw SpecError("numerical range check needs a nonzero field");
  double phi = 3.0 * theta;
  if (!(phi > 0.0 && phi < kPi / 3))
    throw SpecError("field argument must satisfy 0 < 3 theta < pi/3");
  BlockPieces pieces = assemble_block(basis);
  Complex i(0.0, 1.0);
  // V = 0 operator times e^{2 i theta}: kinetic + field e^{3 i theta} x_3
  CMat m = combine_and_orthonormalize(pieces, 1.0, 0.0, field * std::exp(3.0 * i * theta));
  const std::size_t dim = m.rows();
  const double slope = std::cos(phi) / std::sin(phi);
  SplitStream rng(seed);
  int violations = 0;
  std::vector<Complex> u(dim);
  for (int s = 0; s < n_samples; ++s) {
    double nrm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      u[k] = Complex(rng.gaussian(), rng.gaussian());
      nrm += std::norm(u[k]);
    }
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < dim; ++k) u[k] /= nrm;
    Complex z = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      Complex row = 0.0;
      for (std::size_t c = 0; c < dim; ++c) row += m(r, c) * u[c];
      z += std::conj(u[r]) * row;
    }
    if (!(z.real() > slope * z.imag() - tol)) ++violations;
  }
  return violations;
}

// ----- quadratic estimate ---------------------------------------------------

namespace {

struct GaussPoly {
  std::map<std::array<int, 3>, Complex> c;
  double gamma = 1.0;
};

GaussPoly gp_make(double gamma, std::initializer_list<std::pair<std::array<int, 3>, Complex>> t) {
  GaussPoly g;
  g.gamma = gamma;
  for (const auto& kv : t) g.c[kv.first] += kv.second;
  return g;
}

void gp_add(GaussPoly& g, std::array<int, 3> k, Complex v) {
  if (v != Complex(0.0, 0.0)) g.c[k] += v;
}

// Laplacian of P e^{-g r^2}: (Lap P - 4 g x.grad P - 6 g P + 4 g^2 r^2 P) e^{-g r^2}
GaussPoly gp_laplacian(const GaussPoly& g) {
  GaussPoly out;
  out.gamma = g.gamma;
  const double ga = g.gamma;
  for (const auto& [k, v] : g.c) {
    for (int d = 0; d < 3; ++d) {
      if (k[d] >= 2) {
        std::array<int, 3> kk = k;
        kk[d] -= 2;
        gp_add(out, kk, v * static_cast<double>(k[d] * (k[d] - 1)));
      }
    }
    int deg = k[0] + k[1] + k[2];
    gp_add(out, k, v * (-4.0 * ga * deg - 6.0 * ga));
    for (int d = 0; d < 3; ++d) {
      std::array<int, 3> kk = k;
      kk[d] += 2;
      gp_add(out, kk, v * 4.0 * ga * ga);
    }
  }
  return out;
}

GaussPoly gp_mul_x1(const GaussPoly& g) {
  GaussPoly out;
  out.gamma = g.gamma;
  for (const auto& [k, v] : g.c) {
    std::array<int, 3> kk = k;
    kk[0] += 1;
    gp_add(out, kk, v);
  }
  return out;
}

GaussPoly gp_combine(const GaussPoly& a, Complex ca, const GaussPoly& b, Complex cb) {
  GaussPoly out;
  out.gamma = a.gamma;
  for (const auto& [k, v] : a.c) gp_add(out, k, ca * v);
  for (const auto& [k, v] : b.c) gp_add(out, k, cb * v);
  return out;
}

double gauss_moment_1d(int k, double beta) {
  // int x^k e^{-beta x^2} dx
  if (k % 2) return 0.0;
  double v = std::sqrt(kPi / beta);
  for (int j = 1; 2 * j <= k; ++j) v *= (2.0 * j - 1.0) / (2.0 * beta);
  return v;
}

Complex gp_inner(const GaussPoly& a, const GaussPoly& b) {
  double beta = a.gamma + b.gamma;
  Complex sum = 0.0;
  for (const auto& [ka, va] : a.c)
    for (const auto& [kb, vb] : b.c) {
      double m = gauss_moment_1d(ka[0] + kb[0], beta) * gauss_moment_1d(ka[1] + kb[1], beta) *
                 gauss_moment_1d(ka[2] + kb[2], beta);
      if (m != 0.0) sum += std::conj(va) * vb * m;
    }
  return sum;
}

double gp_norm_sq(const GaussPoly& a) { return gp_inner(a, a).real(); }

}  // namespace

double quadratic_estimate_c(Complex alpha_field) {
  double th = std::arg(alpha_field);
  if (std::abs(std::sin(th)) < 1e-12)
    throw SpecError("quadratic estimate needs a field with nonzero imaginary part");
  return 1.5 * std::pow(1.0 - std::abs(std::cos(th)), 1.5) *
         std::pow(std::abs(std::sin(th)), 1.5) * std::pow(std::abs(alpha_field), 4.0 / 3.0);
}

double quadratic_estimate_beta(Complex alpha_field) {
  double th = std::arg(alpha_field);
  if (std::abs(std::sin(th)) < 1e-12)
    throw SpecError("quadratic estimate needs a field with nonzero imaginary part");
  return 0.5 * (1.0 - std::abs(std::cos(th)));
}

std::vector<QuadraticMargin> quadratic_estimate_check(Complex alpha_field) {
  const double c = quadratic_estimate_c(alpha_field);
  const double beta = quadratic_estimate_beta(alpha_field);
  std::vector<std::pair<std::string, GaussPoly>> suite;
  suite.emplace_back("gaussian", gp_make(0.5, {{{0, 0, 0}, 1.0}}));
  suite.emplace_back("x1*gaussian", gp_make(0.5, {{{1, 0, 0}, 1.0}}));
  suite.emplace_back("x1^2*gaussian", gp_make(1.0, {{{2, 0, 0}, 1.0}}));
  suite.emplace_back("x2x3*gaussian", gp_make(1.0, {{{0, 1, 1}, 1.0}}));
  suite.emplace_back("(x1+ix2)^2*gaussian",
                     gp_make(0.5, {{{2, 0, 0}, 1.0}, {{1, 1, 0}, Complex(0.0, 2.0)}, {{0, 2, 0}, -1.0}}));
  suite.emplace_back("(1+x1+x1x2x3)*gaussian",
                     gp_make(2.0, {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}, {{1, 1, 1}, 1.0}}));
  suite.emplace_back("x1^3*gaussian", gp_make(1.0, {{{3, 0, 0}, 1.0}}));
  suite.emplace_back("r^2*gaussian",
                     gp_make(0.75, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}}));

  std::vector<QuadraticMargin> out;
  for (const auto& [name, psi] : suite) {
    GaussPoly lap = gp_laplacian(psi);
    GaussPoly x1 = gp_mul_x1(psi);
    GaussPoly h = gp_combine(lap, -1.0, x1, alpha_field);
    double h2 = gp_norm_sq(h);
    double lower = beta * (gp_norm_sq(lap) + gp_norm_sq(x1)) - c * gp_norm_sq(psi);
    QuadraticMargin qm;
    qm.psi = name;
    qm.alpha = alpha_field;
    qm.h_norm_sq = h2;
    qm.lower_bound = lower;
    qm.margin = h2 - lower;
    out.push_back(qm);
  }
  return out;
}

}  // namespace szegolab
