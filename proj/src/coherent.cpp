#include "szegolab/coherent.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "szegolab/hydrogen.hpp"
#include "szegolab/quadrature.hpp"

namespace szegolab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

using Cd = std::complex<double>;

Cd ipow(Cd z, int n) {
  Cd r = 1.0;
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

// i^l, the phase relating the momentum-space eigenbasis to the position one
Cd il_phase(int l) {
  switch (l & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double alpha_norm_integral(int l, const S3Grid& grid) {
  // reference label; the value is rotation invariant
  CoherentParam a;
  a.re = {1.0, 0.0, 0.0, 0.0};
  a.im = {0.0, 1.0, 0.0, 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.w.size(); ++i) {
    const Vec4& w = grid.omega[i].omega;
    double u = 0.0, v = 0.0;
    for (int j = 0; j < 4; ++j) {
      u += a.re[j] * w[j];
      v += a.im[j] * w[j];
    }
    sum += grid.w[i] * std::pow(u * u + v * v, l);
  }
  return sum;
}

std::mutex a_cache_mutex;

struct ChunkPlan {
  long chunk_size;
  long n_chunks;
};

ChunkPlan plan_chunks(long samples) {
  long chunk = 4096;
  long n = (samples + chunk - 1) / chunk;
  return {chunk, n};
}

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(chunk_index) on a worker pool. Callers reduce per-chunk results in
// chunk order, which keeps every output independent of the worker count.
void run_chunks(long n_chunks, int workers, const std::function<void(long)>& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n_chunks <= 1) {
    for (long c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        long c = next.fetch_add(1);
        if (c >= n_chunks) return;
        fn(c);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

void DilationParam::validate() const {
  if (!(std::abs(theta.imag()) < kPi / 2))
    throw SpecError("dilation parameter outside the analyticity strip |Im theta| < pi/2");
}

double normalization_a(int l) {
  if (l < 0) throw SpecError("normalization index must be nonnegative");
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(a_cache_mutex);
  auto it = cache.find(l);
  if (it == cache.end()) {
    double v = 1.0 / std::sqrt(alpha_norm_integral(l, s3_product_grid(l + 10)));
    it = cache.emplace(l, v).first;
  }
  return it->second;
}

double normalization_a_oracle(int l) {
  if (l < 0) throw SpecError("normalization index must be nonnegative");
  return 1.0 / std::sqrt(alpha_norm_integral(l, s3_torus_grid(l + 10)));
}

std::complex<double> sphere_coherent(const CoherentParam& alpha, int l, const SpherePoint& omega) {
  Cd dotp = 0.0;
  for (int j = 0; j < 4; ++j) dotp += Cd(alpha.re[j], alpha.im[j]) * omega.omega[j];
  return normalization_a(l) * ipow(dotp, l);
}

std::complex<double> momentum_coherent(const CoherentParam& alpha, int l, const Vec3& p,
                                       std::complex<double> theta) {
  if (l < 1) throw SpecError("momentum coherent state needs shell index l >= 1");
  DilationParam{theta}.validate();
  const double p2 = dot(p, p);
  const Cd z = static_cast<double>(l) * static_cast<double>(l) * std::exp(2.0 * theta) * p2;
  const Cd denom = z + 1.0;
  const Cd fall = 2.0 / denom;
  const Cd scale = static_cast<double>(l) * std::exp(theta);
  Cd dotp = Cd(alpha.re[3], alpha.im[3]) * ((z - 1.0) / denom);
  for (int j = 0; j < 3; ++j)
    dotp += Cd(alpha.re[j], alpha.im[j]) * (2.0 * scale * p[j] / denom);
  return normalization_a(l - 1) * std::pow(static_cast<double>(l), 1.5) * fall * fall *
         ipow(dotp, l - 1);
}

MomentumGrid momentum_grid(int shell, int order, double scale) {
  if (shell < 1) throw SpecError("momentum grid needs a shell index >= 1");
  if (order <= 0) order = shell + 12;
  if (scale <= 0.0) scale = static_cast<double>(shell);
  S3Grid s3 = s3_product_grid(order);
  MomentumGrid g;
  g.shell = shell;
  g.p.reserve(s3.w.size());
  g.w.reserve(s3.w.size());
  g.omega = std::move(s3.omega);
  const double inv3 = 1.0 / (scale * scale * scale);
  for (std::size_t i = 0; i < g.omega.size(); ++i) {
    const Vec4& w = g.omega[i].omega;
    double u = w[3];
    double rho = std::sqrt(std::max(1e-300, 1.0 - u * u));
    double q = std::sqrt((1.0 + u) / (1.0 - u));
    Vec3 p{w[0] / rho, w[1] / rho, w[2] / rho};
    for (double& c : p) c *= q / scale;
    g.p.push_back(p);
    double om = 1.0 - u;
    g.w.push_back(s3.w[i] * inv3 / (om * om * om));
  }
  return g;
}

namespace {

Cd overlap_on_grid(const CoherentParam& a, const CoherentParam& b, int l,
                   const MomentumGrid& g) {
  Cd sum = 0.0;
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    Cd va = momentum_coherent(a, l, g.p[i], 0.0);
    Cd vb = momentum_coherent(b, l, g.p[i], 0.0);
    sum += g.w[i] * std::conj(va) * vb;
  }
  return sum;
}

}  // namespace

std::complex<double> coherent_overlap(const CoherentParam& alpha, const CoherentParam& beta,
                                      int l) {
  Cd v1 = overlap_on_grid(alpha, beta, l, momentum_grid(l, l + 12));
  Cd v2 = overlap_on_grid(alpha, beta, l, momentum_grid(l, l + 18));
  if (std::abs(v1 - v2) > 1e-9 * std::max(1.0, std::abs(v2)))
    throw QuadratureError("coherent overlap quadrature did not converge");
  return v2;
}

double momentum_norm(const CoherentParam& alpha, int l, double theta) {
  MomentumGrid g = momentum_grid(l, l + 12, l * std::exp(theta));
  double sum = 0.0;
  for (std::size_t i = 0; i < g.w.size(); ++i)
    sum += g.w[i] * std::norm(momentum_coherent(alpha, l, g.p[i], theta));
  return std::sqrt(sum);
}

std::vector<std::complex<double>> shell_expansion(const CoherentParam& alpha, int N) {
  MomentumGrid g = momentum_grid(N, N + 12);
  std::vector<Cd> coeff(static_cast<std::size_t>(N) * N, 0.0);
  std::vector<Cd> ylm;
  std::vector<double> rad(static_cast<std::size_t>(N), 0.0);
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    const Vec3& p = g.p[i];
    double pr = norm(p);
    double ct = (pr > 0.0) ? p[2] / pr : 1.0;
    double phi = std::atan2(p[1], p[0]);
    spherical_harmonics_all(N - 1, ct, phi, ylm);
    for (int l = 0; l < N; ++l) rad[static_cast<std::size_t>(l)] = momentum_radial(N, l, pr);
    Cd psi = momentum_coherent(alpha, N, p, 0.0) * g.w[i];
    for (int l = 0; l < N; ++l) {
      // c_lm = <(-i)^l R Y, Psi> = i^l int R conj(Y) Psi
      Cd base = il_phase(l) * rad[static_cast<std::size_t>(l)] * psi;
      for (int m = -l; m <= l; ++m) {
        std::size_t idx = static_cast<std::size_t>(l) * (l + 1) + m;
        coeff[idx] += base * std::conj(ylm[idx]);
      }
    }
  }
  return coeff;
}

ProjectorCheck projector_resolution_check(int shell, long samples, std::uint64_t seed,
                                          int workers) {
  if (shell < 1) throw SpecError("projector check needs shell >= 1");
  if (samples < 1) throw SpecError("projector check needs a positive sample count");
  const MomentumGrid g = momentum_grid(shell, shell + 10);
  const std::size_t nn = g.w.size();
  const std::size_t d = static_cast<std::size_t>(shell) * shell;

  // shell eigenbasis on the grid plus one next-shell state; the relative
  // momentum-space phases drop out of the deviation norms
  std::vector<std::vector<Cd>> targets(d + 1, std::vector<Cd>(nn, 0.0));
  {
    std::vector<Cd> ylm;
    for (std::size_t i = 0; i < nn; ++i) {
      const Vec3& p = g.p[i];
      double pr = norm(p);
      double ct = (pr > 0.0) ? p[2] / pr : 1.0;
      double phi = std::atan2(p[1], p[0]);
      spherical_harmonics_all(shell, ct, phi, ylm);
      for (int l = 0; l < shell; ++l) {
        double rl = momentum_radial(shell, l, pr);
        for (int m = -l; m <= l; ++m) {
          std::size_t idx = static_cast<std::size_t>(l) * (l + 1) + m;
          targets[idx][i] = rl * ylm[idx];
        }
      }
      targets[d][i] = momentum_radial(shell + 1, 0, pr) * ylm[0];
    }
  }

  ChunkPlan plan = plan_chunks(samples);
  SplitStream master(seed);
  std::vector<std::vector<std::vector<Cd>>> partial(static_cast<std::size_t>(plan.n_chunks));
  run_chunks(plan.n_chunks, workers, [&](long c) {
    SplitStream rng = master.substream(static_cast<std::uint64_t>(c));
    long lo = c * plan.chunk_size;
    long hi = std::min<long>(samples, lo + plan.chunk_size);
    std::vector<std::vector<Cd>> acc(d + 1, std::vector<Cd>(nn, 0.0));
    std::vector<Cd> psi(nn);
    for (long s = lo; s < hi; ++s) {
      CoherentParam a = sample_alpha(rng);
      for (std::size_t i = 0; i < nn; ++i) psi[i] = momentum_coherent(a, shell, g.p[i], 0.0);
      for (std::size_t t = 0; t <= d; ++t) {
        Cd ip = 0.0;
        for (std::size_t i = 0; i < nn; ++i) ip += g.w[i] * std::conj(psi[i]) * targets[t][i];
        for (std::size_t i = 0; i < nn; ++i) acc[t][i] += ip * psi[i];
      }
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  });

  std::vector<std::vector<Cd>> total(d + 1, std::vector<Cd>(nn, 0.0));
  for (long c = 0; c < plan.n_chunks; ++c)
    for (std::size_t t = 0; t <= d; ++t)
      for (std::size_t i = 0; i < nn; ++i)
        total[t][i] += partial[static_cast<std::size_t>(c)][t][i];

  const double scale = static_cast<double>(d) / static_cast<double>(samples);
  ProjectorCheck out{0.0, 0.0};
  for (std::size_t t = 0; t <= d; ++t) {
    double dev = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      Cd est = scale * total[t][i];
      Cd expect = (t < d) ? targets[t][i] : Cd(0.0, 0.0);
      dev += g.w[i] * std::norm(est - expect);
    }
    dev = std::sqrt(dev);
    if (t < d)
      out.in_shell_deviation = std::max(out.in_shell_deviation, dev);
    else
      out.out_shell_deviation = dev;
  }
  return out;
}

namespace {

// int_{x0}^{x0+span} x^{pw} |laguerre_scaled(q, a, e^{i theta} x)|^2 dx
double tail_radial_integral(int q, double a, int pw, double x0, double span, double theta,
                            int nodes) {
  const Quadrature& gl = gauss_legendre(nodes);
  double sum = 0.0;
  const Cd rot(std::cos(theta), std::sin(theta));
  for (int i = 0; i < nodes; ++i) {
    double x = x0 + 0.5 * span * (gl.x[i] + 1.0);
    Cd m = laguerre_scaled(q, a, rot * x);
    sum += 0.5 * span * gl.w[i] * std::pow(x, pw) * std::norm(m);
  }
  return sum;
}

double dilated_moment_from(const CoherentParam& alpha, int N, int n, double theta, double r0) {
  if (N < 1) throw SpecError("dilated moment needs shell N >= 1");
  if (n < 0) throw SpecError("moment power must be nonnegative");
  if (!(std::abs(theta) < kPi / 4)) throw SpecError("dilated moment needs |theta| < pi/4");
  const double ct = std::cos(theta);
  std::vector<Cd> coeff = shell_expansion(alpha, N);
  const double x0 = 2.0 * N * r0;  // x = 2u/N at the cutoff radius u = N^2 r0

  auto run = [&](int nodes, double extra) {
    double acc = 0.0;
    for (int l = 0; l < N; ++l) {
      double wl = 0.0;
      for (int m = -l; m <= l; ++m)
        wl += std::norm(coeff[static_cast<std::size_t>(l) * (l + 1) + m]);
      if (wl == 0.0) continue;
      int qdeg = N - l - 1;
      int pw = n + 2 + 2 * l;
      double span = (2.0 * pw + 80.0) / ct + extra;
      double anl = 2.0 / (static_cast<double>(N) * N) *
                   std::exp(0.5 * (std::lgamma(N - l) - std::lgamma(N + l + 1)));
      double integral = tail_radial_integral(qdeg, 2.0 * l + 1.0, pw, x0, span, theta, nodes);
      // prefactor from u = N x / 2 and the N^2 dilation of the moment weight
      double pref = std::pow(static_cast<double>(N), -2.0 * n) *
                    std::pow(0.5 * N, n + 3.0) * anl * anl;
      acc += wl * pref * integral;
    }
    return acc;
  };
  double coarse = run(160, 0.0);
  double fine = run(260, 30.0);
  double ref = std::max(std::abs(fine), 1e-300);
  if (std::abs(fine - coarse) > 0.1 * ref)
    throw GridError("dilated moment radial grid did not converge");
  return fine;
}

}  // namespace

double tail_mass(const CoherentParam& alpha, int N, double r0, int n, double theta) {
  if (!(r0 > 1.0)) throw SpecError("tail mass needs r0 > 1");
  return dilated_moment_from(alpha, N, n, theta, r0);
}

double dilated_radial_moment(const CoherentParam& alpha, int N, int n, double theta) {
  return dilated_moment_from(alpha, N, n, theta, 0.0);
}

namespace {

double stark_diagonal_on_grid(const CoherentParam& alpha, int N, const MomentumGrid& g) {
  const double a_c = normalization_a(N - 1) * std::pow(static_cast<double>(N), 1.5);
  const Cd a1(alpha.re[0], alpha.im[0]);
  const Cd a4(alpha.re[3], alpha.im[3]);
  Cd acc = 0.0;
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    const Vec3& p = g.p[i];
    Vec3 q{N * p[0], N * p[1], N * p[2]};
    const double q2 = dot(q, q);
    const double gq = 2.0 / (q2 + 1.0);
    Cd aw3 = 0.0;
    for (int j = 0; j < 3; ++j) aw3 += Cd(alpha.re[j], alpha.im[j]) * (gq * q[j]);
    Cd dotp = a4 * ((q2 - 1.0) / (q2 + 1.0)) + aw3;
    Cd dn1 = ipow(dotp, N - 1);
    Cd dn2 = (N >= 2) ? ipow(dotp, N - 2) : Cd(0.0, 0.0);
    Cd psi = a_c * gq * gq * dn1;
    // d/dp_1 from the stereographic Jacobian; q = N p
    Cd dpsi = a_c * gq * gq * gq * static_cast<double>(N) *
              (-2.0 * q[0] * dn1 +
               static_cast<double>(N - 1) * dn2 * (a1 - q[0] * aw3 + a4 * gq * q[0]));
    acc += g.w[i] * std::conj(psi) * Cd(0.0, 1.0) * dpsi;
  }
  return acc.real();
}

}  // namespace

double coherent_stark_diagonal(const CoherentParam& alpha, int N, double F) {
  if (N < 1) throw SpecError("stark diagonal needs shell N >= 1");
  if (N == 1) return 0.0;
  double v1 = stark_diagonal_on_grid(alpha, N, momentum_grid(N, N + 12));
  double v2 = stark_diagonal_on_grid(alpha, N, momentum_grid(N, N + 18));
  if (std::abs(v1 - v2) > 1e-8 * std::max(1.0, std::abs(v2)))
    throw QuadratureError("stark diagonal quadrature did not converge");
  return F / (static_cast<double>(N) * N) * v2;
}

}  // namespace szegolab
