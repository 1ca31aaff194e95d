#include "szegolab/kepler.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace szegolab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kCollisionTol = 1e-12;

// Geometry of one great-circle point: omega(s), its derivative, the stable
// radius 1 - omega_4(s), and the reconstructed position.
struct CirclePoint {
  Vec4 omega;
  Vec4 domega;
  double radius;
  Vec3 x;
};

struct CircleGeometry {
  CoherentParam alpha;
  double c4;    // hypot(re4, im4): the eccentricity
  double phi4;  // phase of the omega_4 oscillation

  explicit CircleGeometry(const CoherentParam& a) : alpha(a) {
    c4 = std::hypot(a.re[3], a.im[3]);
    phi4 = (c4 > 0.0) ? std::atan2(a.im[3], a.re[3]) : 0.0;
  }

  CirclePoint at(double s) const {
    CirclePoint pt;
    double cs = std::cos(s), sn = std::sin(s);
    for (int j = 0; j < 4; ++j) {
      pt.omega[j] = cs * alpha.re[j] + sn * alpha.im[j];
      pt.domega[j] = -sn * alpha.re[j] + cs * alpha.im[j];
    }
    // 1 - c4 cos(s - phi4) without cancellation
    double half = std::sin(0.5 * (s - phi4));
    pt.radius = (1.0 - c4) + 2.0 * c4 * half * half;
    for (int j = 0; j < 3; ++j)
      pt.x[j] = -pt.radius * pt.domega[j] - pt.omega[j] * pt.domega[3];
    return pt;
  }
};

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

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

double average_x1_geometry(const CircleGeometry& geo, int nodes) {
  double sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    CirclePoint pt = geo.at(2.0 * kPi * k / nodes);
    sum += pt.x[0] * pt.radius;
  }
  return sum / nodes;
}

}  // namespace

KeplerOrbit orbit_from_alpha(const CoherentParam& alpha, int n_samples) {
  if (n_samples < 16) throw SpecError("orbit sampling needs at least 16 nodes");
  alpha.validate(1e-10);
  CircleGeometry geo(alpha);
  KeplerOrbit orbit;
  orbit.alpha = alpha;
  orbit.samples.resize(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    double s = 2.0 * kPi * k / n_samples;
    CirclePoint pt = geo.at(s);
    KeplerOrbit::Sample& out = orbit.samples[static_cast<std::size_t>(k)];
    out.s = s;
    out.t = s - alpha.re[3] * std::sin(s) - alpha.im[3] * (1.0 - std::cos(s));
    out.x = pt.x;
    out.radius = pt.radius;
    out.near_collision = pt.radius < kCollisionTol;
    double denom = std::max(pt.radius, kCollisionTol);
    out.p = {pt.omega[0] / denom, pt.omega[1] / denom, pt.omega[2] / denom};
  }
  // conserved quantities from the sample farthest from the collision point
  std::size_t best = 0;
  for (std::size_t k = 1; k < orbit.samples.size(); ++k)
    if (orbit.samples[k].radius > orbit.samples[best].radius) best = k;
  const KeplerOrbit::Sample& ref = orbit.samples[best];
  orbit.angular_momentum = cross(ref.x, ref.p);
  Vec3 pl = cross(ref.p, orbit.angular_momentum);
  double rn = norm(ref.x);
  orbit.runge_lenz = {pl[0] - ref.x[0] / rn, pl[1] - ref.x[1] / rn, pl[2] - ref.x[2] / rn};
  orbit.eccentricity = norm(orbit.runge_lenz);
  return orbit;
}

double orbit_average(const KeplerOrbit& orbit,
                     const std::function<double(const Vec3&)>& observable) {
  double sum = 0.0;
  for (const auto& s : orbit.samples) sum += observable(s.x) * s.radius;
  return sum / static_cast<double>(orbit.samples.size());
}

double orbit_average_x1(const CoherentParam& alpha, int n_samples) {
  if (n_samples < 16) throw SpecError("orbit sampling needs at least 16 nodes");
  return average_x1_geometry(CircleGeometry(alpha), n_samples);
}

EnergySurfaceSample sample_surface(SplitStream& rng) {
  for (;;) {
    CoherentParam a = sample_alpha(rng);
    CircleGeometry geo(a);
    // accept s with probability |x(s)| / 2: uniform in physical time
    for (int tries = 0; tries < 64; ++tries) {
      double s = rng.uniform(0.0, 2.0 * kPi);
      double u = rng.uniform();
      CirclePoint pt = geo.at(s);
      if (u * 2.0 < pt.radius) {
        if (pt.radius < kCollisionTol) break;
        EnergySurfaceSample out;
        out.x = pt.x;
        out.p = {pt.omega[0] / pt.radius, pt.omega[1] / pt.radius, pt.omega[2] / pt.radius};
        return out;
      }
    }
  }
}

MonteCarloEstimate classical_functional(const std::function<double(double)>& rho, double F,
                                        long samples, std::uint64_t seed, int workers,
                                        int orbit_nodes) {
  if (samples < 1) throw SpecError("classical functional needs a positive sample count");
  if (!(F > 0.0)) throw SpecError("field strength must be positive");
  const long chunk = 8192;
  const long n_chunks = (samples + chunk - 1) / chunk;
  SplitStream master(seed);
  std::vector<double> sum(static_cast<std::size_t>(n_chunks), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(n_chunks), 0.0);
  run_chunks(n_chunks, workers, [&](long c) {
    SplitStream rng = master.substream(static_cast<std::uint64_t>(c));
    long lo = c * chunk, hi = std::min(samples, lo + chunk);
    double s1 = 0.0, s2 = 0.0;
    for (long i = lo; i < hi; ++i) {
      CoherentParam a = sample_alpha(rng);
      double v = rho(F * average_x1_geometry(CircleGeometry(a), orbit_nodes));
      s1 += v;
      s2 += v * v;
    }
    sum[static_cast<std::size_t>(c)] = s1;
    sumsq[static_cast<std::size_t>(c)] = s2;
  });
  double s1 = 0.0, s2 = 0.0;
  for (long c = 0; c < n_chunks; ++c) {
    s1 += sum[static_cast<std::size_t>(c)];
    s2 += sumsq[static_cast<std::size_t>(c)];
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.value = s1 / static_cast<double>(samples);
  double var = std::max(0.0, s2 / samples - est.value * est.value);
  est.std_error = std::sqrt(var / static_cast<double>(samples));
  return est;
}

EmpiricalDistribution classical_distribution(double F, long samples, std::uint64_t seed,
                                             int workers, int orbit_nodes) {
  if (samples < 1) throw SpecError("classical distribution needs a positive sample count");
  if (!(F > 0.0)) throw SpecError("field strength must be positive");
  const long chunk = 8192;
  const long n_chunks = (samples + chunk - 1) / chunk;
  SplitStream master(seed);
  std::vector<double> atoms(static_cast<std::size_t>(samples), 0.0);
  run_chunks(n_chunks, workers, [&](long c) {
    SplitStream rng = master.substream(static_cast<std::uint64_t>(c));
    long lo = c * chunk, hi = std::min(samples, lo + chunk);
    for (long i = lo; i < hi; ++i) {
      CoherentParam a = sample_alpha(rng);
      atoms[static_cast<std::size_t>(i)] = F * average_x1_geometry(CircleGeometry(a), orbit_nodes);
    }
  });
  return EmpiricalDistribution::uniform_atoms(std::move(atoms));
}

double kepler_equation_average_x1(const Vec3& angular_momentum, const Vec3& runge_lenz,
                                  int nodes) {
  if (nodes < 16) throw SpecError("kepler-equation average needs at least 16 nodes");
  const double e = norm(runge_lenz);
  Vec3 e1;
  if (e > 1e-12) {
    e1 = {runge_lenz[0] / e, runge_lenz[1] / e, runge_lenz[2] / e};
  } else {
    // circular orbit: any in-plane direction works
    Vec3 seed{1.0, 0.0, 0.0};
    Vec3 ln = angular_momentum;
    double lnn = norm(ln);
    if (lnn < 1e-12) throw SpecError("degenerate conserved pair");
    for (int j = 0; j < 3; ++j) ln[j] /= lnn;
    if (std::abs(dot(seed, ln)) > 0.9) seed = {0.0, 1.0, 0.0};
    double pr = dot(seed, ln);
    for (int j = 0; j < 3; ++j) seed[j] -= pr * ln[j];
    double sn = norm(seed);
    for (int j = 0; j < 3; ++j) seed[j] /= sn;
    e1 = seed;
  }
  const double b = std::sqrt(std::max(0.0, 1.0 - e * e));
  Vec3 e2{0.0, 0.0, 0.0};
  double ln = norm(angular_momentum);
  if (ln > 1e-12) {
    Vec3 lhat{angular_momentum[0] / ln, angular_momentum[1] / ln, angular_momentum[2] / ln};
    e2 = cross(lhat, e1);
  }
  double sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    double ea = 2.0 * kPi * k / nodes;
    double x1 = (std::cos(ea) - e) * e1[0] + b * std::sin(ea) * e2[0];
    sum += x1 * (1.0 - e * std::cos(ea));
  }
  return sum / nodes;
}

}  // namespace szegolab
