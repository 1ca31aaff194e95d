#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "szegolab/alpha.hpp"
#include "szegolab/distribution.hpp"

namespace szegolab {

/// A sampled Moser-regularized Kepler orbit at energy -1/2. The great circle
/// of alpha is traversed in the regularized parameter s; physical time obeys
/// dt = |x| ds and closes at t(2 pi) = 2 pi.
struct KeplerOrbit {
  struct Sample {
    double s = 0.0;
    double t = 0.0;
    Vec3 x{};
    Vec3 p{};
    double radius = 0.0;  // |x|, from the cancellation-free closed form
    bool near_collision = false;
  };

  CoherentParam alpha;
  std::vector<Sample> samples;
  Vec3 angular_momentum{};
  Vec3 runge_lenz{};
  double eccentricity = 0.0;
};

KeplerOrbit orbit_from_alpha(const CoherentParam& alpha, int n_samples);

/// (1/2pi) int_0^{2pi} observable(x(t)) dt by the periodic trapezoid rule in
/// the regularized parameter.
double orbit_average(const KeplerOrbit& orbit,
                     const std::function<double(const Vec3&)>& observable);

/// Orbit average of x_1 straight from the label (fast path for Monte Carlo).
double orbit_average_x1(const CoherentParam& alpha, int n_samples);

struct EnergySurfaceSample {
  Vec3 x{};
  Vec3 p{};
};

/// Liouville-distributed point of the energy surface: alpha from the
/// invariant measure, phase uniform in physical time.
EnergySurfaceSample sample_surface(SplitStream& rng);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Monte Carlo value of int rho(orbit average of F x_1) d mu(alpha).
MonteCarloEstimate classical_functional(const std::function<double(double)>& rho, double F,
                                        long samples, std::uint64_t seed, int workers = 0,
                                        int orbit_nodes = 64);

/// Empirical law of the orbit average of F x_1 under mu.
EmpiricalDistribution classical_distribution(double F, long samples, std::uint64_t seed,
                                             int workers = 0, int orbit_nodes = 64);

/// Independent time-domain average of x_1 for the orbit with the given
/// conserved pair, via the Kepler equation in the eccentric anomaly.
double kepler_equation_average_x1(const Vec3& angular_momentum, const Vec3& runge_lenz,
                                  int nodes);

}  // namespace szegolab
