#pragma once

#include <array>

#include "szegolab/hydrogen.hpp"
#include "szegolab/rng.hpp"

namespace szegolab {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

struct CollisionPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Label of a coherent state / oriented great circle of S^3: unit real and
/// imaginary parts, mutually orthogonal.
struct CoherentParam {
  Vec4 re{};
  Vec4 im{};
  void validate(double tol = 1e-12) const;
};

struct SpherePoint {
  Vec4 omega{};
  void validate(double tol = 1e-12) const;
};

/// Draw from the SO(4)-invariant probability measure: re uniform on S^3,
/// im uniform on the unit sphere of the orthogonal complement of re.
CoherentParam sample_alpha(SplitStream& rng);

/// omega_j = 2 p_j / (|p|^2+1), omega_4 = (|p|^2-1)/(|p|^2+1).
SpherePoint stereographic_omega(const Vec3& p);

/// p_j = omega_j / (1 - omega_4); throws CollisionPointError at the north pole.
Vec3 inverse_stereographic(const SpherePoint& w);

double dot(const Vec3& a, const Vec3& b);
double dot(const Vec4& a, const Vec4& b);
double norm(const Vec3& a);
double norm(const Vec4& a);
Vec3 cross(const Vec3& a, const Vec3& b);

}  // namespace szegolab
