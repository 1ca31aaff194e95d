#include "szegolab/alpha.hpp"

#include <cmath>

namespace szegolab {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void CoherentParam::validate(double tol) const {
  if (std::abs(norm(re) - 1.0) > tol || std::abs(norm(im) - 1.0) > tol ||
      std::abs(dot(re, im)) > tol)
    throw SpecError("coherent parameter violates unit/orthogonality constraints");
}

void SpherePoint::validate(double tol) const {
  if (std::abs(norm(omega) - 1.0) > tol) throw SpecError("sphere point not on S^3");
}

CoherentParam sample_alpha(SplitStream& rng) {
  CoherentParam a;
  for (;;) {
    for (double& v : a.re) v = rng.gaussian();
    double n = norm(a.re);
    if (n > 1e-8) {
      for (double& v : a.re) v /= n;
      break;
    }
  }
  for (;;) {
    for (double& v : a.im) v = rng.gaussian();
    // two projection passes keep the orthogonality defect at roundoff level
    for (int pass = 0; pass < 2; ++pass) {
      double proj = dot(a.im, a.re);
      for (int i = 0; i < 4; ++i) a.im[i] -= proj * a.re[i];
    }
    double n = norm(a.im);
    if (n > 1e-8) {
      for (double& v : a.im) v /= n;
      break;
    }
  }
  return a;
}

SpherePoint stereographic_omega(const Vec3& p) {
  double p2 = dot(p, p);
  double d = p2 + 1.0;
  SpherePoint w;
  for (int j = 0; j < 3; ++j) w.omega[j] = 2.0 * p[j] / d;
  w.omega[3] = (p2 - 1.0) / d;
  return w;
}

Vec3 inverse_stereographic(const SpherePoint& w) {
  double denom = 1.0 - w.omega[3];
  if (denom <= 1e-14)
    throw CollisionPointError("north pole is the collision point; no finite momentum");
  return {w.omega[0] / denom, w.omega[1] / denom, w.omega[2] / denom};
}

}  // namespace szegolab
