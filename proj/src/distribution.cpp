#include "szegolab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace szegolab {

namespace {

// sorted locations with accumulated weights
struct SortedLaw {
  std::vector<double> x;
  std::vector<double> cum;  // cum[i] = P(X <= x[i])
};

SortedLaw sorted_law(const EmpiricalDistribution& d) {
  std::vector<std::size_t> idx(d.location.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return d.location[a] < d.location[b]; });
  SortedLaw s;
  s.x.reserve(idx.size());
  s.cum.reserve(idx.size());
  double acc = 0.0;
  for (std::size_t k : idx) {
    acc += d.weight[k];
    if (!s.x.empty() && s.x.back() == d.location[k]) {
      s.cum.back() = acc;
    } else {
      s.x.push_back(d.location[k]);
      s.cum.push_back(acc);
    }
  }
  return s;
}

double cdf_at(const SortedLaw& s, double x) {
  auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
  if (it == s.x.begin()) return 0.0;
  return s.cum[static_cast<std::size_t>(it - s.x.begin()) - 1];
}

}  // namespace

EmpiricalDistribution EmpiricalDistribution::from_atoms(std::vector<double> locations,
                                                        std::vector<double> weights) {
  if (locations.empty() || locations.size() != weights.size())
    throw SpecError("empirical distribution needs matching nonempty atoms");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw SpecError("atom weights must be positive");
    total += w;
  }
  for (double& w : weights) w /= total;
  EmpiricalDistribution d;
  d.location = std::move(locations);
  d.weight = std::move(weights);
  return d;
}

EmpiricalDistribution EmpiricalDistribution::uniform_atoms(std::vector<double> locations) {
  std::vector<double> w(locations.size(), 1.0);
  return from_atoms(std::move(locations), std::move(w));
}

double EmpiricalDistribution::total_weight() const {
  double s = 0.0;
  for (double w : weight) s += w;
  return s;
}

double EmpiricalDistribution::moment(int m) const {
  double s = 0.0;
  for (std::size_t i = 0; i < location.size(); ++i) s += weight[i] * std::pow(location[i], m);
  return s;
}

double EmpiricalDistribution::cdf(double x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < location.size(); ++i)
    if (location[i] <= x) s += weight[i];
  return s;
}

double EmpiricalDistribution::min_location() const {
  return *std::min_element(location.begin(), location.end());
}

double EmpiricalDistribution::max_location() const {
  return *std::max_element(location.begin(), location.end());
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  SortedLaw sa = sorted_law(a);
  SortedLaw sb = sorted_law(b);
  double d = 0.0;
  for (const auto* s : {&sa, &sb}) {
    for (std::size_t i = 0; i < s->x.size(); ++i) {
      double x = s->x[i];
      d = std::max(d, std::abs(cdf_at(sa, x) - cdf_at(sb, x)));
      double xm = std::nextafter(x, -1e300);
      d = std::max(d, std::abs(cdf_at(sa, xm) - cdf_at(sb, xm)));
    }
  }
  return d;
}

}  // namespace szegolab
