#pragma once

#include <vector>

#include "szegolab/hydrogen.hpp"

namespace szegolab {

/// Weighted point masses on the real line with unit total weight.
struct EmpiricalDistribution {
  std::vector<double> location;
  std::vector<double> weight;

  /// Normalizes the weights; throws on empty or nonpositive input.
  static EmpiricalDistribution from_atoms(std::vector<double> locations,
                                          std::vector<double> weights);
  static EmpiricalDistribution uniform_atoms(std::vector<double> locations);

  double total_weight() const;
  double moment(int m) const;
  /// Right-continuous CDF.
  double cdf(double x) const;
  double min_location() const;
  double max_location() const;
};

/// Kolmogorov-Smirnov distance between two weighted atomic laws, evaluated at
/// both one-sided limits of every atom.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

}  // namespace szegolab
