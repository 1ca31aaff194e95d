#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "szegolab/hydrogen.hpp"

namespace szegolab {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A fully specified experiment: a subcommand name plus a flat, ordered
/// key-value parameter list. The canonical text form is hashed for caching;
/// the worker count is an execution detail and never enters the spec.
struct ExperimentSpec {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;

  void set(const std::string& key, const std::string& value);
  void set_int(const std::string& key, long long value);
  void set_real(const std::string& key, double value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback = "") const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_real(const std::string& key, double fallback) const;

  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

struct ResultRecord {
  std::string spec_hash;
  std::string version;
  std::uint64_t seed = 0;
  bool from_cache = false;
  std::string directory;
  /// file name -> payload bytes, in emission order
  std::vector<std::pair<std::string, std::string>> files;
};

/// Dispatches the spec to its owning module, writes outputs atomically under
/// out_dir/<kind>-<hash>/, and serves byte-identical cached payloads on
/// repeat runs unless force is set.
ResultRecord run_experiment(const ExperimentSpec& spec, const std::string& out_dir, bool force,
                            int workers = 0);

/// Least-squares slope of log(error) against log(size) with a 2-sigma
/// confidence band; flags non-monotone error sequences. Needs >= 3 points.
struct ConvergenceReport {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_ci = 0.0;
  bool monotone = true;
  int points = 0;
};
ConvergenceReport convergence_report(const std::vector<double>& sizes,
                                     const std::vector<double>& errors);

/// Range syntax "lo:hi:step" or comma list "4,8,16".
std::vector<int> parse_int_list(const std::string& text);

}  // namespace szegolab
