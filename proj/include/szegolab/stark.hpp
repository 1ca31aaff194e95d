#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "szegolab/alpha.hpp"
#include "szegolab/distribution.hpp"
#include "szegolab/linalg.hpp"

namespace szegolab {

/// Shell-restricted, Bohr-rescaled Stark matrix (F/N^2) <Nlm| x.dir |Nl'm'>
/// in the spherical-label ordering l = 0..N-1, m = -l..l (index l^2 + l + m).
/// Entries are the paper-normalized scaled shifts: eigenvalues equal
/// tau / (h^2 eps).
struct ShellMatrix {
  int shell = 0;
  Vec3 field_dir{0.0, 0.0, 1.0};
  double field = 0.0;
  bool bohr_rescaled = true;  // entries carry the F/N^2 factor
  Mat entries;
};

/// Field along the polar axis (the spectrum is direction independent).
ShellMatrix build_shell_matrix(int N, double F);

/// Field along x_1 in the same basis (complex Hermitian); used to confirm
/// rotation invariance of the spectrum.
CMat build_shell_matrix_x1(int N, double F);

struct ClusterSpectrum {
  double center = 0.0;           // -1/(2N^2)
  std::vector<double> values;    // ascending, multiplicity preserved
};

/// First-order spectrum from the separable parabolic computation:
/// {(3/2) F k / N with multiplicity N - |k|}.
ClusterSpectrum parabolic_oracle(int N, double F);

/// Full eigendecomposition by per-m-block cyclic Jacobi with residual
/// certification.
ClusterSpectrum diagonalize_shell(const ShellMatrix& matrix);

/// (1/d_N) sum of m-th powers of the scaled shell eigenvalues.
double quantum_moment(int N, double F, int m);

/// Uniform-weight atoms at the scaled eigenvalues.
EmpiricalDistribution quantum_distribution(int N, double F);

/// Truncated power series with a declared convergence radius and a certified
/// bound on the truncation error over [-2F, 2F].
struct PowerSeries {
  std::string name;
  std::vector<double> coeffs;  // c_0 + c_1 s + ...
  double radius = 0.0;
  double tail_bound = 0.0;

  double eval(double s) const;
  static PowerSeries monomial(int degree, const std::string& name);
  static PowerSeries exp_scaled(double F, int degree);  // exp(s / (3F)) truncated
};

struct SzegoRow {
  int shell;
  std::string rho;
  double quantum;
  double classical;
  double difference;
  double mc_std_error;
  double tail_bound;
};

/// Quantum vs classical table for a list of shells and test functions.
/// Throws SpecError if a series declares radius < 3F.
std::vector<SzegoRow> szego_compare(const std::vector<int>& shells, double F,
                                    const std::vector<PowerSeries>& rhos, long mc_samples,
                                    std::uint64_t seed, int workers = 0);

}  // namespace szegolab
