#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace szegolab {

using Complex = std::complex<double>;

struct LinalgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimal dense row-major matrix.
template <typename T>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols, T value = T{})
      : rows_(rows), cols_(cols), a_(rows * cols, value) {}

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<T>& data() const { return a_; }
  std::vector<T>& data() { return a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using Mat = Dense<double>;
using CMat = Dense<Complex>;

double frobenius_norm(const Mat& a);
double frobenius_norm(const CMat& a);
double max_abs_offdiag(const Mat& a);

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.
/// Eigenvalues ascending; vectors(i, k) is component i of eigenvector k.
struct SymmetricEigen {
  std::vector<double> values;
  Mat vectors;
};
SymmetricEigen jacobi_eigensolve(const Mat& a, double tol = 1e-14, int max_sweeps = 100);

/// All eigenvalues of a dense complex matrix: balancing (Parlett-Reinsch),
/// Householder reduction to Hessenberg form, then shifted QR with deflation.
/// Throws LinalgError with the offending submatrix index if QR stalls.
std::vector<Complex> dense_eigenvalues(CMat a, int max_iter_per_eig = 60);

/// LU factorization with partial pivoting for complex dense systems.
struct ComplexLU {
  CMat lu;
  std::vector<int> piv;
};
ComplexLU clu_factor(CMat a);
std::vector<Complex> clu_solve(const ComplexLU& f, std::vector<Complex> b);

/// Residual-certified eigenvector for an isolated eigenvalue by a couple of
/// inverse-iteration passes. Returns the relative residual |Av - lv|/|A|_F.
double inverse_iteration_residual(const CMat& a, Complex lambda);

/// Cholesky factor (lower bidiagonal) of a symmetric positive definite
/// tridiagonal matrix given by its diagonal and subdiagonal.
struct BidiagonalCholesky {
  std::vector<double> diag;  // L(i, i)
  std::vector<double> sub;   // L(i+1, i)
};
BidiagonalCholesky cholesky_tridiagonal(const std::vector<double>& diag,
                                        const std::vector<double>& sub);

}  // namespace szegolab
