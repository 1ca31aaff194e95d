#include "szegolab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace szegolab {

namespace {

constexpr double kEps = 2.220446049250313e-16;

struct Givens {
  double c;
  Complex s;
  Complex r;
};

// [c, s; -conj(s), c] * [f; g] = [r; 0], c real.
Givens make_givens(Complex f, Complex g) {
  Givens o;
  double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) {
    o.c = 1.0;
    o.s = 0.0;
    o.r = f;
    return o;
  }
  if (af == 0.0) {
    o.c = 0.0;
    o.s = std::conj(g) / ag;
    o.r = ag;
    return o;
  }
  double d = std::hypot(af, ag);
  Complex sgn = f / af;
  o.c = af / d;
  o.s = sgn * std::conj(g) / d;
  o.r = sgn * d;
  return o;
}

void balance(CMat& a) {
  const std::size_t n = a.rows();
  const double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0, s = c + r;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c >= r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if ((c + r) < 0.95 * s && f != 1.0) {
        done = false;
        double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void hessenberg(CMat& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm <= kEps * frobenius_norm(a)) continue;
    Complex x0 = a(k + 1, k);
    Complex alpha = (std::abs(x0) == 0.0) ? Complex(xnorm, 0.0) : (x0 / std::abs(x0)) * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] += alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    double tau = 2.0 / vnorm2;
    // left: A <- (I - tau v v^*) A on rows k+1..n-1
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= tau;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // right: A <- A (I - tau v v^*) on cols k+1..n-1
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= tau;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Stable eigenvalues of [[a, b], [c, d]].
std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
  Complex tr = a + d;
  Complex det = a * d - b * c;
  Complex disc = std::sqrt(tr * tr - 4.0 * det);
  Complex l1 = (std::abs(tr + disc) >= std::abs(tr - disc)) ? 0.5 * (tr + disc) : 0.5 * (tr - disc);
  Complex l2 = (std::abs(l1) > 0.0) ? det / l1 : 0.5 * (tr - disc);
  return {l1, l2};
}

// Eigenvalue of the trailing 2x2 of the window closer to the corner entry.
Complex wilkinson_shift(const CMat& h, std::size_t hi) {
  auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
  return (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
}

}  // namespace

double frobenius_norm(const Mat& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double frobenius_norm(const CMat& a) {
  double s = 0.0;
  for (const Complex& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_offdiag(const Mat& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

SymmetricEigen jacobi_eigensolve(const Mat& a_in, double tol, int max_sweeps) {
  if (a_in.rows() != a_in.cols()) throw LinalgError("jacobi: matrix not square");
  const std::size_t n = a_in.rows();
  Mat a = a_in;
  Mat v(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  double norm = frobenius_norm(a);
  if (norm == 0.0) norm = 1.0;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= tol * norm) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= 0.1 * tol * norm / static_cast<double>(n)) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep >= max_sweeps) throw LinalgError("jacobi: sweep limit exceeded");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<Complex> dense_eigenvalues(CMat a, int max_iter_per_eig) {
  if (a.rows() != a.cols()) throw LinalgError("eigenvalues: matrix not square");
  const std::size_t n = a.rows();
  std::vector<Complex> eig;
  eig.reserve(n);
  if (n == 0) return eig;
  if (n == 1) return {a(0, 0)};

  balance(a);
  hessenberg(a);

  double anorm = frobenius_norm(a);
  if (anorm == 0.0) anorm = 1.0;

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  while (hi >= 0) {
    // deflation scan
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      double sub = std::abs(a(lo, lo - 1));
      if (sub <= kEps * (std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo))) || sub <= 1e-300) {
        a(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(a(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (lo == hi - 1) {
      auto [l1, l2] = eig2x2(a(lo, lo), a(lo, hi), a(hi, lo), a(hi, hi));
      eig.push_back(l1);
      eig.push_back(l2);
      hi = lo - 1;
      iter = 0;
      continue;
    }
    if (++iter > max_iter_per_eig) {
      throw LinalgError("QR iteration failed to converge at submatrix index " + std::to_string(hi));
    }

    Complex sigma;
    if (iter % 12 == 0) {
      // exceptional shift based on subdiagonal magnitudes
      sigma = a(hi, hi) + Complex(1.5 * (std::abs(a(hi, hi - 1)) + std::abs(a(hi - 1, hi - 2))), 0.0);
    } else {
      sigma = wilkinson_shift(a, static_cast<std::size_t>(hi));
    }

    // explicit single-shift QR sweep on the window [lo, hi]:
    // factor Q^H (H - sigma I) = R by Givens rows, then H <- R Q + sigma I.
    for (std::ptrdiff_t i = lo; i <= hi; ++i) a(i, i) -= sigma;
    std::vector<Givens> rot(static_cast<std::size_t>(hi - lo));
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      Givens g = make_givens(a(k, k), a(k + 1, k));
      rot[static_cast<std::size_t>(k - lo)] = g;
      a(k, k) = g.r;
      a(k + 1, k) = 0.0;
      for (std::ptrdiff_t j = k + 1; j <= hi; ++j) {
        Complex t1 = a(k, j), t2 = a(k + 1, j);
        a(k, j) = g.c * t1 + g.s * t2;
        a(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Givens& g = rot[static_cast<std::size_t>(k - lo)];
      std::ptrdiff_t bottom = std::min<std::ptrdiff_t>(hi, k + 1);
      for (std::ptrdiff_t i = lo; i <= bottom; ++i) {
        Complex t1 = a(i, k), t2 = a(i, k + 1);
        a(i, k) = g.c * t1 + std::conj(g.s) * t2;
        a(i, k + 1) = -g.s * t1 + g.c * t2;
      }
    }
    for (std::ptrdiff_t i = lo; i <= hi; ++i) a(i, i) += sigma;
  }
  return eig;
}

ComplexLU clu_factor(CMat a) {
  if (a.rows() != a.cols()) throw LinalgError("lu: matrix not square");
  const std::size_t n = a.rows();
  std::vector<int> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) throw LinalgError("lu: singular matrix");
    piv[k] = static_cast<int>(p);
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    Complex inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex m = a(i, k) * inv;
      a(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return ComplexLU{std::move(a), std::move(piv)};
}

std::vector<Complex> clu_solve(const ComplexLU& f, std::vector<Complex> b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw LinalgError("lu solve: size mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = static_cast<std::size_t>(f.piv[k]);
    if (p != k) std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) b[i] -= f.lu(i, k) * b[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) b[i] -= f.lu(i, j) * b[j];
    b[i] /= f.lu(i, i);
  }
  return b;
}

double inverse_iteration_residual(const CMat& a, Complex lambda) {
  const std::size_t n = a.rows();
  double scale = frobenius_norm(a);
  if (scale == 0.0) scale = 1.0;
  // small complex detuning keeps the shifted matrix invertible
  Complex shift = lambda + Complex(1e-12, 1e-12) * scale;
  CMat b = a;
  for (std::size_t i = 0; i < n; ++i) b(i, i) -= shift;
  ComplexLU f = clu_factor(std::move(b));
  std::vector<Complex> v(n, Complex(1.0, 0.3));
  for (int pass = 0; pass < 3; ++pass) {
    v = clu_solve(f, std::move(v));
    double nrm = 0.0;
    for (const Complex& c : v) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    for (Complex& c : v) c /= nrm;
  }
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex r = -lambda * v[i];
    for (std::size_t j = 0; j < n; ++j) r += a(i, j) * v[j];
    res += std::norm(r);
  }
  return std::sqrt(res) / scale;
}

BidiagonalCholesky cholesky_tridiagonal(const std::vector<double>& diag,
                                        const std::vector<double>& sub) {
  const std::size_t n = diag.size();
  if (sub.size() + 1 != n && !(n == 0 && sub.empty()))
    throw LinalgError("cholesky: subdiagonal length mismatch");
  BidiagonalCholesky f;
  f.diag.resize(n);
  f.sub.resize(n > 0 ? n - 1 : 0);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = diag[i] - prev * prev;
    if (d <= 0.0) throw LinalgError("cholesky: matrix not positive definite");
    f.diag[i] = std::sqrt(d);
    if (i + 1 < n) {
      f.sub[i] = sub[i] / f.diag[i];
      prev = f.sub[i];
    }
  }
  return f;
}

}  // namespace szegolab
