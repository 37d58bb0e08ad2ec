#ifndef SSR_TESTS_ORACLES_HPP
#define SSR_TESTS_ORACLES_HPP

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include "ssr/types.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

using ssr::Index;
using ssr::Matrix;
using ssr::Vector;

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

inline Vector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

// Naive triple-loop product.
inline Vector matvec_naive(const Matrix& a, const Vector& x) {
  Vector y = Vector::Zero(a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) y(i) += a(i, j) * x(j);
  return y;
}

// Naive Gram matrix WᵀW / n via explicit loops.
inline Matrix gram_naive(const Matrix& w, Index n) {
  Matrix omega = Matrix::Zero(w.cols(), w.cols());
  for (Index r = 0; r < w.rows(); ++r)
    for (Index i = 0; i < w.cols(); ++i)
      for (Index j = 0; j < w.cols(); ++j)
        omega(i, j) += w(r, i) * w(r, j);
  return omega / static_cast<double>(n);
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix; returns eigenvalues
// ascending.  Independent of Eigen's solvers.
inline void jacobi_eigen(Matrix a, Vector& eigenvalues, Matrix& eigenvectors) {
  const Index n = a.rows();
  eigenvectors = Matrix::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-26) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Index k = 0; k < n; ++k) {
          const double vkp = eigenvectors(k, p), vkq = eigenvectors(k, q);
          eigenvectors(k, p) = c * vkp - s * vkq;
          eigenvectors(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i) eigenvalues(i) = a(i, i);
  // insertion sort ascending, carrying eigenvector columns along
  for (Index i = 1; i < n; ++i) {
    const double ev = eigenvalues(i);
    Vector col = eigenvectors.col(i);
    Index j = i;
    while (j > 0 && eigenvalues(j - 1) > ev) {
      eigenvalues(j) = eigenvalues(j - 1);
      eigenvectors.col(j) = eigenvectors.col(j - 1);
      --j;
    }
    eigenvalues(j) = ev;
    eigenvectors.col(j) = col;
  }
}

// Central finite-difference gradient of a scalar function.
inline Vector finite_difference_grad(const std::function<double(const Vector&)>& f,
                                     const Vector& x, double step = 1e-5) {
  Vector g(x.size());
  Vector xp = x;
  for (Index i = 0; i < x.size(); ++i) {
    const double orig = xp(i);
    xp(i) = orig + step;
    const double fp = f(xp);
    xp(i) = orig - step;
    const double fm = f(xp);
    xp(i) = orig;
    g(i) = (fp - fm) / (2.0 * step);
  }
  return g;
}

inline double rel_vec_error(const Vector& got, const Vector& want) {
  const double denom = std::max(want.norm(), 1e-300);
  return (got - want).norm() / denom;
}

// Scalar bias-corrected first/second-moment optimizer trace.
struct ScalarAdamSim {
  double m = 0.0, v = 0.0;
  long step = 0;
  double lr, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  explicit ScalarAdamSim(double lr_in) : lr(lr_in) {}
  double update(double theta, double grad) {
    ++step;
    m = b1 * m + (1 - b1) * grad;
    v = b2 * v + (1 - b2) * grad * grad;
    const double mh = m / (1 - std::pow(b1, step));
    const double vh = v / (1 - std::pow(b2, step));
    return theta - lr * mh / (std::sqrt(vh) + eps);
  }
};

}  // namespace oracles

#endif  // SSR_TESTS_ORACLES_HPP
