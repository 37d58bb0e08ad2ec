#include "ssr/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ssr::linalg {

namespace {

constexpr Index kPowerIterationCap = 10000;
constexpr double kPowerIterationTol = 1e-10;

}  // namespace

Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: matrix has " + std::to_string(a.cols()) +
                         " columns but vector has " + std::to_string(x.size()) +
                         " entries");
  }
  return a * x;
}

double spectral_norm(const Eigen::Ref<const Matrix>& a) {
  if (a.size() == 0) {
    throw DimensionError("spectral_norm: empty matrix");
  }
  if (a.squaredNorm() == 0.0) {
    return 0.0;
  }
  // Iterate v ← AᵀA v (or A Aᵀ v on the smaller side); Rayleigh quotient
  // ‖Av‖² converges to σ₁².
  const bool tall = a.rows() >= a.cols();
  const Index dim = tall ? a.cols() : a.rows();
  Vector v = Vector::Ones(dim) / std::sqrt(static_cast<double>(dim));
  double lambda_prev = -1.0;
  Index restarts = 0;
  for (Index iter = 1; iter <= kPowerIterationCap; ++iter) {
    Vector w = tall ? Vector(a * v) : Vector(a.transpose() * v);
    Vector u = tall ? Vector(a.transpose() * w) : Vector(a * w);
    const double lambda = w.squaredNorm();
    const double u_norm = u.norm();
    if (u_norm == 0.0) {
      // The start vector annihilated; restart from canonical basis vectors.
      if (restarts >= dim) {
        return 0.0;
      }
      v = Vector::Unit(dim, restarts++);
      lambda_prev = -1.0;
      continue;
    }
    if (lambda_prev >= 0.0 &&
        std::abs(lambda - lambda_prev) <= kPowerIterationTol * lambda) {
      return std::sqrt(lambda);
    }
    lambda_prev = lambda;
    v = u / u_norm;
  }
  throw ConvergenceError("spectral_norm: power iteration did not converge",
                         kPowerIterationCap);
}

double stable_rank_impl(const Eigen::Ref<const Matrix>& a) {
  const double fro2 = a.squaredNorm();
  if (fro2 == 0.0) {
    throw DimensionError("stable_rank: undefined for the zero matrix");
  }
  const double s = spectral_norm(a);
  return fro2 / (s * s);
}

Svd svd(const Matrix& a, Index k) {
  const Index minrc = std::min(a.rows(), a.cols());
  if (minrc == 0) {
    throw DimensionError("svd: empty matrix");
  }
  if (k < 1 || k > minrc) {
    throw DimensionError("svd: rank " + std::to_string(k) +
                         " out of range for " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " matrix");
  }
  // Eigendecompose the smaller Gram matrix and lift the missing factor.
  const bool gram_on_cols = a.rows() >= a.cols();
  Matrix g = gram_on_cols ? Matrix(a.transpose() * a) : Matrix(a * a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("svd: Gram eigendecomposition did not converge",
                           30 * g.rows());
  }
  const Index gdim = g.rows();
  Svd out;
  out.singular_values.resize(k);
  out.u.resize(a.rows(), k);
  out.v.resize(a.cols(), k);
  const double sigma_max =
      std::sqrt(std::max(0.0, es.eigenvalues()(gdim - 1)));
  const double tiny = sigma_max * 1e-14;
  for (Index i = 0; i < k; ++i) {
    const Index src = gdim - 1 - i;  // eigenvalues come back ascending
    const double sigma = std::sqrt(std::max(0.0, es.eigenvalues()(src)));
    out.singular_values(i) = sigma;
    Vector evec = es.eigenvectors().col(src);
    if (gram_on_cols) {
      out.v.col(i) = evec;
      out.u.col(i) = sigma > tiny ? Vector((a * evec) / sigma)
                                  : Vector(Vector::Zero(a.rows()));
    } else {
      out.u.col(i) = evec;
      out.v.col(i) = sigma > tiny ? Vector((a.transpose() * evec) / sigma)
                                  : Vector(Vector::Zero(a.cols()));
    }
  }
  return out;
}

Spectrum spectrum(const Matrix& a) {
  Svd d = svd(a, std::min(a.rows(), a.cols()));
  return Spectrum{d.singular_values};
}

}  // namespace ssr::linalg
