#ifndef SSR_LINALG_HPP
#define SSR_LINALG_HPP

#include "ssr/types.hpp"

namespace ssr::linalg {

/// Non-increasing singular values of a matrix.
struct Spectrum {
  Vector singular_values;
};

/// Truncated decomposition a ≈ u · diag(singular_values) · vᵀ.
struct Svd {
  Vector singular_values;  // length k, non-increasing, non-negative
  Matrix u;                // rows(a) × k
  Matrix v;                // cols(a) × k
};

Vector matvec(const Matrix& a, const Vector& x);

/// Largest singular value by power iteration on the Gram operator.
/// Deterministic all-ones start; tolerance 1e-10, cap 10000 iterations.
double spectral_norm(const Eigen::Ref<const Matrix>& a);

/// Top-k singular triplets via eigendecomposition of the smaller Gram matrix.
Svd svd(const Matrix& a, Index k);

Spectrum spectrum(const Matrix& a);

double stable_rank_impl(const Eigen::Ref<const Matrix>& a);

/// ‖A‖_F² / ‖A‖₂².  Undefined (throws) for the zero matrix.
template <typename Derived>
double stable_rank(const Eigen::MatrixBase<Derived>& a) {
  Matrix dense = a;
  return stable_rank_impl(dense);
}

/// Squared-Frobenius relative error ‖approx − target‖_F² / ‖target‖_F².
template <typename DerivedA, typename DerivedB>
double frobenius_rel_error(const Eigen::MatrixBase<DerivedA>& approx,
                           const Eigen::MatrixBase<DerivedB>& target) {
  if (approx.rows() != target.rows() || approx.cols() != target.cols()) {
    throw DimensionError("frobenius_rel_error: shape mismatch");
  }
  const double denom = target.squaredNorm();
  if (denom == 0.0) {
    throw DimensionError("frobenius_rel_error: zero target matrix");
  }
  return (approx - target).squaredNorm() / denom;
}

}  // namespace ssr::linalg

#endif  // SSR_LINALG_HPP
