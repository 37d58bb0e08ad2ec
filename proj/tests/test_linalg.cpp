#include "ssr/linalg.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace ssr;
using namespace ssr::linalg;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("matvec identity and zero") {
  Matrix id = Matrix::Identity(3, 3);
  Vector x(3);
  x << 1, 2, 3;
  CHECK(matvec(id, x).isApprox(x));

  Matrix zero = Matrix::Zero(4, 3);
  CHECK(matvec(zero, x).isZero(0.0));
}

TEST_CASE("matvec matches triple-loop oracle") {
  Matrix a = oracles::random_matrix(4, 3, 11);
  Vector x = oracles::random_vector(3, 12);
  Vector want = oracles::matvec_naive(a, x);
  Vector got = matvec(a, x);
  CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("matvec dimension mismatch") {
  Matrix a = Matrix::Zero(2, 3);
  Vector x = Vector::Zero(4);
  CHECK_THROWS_AS(matvec(a, x), DimensionError);
}

TEST_CASE("svd of diagonal matrix") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 3;
  a(1, 1) = 2;
  a(2, 2) = 1;
  Svd d = svd(a, 2);
  CHECK(d.singular_values(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(d.singular_values(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rank-1 matrix is reconstructed exactly at k=1") {
  Vector u = oracles::random_vector(6, 21);
  Vector v = oracles::random_vector(4, 22);
  Matrix a = u * v.transpose();
  Svd d = svd(a, 1);
  Matrix rec = d.u * d.singular_values.asDiagonal() * d.v.transpose();
  CHECK((rec - a).norm() <= 1e-10 * a.norm());
}

TEST_CASE("full-rank svd reconstructs the matrix") {
  Matrix a = oracles::random_matrix(20, 10, 33);
  Svd d = svd(a, 10);
  Matrix rec = d.u * d.singular_values.asDiagonal() * d.v.transpose();
  CHECK((rec - a).norm() / a.norm() <= 1e-8);
}

TEST_CASE("singular values match independent Jacobi oracle") {
  Matrix a = oracles::random_matrix(12, 7, 44);
  Matrix gram = a.transpose() * a;
  Vector evals;
  Matrix evecs;
  oracles::jacobi_eigen(gram, evals, evecs);
  Svd d = svd(a, 7);
  for (Index i = 0; i < 7; ++i) {
    const double want = std::sqrt(std::max(0.0, evals(6 - i)));
    CHECK(d.singular_values(i) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("truncated svd is the best rank-k approximation") {
  // Eckart–Young: error of rank-k truncation equals the tail of the spectrum.
  Matrix a = oracles::random_matrix(9, 9, 55);
  Spectrum sp = spectrum(a);
  for (Index k : {1, 3, 5}) {
    Svd d = svd(a, k);
    Matrix rec = d.u * d.singular_values.asDiagonal() * d.v.transpose();
    double tail = 0;
    for (Index i = k; i < 9; ++i)
      tail += sp.singular_values(i) * sp.singular_values(i);
    CHECK((rec - a).squaredNorm() == doctest::Approx(tail).epsilon(1e-8));
  }
}

TEST_CASE("svd rejects out-of-range rank") {
  Matrix a = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(svd(a, 0), DimensionError);
  CHECK_THROWS_AS(svd(a, 4), DimensionError);
}

TEST_CASE("frobenius norm equals sum of squared singular values") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Matrix a = oracles::random_matrix(15, 11, seed);
    Spectrum sp = spectrum(a);
    CHECK(a.squaredNorm() ==
          doctest::Approx(sp.singular_values.squaredNorm()).epsilon(1e-8));
  }
}

TEST_CASE("stable rank of identity and diagonal") {
  CHECK(stable_rank(Matrix::Identity(5, 5)) == doctest::Approx(5.0).epsilon(1e-9));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 4;
  CHECK(stable_rank(d) == doctest::Approx(25.0 / 16.0).epsilon(1e-9));
}

TEST_CASE("stable rank of rank-1 matrices is one") {
  Vector u = oracles::random_vector(8, 91);
  Vector v = oracles::random_vector(5, 92);
  Matrix a = u * v.transpose();
  CHECK(stable_rank(a) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("stable rank is scale invariant") {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    Matrix a = oracles::random_matrix(6, 10, seed);
    const double sr = stable_rank(a);
    for (double c : {2.0, -0.3, 1e4}) {
      CHECK(stable_rank(c * a) == doctest::Approx(sr).epsilon(1e-8));
    }
    CHECK(sr >= 1.0 - 1e-9);
  }
}

TEST_CASE("stable rank rejects the zero matrix") {
  CHECK_THROWS_AS(stable_rank(Matrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("spectral norm on degenerate start vector") {
  // All-ones start is orthogonal to the top eigenvector; the restart path
  // must still find sigma = 2.
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  CHECK(spectral_norm(a) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("frobenius_rel_error basics") {
  Matrix t = oracles::random_matrix(4, 4, 71);
  CHECK(frobenius_rel_error(t, t) == doctest::Approx(0.0));
  CHECK(frobenius_rel_error(Matrix::Zero(4, 4), t) == doctest::Approx(1.0));
  CHECK_THROWS_AS(frobenius_rel_error(Matrix::Zero(3, 4), t), DimensionError);
  CHECK_THROWS_AS(frobenius_rel_error(t, Matrix::Zero(4, 4)), DimensionError);
}

TEST_SUITE_END();
