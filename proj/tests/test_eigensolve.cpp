#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "spectral_enclose/eigensolve.hpp"
#include "spectral_enclose/error.hpp"

using namespace spectral;

namespace {

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = g(rng);
  return m;
}

Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
  const Matrix r = random_symmetric(n, rng);
  Matrix b = multiply(r, r.transposed());
  for (std::size_t i = 0; i < n; ++i) b(i, i) += static_cast<double>(n);
  symmetrize(b);
  return b;
}

std::vector<double> column(const Matrix& m, std::size_t k) {
  std::vector<double> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, k);
  return c;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("cholesky examples") {
  CHECK(cholesky(Matrix::identity(4)) == Matrix::identity(4));

  Matrix b(2, 2);
  b(0, 0) = 4.0;
  b(0, 1) = b(1, 0) = 2.0;
  b(1, 1) = 5.0;
  const Matrix l = cholesky(b);
  CHECK(l(0, 0) == 2.0);
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == 1.0);
  CHECK(l(1, 1) == 2.0);

  const std::vector<double> d{1.0, -1.0};
  try {
    cholesky(Matrix::diagonal(d));
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.pivot_index() == 1);
    CHECK(e.kind() == ErrorKind::not_positive_definite);
  }
  CHECK_THROWS_AS(cholesky(Matrix(2, 3)), InvalidArgument);
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 2u, 7u, 30u}) {
    const Matrix b = random_spd(n, rng);
    const Matrix l = cholesky(b);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) CHECK(l(i, j) == 0.0);
    const Matrix back = multiply(l, l.transposed());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back(i, j) - b(i, j)) <= 1e-12 * frobenius_norm(b));
  }
}

TEST_CASE("eig_sym examples") {
  const std::vector<double> d{3.0, 1.0, 2.0};
  const auto diag = eig_sym(Matrix::diagonal(d));
  REQUIRE(diag.values.size() == 3);
  CHECK(diag.values[0] == doctest::Approx(1.0));
  CHECK(diag.values[1] == doctest::Approx(2.0));
  CHECK(diag.values[2] == doctest::Approx(3.0));

  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const auto s = eig_sym(swap);
  CHECK(s.values[0] == doctest::Approx(-1.0));
  CHECK(s.values[1] == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.vectors(0, 0)) == doctest::Approx(r));
  CHECK(s.vectors(0, 0) * s.vectors(1, 0) == doctest::Approx(-0.5));
  CHECK(s.vectors(0, 1) * s.vectors(1, 1) == doctest::Approx(0.5));

  const std::vector<double> one{4.5};
  const auto single = eig_sym(Matrix::diagonal(one));
  CHECK(single.values == std::vector<double>{4.5});
  CHECK(single.vectors(0, 0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(eig_sym(Matrix(2, 3)), InvalidArgument);
}

TEST_CASE("eig_sym reconstruction and orthonormality") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {3u, 10u, 50u}) {
    const Matrix m = random_symmetric(n, rng);
    const auto e = eig_sym(m);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    const double scale = frobenius_norm(m);
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = column(e.vectors, k);
      const auto mv = multiply(m, v);
      double residual = 0.0;
      for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(mv[i] - e.values[k] * v[i]));
      CHECK(residual <= 1e-10 * scale);
      for (std::size_t l = 0; l < n; ++l) {
        const auto w = column(e.vectors, l);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += v[i] * w[i];
        CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("values do not depend on the vectors flag") {
  std::mt19937_64 rng(23);
  const Matrix m = random_symmetric(25, rng);
  const Matrix b = random_spd(25, rng);
  const auto with = eig_sym(m);
  const auto without = eig_sym(m, Vectors::skip);
  CHECK_FALSE(without.has_vectors());
  CHECK(bitwise_equal(with.values, without.values));
  CHECK(bitwise_equal(eig_gsym(m, b).values, eig_gsym(m, b, Vectors::skip).values));
}

TEST_CASE("eig_gsym examples") {
  const std::vector<double> m{2.0, 6.0};
  const std::vector<double> b{1.0, 2.0};
  const auto e = eig_gsym(Matrix::diagonal(m), Matrix::diagonal(b));
  CHECK(e.values[0] == doctest::Approx(2.0));
  CHECK(e.values[1] == doctest::Approx(3.0));
  CHECK(e.b_orthonormal);

  std::mt19937_64 rng(29);
  const Matrix a = random_symmetric(12, rng);
  const auto plain = eig_sym(a);
  const auto pencil = eig_gsym(a, Matrix::identity(12));
  CHECK(bitwise_equal(plain.values, pencil.values));
  CHECK(plain.vectors == pencil.vectors);

  CHECK_THROWS_AS(eig_gsym(Matrix::identity(3), Matrix::identity(2)), InvalidArgument);
  const std::vector<double> indefinite{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(eig_gsym(Matrix::identity(3), Matrix::diagonal(indefinite)), NotPositiveDefinite);
}

TEST_CASE("eig_gsym residual and B-orthonormality on random pencils") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) * 49 / 19;
    const Matrix m = random_symmetric(n, rng);
    const Matrix b = random_spd(n, rng);
    const auto e = eig_gsym(m, b);
    REQUIRE(e.values.size() == n);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    const double scale = frobenius_norm(m) + frobenius_norm(b) * std::abs(e.values.back());
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = column(e.vectors, k);
      const auto mv = multiply(m, v);
      const auto bv = multiply(b, v);
      double residual = 0.0;
      for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(mv[i] - e.values[k] * bv[i]));
      CHECK(residual <= 1e-10 * scale);
      for (std::size_t l = 0; l < n; ++l) {
        const double g = bilinear(b, v, column(e.vectors, l));
        CHECK(std::abs(g - (k == l ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("eig_gsym is invariant under congruence") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g;
  for (std::size_t n : {4u, 12u, 20u}) {
    const Matrix m = random_symmetric(n, rng);
    const Matrix b = random_spd(n, rng);
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.1 * g(rng);
      s(i, i) += 2.0;
    }
    Matrix m2 = multiply(multiply(s.transposed(), m), s);
    Matrix b2 = multiply(multiply(s.transposed(), b), s);
    symmetrize(m2);
    symmetrize(b2);
    const auto e1 = eig_gsym(m, b, Vectors::skip);
    const auto e2 = eig_gsym(m2, b2, Vectors::skip);
    const double scale = std::max(std::abs(e1.values.front()), std::abs(e1.values.back()));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(e1.values[k] - e2.values[k]) <= 1e-8 * scale);
  }
}

TEST_CASE("eigensolves are deterministic") {
  std::mt19937_64 rng(41);
  const Matrix m = random_symmetric(40, rng);
  const Matrix b = random_spd(40, rng);
  const auto first = eig_gsym(m, b);
  for (int repeat = 0; repeat < 3; ++repeat) {
    const auto again = eig_gsym(m, b);
    CHECK(bitwise_equal(first.values, again.values));
    CHECK(first.vectors == again.vectors);
  }
}
