#include <cmath>

#include "doctest.h"
#include "weylcover/errors.hpp"
#include "weylcover/linalg.hpp"
#include "weylcover/rng.hpp"

using namespace weylcover;

namespace {

DenseMatrix random_square(Field f, int n, RngStream& rng) {
  DenseMatrix m(f, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (f == Field::real)
        m.set(r, c, rng.next_gaussian());
      else
        m.set(r, c, Cplx{rng.next_gaussian(), rng.next_gaussian()});
    }
  return m;
}

}  // namespace

TEST_CASE("inverse round trip") {
  RngStream rng(21);
  for (Field f : {Field::real, Field::complex}) {
    for (int n : {1, 2, 3, 4}) {
      DenseMatrix a = random_square(f, n, rng);
      DenseMatrix inv = inverse(a);
      CHECK(inv.field() == f);
      CHECK(distance(a * inv, DenseMatrix::identity(f, n)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(inverse(DenseMatrix::zeros(Field::real, 2, 2)), NotGroupElement);
}

TEST_CASE("determinant basics") {
  DenseMatrix a(Field::real, 2, 2);
  a.set(0, 0, 3.0);
  a.set(0, 1, 1.0);
  a.set(1, 0, 2.0);
  a.set(1, 1, 4.0);
  CHECK(determinant(a).re == doctest::Approx(10.0));
  RngStream rng(22);
  DenseMatrix p = random_square(Field::complex, 3, rng);
  DenseMatrix q = random_square(Field::complex, 3, rng);
  Cplx lhs = determinant(p * q);
  Cplx rhs = determinant(p) * determinant(q);
  CHECK(cabs(lhs - rhs) < 1e-10 * (1.0 + cabs(rhs)));
}

TEST_CASE("singular values and rank") {
  std::vector<std::vector<double>> cols = {{3.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 0.0}};
  auto sv = singular_values(cols);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(2.0));
  CHECK(sv[2] == doctest::Approx(0.0));
  CHECK(numerical_rank(cols, 1e-8) == 2);

  // exactly dependent columns
  std::vector<std::vector<double>> dep = {{1.0, 1.0}, {2.0, 2.0}};
  CHECK(numerical_rank(dep, 1e-8) == 1);
}

TEST_CASE("abs_determinant matches determinant") {
  RngStream rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(5));
    DenseMatrix a = random_square(Field::real, n, rng);
    std::vector<std::vector<double>> cols(n, std::vector<double>(n));
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) cols[c][r] = a.at(r, c).re;
    CHECK(abs_determinant(cols) == doctest::Approx(std::abs(determinant(a).re)).epsilon(1e-10));
  }
}

TEST_CASE("matrix exponential") {
  CHECK(distance(matrix_exp(DenseMatrix::zeros(Field::real, 3, 3)),
                 DenseMatrix::identity(Field::real, 3)) == 0.0);

  DenseMatrix d(Field::real, 2, 2);
  d.set(0, 0, 1.0);
  d.set(1, 1, -2.0);
  DenseMatrix ed = matrix_exp(d);
  CHECK(ed.at(0, 0).re == doctest::Approx(std::exp(1.0)));
  CHECK(ed.at(1, 1).re == doctest::Approx(std::exp(-2.0)));

  double t = 0.7;
  DenseMatrix skew(Field::real, 2, 2);
  skew.set(0, 1, -t);
  skew.set(1, 0, t);
  DenseMatrix rot = matrix_exp(skew);
  CHECK(rot.at(0, 0).re == doctest::Approx(std::cos(t)));
  CHECK(rot.at(1, 0).re == doctest::Approx(std::sin(t)));

  RngStream rng(24);
  DenseMatrix a = random_square(Field::complex, 3, rng);
  CHECK(distance(matrix_exp(a) * matrix_exp(-1.0 * a), DenseMatrix::identity(Field::complex, 3)) <
        1e-12);
}

TEST_CASE("gram_schmidt_q orthonormalizes") {
  RngStream rng(25);
  for (Field f : {Field::real, Field::complex}) {
    DenseMatrix a = random_square(f, 4, rng);
    DenseMatrix q = gram_schmidt_q(a);
    CHECK(unitary_residual(q) < 1e-13);
  }
}
