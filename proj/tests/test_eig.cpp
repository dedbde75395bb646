#include <cmath>

#include "doctest.h"
#include "weylcover/eig.hpp"
#include "weylcover/errors.hpp"
#include "weylcover/haar.hpp"
#include "weylcover/linalg.hpp"
#include "weylcover/rng.hpp"

using namespace weylcover;

namespace {

constexpr double kPi = 3.14159265358979323846;

DenseMatrix random_symmetric(int n, RngStream& rng) {
  DenseMatrix m(Field::real, n, n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, rng.next_gaussian());
    for (int j = i + 1; j < n; ++j) {
      double v = rng.next_gaussian();
      m.set(i, j, v);
      m.set(j, i, v);
    }
  }
  return m;
}

DenseMatrix random_hermitian(int n, RngStream& rng) {
  DenseMatrix m(Field::complex, n, n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, rng.next_gaussian());
    for (int j = i + 1; j < n; ++j) {
      Cplx v{rng.next_gaussian(), rng.next_gaussian()};
      m.set(i, j, v);
      m.set(j, i, conj(v));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("eig_self_adjoint on an already diagonal matrix") {
  DenseMatrix a(Field::real, 2, 2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 3.0);
  EigenDecomposition d = eig_self_adjoint(a);
  CHECK(d.values[0] == doctest::Approx(3.0));
  CHECK(d.values[1] == doctest::Approx(2.0));
  // frame is the column-swap permutation
  CHECK(d.frame.at(0, 1).re == doctest::Approx(1.0));
  CHECK(d.frame.at(1, 0).re == doctest::Approx(1.0));
  CHECK(std::abs(d.frame.at(0, 0).re) < 1e-14);
}

TEST_CASE("eig_self_adjoint forced spectrum of the swap matrix") {
  DenseMatrix a(Field::real, 2, 2);
  a.set(0, 1, 1.0);
  a.set(1, 0, 1.0);
  EigenDecomposition d = eig_self_adjoint(a);
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(-1.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(d.frame.at(0, 0).re == doctest::Approx(inv_sqrt2));
  CHECK(d.frame.at(1, 0).re == doctest::Approx(inv_sqrt2));
  CHECK(d.frame.at(0, 1).re == doctest::Approx(inv_sqrt2));
  CHECK(d.frame.at(1, 1).re == doctest::Approx(-inv_sqrt2));
}

TEST_CASE("eig_self_adjoint reconstruction residual on random input") {
  RngStream rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix a = random_symmetric(6, rng);
    EigenDecomposition d = eig_self_adjoint(a);
    CHECK(d.residual < 1e-10 * a.frobenius_norm());
    CHECK(unitary_residual(d.frame) < 1e-12);
    for (std::size_t i = 0; i + 1 < d.values.size(); ++i) CHECK(d.values[i] >= d.values[i + 1]);
    CHECK(!d.frame.is_complex());
  }
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix a = random_hermitian(5, rng);
    EigenDecomposition d = eig_self_adjoint(a);
    CHECK(d.residual < 1e-10 * a.frobenius_norm());
    CHECK(unitary_residual(d.frame) < 1e-12);
  }
}

TEST_CASE("eig_self_adjoint canonical column phases") {
  RngStream rng(32);
  DenseMatrix a = random_hermitian(4, rng);
  EigenDecomposition d = eig_self_adjoint(a);
  for (int j = 0; j < 4; ++j) {
    int best = 0;
    double best_mag = -1.0;
    for (int r = 0; r < 4; ++r) {
      if (cabs(d.frame.at(r, j)) > best_mag) {
        best_mag = cabs(d.frame.at(r, j));
        best = r;
      }
    }
    CHECK(d.frame.at(best, j).re > 0.0);
    CHECK(std::abs(d.frame.at(best, j).im) < 1e-12);
  }
}

TEST_CASE("eig_self_adjoint matches the 2x2 characteristic-polynomial roots") {
  RngStream rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix a = random_symmetric(2, rng);
    double tr = a.at(0, 0).re + a.at(1, 1).re;
    double det = a.at(0, 0).re * a.at(1, 1).re - a.at(0, 1).re * a.at(1, 0).re;
    double sq = std::sqrt(tr * tr - 4.0 * det);
    EigenDecomposition d = eig_self_adjoint(a);
    CHECK(d.values[0] == doctest::Approx(0.5 * (tr + sq)).epsilon(1e-12));
    CHECK(d.values[1] == doctest::Approx(0.5 * (tr - sq)).epsilon(1e-12));
  }
}

TEST_CASE("eig_unitary matches the 2x2 characteristic-polynomial roots") {
  RngStream rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix u = haar_sample(CompactGroup::unitary, 2, rng);
    Cplx tr = u.trace();
    Cplx det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
    Cplx sq = csqrt(tr * tr - 4.0 * det);
    double p1 = carg((tr + sq) / 2.0), p2 = carg((tr - sq) / 2.0);
    if (p1 < 0) p1 += 2.0 * kPi;
    if (p2 < 0) p2 += 2.0 * kPi;
    if (p1 > p2) std::swap(p1, p2);
    EigenDecomposition d = eig_unitary(u);
    CHECK(d.values[0] == doctest::Approx(p1).epsilon(1e-10));
    CHECK(d.values[1] == doctest::Approx(p2).epsilon(1e-10));
  }
}

TEST_CASE("spd exp satisfies det(exp H) = exp(tr H)") {
  RngStream rng(39);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix h = random_symmetric(3, rng);
    DenseMatrix e = spd_chart(h, ChartDirection::exp);
    CHECK(determinant(e).re == doctest::Approx(std::exp(h.trace().re)).epsilon(1e-10));
  }
}

TEST_CASE("eig_self_adjoint is deterministic") {
  RngStream rng(33);
  DenseMatrix a = random_symmetric(5, rng);
  EigenDecomposition d1 = eig_self_adjoint(a);
  EigenDecomposition d2 = eig_self_adjoint(a);
  CHECK(d1.values == d2.values);
  CHECK(d1.frame.data() == d2.frame.data());
}

TEST_CASE("eig_self_adjoint rejects asymmetric input") {
  DenseMatrix a(Field::real, 2, 2);
  a.set(0, 1, 1.0);
  a.set(1, 0, 0.5);
  CHECK_THROWS_AS(eig_self_adjoint(a), NotSelfAdjoint);
}

TEST_CASE("eig_unitary on a diagonal torus element") {
  DenseMatrix u(Field::complex, 2, 2);
  u.set(0, 0, unit_phase(kPi / 2.0));
  u.set(1, 1, unit_phase(kPi));
  EigenDecomposition d = eig_unitary(u);
  CHECK(d.values[0] == doctest::Approx(kPi / 2.0));
  CHECK(d.values[1] == doctest::Approx(kPi));
  CHECK(distance(d.frame, DenseMatrix::identity(Field::complex, 2)) < 1e-12);
}

TEST_CASE("eig_unitary on the quarter rotation") {
  // characteristic polynomial l^2 + 1 = 0: eigenvalues +-i
  DenseMatrix u(Field::real, 2, 2);
  u.set(0, 1, 1.0);
  u.set(1, 0, -1.0);
  EigenDecomposition d = eig_unitary(u);
  CHECK(d.values[0] == doctest::Approx(kPi / 2.0));
  CHECK(d.values[1] == doctest::Approx(3.0 * kPi / 2.0));
  CHECK(d.residual < 1e-12);
}

TEST_CASE("eig_unitary on Haar draws") {
  RngStream rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix u = haar_sample(CompactGroup::unitary, 3, rng);
    EigenDecomposition d = eig_unitary(u);
    CHECK(d.residual < 1e-9);
    CHECK(d.values[0] < d.values[1]);
    CHECK(d.values[1] < d.values[2]);
    for (double t : d.values) {
      CHECK(t >= 0.0);
      CHECK(t < 2.0 * kPi);
    }
  }
}

TEST_CASE("eig_unitary survives a degenerate Hermitian part") {
  // phases {t, 2pi - t} make (U + U^H)/2 proportional to the identity; only
  // the skew part separates the eigenvectors
  RngStream rng(36);
  DenseMatrix f = haar_sample(CompactGroup::unitary, 2, rng);
  double t = 0.3;
  DenseMatrix lam(Field::complex, 2, 2);
  lam.set(0, 0, unit_phase(t));
  lam.set(1, 1, unit_phase(2.0 * kPi - t));
  DenseMatrix u = f * lam * f.adjoint();
  EigenDecomposition d = eig_unitary(u);
  CHECK(d.values[0] == doctest::Approx(t));
  CHECK(d.values[1] == doctest::Approx(2.0 * kPi - t));
  CHECK(d.residual < 1e-9);
}

TEST_CASE("eig_self_adjoint accepts repeated eigenvalues") {
  // a valid (non-unique) decomposition must still come back: the SPD chart
  // depends on it at multiples of the identity
  DenseMatrix a = DenseMatrix::identity(Field::real, 3);
  EigenDecomposition d = eig_self_adjoint(a);
  CHECK(d.values == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(d.residual < 1e-14);
}

TEST_CASE("eig_unitary error paths") {
  DenseMatrix not_unitary(Field::real, 2, 2);
  not_unitary.set(0, 0, 2.0);
  not_unitary.set(1, 1, 1.0);
  CHECK_THROWS_AS(eig_unitary(not_unitary), NotUnitary);
  CHECK_THROWS_AS(eig_unitary(DenseMatrix::identity(Field::complex, 2)), DegenerateSpectrum);
}

TEST_CASE("spd_chart identities") {
  DenseMatrix i3 = DenseMatrix::identity(Field::real, 3);
  CHECK(spd_chart(i3, ChartDirection::log).frobenius_norm() < 1e-14);

  DenseMatrix d(Field::real, 2, 2);
  d.set(0, 0, std::exp(1.0));
  d.set(1, 1, std::exp(2.0));
  DenseMatrix lg = spd_chart(d, ChartDirection::log);
  CHECK(lg.at(0, 0).re == doctest::Approx(1.0));
  CHECK(lg.at(1, 1).re == doctest::Approx(2.0));
}

TEST_CASE("spd_chart round trip on random SPD input") {
  RngStream rng(35);
  for (int trial = 0; trial < 5; ++trial) {
    DenseMatrix h = random_symmetric(4, rng);
    DenseMatrix spd = spd_chart(h, ChartDirection::exp);
    DenseMatrix back = spd_chart(spd_chart(spd, ChartDirection::log), ChartDirection::exp);
    CHECK(distance(back, spd) < 1e-9 * spd.frobenius_norm());
  }
}

TEST_CASE("spd_chart rejects non-positive input") {
  DenseMatrix d(Field::real, 2, 2);
  d.set(0, 0, 1.0);
  d.set(1, 1, -0.5);
  CHECK_THROWS_AS(spd_chart(d, ChartDirection::log), NotPositiveDefinite);
}
