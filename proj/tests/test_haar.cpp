#include <cmath>

#include "doctest.h"
#include "weylcover/haar.hpp"
#include "weylcover/linalg.hpp"
#include "weylcover/rng.hpp"

using namespace weylcover;

TEST_CASE("haar draws pass the membership residual") {
  RngStream rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(unitary_residual(haar_sample(CompactGroup::orthogonal, 3, rng)) < 1e-12);
    CHECK(unitary_residual(haar_sample(CompactGroup::unitary, 3, rng)) < 1e-12);
    CHECK(unitary_residual(haar_sample(CompactGroup::torus, 2, rng)) < 1e-14);
    DenseMatrix r = haar_sample(CompactGroup::so2_rotation, 2, rng);
    CHECK(unitary_residual(r) < 1e-14);
    CHECK(determinant(r).re == doctest::Approx(1.0));
  }
}

TEST_CASE("determinism for a fixed stream") {
  RngStream a(7, 3), b(7, 3);
  DenseMatrix u1 = haar_sample(CompactGroup::unitary, 3, a);
  DenseMatrix u2 = haar_sample(CompactGroup::unitary, 3, b);
  CHECK(u1.data() == u2.data());
}

TEST_CASE("mean |U11|^2 over U(2) draws is 1/2") {
  // |U11|^2 is uniform on (0,1) for Haar U(2): sd = 1/sqrt(12)
  RngStream rng(42);
  const int n = 100000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    DenseMatrix u = haar_sample(CompactGroup::unitary, 2, rng);
    s += abs2(u.at(0, 0));
  }
  double mean = s / n;
  double se = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("left invariance: V*U matches U in tr-moments") {
  RngStream rng(43);
  DenseMatrix v = haar_sample(CompactGroup::unitary, 2, rng);
  const int n = 40000;
  double m_plain = 0.0, m2_plain = 0.0, m_shift = 0.0, m2_shift = 0.0;
  RngStream sa(44, 1), sb(44, 2);
  for (int i = 0; i < n; ++i) {
    double t1 = cabs((haar_sample(CompactGroup::unitary, 2, sa)).trace());
    DenseMatrix u = haar_sample(CompactGroup::unitary, 2, sb);
    double t2 = cabs((v * u).trace());
    m_plain += t1;
    m2_plain += t1 * t1;
    m_shift += t2;
    m2_shift += t2 * t2;
  }
  m_plain /= n;
  m_shift /= n;
  double var_plain = m2_plain / n - m_plain * m_plain;
  double var_shift = m2_shift / n - m_shift * m_shift;
  double combined_se = std::sqrt(var_plain / n + var_shift / n);
  CHECK(std::abs(m_plain - m_shift) < 3.0 * combined_se);
}

TEST_CASE("SO(2) angle is uniform") {
  RngStream rng(45);
  const int n = 50000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    DenseMatrix r = haar_sample(CompactGroup::so2_rotation, 2, rng);
    double angle = std::atan2(r.at(1, 0).re, r.at(0, 0).re);  // (-pi, pi]
    s += angle;
    s2 += angle * angle;
  }
  double mean = s / n;
  double pi = 3.14159265358979323846;
  CHECK(std::abs(mean) < 3.0 * (pi / std::sqrt(3.0)) / std::sqrt(static_cast<double>(n)));
  CHECK(s2 / n == doctest::Approx(pi * pi / 3.0).epsilon(0.03));
}
