#include "weylcover/haar.hpp"

#include <cmath>

#include "weylcover/errors.hpp"
#include "weylcover/linalg.hpp"

namespace weylcover {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

DenseMatrix rotation2(double angle) {
  DenseMatrix m(Field::real, 2, 2);
  double c = std::cos(angle), s = std::sin(angle);
  m.set(0, 0, c);
  m.set(0, 1, -s);
  m.set(1, 0, s);
  m.set(1, 1, c);
  return m;
}

DenseMatrix rotation_z(double angle) {
  DenseMatrix m = DenseMatrix::identity(Field::real, 3);
  double c = std::cos(angle), s = std::sin(angle);
  m.set(0, 0, c);
  m.set(0, 1, -s);
  m.set(1, 0, s);
  m.set(1, 1, c);
  return m;
}

DenseMatrix haar_sample(CompactGroup group, int n, RngStream& rng) {
  if (n < 1) throw BadInput("haar_sample needs n >= 1");
  switch (group) {
    case CompactGroup::so2_rotation:
      return rotation2(kTwoPi * rng.next_unit());
    case CompactGroup::torus: {
      DenseMatrix m(Field::complex, n, n);
      for (int i = 0; i < n; ++i) m.set(i, i, unit_phase(kTwoPi * rng.next_unit()));
      return m;
    }
    case CompactGroup::orthogonal: {
      DenseMatrix g(Field::real, n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g.set(r, c, rng.next_gaussian());
      return gram_schmidt_q(g);
    }
    case CompactGroup::unitary: {
      DenseMatrix g(Field::complex, n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g.set(r, c, Cplx{rng.next_gaussian(), rng.next_gaussian()});
      return gram_schmidt_q(g);
    }
  }
  throw BadInput("unknown group tag");
}

}  // namespace weylcover
