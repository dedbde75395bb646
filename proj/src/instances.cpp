#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "weylcover/eig.hpp"
#include "weylcover/ensemble.hpp"
#include "weylcover/errors.hpp"
#include "weylcover/haar.hpp"
#include "weylcover/linalg.hpp"

namespace weylcover {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kPi = 3.14159265358979323846;
constexpr int kRejectionCap = 1000;

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

double circular_gap(double a, double b) {
  double d = std::abs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

double min_pairwise_gap(const std::vector<double>& v) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  return g;
}

double min_circular_gap(const std::vector<double>& v) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, circular_gap(v[i], v[j]));
  return g;
}

DenseMatrix diag_real(Field f, const std::vector<double>& d) {
  DenseMatrix m(f, static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return m;
}

double imag_norm(const DenseMatrix& m) {
  if (!m.is_complex()) return 0.0;
  double s = 0.0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) s += m.at(r, c).im * m.at(r, c).im;
  return std::sqrt(s);
}

// diag-subgroup coset distance: off-diagonal mass plus per-entry deviation of
// the diagonal from unit modulus
double torus_coset_distance(const DenseMatrix& m) {
  double s = offdiag_norm(m);
  for (int i = 0; i < m.rows(); ++i) s += std::abs(cabs(m.at(i, i)) - 1.0);
  return s;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

DenseMatrix permutation_matrix(Field f, const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  DenseMatrix m(f, n, n);
  for (int j = 0; j < n; ++j) m.set(perm[j], j, 1.0);
  return m;
}

std::string permutation_label(const std::vector<int>& perm) {
  // weyl_act with this rep sends c_j to c_{perm(j)}
  std::ostringstream os;
  os << "coords -> (";
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (j) os << ",";
    os << "c" << perm[j];
  }
  os << ")";
  return os.str();
}

std::vector<DenseMatrix> so_basis(int n) {
  std::vector<DenseMatrix> out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      DenseMatrix m(Field::real, n, n);
      m.set(i, j, inv_sqrt2);
      m.set(j, i, -inv_sqrt2);
      out.push_back(m);
    }
  return out;
}

std::vector<DenseMatrix> u_torus_basis(int n) {
  std::vector<DenseMatrix> out;
  for (int i = 0; i < n; ++i) {
    DenseMatrix m(Field::complex, n, n);
    m.set(i, i, Cplx{0.0, 1.0});
    out.push_back(m);
  }
  return out;
}

std::vector<DenseMatrix> u_basis(int n) {
  std::vector<DenseMatrix> out = u_torus_basis(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      DenseMatrix a(Field::complex, n, n);
      a.set(i, j, inv_sqrt2);
      a.set(j, i, -inv_sqrt2);
      out.push_back(a);
      DenseMatrix b(Field::complex, n, n);
      b.set(i, j, Cplx{0.0, inv_sqrt2});
      b.set(j, i, Cplx{0.0, inv_sqrt2});
      out.push_back(b);
    }
  return out;
}

std::vector<DenseMatrix> sym_frame(int n) {
  std::vector<DenseMatrix> out;
  for (int i = 0; i < n; ++i) {
    DenseMatrix m(Field::real, n, n);
    m.set(i, i, 1.0);
    out.push_back(m);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      DenseMatrix m(Field::real, n, n);
      m.set(i, j, inv_sqrt2);
      m.set(j, i, inv_sqrt2);
      out.push_back(m);
    }
  return out;
}

std::vector<DenseMatrix> herm_frame(int n) {
  std::vector<DenseMatrix> out;
  for (int i = 0; i < n; ++i) {
    DenseMatrix m(Field::complex, n, n);
    m.set(i, i, 1.0);
    out.push_back(m);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      DenseMatrix a(Field::complex, n, n);
      a.set(i, j, inv_sqrt2);
      a.set(j, i, inv_sqrt2);
      out.push_back(a);
      DenseMatrix b(Field::complex, n, n);
      b.set(i, j, Cplx{0.0, inv_sqrt2});
      b.set(j, i, Cplx{0.0, -inv_sqrt2});
      out.push_back(b);
    }
  return out;
}

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) { return a * b - b * a; }

Cplx matrix_det2(const DenseMatrix& m) {
  return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
}

// unit eigenvector of a 2x2 matrix for the eigenvalue lambda
DenseMatrix eigvec2(const DenseMatrix& m, Cplx lambda) {
  Cplx c1a = m.at(0, 1), c1b = lambda - m.at(0, 0);
  Cplx c2a = lambda - m.at(1, 1), c2b = m.at(1, 0);
  double n1 = abs2(c1a) + abs2(c1b), n2 = abs2(c2a) + abs2(c2b);
  Cplx v0 = n1 >= n2 ? c1a : c2a;
  Cplx v1 = n1 >= n2 ? c1b : c2b;
  double norm = std::sqrt(std::max(n1, n2));
  DenseMatrix v(Field::complex, 2, 1);
  v.set(0, 0, v0 / norm);
  v.set(1, 0, v1 / norm);
  return v;
}

double standard_gaussian_weight(const DenseMatrix& x) {
  // exp(-tr(x^2)/2) for self-adjoint x equals exp(-||x||_F^2 / 2)
  double n = x.frobenius_norm();
  return std::exp(-0.5 * n * n);
}

void check_instance_id(const Ensemble& e, const std::string& id) {
  if (id != e.id()) throw BadInput("point belongs to \"" + id + "\", not \"" + e.id() + "\"");
}

// ---------------------------------------------------------------------------
// lin-sym-O(n) and nl-posdef-O(n): congruence action of O(n) on Sym(n)
// ---------------------------------------------------------------------------

class LinSymEnsemble : public Ensemble {
public:
  explicit LinSymEnsemble(EnsembleInfo info) : Ensemble(std::move(info)) {}

  static EnsembleInfo make_info(int n) {
    EnsembleInfo info;
    info.id = "lin-sym-O(" + std::to_string(n) + ")";
    info.ensemble_class = EnsembleClass::linear;
    info.n = n;
    info.ambient_dim = n * (n + 1) / 2;
    info.slice_dim = n;
    info.stabilizer_dim = 0;
    info.expected_degree = factorial(n);
    info.beta = 1.0;
    info.harness_eligible = true;
    return info;
  }

  AmbientPoint sample_ambient(RngStream& rng) const override {
    int n = info_.n;
    DenseMatrix x(Field::real, n, n);
    const double off_sd = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
      x.set(i, i, rng.next_gaussian());
      for (int j = i + 1; j < n; ++j) {
        double v = off_sd * rng.next_gaussian();
        x.set(i, j, v);
        x.set(j, i, v);
      }
    }
    return {id(), x};
  }

  DenseMatrix sample_group(RngStream& rng) const override {
    return haar_sample(CompactGroup::orthogonal, info_.n, rng);
  }

  SlicePoint sample_slice(RngStream& rng) const override {
    for (int k = 0; k < kRejectionCap; ++k) {
      std::vector<double> c(info_.n);
      for (double& v : c) v = rng.next_gaussian();
      std::sort(c.begin(), c.end(), std::greater<double>());
      SlicePoint y{id(), c, true};
      if (slice_gap_floor_ok(y)) return y;
    }
    throw RejectionOverflow(id() + ": slice probe sampling failed");
  }

  SlicePoint probe_slice() const override {
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) c[i] = static_cast<double>(info_.n - i);
    return {id(), c, true};
  }

  AmbientPoint act(const DenseMatrix& g, const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (group_residual(g) > default_tolerances().structural)
      throw NotGroupElement(id() + ": matrix fails O(n) membership");
    return {id(), g * x.value * g.transpose()};
  }

  std::pair<DenseMatrix, SlicePoint> decompose(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (ambient_residual(x) > default_tolerances().structural)
      throw BadInput(id() + ": ambient membership residual too large");
    EigenDecomposition d = eig_self_adjoint(x.value);
    if (min_pairwise_gap(d.values) <= default_tolerances().degeneracy_gap)
      throw NotRegular(id() + ": repeated spectrum within the degeneracy gap");
    return {d.frame, SlicePoint{id(), d.values, true}};
  }

  AmbientPoint embed(const SlicePoint& y) const override {
    check_instance_id(*this, y.instance_id);
    return {id(), diag_real(Field::real, y.coords)};
  }

  SlicePoint slice_coords(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) c[i] = x.value.at(i, i).re;
    return {id(), c, std::is_sorted(c.rbegin(), c.rend())};
  }

  double regularity_gap(const AmbientPoint& x) const override {
    EigenDecomposition d = eig_self_adjoint(x.value);
    return min_pairwise_gap(d.values);
  }

  double regularity_gap(const SlicePoint& y) const override {
    return min_pairwise_gap(y.coords);
  }

  double ambient_residual(const AmbientPoint& x) const override {
    return self_adjoint_residual(x.value) + imag_norm(x.value);
  }

  double group_residual(const DenseMatrix& g) const override {
    if (!g.square() || g.rows() != info_.n) return std::numeric_limits<double>::infinity();
    return distance(g.transpose() * g, DenseMatrix::identity(g.field(), info_.n)) + imag_norm(g);
  }

  double coset_distance(const DenseMatrix& g, const DenseMatrix& h) const override {
    return torus_coset_distance(inverse(g) * h);
  }

  double slice_distance(const AmbientPoint& x) const override { return offdiag_norm(x.value); }

  double density_at(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    return standard_gaussian_weight(x.value);
  }

  std::vector<DenseMatrix> lie_basis() const override { return so_basis(info_.n); }
  std::vector<DenseMatrix> lie_k_basis() const override { return {}; }

  DenseMatrix action_differential(const DenseMatrix& xi, const AmbientPoint& y) const override {
    return xi * y.value + y.value * xi.transpose();
  }

  std::vector<DenseMatrix> ambient_frame(const AmbientPoint&) const override {
    return sym_frame(info_.n);
  }

  std::vector<DenseMatrix> slice_tangent_ambient(const SlicePoint&) const override {
    std::vector<DenseMatrix> out;
    for (int i = 0; i < info_.n; ++i) {
      DenseMatrix m(Field::real, info_.n, info_.n);
      m.set(i, i, 1.0);
      out.push_back(m);
    }
    return out;
  }

  std::vector<DenseMatrix> weyl_rep_matrices() const override {
    std::vector<DenseMatrix> out;
    for (const auto& p : all_permutations(info_.n)) out.push_back(permutation_matrix(Field::real, p));
    return out;
  }

  std::vector<std::string> weyl_rep_labels() const override {
    std::vector<std::string> out;
    for (const auto& p : all_permutations(info_.n)) out.push_back(permutation_label(p));
    return out;
  }

  std::optional<RootProduct> root_product() const override {
    return RootProduct{1.0, "prod_{i<j} |l_i - l_j|"};
  }

  double root_product_value(const SlicePoint& y) const override {
    double v = 1.0;
    for (std::size_t i = 0; i + 1 < y.coords.size(); ++i)
      for (std::size_t j = i + 1; j < y.coords.size(); ++j)
        v *= std::abs(y.coords[i] - y.coords[j]);
    return v;
  }

  std::vector<std::string> test_function_ids() const override {
    return {"1", "tr", "tr2", "re11"};
  }

  double eval_test_function(const std::string& f_id, const AmbientPoint& x) const override {
    if (f_id == "1") return 1.0;
    if (f_id == "tr") return x.value.trace().re;
    if (f_id == "tr2") return (x.value * x.value).trace().re;
    if (f_id == "re11") return x.value.at(0, 0).re;
    return Ensemble::eval_test_function(f_id, x);
  }

protected:
  bool slice_gap_floor_ok(const SlicePoint& y) const { return regularity_gap(y) > 0.05; }
};

class NlPosdefEnsemble : public LinSymEnsemble {
public:
  explicit NlPosdefEnsemble(int n) : LinSymEnsemble(make_info(n)) {}

  static EnsembleInfo make_info(int n) {
    EnsembleInfo info = LinSymEnsemble::make_info(n);
    info.id = "nl-posdef-O(" + std::to_string(n) + ")";
    info.ensemble_class = EnsembleClass::nonlinear_noncompact;
    info.beta.reset();
    return info;
  }

  AmbientPoint sample_ambient(RngStream& rng) const override {
    // pushforward of the linear Gaussian under exp
    LinSymEnsemble lin(LinSymEnsemble::make_info(info_.n));
    AmbientPoint h = lin.sample_ambient(rng);
    return {id(), spd_chart(h.value, ChartDirection::exp)};
  }

  SlicePoint sample_slice(RngStream& rng) const override {
    for (int k = 0; k < kRejectionCap; ++k) {
      std::vector<double> c(info_.n);
      for (double& v : c) v = std::exp(rng.next_gaussian());
      std::sort(c.begin(), c.end(), std::greater<double>());
      SlicePoint y{id(), c, true};
      if (slice_gap_floor_ok(y)) return y;
    }
    throw RejectionOverflow(id() + ": slice probe sampling failed");
  }

  SlicePoint probe_slice() const override {
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) c[i] = std::exp(0.5 * (info_.n - 2 * i));
    return {id(), c, true};
  }

  double ambient_residual(const AmbientPoint& x) const override {
    double r = self_adjoint_residual(x.value) + imag_norm(x.value);
    if (r < 1.0) {
      EigenDecomposition d = eig_self_adjoint(x.value);
      r += std::max(0.0, -d.values.back());
    }
    return r;
  }

  double density_at(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    // exp-pushforward of the linear Gaussian: p(exp H) = p_lin(H) / det(d exp_H)
    EigenDecomposition d = eig_self_adjoint(x.value);
    std::vector<double> h(d.values.size());
    double sumsq = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      if (d.values[i] <= 0.0) return 0.0;
      h[i] = std::log(d.values[i]);
      sumsq += h[i] * h[i];
    }
    double jac = 1.0;
    for (double v : d.values) jac *= v;  // diagonal modes of d exp
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        double dl = d.values[i] - d.values[j], dh = h[i] - h[j];
        jac *= (std::abs(dh) < 1e-12) ? d.values[i] : dl / dh;
      }
    return std::exp(-0.5 * sumsq) / jac;
  }

  std::optional<RootProduct> root_product() const override { return std::nullopt; }
  double root_product_value(const SlicePoint& y) const override {
    return Ensemble::root_product_value(y);
  }
};

// ---------------------------------------------------------------------------
// cpt-sphere: z-axis rotations acting on S^2, slice = the xz great circle
// ---------------------------------------------------------------------------

class SphereEnsemble : public Ensemble {
public:
  SphereEnsemble() : Ensemble(make_info()) {}

  static EnsembleInfo make_info() {
    EnsembleInfo info;
    info.id = "cpt-sphere";
    info.ensemble_class = EnsembleClass::compact;
    info.n = 1;
    info.ambient_dim = 2;
    info.slice_dim = 1;
    info.stabilizer_dim = 0;
    info.expected_degree = 2;
    info.beta = 1.0;
    info.harness_eligible = true;
    return info;
  }

  AmbientPoint sample_ambient(RngStream& rng) const override {
    DenseMatrix v(Field::real, 3, 1);
    double norm = 0.0;
    for (int k = 0; k < kRejectionCap; ++k) {
      double a = rng.next_gaussian(), b = rng.next_gaussian(), c = rng.next_gaussian();
      norm = std::sqrt(a * a + b * b + c * c);
      if (norm > 1e-8) {
        v.set(0, 0, a / norm);
        v.set(1, 0, b / norm);
        v.set(2, 0, c / norm);
        return {id(), v};
      }
    }
    throw RejectionOverflow(id() + ": degenerate Gaussian draws");
  }

  DenseMatrix sample_group(RngStream& rng) const override {
    return rotation_z(kTwoPi * rng.next_unit());
  }

  SlicePoint sample_slice(RngStream& rng) const override {
    for (int k = 0; k < kRejectionCap; ++k) {
      double theta = kPi * rng.next_unit();
      if (std::abs(std::sin(theta)) > 0.05) return {id(), {theta}, true};
    }
    throw RejectionOverflow(id() + ": slice probe sampling failed");
  }

  SlicePoint probe_slice() const override { return {id(), {kPi / 3.0}, true}; }

  AmbientPoint act(const DenseMatrix& g, const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (group_residual(g) > default_tolerances().structural)
      throw NotGroupElement(id() + ": matrix is not a z-axis rotation");
    return {id(), g * x.value};
  }

  std::pair<DenseMatrix, SlicePoint> decompose(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (ambient_residual(x) > default_tolerances().structural)
      throw BadInput(id() + ": point is not on the unit sphere");
    double x1 = x.value.at(0, 0).re, x2 = x.value.at(1, 0).re, x3 = x.value.at(2, 0).re;
    double s = std::hypot(x1, x2);
    if (s <= default_tolerances().degeneracy_gap)
      throw NotRegular(id() + ": point at a pole");
    double theta = std::atan2(s, x3);             // in (0, pi)
    double phi = std::atan2(x2, x1);
    return {rotation_z(phi), SlicePoint{id(), {theta}, true}};
  }

  AmbientPoint embed(const SlicePoint& y) const override {
    check_instance_id(*this, y.instance_id);
    DenseMatrix v(Field::real, 3, 1);
    v.set(0, 0, std::sin(y.coords[0]));
    v.set(1, 0, 0.0);
    v.set(2, 0, std::cos(y.coords[0]));
    return {id(), v};
  }

  SlicePoint slice_coords(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    double theta = std::atan2(x.value.at(0, 0).re, x.value.at(2, 0).re);
    return {id(), {theta}, theta > 0.0 && theta < kPi};
  }

  double regularity_gap(const AmbientPoint& x) const override {
    return std::hypot(x.value.at(0, 0).re, x.value.at(1, 0).re);
  }

  double regularity_gap(const SlicePoint& y) const override {
    return std::abs(std::sin(y.coords[0]));
  }

  double ambient_residual(const AmbientPoint& x) const override {
    return std::abs(x.value.frobenius_norm() - 1.0) + imag_norm(x.value);
  }

  double group_residual(const DenseMatrix& g) const override {
    if (g.rows() != 3 || g.cols() != 3) return std::numeric_limits<double>::infinity();
    DenseMatrix e3(Field::real, 3, 1);
    e3.set(2, 0, 1.0);
    double r = distance(g.transpose() * g, DenseMatrix::identity(g.field(), 3));
    r += distance(g * e3, e3) + std::abs(determinant(g).re - 1.0) + imag_norm(g);
    return r;
  }

  double coset_distance(const DenseMatrix& g, const DenseMatrix& h) const override {
    return distance(inverse(g) * h, DenseMatrix::identity(Field::real, 3));
  }

  double slice_distance(const AmbientPoint& x) const override {
    double x1 = x.value.at(0, 0).re, x2 = x.value.at(1, 0).re, x3 = x.value.at(2, 0).re;
    double r = std::hypot(x1, x3);
    return std::hypot(r - 1.0, x2);
  }

  double density_at(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    return 1.0;
  }

  std::vector<DenseMatrix> lie_basis() const override {
    // unit rotation speed about z (angle metric)
    DenseMatrix z(Field::real, 3, 3);
    z.set(0, 1, -1.0);
    z.set(1, 0, 1.0);
    return {z};
  }

  double lie_inner(const DenseMatrix& a, const DenseMatrix& b) const override {
    return 0.5 * re_tr_inner(a, b);  // angle metric on z-rotations
  }

  std::vector<DenseMatrix> lie_k_basis() const override { return {}; }

  DenseMatrix action_differential(const DenseMatrix& xi, const AmbientPoint& y) const override {
    return xi * y.value;
  }

  std::vector<DenseMatrix> ambient_frame(const AmbientPoint& y) const override {
    double x1 = y.value.at(0, 0).re, x2 = y.value.at(1, 0).re, x3 = y.value.at(2, 0).re;
    double s = std::hypot(x1, x2);
    DenseMatrix a(Field::real, 3, 1), b(Field::real, 3, 1);
    a.set(0, 0, -x2 / s);
    a.set(1, 0, x1 / s);
    a.set(2, 0, 0.0);
    b.set(0, 0, x3 * x1 / s);
    b.set(1, 0, x3 * x2 / s);
    b.set(2, 0, -s);
    return {a, b};
  }

  std::vector<DenseMatrix> slice_tangent_ambient(const SlicePoint& y) const override {
    DenseMatrix v(Field::real, 3, 1);
    v.set(0, 0, std::cos(y.coords[0]));
    v.set(1, 0, 0.0);
    v.set(2, 0, -std::sin(y.coords[0]));
    return {v};
  }

  std::vector<DenseMatrix> weyl_rep_matrices() const override {
    DenseMatrix rot_pi = DenseMatrix::identity(Field::real, 3);
    rot_pi.set(0, 0, -1.0);
    rot_pi.set(1, 1, -1.0);
    return {DenseMatrix::identity(Field::real, 3), rot_pi};
  }

  std::vector<std::string> weyl_rep_labels() const override {
    return {"identity", "theta -> -theta"};
  }

  std::optional<RootProduct> root_product() const override {
    return RootProduct{1.0, "|sin theta|"};
  }

  double root_product_value(const SlicePoint& y) const override {
    return std::abs(std::sin(y.coords[0]));
  }

  std::vector<std::string> test_function_ids() const override { return {"1", "x3", "x1sq"}; }

  double eval_test_function(const std::string& f_id, const AmbientPoint& x) const override {
    if (f_id == "1") return 1.0;
    if (f_id == "x3") return x.value.at(2, 0).re;
    if (f_id == "x1sq") {
      double v = x.value.at(0, 0).re;
      return v * v;
    }
    return Ensemble::eval_test_function(f_id, x);
  }
};

// ---------------------------------------------------------------------------
// grp-U(n): U(n) acting on itself by conjugation, slice = diagonal torus
// ---------------------------------------------------------------------------

class GrpUEnsemble : public Ensemble {
public:
  explicit GrpUEnsemble(int n) : Ensemble(make_info(n)) {}

  static EnsembleInfo make_info(int n) {
    EnsembleInfo info;
    info.id = "grp-U(" + std::to_string(n) + ")";
    info.ensemble_class = EnsembleClass::group_compact;
    info.n = n;
    info.ambient_dim = n * n;
    info.slice_dim = n;
    info.stabilizer_dim = n;
    info.expected_degree = factorial(n);
    info.beta = 2.0;
    info.harness_eligible = true;
    return info;
  }

  AmbientPoint sample_ambient(RngStream& rng) const override {
    return {id(), haar_sample(CompactGroup::unitary, info_.n, rng)};
  }

  DenseMatrix sample_group(RngStream& rng) const override {
    return haar_sample(CompactGroup::unitary, info_.n, rng);
  }

  SlicePoint sample_slice(RngStream& rng) const override {
    for (int k = 0; k < kRejectionCap; ++k) {
      std::vector<double> c(info_.n);
      for (double& v : c) v = kTwoPi * rng.next_unit();
      std::sort(c.begin(), c.end());
      if (min_circular_gap(c) > 0.05) return {id(), c, true};
    }
    throw RejectionOverflow(id() + ": slice probe sampling failed");
  }

  SlicePoint probe_slice() const override {
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) c[i] = 0.8 + i * (kTwoPi - 1.7) / info_.n;
    return {id(), c, true};
  }

  AmbientPoint act(const DenseMatrix& g, const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (group_residual(g) > default_tolerances().structural)
      throw NotGroupElement(id() + ": matrix fails U(n) membership");
    DenseMatrix gc = g.to_complex();
    return {id(), gc * x.value.to_complex() * gc.adjoint()};
  }

  std::pair<DenseMatrix, SlicePoint> decompose(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (ambient_residual(x) > default_tolerances().structural)
      throw BadInput(id() + ": ambient unitarity residual too large");
    EigenDecomposition d;
    try {
      d = eig_unitary(x.value);
    } catch (const DegenerateSpectrum& e) {
      throw NotRegular(e.what());
    }
    if (min_circular_gap(d.values) <= default_tolerances().degeneracy_gap)
      throw NotRegular(id() + ": repeated eigenphases within the degeneracy gap");
    return {d.frame, SlicePoint{id(), d.values, true}};
  }

  AmbientPoint embed(const SlicePoint& y) const override {
    check_instance_id(*this, y.instance_id);
    DenseMatrix m(Field::complex, info_.n, info_.n);
    for (int i = 0; i < info_.n; ++i) m.set(i, i, unit_phase(y.coords[i]));
    return {id(), m};
  }

  SlicePoint slice_coords(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) {
      double t = carg(x.value.at(i, i));
      if (t < 0.0) t += kTwoPi;
      c[i] = t;
    }
    return {id(), c, std::is_sorted(c.begin(), c.end())};
  }

  double regularity_gap(const AmbientPoint& x) const override {
    try {
      EigenDecomposition d = eig_unitary(x.value);
      return min_circular_gap(d.values);
    } catch (const DegenerateSpectrum&) {
      return 0.0;
    }
  }

  double regularity_gap(const SlicePoint& y) const override {
    return min_circular_gap(y.coords);
  }

  double ambient_residual(const AmbientPoint& x) const override {
    return unitary_residual(x.value);
  }

  double group_residual(const DenseMatrix& g) const override {
    if (!g.square() || g.rows() != info_.n) return std::numeric_limits<double>::infinity();
    return unitary_residual(g);
  }

  double coset_distance(const DenseMatrix& g, const DenseMatrix& h) const override {
    return torus_coset_distance(g.to_complex().adjoint() * h.to_complex());
  }

  double slice_distance(const AmbientPoint& x) const override {
    return torus_coset_distance(x.value);
  }

  double density_at(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    return 1.0;
  }

  std::vector<DenseMatrix> lie_basis() const override { return u_basis(info_.n); }
  std::vector<DenseMatrix> lie_k_basis() const override { return u_torus_basis(info_.n); }

  DenseMatrix action_differential(const DenseMatrix& xi, const AmbientPoint& y) const override {
    return commutator(xi.to_complex(), y.value.to_complex());
  }

  std::vector<DenseMatrix> ambient_frame(const AmbientPoint& y) const override {
    std::vector<DenseMatrix> out;
    DenseMatrix yc = y.value.to_complex();
    for (const DenseMatrix& z : u_basis(info_.n)) out.push_back(z * yc);
    return out;
  }

  std::vector<DenseMatrix> slice_tangent_ambient(const SlicePoint& y) const override {
    std::vector<DenseMatrix> out;
    DenseMatrix emb = embed(y).value;
    for (const DenseMatrix& z : u_torus_basis(info_.n)) out.push_back(z * emb);
    return out;
  }

  std::vector<DenseMatrix> weyl_rep_matrices() const override {
    std::vector<DenseMatrix> out;
    for (const auto& p : all_permutations(info_.n))
      out.push_back(permutation_matrix(Field::complex, p));
    return out;
  }

  std::vector<std::string> weyl_rep_labels() const override {
    std::vector<std::string> out;
    for (const auto& p : all_permutations(info_.n)) out.push_back(permutation_label(p));
    return out;
  }

  std::optional<RootProduct> root_product() const override {
    return RootProduct{2.0, "prod_{j<k} |e^{i t_j} - e^{i t_k}|^2"};
  }

  double root_product_value(const SlicePoint& y) const override {
    double v = 1.0;
    for (std::size_t i = 0; i + 1 < y.coords.size(); ++i)
      for (std::size_t j = i + 1; j < y.coords.size(); ++j)
        v *= abs2(unit_phase(y.coords[i]) - unit_phase(y.coords[j]));
    return v;
  }

  std::vector<std::string> test_function_ids() const override {
    return {"1", "tr", "tr2", "re11"};
  }

  double eval_test_function(const std::string& f_id, const AmbientPoint& x) const override {
    if (f_id == "1") return 1.0;
    if (f_id == "tr") return x.value.trace().re;
    if (f_id == "tr2") return (x.value * x.value).trace().re;
    if (f_id == "re11") return x.value.at(0, 0).re;
    return Ensemble::eval_test_function(f_id, x);
  }
};

// ---------------------------------------------------------------------------
// alg-u(n): U(n) acting on Herm(n) by conjugation, slice = real diagonal
// ---------------------------------------------------------------------------

class AlgUEnsemble : public Ensemble {
public:
  explicit AlgUEnsemble(int n) : Ensemble(make_info(n)) {}

  static EnsembleInfo make_info(int n) {
    EnsembleInfo info;
    info.id = "alg-u(" + std::to_string(n) + ")";
    info.ensemble_class = EnsembleClass::algebra_compact;
    info.n = n;
    info.ambient_dim = n * n;
    info.slice_dim = n;
    info.stabilizer_dim = n;
    info.expected_degree = factorial(n);
    info.beta = 2.0;
    info.harness_eligible = true;
    return info;
  }

  AmbientPoint sample_ambient(RngStream& rng) const override {
    int n = info_.n;
    DenseMatrix x(Field::complex, n, n);
    const double off_sd = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
      x.set(i, i, rng.next_gaussian());
      for (int j = i + 1; j < n; ++j) {
        Cplx v{off_sd * rng.next_gaussian(), off_sd * rng.next_gaussian()};
        x.set(i, j, v);
        x.set(j, i, conj(v));
      }
    }
    return {id(), x};
  }

  DenseMatrix sample_group(RngStream& rng) const override {
    return haar_sample(CompactGroup::unitary, info_.n, rng);
  }

  SlicePoint sample_slice(RngStream& rng) const override {
    for (int k = 0; k < kRejectionCap; ++k) {
      std::vector<double> c(info_.n);
      for (double& v : c) v = rng.next_gaussian();
      std::sort(c.begin(), c.end(), std::greater<double>());
      if (min_pairwise_gap(c) > 0.05) return {id(), c, true};
    }
    throw RejectionOverflow(id() + ": slice probe sampling failed");
  }

  SlicePoint probe_slice() const override {
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) c[i] = static_cast<double>(info_.n - i);
    return {id(), c, true};
  }

  AmbientPoint act(const DenseMatrix& g, const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (group_residual(g) > default_tolerances().structural)
      throw NotGroupElement(id() + ": matrix fails U(n) membership");
    DenseMatrix gc = g.to_complex();
    return {id(), gc * x.value.to_complex() * gc.adjoint()};
  }

  std::pair<DenseMatrix, SlicePoint> decompose(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    if (ambient_residual(x) > default_tolerances().structural)
      throw BadInput(id() + ": ambient Hermiticity residual too large");
    EigenDecomposition d = eig_self_adjoint(x.value);
    if (min_pairwise_gap(d.values) <= default_tolerances().degeneracy_gap)
      throw NotRegular(id() + ": repeated spectrum within the degeneracy gap");
    return {d.frame, SlicePoint{id(), d.values, true}};
  }

  AmbientPoint embed(const SlicePoint& y) const override {
    check_instance_id(*this, y.instance_id);
    return {id(), diag_real(Field::complex, y.coords)};
  }

  SlicePoint slice_coords(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    std::vector<double> c(info_.n);
    for (int i = 0; i < info_.n; ++i) c[i] = x.value.at(i, i).re;
    return {id(), c, std::is_sorted(c.rbegin(), c.rend())};
  }

  double regularity_gap(const AmbientPoint& x) const override {
    EigenDecomposition d = eig_self_adjoint(x.value);
    return min_pairwise_gap(d.values);
  }

  double regularity_gap(const SlicePoint& y) const override {
    return min_pairwise_gap(y.coords);
  }

  double ambient_residual(const AmbientPoint& x) const override {
    return self_adjoint_residual(x.value);
  }

  double group_residual(const DenseMatrix& g) const override {
    if (!g.square() || g.rows() != info_.n) return std::numeric_limits<double>::infinity();
    return unitary_residual(g);
  }

  double coset_distance(const DenseMatrix& g, const DenseMatrix& h) const override {
    return torus_coset_distance(g.to_complex().adjoint() * h.to_complex());
  }

  double slice_distance(const AmbientPoint& x) const override {
    double s = offdiag_norm(x.value);
    double im = 0.0;
    for (int i = 0; i < x.value.rows(); ++i) im += x.value.at(i, i).im * x.value.at(i, i).im;
    return std::sqrt(s * s + im);
  }

  double density_at(const AmbientPoint& x) const override {
    check_instance_id(*this, x.instance_id);
    return standard_gaussian_weight(x.value);
  }

  std::vector<DenseMatrix> lie_basis() const override { return u_basis(info_.n); }
  std::vector<DenseMatrix> lie_k_basis() const override { return u_torus_basis(info_.n); }

  DenseMatrix action_differential(const DenseMatrix& xi, const AmbientPoint& y) const override {
    return commutator(xi.to_complex(), y.value.to_complex());
  }

  std::vector<DenseMatrix> ambient_frame(const AmbientPoint&) const override {
    return herm_frame(info_.n);
  }

  std::vector<DenseMatrix> slice_tangent_ambient(const SlicePoint&) const override {
    std::vector<DenseMatrix> out;
    for (int i = 0; i < info_.n; ++i) {
      DenseMatrix m(Field::complex, info_.n, info_.n);
      m.set(i, i, 1.0);
      out.push_back(m);
    }
    return out;
  }

  std::vector<DenseMatrix> weyl_rep_matrices() const override {
    std::vector<DenseMatrix> out;
    for (const auto& p : all_permutations(info_.n))
      out.push_back(permutation_matrix(Field::complex, p));
    return out;
  }

  std::vector<std::string> weyl_rep_labels() const override {
    std::vector<std::string> out;
    for (const auto& p : all_permutations(info_.n)) out.push_back(permutation_label(p));
    return out;
  }

  std::optional<RootProduct> root_product() const override {
    return RootProduct{2.0, "prod_{i<j} (l_i - l_j)^2"};
  }

  double root_product_value(const SlicePoint& y) const override {
    double v = 1.0;
    for (std::size_t i = 0; i + 1 < y.coords.size(); ++i)
      for (std::size_t j = i + 1; j < y.coords.size(); ++j) {
        double d = y.coords[i] - y.coords[j];
        v *= d * d;
      }
    return v;
  }

  std::vector<std::string> test_function_ids() const override {
    return {"1", "tr", "tr2", "re11"};
  }

  double eval_test_function(const std::string& f_id, const AmbientPoint& x) const override {
    if (f_id == "1") return 1.0;
    if (f_id == "tr") return x.value.trace().re;
    if (f_id == "tr2") return (x.value * x.value).trace().re;
    if (f_id == "re11") return x.value.at(0, 0).re;
    return Ensemble::eval_test_function(f_id, x);
  }
};

}  // namespace
}  // namespace weylcover

#include "instances_complex.inc"

namespace weylcover {

namespace {

std::vector<std::unique_ptr<Ensemble>> build_catalog() {
  std::vector<std::unique_ptr<Ensemble>> v;
  for (int n : {2, 3, 4}) v.push_back(std::make_unique<LinSymEnsemble>(LinSymEnsemble::make_info(n)));
  for (int n : {2, 3}) v.push_back(std::make_unique<NlPosdefEnsemble>(n));
  v.push_back(std::make_unique<SphereEnsemble>());
  for (int n : {2, 3}) v.push_back(std::make_unique<GrpUEnsemble>(n));
  for (int n : {2, 3}) v.push_back(std::make_unique<AlgUEnsemble>(n));
  v.push_back(std::make_unique<Sl2cGroupEnsemble>());
  v.push_back(std::make_unique<Sl2cAlgebraEnsemble>());
  v.push_back(std::make_unique<Gl2rEnsemble>(true, Branch::split));
  v.push_back(std::make_unique<Gl2rEnsemble>(true, Branch::rotation));
  v.push_back(std::make_unique<Gl2rEnsemble>(false, Branch::split));
  v.push_back(std::make_unique<Gl2rEnsemble>(false, Branch::rotation));
  return v;
}

const std::vector<std::unique_ptr<Ensemble>>& catalog() {
  static const std::vector<std::unique_ptr<Ensemble>> v = build_catalog();
  return v;
}

std::string normalize_id(const std::string& id) {
  std::string out;
  for (char c : id)
    if (c != '(' && c != ')') out.push_back(c);
  return out;
}

}  // namespace

const Ensemble& instance_lookup(const std::string& id) {
  for (const auto& e : catalog())
    if (e->id() == id || normalize_id(e->id()) == normalize_id(id)) return *e;
  throw UnknownInstance("no registered instance \"" + id + "\"");
}

std::vector<std::string> instance_ids() {
  std::vector<std::string> out;
  for (const auto& e : catalog()) out.push_back(e->id());
  return out;
}

}  // namespace weylcover
