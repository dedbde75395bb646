#include "weylcover/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "weylcover/errors.hpp"

namespace weylcover {

DenseMatrix inverse(const DenseMatrix& a) {
  if (!a.square()) throw BadInput("inverse needs a square matrix");
  int n = a.rows();
  DenseMatrix inv = DenseMatrix::identity(a.field(), n);
  // operate over Cplx; real inputs stay exactly real
  std::vector<Cplx> m(static_cast<std::size_t>(n) * n), e(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      m[r * n + c] = a.at(r, c);
      e[r * n + c] = (r == c) ? Cplx{1.0} : Cplx{};
    }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = cabs(m[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = cabs(m[r * n + col]);
      if (v > best) { best = v; piv = r; }
    }
    if (best == 0.0) throw NotGroupElement("singular matrix has no inverse");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(m[piv * n + c], m[col * n + c]);
        std::swap(e[piv * n + c], e[col * n + c]);
      }
    }
    Cplx d = m[col * n + col];
    for (int c = 0; c < n; ++c) {
      m[col * n + c] = m[col * n + c] / d;
      e[col * n + c] = e[col * n + c] / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Cplx f = m[r * n + col];
      if (f.re == 0.0 && f.im == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        m[r * n + c] -= f * m[col * n + c];
        e[r * n + c] -= f * e[col * n + c];
      }
    }
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.set(r, c, a.is_complex() ? e[r * n + c] : Cplx{e[r * n + c].re});
  return inv;
}

Cplx determinant(const DenseMatrix& a) {
  if (!a.square()) throw BadInput("determinant needs a square matrix");
  int n = a.rows();
  std::vector<Cplx> m(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m[r * n + c] = a.at(r, c);
  Cplx det{1.0};
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = cabs(m[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = cabs(m[r * n + col]);
      if (v > best) { best = v; piv = r; }
    }
    if (best == 0.0) return Cplx{0.0};
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m[piv * n + c], m[col * n + c]);
      det = -1.0 * det;
    }
    Cplx d = m[col * n + col];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      Cplx f = m[r * n + col] / d;
      if (f.re == 0.0 && f.im == 0.0) continue;
      for (int c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
    }
  }
  return det;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> singular_values(const std::vector<std::vector<double>>& columns) {
  std::vector<std::vector<double>> v = columns;
  std::size_t n = v.size();
  if (n == 0) return {};
  // one-sided Jacobi: rotate column pairs until all are mutually orthogonal
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = dot(v[p], v[p]);
        double aqq = dot(v[q], v[q]);
        double apq = dot(v[p], v[q]);
        if (std::abs(apq) <= 1e-30 + 1e-16 * std::sqrt(app * aqq)) continue;
        rotated = true;
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < v[p].size(); ++i) {
          double vp = v[p][i], vq = v[q][i];
          v[p][i] = c * vp - s * vq;
          v[q][i] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(v[j], v[j]));
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

int numerical_rank(const std::vector<std::vector<double>>& columns, double rtol) {
  std::vector<double> sigma = singular_values(columns);
  if (sigma.empty() || sigma[0] == 0.0) return 0;
  int rank = 0;
  for (double s : sigma)
    if (s > rtol * sigma[0]) ++rank;
  return rank;
}

double abs_determinant(const std::vector<std::vector<double>>& columns) {
  std::size_t n = columns.size();
  if (n == 0) return 1.0;
  if (columns[0].size() != n) throw BadInput("abs_determinant needs a square system");
  std::vector<std::vector<double>> m = columns;  // m[col][row]
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[col][r]) > best) { best = std::abs(m[col][r]); piv = r; }
    }
    if (best == 0.0) return 0.0;
    if (piv != col)
      for (std::size_t c = 0; c < n; ++c) std::swap(m[c][piv], m[c][col]);
    double d = m[col][col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = m[col][r] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[c][r] -= f * m[c][col];
    }
  }
  return std::abs(det);
}

DenseMatrix matrix_exp(const DenseMatrix& a) {
  if (!a.square()) throw BadInput("matrix_exp needs a square matrix");
  double norm = a.frobenius_norm();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.25) {
    scaled *= 0.5;
    ++squarings;
  }
  DenseMatrix b = std::ldexp(1.0, -squarings) * a;
  DenseMatrix term = DenseMatrix::identity(a.field(), a.rows());
  DenseMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * b);
    sum += term;
    if (term.frobenius_norm() <= 1e-18 * (1.0 + sum.frobenius_norm())) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

DenseMatrix gram_schmidt_q(const DenseMatrix& a) {
  int n = a.rows(), k = a.cols();
  DenseMatrix q = a;
  auto col_dot = [&](int i, int j) {  // <q_i, q_j> conjugate-linear in the first slot
    Cplx s;
    for (int r = 0; r < n; ++r) s += conj(q.at(r, i)) * q.at(r, j);
    return s;
  };
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < j; ++i) {
        Cplx proj = col_dot(i, j);
        for (int r = 0; r < n; ++r) q.set(r, j, q.at(r, j) - proj * q.at(r, i));
      }
      double nrm = std::sqrt(col_dot(j, j).re);
      if (nrm == 0.0) throw NoConvergence("rank-deficient Gram-Schmidt input");
      for (int r = 0; r < n; ++r) q.set(r, j, q.at(r, j) / nrm);
    }
  }
  return q;
}

}  // namespace weylcover
