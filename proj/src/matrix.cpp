#include "weylcover/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "weylcover/errors.hpp"

namespace weylcover {

DenseMatrix::DenseMatrix(Field field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw BadInput("matrix dimensions must be nonnegative");
  std::size_t n = static_cast<std::size_t>(rows) * cols;
  data_.assign(field == Field::real ? n : 2 * n, 0.0);
}

DenseMatrix DenseMatrix::identity(Field field, int n) {
  DenseMatrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

DenseMatrix DenseMatrix::zeros(Field field, int rows, int cols) {
  return DenseMatrix(field, rows, cols);
}

void DenseMatrix::set(int r, int c, Cplx v) {
  std::size_t i = index(r, c);
  if (field_ == Field::real) {
    if (v.im != 0.0) throw BadInput("cannot store a complex value in a real matrix");
    data_[i] = v.re;
  } else {
    data_[2 * i] = v.re;
    data_[2 * i + 1] = v.im;
  }
}

DenseMatrix DenseMatrix::to_complex() const {
  if (field_ == Field::complex) return *this;
  DenseMatrix m(Field::complex, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.set(r, c, at(r, c));
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix m(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.set(c, r, at(r, c));
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.set(c, r, conj(at(r, c)));
  return m;
}

DenseMatrix DenseMatrix::real_part() const {
  DenseMatrix m(Field::real, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.set(r, c, at(r, c).re);
  return m;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Cplx DenseMatrix::trace() const {
  Cplx t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

namespace {

void check_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw BadInput("matrix shape mismatch");
}

}  // namespace

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  *this = *this + o;
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
  *this = *this - o;
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_shape(a, b);
  if (a.field() != b.field()) return a.to_complex() + b.to_complex();
  DenseMatrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += b.data()[i];
  return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_shape(a, b);
  if (a.field() != b.field()) return a.to_complex() - b.to_complex();
  DenseMatrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= b.data()[i];
  return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw BadInput("matrix product shape mismatch");
  Field f = (a.is_complex() || b.is_complex()) ? Field::complex : Field::real;
  DenseMatrix r(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Cplx s;
      for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
      r.set(i, j, s);
    }
  }
  return r;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix r = a;
  r *= s;
  return r;
}

DenseMatrix scale(Cplx s, const DenseMatrix& a) {
  if (s.im == 0.0 && !a.is_complex()) return s.re * a;
  DenseMatrix r = a.to_complex();
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.set(i, j, s * r.at(i, j));
  return r;
}

double distance(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_shape(a, b);
  double s = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) s += abs2(a.at(r, c) - b.at(r, c));
  return std::sqrt(s);
}

double offdiag_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (r != c) s += abs2(a.at(r, c));
  return std::sqrt(s);
}

double unitary_residual(const DenseMatrix& u) {
  if (!u.square()) return std::numeric_limits<double>::infinity();
  return distance(u.adjoint() * u, DenseMatrix::identity(u.field(), u.rows()));
}

double self_adjoint_residual(const DenseMatrix& a) {
  if (!a.square()) return std::numeric_limits<double>::infinity();
  return distance(a, a.adjoint());
}

double re_tr_inner(const DenseMatrix& a, const DenseMatrix& b) {
  double s = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) {
      Cplx x = a.at(r, c), y = b.at(r, c);
      s += x.re * y.re + x.im * y.im;
    }
  return s;
}

std::string to_json_string(const DenseMatrix& m) {
  nlohmann::json j;
  j["field"] = m.is_complex() ? "complex" : "real";
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  nlohmann::json data = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      Cplx v = m.at(r, c);
      if (m.is_complex())
        data.push_back(nlohmann::json::array({v.re, v.im}));
      else
        data.push_back(v.re);
    }
  }
  j["data"] = std::move(data);
  return j.dump();
}

DenseMatrix matrix_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("matrix JSON parse failure: ") + e.what());
  }
  if (!j.contains("field") || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw BadInput("matrix JSON needs field/rows/cols/data");
  std::string fs = j["field"].get<std::string>();
  Field f;
  if (fs == "real") f = Field::real;
  else if (fs == "complex") f = Field::complex;
  else throw BadInput("matrix field must be \"real\" or \"complex\"");
  int rows = j["rows"].get<int>();
  int cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1 || rows > 64 || cols > 64)
    throw BadInput("matrix dimensions must lie in [1, 64]");
  const auto& data = j["data"];
  if (static_cast<int>(data.size()) != rows * cols)
    throw BadInput("matrix data length does not match rows*cols");
  DenseMatrix m(f, rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c, ++k) {
      if (f == Field::real) {
        if (!data[k].is_number()) throw BadInput("real matrix entries must be numbers");
        m.set(r, c, data[k].get<double>());
      } else {
        if (!data[k].is_array() || data[k].size() != 2)
          throw BadInput("complex matrix entries must be [re, im] pairs");
        m.set(r, c, Cplx{data[k][0].get<double>(), data[k][1].get<double>()});
      }
    }
  }
  return m;
}

}  // namespace weylcover
