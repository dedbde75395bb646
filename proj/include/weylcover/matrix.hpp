#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace weylcover {

// Complex scalar kept as an explicit (re, im) pair; the toolkit does not
// depend on a host complex type.
struct Cplx {
  double re = 0.0;
  double im = 0.0;

  constexpr Cplx() = default;
  constexpr Cplx(double r) : re(r) {}
  constexpr Cplx(double r, double i) : re(r), im(i) {}

  friend constexpr Cplx operator+(Cplx a, Cplx b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr Cplx operator-(Cplx a, Cplx b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr Cplx operator-(Cplx a) { return {-a.re, -a.im}; }
  friend constexpr Cplx operator*(Cplx a, Cplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr Cplx operator*(double s, Cplx a) { return {s * a.re, s * a.im}; }
  friend constexpr Cplx operator*(Cplx a, double s) { return s * a; }
  friend Cplx operator/(Cplx a, Cplx b) {
    double d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend constexpr Cplx operator/(Cplx a, double s) { return {a.re / s, a.im / s}; }
  Cplx& operator+=(Cplx b) { re += b.re; im += b.im; return *this; }
  Cplx& operator-=(Cplx b) { re -= b.re; im -= b.im; return *this; }
  Cplx& operator*=(Cplx b) { *this = *this * b; return *this; }
};

inline constexpr Cplx conj(Cplx a) { return {a.re, -a.im}; }
inline constexpr double abs2(Cplx a) { return a.re * a.re + a.im * a.im; }
inline double cabs(Cplx a) { return std::hypot(a.re, a.im); }
inline double carg(Cplx a) { return std::atan2(a.im, a.re); }
inline Cplx csqrt(Cplx a);    // principal branch
inline Cplx unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline Cplx csqrt(Cplx a) {
  double r = cabs(a);
  if (r == 0.0) return {0.0, 0.0};
  double s = std::sqrt((r + a.re) / 2.0);
  double t = std::sqrt((r - a.re) / 2.0);
  return {s, a.im >= 0.0 ? t : -t};
}

enum class Field { real, complex };

// Row-major dense matrix over the real or complex field. Complex entries are
// stored as adjacent (re, im) doubles.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(Field field, int rows, int cols);

  static DenseMatrix identity(Field field, int n);
  static DenseMatrix zeros(Field field, int rows, int cols);

  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::complex; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Cplx at(int r, int c) const {
    std::size_t i = index(r, c);
    if (field_ == Field::real) return {data_[i], 0.0};
    return {data_[2 * i], data_[2 * i + 1]};
  }
  // Writing a non-real value into a real matrix throws BadInput.
  void set(int r, int c, Cplx v);
  void set(int r, int c, double v) { set(r, c, Cplx{v}); }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  DenseMatrix to_complex() const;
  DenseMatrix transpose() const;
  DenseMatrix adjoint() const;   // conjugate transpose
  DenseMatrix real_part() const;

  double frobenius_norm() const;
  Cplx trace() const;

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator-=(const DenseMatrix& o);
  DenseMatrix& operator*=(double s);

private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  Field field_ = Field::real;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
DenseMatrix scale(Cplx s, const DenseMatrix& a);

// Euclidean distance between entry arrays (fields promoted as needed).
double distance(const DenseMatrix& a, const DenseMatrix& b);
// Frobenius norm of the off-diagonal part.
double offdiag_norm(const DenseMatrix& a);

double unitary_residual(const DenseMatrix& u);     // ||U^H U - I||_F
double self_adjoint_residual(const DenseMatrix& a);  // ||A - A^H||_F

// Re tr(a^H b): the real inner product used on Lie algebras and tangent
// spaces throughout.
double re_tr_inner(const DenseMatrix& a, const DenseMatrix& b);

// Matrix JSON encoding used by the CLI:
//   {"field":"real"|"complex","rows":n,"cols":m,"data":[...]}
// row-major, complex entries as [re, im] pairs.
std::string to_json_string(const DenseMatrix& m);
DenseMatrix matrix_from_json_string(const std::string& text);

}  // namespace weylcover
