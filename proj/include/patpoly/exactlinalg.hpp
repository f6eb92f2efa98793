#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace patpoly {

using Integer = mpz_class;
using Rational = mpq_class;
using IntPoint = std::vector<std::int64_t>;
using ZVector = std::vector<Integer>;
using QVector = std::vector<Rational>;

inline Rational make_rational(long num, long den) {
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init);

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<T> column(int c) const;
  std::vector<T> row(int r) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  std::vector<T> operator*(const std::vector<T>& v) const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  void swap_rows(int a, int b);
  void swap_cols(int a, int b);
  /// row[dst] += f * row[src]
  void add_row(int dst, int src, const T& f);
  /// col[dst] += f * col[src]
  void add_col(int dst, int src, const T& f);
  void negate_row(int r);
  void negate_col(int c);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using ZMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;

ZMatrix to_zmatrix(const QMatrix& m);  // throws unless integral
QMatrix to_qmatrix(const ZMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer det(const ZMatrix& m);
Rational det(const QMatrix& m);
int rank(const ZMatrix& m);
int rank(const QMatrix& m);
/// Basis of the right kernel, as reduced-echelon columns.
QMatrix kernel(const QMatrix& m);
/// Exact inverse; throws DegenerateInput if singular.
QMatrix inverse(const QMatrix& m);

/// A * U = H with U unimodular and H in column Hermite form (lower echelon,
/// positive pivots, entries left of a pivot reduced into [0, pivot)).
struct HermiteResult {
  ZMatrix H;
  ZMatrix U;
  int rank = 0;
};
HermiteResult hermite_normal_form(const ZMatrix& A);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithResult {
  ZMatrix U;
  ZMatrix D;
  ZMatrix V;
  std::vector<Integer> invariant_factors;  // nonzero diagonal entries
};
SmithResult smith_normal_form(const ZMatrix& A);

/// Basis of the saturated lattice aff(points) ∩ Z^N, relative to `origin`.
/// `basis` is in column Hermite form; `left_inverse * basis = I`.
struct AffineLatticeBasis {
  IntPoint origin;
  ZMatrix basis;  // N x d
  ZMatrix left_inverse;  // d x N
  int dim() const { return basis.cols(); }
  int ambient_dim() const { return basis.rows(); }
};
AffineLatticeBasis affine_lattice_basis(std::span<const IntPoint> points);

/// Throws NotInSpan or NotInLattice.
ZVector lattice_coords(const AffineLatticeBasis& L, std::span<const Rational> x);
ZVector lattice_coords(const AffineLatticeBasis& L, const IntPoint& x);
IntPoint lattice_coords_int(const AffineLatticeBasis& L, const IntPoint& x);
IntPoint from_lattice_coords(const AffineLatticeBasis& L, std::span<const std::int64_t> z,
                             std::int64_t origin_scale = 1);

/// True iff the simplex has normalized volume 1 in its own affine lattice.
/// Throws DegenerateInput for affinely dependent vertices.
bool is_unimodular_simplex(std::span<const IntPoint> vertices);

/// gcd of all maximal minors of a full-column-rank matrix (throws DependentColumns).
Integer gcd_full_minors(const ZMatrix& X);

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);
nlohmann::json to_json(const QMatrix& m);
nlohmann::json to_json(const ZMatrix& m);
QMatrix qmatrix_from_json(const nlohmann::json& j);

/// Exact LP: maximize c.x subject to A x = b, x >= 0 (Bland's rule, two phases).
struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Rational value;
  QVector x;
};
LpResult lp_maximize(const QMatrix& A, const QVector& b, const QVector& c);

// ---- template definitions ----

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init) {
  rows_ = static_cast<int>(init.size());
  cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
  for (const auto& r : init) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& v : r) data_.push_back(v);
  }
}

template <class T>
Matrix<T> Matrix<T>::from_columns(const std::vector<std::vector<T>>& columns, int rows) {
  Matrix m(rows, static_cast<int>(columns.size()));
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  return m;
}

template <class T>
std::vector<T> Matrix<T>::column(int c) const {
  std::vector<T> v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

template <class T>
std::vector<T> Matrix<T>::row(int r) const {
  return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
                        data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix p(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const T& a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < o.cols_; ++c) p(r, c) += a * o(k, c);
    }
  return p;
}

template <class T>
std::vector<T> Matrix<T>::operator*(const std::vector<T>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<T> out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

template <class T>
void Matrix<T>::swap_rows(int a, int b) {
  if (a == b) return;
  for (int c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

template <class T>
void Matrix<T>::swap_cols(int a, int b) {
  if (a == b) return;
  for (int r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

template <class T>
void Matrix<T>::add_row(int dst, int src, const T& f) {
  if (f == 0) return;
  for (int c = 0; c < cols_; ++c) (*this)(dst, c) += f * (*this)(src, c);
}

template <class T>
void Matrix<T>::add_col(int dst, int src, const T& f) {
  if (f == 0) return;
  for (int r = 0; r < rows_; ++r) (*this)(r, dst) += f * (*this)(r, src);
}

template <class T>
void Matrix<T>::negate_row(int r) {
  for (int c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

template <class T>
void Matrix<T>::negate_col(int c) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

}  // namespace patpoly
