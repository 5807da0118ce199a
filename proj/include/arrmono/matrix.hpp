#pragma once

// Dense matrices over Q(zeta_N) with exact rank, kernels, characteristic
// polynomials and eigenspaces.

#include <numeric>
#include <vector>

#include "arrmono/cyclotomic.hpp"
#include "arrmono/errors.hpp"
#include "arrmono/laurent.hpp"
#include "arrmono/point.hpp"

namespace arrmono {

using Vector = std::vector<CycloNum>;

class ExactMatrix {
 public:
  ExactMatrix() = default;

  /// Zero matrix over Q(zeta_order).
  ExactMatrix(std::size_t rows, std::size_t cols, int order = 1)
      : rows_(rows), cols_(cols), order_(order), entries_(rows * cols, CycloNum(0).lifted(order)) {}

  /// Entries are lifted to the lcm of their orders.
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<CycloNum> entries) : rows_(rows), cols_(cols) {
    if (entries.size() != rows * cols) throw Error(ErrorKind::InvalidArgument, "entry count must equal rows*cols");
    order_ = 1;
    for (const auto& e : entries) order_ = std::lcm(order_, e.order());
    for (auto& e : entries) e = e.lifted(order_);
    entries_ = std::move(entries);
  }

  static ExactMatrix identity(std::size_t n, int order = 1) {
    ExactMatrix m(n, n, order);
    for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = CycloNum(1).lifted(order);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int order() const { return order_; }
  const std::vector<CycloNum>& entries() const { return entries_; }

  const CycloNum& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  void set(std::size_t r, std::size_t c, const CycloNum& v) {
    const int l = std::lcm(order_, v.order());
    if (l != order_) relift(l);
    entries_[r * cols_ + c] = v.lifted(order_);
  }

  ExactMatrix lifted(int target) const {
    ExactMatrix out = *this;
    out.relift(target);
    return out;
  }

  ExactMatrix transpose() const {
    ExactMatrix out(cols_, rows_, order_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out.entries_[c * rows_ + r] = (*this)(r, c);
    return out;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
    const int l = std::lcm(a.order_, b.order_);
    ExactMatrix x = a.lifted(l), y = b.lifted(l);
    ExactMatrix out(a.rows_, b.cols_, l);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& v = x(i, k);
        if (v.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const auto& w = y(k, j);
          if (!w.is_zero()) out.entries_[i * b.cols_ + j] += v * w;
        }
      }
    return out;
  }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) { return combine(a, b, 1); }
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) { return combine(a, b, -1); }

  friend ExactMatrix operator*(const CycloNum& s, const ExactMatrix& m) {
    const int l = std::lcm(s.order(), m.order_);
    ExactMatrix out = m.lifted(l);
    CycloNum sl = s.lifted(l);
    for (auto& e : out.entries_) e = sl * e;
    return out;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      if (!(a.entries_[i] == b.entries_[i])) return false;
    return true;
  }

  /// Rows stacked: [a; b].
  static ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.cols_) throw Error(ErrorKind::InvalidArgument, "vstack column mismatch");
    const int l = std::lcm(a.order_, b.order_);
    ExactMatrix out(a.rows_ + b.rows_, a.cols_, l);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] = a.entries_[i].lifted(l);
    for (std::size_t i = 0; i < b.entries_.size(); ++i) out.entries_[a.entries_.size() + i] = b.entries_[i].lifted(l);
    return out;
  }

  Vector row(std::size_t r) const { return Vector(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_); }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
    Vector out(rows_, CycloNum(0).lifted(order_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  /// Row vector times matrix.
  Vector apply_left(const Vector& v) const { return transpose().apply(v); }

 private:
  static ExactMatrix combine(const ExactMatrix& a, const ExactMatrix& b, int sign) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
    const int l = std::lcm(a.order_, b.order_);
    ExactMatrix out = a.lifted(l);
    for (std::size_t i = 0; i < out.entries_.size(); ++i) {
      CycloNum w = b.entries_[i].lifted(l);
      out.entries_[i] = sign > 0 ? out.entries_[i] + w : out.entries_[i] - w;
    }
    return out;
  }

  void relift(int target) {
    for (auto& e : entries_) e = e.lifted(target);
    order_ = target;
  }

  std::size_t rows_ = 0, cols_ = 0;
  int order_ = 1;
  std::vector<CycloNum> entries_;
};

inline ExactMatrix evaluate(const LaurentMatrix& m, const PointEvaluator& eval) {
  std::vector<CycloNum> out;
  out.reserve(m.rows() * m.cols());
  for (const auto& e : m.entries()) out.push_back(eval(e));
  return ExactMatrix(m.rows(), m.cols(), std::move(out));
}

inline ExactMatrix evaluate(const LaurentMatrix& m, const ParameterPoint& pt) { return evaluate(m, PointEvaluator(pt)); }

namespace detail {

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<CycloNum>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    CycloNum inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!a[r][j].is_zero()) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      CycloNum f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<std::vector<CycloNum>> to_rows(const ExactMatrix& m) {
  std::vector<std::vector<CycloNum>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);
  return rows;
}

}  // namespace detail

/// Exact rank by Gauss-Jordan elimination over the field.
inline std::size_t rank(const ExactMatrix& m) {
  auto rows = detail::to_rows(m);
  return detail::rref(rows, m.cols()).size();
}

enum class Side { Left, Right };

/// Basis of {v : m v = 0} (Right) or {v : v m = 0} (Left), in RREF-normalized form.
inline std::vector<Vector> kernel_basis(const ExactMatrix& m, Side side) {
  if (side == Side::Left) return kernel_basis(m.transpose(), Side::Right);
  auto rows = detail::to_rows(m);
  auto pivots = detail::rref(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  const CycloNum zero = CycloNum(0).lifted(m.order());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), zero);
    v[f] = CycloNum(1).lifted(m.order());
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Univariate polynomial over Q(zeta_N), ascending coefficients, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<CycloNum> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  /// (lambda - root)
  static UniPoly linear(const CycloNum& root) { return UniPoly({-root, CycloNum(1)}); }

  const std::vector<CycloNum>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<CycloNum> out(a.coeffs_.size() + b.coeffs_.size() - 1, CycloNum(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    return true;
  }

  CycloNum operator()(const CycloNum& x) const {
    CycloNum acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<CycloNum> coeffs_;
};

/// Characteristic polynomial det(lambda I - m) via the Faddeev-LeVerrier recurrence.
inline UniPoly char_poly(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "char_poly of a non-square matrix");
  const std::size_t n = m.rows();
  const int N = m.order();
  std::vector<CycloNum> c(n + 1, CycloNum(0).lifted(N));
  c[n] = CycloNum(1).lifted(N);
  ExactMatrix mk(n, n, N);  // M_0 = 0
  const ExactMatrix id = ExactMatrix::identity(n, N);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    ExactMatrix am = m * mk;
    CycloNum tr = CycloNum(0).lifted(N);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = tr.scaled(Rational(-1) / Rational(static_cast<long>(k)));
  }
  return UniPoly(std::move(c));
}

/// Right kernel of (m - lambda I).
inline std::vector<Vector> eigenspace(const ExactMatrix& m, const CycloNum& lambda) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "eigenspace of a non-square matrix");
  return kernel_basis(m - lambda * ExactMatrix::identity(m.rows(), m.order()), Side::Right);
}

}  // namespace arrmono
