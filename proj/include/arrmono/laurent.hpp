#pragma once

// Laurent-monomial sums with integer coefficients in the horizontal
// parameters s_i and the vertical parameters t_j, and matrices of them.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arrmono/errors.hpp"
#include "arrmono/rational.hpp"

namespace arrmono {

/// A local-system parameter: s_i (horizontal line i) or t_j (vertical line j), 1-based.
struct Param {
  enum class Kind : std::uint8_t { S, T };
  Kind kind = Kind::S;
  std::uint32_t index = 1;

  auto operator<=>(const Param&) const = default;

  std::string name() const { return (kind == Kind::S ? "s" : "t") + std::to_string(index); }

  static Param parse(std::string_view text) {
    if (text.size() < 2 || (text[0] != 's' && text[0] != 't'))
      throw Error(ErrorKind::Parse, "bad parameter name '" + std::string(text) + "'");
    std::uint32_t idx = 0;
    for (char c : text.substr(1)) {
      if (c < '0' || c > '9') throw Error(ErrorKind::Parse, "bad parameter name '" + std::string(text) + "'");
      idx = idx * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (idx == 0) throw Error(ErrorKind::Parse, "parameter indices are 1-based");
    return Param{text[0] == 's' ? Kind::S : Kind::T, idx};
  }
};

inline Param s_param(int i) { return Param{Param::Kind::S, static_cast<std::uint32_t>(i)}; }
inline Param t_param(int j) { return Param{Param::Kind::T, static_cast<std::uint32_t>(j)}; }

/// Sorted by parameter, zero exponents omitted.
using Exponents = std::vector<std::pair<Param, int>>;

inline Exponents merge_exponents(const Exponents& a, const Exponents& b, int sign_b = 1) {
  Exponents out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sign_b * b[j].second);
      ++j;
    } else {
      int e = a[i].second + sign_b * b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

struct LaurentTerm {
  BigInt coefficient;
  Exponents exponents;
};

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) {  // NOLINT: integer constants read naturally in formulas
    if (c != 0) terms_.push_back({BigInt(c), {}});
  }
  LaurentPoly(const BigInt& c) {  // NOLINT
    if (c != 0) terms_.push_back({c, {}});
  }

  static LaurentPoly monomial(const BigInt& coeff, Exponents exps) {
    LaurentPoly p;
    if (coeff != 0) {
      std::erase_if(exps, [](const auto& e) { return e.second == 0; });
      std::sort(exps.begin(), exps.end());
      p.terms_.push_back({coeff, std::move(exps)});
    }
    return p;
  }

  static LaurentPoly variable(Param p, int exponent = 1) { return monomial(1, {{p, exponent}}); }

  /// Builds from arbitrary terms, combining like monomials.
  static LaurentPoly from_terms(const std::vector<LaurentTerm>& terms) {
    std::map<Exponents, BigInt> acc;
    for (const auto& t : terms) {
      Exponents e = t.exponents;
      std::erase_if(e, [](const auto& x) { return x.second == 0; });
      std::sort(e.begin(), e.end());
      acc[e] += t.coefficient;
    }
    return from_map(std::move(acc));
  }

  const std::vector<LaurentTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Units of the Laurent ring: a single term with coefficient +-1.
  bool is_unit() const { return terms_.size() == 1 && abs(terms_[0].coefficient) == 1; }

  LaurentPoly unit_inverse() const {
    if (!is_unit()) throw Error(ErrorKind::InvalidArgument, "not a unit of the Laurent ring");
    Exponents e = terms_[0].exponents;
    for (auto& x : e) x.second = -x.second;
    return monomial(terms_[0].coefficient, std::move(e));
  }

  LaurentPoly operator-() const {
    LaurentPoly out = *this;
    for (auto& t : out.terms_) t.coefficient = -t.coefficient;
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exponents < b.terms_[j].exponents)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exponents < a.terms_[i].exponents) {
        out.terms_.push_back(b.terms_[j++]);
      } else {
        BigInt c = a.terms_[i].coefficient + b.terms_[j].coefficient;
        if (c != 0) out.terms_.push_back({c, a.terms_[i].exponents});
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      return monomial_product(a.terms_[0], b.terms_[0]);
    }
    std::map<Exponents, BigInt> acc;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) acc[merge_exponents(x.exponents, y.exponents)] += x.coefficient * y.coefficient;
    return from_map(std::move(acc));
  }

  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].coefficient != b.terms_[i].coefficient || a.terms_[i].exponents != b.terms_[i].exponents)
        return false;
    return true;
  }

  /// Exact quotient by (1 - p); throws InvalidArgument if (1 - p) does not divide.
  LaurentPoly divide_by_one_minus(Param p) const {
    // Group terms by the exponents of all other parameters; within a group the
    // quotient of sum f_e p^e by (1 - p) has coefficients q_e = sum_{e' <= e} f_e'.
    std::map<Exponents, std::map<int, BigInt>> groups;
    for (const auto& t : terms_) {
      Exponents rest;
      int e = 0;
      for (const auto& x : t.exponents) {
        if (x.first == p) e = x.second;
        else rest.push_back(x);
      }
      groups[rest][e] += t.coefficient;
    }
    std::vector<LaurentTerm> out;
    for (const auto& [rest, coeffs] : groups) {
      const int lo = coeffs.begin()->first;
      const int hi = coeffs.rbegin()->first;
      BigInt running = 0;
      for (int e = lo; e <= hi; ++e) {
        auto it = coeffs.find(e);
        if (it != coeffs.end()) running += it->second;
        if (e == hi) {
          if (running != 0) throw Error(ErrorKind::InvalidArgument, "Laurent polynomial not divisible by (1 - " + p.name() + ")");
          break;
        }
        if (running != 0) {
          Exponents ex = rest;
          ex.emplace_back(p, e);
          out.push_back({running, std::move(ex)});
        }
      }
    }
    return from_terms(out);
  }

  /// Sum of coefficients (value at the all-ones point).
  BigInt coefficient_sum() const {
    BigInt s = 0;
    for (const auto& t : terms_) s += t.coefficient;
    return s;
  }

 private:
  static LaurentPoly monomial_product(const LaurentTerm& x, const LaurentTerm& y) {
    LaurentPoly p;
    p.terms_.push_back({x.coefficient * y.coefficient, merge_exponents(x.exponents, y.exponents)});
    return p;
  }

  static LaurentPoly from_map(std::map<Exponents, BigInt>&& acc) {
    LaurentPoly p;
    p.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (c != 0) p.terms_.push_back({std::move(c), e});
    return p;
  }

  std::vector<LaurentTerm> terms_;  // strictly increasing exponents
};

/// Product of the parameters, each to the first power.
inline LaurentPoly product_of(const std::vector<Param>& params) {
  Exponents e;
  for (const auto& p : params) e.emplace_back(p, 1);
  std::vector<LaurentTerm> t{{BigInt(1), e}};
  return LaurentPoly::from_terms(t);
}

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static LaurentMatrix identity(std::size_t n) {
    LaurentMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<LaurentPoly>& entries() const { return entries_; }

  LaurentPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  LaurentMatrix transpose() const {
    LaurentMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
    LaurentMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
      }
    return out;
  }

  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
    check_same_shape(a, b);
    LaurentMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
    return out;
  }

  friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
    check_same_shape(a, b);
    LaurentMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
    return out;
  }

  friend LaurentMatrix operator*(const LaurentPoly& s, const LaurentMatrix& m) {
    LaurentMatrix out = m;
    for (auto& e : out.entries_) e = s * e;
    return out;
  }

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.size();
    return n;
  }

 private:
  static void check_same_shape(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<LaurentPoly> entries_;
};

/// Inverse over the Laurent ring by Gauss-Jordan elimination restricted to
/// unit pivots. Succeeds for the transport matrices built here (each column
/// carries a signed monomial pivot); throws InvalidArgument when no unit pivot
/// is available.
inline LaurentMatrix inverse_over_units(const LaurentMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::NonSquare, "inverse of a non-square matrix");
  LaurentMatrix a = m;
  LaurentMatrix inv = LaurentMatrix::identity(n);
  std::vector<bool> row_used(n, false), col_done(n, false);
  std::vector<std::size_t> pivot_row_of(n);
  for (std::size_t step = 0; step < n; ++step) {
    // Prefer a column whose only remaining nonzero entry is a unit.
    std::size_t best_r = n, best_c = n, best_count = n + 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (col_done[c]) continue;
      std::size_t count = 0, unit_r = n;
      for (std::size_t r = 0; r < n; ++r) {
        if (row_used[r] || a(r, c).is_zero()) continue;
        ++count;
        if (unit_r == n && a(r, c).is_unit()) unit_r = r;
      }
      if (unit_r != n && count < best_count) {
        best_count = count;
        best_r = unit_r;
        best_c = c;
      }
    }
    if (best_c == n) throw Error(ErrorKind::InvalidArgument, "no unit pivot available");
    const std::size_t pr = best_r, pc = best_c;
    row_used[pr] = true;
    col_done[pc] = true;
    pivot_row_of[pc] = pr;
    const LaurentPoly scale = a(pr, pc).unit_inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(pr, j).is_zero()) a(pr, j) = scale * a(pr, j);
      if (!inv(pr, j).is_zero()) inv(pr, j) = scale * inv(pr, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pr || a(r, pc).is_zero()) continue;
      const LaurentPoly f = a(r, pc);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(pr, j).is_zero()) a(r, j) -= f * a(pr, j);
        if (!inv(pr, j).is_zero()) inv(r, j) -= f * inv(pr, j);
      }
    }
  }
  // Row pr of inv now holds row pc of the inverse.
  LaurentMatrix out(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t j = 0; j < n; ++j) out(c, j) = inv(pivot_row_of[c], j);
  return out;
}

}  // namespace arrmono
