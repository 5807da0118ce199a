#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element of order N is stored by its coordinates in the power basis
// 1, z, ..., z^{phi(N)-1} modulo the N-th cyclotomic polynomial. Binary
// operations lift both operands to Q(zeta_L), L = lcm of the orders, so the
// representation of a result depends only on the operands' orders and values.

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "arrmono/errors.hpp"
#include "arrmono/rational.hpp"

namespace arrmono {

namespace detail {

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

using IntPoly = std::vector<BigInt>;   // ascending coefficients
using RatPoly = std::vector<Rational>;  // ascending coefficients

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Per-order tables: the cyclotomic polynomial and the reduced powers z^e.
struct CycloTables {
  int order = 1;
  int degree = 1;
  IntPoly phi_poly;                  // monic, degree = phi(order)
  std::vector<IntPoly> powers;       // powers[e] = z^e reduced, e in [0, order)
};

inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    BigInt c = num[i];
    quot[i - dn] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

inline const CycloTables& tables(int order);

inline CycloTables build_tables(int order) {
  CycloTables t;
  t.order = order;
  t.degree = euler_phi(order);
  IntPoly p(order + 1, 0);
  p[0] = -1;
  p[order] = 1;
  for (int d = 1; d < order; ++d)
    if (order % d == 0) p = exact_divide(p, tables(d).phi_poly);
  t.phi_poly = p;
  t.powers.reserve(order);
  IntPoly cur(t.degree, 0);
  cur[0] = 1;
  for (int e = 0; e < order; ++e) {
    t.powers.push_back(cur);
    // multiply by z and reduce
    BigInt top = cur[t.degree - 1];
    for (int i = t.degree - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < t.degree; ++i) cur[i] -= top * t.phi_poly[i];
  }
  return t;
}

inline const CycloTables& tables(int order) {
  static std::recursive_mutex mu;
  static std::map<int, CycloTables> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  CycloTables built = build_tables(order);
  return cache.emplace(order, std::move(built)).first->second;
}

/// Reduces an arbitrary-degree polynomial in z modulo Phi_order.
inline RatPoly reduce(RatPoly p, int order) {
  const auto& tab = tables(order);
  const int deg = tab.degree;
  for (std::size_t i = p.size(); i-- > static_cast<std::size_t>(deg);) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    for (int j = 0; j <= deg; ++j) p[i - deg + j] -= c * tab.phi_poly[j];
  }
  p.resize(deg, Rational(0));
  return p;
}

inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  RatPoly q;
  if (a.size() < b.size()) return {q, a};
  const std::size_t bs = b.size();
  q.assign(a.size() - bs + 1, Rational(0));
  const Rational lead = b.back();
  for (std::size_t top = a.size(); top >= bs; --top) {
    const std::size_t i = top - 1;
    if (a[i] == 0) continue;
    const std::size_t shift = i - (bs - 1);
    Rational c = a[i] / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < bs; ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  return {q, a};
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline RatPoly poly_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace detail

class CycloNum {
 public:
  /// Zero of Q.
  CycloNum() : order_(1), coeffs_(1, Rational(0)) {}

  CycloNum(const Rational& r) : order_(1), coeffs_(1, r) { coeffs_[0].canonicalize(); }  // NOLINT: implicit scalar use
  CycloNum(long v) : CycloNum(Rational(v)) {}               // NOLINT

  CycloNum(int order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    if (order_ < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic order must be >= 1");
    if (static_cast<int>(coeffs_.size()) != detail::euler_phi(order_))
      throw Error(ErrorKind::InvalidArgument, "coefficient count must equal phi(order)");
    for (auto& c : coeffs_) c.canonicalize();
  }

  /// zeta_order^exponent.
  static CycloNum root_of_unity(int order, long exponent) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic order must be >= 1");
    const auto& tab = detail::tables(order);
    long e = exponent % order;
    if (e < 0) e += order;
    const auto& pw = tab.powers[e];
    std::vector<Rational> c(pw.begin(), pw.end());
    return CycloNum(order, std::move(c));
  }

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  bool is_one() const { return is_rational() && coeffs_[0] == 1; }

  /// Re-expresses the element in Q(zeta_target); order() must divide target.
  CycloNum lifted(int target) const {
    if (target == order_) return *this;
    if (target % order_ != 0)
      throw Error(ErrorKind::InvalidArgument, "lift target must be a multiple of the order");
    const int step = target / order_;
    const auto& tab = detail::tables(target);
    std::vector<Rational> out(tab.degree, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const auto& pw = tab.powers[(static_cast<long>(i) * step) % target];
      for (int j = 0; j < tab.degree; ++j)
        if (pw[j] != 0) out[j] += coeffs_[i] * pw[j];
    }
    return CycloNum(target, std::move(out));
  }

  CycloNum inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta_N)");
    if (order_ <= 2) return CycloNum(order_, {Rational(1) / coeffs_[0]});
    // Extended Euclid in Q[z]: find u with u * a == 1 mod Phi_N.
    const auto& tab = detail::tables(order_);
    detail::RatPoly r0(tab.phi_poly.begin(), tab.phi_poly.end());
    detail::RatPoly r1 = coeffs_;
    detail::trim(r1);
    detail::RatPoly u0, u1{Rational(1)};
    while (!(r1.size() == 1)) {
      auto [q, r] = detail::divmod(r0, r1);
      detail::RatPoly u2 = detail::poly_sub(u0, detail::poly_mul(q, u1));
      r0 = std::move(r1);
      r1 = std::move(r);
      u0 = std::move(u1);
      u1 = std::move(u2);
    }
    Rational c = r1[0];
    for (auto& x : u1) x /= c;
    return CycloNum(order_, detail::reduce(u1, order_));
  }

  CycloNum operator-() const {
    CycloNum out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    if (a.order_ != b.order_) {
      int l = std::lcm(a.order_, b.order_);
      return a.lifted(l) + b.lifted(l);
    }
    CycloNum out = a;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
    return out;
  }

  friend CycloNum operator-(const CycloNum& a, const CycloNum& b) { return a + (-b); }

  friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    if (a.order_ != b.order_) {
      int l = std::lcm(a.order_, b.order_);
      return a.lifted(l) * b.lifted(l);
    }
    if (a.order_ <= 2) return CycloNum(a.order_, {a.coeffs_[0] * b.coeffs_[0]});
    if (a.is_rational()) return b.scaled(a.coeffs_[0]);
    if (b.is_rational()) return a.scaled(b.coeffs_[0]);
    return CycloNum(a.order_, detail::reduce(detail::poly_mul(a.coeffs_, b.coeffs_), a.order_));
  }

  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

  CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
  CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
  CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }

  CycloNum scaled(const Rational& r) const {
    CycloNum out = *this;
    for (auto& c : out.coeffs_) c *= r;
    return out;
  }

  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    int l = std::lcm(a.order_, b.order_);
    return a.lifted(l).coeffs_ == b.lifted(l).coeffs_;
  }

  CycloNum pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum result(order_, std::vector<Rational>(coeffs_.size(), Rational(0)));
    result.coeffs_[0] = 1;
    CycloNum base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Complex embedding sending zeta_N to exp(2 pi i / N).
  std::complex<double> to_complex() const {
    std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / order_);
    std::complex<double> acc = 0, p = 1;
    for (const auto& c : coeffs_) {
      acc += c.get_d() * p;
      p *= z;
    }
    return acc;
  }

  /// If the element equals r * zeta_target^e (r rational, target a multiple of
  /// the order), returns (r, e) with e in [0, target).
  std::optional<std::pair<Rational, int>> as_scaled_root(int target) const {
    if (is_zero()) return std::nullopt;
    CycloNum v = lifted(target);
    const auto& tab = detail::tables(target);
    for (int e = 0; e < target; ++e) {
      const auto& pw = tab.powers[e];
      std::optional<Rational> ratio;
      bool ok = true;
      for (int j = 0; j < tab.degree && ok; ++j) {
        if (pw[j] == 0) {
          ok = v.coeffs_[j] == 0;
        } else {
          Rational q = v.coeffs_[j] / Rational(pw[j]);
          if (!ratio) ratio = q;
          else ok = *ratio == q;
        }
      }
      if (ok && ratio) return std::make_pair(*ratio, e);
    }
    return std::nullopt;
  }

 private:
  int order_;
  std::vector<Rational> coeffs_;
};

inline CycloNum cyclo_embed(int order, long exponent) { return CycloNum::root_of_unity(order, exponent); }

enum class FieldOp { Add, Mul, Div };

inline CycloNum field_arith(const CycloNum& a, const CycloNum& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
  }
  return a;
}

}  // namespace arrmono
