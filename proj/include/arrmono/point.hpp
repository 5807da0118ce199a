#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "arrmono/cyclotomic.hpp"
#include "arrmono/errors.hpp"
#include "arrmono/laurent.hpp"

namespace arrmono {

/// A point of the parameter torus: s_1..s_n for the horizontal lines,
/// t_1..t_m for the vertical lines, optionally the parameter of a line sent
/// to infinity (then prod s * prod t * t_inf = 1).
struct ParameterPoint {
  std::vector<CycloNum> s;
  std::vector<CycloNum> t;
  std::optional<CycloNum> t_inf;

  bool assigns(Param p) const {
    const auto& v = p.kind == Param::Kind::S ? s : t;
    return p.index >= 1 && p.index <= v.size();
  }

  const CycloNum& value(Param p) const {
    if (!assigns(p)) throw Error(ErrorKind::UnassignedParameter, "parameter " + p.name() + " is not assigned");
    return (p.kind == Param::Kind::S ? s : t)[p.index - 1];
  }

  /// lcm of the orders of all coordinates.
  int common_order() const {
    int l = 1;
    for (const auto& v : s) l = std::lcm(l, v.order());
    for (const auto& v : t) l = std::lcm(l, v.order());
    if (t_inf) l = std::lcm(l, t_inf->order());
    return l;
  }

  /// Throws InvalidArgument if a coordinate is zero.
  void check_torus() const {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i].is_zero()) throw Error(ErrorKind::InvalidArgument, "s" + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < t.size(); ++j)
      if (t[j].is_zero()) throw Error(ErrorKind::InvalidArgument, "t" + std::to_string(j + 1) + " is zero");
    if (t_inf && t_inf->is_zero()) throw Error(ErrorKind::InvalidArgument, "t_inf is zero");
  }

  friend bool operator==(const ParameterPoint&, const ParameterPoint&) = default;
};

/// Evaluates Laurent polynomials at a fixed point. Not thread-safe (power cache);
/// use one evaluator per thread.
///
/// When every coordinate has the form r * zeta_N^e (N = common order), a
/// monomial evaluates to a rational times a single power of zeta_N and the
/// sum is accumulated per power; otherwise powers are cached and multiplied
/// in the field. Both paths are exact.
class PointEvaluator {
 public:
  explicit PointEvaluator(const ParameterPoint& pt) : point_(pt), order_(pt.common_order()) {
    scaled_roots_ = true;
    auto record = [&](Param p, const CycloNum& v) {
      if (!scaled_roots_) return;
      auto sr = v.as_scaled_root(order_);
      if (!sr) {
        scaled_roots_ = false;
        return;
      }
      roots_[p] = *sr;
    };
    for (std::size_t i = 0; i < pt.s.size(); ++i) record(s_param(static_cast<int>(i + 1)), pt.s[i]);
    for (std::size_t j = 0; j < pt.t.size(); ++j) record(t_param(static_cast<int>(j + 1)), pt.t[j]);
  }

  int order() const { return order_; }
  bool uses_root_path() const { return scaled_roots_; }

  CycloNum operator()(const LaurentPoly& p) const {
    if (p.is_zero()) return CycloNum(0).lifted(order_);
    return scaled_roots_ ? eval_roots(p) : eval_general(p);
  }

 private:
  CycloNum eval_roots(const LaurentPoly& p) const {
    std::vector<Rational> acc(order_, Rational(0));
    for (const auto& term : p.terms()) {
      Rational r = 1;
      long e = 0;
      for (const auto& [param, ex] : term.exponents) {
        auto it = roots_.find(param);
        if (it == roots_.end()) throw Error(ErrorKind::UnassignedParameter, "parameter " + param.name() + " is not assigned");
        const auto& [scale, root] = it->second;
        if (scale != 1) r *= rational_power(scale, ex);
        e += static_cast<long>(root) * ex;
      }
      e %= order_;
      if (e < 0) e += order_;
      acc[e] += r * term.coefficient;
    }
    const auto& tab = detail::tables(order_);
    std::vector<Rational> out(tab.degree, Rational(0));
    for (int e = 0; e < order_; ++e) {
      if (acc[e] == 0) continue;
      const auto& pw = tab.powers[e];
      for (int j = 0; j < tab.degree; ++j)
        if (pw[j] != 0) out[j] += acc[e] * pw[j];
    }
    return CycloNum(order_, std::move(out));
  }

  static Rational rational_power(const Rational& base, int ex) {
    Rational out = 1;
    Rational b = ex < 0 ? Rational(1) / base : base;
    for (int k = 0; k < std::abs(ex); ++k) out *= b;
    return out;
  }

  CycloNum eval_general(const LaurentPoly& p) const {
    CycloNum acc = CycloNum(0).lifted(order_);
    for (const auto& term : p.terms()) {
      CycloNum v = CycloNum(Rational(term.coefficient)).lifted(order_);
      for (const auto& [param, ex] : term.exponents) v = v * power(param, ex);
      acc = acc + v;
    }
    return acc;
  }

  const CycloNum& power(Param p, int ex) const {
    auto key = std::make_pair(p, ex);
    auto it = power_cache_.find(key);
    if (it != power_cache_.end()) return it->second;
    CycloNum v = point_.value(p).lifted(order_).pow(ex);
    return power_cache_.emplace(key, std::move(v)).first->second;
  }

  ParameterPoint point_;
  int order_;
  bool scaled_roots_ = false;
  std::map<Param, std::pair<Rational, int>> roots_;
  mutable std::map<std::pair<Param, int>, CycloNum> power_cache_;
};

/// Evaluation homomorphism Z[s^+-1, t^+-1] -> Q(zeta_N) at the point.
inline CycloNum laurent_eval(const LaurentPoly& p, const ParameterPoint& pt) {
  for (const auto& term : p.terms())
    for (const auto& [param, ex] : term.exponents) {
      if (!pt.assigns(param)) throw Error(ErrorKind::UnassignedParameter, "parameter " + param.name() + " is not assigned");
      if (pt.value(param).is_zero()) throw Error(ErrorKind::DivisionByZero, "parameter " + param.name() + " is zero");
    }
  return PointEvaluator(pt)(p);
}

}  // namespace arrmono
