#pragma once

// Independent oracles shared by the test suites: floating-point images,
// numerical rank, and a plain rational elimination that does not go through
// the library's cyclotomic code.

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

#include "arrmono/cyclotomic.hpp"
#include "arrmono/laurent.hpp"
#include "arrmono/matrix.hpp"
#include "arrmono/point.hpp"

namespace arrmono::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 9, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  for (;;) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    if (!nonzero || r != 0) return r;
  }
}

inline CycloNum random_cyclo(std::mt19937_64& rng, int order, int span = 5) {
  std::vector<Rational> c(detail::euler_phi(order));
  for (auto& x : c) x = random_rational(rng, span);
  return CycloNum(order, c);
}

inline CycloNum random_nonzero_cyclo(std::mt19937_64& rng, int order, int span = 5) {
  for (;;) {
    auto v = random_cyclo(rng, order, span);
    if (!v.is_zero()) return v;
  }
}

inline Eigen::MatrixXcd to_complex(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex();
  return out;
}

/// Singular values above tol * largest singular value.
inline std::size_t numerical_rank(const ExactMatrix& m, double tol = 1e-8) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_complex(m));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

/// Plain Gaussian elimination over Q on mpq_class.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Regular representation over Q: each entry becomes the phi(N) x phi(N)
/// matrix of multiplication by it in the power basis. Its rational rank is
/// phi(N) times the rank over Q(zeta_N).
inline std::vector<std::vector<Rational>> regular_representation(const ExactMatrix& m) {
  const int N = m.order();
  const int d = detail::euler_phi(N);
  std::vector<std::vector<Rational>> out(m.rows() * d, std::vector<Rational>(m.cols() * d, Rational(0)));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (int k = 0; k < d; ++k) {
        CycloNum col = m(r, c) * CycloNum::root_of_unity(N, k);
        for (int i = 0; i < d; ++i) out[r * d + i][c * d + k] = col.lifted(N).coeffs()[i];
      }
  return out;
}

inline std::complex<double> float_eval(const LaurentPoly& p, const ParameterPoint& pt) {
  std::complex<double> acc = 0;
  for (const auto& term : p.terms()) {
    std::complex<double> v = term.coefficient.get_d();
    for (const auto& [param, ex] : term.exponents) v *= std::pow(pt.value(param).to_complex(), ex);
    acc += v;
  }
  return acc;
}

inline bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// v is a nonzero scalar multiple of w.
inline bool proportional(const Vector& v, const Vector& w) {
  if (v.size() != w.size()) return false;
  std::optional<CycloNum> ratio;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i].is_zero() != v[i].is_zero()) return false;
    if (w[i].is_zero()) continue;
    CycloNum q = v[i] / w[i];
    if (!ratio) ratio = q;
    else if (!(*ratio == q)) return false;
  }
  return ratio.has_value();
}

}  // namespace arrmono::testing
