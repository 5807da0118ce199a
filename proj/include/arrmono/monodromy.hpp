#pragma once

#include <string>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/free_group.hpp"
#include "arrmono/laurent.hpp"
#include "arrmono/matrix.hpp"
#include "arrmono/point.hpp"

namespace arrmono {

// Orientation: every transport tau(x, x') follows a path leaving the real
// axis on the left of the direction of travel (upper half plane when moving
// towards smaller x). Loops delta_p are counterclockwise. Matrices act on
// column vectors: column i holds the image of alpha_{i,i+1} of the source
// fiber, rows index alpha_{j,j+1} of the target fiber.

/// Parameter of the line at 1-based position `pos` of the slot ordering.
inline Param position_param(const Arrangement& a, std::size_t slot, int pos) {
  return s_param(a.slot_lines(slot)[pos - 1] + 1);
}

struct TransportMatrix {
  std::size_t source = 0, target = 0;  // slots
  LaurentMatrix matrix;
};

enum class MonodromyForm { Local, Gamma, Delta };

inline const char* form_name(MonodromyForm f) {
  switch (f) {
    case MonodromyForm::Local: return "local";
    case MonodromyForm::Gamma: return "gamma";
    case MonodromyForm::Delta: return "delta";
  }
  return "?";
}

struct MonodromyMatrix {
  std::string vertical_label;
  MonodromyForm form = MonodromyForm::Local;
  LaurentMatrix matrix;
};

/// Closed-form transport between two slots.
inline LaurentMatrix transport_matrix(const Arrangement& a, std::size_t from_slot, std::size_t to_slot) {
  const int n = a.n();
  const Permutation sigma = a.crossing_permutation(from_slot, to_slot);
  auto sig = [&](int i) { return sigma[i - 1] + 1; };  // 1-based
  LaurentMatrix out(n - 1, n - 1);
  for (int i = 1; i < n; ++i) {
    const int lo = std::min(sig(i), sig(i + 1)), hi = std::max(sig(i), sig(i + 1));
    const long sign = sig(i + 1) > sig(i) ? 1 : -1;
    for (int j = lo; j < hi; ++j) {
      std::vector<Param> factors;
      for (int k = i + 1; k <= n; ++k)
        if (sig(k) <= j) factors.push_back(position_param(a, from_slot, k));
      out(j - 1, i - 1) += LaurentPoly(sign) * product_of(factors);
    }
  }
  return out;
}

inline TransportMatrix transport(const Arrangement& a, std::size_t from_slot, std::size_t to_slot) {
  return {from_slot, to_slot, transport_matrix(a, from_slot, to_slot)};
}

/// Local monodromy around vertical v, in the basis of the fiber just right of it (slot v).
inline LaurentMatrix local_monodromy_matrix(const Arrangement& a, std::size_t v) {
  const int n = a.n();
  const auto& bp = a.local_permutation(v).second;
  auto s = [&](int pos) { return LaurentPoly::variable(position_param(a, v, pos)); };
  auto run = [&](int from, int to) {  // s_from ... s_to
    LaurentPoly p(1);
    for (int k = from; k <= to; ++k) p *= s(k);
    return p;
  };
  LaurentMatrix out(n - 1, n - 1);
  for (int i = 1; i < n; ++i) {
    if (bp.same_block(i, i + 1)) {
      auto [f, l] = bp.blocks()[bp.block_of(i)];
      out(i - 1, i - 1) = run(f, l);
      continue;
    }
    const int lo = bp.blocks()[bp.block_of(i)].first;
    const int hi = bp.blocks()[bp.block_of(i + 1)].second;
    out(i - 1, i - 1) += LaurentPoly(1);
    for (int k = lo; k <= i - 1; ++k) out(k - 1, i - 1) += LaurentPoly(1) - run(lo, k);
    for (int k = i + 2; k <= hi; ++k) out(k - 2, i - 1) += run(i + 1, k - 1) * (LaurentPoly(1) - run(k, hi));
  }
  return out;
}

inline MonodromyMatrix local_monodromy(const Arrangement& a, std::size_t v) {
  return {a.vertical_labels().at(v), MonodromyForm::Local, local_monodromy_matrix(a, v)};
}

/// (lambda - eigenvalue)^exponent factors; eigenvalues are monomials in s.
struct FactoredCharPoly {
  std::vector<std::pair<LaurentPoly, int>> factors;

  int degree() const {
    int d = 0;
    for (const auto& f : factors) d += f.second;
    return d;
  }

  UniPoly evaluate(const PointEvaluator& ev) const {
    UniPoly p({CycloNum(1)});
    for (const auto& [root, e] : factors) {
      UniPoly lin = UniPoly::linear(ev(root));
      for (int k = 0; k < e; ++k) p = p * lin;
    }
    return p;
  }
};

/// (lambda - 1)^(h-1) * prod over blocks (lambda - prod_block s)^(|block|-1).
inline FactoredCharPoly local_charpoly(const Arrangement& a, std::size_t v) {
  const auto& bp = a.local_permutation(v).second;
  FactoredCharPoly out;
  if (bp.size() > 1) out.factors.push_back({LaurentPoly(1), static_cast<int>(bp.size()) - 1});
  for (auto [f, l] : bp.blocks()) {
    if (l == f) continue;
    std::vector<Param> ps;
    for (int k = f; k <= l; ++k) ps.push_back(position_param(a, v, k));
    out.factors.push_back({product_of(ps), l - f});
  }
  return out;
}

/// Reading of the row condition in the closed delta-form formula.
enum class DeltaReading {
  Corrected,  // [j, j+1] inside [sigma^-1(k), sigma^-1(k+1)]
  AsPrinted,  // [j, j+i] inside [sigma^-1(k), sigma^-1(k+1)]
};

/// Closed form for mu([delta_p]) of vertical v in the x0 basis.
inline LaurentMatrix delta_monodromy_closed_form(const Arrangement& a, std::size_t v, DeltaReading reading) {
  const int n = a.n();
  const Permutation sigma = a.crossing_permutation(0, v + 1);
  const Permutation sinv = inverse(sigma);
  auto sig = [&](int i) { return sigma[i - 1] + 1; };
  auto inv = [&](int i) { return sinv[i - 1] + 1; };
  LaurentMatrix out(n - 1, n - 1);
  for (int i = 1; i < n; ++i) {
    const long sign_i = sig(i + 1) > sig(i) ? 1 : -1;
    const int klo = std::min(sig(i), sig(i + 1)), khi = std::max(sig(i), sig(i + 1));
    for (int k = klo; k < khi; ++k) {
      const long sign_k = inv(k + 1) > inv(k) ? 1 : -1;
      const int jlo = std::min(inv(k), inv(k + 1)), jhi = std::max(inv(k), inv(k + 1));
      std::vector<Param> first;
      for (int h = i + 1; h <= n; ++h)
        if (sig(h) <= k) first.push_back(s_param(h));
      for (int j = 1; j < n; ++j) {
        const int top = reading == DeltaReading::Corrected ? j + 1 : j + i;
        if (j < jlo || top > jhi) continue;
        std::vector<Param> factors = first;
        for (int l = k + 1; l <= n; ++l)
          if (inv(l) <= j) factors.push_back(s_param(inv(l)));
        out(j - 1, i - 1) += LaurentPoly(sign_i * sign_k) * product_of(factors);
      }
    }
  }
  return out;
}

/// Transport by the free-group rule a_i -> P a'_sigma(i) P^-1 applied one
/// vertical at a time, followed by Fox calculus on the transported
/// commutators and a change to the normalized basis.
inline LaurentMatrix fox_transport_oracle(const Arrangement& a, std::size_t from_slot, std::size_t to_slot) {
  const int n = a.n();
  std::vector<FreeGroupWord> images;
  for (int i = 1; i <= n; ++i) images.push_back(FreeGroupWord::generator(i));

  auto step = [&](std::size_t vertical) {
    const Permutation sigma = a.local_permutation(vertical).first;
    const Permutation sinv = inverse(sigma);
    std::vector<FreeGroupWord> rule;
    for (int i = 1; i <= n; ++i) {
      const int target = sigma[i - 1] + 1;
      FreeGroupWord p;
      for (int j = 1; j < target; ++j)
        if (sinv[j - 1] + 1 > i) p = p * FreeGroupWord::generator(j);
      rule.push_back(p * FreeGroupWord::generator(target) * p.inverse());
    }
    for (auto& w : images) w = w.substitute(rule);
  };
  if (from_slot <= to_slot) {
    for (std::size_t v = from_slot; v < to_slot; ++v) step(v);
  } else {
    for (std::size_t v = from_slot; v-- > to_slot;) step(v);
  }

  std::vector<Param> valuation;
  for (int k = 1; k <= n; ++k) valuation.push_back(position_param(a, to_slot, k));

  LaurentMatrix out(n - 1, n - 1);
  for (int i = 1; i < n; ++i) {
    auto grad = fox_gradient(commutator(images[i - 1], images[i]), valuation);
    LaurentPoly d;
    for (int j = 1; j < n; ++j) {
      d += grad[j - 1] * (LaurentPoly(1) - LaurentPoly::variable(valuation[j - 1]));
      out(j - 1, i - 1) = d;
    }
    d += grad[n - 1] * (LaurentPoly(1) - LaurentPoly::variable(valuation[n - 1]));
    if (!d.is_zero()) throw Error(ErrorKind::ConstructionMismatch, "transported commutator is not a cycle");
    const Param si = position_param(a, from_slot, i), sj = position_param(a, from_slot, i + 1);
    for (int j = 1; j < n; ++j) out(j - 1, i - 1) = out(j - 1, i - 1).divide_by_one_minus(si).divide_by_one_minus(sj);
  }
  return out;
}

/// Symbolic transports and monodromies of one arrangement. Built completely
/// in the constructor; afterwards only const access, so concurrent reads are safe.
class MonodromyCache {
 public:
  explicit MonodromyCache(const Arrangement& a) : n_(a.n()), m_(a.m()) {
    for (std::size_t v = 0; v < m_; ++v) {
      steps_.push_back(transport_matrix(a, v, v + 1));
      step_inverses_.push_back(inverse_over_units(steps_.back()));
    }
    LaurentMatrix t = LaurentMatrix::identity(n_ - 1), tinv = t;
    for (std::size_t v = 0; v < m_; ++v) {
      from_x0_.push_back(t);
      to_x0_.push_back(tinv);
      local_.push_back(local_monodromy_matrix(a, v));
      gamma_.push_back(tinv * local_.back() * t);
      t = steps_[v] * t;
      tinv = tinv * step_inverses_[v];
    }
    labels_ = a.vertical_labels();
  }

  int n() const { return n_; }
  std::size_t m() const { return m_; }

  /// transport(slot v -> slot v+1) and its inverse.
  const LaurentMatrix& step(std::size_t v) const { return steps_.at(v); }
  const LaurentMatrix& step_inverse(std::size_t v) const { return step_inverses_.at(v); }
  /// transport(x0 -> x_p) for vertical v (slot 0 -> slot v) and its inverse.
  const LaurentMatrix& from_x0(std::size_t v) const { return from_x0_.at(v); }
  const LaurentMatrix& from_x0_inverse(std::size_t v) const { return to_x0_.at(v); }
  const LaurentMatrix& local(std::size_t v) const { return local_.at(v); }
  /// T^-1 * mu_{x_p} * T with T = transport(x0 -> x_p).
  const LaurentMatrix& gamma(std::size_t v) const { return gamma_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int n_;
  std::size_t m_;
  std::vector<LaurentMatrix> steps_, step_inverses_, from_x0_, to_x0_, local_, gamma_;
  std::vector<std::string> labels_;
};

/// mu([delta_p]) as the transport x0 -> x'_p -> x0.
inline LaurentMatrix delta_monodromy(const Arrangement& a, std::size_t v) {
  return transport_matrix(a, v + 1, 0) * transport_matrix(a, 0, v + 1);
}

inline MonodromyMatrix global_monodromy(const Arrangement& a, std::size_t v, MonodromyForm form) {
  if (v >= a.m()) throw Error(ErrorKind::InvalidArgument, "vertical index out of range");
  switch (form) {
    case MonodromyForm::Local: return local_monodromy(a, v);
    case MonodromyForm::Delta: return {a.vertical_labels()[v], form, delta_monodromy(a, v)};
    case MonodromyForm::Gamma: {
      LaurentMatrix t = LaurentMatrix::identity(a.n() - 1), tinv = t;
      for (std::size_t k = 0; k < v; ++k) {
        auto s = transport_matrix(a, k, k + 1);
        t = s * t;
        tinv = tinv * inverse_over_units(s);
      }
      return {a.vertical_labels()[v], form, tinv * local_monodromy_matrix(a, v) * t};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown monodromy form");
}

}  // namespace arrmono
