#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/matrix.hpp"
#include "arrmono/monodromy.hpp"
#include "arrmono/point.hpp"

namespace arrmono {

/// Columns of block p are the images of the generators under
/// d1([gamma_p]) = t_p mu([gamma_p]) - Id; the cokernel is H_0(B; H_1(F_0)).
struct BoundaryOperator {
  struct Block {
    std::string vertical;
    std::size_t first_column = 0;
  };
  LaurentMatrix matrix;
  std::vector<Block> blocks;
};

inline BoundaryOperator boundary_operator(const Arrangement& a, const MonodromyCache& cache) {
  const std::size_t d = static_cast<std::size_t>(a.n() - 1);
  BoundaryOperator out;
  out.matrix = LaurentMatrix(d, d * a.m());
  const LaurentMatrix id = LaurentMatrix::identity(d);
  for (std::size_t v = 0; v < a.m(); ++v) {
    LaurentMatrix block = LaurentPoly::variable(t_param(static_cast<int>(v + 1))) * cache.gamma(v) - id;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out.matrix(r, v * d + c) = block(r, c);
    out.blocks.push_back({a.vertical_labels()[v], v * d});
  }
  return out;
}

inline BoundaryOperator boundary_operator(const Arrangement& a) { return boundary_operator(a, MonodromyCache(a)); }

/// Rejects points outside the torus, of the wrong shape, or with some s_i = 1.
inline void check_point(const Arrangement& a, const ParameterPoint& pt) {
  if (pt.s.size() != static_cast<std::size_t>(a.n()) || pt.t.size() != a.m())
    throw Error(ErrorKind::InvalidArgument, "point has " + std::to_string(pt.s.size()) + " s and " + std::to_string(pt.t.size()) +
                                                " t coordinates; arrangement needs " + std::to_string(a.n()) + " and " + std::to_string(a.m()));
  pt.check_torus();
  for (std::size_t i = 0; i < pt.s.size(); ++i)
    if (pt.s[i].is_one())
      throw Error(ErrorKind::UnsupportedStratum, "s" + std::to_string(i + 1) + " = 1: the normalized basis needs every s_i != 1");
}

struct WFactor {
  std::string vertical;
  std::vector<std::string> lines;  // horizontal labels of the point
  CycloNum value;                  // t_p * prod s - 1
};

struct MembershipReport {
  ParameterPoint point;
  std::size_t rank = 0;
  std::size_t h1 = 0;
  bool in_variety = false;
  std::vector<WFactor> w_factors;
  std::vector<Vector> eigenvector;  // common eigenvector basis, empty if none
  bool w_consistent = true;         // in_variety => each vertical has t_p = 1 or a vanishing factor
  bool eigen_equivalent = true;     // rank drop <=> common eigenvector, with equal dimensions
};

/// Builds the symbolic boundary once; evaluations are const and may run concurrently.
class CharVarEngine {
 public:
  explicit CharVarEngine(Arrangement a) : arr_(std::move(a)), cache_(arr_), boundary_(boundary_operator(arr_, cache_)) {}

  const Arrangement& arrangement() const { return arr_; }
  const MonodromyCache& cache() const { return cache_; }
  const BoundaryOperator& boundary() const { return boundary_; }

  ExactMatrix boundary_at(const ParameterPoint& pt) const {
    check_point(arr_, pt);
    return evaluate(boundary_.matrix, PointEvaluator(pt));
  }

  std::size_t h1_dimension(const ParameterPoint& pt) const {
    return static_cast<std::size_t>(arr_.n() - 1) - rank(boundary_at(pt));
  }

  /// Right kernel of the stacked (mu_p^T - t_p^-1 Id), i.e. the common
  /// eigenvectors of the transposed monodromies.
  std::vector<Vector> common_eigenvector(const ParameterPoint& pt) const {
    check_point(arr_, pt);
    PointEvaluator ev(pt);
    return common_eigenvector(pt, ev);
  }

  /// Block p of the evaluated boundary is singular.
  bool block_singular(const ParameterPoint& pt, std::size_t v) const {
    check_point(arr_, pt);
    ExactMatrix g = evaluate(cache_.gamma(v), PointEvaluator(pt));
    ExactMatrix b = pt.t[v] * g - ExactMatrix::identity(g.rows(), g.order());
    return rank(b) < b.rows();
  }

  /// Singularity predicted by the eigenvalues of the local monodromy.
  bool block_gate(const ParameterPoint& pt, std::size_t v) const {
    const auto& bp = arr_.local_permutation(v).second;
    const CycloNum& tp = pt.t[v];
    if (bp.size() > 1 && tp.is_one()) return true;
    PointEvaluator ev(pt);
    for (auto [f, l] : bp.blocks()) {
      if (l == f) continue;
      std::vector<Param> ps;
      for (int k = f; k <= l; ++k) ps.push_back(position_param(arr_, v, k));
      if ((tp * ev(product_of(ps))).is_one()) return true;
    }
    return false;
  }

  MembershipReport membership(const ParameterPoint& pt) const {
    check_point(arr_, pt);
    PointEvaluator ev(pt);
    MembershipReport rep;
    rep.point = pt;
    ExactMatrix b = evaluate(boundary_.matrix, ev);
    rep.rank = rank(b);
    rep.h1 = static_cast<std::size_t>(arr_.n() - 1) - rep.rank;
    rep.in_variety = rep.h1 > 0;

    for (std::size_t v = 0; v < arr_.m(); ++v) {
      const auto& bp = arr_.local_permutation(v).second;
      bool vanishing = pt.t[v].is_one();
      for (auto [f, l] : bp.blocks()) {
        if (l == f) continue;
        WFactor w;
        w.vertical = arr_.vertical_labels()[v];
        std::vector<Param> ps;
        for (int k = f; k <= l; ++k) {
          ps.push_back(position_param(arr_, v, k));
          w.lines.push_back(arr_.horizontal_labels()[arr_.slot_lines(v)[k - 1]]);
        }
        w.value = pt.t[v] * ev(product_of(ps)) - CycloNum(1);
        vanishing = vanishing || w.value.is_zero();
        rep.w_factors.push_back(std::move(w));
      }
      if (rep.in_variety && !vanishing) rep.w_consistent = false;
    }

    rep.eigenvector = common_eigenvector(pt, ev);
    rep.eigen_equivalent = rep.eigenvector.size() == rep.h1;
    return rep;
  }

 private:
  std::vector<Vector> common_eigenvector(const ParameterPoint& pt, const PointEvaluator& ev) const {
    const std::size_t d = static_cast<std::size_t>(arr_.n() - 1);
    std::optional<ExactMatrix> stacked;
    for (std::size_t v = 0; v < arr_.m(); ++v) {
      ExactMatrix g = evaluate(cache_.gamma(v), ev).transpose();
      ExactMatrix blk = g - pt.t[v].inverse() * ExactMatrix::identity(d, g.order());
      stacked = stacked ? ExactMatrix::vstack(*stacked, blk) : blk;
    }
    if (!stacked) {
      std::vector<Vector> all;
      for (std::size_t i = 0; i < d; ++i) {
        Vector e(d, CycloNum(0));
        e[i] = CycloNum(1);
        all.push_back(e);
      }
      return all;
    }
    return kernel_basis(*stacked, Side::Right);
  }

  Arrangement arr_;
  MonodromyCache cache_;
  BoundaryOperator boundary_;
};

}  // namespace arrmono
