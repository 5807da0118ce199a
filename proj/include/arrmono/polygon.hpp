#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/charvar.hpp"
#include "arrmono/cyclotomic.hpp"
#include "arrmono/matrix.hpp"
#include "arrmono/point.hpp"

namespace arrmono {

// Projective labels: edges l_0..l_{n-1} cyclically, l_i with outer normal at
// angle pi(2i+1)/n; diagonals (symmetry axes) l'_0..l'_{n-1}, l'_q at
// direction angle pi(q+1)/n, so l'_0 is orthogonal to l_0 and l_i, l_j,
// l'_{i+j} are concurrent. The diagonal l'_{n-1} is sent to infinity.

/// Alternating block patterns of the regular polygon arrangement.
inline Wiring alternating_wiring(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "polygon needs n >= 3");
  Wiring w;
  w.n = n;
  for (int i = 1; i <= n - 1; ++i) {
    const bool pairs_from_first = (n % 2 == 1) ? (i % 2 == 1) : (i % 2 == 0);
    std::vector<int> sizes;
    int rest = n;
    if (!pairs_from_first) {
      sizes.push_back(1);
      --rest;
    }
    while (rest >= 2) {
      sizes.push_back(2);
      rest -= 2;
    }
    if (rest == 1) sizes.push_back(1);
    w.verticals.push_back({"v" + std::to_string(i), BlockPartition::from_sizes(sizes)});
  }
  return w;
}

/// Point given in projective labels: s_0..s_{n-1}, t_0..t_{n-1}.
struct ProjectivePoint {
  std::vector<CycloNum> s, t;
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

struct PolygonModel {
  int n = 0;
  Arrangement arrangement;
  Wiring geometric_wiring;
  std::vector<int> edge_of_horizontal;  // affine s_k (0-based) -> projective edge
  std::vector<int> diagonal_of_vertical;  // affine t_j (0-based) -> projective diagonal
  int infinity_diagonal = 0;
  int chart_flip_u = 1, chart_flip_v = 1;
  int dihedral_shift = 0;    // relabeling i -> shift + sign * i applied to the geometric labels
  int dihedral_sign = 1;
  bool triples_ok = false;   // every singular point realizes (i, j, (i+j)') or (i, (2i)')
  std::vector<std::array<int, 3>> triples;  // (i, j, q) with i < j, projective

  int horizontal_of_edge(int e) const {
    for (std::size_t k = 0; k < edge_of_horizontal.size(); ++k)
      if (edge_of_horizontal[k] == e) return static_cast<int>(k);
    throw Error(ErrorKind::InvalidArgument, "unknown edge");
  }
  /// Affine vertical index of a diagonal, or -1 for the diagonal at infinity.
  int vertical_of_diagonal(int q) const {
    for (std::size_t j = 0; j < diagonal_of_vertical.size(); ++j)
      if (diagonal_of_vertical[j] == q) return static_cast<int>(j);
    if (q == infinity_diagonal) return -1;
    throw Error(ErrorKind::InvalidArgument, "unknown diagonal");
  }
};

namespace detail {

inline int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }

inline std::vector<FloatLine> polygon_chart_lines(int n, int flip_u, int flip_v) {
  const double pi = std::numbers::pi;
  const double c = std::cos(pi / n);
  std::vector<FloatLine> lines;
  // Chart (u, v) = (X/Y, Z/Y): the axis Y = 0 (l'_{n-1}) goes to infinity,
  // axes through the centre become verticals, edges become graphs.
  for (int i = 0; i < n; ++i) {
    const double phi = pi * (2 * i + 1) / n;
    FloatLine l;
    l.a = flip_v * flip_u * std::cos(phi) / c;
    l.b = flip_v * std::sin(phi) / c;
    l.label = "e" + std::to_string(i);
    lines.push_back(l);
  }
  for (int q = 0; q < n - 1; ++q) {
    const double theta = pi * (q + 1) / n;
    FloatLine l;
    l.vertical = true;
    l.p = flip_u * std::cos(theta) / std::sin(theta);
    l.label = "d" + std::to_string(q);
    lines.push_back(l);
  }
  return lines;
}

inline bool same_blocks(const Wiring& a, const Wiring& b) {
  if (a.n != b.n || a.verticals.size() != b.verticals.size()) return false;
  for (std::size_t v = 0; v < a.verticals.size(); ++v)
    if (!(a.verticals[v].blocks == b.verticals[v].blocks)) return false;
  return true;
}

inline int label_index(const std::string& label) { return std::stoi(label.substr(1)); }

}  // namespace detail

/// Projective point -> affine parameters (t_inf from the diagonal at infinity).
inline ParameterPoint to_affine(const PolygonModel& model, const ProjectivePoint& p) {
  ParameterPoint out;
  for (int e : model.edge_of_horizontal) out.s.push_back(p.s.at(e));
  for (int q : model.diagonal_of_vertical) out.t.push_back(p.t.at(q));
  out.t_inf = p.t.at(model.infinity_diagonal);
  return out;
}

inline ProjectivePoint to_projective(const PolygonModel& model, const ParameterPoint& a) {
  const int n = model.n;
  ProjectivePoint p;
  p.s.assign(n, CycloNum(0));
  p.t.assign(n, CycloNum(0));
  for (std::size_t k = 0; k < model.edge_of_horizontal.size(); ++k) p.s[model.edge_of_horizontal[k]] = a.s.at(k);
  for (std::size_t j = 0; j < model.diagonal_of_vertical.size(); ++j) p.t[model.diagonal_of_vertical[j]] = a.t.at(j);
  if (a.t_inf) {
    p.t[model.infinity_diagonal] = *a.t_inf;
  } else {
    CycloNum prod(1);
    for (const auto& x : a.s) prod *= x;
    for (const auto& x : a.t) prod *= x;
    p.t[model.infinity_diagonal] = prod.inverse();
  }
  return p;
}

/// Translated component point (s_{2i} = x, s_{2i+1} = -1/x, t odd = -1,
/// t_{0 mod 4} = x^2, t_{2 mod 4} = x^-2), projective labels.
inline ProjectivePoint component_projective(int n, const CycloNum& x) {
  if (n % 4 != 0) throw Error(ErrorKind::InvalidArgument, "translated component needs n divisible by 4");
  if (x.is_zero()) throw Error(ErrorKind::InvalidArgument, "x must be nonzero");
  ProjectivePoint p;
  const CycloNum xi = x.inverse();
  for (int i = 0; i < n; ++i) p.s.push_back(i % 2 == 0 ? x : -xi);
  for (int i = 0; i < n; ++i) p.t.push_back(i % 2 == 1 ? CycloNum(-1) : (i % 4 == 0 ? x * x : xi * xi));
  return p;
}

/// Builds R(2n) from polygon geometry and checks it against the alternating wiring.
inline PolygonModel build_r2n(int n) {
  const Wiring expected = alternating_wiring(n);
  PolygonModel model;
  model.n = n;
  model.infinity_diagonal = n - 1;
  bool found = false;
  for (int fu : {1, -1}) {
    for (int fv : {1, -1}) {
      auto [w, labels] = extract_wiring(detail::polygon_chart_lines(n, fu, fv), 1e-9);
      if (!detail::same_blocks(w, expected)) continue;
      model.geometric_wiring = w;
      model.chart_flip_u = fu;
      model.chart_flip_v = fv;
      model.arrangement = Arrangement::from_wiring(w, labels);
      for (const auto& l : labels) model.edge_of_horizontal.push_back(detail::label_index(l));
      for (const auto& v : w.verticals) model.diagonal_of_vertical.push_back(detail::label_index(v.label));
      found = true;
      break;
    }
    if (found) break;
  }
  if (!found) throw Error(ErrorKind::ConstructionMismatch, "polygon geometry does not reproduce the alternating wiring for n = " + std::to_string(n));

  // Combinatorial labels of the singular points, including those at infinity.
  std::set<std::array<int, 3>> predicted, seen;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) predicted.insert({i, j, detail::mod(i + j, n)});
  bool ok = true;
  for (const auto& sp : model.arrangement.singular_points()) {
    const int q = detail::label_index(sp.incident.back());
    if (sp.multiplicity == 2) {
      ok = ok && detail::mod(2L * detail::label_index(sp.incident[0]), n) == q;
    } else if (sp.multiplicity == 3) {
      int i = detail::label_index(sp.incident[0]), j = detail::label_index(sp.incident[1]);
      if (i > j) std::swap(i, j);
      ok = ok && detail::mod(i + j, n) == q;
      seen.insert({i, j, q});
    } else {
      ok = false;
    }
  }
  // Parallel edge pairs meet on the diagonal at infinity.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::mod(i + j, n) == model.infinity_diagonal) seen.insert({i, j, model.infinity_diagonal});
  model.triples_ok = ok && seen == predicted;
  if (!model.triples_ok) throw Error(ErrorKind::ConstructionMismatch, "singular points of the polygon model violate the (i, j, (i+j)') labeling");
  model.triples.assign(predicted.begin(), predicted.end());

  // For n divisible by 4 the labeling must place the translated component
  // in the variety; otherwise search the dihedral relabelings.
  if (n % 4 == 0) {
    CharVarEngine engine(model.arrangement);
    auto probe = [&](const PolygonModel& m) {
      return engine.h1_dimension(to_affine(m, component_projective(n, CycloNum(Rational(2))))) >= 1;
    };
    if (!probe(model)) {
      const PolygonModel base = model;
      bool fixed = false;
      for (int sign : {1, -1}) {
        for (int shift = 0; shift < n && !fixed; ++shift) {
          PolygonModel cand = base;
          for (auto& e : cand.edge_of_horizontal) e = detail::mod(shift + sign * e, n);
          for (auto& q : cand.diagonal_of_vertical) q = detail::mod(2L * shift + sign * q, n);
          cand.infinity_diagonal = detail::mod(2L * shift + sign * base.infinity_diagonal, n);
          if (probe(cand)) {
            cand.dihedral_shift = shift;
            cand.dihedral_sign = sign;
            model = cand;
            fixed = true;
          }
        }
        if (fixed) break;
      }
      if (!fixed) throw Error(ErrorKind::ConstructionMismatch, "no dihedral labeling places the translated component in the variety");
    }
  }
  return model;
}

/// s_j = zeta_n^k, t_j = zeta_n^{k(n-2)}, t_inf completing the product to 1.
inline ParameterPoint pnk_point(int n, int k) {
  if (n < 3 || k < 0 || k >= n) throw Error(ErrorKind::InvalidArgument, "need n >= 3 and 0 <= k < n");
  ParameterPoint pt;
  const CycloNum s = CycloNum::root_of_unity(n, k);
  const CycloNum t = CycloNum::root_of_unity(n, static_cast<long>(k) * (n - 2));
  pt.s.assign(n, s);
  pt.t.assign(n - 1, t);
  CycloNum prod = s.pow(n) * t.pow(n - 1);
  pt.t_inf = prod.inverse();
  return pt;
}

/// Row vector with entry (-1)^j (w^j - 1)/(w - 1) at position n - j, w = zeta_n^k.
inline Vector vn_vector(int n, int k) {
  if (k < 1 || k >= n) throw Error(ErrorKind::InvalidArgument, "need 1 <= k < n");
  const CycloNum w = CycloNum::root_of_unity(n, k);
  const CycloNum denom = (w - CycloNum(1)).inverse();
  Vector v;
  for (int pos = 1; pos <= n - 1; ++pos) {
    const int j = n - pos;
    CycloNum e = (w.pow(j) - CycloNum(1)) * denom;
    v.push_back(j % 2 == 0 ? e : -e);
  }
  return v;
}

/// Exponent vector of a projective monomial over the affine variables
/// (s_1..s_n, t_1..t_{n-1}); t at infinity is (prod s prod t)^-1.
inline std::vector<long> affine_exponents(const PolygonModel& model, const std::vector<int>& edges, const std::vector<int>& diagonals) {
  const int n = model.n;
  std::vector<long> row(2 * n - 1, 0);
  for (int e : edges) row[model.horizontal_of_edge(e)] += 1;
  for (int q : diagonals) {
    int j = model.vertical_of_diagonal(q);
    if (j >= 0) {
      row[n + j] += 1;
    } else {
      for (auto& x : row) x -= 1;
    }
  }
  return row;
}

inline std::size_t integer_rank(const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return 0;
  ExactMatrix m(rows.size(), rows[0].size(), 1);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, CycloNum(rows[r][c]));
  return rank(m);
}

struct IsolationCertificate {
  int n = 0, k = 0;
  ParameterPoint point;
  std::size_t rank = 0;
  bool rank_drop_ok = false;
  bool eigenvector_nonvanishing = false;
  bool eigenvector_matches_vn = false;
  bool ideal_point_ok = false;
  std::size_t log_jacobian_rank = 0;
  bool certified = false;
};

inline IsolationCertificate certify_isolated(const PolygonModel& model, const CharVarEngine& engine, int k) {
  const int n = model.n;
  if (n < 5 || k < 1 || k >= n) throw Error(ErrorKind::InvalidArgument, "certificates need n >= 5 and 1 <= k < n");
  IsolationCertificate c;
  c.n = n;
  c.k = k;
  c.point = pnk_point(n, k);
  auto rep = engine.membership(c.point);
  c.rank = rep.rank;
  c.rank_drop_ok = rep.rank == static_cast<std::size_t>(n - 2);
  if (rep.eigenvector.size() == 1) {
    const auto& e = rep.eigenvector[0];
    c.eigenvector_nonvanishing = std::none_of(e.begin(), e.end(), [](const CycloNum& x) { return x.is_zero(); });
    // proportional to v_n
    const Vector vn = vn_vector(n, k);
    std::optional<CycloNum> ratio;
    bool prop = true;
    for (std::size_t i = 0; i < e.size() && prop; ++i) {
      if (vn[i].is_zero() || e[i].is_zero()) {
        prop = vn[i].is_zero() && e[i].is_zero();
        continue;
      }
      CycloNum q = e[i] / vn[i];
      if (!ratio) ratio = q;
      else prop = *ratio == q;
    }
    c.eigenvector_matches_vn = prop;
  }
  const ProjectivePoint pp = to_projective(model, c.point);
  bool ideal = true;
  std::vector<std::vector<long>> rows;
  for (const auto& [i, j, q] : model.triples) {
    ideal = ideal && (pp.t[q] * pp.s[i] * pp.s[j]).is_one();
    rows.push_back(affine_exponents(model, {i, j}, {q}));
  }
  CycloNum prod(1);
  for (const auto& x : pp.s) prod *= x;
  for (const auto& x : pp.t) prod *= x;
  c.ideal_point_ok = ideal && prod.is_one();
  c.log_jacobian_rank = integer_rank(rows);
  c.certified = c.rank_drop_ok && c.eigenvector_nonvanishing && c.eigenvector_matches_vn && c.ideal_point_ok &&
                c.log_jacobian_rank == static_cast<std::size_t>(2 * n - 1);
  return c;
}

struct LemmaCheckReport {
  int n = 0;
  std::size_t points = 0;
  std::size_t distinct_points = 0;
  bool all_satisfy_j = true;
  std::size_t jacobian_rank = 0;  // generators of J over s_0..s_{n-1}, t_0..t_{n-1}
  bool components_satisfy_i = true;
  bool derived_relation_ok = true;  // s_0^2 = s_2 s_{n-2} on every I_h
  bool passed = false;
};

/// Point checks for the ideals I (edge parameters) and J (edges and diagonals).
inline LemmaCheckReport lemma_zerodim_check(int n) {
  if (n < 5) throw Error(ErrorKind::InvalidArgument, "lemma check needs n >= 5");
  LemmaCheckReport rep;
  rep.n = n;
  std::vector<std::vector<long>> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<long> r(2 * n, 0);
      r[i] += 1;
      r[j] += 1;
      r[n + detail::mod(i + j, n)] += 1;
      rows.push_back(r);
    }
  rows.push_back(std::vector<long>(2 * n, 1));
  rep.jacobian_rank = integer_rank(rows);

  std::set<std::vector<long>> distinct;
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      // Exponents of zeta_n: s_i = hi + k, t_i = -(s_0 + s_i).
      std::vector<CycloNum> s, t;
      std::vector<long> key;
      for (int i = 0; i < n; ++i) {
        s.push_back(CycloNum::root_of_unity(n, static_cast<long>(h) * i + k));
        key.push_back(detail::mod(static_cast<long>(h) * i + k, n));
      }
      for (int i = 0; i < n; ++i) t.push_back((s[0] * s[i]).inverse());
      distinct.insert(key);
      CycloNum prod(1);
      for (const auto& x : s) prod *= x;
      for (const auto& x : t) prod *= x;
      bool ok = prod.is_one();
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          if (i != j) ok = (t[detail::mod(i + j, n)] * s[i] * s[j]).is_one();
      rep.all_satisfy_j = rep.all_satisfy_j && ok;
      ++rep.points;
    }
  rep.distinct_points = distinct.size();

  for (const Rational& s0v : {Rational(2), Rational(-3, 5)}) {
    for (int h = 0; h < n; ++h) {
      std::vector<CycloNum> s;
      for (int i = 0; i < n; ++i) s.push_back(CycloNum::root_of_unity(n, static_cast<long>(h) * i).scaled(s0v));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            if (i == j) continue;
            const int m = detail::mod(i + j - l, n);
            if (l == m) continue;
            if (!(s[i] * s[j] == s[l] * s[m])) rep.components_satisfy_i = false;
          }
      if (!(s[0] * s[0] == s[2] * s[n - 2])) rep.derived_relation_ok = false;
    }
  }
  rep.passed = rep.points == static_cast<std::size_t>(n * n) && rep.distinct_points == rep.points && rep.all_satisfy_j &&
               rep.jacobian_rank == static_cast<std::size_t>(2 * n) && rep.components_satisfy_i && rep.derived_relation_ok;
  return rep;
}

struct ComponentSample {
  int n = 0;
  CycloNum x;
  ProjectivePoint projective;
  ParameterPoint point;  // affine labels
};

inline ComponentSample component_point(const PolygonModel& model, const CycloNum& x) {
  ComponentSample c;
  c.n = model.n;
  c.x = x;
  c.projective = component_projective(model.n, x);
  c.point = to_affine(model, c.projective);
  return c;
}

/// Orbit of a projective point under s_i -> s_{i+1}, t_j -> t_{j+2}.
inline std::vector<ProjectivePoint> symmetry_orbit(const PolygonModel& model, const ProjectivePoint& p) {
  const int n = model.n;
  if (static_cast<int>(p.s.size()) != n || static_cast<int>(p.t.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "projective point needs n s and n t coordinates");
  CycloNum prod(1);
  for (const auto& x : p.s) prod *= x;
  for (const auto& x : p.t) prod *= x;
  if (!prod.is_one()) throw Error(ErrorKind::ProductRelation, "product of all parameters must be 1");
  std::vector<ProjectivePoint> orbit{p};
  ProjectivePoint cur = p;
  for (int r = 1; r < n; ++r) {
    ProjectivePoint next;
    for (int i = 0; i < n; ++i) next.s.push_back(cur.s[(i + 1) % n]);
    for (int j = 0; j < n; ++j) next.t.push_back(cur.t[(j + 2) % n]);
    cur = next;
    if (std::find(orbit.begin(), orbit.end(), cur) == orbit.end()) orbit.push_back(cur);
  }
  return orbit;
}

}  // namespace arrmono
