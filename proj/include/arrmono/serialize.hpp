#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/charvar.hpp"
#include "arrmono/cyclotomic.hpp"
#include "arrmono/laurent.hpp"
#include "arrmono/matrix.hpp"
#include "arrmono/monodromy.hpp"
#include "arrmono/point.hpp"
#include "arrmono/polygon.hpp"

namespace arrmono {

using Json = nlohmann::ordered_json;

inline Json to_json(const CycloNum& x) {
  Json c = Json::array();
  for (const auto& r : x.coeffs()) c.push_back(format_rational(r));
  return Json{{"order", x.order()}, {"coeffs", c}};
}

inline CycloNum cyclo_from_json(const Json& j) {
  if (j.is_string()) return CycloNum(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return CycloNum(j.get<long>());
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) throw Error(ErrorKind::Parse, "cyclotomic number needs order and coeffs");
  std::vector<Rational> c;
  for (const auto& x : j.at("coeffs")) c.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>()));
  return CycloNum(j.at("order").get<int>(), std::move(c));
}

inline Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    Json e = Json::object();
    for (const auto& [param, x] : t.exponents) e[param.name()] = x;
    out.push_back(Json{{"coeff", t.coefficient.get_str()}, {"exps", e}});
  }
  return out;
}

inline LaurentPoly laurent_from_json(const Json& j) {
  std::vector<LaurentTerm> terms;
  for (const auto& t : j) {
    LaurentTerm term;
    term.coefficient = BigInt(t.at("coeff").get<std::string>());
    for (const auto& [k, v] : t.at("exps").items()) term.exponents.push_back({Param::parse(k), v.get<int>()});
    terms.push_back(std::move(term));
  }
  return LaurentPoly::from_terms(terms);
}

inline Json to_json(const LaurentMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"basis", "alpha_{i,i+1}"}, {"ordering", "x0-fiber"}, {"entries", rows}};
}

inline Json to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const ParameterPoint& p) {
  Json s = Json::array(), t = Json::array();
  for (const auto& x : p.s) s.push_back(to_json(x));
  for (const auto& x : p.t) t.push_back(to_json(x));
  Json out{{"s", s}, {"t", t}};
  out["t_inf"] = p.t_inf ? to_json(*p.t_inf) : Json(nullptr);
  return out;
}

inline ParameterPoint point_from_json(const Json& j) {
  ParameterPoint p;
  for (const auto& x : j.at("s")) p.s.push_back(cyclo_from_json(x));
  for (const auto& x : j.at("t")) p.t.push_back(cyclo_from_json(x));
  if (j.contains("t_inf") && !j.at("t_inf").is_null()) p.t_inf = cyclo_from_json(j.at("t_inf"));
  return p;
}

inline Json to_json(const ProjectivePoint& p) {
  Json s = Json::array(), t = Json::array();
  for (const auto& x : p.s) s.push_back(to_json(x));
  for (const auto& x : p.t) t.push_back(to_json(x));
  return Json{{"s", s}, {"t", t}};
}

inline Json to_json(const Permutation& p) {
  Json out = Json::array();
  for (int x : p) out.push_back(x + 1);
  return out;
}

inline Json wiring_json(const Arrangement& a) {
  Json verts = Json::array();
  for (const auto& v : a.wiring().verticals) verts.push_back(Json{{"label", v.label}, {"blocks", v.blocks.to_lists()}});
  return Json{{"n", a.n()}, {"verticals", verts}, {"horizontal_labels", a.horizontal_labels()}};
}

inline Json to_json(const Arrangement& a) {
  Json out = Json::object();
  if (a.coords()) {
    Json hs = Json::array(), vs = Json::array();
    for (const auto& l : *a.coords()) {
      if (l.is_vertical()) vs.push_back(Json{{"label", l.label}, {"p", format_rational(l.p)}});
      else hs.push_back(Json{{"label", l.label}, {"a", format_rational(l.a)}, {"b", format_rational(l.b)}});
    }
    out["horizontals"] = hs;
    out["verticals"] = vs;
  }
  out["wiring"] = wiring_json(a);
  return out;
}

inline Arrangement arrangement_from_json(const Json& j) {
  if (j.contains("horizontals")) {
    std::vector<Line> lines;
    for (const auto& h : j.at("horizontals"))
      lines.push_back(Line::horizontal(h.at("label").get<std::string>(), parse_rational(h.at("a").get<std::string>()), parse_rational(h.at("b").get<std::string>())));
    if (j.contains("verticals"))
      for (const auto& v : j.at("verticals")) lines.push_back(Line::vertical(v.at("label").get<std::string>(), parse_rational(v.at("p").get<std::string>())));
    return Arrangement::from_coords(lines);
  }
  if (!j.contains("wiring")) throw Error(ErrorKind::Parse, "arrangement JSON needs \"horizontals\" or \"wiring\"");
  const auto& w = j.at("wiring");
  Wiring wiring;
  wiring.n = w.at("n").get<int>();
  for (const auto& v : w.at("verticals"))
    wiring.verticals.push_back({v.at("label").get<std::string>(), BlockPartition::from_lists(v.at("blocks").get<std::vector<std::vector<int>>>(), wiring.n)});
  std::vector<std::string> labels;
  if (w.contains("horizontal_labels")) labels = w.at("horizontal_labels").get<std::vector<std::string>>();
  return Arrangement::from_wiring(wiring, labels);
}

inline Json to_json(const MembershipReport& r) {
  Json w = Json::array();
  for (const auto& f : r.w_factors) w.push_back(Json{{"vertical", f.vertical}, {"triple", f.lines}, {"value", to_json(f.value)}});
  Json out{{"point", to_json(r.point)}, {"rank", r.rank}, {"h1", r.h1}, {"in_variety", r.in_variety}, {"w_factors", w}};
  if (r.eigenvector.empty()) {
    out["eigenvector"] = nullptr;
  } else {
    Json e = Json::array();
    for (const auto& v : r.eigenvector) e.push_back(to_json(v));
    out["eigenvector"] = e;
  }
  out["w_consistent"] = r.w_consistent;
  out["eigen_equivalent"] = r.eigen_equivalent;
  return out;
}

inline Json to_json(const PolygonModel& m) {
  Json out = to_json(m.arrangement);
  Json edges = Json::array(), diags = Json::array();
  for (int e : m.edge_of_horizontal) edges.push_back("e" + std::to_string(e));
  for (int q : m.diagonal_of_vertical) diags.push_back("d" + std::to_string(q));
  out["labeling"] = Json{{"edges", edges}, {"diagonals", diags}, {"infinity", "d" + std::to_string(m.infinity_diagonal)},
                         {"dihedral", Json{{"shift", m.dihedral_shift}, {"sign", m.dihedral_sign}}}};
  Json triples = Json::array();
  for (const auto& [i, j, q] : m.triples) triples.push_back(Json::array({i, j, q}));
  out["triples"] = triples;
  out["matches_alternating_wiring"] = true;
  return out;
}

inline Json to_json(const IsolationCertificate& c) {
  return Json{{"n", c.n},
              {"k", c.k},
              {"point", to_json(c.point)},
              {"rank", c.rank},
              {"rank_drop_ok", c.rank_drop_ok},
              {"eigenvector_nonvanishing", c.eigenvector_nonvanishing},
              {"eigenvector_matches_vn", c.eigenvector_matches_vn},
              {"ideal_point_ok", c.ideal_point_ok},
              {"log_jacobian_rank", c.log_jacobian_rank},
              {"certified", c.certified},
              {"note", "log-Jacobian rank certifies local zero-dimensionality only"}};
}

inline Json to_json(const LemmaCheckReport& r) {
  return Json{{"n", r.n},
              {"points", r.points},
              {"distinct_points", r.distinct_points},
              {"all_satisfy_J", r.all_satisfy_j},
              {"jacobian_rank", r.jacobian_rank},
              {"components_satisfy_I", r.components_satisfy_i},
              {"s0_squared_relation", r.derived_relation_ok},
              {"passed", r.passed}};
}

inline Json to_json(const FactoredCharPoly& f) {
  Json out = Json::array();
  for (const auto& [root, e] : f.factors) out.push_back(Json{{"root", to_json(root)}, {"exponent", e}});
  return out;
}

}  // namespace arrmono
