#pragma once

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arrmono/charvar.hpp"
#include "arrmono/monodromy.hpp"
#include "arrmono/parallel.hpp"
#include "arrmono/polygon.hpp"
#include "arrmono/random.hpp"
#include "arrmono/reproduce.hpp"
#include "arrmono/serialize.hpp"

namespace arrmono::cli {

inline constexpr const char* kToolVersion = "1.0.0";

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, what + ": " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "bad integer in " + what + ": " + s);
  }
}

/// Scalar literal: rat:p/q or cyclo:N:e.
inline CycloNum parse_scalar(const std::string& lit) {
  auto parts = split(lit, ':');
  if (parts.size() == 2 && parts[0] == "rat") return CycloNum(parse_rational(parts[1]));
  if (parts.size() == 3 && parts[0] == "cyclo") {
    const int order = parse_int(parts[1], lit);
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "root order must be positive");
    return CycloNum::root_of_unity(order, parse_int(parts[2], lit));
  }
  throw Error(ErrorKind::Parse, "expected rat:<p/q> or cyclo:<N>:<e>, got " + lit);
}

/// Options and inputs shared by all verbs.
struct Context {
  std::string verb;
  std::string arrangement_spec;
  std::string point_spec;
  std::uint64_t seed = 0;
  std::string format = "json";
  unsigned jobs = 1;
  bool timing = false;
  int n = 0;
  int k = 0;
  int count = 20;
  std::string vertical;
  std::string form = "gamma";
  int from = 0;
  int to = -1;
  std::string x;
  bool oracle = false;

  std::string digest_material;  // normalized argv plus contents of referenced files

  std::optional<PolygonModel> polygon;  // set when the arrangement is polygon:N
};

inline Arrangement load_arrangement(Context& ctx) {
  const std::string& spec = ctx.arrangement_spec;
  if (spec.empty()) throw Error(ErrorKind::InvalidArgument, "--arrangement is required for " + ctx.verb);
  if (spec.rfind("polygon:", 0) == 0) {
    ctx.polygon = build_r2n(parse_int(spec.substr(8), spec));
    return ctx.polygon->arrangement;
  }
  if (spec == "random") {
    std::mt19937_64 rng(ctx.seed);
    return Arrangement::from_coords(random_fibered_lines(rng, ctx.n > 0 ? ctx.n : 4));
  }
  const std::string text = read_file(spec);
  ctx.digest_material += "\n" + text;
  return arrangement_from_json(parse_json_text(text, spec));
}

inline ParameterPoint parse_point(Context& ctx, const Arrangement& a) {
  const std::string& spec = ctx.point_spec;
  if (spec.empty()) throw Error(ErrorKind::InvalidArgument, "--point is required for " + ctx.verb);
  auto parts = split(spec, ':');
  const int n = static_cast<int>(a.n());
  if (parts[0] == "pnk") {
    if (parts.size() != 3) throw Error(ErrorKind::Parse, "expected pnk:<n>:<k>");
    const int pn = parse_int(parts[1], spec);
    if (pn != n || a.m() != static_cast<std::size_t>(n - 1))
      throw Error(ErrorKind::InvalidArgument, "pnk point needs R(2n) with n = " + parts[1]);
    return pnk_point(pn, parse_int(parts[2], spec));
  }
  if (parts[0] == "component") {
    if (parts.size() < 3) throw Error(ErrorKind::Parse, "expected component:<n>:<scalar literal>");
    const int pn = parse_int(parts[1], spec);
    if (pn != n) throw Error(ErrorKind::InvalidArgument, "component point needs R(2n) with n = " + parts[1]);
    const std::string scalar = spec.substr(spec.find(':', spec.find(':') + 1) + 1);
    const PolygonModel model = ctx.polygon ? *ctx.polygon : build_r2n(pn);
    return component_point(model, parse_scalar(scalar)).point;
  }
  if (parts[0] == "rat" || parts[0] == "cyclo") {
    const CycloNum v = parse_scalar(spec);
    ParameterPoint p;
    p.s.assign(n, v);
    p.t.assign(a.m(), v);
    return p;
  }
  const std::string text = read_file(spec);
  ctx.digest_material += "\n" + text;
  try {
    return point_from_json(parse_json_text(text, spec));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, spec + ": " + e.what());
  }
}

inline std::size_t parse_vertical(const Context& ctx, const Arrangement& a) {
  if (ctx.vertical.empty()) throw Error(ErrorKind::InvalidArgument, "--vertical is required");
  const auto& labels = a.vertical_labels();
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v] == ctx.vertical) return v;
  const int idx = parse_int(ctx.vertical, "--vertical");
  if (idx < 1 || static_cast<std::size_t>(idx) > a.m()) throw Error(ErrorKind::InvalidArgument, "vertical index out of range");
  return static_cast<std::size_t>(idx - 1);
}

inline Json to_json(const UniPoly& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(arrmono::to_json(x));
  return Json{{"degree", p.degree()}, {"coeffs_low_to_high", c}};
}

inline Json arrangement_summary(const Arrangement& a) {
  Json sps = Json::array();
  for (const auto& sp : a.singular_points()) {
    Json e{{"vertical", a.vertical_labels().at(sp.vertical)}, {"multiplicity", sp.multiplicity}, {"incident", sp.incident}};
    if (sp.position) e["position"] = Json::array({format_rational(sp.position->first), format_rational(sp.position->second)});
    sps.push_back(e);
  }
  Json out{{"fibered", true}, {"n", a.n()}, {"m", a.m()}, {"horizontal_labels", a.horizontal_labels()}, {"vertical_labels", a.vertical_labels()}};
  out["singular_points"] = sps;
  out["euler_characteristic"] = a.euler_characteristic();
  out["expected_euler_characteristic"] = (1 - static_cast<long>(a.n())) * (1 - static_cast<long>(a.m()));
  return out;
}

inline MonodromyForm parse_form(const std::string& f) {
  if (f == "local") return MonodromyForm::Local;
  if (f == "gamma") return MonodromyForm::Gamma;
  if (f == "delta") return MonodromyForm::Delta;
  throw Error(ErrorKind::InvalidArgument, "form must be local, gamma or delta");
}

inline Json oracle_sweep(const Arrangement& a) {
  std::size_t pairs = 0, failures = 0;
  for (std::size_t f = 0; f < a.slot_count(); ++f)
    for (std::size_t t = 0; t < a.slot_count(); ++t) {
      ++pairs;
      if (!(fox_transport_oracle(a, f, t) == transport_matrix(a, f, t))) ++failures;
    }
  return Json{{"n", a.n()}, {"m", a.m()}, {"slot_pairs", pairs}, {"failures", failures}};
}

inline Json execute(Context& ctx) {
  const std::string& verb = ctx.verb;
  if (verb == "validate") return arrangement_summary(load_arrangement(ctx));
  if (verb == "wiring") return wiring_json(load_arrangement(ctx));
  if (verb == "transport") {
    Arrangement a = load_arrangement(ctx);
    const int to = ctx.to < 0 ? static_cast<int>(a.m()) : ctx.to;
    if (ctx.from < 0 || static_cast<std::size_t>(ctx.from) >= a.slot_count() || static_cast<std::size_t>(to) >= a.slot_count())
      throw Error(ErrorKind::InvalidArgument, "slot out of range; slots are 0.." + std::to_string(a.m()));
    auto tm = transport_matrix(a, ctx.from, to);
    Json out{{"from_slot", ctx.from}, {"to_slot", to}, {"matrix", to_json(tm)}};
    if (ctx.oracle) out["fox_oracle_agrees"] = fox_transport_oracle(a, ctx.from, to) == tm;
    return out;
  }
  if (verb == "monodromy") {
    Arrangement a = load_arrangement(ctx);
    const std::size_t v = parse_vertical(ctx, a);
    auto mm = global_monodromy(a, v, parse_form(ctx.form));
    Json out{{"vertical", a.vertical_labels()[v]}, {"form", ctx.form}, {"matrix", to_json(mm.matrix)}};
    if (!ctx.point_spec.empty()) {
      auto pt = parse_point(ctx, a);
      check_point(a, pt);
      out["evaluated"] = to_json(evaluate(mm.matrix, PointEvaluator(pt)));
    }
    return out;
  }
  if (verb == "charpoly") {
    Arrangement a = load_arrangement(ctx);
    const std::size_t v = parse_vertical(ctx, a);
    auto fact = local_charpoly(a, v);
    Json out{{"vertical", a.vertical_labels()[v]}, {"degree", fact.degree()}, {"factors", to_json(fact)}};
    if (!ctx.point_spec.empty()) {
      auto pt = parse_point(ctx, a);
      check_point(a, pt);
      PointEvaluator ev(pt);
      const UniPoly predicted = fact.evaluate(ev);
      const UniPoly computed = char_poly(evaluate(local_monodromy_matrix(a, v), ev));
      out["evaluated"] = to_json(predicted);
      out["matches_matrix"] = predicted == computed;
    }
    return out;
  }
  if (verb == "boundary") {
    Arrangement a = load_arrangement(ctx);
    CharVarEngine eng(a);
    Json blocks = Json::array();
    for (const auto& b : eng.boundary().blocks) blocks.push_back(Json{{"vertical", b.vertical}, {"first_column", b.first_column}});
    Json out{{"matrix", to_json(eng.boundary().matrix)}, {"blocks", blocks}};
    if (!ctx.point_spec.empty()) {
      auto pt = parse_point(ctx, a);
      auto m = eng.boundary_at(pt);
      out["evaluated"] = to_json(m);
      out["rank"] = rank(m);
    }
    return out;
  }
  if (verb == "membership") {
    Arrangement a = load_arrangement(ctx);
    CharVarEngine eng(a);
    return to_json(eng.membership(parse_point(ctx, a)));
  }
  if (verb == "eigenvector") {
    Arrangement a = load_arrangement(ctx);
    CharVarEngine eng(a);
    auto basis = eng.common_eigenvector(parse_point(ctx, a));
    Json b = Json::array();
    for (const auto& v : basis) b.push_back(to_json(v));
    return Json{{"dimension", basis.size()}, {"basis", b}};
  }
  if (verb == "polygon") return to_json(build_r2n(ctx.n));
  if (verb == "pnk") {
    Json out{{"n", ctx.n}, {"k", ctx.k}, {"point", to_json(pnk_point(ctx.n, ctx.k))}};
    out["v_n"] = ctx.k >= 1 ? to_json(vn_vector(ctx.n, ctx.k)) : Json(nullptr);
    return out;
  }
  if (verb == "certify") {
    auto model = build_r2n(ctx.n);
    CharVarEngine eng(model.arrangement);
    if (ctx.k > 0) return to_json(certify_isolated(model, eng, ctx.k));
    auto certs = parallel_map(static_cast<std::size_t>(ctx.n - 1), ctx.jobs, [&](std::size_t i) { return certify_isolated(model, eng, static_cast<int>(i) + 1); });
    Json out = Json::array();
    for (const auto& c : certs) out.push_back(to_json(c));
    return Json{{"n", ctx.n}, {"certificates", out}};
  }
  if (verb == "component-sample") {
    auto model = build_r2n(ctx.n);
    CharVarEngine eng(model.arrangement);
    auto sample = component_point(model, parse_scalar(ctx.x));
    return Json{{"n", ctx.n}, {"x", to_json(sample.x)}, {"projective", to_json(sample.projective)}, {"membership", to_json(eng.membership(sample.point))}};
  }
  if (verb == "lemma-check") return to_json(lemma_zerodim_check(ctx.n));
  if (verb == "orbit") {
    ctx.arrangement_spec = "polygon:" + std::to_string(ctx.n);
    Arrangement a = load_arrangement(ctx);
    const PolygonModel& model = *ctx.polygon;
    CharVarEngine eng(a);
    auto pt = parse_point(ctx, a);
    if (!pt.t_inf) {
      CycloNum prod(1);
      for (const auto& x : pt.s) prod *= x;
      for (const auto& x : pt.t) prod *= x;
      pt.t_inf = prod.inverse();
    }
    auto orbit = symmetry_orbit(model, to_projective(model, pt));
    auto h1s = parallel_map(orbit.size(), ctx.jobs, [&](std::size_t i) { return eng.h1_dimension(to_affine(model, orbit[i])); });
    Json pts = Json::array();
    for (std::size_t i = 0; i < orbit.size(); ++i) pts.push_back(Json{{"projective", to_json(orbit[i])}, {"h1", h1s[i]}});
    bool equal = true;
    for (auto h : h1s) equal = equal && h == h1s.front();
    return Json{{"n", ctx.n}, {"orbit", pts}, {"h1_constant", equal}};
  }
  if (verb == "oracle-check") {
    Json rows = Json::array();
    bool ok = true;
    if (ctx.arrangement_spec == "random") {
      std::mt19937_64 rng(ctx.seed);
      std::uniform_int_distribution<int> nd(2, 6), md(1, 5);
      for (int i = 0; i < ctx.count; ++i) {
        const int n = nd(rng), m = md(rng);
        rows.push_back(oracle_sweep(Arrangement::from_wiring(random_wiring(rng, n, m))));
      }
    } else {
      rows.push_back(oracle_sweep(load_arrangement(ctx)));
    }
    for (const auto& r : rows) ok = ok && r.at("failures").get<std::size_t>() == 0;
    return Json{{"arrangements", rows}, {"all_equal", ok}};
  }
  if (verb == "reproduce") {
    auto claims = reproduce_claims(ctx.jobs, ctx.seed);
    Json out = Json::array();
    std::size_t passed = 0;
    for (const auto& c : claims) {
      out.push_back(to_json(c));
      passed += c.passed ? 1 : 0;
    }
    return Json{{"claims", out}, {"passed", passed}, {"total", claims.size()}};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown verb " + verb);
}

inline void print_table(std::ostream& out, const Json& j, const std::string& indent = "") {
  if (!j.is_object()) {
    out << indent << j.dump() << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << indent << k << ":\n";
      print_table(out, v, indent + "  ");
    } else {
      std::string s = v.dump();
      if (s.size() > 100) s = s.substr(0, 97) + "...";
      out << indent << k << ": " << s << '\n';
    }
  }
}

/// Entry point; args excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  CLI::App app{"Exact monodromy and characteristic varieties of fibered line arrangements", "arrmono"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto common = [&](CLI::App* sc) {
    sc->add_option("--seed", ctx.seed, "seed for randomized inputs");
    sc->add_option("--format", ctx.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sc->add_option("--jobs", ctx.jobs, "worker threads for independent evaluations")->check(CLI::Range(1u, 256u));
    sc->add_flag("--timing", ctx.timing, "include wall-clock timing in the report");
  };
  auto with_arrangement = [&](CLI::App* sc) {
    sc->add_option("--arrangement", ctx.arrangement_spec, "JSON path, random, or polygon:N");
    sc->add_option("--n", ctx.n, "horizontal line count for random arrangements");
  };
  auto add = [&](const std::string& name, const std::string& desc) {
    auto* sc = app.add_subcommand(name, desc);
    common(sc);
    return sc;
  };

  auto* sc = add("validate", "check fiberedness and list singular points");
  with_arrangement(sc);
  sc = add("wiring", "emit the wiring diagram");
  with_arrangement(sc);
  sc = add("transport", "twisted transport matrix between two slots");
  with_arrangement(sc);
  sc->add_option("--from", ctx.from, "source slot (0 = right of all verticals)");
  sc->add_option("--to", ctx.to, "target slot (default: leftmost)");
  sc->add_flag("--oracle", ctx.oracle, "also compare against Fox calculus");
  sc = add("monodromy", "monodromy matrix of one vertical");
  with_arrangement(sc);
  sc->add_option("--vertical", ctx.vertical, "vertical label or 1-based index");
  sc->add_option("--form", ctx.form, "local, gamma or delta");
  sc->add_option("--point", ctx.point_spec, "optional evaluation point");
  sc = add("charpoly", "factored characteristic polynomial of a local monodromy");
  with_arrangement(sc);
  sc->add_option("--vertical", ctx.vertical, "vertical label or 1-based index");
  sc->add_option("--point", ctx.point_spec, "optional evaluation point");
  sc = add("boundary", "symbolic boundary operator");
  with_arrangement(sc);
  sc->add_option("--point", ctx.point_spec, "optional evaluation point");
  for (const auto* name : {"membership", "eigenvector"}) {
    sc = add(name, std::string(name) + " at a parameter point");
    with_arrangement(sc);
    sc->add_option("--point", ctx.point_spec, "pnk:n:k, cyclo:N:e, rat:p/q, component:n:<scalar>, or JSON path");
  }
  sc = add("polygon", "R(2n) model with labeling");
  sc->add_option("--n", ctx.n)->required();
  sc = add("pnk", "the point P_{n,k} and its eigenvector v_n");
  sc->add_option("--n", ctx.n)->required();
  sc->add_option("--k", ctx.k)->required();
  sc = add("certify", "isolation certificate for P_{n,k} (all k if omitted)");
  sc->add_option("--n", ctx.n)->required();
  sc->add_option("--k", ctx.k);
  sc = add("component-sample", "membership at a point of the translated component");
  sc->add_option("--n", ctx.n)->required();
  sc->add_option("--x", ctx.x, "rat:p/q or cyclo:N:e")->required();
  sc = add("lemma-check", "zero-dimensionality checks on the points P_{n,h,k}");
  sc->add_option("--n", ctx.n)->required();
  sc = add("orbit", "cyclic symmetry orbit of a point of R(2n)");
  sc->add_option("--n", ctx.n)->required();
  sc->add_option("--point", ctx.point_spec)->required();
  sc = add("oracle-check", "compare Fox calculus transport with the closed form");
  with_arrangement(sc);
  sc->add_option("--count", ctx.count, "number of random arrangements");
  sc = add("reproduce", "run every reproducibility claim");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    out << Json{{"tool_version", kToolVersion}, {"error", Json{{"kind", "Usage"}, {"message", e.what()}}}}.dump(2) << '\n';
    return 1;
  }
  ctx.verb = app.get_subcommands().front()->get_name();

  ctx.digest_material = ctx.verb;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--timing") continue;
    if (a == "--jobs" || a == "--format") {
      ++i;
      continue;
    }
    if (a.rfind("--jobs=", 0) == 0 || a.rfind("--format=", 0) == 0) continue;
    ctx.digest_material += '\0' + a;
  }

  Json report{{"tool_version", kToolVersion}};
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    Json result = execute(ctx);
    report["input_digest"] = sha256_hex(ctx.digest_material);
    report["verb"] = ctx.verb;
    report["result"] = std::move(result);
  } catch (const Error& e) {
    code = (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::InvalidArgument) ? 1 : 2;
    report["input_digest"] = sha256_hex(ctx.digest_material);
    report["verb"] = ctx.verb;
    report["error"] = Json{{"kind", kind_name(e.kind())}, {"message", e.what()}};
    err << "error: " << kind_name(e.kind()) << ": " << e.what() << '\n';
  }
  if (ctx.timing)
    report["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  if (ctx.format == "table" && code == 0) {
    print_table(out, report);
  } else {
    out << report.dump(2) << '\n';
  }
  return code;
}

}  // namespace arrmono::cli
