#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>

#include "arrmono/polygon.hpp"
#include "arrmono/random.hpp"
#include "test_support.hpp"

using namespace arrmono;
using namespace arrmono::testing;

namespace {

struct Built {
  PolygonModel model;
  std::unique_ptr<CharVarEngine> engine;
};

const Built& polygon(int n) {
  static std::map<int, Built> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    Built b;
    b.model = build_r2n(n);
    b.engine = std::make_unique<CharVarEngine>(b.model.arrangement);
    it = cache.emplace(n, std::move(b)).first;
  }
  return it->second;
}

std::vector<std::vector<int>> blocks_of(const Arrangement& a, std::size_t v) { return a.wiring().verticals[v].blocks.to_lists(); }

}  // namespace

TEST(Polygon, AlternatingBlocksEven) {
  const auto& a = polygon(6).model.arrangement;
  for (std::size_t v = 0; v < a.m(); ++v) {
    if (v % 2 == 0) EXPECT_EQ(blocks_of(a, v), (std::vector<std::vector<int>>{{1}, {2, 3}, {4, 5}, {6}}));
    else EXPECT_EQ(blocks_of(a, v), (std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5, 6}}));
  }
}

TEST(Polygon, AlternatingBlocksOdd) {
  const auto& a = polygon(7).model.arrangement;
  for (std::size_t v = 0; v < a.m(); ++v) {
    if (v % 2 == 0) EXPECT_EQ(blocks_of(a, v), (std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5, 6}, {7}}));
    else EXPECT_EQ(blocks_of(a, v), (std::vector<std::vector<int>>{{1}, {2, 3}, {4, 5}, {6, 7}}));
  }
}

TEST(Polygon, TripleLabelsMatchPrediction) {
  for (int n = 5; n <= 9; ++n) {
    const auto& m = polygon(n).model;
    EXPECT_TRUE(m.triples_ok);
    std::set<std::array<int, 3>> predicted;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) predicted.insert({i, j, (i + j) % n});
    using Triples = std::set<std::array<int, 3>>;
    EXPECT_EQ(Triples(m.triples.begin(), m.triples.end()), predicted);
    // labels are bijections
    EXPECT_EQ(std::set<int>(m.edge_of_horizontal.begin(), m.edge_of_horizontal.end()).size(), static_cast<std::size_t>(n));
    std::set<int> diags(m.diagonal_of_vertical.begin(), m.diagonal_of_vertical.end());
    diags.insert(m.infinity_diagonal);
    EXPECT_EQ(diags.size(), static_cast<std::size_t>(n));
  }
}

TEST(Polygon, PnkCoordinates) {
  auto p61 = pnk_point(6, 1);
  for (const auto& x : p61.s) EXPECT_EQ(x, CycloNum::root_of_unity(6, 1));
  for (const auto& x : p61.t) EXPECT_EQ(x, CycloNum::root_of_unity(6, 4));
  auto p72 = pnk_point(7, 2);
  for (const auto& x : p72.t) EXPECT_EQ(x, CycloNum::root_of_unity(7, 3));
  auto p0 = pnk_point(6, 0);
  for (const auto& x : p0.s) EXPECT_TRUE(x.is_one());
  EXPECT_THROW(polygon(6).engine->h1_dimension(p0), Error);
  // the triple point relation t s s = 1
  const LaurentPoly mono = LaurentPoly::variable(t_param(1)) * LaurentPoly::variable(s_param(2)) * LaurentPoly::variable(s_param(3));
  EXPECT_TRUE(PointEvaluator(p61)(mono).is_one());
}

TEST(Polygon, VnSupport) {
  for (int n = 5; n <= 9; ++n)
    for (int k = 1; k < n; ++k)
      if (std::gcd(n, k) == 1)
        for (const auto& x : vn_vector(n, k)) EXPECT_FALSE(x.is_zero()) << n << "," << k;
  auto v = vn_vector(8, 2);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i].is_zero(), i == 3);
}

TEST(Polygon, VnFixedByEveryScaledGamma) {
  for (int n = 4; n <= 9; ++n) {
    const auto& eng = *polygon(n).engine;
    for (int k = 1; k < n; ++k) {
      auto pt = pnk_point(n, k);
      PointEvaluator ev(pt);
      const auto v = vn_vector(n, k);
      for (std::size_t p = 0; p < eng.arrangement().m(); ++p) {
        ExactMatrix g = pt.t[p] * evaluate(eng.cache().gamma(p), ev);
        EXPECT_EQ(g.apply_left(v), v) << n << "," << k << " p=" << p;
      }
    }
  }
}

TEST(Polygon, VnTransportRelation) {
  for (int n = 4; n <= 9; ++n) {
    const auto& eng = *polygon(n).engine;
    for (int k = 1; k < n; ++k) {
      PointEvaluator ev(pnk_point(n, k));
      const auto v = vn_vector(n, k);
      Vector target = v;
      for (auto& x : target) x = -CycloNum::root_of_unity(n, k).inverse() * x;
      EXPECT_EQ(evaluate(eng.cache().step_inverse(0), ev).apply_left(v), target);
      EXPECT_EQ(evaluate(eng.cache().step_inverse(1), ev).apply_left(v), target);
    }
  }
}

TEST(Polygon, CertificatesFollowCoprimality) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {6, 1}, {7, 3}}) {
    auto c = certify_isolated(polygon(n).model, *polygon(n).engine, k);
    EXPECT_TRUE(c.certified) << n << "," << k;
    EXPECT_EQ(c.log_jacobian_rank, static_cast<std::size_t>(2 * n - 1));
  }
  auto c82 = certify_isolated(polygon(8).model, *polygon(8).engine, 2);
  EXPECT_FALSE(c82.certified);
  EXPECT_FALSE(c82.eigenvector_nonvanishing);
  EXPECT_FALSE(certify_isolated(polygon(9).model, *polygon(9).engine, 3).certified);
  EXPECT_FALSE(certify_isolated(polygon(8).model, *polygon(8).engine, 6).certified);
}

TEST(Polygon, ZeroDimensionalIdealPoints) {
  auto r5 = lemma_zerodim_check(5);
  EXPECT_EQ(r5.points, 25u);
  EXPECT_EQ(r5.distinct_points, 25u);
  EXPECT_TRUE(r5.all_satisfy_j);
  EXPECT_TRUE(r5.derived_relation_ok);
  EXPECT_TRUE(r5.passed);
  auto r6 = lemma_zerodim_check(6);
  EXPECT_EQ(r6.points, 36u);
  EXPECT_TRUE(r6.all_satisfy_j);
  EXPECT_EQ(r6.jacobian_rank, 12u);
}

TEST(Polygon, FourComponentCoordinates) {
  const CycloNum x(Rational(3, 2));
  auto p = component_projective(4, x);
  const CycloNum xi = x.inverse();
  EXPECT_EQ(p.s, (std::vector<CycloNum>{x, -xi, x, -xi}));
  EXPECT_EQ(p.t, (std::vector<CycloNum>{x * x, CycloNum(-1), xi * xi, CycloNum(-1)}));
  EXPECT_THROW(component_projective(6, x), Error);
}

TEST(Polygon, EightComponentMembership) {
  const auto& b = polygon(8);
  auto sample = component_point(b.model, CycloNum::root_of_unity(12, 1));
  EXPECT_EQ(b.engine->h1_dimension(sample.point), 1u);
  // the curve passes through P_{8,2} at x = s_0 = zeta_8^2
  EXPECT_EQ(component_projective(8, CycloNum::root_of_unity(8, 2)), to_projective(b.model, pnk_point(8, 2)));
  EXPECT_GE(b.engine->h1_dimension(pnk_point(8, 2)), 1u);
}

TEST(Polygon, AffineProjectiveRoundTrip) {
  std::mt19937_64 rng(41);
  for (int n = 4; n <= 9; ++n) {
    const auto& m = polygon(n).model;
    auto pt = random_rational_point(rng, n, static_cast<std::size_t>(n - 1));
    auto pp = to_projective(m, pt);
    CycloNum prod(1);
    for (const auto& x : pp.s) prod *= x;
    for (const auto& x : pp.t) prod *= x;
    EXPECT_TRUE(prod.is_one());
    auto back = to_affine(m, pp);
    EXPECT_EQ(back.s, pt.s);
    EXPECT_EQ(back.t, pt.t);
  }
}

TEST(Polygon, OrbitSizes) {
  std::mt19937_64 rng(42);
  for (int n = 5; n <= 7; ++n) {
    const auto& m = polygon(n).model;
    for (int k = 1; k < n; ++k) EXPECT_EQ(symmetry_orbit(m, to_projective(m, pnk_point(n, k))).size(), 1u);
    auto generic = to_projective(m, random_rational_point(rng, n, static_cast<std::size_t>(n - 1)));
    EXPECT_EQ(symmetry_orbit(m, generic).size(), static_cast<std::size_t>(n));
    auto broken = generic;
    broken.s[0] = broken.s[0] * CycloNum(2);
    EXPECT_THROW(symmetry_orbit(m, broken), Error);
  }
}

TEST(PolygonProperty, OrbitPreservesH1) {
  for (int n : {4, 8}) {
    const auto& b = polygon(n);
    for (const auto& x : {CycloNum(Rational(2)), CycloNum::root_of_unity(5, 1)}) {
      auto sample = component_point(b.model, x);
      const std::size_t h = b.engine->h1_dimension(sample.point);
      EXPECT_GE(h, 1u);
      for (const auto& p : symmetry_orbit(b.model, sample.projective)) EXPECT_EQ(b.engine->h1_dimension(to_affine(b.model, p)), h);
    }
  }
  std::mt19937_64 rng(43);
  for (int n = 5; n <= 7; ++n) {
    const auto& b = polygon(n);
    auto generic = to_projective(b.model, random_root_point(rng, n, static_cast<std::size_t>(n - 1), 5));
    bool bad = false;
    for (const auto& s : generic.s) bad = bad || s.is_one();
    if (bad) continue;
    std::size_t h = b.engine->h1_dimension(to_affine(b.model, generic));
    for (const auto& p : symmetry_orbit(b.model, generic)) EXPECT_EQ(b.engine->h1_dimension(to_affine(b.model, p)), h);
  }
}

TEST(PolygonProperty, ComponentSamples) {
  std::vector<CycloNum> xs;
  for (int order : {3, 4, 5, 8, 12}) xs.push_back(CycloNum::root_of_unity(order, 1));
  for (auto r : {Rational(2), Rational(3, 2), Rational(-5, 7)}) xs.push_back(CycloNum(r));
  for (int n : {4, 8}) {
    const auto& b = polygon(n);
    for (const auto& x : xs) {
      auto rep = b.engine->membership(component_point(b.model, x).point);
      EXPECT_GE(rep.h1, 1u);
      EXPECT_TRUE(rep.eigen_equivalent);
    }
  }
}

TEST(PolygonProperty, CoprimePointsHaveCorankOne) {
  for (int n = 5; n <= 9; ++n)
    for (int k = 1; k < n; ++k) {
      if (std::gcd(n, k) != 1) continue;
      auto rep = polygon(n).engine->membership(pnk_point(n, k));
      EXPECT_EQ(rep.rank, static_cast<std::size_t>(n - 2));
      EXPECT_EQ(rep.h1, 1u);
      ASSERT_EQ(rep.eigenvector.size(), 1u);
      EXPECT_TRUE(proportional(rep.eigenvector[0], vn_vector(n, k)));
    }
}
