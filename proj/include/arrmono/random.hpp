#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/cyclotomic.hpp"
#include "arrmono/point.hpp"

namespace arrmono {

/// Random wiring in which no two lines cross twice.
inline Wiring random_wiring(std::mt19937_64& rng, int n, int m) {
  Wiring w;
  w.n = n;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::set<std::pair<int, int>> crossed;
  std::uniform_int_distribution<int> size_dist(1, 3);
  for (int v = 0; v < m; ++v) {
    std::vector<int> sizes;
    int pos = 0;
    while (pos < n) {
      int want = std::min(size_dist(rng), n - pos);
      // shrink until every pair in the block is still uncrossed
      for (; want > 1; --want) {
        bool fresh = true;
        for (int i = pos; i < pos + want && fresh; ++i)
          for (int j = i + 1; j < pos + want && fresh; ++j)
            fresh = !crossed.count({std::min(order[i], order[j]), std::max(order[i], order[j])});
        if (fresh) break;
      }
      for (int i = pos; i < pos + want; ++i)
        for (int j = i + 1; j < pos + want; ++j) crossed.insert({std::min(order[i], order[j]), std::max(order[i], order[j])});
      std::reverse(order.begin() + pos, order.begin() + pos + want);
      sizes.push_back(want);
      pos += want;
    }
    w.verticals.push_back({"v" + std::to_string(v + 1), BlockPartition::from_sizes(sizes)});
  }
  return w;
}

/// Random fibered arrangement with rational coordinates: lines through a few
/// hub points, plus a vertical through every intersection abscissa.
inline std::vector<Line> random_fibered_lines(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> coord(-6, 6), slope(-4, 4), hub_count(1, 3), extra(0, 1);
  std::vector<std::pair<Rational, Rational>> hubs;
  const int h = hub_count(rng);
  std::set<Rational> hub_x;
  while (static_cast<int>(hubs.size()) < h) {
    Rational x(coord(rng));
    if (!hub_x.insert(x).second) continue;
    hubs.push_back({x, Rational(coord(rng))});
  }
  std::vector<Line> hs;
  std::uniform_int_distribution<int> pick(0, h - 1);
  std::set<std::pair<Rational, Rational>> used;
  int guard = 0;
  while (static_cast<int>(hs.size()) < n && guard++ < 1000) {
    const auto& [hx, hy] = hubs[pick(rng)];
    Rational a(slope(rng), 1 + (guard % 2));
    a.canonicalize();
    Rational b = hy - a * hx;
    if (!used.insert({a, b}).second) continue;
    hs.push_back(Line::horizontal("l" + std::to_string(hs.size() + 1), a, b));
  }
  std::set<Rational> xs;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j)
      if (hs[i].a != hs[j].a) xs.insert((hs[j].b - hs[i].b) / (hs[i].a - hs[j].a));
  if (extra(rng) || xs.empty()) {
    Rational x = xs.empty() ? Rational(0) : *xs.rbegin() + Rational(1, 2);
    xs.insert(x);
  }
  std::vector<Line> lines = hs;
  int k = 0;
  for (const auto& x : xs) lines.push_back(Line::vertical("v" + std::to_string(++k), x));
  return lines;
}

/// Random rational in Q* minus {1}, with small numerator and denominator.
inline Rational random_generic_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 12);
  for (;;) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    if (r != 0 && r != 1) return r;
  }
}

inline ParameterPoint random_rational_point(std::mt19937_64& rng, int n, std::size_t m) {
  ParameterPoint p;
  for (int i = 0; i < n; ++i) p.s.push_back(CycloNum(random_generic_rational(rng)));
  for (std::size_t j = 0; j < m; ++j) p.t.push_back(CycloNum(random_generic_rational(rng)));
  return p;
}

/// Random roots of unity of order `order` (s_i != 1).
inline ParameterPoint random_root_point(std::mt19937_64& rng, int n, std::size_t m, int order) {
  std::uniform_int_distribution<int> e(0, order - 1), e_nonzero(1, order - 1);
  ParameterPoint p;
  for (int i = 0; i < n; ++i) p.s.push_back(CycloNum::root_of_unity(order, e_nonzero(rng)));
  for (std::size_t j = 0; j < m; ++j) p.t.push_back(CycloNum::root_of_unity(order, e(rng)));
  return p;
}

}  // namespace arrmono
