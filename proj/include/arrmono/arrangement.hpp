#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrmono/errors.hpp"
#include "arrmono/rational.hpp"

namespace arrmono {

/// 0-based permutation: perm[i] is the position, in the target ordering, of
/// the line at position i of the source ordering.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  return p;
}

/// Apply `first`, then `second`.
inline Permutation compose(const Permutation& second, const Permutation& first) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

inline Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

struct Line {
  enum class Kind { Horizontal, Vertical };
  Kind kind = Kind::Horizontal;
  Rational a, b;  // y = a x + b
  Rational p;     // x = p
  std::string label;

  static Line horizontal(std::string label, Rational a, Rational b) {
    return Line{Kind::Horizontal, std::move(a), std::move(b), Rational(0), std::move(label)};
  }
  static Line vertical(std::string label, Rational p) {
    return Line{Kind::Vertical, Rational(0), Rational(0), std::move(p), std::move(label)};
  }
  bool is_vertical() const { return kind == Kind::Vertical; }
  Rational y_at(const Rational& x) const { return a * x + b; }
};

/// Consecutive intervals [first, last] (1-based, inclusive) covering 1..n.
class BlockPartition {
 public:
  BlockPartition() = default;

  static BlockPartition singletons(int n) {
    BlockPartition bp;
    for (int i = 1; i <= n; ++i) bp.blocks_.push_back({i, i});
    return bp;
  }

  /// Validates that the lists are runs of consecutive indices covering 1..n in order.
  static BlockPartition from_lists(const std::vector<std::vector<int>>& lists, int n) {
    BlockPartition bp;
    int next = 1;
    for (const auto& block : lists) {
      if (block.empty()) throw Error(ErrorKind::MalformedWiring, "empty block");
      for (std::size_t k = 0; k < block.size(); ++k)
        if (block[k] != next + static_cast<int>(k))
          throw Error(ErrorKind::MalformedWiring, "blocks must be consecutive runs covering 1..n in order");
      bp.blocks_.push_back({next, next + static_cast<int>(block.size()) - 1});
      next += static_cast<int>(block.size());
    }
    if (next != n + 1) throw Error(ErrorKind::MalformedWiring, "blocks do not cover 1.." + std::to_string(n));
    return bp;
  }

  /// Blocks given by their sizes, in order.
  static BlockPartition from_sizes(const std::vector<int>& sizes) {
    BlockPartition bp;
    int next = 1;
    for (int s : sizes) {
      if (s < 1) throw Error(ErrorKind::MalformedWiring, "block sizes must be positive");
      bp.blocks_.push_back({next, next + s - 1});
      next += s;
    }
    return bp;
  }

  const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }
  int n() const { return blocks_.empty() ? 0 : blocks_.back().second; }
  std::size_t size() const { return blocks_.size(); }

  /// Index into blocks() of the block containing position i (1-based).
  std::size_t block_of(int i) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (blocks_[b].first <= i && i <= blocks_[b].second) return b;
    throw Error(ErrorKind::InvalidArgument, "position out of range");
  }

  bool same_block(int i, int j) const { return block_of(i) == block_of(j); }

  /// Reverses each block in place.
  Permutation permutation() const {
    Permutation p(n());
    for (auto [f, l] : blocks_)
      for (int i = f; i <= l; ++i) p[i - 1] = f + l - i - 1;
    return p;
  }

  std::vector<std::vector<int>> to_lists() const {
    std::vector<std::vector<int>> out;
    for (auto [f, l] : blocks_) {
      std::vector<int> b;
      for (int i = f; i <= l; ++i) b.push_back(i);
      out.push_back(std::move(b));
    }
    return out;
  }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::vector<std::pair<int, int>> blocks_;
};

struct VerticalRecord {
  std::string label;
  BlockPartition blocks;  // positions in the ordering just right of the line
  friend bool operator==(const VerticalRecord&, const VerticalRecord&) = default;
};

/// Verticals nearest the basepoint (largest abscissa) first.
struct Wiring {
  int n = 0;
  std::vector<VerticalRecord> verticals;
  friend bool operator==(const Wiring&, const Wiring&) = default;
};

struct SingularPoint {
  std::optional<std::pair<Rational, Rational>> position;
  std::size_t vertical = 0;  // 0-based index into the wiring
  int multiplicity = 0;
  std::vector<std::string> incident;  // horizontal labels by increasing y, then the vertical label
};

/// Floating-point line used only to extract a wiring from geometry.
struct FloatLine {
  bool vertical = false;
  double a = 0, b = 0;  // y = a x + b
  double p = 0;         // x = p
  std::string label;
};

class Arrangement {
 public:
  /// Builds from exact coordinates.
  static Arrangement from_coords(const std::vector<Line>& lines) {
    check_unique_labels(lines);
    std::vector<Line> hs, vs;
    for (const auto& l : lines) (l.is_vertical() ? vs : hs).push_back(l);
    if (hs.empty()) throw Error(ErrorKind::InvalidArgument, "at least one horizontal line is required");
    std::sort(vs.begin(), vs.end(), [](const Line& x, const Line& y) { return x.p > y.p; });
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (vs[i].p == vs[i - 1].p) throw Error(ErrorKind::DuplicateLine, "vertical lines " + vs[i - 1].label + " and " + vs[i].label + " coincide");

    std::set<Rational> abscissae;
    for (const auto& v : vs) abscissae.insert(v.p);
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = i + 1; j < hs.size(); ++j) {
        if (hs[i].a == hs[j].a) {
          if (hs[i].b == hs[j].b) throw Error(ErrorKind::DuplicateLine, "lines " + hs[i].label + " and " + hs[j].label + " coincide");
          continue;
        }
        Rational x = (hs[j].b - hs[i].b) / (hs[i].a - hs[j].a);
        if (!abscissae.count(x))
          throw Error(ErrorKind::NotFibered, "singular point (" + format_rational(x) + ", " + format_rational(hs[i].y_at(x)) + ") of " + hs[i].label +
                                                 " and " + hs[j].label + " lies on no vertical line");
      }

    Arrangement arr;
    arr.abscissae_.reserve(vs.size());
    for (const auto& v : vs) arr.abscissae_.push_back(v.p);
    arr.set_basepoints();

    // Horizontal index = ordering by increasing y at x0.
    const Rational x0 = arr.slot_positions_[0];
    std::vector<Line> ordered = hs;
    std::sort(ordered.begin(), ordered.end(), [&](const Line& l1, const Line& l2) { return l1.y_at(x0) < l2.y_at(x0); });
    for (const auto& l : ordered) arr.horizontal_labels_.push_back(l.label);

    arr.wiring_.n = static_cast<int>(hs.size());
    for (const auto& v : vs) {
      // Ordering just right of x = p: by y(p), ties by slope.
      std::vector<std::size_t> idx(ordered.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        Rational yi = ordered[i].y_at(v.p), yj = ordered[j].y_at(v.p);
        return yi != yj ? yi < yj : ordered[i].a < ordered[j].a;
      });
      std::vector<int> sizes;
      for (std::size_t k = 0; k < idx.size();) {
        std::size_t e = k + 1;
        while (e < idx.size() && ordered[idx[e]].y_at(v.p) == ordered[idx[k]].y_at(v.p)) ++e;
        sizes.push_back(static_cast<int>(e - k));
        k = e;
      }
      arr.wiring_.verticals.push_back({v.label, BlockPartition::from_sizes(sizes)});
    }
    arr.vertical_labels_.clear();
    for (const auto& v : vs) arr.vertical_labels_.push_back(v.label);
    arr.build_slot_lines();
    arr.coords_ = ordered;
    arr.coords_->insert(arr.coords_->end(), vs.begin(), vs.end());

    // The wiring-derived orderings must agree with sorting at each basepoint.
    for (std::size_t k = 0; k < arr.slot_positions_.size(); ++k)
      if (arr.coordinate_ordering(arr.slot_positions_[k]) != arr.slot_lines_[k])
        throw Error(ErrorKind::ConstructionMismatch, "wiring ordering disagrees with coordinates at slot " + std::to_string(k));

    arr.singular_points_ = geometric_singular_points(ordered, vs);
    return arr;
  }

  /// Builds from wiring data. Verticals receive abscissae m-1, ..., 0.
  static Arrangement from_wiring(const Wiring& w, std::vector<std::string> horizontal_labels = {}) {
    if (w.n < 1) throw Error(ErrorKind::MalformedWiring, "wiring needs at least one horizontal line");
    Arrangement arr;
    arr.wiring_ = w;
    if (horizontal_labels.empty())
      for (int i = 1; i <= w.n; ++i) horizontal_labels.push_back("l" + std::to_string(i));
    if (static_cast<int>(horizontal_labels.size()) != w.n) throw Error(ErrorKind::MalformedWiring, "horizontal label count differs from n");
    arr.horizontal_labels_ = std::move(horizontal_labels);
    std::set<std::string> seen(arr.horizontal_labels_.begin(), arr.horizontal_labels_.end());
    for (const auto& v : w.verticals) {
      if (v.blocks.n() != w.n) throw Error(ErrorKind::MalformedWiring, "partition of " + v.label + " does not cover 1..n");
      if (!seen.insert(v.label).second) throw Error(ErrorKind::DuplicateLine, "duplicate label " + v.label);
      arr.vertical_labels_.push_back(v.label);
    }
    if (seen.size() != arr.horizontal_labels_.size() + w.verticals.size()) throw Error(ErrorKind::DuplicateLine, "duplicate horizontal label");
    const long m = static_cast<long>(w.verticals.size());
    for (long i = 0; i < m; ++i) arr.abscissae_.push_back(Rational(m - 1 - i));
    arr.set_basepoints();
    arr.build_slot_lines();

    // Two real lines meet at most once.
    std::set<std::pair<int, int>> crossed;
    for (std::size_t v = 0; v < w.verticals.size(); ++v)
      for (auto [f, l] : w.verticals[v].blocks.blocks())
        for (int i = f; i <= l; ++i)
          for (int j = i + 1; j <= l; ++j) {
            int a = arr.slot_lines_[v][i - 1], b = arr.slot_lines_[v][j - 1];
            if (!crossed.insert({std::min(a, b), std::max(a, b)}).second)
              throw Error(ErrorKind::MalformedWiring, "lines " + arr.horizontal_labels_[a] + " and " + arr.horizontal_labels_[b] + " meet twice");
          }

    for (std::size_t v = 0; v < w.verticals.size(); ++v)
      for (auto [f, l] : w.verticals[v].blocks.blocks()) {
        SingularPoint sp;
        sp.vertical = v;
        sp.multiplicity = l - f + 2;
        for (int i = f; i <= l; ++i) sp.incident.push_back(arr.horizontal_labels_[arr.slot_lines_[v][i - 1]]);
        sp.incident.push_back(w.verticals[v].label);
        arr.singular_points_.push_back(std::move(sp));
      }
    return arr;
  }

  const Wiring& wiring() const { return wiring_; }
  int n() const { return wiring_.n; }
  std::size_t m() const { return wiring_.verticals.size(); }
  const std::vector<std::string>& horizontal_labels() const { return horizontal_labels_; }
  const std::vector<std::string>& vertical_labels() const { return vertical_labels_; }
  const std::optional<std::vector<Line>>& coords() const { return coords_; }
  const std::vector<SingularPoint>& singular_points() const { return singular_points_; }

  /// Abscissa of each vertical (synthetic for wiring-only arrangements).
  const std::vector<Rational>& abscissae() const { return abscissae_; }

  /// Slot k (0..m) is the fiber position between verticals k and k+1:
  /// slot 0 = x0 right of everything, slot m left of everything. The fiber
  /// x_p just right of vertical i (0-based) is slot i and x'_p is slot i+1.
  std::size_t slot_count() const { return slot_positions_.size(); }
  const Rational& slot_position(std::size_t k) const { return slot_positions_.at(k); }
  const Rational& x0() const { return slot_positions_[0]; }

  /// slot_lines(k)[pos] is the x0-index (0-based) of the line at position pos
  /// of the ordering by increasing y in slot k.
  const std::vector<int>& slot_lines(std::size_t k) const { return slot_lines_.at(k); }

  std::pair<Permutation, BlockPartition> local_permutation(std::size_t vertical) const {
    if (vertical >= m()) throw Error(ErrorKind::InvalidArgument, "vertical index out of range");
    const auto& bp = wiring_.verticals[vertical].blocks;
    return {bp.permutation(), bp};
  }

  /// sigma(x, x') between two slots.
  Permutation crossing_permutation(std::size_t from_slot, std::size_t to_slot) const {
    if (from_slot >= slot_count() || to_slot >= slot_count()) throw Error(ErrorKind::InvalidArgument, "slot out of range");
    Permutation p = identity_permutation(n());
    if (from_slot <= to_slot) {
      for (std::size_t v = from_slot; v < to_slot; ++v) p = compose(wiring_.verticals[v].blocks.permutation(), p);
    } else {
      for (std::size_t v = from_slot; v-- > to_slot;) p = compose(wiring_.verticals[v].blocks.permutation(), p);
    }
    return p;
  }

  /// Slot containing the fiber over x.
  std::size_t slot_of(const Rational& x) const {
    std::size_t k = 0;
    for (const auto& p : abscissae_) {
      if (p == x) throw Error(ErrorKind::BasepointCollision, "x = " + format_rational(x) + " is the projection of a singular point");
      if (p > x) ++k;
    }
    return k;
  }

  /// sigma(x, x') between two rational fibers, composed from the wiring.
  Permutation crossing_permutation(const Rational& x, const Rational& x_prime) const {
    return crossing_permutation(slot_of(x), slot_of(x_prime));
  }

  /// sigma(x, x') obtained by sorting y-values; requires coordinates.
  Permutation crossing_permutation_by_sorting(const Rational& x, const Rational& x_prime) const {
    if (!coords_) throw Error(ErrorKind::InvalidArgument, "arrangement has no coordinates");
    slot_of(x);
    slot_of(x_prime);
    auto from = coordinate_ordering(x), to = coordinate_ordering(x_prime);
    auto to_inv = inverse(to);
    Permutation p(from.size());
    for (std::size_t pos = 0; pos < from.size(); ++pos) p[pos] = to_inv[from[pos]];
    return p;
  }

  /// 1 - #lines + sum over singular points of (m(P) - 1).
  long euler_characteristic() const {
    long chi = 1 - static_cast<long>(n()) - static_cast<long>(m());
    for (const auto& sp : singular_points_) chi += sp.multiplicity - 1;
    return chi;
  }

 private:
  static void check_unique_labels(const std::vector<Line>& lines) {
    std::set<std::string> seen;
    for (const auto& l : lines)
      if (!seen.insert(l.label).second) throw Error(ErrorKind::DuplicateLine, "duplicate label " + l.label);
  }

  void set_basepoints() {
    slot_positions_.clear();
    if (abscissae_.empty()) {
      slot_positions_.push_back(Rational(0));
      return;
    }
    slot_positions_.push_back(abscissae_.front() + 1);
    for (std::size_t i = 0; i + 1 < abscissae_.size(); ++i) slot_positions_.push_back((abscissae_[i] + abscissae_[i + 1]) / 2);
    slot_positions_.push_back(abscissae_.back() - 1);
  }

  void build_slot_lines() {
    slot_lines_.assign(1, std::vector<int>(identity_permutation(n())));
    for (const auto& v : wiring_.verticals) {
      const auto& prev = slot_lines_.back();
      auto sigma = v.blocks.permutation();
      std::vector<int> next(prev.size());
      for (std::size_t k = 0; k < prev.size(); ++k) next[sigma[k]] = prev[k];
      slot_lines_.push_back(std::move(next));
    }
  }

  /// x0-indices of the horizontals sorted by y at x (x not singular).
  std::vector<int> coordinate_ordering(const Rational& x) const {
    std::vector<int> idx(n());
    for (int i = 0; i < n(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return (*coords_)[i].y_at(x) < (*coords_)[j].y_at(x); });
    return idx;
  }

  static std::vector<SingularPoint> geometric_singular_points(const std::vector<Line>& hs, const std::vector<Line>& vs) {
    std::vector<SingularPoint> out;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      std::map<Rational, std::vector<std::size_t>> by_y;
      for (std::size_t h = 0; h < hs.size(); ++h) by_y[hs[h].y_at(vs[v].p)].push_back(h);
      for (auto& [y, members] : by_y) {
        SingularPoint sp;
        sp.position = std::make_pair(vs[v].p, y);
        sp.vertical = v;
        sp.multiplicity = static_cast<int>(members.size()) + 1;
        for (auto h : members) sp.incident.push_back(hs[h].label);
        sp.incident.push_back(vs[v].label);
        out.push_back(std::move(sp));
      }
    }
    return out;
  }

  Wiring wiring_;
  std::vector<std::string> horizontal_labels_;
  std::vector<std::string> vertical_labels_;
  std::optional<std::vector<Line>> coords_;  // horizontals in x0 order, then verticals by decreasing abscissa
  std::vector<Rational> abscissae_;
  std::vector<Rational> slot_positions_;
  std::vector<std::vector<int>> slot_lines_;
  std::vector<SingularPoint> singular_points_;
};

/// Extracts a wiring from floating-point lines. Points closer than
/// tol * (1 + |coordinate|) are merged. Returns the wiring and the
/// horizontal labels in x0 order (verticals by decreasing abscissa).
inline std::pair<Wiring, std::vector<std::string>> extract_wiring(const std::vector<FloatLine>& lines, double tol = 1e-9) {
  std::vector<FloatLine> hs, vs;
  for (const auto& l : lines) (l.vertical ? vs : hs).push_back(l);
  if (hs.empty()) throw Error(ErrorKind::InvalidArgument, "at least one horizontal line is required");
  std::sort(vs.begin(), vs.end(), [](const FloatLine& x, const FloatLine& y) { return x.p > y.p; });
  auto close = [&](double x, double y) { return std::abs(x - y) <= tol * (1 + std::max(std::abs(x), std::abs(y))); };
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (close(vs[i].p, vs[i - 1].p)) throw Error(ErrorKind::DuplicateLine, "vertical lines " + vs[i - 1].label + " and " + vs[i].label + " coincide");
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (close(hs[i].a, hs[j].a)) {
        if (close(hs[i].b, hs[j].b)) throw Error(ErrorKind::DuplicateLine, "lines " + hs[i].label + " and " + hs[j].label + " coincide");
        continue;
      }
      double x = (hs[j].b - hs[i].b) / (hs[i].a - hs[j].a);
      bool on_vertical = std::any_of(vs.begin(), vs.end(), [&](const FloatLine& v) { return close(v.p, x); });
      if (!on_vertical) throw Error(ErrorKind::NotFibered, "lines " + hs[i].label + " and " + hs[j].label + " meet off the vertical lines at x = " + std::to_string(x));
    }
  double x0 = vs.empty() ? 0.0 : vs.front().p + 1.0;
  std::sort(hs.begin(), hs.end(), [&](const FloatLine& l1, const FloatLine& l2) { return l1.a * x0 + l1.b < l2.a * x0 + l2.b; });
  Wiring w;
  w.n = static_cast<int>(hs.size());
  for (const auto& v : vs) {
    std::vector<std::size_t> idx(hs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto y = [&](std::size_t i) { return hs[i].a * v.p + hs[i].b; };
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
      if (!close(y(i), y(j))) return y(i) < y(j);
      return hs[i].a < hs[j].a;
    });
    std::vector<int> sizes;
    for (std::size_t k = 0; k < idx.size();) {
      std::size_t e = k + 1;
      while (e < idx.size() && close(y(idx[e]), y(idx[k]))) ++e;
      sizes.push_back(static_cast<int>(e - k));
      k = e;
    }
    w.verticals.push_back({v.label, BlockPartition::from_sizes(sizes)});
  }
  std::vector<std::string> labels;
  for (const auto& h : hs) labels.push_back(h.label);
  return {w, labels};
}

}  // namespace arrmono
