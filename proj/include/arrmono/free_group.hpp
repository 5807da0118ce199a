#pragma once

#include <cstdlib>
#include <map>
#include <vector>

#include "arrmono/errors.hpp"
#include "arrmono/laurent.hpp"

namespace arrmono {

/// Word in the free group on a_1..a_n: letter +g is a_g, -g is a_g^-1.
class FreeGroupWord {
 public:
  FreeGroupWord() = default;
  explicit FreeGroupWord(std::vector<int> letters) {
    for (int l : letters) push(l);
  }

  static FreeGroupWord generator(int g) { return FreeGroupWord({g}); }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }

  FreeGroupWord inverse() const {
    FreeGroupWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(-*it);
    return out;
  }

  friend FreeGroupWord operator*(FreeGroupWord a, const FreeGroupWord& b) {
    for (int l : b.letters_) a.push(l);
    return a;
  }

  /// Replaces each generator g by images[g-1] (inverse letters by the inverse image).
  FreeGroupWord substitute(const std::vector<FreeGroupWord>& images) const {
    FreeGroupWord out;
    for (int l : letters_) {
      const auto& img = images.at(std::abs(l) - 1);
      if (l > 0) {
        for (int x : img.letters_) out.push(x);
      } else {
        for (auto it = img.letters_.rbegin(); it != img.letters_.rend(); ++it) out.push(-*it);
      }
    }
    return out;
  }

  friend bool operator==(const FreeGroupWord&, const FreeGroupWord&) = default;

 private:
  void push(int l) {
    if (l == 0) throw Error(ErrorKind::InvalidArgument, "generator index 0");
    if (!letters_.empty() && letters_.back() == -l) letters_.pop_back();
    else letters_.push_back(l);
  }
  std::vector<int> letters_;
};

inline FreeGroupWord commutator(const FreeGroupWord& a, const FreeGroupWord& b) { return a * b * a.inverse() * b.inverse(); }

/// Abelianized Fox derivatives of w: entry g-1 is phi(dw/da_g), where phi
/// sends a_g to the parameter valuation[g-1].
inline std::vector<LaurentPoly> fox_gradient(const FreeGroupWord& w, const std::vector<Param>& valuation) {
  const std::size_t n = valuation.size();
  std::vector<std::map<Exponents, BigInt>> acc(n);
  std::map<Param, int> prefix;
  auto prefix_exps = [&] {
    Exponents e;
    for (const auto& [p, x] : prefix)
      if (x != 0) e.emplace_back(p, x);
    return e;
  };
  for (int l : w.letters()) {
    const std::size_t g = static_cast<std::size_t>(std::abs(l)) - 1;
    if (g >= n) throw Error(ErrorKind::InvalidArgument, "generator outside valuation");
    if (l > 0) {
      acc[g][prefix_exps()] += 1;
      prefix[valuation[g]] += 1;
    } else {
      prefix[valuation[g]] -= 1;
      acc[g][prefix_exps()] -= 1;
    }
  }
  std::vector<LaurentPoly> out(n);
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<LaurentTerm> terms;
    for (auto& [e, c] : acc[g])
      if (c != 0) terms.push_back({c, e});
    out[g] = LaurentPoly::from_terms(terms);
  }
  return out;
}

}  // namespace arrmono
