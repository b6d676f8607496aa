#pragma once

// Distortion functionals of maps, relations and map pairs. Every functional
// is an exact max over finitely many terms; no tolerance is applied here.

#include <algorithm>
#include <cmath>

#include "ghkit/metric_space.hpp"

namespace ghkit {

/// One-sided distortions. For a map f: minus = max(|xx'| - |f(x)f(x')|),
/// plus = max(|f(x)f(x')| - |xx'|). For a pair (f, g): minus =
/// max(|x g(y)| - |f(x) y|), plus = max(|f(x) y| - |x g(y)|).
struct OneSided {
  double minus = 0.0;
  double plus = 0.0;

  double max() const noexcept { return std::max(minus, plus); }

  friend bool operator==(const OneSided&, const OneSided&) = default;
};

/// dis R over an arbitrary nonempty pair list.
inline double dis_rel(const PairList& r, const MetricSpace& X, const MetricSpace& Y) {
  if (r.empty()) throw DomainError("distortion of an empty relation");
  for (auto [x, y] : r)
    if (x >= X.size() || y >= Y.size()) throw DomainError("relation index out of range");
  double best = 0.0;
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = a + 1; b < r.size(); ++b)
      best = std::max(best, std::abs(X(r[a].first, r[b].first) - Y(r[a].second, r[b].second)));
  return best;
}

inline double dis_rel(const Correspondence& r, const MetricSpace& X, const MetricSpace& Y) {
  return dis_rel(r.pairs(), X, Y);
}

/// codis(R, R') = max over (x,y) in R, (x',y') in R' of ||xx'| - |yy'||.
inline double codis_rels(const PairList& r, const PairList& rp, const MetricSpace& X,
                         const MetricSpace& Y) {
  if (r.empty() || rp.empty()) throw DomainError("co-distortion of an empty relation");
  for (const auto* rel : {&r, &rp})
    for (auto [x, y] : *rel)
      if (x >= X.size() || y >= Y.size()) throw DomainError("relation index out of range");
  double best = 0.0;
  for (auto [x, y] : r)
    for (auto [xp, yp] : rp) best = std::max(best, std::abs(X(x, xp) - Y(y, yp)));
  return best;
}

inline OneSided one_sided_map(const Mapping& f, const MetricSpace& X, const MetricSpace& Y) {
  require_maps(f, X.size(), Y.size(), "f");
  OneSided s;
  const std::size_t n = X.size();
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      const double diff = Y(f(a), f(b)) - X(a, b);
      s.plus = std::max(s.plus, diff);
      s.minus = std::max(s.minus, -diff);
    }
  }
  return s;
}

inline double dis_map(const Mapping& f, const MetricSpace& X, const MetricSpace& Y) {
  return one_sided_map(f, X, Y).max();
}

/// One-sided co-distortions of f: X -> Y against g: Y -> X. Swapping the
/// arguments swaps plus and minus.
inline OneSided one_sided_pair(const Mapping& f, const Mapping& g, const MetricSpace& X,
                               const MetricSpace& Y) {
  require_maps(f, X.size(), Y.size(), "f");
  require_maps(g, Y.size(), X.size(), "g");
  OneSided s{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Index x = 0; x < X.size(); ++x) {
    for (Index y = 0; y < Y.size(); ++y) {
      const double diff = Y(f(x), y) - X(x, g(y));
      s.plus = std::max(s.plus, diff);
      s.minus = std::max(s.minus, -diff);
    }
  }
  return s;
}

inline double codis_maps(const Mapping& f, const Mapping& g, const MetricSpace& X,
                         const MetricSpace& Y) {
  return one_sided_pair(f, g, X, Y).max();
}

/// Everything the pair form of the GH distance needs for one (f, g).
struct PairScore {
  OneSided f;    // d_f^-, d_f^+
  OneSided g;    // d_g^-, d_g^+
  OneSided fg;   // d_(f,g)^-, d_(f,g)^+
  double dis_f = 0.0;
  double dis_g = 0.0;
  double codis = 0.0;
  double gh_pair = 0.0;   // ½ max(dis f, codis, dis g)
  double mgh_pair = 0.0;  // ½ max(dis f, dis g)
};

inline PairScore gh_pair(const Mapping& f, const Mapping& g, const MetricSpace& X,
                         const MetricSpace& Y) {
  PairScore s;
  s.f = one_sided_map(f, X, Y);
  s.g = one_sided_map(g, Y, X);
  s.fg = one_sided_pair(f, g, X, Y);
  s.dis_f = s.f.max();
  s.dis_g = s.g.max();
  s.codis = s.fg.max();
  s.gh_pair = 0.5 * std::max({s.dis_f, s.codis, s.dis_g});
  s.mgh_pair = 0.5 * std::max(s.dis_f, s.dis_g);
  return s;
}

}  // namespace ghkit
