#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond MetricSpace and Mapping.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "ghkit/metric_space.hpp"

namespace oracle {

using ghkit::Index;
using ghkit::Mapping;
using ghkit::MetricSpace;
using ghkit::PairList;

inline MetricSpace line(std::vector<double> coords) {
  const std::size_t n = coords.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(coords[i] - coords[j]);
  return MetricSpace(n, std::move(d));
}

inline MetricSpace two_point(double d) { return MetricSpace(2, {0.0, d, d, 0.0}); }

inline double dis(const PairList& r, const MetricSpace& X, const MetricSpace& Y) {
  double best = 0.0;
  for (auto [x, y] : r)
    for (auto [x2, y2] : r) best = std::max(best, std::abs(X(x, x2) - Y(y, y2)));
  return best;
}

inline PairList pairs_of(const Mapping& f) {
  PairList r;
  for (Index x = 0; x < f.domain_size(); ++x) r.emplace_back(x, f(x));
  return r;
}

/// Every relation R ⊂ X×Y with both projections onto, as sorted pair lists.
inline std::vector<PairList> all_correspondences(std::size_t n, std::size_t m) {
  std::vector<PairList> out;
  const std::size_t cells = n * m;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
    PairList r;
    std::vector<char> hx(n, 0), hy(m, 0);
    for (std::size_t c = 0; c < cells; ++c)
      if (mask >> c & 1) {
        r.emplace_back(c / m, c % m);
        hx[c / m] = hy[c % m] = 1;
      }
    if (std::count(hx.begin(), hx.end(), 1) == static_cast<long>(n) &&
        std::count(hy.begin(), hy.end(), 1) == static_cast<long>(m))
      out.push_back(std::move(r));
  }
  return out;
}

struct GHBrute {
  double value;
  PairList lex_min;  // smallest optimal pair list in vector order
};

inline GHBrute gh(const MetricSpace& X, const MetricSpace& Y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : all_correspondences(X.size(), Y.size())) best = std::min(best, dis(r, X, Y));
  std::optional<PairList> lex;
  for (const auto& r : all_correspondences(X.size(), Y.size()))
    if (dis(r, X, Y) <= best && (!lex || r < *lex)) lex = r;
  return {0.5 * best, *lex};
}

/// All maps {0..n-1} -> {0..m-1}.
inline std::vector<Mapping> all_maps(std::size_t n, std::size_t m) {
  std::vector<Mapping> out;
  std::vector<Index> img(n, 0);
  while (true) {
    out.emplace_back(m, img);
    std::size_t k = 0;
    while (k < n && ++img[k] == m) img[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline std::vector<Mapping> all_bijections(std::size_t n) {
  std::vector<Mapping> out;
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), Index{0});
  do out.emplace_back(n, p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline double codis(const Mapping& f, const Mapping& g, const MetricSpace& X,
                    const MetricSpace& Y) {
  double best = 0.0;
  for (Index x = 0; x < X.size(); ++x)
    for (Index y = 0; y < Y.size(); ++y) best = std::max(best, std::abs(X(x, g(y)) - Y(f(x), y)));
  return best;
}

inline double map_dis(const Mapping& f, const MetricSpace& X, const MetricSpace& Y) {
  return dis(pairs_of(f), X, Y);
}

/// ½ min over the given families of max(dis f, codis, dis g) (or without
/// codis when modified).
inline double pair_min(const std::vector<Mapping>& fs, const std::vector<Mapping>& gs,
                       const MetricSpace& X, const MetricSpace& Y, bool modified) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : fs)
    for (const auto& g : gs) {
      double v = std::max(map_dis(f, X, Y), map_dis(g, Y, X));
      if (!modified) v = std::max(v, codis(f, g, X, Y));
      best = std::min(best, v);
    }
  return 0.5 * best;
}

inline double inverse_pair(const MetricSpace& X, const MetricSpace& Y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : all_bijections(X.size())) best = std::min(best, map_dis(f, X, Y));
  return 0.5 * best;
}

inline double hausdorff_sets(const MetricSpace& m, const std::vector<Index>& a,
                             const std::vector<Index>& b) {
  auto directed = [&](const std::vector<Index>& p, const std::vector<Index>& q) {
    double worst = 0.0;
    for (Index i : p) {
      double near = std::numeric_limits<double>::infinity();
      for (Index j : q) near = std::min(near, m(i, j));
      worst = std::max(worst, near);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace oracle
