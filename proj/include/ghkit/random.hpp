#pragma once

// Seeded generators for spaces, maps and grid instances used by the
// property tests and the self-test suite.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "ghkit/io.hpp"
#include "ghkit/metric_space.hpp"

namespace ghkit::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Points with small integer coordinates; integer data produces many exact
/// distance ties, which exercises tie-breaking.
inline io::PointCloud integer_cloud(Rng& rng, std::size_t n, std::size_t dim, int range,
                                    io::Norm norm) {
  io::PointCloud pc{dim, norm, {}};
  std::uniform_int_distribution<int> coord(0, range);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (auto& c : p) c = coord(rng);
    pc.points.push_back(std::move(p));
  }
  return pc;
}

inline io::PointCloud real_cloud(Rng& rng, std::size_t n, std::size_t dim, io::Norm norm) {
  io::PointCloud pc{dim, norm, {}};
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (auto& c : p) c = coord(rng);
    pc.points.push_back(std::move(p));
  }
  return pc;
}

/// Shortest-path metric of a complete graph with random edge weights; gives
/// metrics that are not embedded in any normed space.
inline MetricSpace graph_metric(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> w(0.5, 3.0);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  return MetricSpace(n, std::move(d));
}

/// A random finite metric space of the given size, drawn from a mix of
/// integer lattice points, real point clouds and graph metrics.
inline MetricSpace random_space(Rng& rng, std::size_t n) {
  switch (uniform_size(rng, 0, 3)) {
    case 0: return io::induced_metric(integer_cloud(rng, n, 1, 6, io::Norm::l1));
    case 1: return io::induced_metric(integer_cloud(rng, n, 2, 4, io::Norm::linf));
    case 2: return io::induced_metric(real_cloud(rng, n, 2, io::Norm::l2));
    default: return graph_metric(rng, n);
  }
}

inline Mapping random_mapping(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<Index> img(n);
  for (auto& v : img) v = uniform_size(rng, 0, m - 1);
  return Mapping(m, std::move(img));
}

inline Mapping random_bijection(Rng& rng, std::size_t n) {
  std::vector<Index> img(n);
  std::iota(img.begin(), img.end(), Index{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Mapping(n, std::move(img));
}

inline std::vector<Index> random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

/// n distinct cells of a (side × side) grid in `dim` dimensions (1 or 2),
/// with the given grid step, under the l2 norm.
inline io::PointCloud grid_subset(Rng& rng, std::size_t n, std::size_t dim, std::size_t side,
                                  double step) {
  const std::size_t cells = dim == 1 ? side : side * side;
  auto picked = random_subset(rng, cells, n);
  io::PointCloud pc{dim, io::Norm::l2, {}};
  for (Index c : picked) {
    if (dim == 1)
      pc.points.push_back({step * static_cast<double>(c)});
    else
      pc.points.push_back({step * static_cast<double>(c % side), step * static_cast<double>(c / side)});
  }
  return pc;
}

/// Nearest-point map from cloud a to cloud b (least index on ties), with
/// `kicks` random points sent to a random near neighbour of their target.
inline Mapping near_isometry(Rng& rng, const io::PointCloud& a, const io::PointCloud& b,
                             std::size_t kicks, double kick_radius) {
  std::vector<Index> img(a.points.size());
  for (Index i = 0; i < a.points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < b.points.size(); ++j) {
      const double d = io::norm_distance(a.points[i], b.points[j], b.norm);
      if (d < best) {
        best = d;
        img[i] = j;
      }
    }
  }
  for (std::size_t k = 0; k < kicks; ++k) {
    const Index i = uniform_size(rng, 0, a.points.size() - 1);
    std::vector<Index> near;
    for (Index j = 0; j < b.points.size(); ++j)
      if (io::norm_distance(b.points[img[i]], b.points[j], b.norm) <= kick_radius) near.push_back(j);
    img[i] = near[uniform_size(rng, 0, near.size() - 1)];
  }
  return Mapping(b.points.size(), std::move(img));
}

}  // namespace ghkit::gen
