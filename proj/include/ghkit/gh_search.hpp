#pragma once

// Exact Gromov-Hausdorff distance on small finite spaces.
//
// Every solver runs in two phases. Phase one finds the optimal value with a
// branch-and-bound whose top-level subtrees are independent (each starts from
// the same deterministic incumbent), so the value and the node count do not
// depend on how many threads evaluate those subtrees. Phase two fixes the
// optimal value as a threshold and walks the space in lexicographic order;
// the first feasible object found is the lexicographically smallest optimum.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ghkit/distortion.hpp"
#include "ghkit/error.hpp"
#include "ghkit/metric_space.hpp"

namespace ghkit {

enum class SearchMethod { brute_force, branch_and_bound };

inline const char* to_string(SearchMethod m) {
  return m == SearchMethod::brute_force ? "bruteForce" : "branchAndBound";
}

enum class ClassTag { any, injective, surjective, bijective, inverse_pair };

inline const char* to_string(ClassTag t) {
  switch (t) {
    case ClassTag::any: return "any";
    case ClassTag::injective: return "injective";
    case ClassTag::surjective: return "surjective";
    case ClassTag::bijective: return "bijective";
    case ClassTag::inverse_pair: return "inversePair";
  }
  return "?";
}

inline ClassTag parse_class_tag(const std::string& s) {
  for (auto t : {ClassTag::any, ClassTag::injective, ClassTag::surjective, ClassTag::bijective,
                 ClassTag::inverse_pair})
    if (s == to_string(t)) return t;
  throw DomainError("unknown class tag '" + s + "'");
}

struct SearchOptions {
  std::size_t correspondence_cap = 8;      // max |X|, |Y| for correspondence search
  std::size_t permutation_cap = 12;        // max n for the bijection search
  std::uint64_t brute_force_cap = 1000000; // max number of mapping pairs enumerated
  unsigned threads = 1;                    // workers for independent top-level subtrees
};

struct GHResult {
  double value = 0.0;
  SearchMethod method = SearchMethod::branch_and_bound;
  std::uint64_t nodes = 0;
  std::optional<Correspondence> correspondence;
  std::optional<Mapping> f;
  std::optional<Mapping> g;
};

/// ½|diam X - diam Y|, a lower bound for d_GH.
inline double gh_lower_bound(const MetricSpace& X, const MetricSpace& Y) {
  return 0.5 * std::abs(X.diameter() - Y.diameter());
}

namespace detail {

/// Runs `count` independent jobs on up to `threads` workers.
template <typename Job>
void run_subtrees(std::size_t count, unsigned threads, Job&& job) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  }
}

/// Points sorted by decreasing eccentricity, ties by index.
inline std::vector<Index> eccentricity_order(const MetricSpace& m) {
  std::vector<Index> order(m.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return m.eccentricity(a) > m.eccentricity(b);
  });
  return order;
}

/// Shared bookkeeping for searches that grow a list of (x, y) pairs.
class PairStack {
 public:
  PairStack(const MetricSpace& X, const MetricSpace& Y) : X_(X), Y_(Y) {}

  /// max over stacked pairs of ||x x'| - |y y'||; 0 for an empty stack.
  double cost(Index x, Index y) const noexcept {
    double c = 0.0;
    for (std::size_t k = 0; k < xs_.size(); ++k)
      c = std::max(c, std::abs(X_(x, xs_[k]) - Y_(y, ys_[k])));
    return c;
  }

  /// Same as cost but stops as soon as the running max exceeds `limit`.
  bool cost_within(Index x, Index y, double limit) const noexcept {
    for (std::size_t k = 0; k < xs_.size(); ++k)
      if (std::abs(X_(x, xs_[k]) - Y_(y, ys_[k])) > limit) return false;
    return true;
  }

  void push(Index x, Index y) {
    xs_.push_back(x);
    ys_.push_back(y);
  }
  void pop() {
    xs_.pop_back();
    ys_.pop_back();
  }
  std::size_t size() const noexcept { return xs_.size(); }
  Index x_at(std::size_t k) const noexcept { return xs_[k]; }
  Index y_at(std::size_t k) const noexcept { return ys_[k]; }

 private:
  const MetricSpace& X_;
  const MetricSpace& Y_;
  std::vector<Index> xs_, ys_;
};

// ---------------------------------------------------------------------------
// Correspondences

/// Phase one: minimal dis over correspondences of the form gr f ∪ {one
/// partner for every y outside f(X)}; every correspondence contains one of
/// these, so the minimum over them is the minimum over all correspondences.
class CorrespondenceBnB {
 public:
  CorrespondenceBnB(const MetricSpace& X, const MetricSpace& Y, double incumbent,
                    double lower_bound)
      : X_(X), Y_(Y), order_x_(eccentricity_order(X)), order_y_(eccentricity_order(Y)),
        stack_(X, Y), covered_(Y.size(), 0), best_(incumbent), lower_(lower_bound) {}

  /// Explores the subtree whose first x (in search order) maps to y0.
  void run_subtree(Index y0) {
    const Index x0 = order_x_[0];
    ++nodes_;
    if (0.0 >= best_) return;
    push_f(x0, y0);
    descend_f(1, 0.0);
    pop_f(y0);
  }

  /// Greedy descent: cheapest choice at every slot, no backtracking.
  double greedy() {
    double current = 0.0;
    std::vector<Index> pushed_y;
    for (Index x : order_x_) {
      Index arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (Index y = 0; y < Y_.size(); ++y) {
        const double c = stack_.cost(x, y);
        if (c < best) {
          best = c;
          arg = y;
        }
      }
      current = std::max(current, best);
      push_f(x, arg);
      pushed_y.push_back(arg);
    }
    std::size_t extra = 0;
    for (Index y : order_y_) {
      if (covered_[y]) continue;
      Index arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (Index x = 0; x < X_.size(); ++x) {
        const double c = stack_.cost(x, y);
        if (c < best) {
          best = c;
          arg = x;
        }
      }
      current = std::max(current, best);
      stack_.push(arg, y);
      ++extra;
    }
    for (std::size_t k = 0; k < extra; ++k) stack_.pop();
    for (auto it = pushed_y.rbegin(); it != pushed_y.rend(); ++it) pop_f(*it);
    return current;
  }

  double best() const noexcept { return best_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void push_f(Index x, Index y) {
    stack_.push(x, y);
    ++covered_[y];
  }
  void pop_f(Index y) {
    stack_.pop();
    --covered_[y];
  }

  bool done() const noexcept { return best_ <= lower_; }

  // Every remaining x still needs some y whose cost stays below the incumbent.
  bool forward_ok_f(std::size_t slot) const {
    for (std::size_t s = slot; s < order_x_.size(); ++s) {
      const Index x = order_x_[s];
      bool any = false;
      for (Index y = 0; y < Y_.size() && !any; ++y) any = stack_.cost(x, y) < best_;
      if (!any) return false;
    }
    return true;
  }

  void descend_f(std::size_t slot, double current) {
    if (done()) return;
    if (slot == order_x_.size()) {
      descend_g(current);
      return;
    }
    if (!forward_ok_f(slot)) return;
    const Index x = order_x_[slot];
    std::vector<std::pair<double, Index>> cand;
    cand.reserve(Y_.size());
    for (Index y = 0; y < Y_.size(); ++y) {
      const double c = std::max(current, stack_.cost(x, y));
      if (c < best_) cand.emplace_back(c, y);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto [c, y] : cand) {
      if (c >= best_ || done()) break;
      ++nodes_;
      push_f(x, y);
      descend_f(slot + 1, c);
      pop_f(y);
    }
  }

  void descend_g(double current) {
    if (done()) return;
    Index y = kNoIndex;
    for (Index cand : order_y_) {
      if (!covered_[cand]) {
        y = cand;
        break;
      }
    }
    if (y == kNoIndex) {
      if (current < best_) best_ = current;
      return;
    }
    for (Index other : order_y_) {
      if (covered_[other]) continue;
      bool any = false;
      for (Index x = 0; x < X_.size() && !any; ++x) any = stack_.cost(x, other) < best_;
      if (!any) return;
    }
    std::vector<std::pair<double, Index>> cand;
    for (Index x = 0; x < X_.size(); ++x) {
      const double c = std::max(current, stack_.cost(x, y));
      if (c < best_) cand.emplace_back(c, x);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto [c, x] : cand) {
      if (c >= best_ || done()) break;
      ++nodes_;
      stack_.push(x, y);
      ++covered_[y];
      descend_g(c);
      --covered_[y];
      stack_.pop();
    }
  }

  const MetricSpace& X_;
  const MetricSpace& Y_;
  std::vector<Index> order_x_, order_y_;
  PairStack stack_;
  std::vector<int> covered_;
  double best_;
  double lower_;
  std::uint64_t nodes_ = 0;
};

/// Phase two: the lexicographically smallest sorted pair list with dis <= t.
///
/// A sorted pair list is the concatenation of its rows (row x = sorted y's
/// related to x). Comparing two lists therefore compares rows in order; inside
/// a row that is not the last, a strict extension of a row sorts before the
/// row itself (the extension's next pair beats the following row's first
/// pair), while in the last row the shorter prefix wins.
class LexCorrespondence {
 public:
  LexCorrespondence(const MetricSpace& X, const MetricSpace& Y, double threshold)
      : X_(X), Y_(Y), t_(threshold), stack_(X, Y), covered_(Y.size(), 0) {}

  std::optional<PairList> run() {
    if (row(0)) return result_;
    return std::nullopt;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool row(Index x) {
    if (x == X_.size()) {
      for (int c : covered_)
        if (!c) return false;
      result_.clear();
      for (std::size_t k = 0; k < stack_.size(); ++k)
        result_.emplace_back(stack_.x_at(k), stack_.y_at(k));
      return true;
    }
    std::vector<Index> cand;
    for (Index y = 0; y < Y_.size(); ++y)
      if (stack_.cost_within(x, y, t_)) cand.push_back(y);
    std::vector<Index> chosen;
    return subsets(x, cand, 0, chosen, x + 1 == X_.size());
  }

  bool subsets(Index x, const std::vector<Index>& cand, std::size_t start,
               std::vector<Index>& chosen, bool last_row) {
    for (std::size_t i = start; i < cand.size(); ++i) {
      const Index y = cand[i];
      bool fits = true;
      for (Index other : chosen)
        if (Y_(y, other) > t_) {
          fits = false;
          break;
        }
      if (!fits) continue;
      chosen.push_back(y);
      if (last_row) {
        if (visit(x, chosen) || subsets(x, cand, i + 1, chosen, last_row)) return true;
      } else {
        if (subsets(x, cand, i + 1, chosen, last_row) || visit(x, chosen)) return true;
      }
      chosen.pop_back();
    }
    return false;
  }

  bool visit(Index x, const std::vector<Index>& chosen) {
    ++nodes_;
    for (Index y : chosen) {
      stack_.push(x, y);
      ++covered_[y];
    }
    bool found = coverable(x + 1) && row(x + 1);
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
      stack_.pop();
      --covered_[*it];
    }
    return found;
  }

  // Each uncovered y must still be reachable from some later row.
  bool coverable(Index first_free_row) const {
    for (Index y = 0; y < Y_.size(); ++y) {
      if (covered_[y]) continue;
      bool any = false;
      for (Index x = first_free_row; x < X_.size() && !any; ++x)
        any = stack_.cost_within(x, y, t_);
      if (!any) return false;
    }
    return true;
  }

  const MetricSpace& X_;
  const MetricSpace& Y_;
  double t_;
  PairStack stack_;
  std::vector<int> covered_;
  PairList result_;
  std::uint64_t nodes_ = 0;
};

// ---------------------------------------------------------------------------
// Constrained maps

enum class MapClass { any, injective, surjective, bijective };

inline bool class_feasible(MapClass c, std::size_t n, std::size_t m) {
  switch (c) {
    case MapClass::any: return true;
    case MapClass::injective: return n <= m;
    case MapClass::surjective: return n >= m;
    case MapClass::bijective: return n == m;
  }
  return false;
}

inline bool needs_injective(MapClass c) {
  return c == MapClass::injective || c == MapClass::bijective;
}
inline bool needs_surjective(MapClass c) {
  return c == MapClass::surjective || c == MapClass::bijective;
}

/// Minimal dis f over maps X -> Y in a class (bottleneck assignment for
/// bijections), plus the lexicographically smallest optimal image array.
class MapSearch {
 public:
  MapSearch(const MetricSpace& X, const MetricSpace& Y, MapClass cls)
      : X_(X), Y_(Y), cls_(cls), order_(eccentricity_order(X)), stack_(X, Y),
        used_(Y.size(), 0), image_(X.size(), kNoIndex) {}

  void set_incumbent(double v) { best_ = v; }
  double best() const noexcept { return best_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

  /// Greedy feasible map following the search order, or +inf if it dead-ends.
  double greedy() {
    double current = 0.0;
    std::vector<Index> pushed;
    bool ok = true;
    for (std::size_t slot = 0; slot < order_.size(); ++slot) {
      const Index x = order_[slot];
      Index arg = kNoIndex;
      double best = std::numeric_limits<double>::infinity();
      for (Index y = 0; y < Y_.size(); ++y) {
        if (!allowed(y, slot)) continue;
        const double c = stack_.cost(x, y);
        if (c < best) {
          best = c;
          arg = y;
        }
      }
      if (arg == kNoIndex) {
        ok = false;
        break;
      }
      current = std::max(current, best);
      assign(x, arg);
      pushed.push_back(x);
    }
    for (auto it = pushed.rbegin(); it != pushed.rend(); ++it) unassign(*it);
    return ok ? current : std::numeric_limits<double>::infinity();
  }

  void run_subtree(Index y0) {
    ++nodes_;
    if (!allowed(y0, 0)) return;
    const Index x0 = order_[0];
    if (0.0 >= best_) return;
    assign(x0, y0);
    descend(1, 0.0);
    unassign(x0);
  }

  /// Phase two: lexicographically smallest image array with dis <= t.
  std::optional<std::vector<Index>> lex_min(double t) {
    threshold_ = t;
    std::optional<std::vector<Index>> out;
    if (lex(0)) out = image_copy_;
    return out;
  }

 private:
  std::size_t uncovered() const noexcept { return Y_.size() - distinct_; }

  bool allowed(Index y, std::size_t slot) const noexcept {
    if (needs_injective(cls_) && used_[y]) return false;
    if (needs_surjective(cls_)) {
      const std::size_t remaining_after = X_.size() - slot - 1;
      const std::size_t left = uncovered() - (used_[y] ? 0 : 1);
      if (left > remaining_after) return false;
    }
    return true;
  }

  void assign(Index x, Index y) {
    stack_.push(x, y);
    if (used_[y]++ == 0) ++distinct_;
    image_[x] = y;
  }
  void unassign(Index x) {
    const Index y = image_[x];
    stack_.pop();
    if (--used_[y] == 0) --distinct_;
    image_[x] = kNoIndex;
  }

  bool forward_ok(std::size_t slot) const {
    for (std::size_t s = slot; s < order_.size(); ++s) {
      const Index x = order_[s];
      bool any = false;
      for (Index y = 0; y < Y_.size() && !any; ++y)
        any = !(needs_injective(cls_) && used_[y]) && stack_.cost(x, y) < best_;
      if (!any) return false;
    }
    return true;
  }

  void descend(std::size_t slot, double current) {
    if (slot == order_.size()) {
      if (current < best_) best_ = current;
      return;
    }
    if (!forward_ok(slot)) return;
    const Index x = order_[slot];
    std::vector<std::pair<double, Index>> cand;
    for (Index y = 0; y < Y_.size(); ++y) {
      if (!allowed(y, slot)) continue;
      const double c = std::max(current, stack_.cost(x, y));
      if (c < best_) cand.emplace_back(c, y);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto [c, y] : cand) {
      if (c >= best_) break;
      ++nodes_;
      assign(x, y);
      descend(slot + 1, c);
      unassign(x);
    }
  }

  bool lex(Index x) {
    if (x == X_.size()) {
      image_copy_ = image_;
      return true;
    }
    for (Index y = 0; y < Y_.size(); ++y) {
      if (!allowed(y, x)) continue;
      if (!stack_.cost_within(x, y, threshold_)) continue;
      ++nodes_;
      assign(x, y);
      bool found = lex_forward_ok(x + 1) && lex(x + 1);
      unassign(x);
      if (found) return true;
    }
    return false;
  }

  bool lex_forward_ok(Index from) const {
    for (Index x = from; x < X_.size(); ++x) {
      bool any = false;
      for (Index y = 0; y < Y_.size() && !any; ++y)
        any = !(needs_injective(cls_) && used_[y]) && stack_.cost_within(x, y, threshold_);
      if (!any) return false;
    }
    return true;
  }

  const MetricSpace& X_;
  const MetricSpace& Y_;
  MapClass cls_;
  std::vector<Index> order_;
  PairStack stack_;
  std::vector<int> used_;
  std::size_t distinct_ = 0;
  std::vector<Index> image_;
  std::vector<Index> image_copy_;
  double best_ = std::numeric_limits<double>::infinity();
  double threshold_ = 0.0;
  std::uint64_t nodes_ = 0;
};

struct MapSearchResult {
  double dis = 0.0;
  Mapping witness;
  std::uint64_t nodes = 0;
};

inline MapSearchResult min_distortion_map(const MetricSpace& X, const MetricSpace& Y,
                                          MapClass cls, unsigned threads) {
  if (!class_feasible(cls, X.size(), Y.size()))
    throw DomainError("no map of the requested class exists between these sizes");
  MapSearch probe(X, Y, cls);
  const double start = probe.greedy();
  std::vector<double> best(Y.size(), start);
  std::vector<std::uint64_t> nodes(Y.size(), 0);
  run_subtrees(Y.size(), threads, [&](std::size_t y0) {
    MapSearch s(X, Y, cls);
    s.set_incumbent(start);
    s.run_subtree(y0);
    best[y0] = s.best();
    nodes[y0] = s.nodes();
  });
  const double value = *std::min_element(best.begin(), best.end());
  MapSearch lex(X, Y, cls);
  auto img = lex.lex_min(value);
  if (!img) throw std::logic_error("lexicographic phase found no map at the optimal value");
  std::uint64_t total = lex.nodes();
  for (auto n : nodes) total += n;
  return {value, Mapping(Y.size(), std::move(*img)), total};
}

/// All maps X -> Y of a class in lexicographic order of their image arrays.
inline std::vector<Mapping> enumerate_maps(std::size_t n, std::size_t m, MapClass cls) {
  std::vector<Mapping> out;
  std::vector<Index> img(n, 0);
  while (true) {
    Mapping f(m, img);
    const bool keep = (!needs_injective(cls) || f.is_injective()) &&
                      (!needs_surjective(cls) || f.is_surjective());
    if (keep) out.push_back(std::move(f));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++img[k] < m) break;
      img[k] = 0;
      if (k == 0) return out;
    }
  }
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > limit / std::max<std::uint64_t>(base, 1)) return limit + 1;
    r *= base;
  }
  return r;
}

/// min over (f, g) in Fx × Fy of gh_pair, lexicographically smallest witness.
inline GHResult brute_force_pairs(const MetricSpace& X, const MetricSpace& Y,
                                  const std::vector<Mapping>& fs,
                                  const std::vector<Mapping>& gs) {
  if (fs.empty() || gs.empty()) throw DomainError("empty mapping family");
  std::vector<double> dis_f(fs.size()), dis_g(gs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) dis_f[i] = dis_map(fs[i], X, Y);
  for (std::size_t j = 0; j < gs.size(); ++j) dis_g[j] = dis_map(gs[j], Y, X);
  double best = std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 0;
  std::uint64_t nodes = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    for (std::size_t j = 0; j < gs.size(); ++j) {
      ++nodes;
      double v = std::max(dis_f[i], dis_g[j]);
      if (v >= best) continue;
      const auto& g = gs[j];
      for (Index x = 0; x < X.size() && v < best; ++x)
        for (Index y = 0; y < Y.size() && v < best; ++y)
          v = std::max(v, std::abs(Y(f(x), y) - X(x, g(y))));
      if (v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  GHResult r;
  r.value = 0.5 * best;
  r.method = SearchMethod::brute_force;
  r.nodes = nodes;
  r.f = fs[bi];
  r.g = gs[bj];
  return r;
}

}  // namespace detail

/// d_GH as ½ min over correspondences of dis R.
inline GHResult gh_exact(const MetricSpace& X, const MetricSpace& Y,
                         const SearchOptions& opts = {}) {
  const std::size_t cap = opts.correspondence_cap;
  if (X.size() > cap || Y.size() > cap)
    throw CapacityError("correspondence search is capped at " + std::to_string(cap) +
                        " points per space (got " + std::to_string(X.size()) + " and " +
                        std::to_string(Y.size()) + ")");
  const double lower = std::abs(X.diameter() - Y.diameter());
  detail::CorrespondenceBnB probe(X, Y, std::numeric_limits<double>::infinity(), lower);
  // X × Y is always a correspondence with dis = max(diam X, diam Y).
  const double start = std::min(probe.greedy(), std::max(X.diameter(), Y.diameter()));
  std::vector<double> best(Y.size(), start);
  std::vector<std::uint64_t> nodes(Y.size(), 0);
  detail::run_subtrees(Y.size(), opts.threads, [&](std::size_t y0) {
    detail::CorrespondenceBnB s(X, Y, start, lower);
    s.run_subtree(y0);
    best[y0] = s.best();
    nodes[y0] = s.nodes();
  });
  const double dis = *std::min_element(best.begin(), best.end());
  detail::LexCorrespondence lex(X, Y, dis);
  auto pairs = lex.run();
  if (!pairs) throw std::logic_error("lexicographic phase found no correspondence");
  GHResult r;
  r.value = 0.5 * dis;
  r.method = SearchMethod::branch_and_bound;
  r.nodes = lex.nodes();
  for (auto n : nodes) r.nodes += n;
  r.correspondence = Correspondence(X.size(), Y.size(), std::move(*pairs));
  return r;
}

/// d_GH as min over all map pairs (f, g) of ½ max(dis f, codis(f,g), dis g),
/// by exhaustive enumeration.
inline GHResult gh_pair_inf(const MetricSpace& X, const MetricSpace& Y,
                            const SearchOptions& opts = {}) {
  const auto cap = opts.brute_force_cap;
  const auto nf = detail::saturating_pow(Y.size(), X.size(), cap);
  const auto ng = detail::saturating_pow(X.size(), Y.size(), cap);
  if (nf > cap || ng > cap || nf * ng > cap)
    throw CapacityError("pair enumeration exceeds the brute-force cap of " +
                        std::to_string(cap) + " mapping pairs");
  auto fs = detail::enumerate_maps(X.size(), Y.size(), detail::MapClass::any);
  auto gs = detail::enumerate_maps(Y.size(), X.size(), detail::MapClass::any);
  return detail::brute_force_pairs(X, Y, fs, gs);
}

/// Class-restricted (modified) GH distance.
///
/// Modified variants of product families factor into two independent
/// constrained minimizations. The inverse-pair family reduces to a bottleneck
/// search over bijections. Remaining plain variants enumerate the family.
inline GHResult gh_class(const MetricSpace& X, const MetricSpace& Y, ClassTag tag,
                         bool modified, const SearchOptions& opts = {}) {
  using detail::MapClass;
  if (tag != ClassTag::any && X.size() != Y.size())
    throw DomainError(std::string("class '") + to_string(tag) +
                      "' needs spaces of equal size (got " + std::to_string(X.size()) + " and " +
                      std::to_string(Y.size()) + ")");

  if (tag == ClassTag::inverse_pair) {
    if (X.size() > opts.permutation_cap)
      throw CapacityError("bijection search is capped at " +
                          std::to_string(opts.permutation_cap) + " points");
    auto s = detail::min_distortion_map(X, Y, MapClass::bijective, opts.threads);
    GHResult r;
    r.value = 0.5 * s.dis;
    r.method = SearchMethod::branch_and_bound;
    r.nodes = s.nodes;
    r.g = s.witness.inverse();
    r.f = std::move(s.witness);
    return r;
  }

  const MapClass cls = tag == ClassTag::any          ? MapClass::any
                       : tag == ClassTag::injective  ? MapClass::injective
                       : tag == ClassTag::surjective ? MapClass::surjective
                                                     : MapClass::bijective;
  if (modified) {
    const std::size_t cap = opts.correspondence_cap;
    if (cls != MapClass::any && X.size() > opts.permutation_cap)
      throw CapacityError("bijection search is capped at " +
                          std::to_string(opts.permutation_cap) + " points");
    if (cls == MapClass::any && (X.size() > cap || Y.size() > cap))
      throw CapacityError("map search is capped at " + std::to_string(cap) + " points");
    auto sf = detail::min_distortion_map(X, Y, cls, opts.threads);
    auto sg = detail::min_distortion_map(Y, X, cls, opts.threads);
    GHResult r;
    r.value = 0.5 * std::max(sf.dis, sg.dis);
    r.method = SearchMethod::branch_and_bound;
    r.nodes = sf.nodes + sg.nodes;
    r.f = std::move(sf.witness);
    r.g = std::move(sg.witness);
    return r;
  }

  if (cls == MapClass::any) {
    GHResult r = gh_exact(X, Y, opts);
    auto [f, g] = r.correspondence->least_index_maps();
    r.f = std::move(f);
    r.g = std::move(g);
    return r;
  }

  const auto cap = opts.brute_force_cap;
  if (detail::saturating_pow(Y.size(), X.size(), cap) > cap ||
      detail::saturating_pow(X.size(), Y.size(), cap) > cap)
    throw CapacityError("family enumeration exceeds the brute-force cap of " +
                        std::to_string(cap));
  auto fs = detail::enumerate_maps(X.size(), Y.size(), cls);
  auto gs = detail::enumerate_maps(Y.size(), X.size(), cls);
  if (static_cast<double>(fs.size()) * static_cast<double>(gs.size()) > static_cast<double>(cap))
    throw CapacityError("family enumeration exceeds the brute-force cap of " +
                        std::to_string(cap) + " mapping pairs");
  return detail::brute_force_pairs(X, Y, fs, gs);
}

}  // namespace ghkit
