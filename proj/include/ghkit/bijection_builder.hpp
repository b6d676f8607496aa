#pragma once

// Cantor-Bernstein style synthesis of a bijection from a pair of maps
// f: X -> Y, g: Y -> X and covers of both spaces.
//
// Points are handled alternately, x_0, y_0, x_1, y_1, ... . An x that is
// already the image of a handled y inherits the inverse of that assignment;
// otherwise it picks an unused, unhandled target in the cover member selected
// for f(x). The y side is symmetric with g. On finite spaces a member can run
// out of admissible targets, so earlier free choices are revisited within a
// node budget before giving up.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ghkit/distortion.hpp"
#include "ghkit/metric_space.hpp"

namespace ghkit {

enum class Side { x, y };

inline const char* to_string(Side s) { return s == Side::x ? "x" : "y"; }

/// How a step was resolved: a free choice inside a cover member, or the
/// inverse of an earlier assignment.
enum class StepCase { choose, inherit };

struct TraceStep {
  Side side;
  Index point;
  StepCase kind;
  Index value;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct BijectionCertificate {
  Mapping f_tilde;
  Mapping g_tilde;
  std::vector<bool> class_one;  // f_tilde(x) lies in the member selected for f(x)
  std::vector<bool> class_two;  // x lies in the member selected for g(f_tilde(x))
  double eps_x = 0.0;
  double eps_y = 0.0;
  Mapping f;
  Mapping g;
  std::vector<TraceStep> trace;
  std::uint64_t nodes = 0;
};

struct Exhausted {
  std::size_t step = 0;  // 0-based position in the alternating schedule
  Side side = Side::x;
  Index point = 0;
  std::uint64_t nodes = 0;
  bool budget_spent = false;

  std::string describe() const {
    std::ostringstream os;
    os << "exhausted at step " << step << " (" << to_string(side) << " point " << point << ")"
       << (budget_spent ? " after spending the node budget" : " with no alternatives left");
    return os.str();
  }
};

struct BuildOptions {
  std::uint64_t seed = 0;  // 0 keeps the identity enumeration
  std::uint64_t node_budget = 100000;
};

using BuildOutcome = std::variant<BijectionCertificate, Exhausted>;

namespace detail {

class BijectionSearch {
 public:
  BijectionSearch(const Cover& cover_x, const Cover& cover_y, const Mapping& f, const Mapping& g,
                  std::vector<Index> xs, std::vector<Index> ys, std::uint64_t budget)
      : cx_(cover_x), cy_(cover_y), f_(f), g_(g), xs_(std::move(xs)), ys_(std::move(ys)),
        budget_(budget), n_(xs_.size()), ft_(n_, kNoIndex), gt_(n_, kNoIndex),
        ft_inv_(n_, kNoIndex), gt_inv_(n_, kNoIndex), done_x_(n_, 0), done_y_(n_, 0),
        edges_(n_) {
    std::vector<std::size_t> pos_y(n_);
    pos_x_.resize(n_);
    for (std::size_t b = 0; b < n_; ++b) {
      pos_x_[xs_[b]] = 2 * b;
      pos_y[ys_[b]] = 2 * b + 1;
    }
    for (Index x = 0; x < n_; ++x)
      for (Index y = 0; y < n_; ++y)
        if ((pos_x_[x] < pos_y[y] && cy_.selected_contains(f_(x), y)) ||
            (pos_y[y] < pos_x_[x] && cx_.selected_contains(g_(y), x)))
          edges_[x].push_back(y);
  }

  bool run() {
    if (viable()) return step(0);
    dead_end_ = Exhausted{pos_x_[blocked_], Side::x, blocked_, 0, false};
    return false;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  bool budget_spent() const noexcept { return over_budget_; }
  const std::optional<Exhausted>& first_dead_end() const noexcept { return dead_end_; }
  const std::vector<Index>& f_tilde() const noexcept { return ft_; }
  const std::vector<Index>& g_tilde() const noexcept { return gt_; }
  const std::vector<TraceStep>& trace() const noexcept { return trace_; }

 private:
  bool step(std::size_t s) {
    if (s == 2 * n_) return true;
    const std::size_t beta = s / 2;
    return (s % 2 == 0) ? step_x(s, xs_[beta]) : step_y(s, ys_[beta]);
  }

  bool step_x(std::size_t s, Index x) {
    done_x_[x] = 1;
    bool ok = false;
    if (gt_inv_[x] != kNoIndex) {
      const Index y = gt_inv_[x];
      set_f(x, y);
      trace_.push_back({Side::x, x, StepCase::inherit, y});
      ok = step(s + 1);
      if (!ok) {
        trace_.pop_back();
        clear_f(x);
      }
    } else {
      bool any = false;
      for (Index y : cy_.member_of(f_(x)).members()) {
        if (done_y_[y] || ft_inv_[y] != kNoIndex) continue;
        any = true;
        if (!charge()) break;
        set_f(x, y);
        trace_.push_back({Side::x, x, StepCase::choose, y});
        ok = viable() && step(s + 1);
        if (ok) break;
        trace_.pop_back();
        clear_f(x);
        if (over_budget_) break;
      }
      if (!any) note_dead_end(s, Side::x, x);
    }
    if (!ok) done_x_[x] = 0;
    return ok;
  }

  bool step_y(std::size_t s, Index y) {
    done_y_[y] = 1;
    bool ok = false;
    if (ft_inv_[y] != kNoIndex) {
      const Index x = ft_inv_[y];
      set_g(y, x);
      trace_.push_back({Side::y, y, StepCase::inherit, x});
      ok = step(s + 1);
      if (!ok) {
        trace_.pop_back();
        clear_g(y);
      }
    } else {
      bool any = false;
      for (Index x : cx_.member_of(g_(y)).members()) {
        if (done_x_[x] || gt_inv_[x] != kNoIndex) continue;
        any = true;
        if (!charge()) break;
        set_g(y, x);
        trace_.push_back({Side::y, y, StepCase::choose, x});
        ok = viable() && step(s + 1);
        if (ok) break;
        trace_.pop_back();
        clear_g(y);
        if (over_budget_) break;
      }
      if (!any) note_dead_end(s, Side::y, y);
    }
    if (!ok) done_y_[y] = 0;
    return ok;
  }

  bool charge() {
    if (nodes_ >= budget_) {
      over_budget_ = true;
      return false;
    }
    ++nodes_;
    return true;
  }

  bool open_x(Index x) const { return ft_[x] == kNoIndex && gt_inv_[x] == kNoIndex; }
  bool open_y(Index y) const { return gt_[y] == kNoIndex && ft_inv_[y] == kNoIndex; }

  // A pair (x, y) can still be formed iff x picks y before y is processed
  // (y in V(f(x))) or y picks x before x is processed (x in U(g(y))). The
  // search can complete iff the open points admit a perfect matching in that
  // fixed graph, so this check prunes exactly the branches without success.
  bool viable() {
    match_y_.assign(n_, kNoIndex);
    for (Index x = 0; x < n_; ++x) {
      if (!open_x(x)) continue;
      seen_.assign(n_, 0);
      if (!augment(x)) {
        blocked_ = x;
        return false;
      }
    }
    return true;
  }

  bool augment(Index x) {
    for (Index y : edges_[x]) {
      if (!open_y(y) || seen_[y]) continue;
      seen_[y] = 1;
      if (match_y_[y] == kNoIndex || augment(match_y_[y])) {
        match_y_[y] = x;
        return true;
      }
    }
    return false;
  }

  void note_dead_end(std::size_t s, Side side, Index p) {
    if (!dead_end_) dead_end_ = Exhausted{s, side, p, 0, false};
  }

  void set_f(Index x, Index y) { ft_[x] = y; ft_inv_[y] = x; }
  void clear_f(Index x) { ft_inv_[ft_[x]] = kNoIndex; ft_[x] = kNoIndex; }
  void set_g(Index y, Index x) { gt_[y] = x; gt_inv_[x] = y; }
  void clear_g(Index y) { gt_inv_[gt_[y]] = kNoIndex; gt_[y] = kNoIndex; }

  const Cover& cx_;
  const Cover& cy_;
  const Mapping& f_;
  const Mapping& g_;
  std::vector<Index> xs_, ys_;
  std::uint64_t budget_;
  std::size_t n_;
  std::vector<Index> ft_, gt_, ft_inv_, gt_inv_;
  std::vector<char> done_x_, done_y_;
  std::vector<std::vector<Index>> edges_;
  std::vector<Index> match_y_;
  std::vector<std::size_t> pos_x_;
  Index blocked_ = 0;
  std::vector<char> seen_;
  std::vector<TraceStep> trace_;
  std::optional<Exhausted> dead_end_;
  std::uint64_t nodes_ = 0;
  bool over_budget_ = false;
};

inline std::vector<Index> enumeration(std::size_t n, std::mt19937_64* rng) {
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  if (rng) std::shuffle(order.begin(), order.end(), *rng);
  return order;
}

}  // namespace detail

/// Recomputes the class flags of a bijection against (f, g) and the covers.
inline void classify(BijectionCertificate& cert, const Cover& cover_x, const Cover& cover_y) {
  const std::size_t n = cert.f_tilde.domain_size();
  cert.class_one.assign(n, false);
  cert.class_two.assign(n, false);
  for (Index x = 0; x < n; ++x) {
    const Index y = cert.f_tilde(x);
    cert.class_one[x] = cover_y.selected_contains(cert.f(x), y);
    cert.class_two[x] = cover_x.selected_contains(cert.g(y), x);
  }
}

inline BuildOutcome build_bijection(const MetricSpace& X, const MetricSpace& Y,
                                    const Cover& cover_x, const Cover& cover_y,
                                    const Mapping& f, const Mapping& g,
                                    const BuildOptions& opts = {}) {
  if (X.size() != Y.size())
    throw DomainError("bijection needs spaces of equal size (got " + std::to_string(X.size()) +
                      " and " + std::to_string(Y.size()) + ")");
  if (&cover_x.parent() != &X || &cover_y.parent() != &Y)
    throw DomainError("covers must belong to the spaces passed in");
  require_maps(f, X.size(), Y.size(), "f");
  require_maps(g, Y.size(), X.size(), "g");

  std::optional<std::mt19937_64> rng;
  if (opts.seed != 0) rng.emplace(opts.seed);
  auto xs = detail::enumeration(X.size(), rng ? &*rng : nullptr);
  auto ys = detail::enumeration(Y.size(), rng ? &*rng : nullptr);

  detail::BijectionSearch search(cover_x, cover_y, f, g, std::move(xs), std::move(ys),
                                 opts.node_budget);
  if (!search.run()) {
    Exhausted e = search.first_dead_end().value_or(Exhausted{});
    e.nodes = search.nodes();
    e.budget_spent = search.budget_spent();
    return e;
  }

  BijectionCertificate cert{Mapping(Y.size(), search.f_tilde()),
                            Mapping(X.size(), search.g_tilde()),
                            {},
                            {},
                            cover_x.max_diam(),
                            cover_y.max_diam(),
                            f,
                            g,
                            search.trace(),
                            search.nodes()};
  classify(cert, cover_x, cover_y);
  return cert;
}

/// Structural checks on a certificate: mutual inverses and class coverage.
inline std::vector<std::string> certificate_problems(const BijectionCertificate& cert) {
  std::vector<std::string> out;
  const std::size_t n = cert.f_tilde.domain_size();
  if (!cert.f_tilde.is_bijective()) out.push_back("f_tilde is not a bijection");
  for (Index x = 0; x < n; ++x)
    if (cert.g_tilde(cert.f_tilde(x)) != x)
      out.push_back("g_tilde(f_tilde(" + std::to_string(x) + ")) != " + std::to_string(x));
  for (Index y = 0; y < cert.g_tilde.domain_size(); ++y)
    if (cert.f_tilde(cert.g_tilde(y)) != y)
      out.push_back("f_tilde(g_tilde(" + std::to_string(y) + ")) != " + std::to_string(y));
  for (Index x = 0; x < n; ++x)
    if (!cert.class_one[x] && !cert.class_two[x])
      out.push_back("point " + std::to_string(x) + " is in neither class");
  return out;
}

/// Like certificate_problems, plus the class flags are checked against the
/// covers they claim membership in.
inline std::vector<std::string> certificate_problems(const BijectionCertificate& cert,
                                                     const Cover& cover_x,
                                                     const Cover& cover_y) {
  auto out = certificate_problems(cert);
  for (Index x = 0; x < cert.f_tilde.domain_size(); ++x) {
    const Index y = cert.f_tilde(x);
    if (cert.class_one[x] && !cover_y.selected_contains(cert.f(x), y))
      out.push_back("class I claim fails at " + std::to_string(x));
    if (cert.class_two[x] && !cover_x.selected_contains(cert.g(y), x))
      out.push_back("class II claim fails at " + std::to_string(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distortion bounds for the synthesized bijection

enum class BoundKind {
  class_one_displacement,  // |f(x) f~(x)| <= eps_Y
  class_two_premise,       // |x g(f~(x))| <= eps_X
  class_two_displacement,  // |f(x) f~(x)| <= d_(f,g)^+ + eps_X
  one_one,                 // both points in class I
  two_two,                 // both points in class II
  mixed,                   // first point in class I, second in class II
  summary,                 // ½ dis f~ <= d_GH(f,g) + max(eps_X, eps_Y)
  unclassified,            // point carries neither flag
};

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::class_one_displacement: return "class-I-displacement";
    case BoundKind::class_two_premise: return "class-II-premise";
    case BoundKind::class_two_displacement: return "class-II-displacement";
    case BoundKind::one_one: return "pair-I-I";
    case BoundKind::two_two: return "pair-II-II";
    case BoundKind::mixed: return "pair-I-II";
    case BoundKind::summary: return "summary";
    case BoundKind::unclassified: return "unclassified";
  }
  return "?";
}

struct BoundViolation {
  BoundKind kind;
  Index x = 0;
  Index x2 = 0;
  double value = 0.0;  // the checked quantity
  double bound = 0.0;  // the side it crossed (lower bounds are reported negated)
};

struct BoundReport {
  std::vector<BoundViolation> violations;
  std::uint64_t checks = 0;

  bool ok() const noexcept { return violations.empty(); }
};

/// Verifies the displacement and pairwise distortion bounds of a bijection
/// built from (f, g). Points flagged for both classes are treated as class I.
inline BoundReport check_pair_bounds(const BijectionCertificate& cert, const MetricSpace& X,
                                     const MetricSpace& Y, double tol = kDefaultTolerance) {
  BoundReport rep;
  const auto& f = cert.f;
  const auto& g = cert.g;
  const auto& ft = cert.f_tilde;
  require_maps(ft, X.size(), Y.size(), "f_tilde");
  const auto score = gh_pair(f, g, X, Y);
  const double ex = cert.eps_x, ey = cert.eps_y;
  const std::size_t n = X.size();

  auto check = [&](bool holds, BoundViolation v) {
    ++rep.checks;
    if (!holds) rep.violations.push_back(v);
  };

  std::vector<int> cls(n, 0);  // 1 = I, 2 = II, 0 = none
  for (Index x = 0; x < n; ++x) {
    cls[x] = cert.class_one[x] ? 1 : (cert.class_two[x] ? 2 : 0);
    const double disp = Y(f(x), ft(x));
    if (cls[x] == 0) {
      check(false, {BoundKind::unclassified, x, x, 0.0, 0.0});
    } else if (cls[x] == 1) {
      check(disp <= ey + tol, {BoundKind::class_one_displacement, x, x, disp, ey});
    } else {
      const double premise = X(x, g(ft(x)));
      check(premise <= ex + tol, {BoundKind::class_two_premise, x, x, premise, ex});
      const double b = score.fg.plus + ex;
      check(disp <= b + tol, {BoundKind::class_two_displacement, x, x, disp, b});
    }
  }

  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a == b || cls[a] == 0 || cls[b] == 0) continue;
      const double diff = Y(ft(a), ft(b)) - X(a, b);
      double lo = 0.0, hi = 0.0;
      BoundKind kind;
      if (cls[a] == 1 && cls[b] == 1) {
        kind = BoundKind::one_one;
        lo = score.f.minus + 2 * ey;
        hi = score.f.plus + 2 * ey;
      } else if (cls[a] == 2 && cls[b] == 2) {
        kind = BoundKind::two_two;
        lo = score.g.plus + 2 * ex;
        hi = score.g.minus + 2 * ex;
      } else {
        // diff is symmetric in (a, b), so both orders use the I-II bound
        kind = BoundKind::mixed;
        lo = score.fg.minus + ex + ey;
        hi = score.fg.plus + ex + ey;
      }
      check(diff >= -lo - tol, {kind, a, b, diff, -lo});
      check(diff <= hi + tol, {kind, a, b, diff, hi});
    }
  }

  const double half_dis = 0.5 * dis_map(ft, X, Y);
  const double summary = score.gh_pair + std::max(ex, ey);
  check(half_dis <= summary + tol, {BoundKind::summary, 0, 0, half_dis, summary});
  return rep;
}

}  // namespace ghkit
