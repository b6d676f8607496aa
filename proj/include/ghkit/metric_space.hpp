#pragma once

// Finite metric spaces and the index-based objects that live on them:
// subsets, covers, mappings and correspondences.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ghkit/error.hpp"

namespace ghkit {

using Index = std::size_t;
using IndexPair = std::pair<Index, Index>;
using PairList = std::vector<IndexPair>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

/// A finite point set 0..n-1 with a dense row-major distance matrix.
///
/// Construction only enforces that the matrix is square and nonempty; the
/// metric axioms are checked by validate_metric so that malformed input can be
/// reported with witnesses instead of rejected blindly.
class MetricSpace {
 public:
  MetricSpace(std::size_t n, std::vector<double> flat) : n_(n), d_(std::move(flat)) {
    if (n_ == 0) throw DomainError("metric space must have at least one point");
    if (d_.size() != n_ * n_) throw DomainError("distance matrix is not square");
  }

  explicit MetricSpace(const std::vector<std::vector<double>>& rows) : n_(rows.size()) {
    if (n_ == 0) throw DomainError("metric space must have at least one point");
    d_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_) {
        std::ostringstream os;
        os << "distance matrix is not square: row " << i << " has " << rows[i].size()
           << " entries, expected " << n_;
        throw DomainError(os.str());
      }
      d_.insert(d_.end(), rows[i].begin(), rows[i].end());
    }
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(Index i, Index j) const noexcept { return d_[i * n_ + j]; }

  std::span<const double> row(Index i) const noexcept {
    return {d_.data() + i * n_, n_};
  }

  std::span<const double> data() const noexcept { return d_; }

  /// Largest distance from point i.
  double eccentricity(Index i) const noexcept {
    auto r = row(i);
    return *std::max_element(r.begin(), r.end());
  }

  double diameter() const noexcept { return *std::max_element(d_.begin(), d_.end()); }

  /// Restriction of the metric to the given (canonical) index list.
  MetricSpace restricted_to(std::span<const Index> members) const {
    if (members.empty()) throw DomainError("cannot restrict to an empty subset");
    const std::size_t m = members.size();
    std::vector<double> flat(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = (*this)(members[a], members[b]);
    return MetricSpace(m, std::move(flat));
  }

  friend bool operator==(const MetricSpace&, const MetricSpace&) = default;

 private:
  std::size_t n_;
  std::vector<double> d_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Axiom { finite_nonnegative, zero_diagonal, symmetry, triangle };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::finite_nonnegative: return "finite-nonnegative";
    case Axiom::zero_diagonal: return "zero-diagonal";
    case Axiom::symmetry: return "symmetry";
    case Axiom::triangle: return "triangle";
  }
  return "?";
}

struct AxiomViolation {
  Axiom axiom;
  Index i = 0;
  Index j = 0;
  Index k = 0;  // only meaningful for triangle violations: d(i,k) > d(i,j) + d(j,k)

  friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;

  bool ok() const noexcept { return violations.empty(); }

  std::string describe() const {
    std::ostringstream os;
    for (const auto& v : violations) {
      os << to_string(v.axiom) << ' ' << v.i << ' ' << v.j;
      if (v.axiom == Axiom::triangle) os << ' ' << v.k;
      os << '\n';
    }
    return os.str();
  }
};

/// Checks the four metric axioms with absolute tolerance `tol`. Triangle
/// witnesses (i, j, k) mean d(i,k) > d(i,j) + d(j,k) + tol.
inline ValidationReport validate_metric(const MetricSpace& m, double tol = kDefaultTolerance) {
  ValidationReport report;
  const std::size_t n = m.size();
  bool finite = true;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v < -tol) {
        report.violations.push_back({Axiom::finite_nonnegative, i, j, 0});
        finite = false;
      }
    }
  }
  for (Index i = 0; i < n; ++i)
    if (!(std::abs(m(i, i)) <= tol)) report.violations.push_back({Axiom::zero_diagonal, i, i, 0});
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (!(std::abs(m(i, j) - m(j, i)) <= tol))
        report.violations.push_back({Axiom::symmetry, i, j, 0});
  // Triangle checks on non-finite data only produce noise.
  if (!finite) return report;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        if (m(i, k) > m(i, j) + m(j, k) + tol)
          report.violations.push_back({Axiom::triangle, i, j, k});
  return report;
}

/// Overload for raw rows; a non-square matrix is a structural error.
inline ValidationReport validate_metric(const std::vector<std::vector<double>>& rows,
                                        double tol = kDefaultTolerance) {
  return validate_metric(MetricSpace(rows), tol);
}

// ---------------------------------------------------------------------------
// Subsets

/// A canonical (sorted, duplicate-free) index set of a parent space. The
/// parent must outlive the subset.
class Subset {
 public:
  Subset(const MetricSpace& parent, std::vector<Index> members)
      : parent_(&parent), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= parent.size()) {
      std::ostringstream os;
      os << "subset index " << members_.back() << " out of range for space of size "
         << parent.size();
      throw DomainError(os.str());
    }
  }

  static Subset full(const MetricSpace& parent) {
    std::vector<Index> all(parent.size());
    for (Index i = 0; i < all.size(); ++i) all[i] = i;
    return Subset(parent, std::move(all));
  }

  const MetricSpace& parent() const noexcept { return *parent_; }
  const std::vector<Index>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(Index p) const {
    return std::binary_search(members_.begin(), members_.end(), p);
  }

  /// Position of p in the member list, or kNoIndex.
  Index position_of(Index p) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), p);
    if (it == members_.end() || *it != p) return kNoIndex;
    return static_cast<Index>(it - members_.begin());
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  const MetricSpace* parent_;
  std::vector<Index> members_;
};

inline double diam(const Subset& s) {
  if (s.empty()) throw DomainError("diameter of an empty subset");
  const auto& m = s.parent();
  double best = 0.0;
  for (Index a : s.members())
    for (Index b : s.members()) best = std::max(best, m(a, b));
  return best;
}

/// Distance from point p to the nearest member of s; `nearest` receives the
/// least-index minimizer.
inline double point_to_subset(const Subset& s, Index p, Index* nearest = nullptr) {
  if (s.empty()) throw DomainError("distance to an empty subset");
  const auto& m = s.parent();
  double best = std::numeric_limits<double>::infinity();
  Index arg = kNoIndex;
  for (Index q : s.members()) {
    if (m(p, q) < best) {
      best = m(p, q);
      arg = q;
    }
  }
  if (nearest) *nearest = arg;
  return best;
}

/// Hausdorff distance between nonempty subsets of one space; on finite sets
/// the infimum over eps is attained as the larger of the two directed
/// max-min distances.
inline double hausdorff(const Subset& a, const Subset& b) {
  if (a.empty() || b.empty()) throw DomainError("Hausdorff distance needs nonempty subsets");
  if (&a.parent() != &b.parent()) throw DomainError("Hausdorff distance across different spaces");
  double h = 0.0;
  for (Index x : a.members()) h = std::max(h, point_to_subset(b, x));
  for (Index y : b.members()) h = std::max(h, point_to_subset(a, y));
  return h;
}

// ---------------------------------------------------------------------------
// Covers

/// A cover of a space together with a selector choosing, for each point, a
/// member that contains it. max_diam is the largest member diameter.
class Cover {
 public:
  Cover(const MetricSpace& parent, std::vector<Subset> members, std::vector<Index> selector)
      : parent_(&parent), members_(std::move(members)), selector_(std::move(selector)) {
    const std::size_t n = parent.size();
    if (members_.empty()) throw DomainError("cover has no members");
    if (selector_.size() != n) throw DomainError("cover selector must have one entry per point");
    in_member_.assign(members_.size(), std::vector<char>(n, 0));
    std::vector<char> covered(n, 0);
    max_diam_ = 0.0;
    for (std::size_t k = 0; k < members_.size(); ++k) {
      const auto& mem = members_[k];
      if (&mem.parent() != &parent) throw DomainError("cover member belongs to another space");
      if (mem.empty()) throw DomainError("cover member is empty");
      for (Index p : mem.members()) {
        in_member_[k][p] = 1;
        covered[p] = 1;
      }
      max_diam_ = std::max(max_diam_, diam(mem));
    }
    for (Index p = 0; p < n; ++p) {
      if (!covered[p]) throw DomainError("cover does not contain point " + std::to_string(p));
      if (selector_[p] >= members_.size() || !in_member_[selector_[p]][p])
        throw DomainError("cover selector for point " + std::to_string(p) +
                          " names a member that does not contain it");
    }
  }

  const MetricSpace& parent() const noexcept { return *parent_; }
  const std::vector<Subset>& members() const noexcept { return members_; }
  const std::vector<Index>& selector() const noexcept { return selector_; }
  double max_diam() const noexcept { return max_diam_; }

  /// The selected member for p (U(p) / V(p) in the construction).
  const Subset& member_of(Index p) const { return members_[selector_[p]]; }

  /// True when q lies in the member selected for p.
  bool selected_contains(Index p, Index q) const noexcept {
    return in_member_[selector_[p]][q] != 0;
  }

 private:
  const MetricSpace* parent_;
  std::vector<Subset> members_;
  std::vector<Index> selector_;
  std::vector<std::vector<char>> in_member_;
  double max_diam_ = 0.0;
};

/// Open-ball cover: member p is {q : d(p,q) < eps}, selected for p.
inline Cover ball_cover(const MetricSpace& m, double eps) {
  if (!(eps > 0.0)) throw DomainError("ball cover radius must be positive");
  std::vector<Subset> members;
  std::vector<Index> selector(m.size());
  members.reserve(m.size());
  for (Index p = 0; p < m.size(); ++p) {
    std::vector<Index> ball;
    for (Index q = 0; q < m.size(); ++q)
      if (m(p, q) < eps) ball.push_back(q);
    members.emplace_back(m, std::move(ball));
    selector[p] = p;
  }
  return Cover(m, std::move(members), std::move(selector));
}

/// Cover by singletons (max_diam 0).
inline Cover singleton_cover(const MetricSpace& m) {
  std::vector<Subset> members;
  std::vector<Index> selector(m.size());
  for (Index p = 0; p < m.size(); ++p) {
    members.emplace_back(m, std::vector<Index>{p});
    selector[p] = p;
  }
  return Cover(m, std::move(members), std::move(selector));
}

// ---------------------------------------------------------------------------
// Mappings

/// A total function {0..domain-1} -> {0..codomain-1} stored as an image array.
class Mapping {
 public:
  Mapping(std::size_t codomain_size, std::vector<Index> image)
      : codomain_(codomain_size), image_(std::move(image)) {
    if (image_.empty()) throw DomainError("mapping has an empty domain");
    if (codomain_ == 0) throw DomainError("mapping has an empty codomain");
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] >= codomain_) {
        std::ostringstream os;
        os << "mapping value " << image_[i] << " at " << i << " out of range [0, " << codomain_
           << ")";
        throw DomainError(os.str());
      }
    }
  }

  static Mapping identity(std::size_t n) {
    std::vector<Index> img(n);
    for (Index i = 0; i < n; ++i) img[i] = i;
    return Mapping(n, std::move(img));
  }

  static Mapping constant(std::size_t domain, std::size_t codomain, Index value) {
    return Mapping(codomain, std::vector<Index>(domain, value));
  }

  std::size_t domain_size() const noexcept { return image_.size(); }
  std::size_t codomain_size() const noexcept { return codomain_; }
  Index operator()(Index i) const noexcept { return image_[i]; }
  const std::vector<Index>& image() const noexcept { return image_; }

  /// Sorted, duplicate-free list of attained values.
  std::vector<Index> image_set() const {
    std::vector<Index> s = image_;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  bool is_injective() const { return image_set().size() == image_.size(); }
  bool is_surjective() const { return image_set().size() == codomain_; }
  bool is_bijective() const { return is_injective() && is_surjective(); }

  Mapping inverse() const {
    if (!is_bijective()) throw DomainError("inverse of a non-bijective mapping");
    std::vector<Index> inv(image_.size());
    for (Index i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Mapping(image_.size(), std::move(inv));
  }

  /// (this ∘ inner)(i) = this(inner(i)).
  Mapping after(const Mapping& inner) const {
    if (inner.codomain_size() != domain_size()) throw DomainError("composition size mismatch");
    std::vector<Index> img(inner.domain_size());
    for (Index i = 0; i < img.size(); ++i) img[i] = image_[inner(i)];
    return Mapping(codomain_, std::move(img));
  }

  friend bool operator==(const Mapping&, const Mapping&) = default;
  friend auto operator<=>(const Mapping& a, const Mapping& b) {
    return a.image_ <=> b.image_;
  }

 private:
  std::size_t codomain_;
  std::vector<Index> image_;
};

inline void require_maps(const Mapping& f, std::size_t from, std::size_t to, const char* name) {
  if (f.domain_size() != from || f.codomain_size() != to) {
    std::ostringstream os;
    os << "mapping " << name << " is " << f.domain_size() << "->" << f.codomain_size()
       << " but the spaces need " << from << "->" << to;
    throw DomainError(os.str());
  }
}

// ---------------------------------------------------------------------------
// Relations and correspondences

/// gr f = {(x, f(x))}.
inline PairList graph(const Mapping& f) {
  PairList r;
  r.reserve(f.domain_size());
  for (Index x = 0; x < f.domain_size(); ++x) r.emplace_back(x, f(x));
  return r;
}

/// gr^-1 g = {(g(y), y)} for g: Y -> X, sorted.
inline PairList inverse_graph(const Mapping& g) {
  PairList r;
  r.reserve(g.domain_size());
  for (Index y = 0; y < g.domain_size(); ++y) r.emplace_back(g(y), y);
  std::sort(r.begin(), r.end());
  return r;
}

inline PairList canonical(PairList r) {
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

/// A relation whose projections onto both factors are surjective. Pairs are
/// kept deduplicated and lexicographically sorted.
class Correspondence {
 public:
  Correspondence(std::size_t x_size, std::size_t y_size, PairList pairs)
      : x_size_(x_size), y_size_(y_size), pairs_(canonical(std::move(pairs))) {
    std::vector<char> hit_x(x_size, 0), hit_y(y_size, 0);
    for (auto [x, y] : pairs_) {
      if (x >= x_size || y >= y_size) throw DomainError("correspondence pair out of range");
      hit_x[x] = 1;
      hit_y[y] = 1;
    }
    for (Index x = 0; x < x_size; ++x)
      if (!hit_x[x]) throw DomainError("correspondence misses X point " + std::to_string(x));
    for (Index y = 0; y < y_size; ++y)
      if (!hit_y[y]) throw DomainError("correspondence misses Y point " + std::to_string(y));
  }

  /// gr f ∪ gr^-1 g, always a correspondence.
  static Correspondence from_maps(const Mapping& f, const Mapping& g) {
    if (f.domain_size() != g.codomain_size() || f.codomain_size() != g.domain_size())
      throw DomainError("mapping pair sizes do not match");
    PairList r = graph(f);
    auto inv = inverse_graph(g);
    r.insert(r.end(), inv.begin(), inv.end());
    return Correspondence(f.domain_size(), f.codomain_size(), std::move(r));
  }

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  const PairList& pairs() const noexcept { return pairs_; }

  /// Least-index selections f(x) = min{y : (x,y) in R}, g(y) = min{x : (x,y) in R};
  /// gr f ∪ gr^-1 g is contained in R.
  std::pair<Mapping, Mapping> least_index_maps() const {
    std::vector<Index> f(x_size_, kNoIndex), g(y_size_, kNoIndex);
    for (auto [x, y] : pairs_) {
      if (f[x] == kNoIndex) f[x] = y;
      if (g[y] == kNoIndex || x < g[y]) g[y] = x;
    }
    return {Mapping(y_size_, std::move(f)), Mapping(x_size_, std::move(g))};
  }

  friend bool operator==(const Correspondence&, const Correspondence&) = default;

 private:
  std::size_t x_size_;
  std::size_t y_size_;
  PairList pairs_;
};

}  // namespace ghkit
