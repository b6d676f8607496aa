#pragma once

// Approximation of delta-surjective near-isometries by bijections: surjectivity
// defect, quasi-inverses, nearest-point retraction onto a subset, and the
// end-to-end pipeline through the bijection builder.
//
// Finite minima are attained, so every bound here is stated with the attained
// quantities (delta_eff, rho) and non-strict inequalities.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghkit/bijection_builder.hpp"
#include "ghkit/distortion.hpp"
#include "ghkit/gh_search.hpp"
#include "ghkit/metric_space.hpp"

namespace ghkit {

struct SurjectivityReport {
  double delta_eff = 0.0;  // d_H(f(X), target)
  bool target_is_subset = false;
  Subset image;
};

/// d_H(f(X), target), with target defaulting to all of Y.
inline SurjectivityReport measure_surjectivity(const Mapping& f, const MetricSpace& X,
                                               const MetricSpace& Y,
                                               const std::optional<Subset>& target = {}) {
  require_maps(f, X.size(), Y.size(), "f");
  Subset image(Y, f.image_set());
  if (target) {
    if (target->empty()) throw DomainError("surjectivity target is empty");
    if (&target->parent() != &Y) throw DomainError("surjectivity target is not a subset of Y");
    return {hausdorff(image, *target), true, std::move(image)};
  }
  return {hausdorff(image, Subset::full(Y)), false, std::move(image)};
}

/// g(f(x)) = least preimage on the image; other points copy the value of
/// their nearest image point (least index on ties).
inline Mapping quasi_inverse(const Mapping& f, const MetricSpace& X, const MetricSpace& Y) {
  require_maps(f, X.size(), Y.size(), "f");
  std::vector<Index> g(Y.size(), kNoIndex);
  for (Index x = 0; x < X.size(); ++x)
    if (g[f(x)] == kNoIndex) g[f(x)] = x;
  Subset image(Y, f.image_set());
  for (Index y = 0; y < Y.size(); ++y) {
    if (g[y] != kNoIndex && image.contains(y)) continue;
    Index nearest = kNoIndex;
    point_to_subset(image, y, &nearest);
    g[y] = g[nearest];
  }
  return Mapping(X.size(), std::move(g));
}

/// One named inequality lhs <= rhs, evaluated with a tolerance.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

inline BoundCheck make_check(std::string name, double lhs, double rhs, double tol) {
  return {std::move(name), lhs, rhs, lhs <= rhs + tol};
}

inline bool all_hold(const std::vector<BoundCheck>& checks) {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

/// The four one-sided bounds of a quasi-inverse g of f, and the resulting
/// pair bound d_GH(f,g) <= ½ dis f + delta_eff.
inline std::vector<BoundCheck> check_quasi_inverse_bounds(const Mapping& f, const Mapping& g,
                                                          const MetricSpace& X,
                                                          const MetricSpace& Y,
                                                          double tol = kDefaultTolerance) {
  const double delta = measure_surjectivity(f, X, Y).delta_eff;
  const auto s = gh_pair(f, g, X, Y);
  std::vector<BoundCheck> out;
  out.push_back(make_check("d_g^+ <= d_f^- + 2 delta", s.g.plus, s.f.minus + 2 * delta, tol));
  out.push_back(make_check("d_g^- <= d_f^+ + 2 delta", s.g.minus, s.f.plus + 2 * delta, tol));
  out.push_back(make_check("d_(f,g)^+ <= d_f^+ + delta", s.fg.plus, s.f.plus + delta, tol));
  out.push_back(make_check("d_(f,g)^- <= d_f^- + delta", s.fg.minus, s.f.minus + delta, tol));
  out.push_back(make_check("gh_pair <= dis f / 2 + delta", s.gh_pair, 0.5 * s.dis_f + delta, tol));
  return out;
}

/// Result of surjectivity_from_codistortion: d_H(f(X), Y) against d_(f,g)^+.
struct CodistortionSurjectivity {
  double hausdorff = 0.0;
  double codistortion_plus = 0.0;
  bool holds = true;
};

inline CodistortionSurjectivity surjectivity_from_codistortion(
    const Mapping& f, const Mapping& g, const MetricSpace& X, const MetricSpace& Y,
    double tol = kDefaultTolerance) {
  const double h = measure_surjectivity(f, X, Y).delta_eff;
  const double plus = one_sided_pair(f, g, X, Y).plus;
  return {h, plus, h <= plus + tol};
}

struct Witness {
  Mapping f;
  Mapping g;
  PairScore score;
  double gh_value = 0.0;
  double delta_eff = 0.0;
  std::uint64_t nodes = 0;  // search nodes spent on d_GH
};

/// For d > d_GH(X, Y): a pair (f, g) with d_GH(f, g) < d, taken from the
/// optimal correspondence by least-index selection. f is then d-surjective
/// and a 2d-isometry. Returns nothing when d <= d_GH(X, Y).
inline std::optional<Witness> extract_witness(const MetricSpace& X, const MetricSpace& Y,
                                              double d, const SearchOptions& opts = {}) {
  const auto gh = gh_exact(X, Y, opts);
  if (!(gh.value < d)) return std::nullopt;
  auto [f, g] = gh.correspondence->least_index_maps();
  auto score = gh_pair(f, g, X, Y);
  const double delta = measure_surjectivity(f, X, Y).delta_eff;
  return Witness{std::move(f), std::move(g), score, gh.value, delta, gh.nodes};
}

struct Retraction {
  Mapping f_hat;        // X -> Y with values in L
  Mapping into_subset;  // X -> L, as positions in L's member list
  double rho = 0.0;     // max_x |f_hat(x) f(x)|
};

/// Nearest-point retraction of f onto L (least index on ties).
inline Retraction retract_onto(const Mapping& f, const MetricSpace& X, const MetricSpace& Y,
                               const Subset& L) {
  require_maps(f, X.size(), Y.size(), "f");
  if (L.empty()) throw DomainError("retraction target is empty");
  if (&L.parent() != &Y) throw DomainError("retraction target is not a subset of Y");
  std::vector<Index> hat(X.size()), pos(X.size());
  double rho = 0.0;
  for (Index x = 0; x < X.size(); ++x) {
    Index nearest = kNoIndex;
    rho = std::max(rho, point_to_subset(L, f(x), &nearest));
    hat[x] = nearest;
    pos[x] = L.position_of(nearest);
  }
  return {Mapping(Y.size(), std::move(hat)), Mapping(L.size(), std::move(pos)), rho};
}

/// Bounds for a retraction: d_H(f_hat(X), L) <= 2 delta_eff(f -> L),
/// d_fhat^± <= d_f^± + 2 rho, and rho <= max_x dist(f(x), L).
inline std::vector<BoundCheck> check_retraction_bounds(const Mapping& f, const Retraction& r,
                                                       const MetricSpace& X,
                                                       const MetricSpace& Y, const Subset& L,
                                                       double tol = kDefaultTolerance) {
  const double delta = measure_surjectivity(f, X, Y, L).delta_eff;
  const double delta_hat = measure_surjectivity(r.f_hat, X, Y, L).delta_eff;
  const auto sf = one_sided_map(f, X, Y);
  const auto sh = one_sided_map(r.f_hat, X, Y);
  double reach = 0.0;
  for (Index x = 0; x < X.size(); ++x) reach = std::max(reach, point_to_subset(L, f(x)));
  std::vector<BoundCheck> out;
  out.push_back(make_check("d_H(f_hat(X), L) <= 2 delta", delta_hat, 2 * delta, tol));
  out.push_back(make_check("d_fhat^+ <= d_f^+ + 2 rho", sh.plus, sf.plus + 2 * r.rho, tol));
  out.push_back(make_check("d_fhat^- <= d_f^- + 2 rho", sh.minus, sf.minus + 2 * r.rho, tol));
  out.push_back(make_check("rho <= max dist(f(x), L)", r.rho, reach, tol));
  for (Index x = 0; x < X.size(); ++x)
    if (!L.contains(r.f_hat(x))) out.push_back({"f_hat(x) in L", 1.0, 0.0, false});
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineOptions {
  double eps = 1.0;                  // ball radius for both covers
  std::optional<Subset> target;      // L; defaults to all of Y
  std::optional<double> delta;       // user-supplied delta >= attained defects, for the aggregated bound
  BuildOptions build;
};

struct PipelineResult {
  BijectionCertificate bijection;  // X -> Y, or X -> L (positions in L) with a target
  MetricSpace codomain;            // Y, or the subspace metric on L
  Mapping f_tilde;                 // the bijection expressed in Y's indices
  double dis_f = 0.0;
  double delta_eff = 0.0;          // surjectivity defect of the map fed to the builder
  double rho = 0.0;                // retraction displacement, 0 without a target
  double eps = 0.0;                // requested ball radius
  double cover_scale = 0.0;        // max(eps_X, eps_Y), the realized member diameter
  double dis_tilde = 0.0;
  double guarantee_bound = 0.0;    // dis_f + 2 rho + 2 delta_eff + 2 cover_scale
  std::optional<double> aggregated_bound;  // dis_f + 2 delta (6 delta with L) + 2 cover_scale
  std::optional<Subset> subset_target;

  bool within_guarantee(double tol = kDefaultTolerance) const {
    if (dis_tilde > guarantee_bound + tol) return false;
    return !aggregated_bound || dis_tilde <= *aggregated_bound + tol;
  }
};

using PipelineOutcome = std::variant<PipelineResult, Exhausted>;

/// f -> (quasi-inverse g) -> ball covers -> bijection. With a target L the
/// map is first retracted onto L and the rest runs in L's subspace metric.
inline PipelineOutcome pipeline_to_bijection(const Mapping& f, const MetricSpace& X,
                                             const MetricSpace& Y,
                                             const PipelineOptions& opts) {
  require_maps(f, X.size(), Y.size(), "f");
  if (!(opts.eps > 0.0)) throw DomainError("pipeline cover radius must be positive");

  const double dis_f = dis_map(f, X, Y);
  double rho = 0.0;
  std::optional<Mapping> feed;
  std::optional<MetricSpace> sub;
  if (opts.target) {
    const Subset& L = *opts.target;
    if (&L.parent() != &Y) throw DomainError("pipeline target is not a subset of Y");
    if (L.size() != X.size())
      throw DomainError("pipeline needs |X| = |L| (got " + std::to_string(X.size()) + " and " +
                        std::to_string(L.size()) + ")");
    auto r = retract_onto(f, X, Y, L);
    rho = r.rho;
    feed = std::move(r.into_subset);
    sub = Y.restricted_to(L.members());
  } else if (X.size() != Y.size()) {
    throw DomainError("pipeline needs |X| = |Y| (got " + std::to_string(X.size()) + " and " +
                      std::to_string(Y.size()) + ")");
  }

  MetricSpace Z = sub ? std::move(*sub) : Y;
  const Mapping& h = feed ? *feed : f;
  const double delta = measure_surjectivity(h, X, Z).delta_eff;
  if (opts.delta) {
    const double attained =
        opts.target ? std::max(rho, measure_surjectivity(f, X, Y, opts.target).delta_eff) : delta;
    if (*opts.delta < attained)
      throw DomainError("supplied delta " + std::to_string(*opts.delta) +
                        " is below the attained surjectivity defect " + std::to_string(attained));
  }
  const Mapping g = quasi_inverse(h, X, Z);
  auto built = [&] {
    const Cover cx = ball_cover(X, opts.eps);
    const Cover cz = ball_cover(Z, opts.eps);
    return build_bijection(X, Z, cx, cz, h, g, opts.build);
  }();
  if (auto* e = std::get_if<Exhausted>(&built)) return *e;
  auto& cert = std::get<BijectionCertificate>(built);

  std::vector<Index> lifted = cert.f_tilde.image();
  if (opts.target)
    for (auto& v : lifted) v = opts.target->members()[v];
  const double scale = std::max(cert.eps_x, cert.eps_y);
  const double dis_tilde = dis_map(cert.f_tilde, X, Z);
  std::optional<double> aggregated;
  if (opts.delta) aggregated = dis_f + (opts.target ? 6.0 : 2.0) * *opts.delta + 2 * scale;
  return PipelineResult{std::move(cert),
                        std::move(Z),
                        Mapping(Y.size(), std::move(lifted)),
                        dis_f,
                        delta,
                        rho,
                        opts.eps,
                        scale,
                        dis_tilde,
                        dis_f + 2 * rho + 2 * delta + 2 * scale,
                        aggregated,
                        opts.target};
}

}  // namespace ghkit
