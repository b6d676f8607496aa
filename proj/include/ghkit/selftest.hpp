#pragma once

// Acceptance suite: seeded randomized checks of every distortion identity and
// bound the toolkit relies on, plus engineering targets. Shared by the
// acceptance test binary and `ghkit selftest`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ghkit/bijection_builder.hpp"
#include "ghkit/distortion.hpp"
#include "ghkit/gh_search.hpp"
#include "ghkit/io.hpp"
#include "ghkit/random.hpp"
#include "ghkit/surjective.hpp"

namespace ghkit::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240601;
  unsigned threads = 4;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline gen::Rng rng_for(const Options& o, int criterion) {
  return gen::Rng(o.seed * 1000003ULL + static_cast<std::uint64_t>(criterion));
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

/// A grid instance: X and Y are equal-size subsets of one grid.
struct GridPair {
  io::PointCloud a, b;
  MetricSpace X, Y;
};

inline GridPair grid_pair(gen::Rng& rng, std::size_t n, std::size_t m, std::size_t dim) {
  const std::size_t want = std::max(n, m);
  std::size_t side = dim == 1 ? want + want / 4 + 1
                              : static_cast<std::size_t>(std::ceil(std::sqrt(1.3 * want))) + 1;
  auto a = gen::grid_subset(rng, n, dim, side, 1.0);
  auto b = gen::grid_subset(rng, m, dim, side, 1.0);
  auto X = io::induced_metric(a);
  auto Y = io::induced_metric(b);
  return {std::move(a), std::move(b), std::move(X), std::move(Y)};
}

}  // namespace detail

/// gh_exact (branch and bound over correspondences) against gh_pair_inf
/// (enumeration of all map pairs).
inline CriterionResult oracle_equivalence(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 1);
  SearchOptions so;
  so.threads = o.threads;
  double worst = 0.0;
  int failures = 0, trials = 0;
  auto one = [&](std::size_t n, std::size_t m) {
    auto X = gen::random_space(rng, n);
    auto Y = gen::random_space(rng, m);
    const double a = gh_exact(X, Y, so).value;
    const double b = gh_pair_inf(X, Y, so).value;
    worst = std::max(worst, std::abs(a - b));
    if (!(std::abs(a - b) <= 1e-9)) ++failures;
    ++trials;
  };
  for (int t = 0; t < 200; ++t) one(gen::uniform_size(rng, 1, 3), gen::uniform_size(rng, 1, 3));
  for (int t = 0; t < 20; ++t) one(4, 4);
  const double secs = sw.seconds();
  return {1, "oracle-equivalence", failures == 0 && secs < 60.0,
          std::to_string(trials) + " pairs, max |exact - pair_inf| = " + detail::fmt(worst) +
              ", failures " + std::to_string(failures),
          secs};
}

/// One-sided identities for bijections and equality of the bijective,
/// inverse-pair and modified bijective distances.
inline CriterionResult bijection_identities(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 2);
  SearchOptions so;
  so.threads = o.threads;
  int bad_ident = 0, bad_class = 0;
  double worst_ident = 0.0, worst_class = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen::uniform_size(rng, 2, 6);
    auto X = gen::random_space(rng, n);
    auto Y = gen::random_space(rng, n);
    auto f = gen::random_bijection(rng, n);
    auto finv = f.inverse();
    const auto sf = one_sided_map(f, X, Y);
    const auto si = one_sided_map(finv, Y, X);
    const auto sp = one_sided_pair(f, finv, X, Y);
    const double d = std::max({std::abs(si.plus - sf.minus), std::abs(si.minus - sf.plus),
                               std::abs(sp.plus - sf.plus), std::abs(sp.minus - sf.minus)});
    worst_ident = std::max(worst_ident, d);
    if (!(d <= 1e-12)) ++bad_ident;
  }
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = gen::uniform_size(rng, 1, 4);
    auto X = gen::random_space(rng, n);
    auto Y = gen::random_space(rng, n);
    const double bi = gh_class(X, Y, ClassTag::bijective, false, so).value;
    const double ip = gh_class(X, Y, ClassTag::inverse_pair, false, so).value;
    const double mbi = gh_class(X, Y, ClassTag::bijective, true, so).value;
    const double d = std::max(std::abs(bi - ip), std::abs(bi - mbi));
    worst_class = std::max(worst_class, d);
    if (!(d <= 1e-9)) ++bad_class;
  }
  return {2, "bijection-identities", bad_ident == 0 && bad_class == 0,
          "identities max dev " + detail::fmt(worst_ident) + " (" + std::to_string(bad_ident) +
              " bad); bi/i/mbi max dev " + detail::fmt(worst_class) + " (" +
              std::to_string(bad_class) + " bad)",
          sw.seconds()};
}

/// mdGH <= dGH <= dGH^in <= dGH^bi and dGH <= dGH^sur <= dGH^bi.
inline CriterionResult class_chains(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 3);
  SearchOptions so;
  so.threads = o.threads;
  int bad = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double gap_sum = 0.0, gap_max = 0.0;
  int gap_nonzero = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen::uniform_size(rng, 1, 5);
    auto X = gen::random_space(rng, n);
    auto Y = gen::random_space(rng, n);
    const double md = gh_class(X, Y, ClassTag::any, true, so).value;
    const double d = gh_exact(X, Y, so).value;
    const double in = gh_class(X, Y, ClassTag::injective, false, so).value;
    const double sur = gh_class(X, Y, ClassTag::surjective, false, so).value;
    const double bi = gh_class(X, Y, ClassTag::bijective, false, so).value;
    const double slack = std::min({d - md, in - d, bi - in, sur - d, bi - sur});
    min_slack = std::min(min_slack, slack);
    if (!(slack >= -1e-9)) ++bad;
    const double gap = bi - d;
    gap_sum += gap;
    gap_max = std::max(gap_max, gap);
    if (gap > 1e-9) ++gap_nonzero;
  }
  return {3, "class-chains", bad == 0,
          "min slack " + detail::fmt(min_slack) + ", violations " + std::to_string(bad) +
              "; gap bi - gh: mean " + detail::fmt(gap_sum / 100) + ", max " +
              detail::fmt(gap_max) + ", nonzero in " + std::to_string(gap_nonzero) + "/100",
          sw.seconds()};
}

/// Bijection synthesis on grid instances: certificate invariants and the
/// pairwise distortion bounds on every successful build.
inline CriterionResult bijection_bounds(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 4);
  int successes = 0, violations = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t dim = t % 2 == 0 ? 1 : 2;
    const std::size_t n = gen::uniform_size(rng, 16, 64);
    auto inst = detail::grid_pair(rng, n, n, dim);
    auto f = gen::near_isometry(rng, inst.a, inst.b, gen::uniform_size(rng, 0, 4), 1.5);
    auto g = gen::near_isometry(rng, inst.b, inst.a, gen::uniform_size(rng, 0, 4), 1.5);
    const double eps = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    const Cover cx = ball_cover(inst.X, eps);
    const Cover cy = ball_cover(inst.Y, eps);
    auto out = build_bijection(inst.X, inst.Y, cx, cy, f, g, {static_cast<std::uint64_t>(t), 100000});
    auto* cert = std::get_if<BijectionCertificate>(&out);
    if (!cert) continue;
    ++successes;
    const bool invariants = certificate_problems(*cert, cx, cy).empty();
    const bool pairs = check_pair_bounds(*cert, inst.X, inst.Y, 1e-9).ok();
    const double lhs = 0.5 * dis_map(cert->f_tilde, inst.X, inst.Y);
    const double rhs = gh_pair(f, g, inst.X, inst.Y).gh_pair + std::max(cert->eps_x, cert->eps_y);
    if (!invariants || !pairs || !(lhs <= rhs + 1e-9)) ++violations;
  }
  const double secs = sw.seconds();
  return {4, "bijection-bounds", violations == 0 && secs < 120.0,
          "success rate " + std::to_string(successes) + "/100, violations " +
              std::to_string(violations),
          secs};
}

/// Surjectivity from co-distortion, quasi-inverse bounds and retraction
/// bounds on random instances.
inline CriterionResult surjective_bounds(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 5);
  int bad_h = 0, bad_q = 0, bad_r = 0;
  for (int t = 0; t < 100; ++t) {
    auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
    auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
    auto f = gen::random_mapping(rng, X.size(), Y.size());
    auto g = gen::random_mapping(rng, Y.size(), X.size());
    if (!surjectivity_from_codistortion(f, g, X, Y, 1e-9).holds) ++bad_h;
  }
  for (int t = 0; t < 100; ++t) {
    auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
    auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
    auto f = gen::random_mapping(rng, X.size(), Y.size());
    auto g = quasi_inverse(f, X, Y);
    bool ok = all_hold(check_quasi_inverse_bounds(f, g, X, Y, 1e-9));
    for (Index y : f.image_set()) ok = ok && f(g(y)) == y;
    if (!ok) ++bad_q;
  }
  for (int t = 0; t < 100; ++t) {
    auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
    auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
    auto f = gen::random_mapping(rng, X.size(), Y.size());
    Subset L(Y, gen::random_subset(rng, Y.size(), gen::uniform_size(rng, 1, Y.size())));
    auto r = retract_onto(f, X, Y, L);
    if (!all_hold(check_retraction_bounds(f, r, X, Y, L, 1e-9))) ++bad_r;
  }
  return {5, "surjective-bounds", bad_h + bad_q + bad_r == 0,
          "violations: codistortion " + std::to_string(bad_h) + ", quasi-inverse " +
              std::to_string(bad_q) + ", retraction " + std::to_string(bad_r),
          sw.seconds()};
}

/// End-to-end pipeline on delta-surjective grid near-isometries, onto Y and
/// onto a subset L.
inline CriterionResult pipeline_bounds(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 6);
  int successes = 0, violations = 0, targeted = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = t % 2 == 0 ? 1 : 2;
    const std::size_t n = gen::uniform_size(rng, 16, 48);
    const bool with_target = t % 4 >= 2;
    const std::size_t m = with_target ? n + gen::uniform_size(rng, 1, n / 2) : n;
    auto inst = detail::grid_pair(rng, n, m, dim);
    auto f = gen::near_isometry(rng, inst.a, inst.b, gen::uniform_size(rng, 0, 4), 1.5);
    PipelineOptions po;
    po.eps = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    po.build.seed = static_cast<std::uint64_t>(t);
    if (with_target) {
      Subset L(inst.Y, gen::random_subset(rng, m, n));
      const double rho = retract_onto(f, inst.X, inst.Y, L).rho;
      const double delta = measure_surjectivity(f, inst.X, inst.Y, L).delta_eff;
      po.target = L;
      po.delta = std::max(rho, delta);
    } else {
      po.delta = measure_surjectivity(f, inst.X, inst.Y).delta_eff;
    }
    auto out = pipeline_to_bijection(f, inst.X, inst.Y, po);
    auto* res = std::get_if<PipelineResult>(&out);
    if (!res) continue;
    ++successes;
    if (with_target) ++targeted;
    const double radius_bound =
        res->dis_f + 2 * res->rho + 2 * res->delta_eff + 2 * po.eps + 1e-9;
    if (!res->f_tilde.is_injective() || !res->within_guarantee(1e-9) ||
        res->dis_tilde > radius_bound)
      ++violations;
  }
  return {6, "pipeline-bounds", violations == 0,
          "success rate " + std::to_string(successes) + "/50 (" + std::to_string(targeted) +
              " onto a subset), violations " + std::to_string(violations),
          sw.seconds()};
}

/// Witness extraction slightly above the exact distance.
inline CriterionResult witness_extraction(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 7);
  SearchOptions so;
  so.threads = o.threads;
  int bad = 0;
  for (int t = 0; t < 30; ++t) {
    auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 5));
    auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 5));
    const double v = gh_exact(X, Y, so).value;
    const double d = 1.05 * v + 0.01;
    auto w = extract_witness(X, Y, d, so);
    if (!w) {
      ++bad;
      continue;
    }
    const bool ok = w->score.dis_f <= 2 * d + 1e-9 && w->delta_eff <= w->score.fg.plus + 1e-9 &&
                    w->score.gh_pair < d;
    if (!ok) ++bad;
  }
  return {7, "witness-extraction", bad == 0, "30 pairs, failures " + std::to_string(bad),
          sw.seconds()};
}

/// Runtime targets and output determinism across runs and thread counts.
inline CriterionResult engineering(const Options& o) {
  detail::Stopwatch sw;
  auto rng = detail::rng_for(o, 8);
  double exact_worst = 0.0, perm_worst = 0.0;
  bool deterministic = true;
  for (int t = 0; t < 3; ++t) {
    auto X = gen::random_space(rng, 6);
    auto Y = gen::random_space(rng, 6);
    detail::Stopwatch one;
    SearchOptions single;
    auto a = gh_exact(X, Y, single);
    exact_worst = std::max(exact_worst, one.seconds());
    SearchOptions multi;
    multi.threads = std::max(2u, o.threads);
    auto b = gh_exact(X, Y, single);
    auto c = gh_exact(X, Y, multi);
    std::ostringstream sa, sb, sc;
    io::write_result(sa, a);
    io::write_result(sb, b);
    io::write_result(sc, c);
    deterministic = deterministic && sa.str() == sb.str() && sa.str() == sc.str();
  }
  for (int t = 0; t < 3; ++t) {
    auto X = gen::random_space(rng, 10);
    auto Y = gen::random_space(rng, 10);
    detail::Stopwatch one;
    SearchOptions single;
    auto a = gh_class(X, Y, ClassTag::inverse_pair, false, single);
    perm_worst = std::max(perm_worst, one.seconds());
    SearchOptions multi;
    multi.threads = std::max(2u, o.threads);
    auto c = gh_class(X, Y, ClassTag::inverse_pair, false, multi);
    std::ostringstream sa, sc;
    io::write_result(sa, a);
    io::write_result(sc, c);
    deterministic = deterministic && sa.str() == sc.str();
  }
  {
    auto inst = detail::grid_pair(rng, 32, 32, 2);
    auto f = gen::near_isometry(rng, inst.a, inst.b, 3, 1.5);
    auto g = gen::near_isometry(rng, inst.b, inst.a, 3, 1.5);
    const Cover cx = ball_cover(inst.X, 1.5);
    const Cover cy = ball_cover(inst.Y, 1.5);
    std::string first;
    for (int run = 0; run < 2; ++run) {
      auto out = build_bijection(inst.X, inst.Y, cx, cy, f, g, {7, 100000});
      std::ostringstream os;
      if (auto* cert = std::get_if<BijectionCertificate>(&out))
        io::write_certificate(os, *cert, inst.X, inst.Y);
      else
        os << std::get<Exhausted>(out).describe();
      if (run == 0) first = os.str();
      else deterministic = deterministic && first == os.str();
    }
  }
  const bool ok = exact_worst < 60.0 && perm_worst < 10.0 && deterministic;
  return {8, "engineering-targets", ok,
          "gh_exact n=6 worst " + detail::fmt(exact_worst) + " s, inversePair n=10 worst " +
              detail::fmt(perm_worst) + " s, deterministic " + (deterministic ? "yes" : "no"),
          sw.seconds()};
}

inline std::vector<CriterionResult> run_all(const Options& o = {}) {
  using Fn = CriterionResult (*)(const Options&);
  const Fn all[] = {oracle_equivalence, bijection_identities, class_chains, bijection_bounds,
                    surjective_bounds,  pipeline_bounds,      witness_extraction, engineering};
  std::vector<CriterionResult> out;
  for (Fn fn : all) out.push_back(fn(o));
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail << " ("
     << detail::fmt(r.seconds) << " s)";
  return os.str();
}

}  // namespace ghkit::selftest
