// ghkit: command-line front end for the finite metric space toolkit.
//
// Exit codes: 0 success, 2 domain or validation error, 3 capacity error,
// 4 bijection synthesis exhausted, 1 self-test failure, 64 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ghkit/ghkit.hpp"
#include "ghkit/selftest.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitExhausted = 4;
constexpr int kExitUsage = 64;

struct ExhaustedSignal {
  std::string message;
};

struct Args {
  std::string space_x, space_y, map, map_g, target, output, klass = "any";
  std::optional<double> eps, delta, budget;
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 100000;
  std::optional<std::size_t> cap;
  unsigned threads = 1;
  double tolerance = ghkit::kDefaultTolerance;
  bool modified = false;
  bool no_validate = false;
};

class Runner {
 public:
  explicit Runner(const Args& a) : a_(a) {}

  ghkit::MetricSpace space(const std::string& path, const char* flag) const {
    if (path.empty()) throw ghkit::DomainError(std::string("missing --") + flag);
    auto m = ghkit::io::read_space(path);
    if (!a_.no_validate) {
      auto rep = ghkit::validate_metric(m, a_.tolerance);
      if (!rep.ok()) {
        const auto& v = rep.violations.front();
        std::ostringstream os;
        os << flag << ": not a metric (" << ghkit::to_string(v.axiom) << " at " << v.i << ' '
           << v.j;
        if (v.axiom == ghkit::Axiom::triangle) os << ' ' << v.k;
        os << "; " << rep.violations.size() << " violation(s))";
        throw ghkit::DomainError(os.str());
      }
    }
    return m;
  }

  ghkit::Mapping mapping(const std::string& path, const char* flag) const {
    if (path.empty()) throw ghkit::DomainError(std::string("missing --") + flag);
    return ghkit::io::read_mapping(path);
  }

  ghkit::SearchOptions search() const {
    ghkit::SearchOptions so;
    so.threads = a_.threads;
    if (a_.cap) {
      so.correspondence_cap = *a_.cap;
      so.permutation_cap = *a_.cap;
    }
    return so;
  }

  int run(const std::string& cmd, std::ostream& out) const {
    using namespace ghkit;
    if (cmd == "validate") {
      int status = 0;
      for (auto [path, flag] : {std::pair{a_.space_x, "space-x"}, std::pair{a_.space_y, "space-y"}}) {
        if (path.empty()) continue;
        auto rep = validate_metric(io::read_space(path), a_.tolerance);
        out << flag << ' ' << (rep.ok() ? "valid" : "invalid") << '\n' << rep.describe();
        if (!rep.ok()) {
          std::cerr << "ghkit: " << flag << " violates " << rep.violations.size()
                    << " metric axiom check(s)\n";
          status = kExitDomain;
        }
      }
      if (a_.space_x.empty() && a_.space_y.empty()) throw DomainError("missing --space-x");
      return status;
    }
    if (cmd == "selftest") {
      selftest::Options o;
      if (a_.seed) o.seed = a_.seed;
      o.threads = std::max(1u, a_.threads);
      bool ok = true;
      for (const auto& r : selftest::run_all(o)) {
        out << selftest::format_line(r) << '\n';
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }

    const auto X = space(a_.space_x, "space-x");
    const auto Y = a_.space_y.empty() ? X : space(a_.space_y, "space-y");

    if (cmd == "dis") {
      const auto f = mapping(a_.map, "map");
      out << "value " << io::format_real(dis_map(f, X, Y)) << '\n';
    } else if (cmd == "codis") {
      const auto f = mapping(a_.map, "map");
      const auto g = mapping(a_.map_g, "map-g");
      out << "value " << io::format_real(codis_maps(f, g, X, Y)) << '\n';
    } else if (cmd == "onesided") {
      const auto f = mapping(a_.map, "map");
      const auto s = one_sided_map(f, X, Y);
      out << "minus " << io::format_real(s.minus) << '\n';
      out << "plus " << io::format_real(s.plus) << '\n';
      if (!a_.map_g.empty()) {
        const auto g = mapping(a_.map_g, "map-g");
        const auto p = gh_pair(f, g, X, Y);
        out << "gMinus " << io::format_real(p.g.minus) << '\n';
        out << "gPlus " << io::format_real(p.g.plus) << '\n';
        out << "pairMinus " << io::format_real(p.fg.minus) << '\n';
        out << "pairPlus " << io::format_real(p.fg.plus) << '\n';
        out << "ghPair " << io::format_real(p.gh_pair) << '\n';
        out << "mghPair " << io::format_real(p.mgh_pair) << '\n';
      }
    } else if (cmd == "gh") {
      io::write_result(out, gh_exact(X, Y, search()));
    } else if (cmd == "ghclass") {
      io::write_result(out, gh_class(X, Y, parse_class_tag(a_.klass), a_.modified, search()));
    } else if (cmd == "mdgh") {
      io::write_result(out, gh_class(X, Y, ClassTag::any, true, search()));
    } else if (cmd == "build-bijection") {
      const auto f = mapping(a_.map, "map");
      const auto g = mapping(a_.map_g, "map-g");
      const Cover cx = a_.eps ? ball_cover(X, *a_.eps) : singleton_cover(X);
      const Cover cy = a_.eps ? ball_cover(Y, *a_.eps) : singleton_cover(Y);
      auto res = build_bijection(X, Y, cx, cy, f, g, {a_.seed, a_.node_budget});
      if (auto* e = std::get_if<Exhausted>(&res)) throw ExhaustedSignal{e->describe()};
      io::write_certificate(out, std::get<BijectionCertificate>(res), X, Y);
    } else if (cmd == "quasi-inverse") {
      const auto f = mapping(a_.map, "map");
      const auto g = quasi_inverse(f, X, Y);
      out << "value " << io::format_real(measure_surjectivity(f, X, Y).delta_eff) << '\n';
      out << "method quasiInverse\nnodes 0\n";
      io::write_pairs(out, graph(g));
      io::write_map_line(out, "g", g);
    } else if (cmd == "retract") {
      const auto f = mapping(a_.map, "map");
      if (a_.target.empty()) throw DomainError("missing --target");
      const Subset L(Y, io::read_index_list(a_.target));
      const auto r = retract_onto(f, X, Y, L);
      out << "value " << io::format_real(r.rho) << '\n';
      out << "method nearestPoint\nnodes 0\n";
      io::write_pairs(out, graph(r.f_hat));
    } else if (cmd == "pipeline") {
      const auto f = mapping(a_.map, "map");
      if (!a_.eps) throw DomainError("missing --eps");
      PipelineOptions po;
      po.eps = *a_.eps;
      po.delta = a_.delta;
      po.build = {a_.seed, a_.node_budget};
      if (!a_.target.empty()) po.target = Subset(Y, io::read_index_list(a_.target));
      auto res = pipeline_to_bijection(f, X, Y, po);
      if (auto* e = std::get_if<Exhausted>(&res)) throw ExhaustedSignal{e->describe()};
      io::write_pipeline(out, std::get<PipelineResult>(res));
    } else if (cmd == "extract-witness") {
      if (!a_.budget) throw DomainError("missing --budget");
      auto w = extract_witness(X, Y, *a_.budget, search());
      if (!w)
        throw DomainError("no witness: the Gromov-Hausdorff distance is not below " +
                          io::format_real(*a_.budget));
      out << "value " << io::format_real(w->gh_value) << '\n';
      out << "method leastIndexSelection\n";
      out << "nodes " << w->nodes << '\n';
      out << "disF " << io::format_real(w->score.dis_f) << '\n';
      out << "deltaEff " << io::format_real(w->delta_eff) << '\n';
      out << "pairPlus " << io::format_real(w->score.fg.plus) << '\n';
      io::write_pairs(out, graph(w->f));
      io::write_map_line(out, "f", w->f);
      io::write_map_line(out, "g", w->g);
    } else {
      throw DomainError("unknown subcommand " + cmd);
    }
    return 0;
  }

 private:
  const Args& a_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghkit: exact Gromov-Hausdorff distances and bijective approximation on finite "
               "metric spaces"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--space-x", a.space_x, "space or point cloud file for X");
  app.add_option("--space-y", a.space_y, "space or point cloud file for Y (defaults to X)");
  app.add_option("--map", a.map, "mapping file f: X -> Y");
  app.add_option("--map-g", a.map_g, "mapping file g: Y -> X");
  app.add_option("--eps", a.eps, "ball cover radius");
  app.add_option("--class", a.klass, "any | injective | surjective | bijective | inversePair");
  app.add_flag("--modified", a.modified, "use the modified distance (no co-distortion term)");
  app.add_option("--target", a.target, "subset file L of Y");
  app.add_option("--seed", a.seed, "enumeration seed (0 = identity order)");
  app.add_option("--cap", a.cap, "size cap for exact searches");
  app.add_option("--tolerance", a.tolerance, "absolute tolerance for validation");
  app.add_flag("--no-validate", a.no_validate, "skip metric validation of input spaces");
  app.add_option("--output", a.output, "write the result here instead of standard output");
  app.add_option("--threads", a.threads, "worker threads for branch-and-bound subtrees");
  app.add_option("--delta", a.delta, "delta for the aggregated pipeline bound");
  app.add_option("--budget", a.budget, "distance budget d for extract-witness");
  app.add_option("--node-budget", a.node_budget, "backtracking budget for bijection synthesis");

  const char* commands[][2] = {
      {"validate", "check the metric axioms"},
      {"dis", "distortion of --map"},
      {"codis", "co-distortion of --map and --map-g"},
      {"onesided", "one-sided distortions of --map (and the pair with --map-g)"},
      {"gh", "exact Gromov-Hausdorff distance"},
      {"ghclass", "class-restricted distance (--class, --modified)"},
      {"mdgh", "modified Gromov-Hausdorff distance"},
      {"build-bijection", "bijection from --map and --map-g with ball covers (--eps)"},
      {"quasi-inverse", "quasi-inverse of --map"},
      {"retract", "nearest-point retraction of --map onto --target"},
      {"pipeline", "bijective approximation of --map (optionally onto --target)"},
      {"extract-witness", "map pair realizing a distance below --budget"},
      {"selftest", "run the acceptance suite"},
  };
  for (auto& c : commands) app.add_subcommand(c[0], c[1])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ghkit: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  std::ostringstream out;
  int status = 0;
  try {
    status = Runner(a).run(cmd, out);
  } catch (const ghkit::CapacityError& e) {
    std::cerr << "ghkit: capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ExhaustedSignal& e) {
    std::cerr << "ghkit: " << e.message << '\n';
    return kExitExhausted;
  } catch (const ghkit::DomainError& e) {
    std::cerr << "ghkit: " << e.what() << '\n';
    return kExitDomain;
  }

  if (a.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(a.output, std::ios::binary);
    if (!file) {
      std::cerr << "ghkit: cannot write '" << a.output << "'\n";
      return kExitDomain;
    }
    file << out.str();
  }
  return status;
}
