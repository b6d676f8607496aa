#pragma once

// Plain-text file formats and the deterministic result printer.
//
//   space file        n <count>, then count rows of count reals
//   point cloud file  points <count> <dim> <l1|l2|linf>, then count rows of dim reals
//   mapping file      map <domain> <codomain>, then domain zero-based indices
//   subset file       subset <count>, then count zero-based indices
//
// Lines whose first non-blank character is '#' are comments. Numbers are
// parsed and printed with from_chars/to_chars, so the radix is always '.'
// regardless of locale; reals are printed with 17 significant digits.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ghkit/bijection_builder.hpp"
#include "ghkit/error.hpp"
#include "ghkit/gh_search.hpp"
#include "ghkit/metric_space.hpp"
#include "ghkit/surjective.hpp"

namespace ghkit::io {

inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace detail {

/// Whitespace tokenizer that skips comment lines and tracks line numbers.
class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) toks_.push_back({std::move(tok), lineno});
    }
  }

  bool done() const noexcept { return pos_ == toks_.size(); }

  std::string word(const char* what) {
    if (done()) throw DomainError(std::string("unexpected end of file, expected ") + what);
    return toks_[pos_++].text;
  }

  double real(const char* what) {
    auto [text, line] = next(what);
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    if (!text.empty() && *b == '+') ++b;
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e)
      throw DomainError("line " + std::to_string(line) + ": '" + text + "' is not a real " + what);
    return v;
  }

  std::size_t count(const char* what) {
    auto [text, line] = next(what);
    std::size_t v = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size())
      throw DomainError("line " + std::to_string(line) + ": '" + text +
                        "' is not a nonnegative integer " + what);
    return v;
  }

  void expect_end() const {
    if (!done())
      throw DomainError("line " + std::to_string(toks_[pos_].line) + ": trailing data '" +
                        toks_[pos_].text + "'");
  }

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };

  std::pair<std::string, std::size_t> next(const char* what) {
    if (done()) throw DomainError(std::string("unexpected end of file, expected ") + what);
    const auto& t = toks_[pos_++];
    return {t.text, t.line};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point clouds

enum class Norm { l1, l2, linf };

inline const char* to_string(Norm n) {
  switch (n) {
    case Norm::l1: return "l1";
    case Norm::l2: return "l2";
    case Norm::linf: return "linf";
  }
  return "?";
}

inline Norm parse_norm(const std::string& s) {
  if (s == "l1") return Norm::l1;
  if (s == "l2") return Norm::l2;
  if (s == "linf") return Norm::linf;
  throw DomainError("unknown norm '" + s + "' (expected l1, l2 or linf)");
}

struct PointCloud {
  std::size_t dim = 1;
  Norm norm = Norm::l2;
  std::vector<std::vector<double>> points;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

inline double norm_distance(std::span<const double> a, std::span<const double> b, Norm norm) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]);
    switch (norm) {
      case Norm::l1: acc += d; break;
      case Norm::l2: acc += d * d; break;
      case Norm::linf: acc = std::max(acc, d); break;
    }
  }
  return norm == Norm::l2 ? std::sqrt(acc) : acc;
}

/// Induced metric; the matrix is exactly symmetric with a zero diagonal.
inline MetricSpace induced_metric(const PointCloud& pc) {
  const std::size_t n = pc.points.size();
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      flat[i * n + j] = flat[j * n + i] = norm_distance(pc.points[i], pc.points[j], pc.norm);
  return MetricSpace(n, std::move(flat));
}

// ---------------------------------------------------------------------------
// Parsing

inline MetricSpace parse_space_body(detail::Tokens& t) {
  const std::size_t n = t.count("point count");
  if (n == 0) throw DomainError("space file declares zero points");
  std::vector<double> flat(n * n);
  for (auto& v : flat) v = t.real("matrix entry");
  t.expect_end();
  return MetricSpace(n, std::move(flat));
}

inline PointCloud parse_point_cloud_body(detail::Tokens& t) {
  PointCloud pc;
  const std::size_t n = t.count("point count");
  if (n == 0) throw DomainError("point cloud declares zero points");
  pc.dim = t.count("dimension");
  if (pc.dim == 0) throw DomainError("point cloud dimension must be positive");
  pc.norm = parse_norm(t.word("norm"));
  pc.points.assign(n, std::vector<double>(pc.dim));
  for (auto& p : pc.points)
    for (auto& c : p) {
      c = t.real("coordinate");
      if (!std::isfinite(c)) throw DomainError("point cloud coordinate is not finite");
    }
  t.expect_end();
  return pc;
}

inline PointCloud parse_point_cloud(std::istream& in) {
  detail::Tokens t(in);
  const auto head = t.word("header");
  if (head != "points") throw DomainError("expected 'points' header, got '" + head + "'");
  return parse_point_cloud_body(t);
}

/// Reads either a space file or a point cloud file (chosen by the header).
inline MetricSpace parse_space(std::istream& in) {
  detail::Tokens t(in);
  const auto head = t.word("header");
  if (head == "n") return parse_space_body(t);
  if (head == "points") return induced_metric(parse_point_cloud_body(t));
  throw DomainError("expected 'n' or 'points' header, got '" + head + "'");
}

inline Mapping parse_mapping(std::istream& in) {
  detail::Tokens t(in);
  const auto head = t.word("header");
  if (head != "map") throw DomainError("expected 'map' header, got '" + head + "'");
  const std::size_t dom = t.count("domain size");
  const std::size_t cod = t.count("codomain size");
  if (dom == 0 || cod == 0) throw DomainError("mapping sizes must be positive");
  std::vector<Index> img(dom);
  for (auto& v : img) v = t.count("target index");
  t.expect_end();
  return Mapping(cod, std::move(img));
}

/// Subset index list; the "subset <count>" header is optional.
inline std::vector<Index> parse_index_list(std::istream& in) {
  detail::Tokens t(in);
  std::vector<Index> out;
  if (t.done()) throw DomainError("index file is empty");
  std::optional<std::size_t> declared;
  {
    // Peek: a leading word "subset" introduces a count.
    std::string first = t.word("index");
    if (first == "subset") {
      declared = t.count("subset size");
    } else {
      std::size_t v = 0;
      auto r = std::from_chars(first.data(), first.data() + first.size(), v);
      if (r.ec != std::errc() || r.ptr != first.data() + first.size())
        throw DomainError("'" + first + "' is not an index");
      out.push_back(v);
    }
  }
  while (!t.done()) out.push_back(t.count("index"));
  if (declared && *declared != out.size())
    throw DomainError("subset header declares " + std::to_string(*declared) + " indices, found " +
                      std::to_string(out.size()));
  return out;
}

inline MetricSpace read_space(const std::string& path) {
  auto in = detail::open(path);
  return parse_space(in);
}

inline Mapping read_mapping(const std::string& path) {
  auto in = detail::open(path);
  return parse_mapping(in);
}

inline std::vector<Index> read_index_list(const std::string& path) {
  auto in = detail::open(path);
  return parse_index_list(in);
}

// ---------------------------------------------------------------------------
// Writing

inline void write_space(std::ostream& out, const MetricSpace& m) {
  out << "n " << m.size() << '\n';
  for (Index i = 0; i < m.size(); ++i) {
    for (Index j = 0; j < m.size(); ++j) out << (j ? " " : "") << format_real(m(i, j));
    out << '\n';
  }
}

inline void write_point_cloud(std::ostream& out, const PointCloud& pc) {
  out << "points " << pc.points.size() << ' ' << pc.dim << ' ' << to_string(pc.norm) << '\n';
  for (const auto& p : pc.points) {
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << format_real(p[k]);
    out << '\n';
  }
}

inline void write_mapping(std::ostream& out, const Mapping& f) {
  out << "map " << f.domain_size() << ' ' << f.codomain_size() << '\n';
  for (Index x = 0; x < f.domain_size(); ++x) out << f(x) << '\n';
}

inline void write_subset(std::ostream& out, const std::vector<Index>& members) {
  out << "subset " << members.size() << '\n';
  for (Index i : members) out << i << '\n';
}

inline void write_pairs(std::ostream& out, const PairList& pairs) {
  out << "witness\n";
  for (auto [a, b] : pairs) out << a << ' ' << b << '\n';
}

inline void write_map_line(std::ostream& out, const char* label, const Mapping& f) {
  out << label;
  for (Index v : f.image()) out << ' ' << v;
  out << '\n';
}

inline void write_flags(std::ostream& out, const char* label, const std::vector<bool>& flags) {
  out << label;
  for (bool b : flags) out << ' ' << (b ? 1 : 0);
  out << '\n';
}

/// value / method / nodes, then the witness pair list. Mapping-pair witnesses
/// print gr f ∪ gr^-1 g followed by the two image arrays.
inline void write_result(std::ostream& out, const GHResult& r) {
  out << "value " << format_real(r.value) << '\n';
  out << "method " << to_string(r.method) << '\n';
  out << "nodes " << r.nodes << '\n';
  if (r.correspondence) {
    write_pairs(out, r.correspondence->pairs());
  } else if (r.f && r.g) {
    write_pairs(out, Correspondence::from_maps(*r.f, *r.g).pairs());
  }
  if (r.f) write_map_line(out, "f", *r.f);
  if (r.g) write_map_line(out, "g", *r.g);
}

inline void write_certificate(std::ostream& out, const BijectionCertificate& c,
                              const MetricSpace& X, const MetricSpace& Y) {
  const double dis_tilde = dis_map(c.f_tilde, X, Y);
  out << "value " << format_real(0.5 * dis_tilde) << '\n';
  out << "method cantorBernstein\n";
  out << "nodes " << c.nodes << '\n';
  out << "epsX " << format_real(c.eps_x) << '\n';
  out << "epsY " << format_real(c.eps_y) << '\n';
  write_pairs(out, graph(c.f_tilde));
  write_flags(out, "classI", c.class_one);
  write_flags(out, "classII", c.class_two);
  const auto score = gh_pair(c.f, c.g, X, Y);
  out << "disTilde " << format_real(dis_tilde) << '\n';
  out << "bound " << format_real(2 * (score.gh_pair + std::max(c.eps_x, c.eps_y))) << '\n';
  out << "trace\n";
  for (const auto& s : c.trace)
    out << to_string(s.side) << ' ' << s.point << ' '
        << (s.kind == StepCase::choose ? "choose" : "inherit") << ' ' << s.value << '\n';
}

inline void write_pipeline(std::ostream& out, const PipelineResult& p) {
  out << "value " << format_real(0.5 * p.dis_tilde) << '\n';
  out << "method pipeline\n";
  out << "nodes " << p.bijection.nodes << '\n';
  out << "disF " << format_real(p.dis_f) << '\n';
  out << "deltaEff " << format_real(p.delta_eff) << '\n';
  out << "rho " << format_real(p.rho) << '\n';
  out << "eps " << format_real(p.eps) << '\n';
  out << "coverScale " << format_real(p.cover_scale) << '\n';
  write_pairs(out, graph(p.f_tilde));
  write_flags(out, "classI", p.bijection.class_one);
  write_flags(out, "classII", p.bijection.class_two);
  out << "disTilde " << format_real(p.dis_tilde) << '\n';
  out << "bound " << format_real(p.guarantee_bound) << '\n';
  if (p.aggregated_bound) out << "deltaBound " << format_real(*p.aggregated_bound) << '\n';
}

}  // namespace ghkit::io
