#ifndef NEGTYPE_TOOLS_CLI_HPP
#define NEGTYPE_TOOLS_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "negtype/negtype.hpp"
#include "negtype/verify.hpp"

namespace negtype::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kNumericWarning = 3 };

/// A space plus its edge list when it came from a tree.
struct LoadedInput {
  std::string name;
  FiniteSemiMetricSpace space;
  std::optional<std::vector<TreeEdge>> edges;
};

namespace detail {

inline std::string g9(double v) {
  if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline double parse_number(std::string_view s) {
  double v = 0.0;
  if (!negtype::detail::parse_double(s, v)) throw Error(ErrorKind::ParseError, "'" + std::string(s) + "' is not a number");
  return v;
}

inline std::size_t parse_count(std::string_view s) {
  const double v = parse_number(s);
  if (!(v >= 0) || v != std::floor(v) || v > 1e9) throw Error(ErrorKind::ParseError, "'" + std::string(s) + "' is not a count");
  return static_cast<std::size_t>(v);
}

/// Decimal, or a multiple of pi such as "pi", "3pi/2", "2*pi/3", "-pi/4".
inline double parse_angle(std::string_view s) {
  s = negtype::detail::trim(s);
  const auto at = s.find("pi");
  if (at == std::string_view::npos) return parse_number(s);
  std::string_view coef = s.substr(0, at);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  double c = coef.empty() ? 1.0 : (coef == "-" ? -1.0 : parse_number(coef));
  std::string_view rest = s.substr(at + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') throw Error(ErrorKind::ParseError, "bad angle '" + std::string(s) + "'");
    c /= parse_number(rest.substr(1));
  }
  return c * std::numbers::pi;
}

inline std::vector<std::string_view> split_list(std::string_view s, char sep) {
  auto parts = negtype::detail::split(s, sep);
  for (auto& p : parts) p = negtype::detail::trim(p);
  return parts;
}

}  // namespace detail

/// discrete:N  star:K[,W]  path:N[,W]  circle:a1;a2;...  enflo:P,n,[P1;P2;...]  random:N,SEED
inline LoadedInput parse_generator(std::string_view spec, std::uint64_t seed = 0) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::ParseError, "generator spec needs 'kind:args'");
  const auto kind = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);
  const std::string name(spec);
  using detail::parse_count;
  using detail::parse_number;

  if (kind == "discrete") return {name, gen_discrete(parse_count(args)), std::nullopt};
  if (kind == "star" || kind == "path") {
    const auto parts = detail::split_list(args, ',');
    if (parts.size() > 2) throw Error(ErrorKind::ParseError, "expected " + std::string(kind) + ":N[,W]");
    const double w = parts.size() == 2 ? parse_number(parts[1]) : 1.0;
    auto edges = kind == "star" ? star_edges(parse_count(parts[0]), w) : path_edges(parse_count(parts[0]), w);
    auto x = gen_tree(edges);
    return {name, std::move(x), std::move(edges)};
  }
  if (kind == "circle") {
    std::vector<double> angles;
    for (auto a : detail::split_list(args, ';')) angles.push_back(detail::parse_angle(a));
    return {name, gen_circle(angles), std::nullopt};
  }
  if (kind == "enflo") {
    const auto open = args.find('[');
    const auto close = args.find(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      throw Error(ErrorKind::ParseError, "expected enflo:P,n,[P1;P2;...]");
    const auto head = detail::split_list(args.substr(0, open), ',');
    if (head.size() != 3 || !head[2].empty()) throw Error(ErrorKind::ParseError, "expected enflo:P,n,[P1;P2;...]");
    std::vector<double> exps;
    for (auto e : detail::split_list(args.substr(open + 1, close - open - 1), ';')) exps.push_back(parse_number(e));
    return {name, gen_enflo_truncation(parse_number(head[0]), exps, parse_count(head[1])), std::nullopt};
  }
  if (kind == "random") {
    const auto parts = detail::split_list(args, ',');
    if (parts.empty() || parts.size() > 4) throw Error(ErrorKind::ParseError, "expected random:N[,SEED[,MIN,MAX]]");
    const std::uint64_t s = parts.size() >= 2 ? static_cast<std::uint64_t>(parse_count(parts[1])) : seed;
    const double lo = parts.size() == 4 ? parse_number(parts[2]) : 1.0;
    const double hi = parts.size() == 4 ? parse_number(parts[3]) : 2.0;
    return {name, gen_random_semimetric(parse_count(parts[0]), s, lo, hi), std::nullopt};
  }
  throw Error(ErrorKind::ParseError, "unknown generator '" + std::string(kind) + "'");
}

/// "a:b:step" inclusive of b up to rounding.
inline std::vector<double> parse_grid(std::string_view spec) {
  const auto parts = detail::split_list(spec, ':');
  if (parts.size() != 3) throw Error(ErrorKind::ParseError, "grid must be 'a:b:step'");
  const double a = detail::parse_number(parts[0]);
  const double b = detail::parse_number(parts[1]);
  const double step = detail::parse_number(parts[2]);
  if (!(step > 0) || !(b >= a)) throw Error(ErrorKind::BadRange, "grid needs step > 0 and b >= a");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw Error(ErrorKind::BadRange, "grid too large");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = a + step * static_cast<double>(i);
  return g;
}

inline LoadedInput load_matrix_file(const std::string& path) {
  if (std::filesystem::path(path).extension() == ".json") {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    try {
      return {path, space_from_json(json::parse(in)), std::nullopt};
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
  }
  return {path, read_matrix_csv_file(path), std::nullopt};
}

struct Options {
  std::string matrix, tree, gen;
  std::optional<double> p, q, gamma;
  std::string grid;
  bool json = false;
  std::uint64_t seed = 11;
  std::size_t samples = 100000;
  std::string corpus;
  ToleranceConfig tol;

  std::optional<double> exponent() const { return q ? q : p; }
};

inline LoadedInput resolve_input(const Options& o) {
  const int sources = !o.matrix.empty() + !o.tree.empty() + !o.gen.empty();
  if (sources != 1) throw Error(ErrorKind::ParseError, "exactly one of --matrix, --tree, --gen is required");
  if (!o.matrix.empty()) return load_matrix_file(o.matrix);
  if (!o.gen.empty()) return parse_generator(o.gen, o.seed);
  if (std::filesystem::exists(o.tree)) {
    auto edges = read_tree_edges_file(o.tree);
    auto x = gen_tree(edges);
    return {o.tree, std::move(x), std::move(edges)};
  }
  auto in = parse_generator(o.tree, o.seed);
  if (!in.edges) throw Error(ErrorKind::NotATree, "--tree expects an edge-list file or a star/path generator");
  return in;
}

namespace detail {

inline double require_exponent(const Options& o, std::string_view verb) {
  const auto e = o.exponent();
  if (!e) throw Error(ErrorKind::ParseError, std::string(verb) + " needs --q or --p");
  return *e;
}

inline std::string vector_text(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + g9(v[i]);
  return s + "]";
}

inline std::string simplex_text(const LoadedSimplex& d) {
  std::string s = "[";
  for (std::size_t k = 0; k < d.s(); ++k) s += (k ? ", " : "") + std::string("x") + std::to_string(d.side_a[k]) + "(" + g9(d.weights_a[k]) + ")";
  s += " ; ";
  for (std::size_t k = 0; k < d.t(); ++k) s += (k ? ", " : "") + std::string("x") + std::to_string(d.side_b[k]) + "(" + g9(d.weights_b[k]) + ")";
  return s + "]";
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

inline int cmd_check(const Options& o, std::ostream& out) {
  const auto in = resolve_input(o);
  const double q = detail::require_exponent(o, "check");
  o.tol.validate();
  const auto v = check(in.space, q, o.tol);
  if (o.json) {
    detail::emit(out, to_json(v));
    return kOk;
  }
  out << "space: " << in.name << " (n = " << in.space.size() << ")\n";
  out << "q = " << detail::g9(q) << '\n';
  out << "status: " << to_string(v.status) << '\n';
  out << "critical value: " << detail::g9(v.critical_value) << '\n';
  if (v.witness) out << "witness: " << detail::vector_text(*v.witness) << '\n';
  return kOk;
}

inline int cmd_sup(const Options& o, std::ostream& out) {
  const auto in = resolve_input(o);
  const auto r = supremal_negative_type(in.space, o.tol);
  std::optional<LoadedSimplex> null_simplex;
  if (!r.infinite) null_simplex = witness_null_simplex(r);
  if (o.json) {
    auto j = to_json(r);
    j["null_simplex"] = null_simplex ? to_json(*null_simplex) : json(nullptr);
    detail::emit(out, j);
    return kOk;
  }
  out << "space: " << in.name << " (n = " << in.space.size() << ")\n";
  if (r.infinite) {
    out << "p_sup = infinity (search capped at p_max = " << detail::g9(o.tol.p_max) << ")\n";
    return kOk;
  }
  out << "p_sup = " << detail::g9(r.p_sup) << '\n';
  out << "bracket: [" << detail::g9(r.lo) << ", " << detail::g9(r.hi) << "]\n";
  out << "status at p_sup: " << to_string(r.verdict_at_sup->status) << '\n';
  out << "null simplex: " << detail::simplex_text(*null_simplex) << '\n';
  return kOk;
}

inline int cmd_gap(const Options& o, std::ostream& out) {
  const auto in = resolve_input(o);
  const double p = detail::require_exponent(o, "gap");
  const auto g = negative_type_gap(in.space, p, o.tol);
  std::optional<double> formula;
  if (in.edges && p == 1.0) formula = tree_gap(*in.edges);
  if (o.json) {
    auto j = to_json(g);
    j["p"] = p;
    j["tree_formula"] = formula ? json(*formula) : json(nullptr);
    detail::emit(out, j);
  } else {
    out << "space: " << in.name << " (n = " << in.space.size() << ")\n";
    out << "p = " << detail::g9(p) << '\n';
    out << "status: " << to_string(g.verdict.status) << '\n';
    if (g.negative_infinite) {
      out << "Gamma = -infinity (no " << detail::g9(p) << "-negative type)\n";
      out << "violating simplex: " << detail::simplex_text(g.arg_simplex) << '\n';
    } else {
      out << "Gamma = " << detail::g9(g.gamma) << '\n';
      out << "arg simplex: " << detail::simplex_text(g.arg_simplex) << '\n';
      out << "bipartitions searched: " << g.bipartitions_searched << '\n';
      out << "qp iterations: " << g.qp_iterations_total << '\n';
      if (formula) out << "tree formula: " << detail::g9(*formula) << '\n';
    }
  }
  if (!g.converged) return kNumericWarning;
  return kOk;
}

inline int cmd_zeta(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = resolve_input(o);
  const double p = detail::require_exponent(o, "zeta");
  double gamma = 0.0;
  bool converged = true;
  std::string source;
  if (o.gamma) {
    gamma = *o.gamma;
    source = "given";
  } else if (in.edges && p == 1.0) {
    gamma = tree_gap(*in.edges);
    source = "tree formula";
  } else {
    const auto g = negative_type_gap(in.space, p, o.tol);
    if (g.negative_infinite)
      throw Error(ErrorKind::NegativeGap, "space fails " + detail::g9(p) + "-negative type; no zeta bound");
    gamma = std::max(g.gamma, 0.0);
    converged = g.converged;
    source = "optimizer";
  }
  const auto r = zeta_bound(in.space, p, gamma);
  if (o.json) {
    auto j = to_json(r);
    j["gamma_source"] = source;
    detail::emit(out, j);
  } else {
    out << "space: " << in.name << " (n = " << in.space.size() << ")\n";
    out << "p = " << detail::g9(p) << '\n';
    out << "Gamma = " << detail::g9(gamma) << " (" << source << ")\n";
    out << "diam^p = " << detail::g9(r.diam_p) << '\n';
    out << "gamma(n) = " << detail::g9(r.gamma_n) << '\n';
    out << "scaled diameter = " << detail::g9(r.frak_d) << '\n';
    out << "zeta = " << detail::g9(r.zeta) << '\n';
    out << "strict on [" << detail::g9(r.interval_lo()) << ", " << detail::g9(r.interval_hi()) << ")\n";
  }
  if (!converged) {
    err << "warning: gap optimizer did not converge\n";
    return kNumericWarning;
  }
  return kOk;
}

inline int cmd_tree_bound(const Options& o, std::ostream& out) {
  const auto in = resolve_input(o);
  if (!in.edges) throw Error(ErrorKind::NotATree, "tree-bound needs a tree input");
  const double bound = tree_type_lower_bound(*in.edges);
  const double gap = tree_gap(*in.edges);
  std::optional<double> star;
  const std::size_t n = in.space.size();
  const bool is_star = std::all_of(in.edges->begin(), in.edges->end(), [&](const TreeEdge& e) {
    return e.u == in.edges->front().u || e.v == in.edges->front().u;
  }) || std::all_of(in.edges->begin(), in.edges->end(), [&](const TreeEdge& e) {
    return e.u == in.edges->front().v || e.v == in.edges->front().v;
  });
  if (is_star && n >= 3) star = star_exact_type(n);
  if (o.json) {
    detail::emit(out, json{{"n", n},
                           {"diameter", in.space.diameter()},
                           {"gamma_1", gap},
                           {"lower_bound", bound},
                           {"star_exact", star ? json(*star) : json(nullptr)}});
    return kOk;
  }
  out << "tree: " << in.name << " (n = " << n << ", diameter " << detail::g9(in.space.diameter()) << ")\n";
  out << "Gamma^1 = " << detail::g9(gap) << '\n';
  out << "supremal exponent >= " << detail::g9(bound) << '\n';
  if (star) out << "star exact value = " << detail::g9(*star) << '\n';
  return kOk;
}

inline int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = resolve_input(o);
  if (o.grid.empty()) throw Error(ErrorKind::ParseError, "scan needs --grid a:b:step");
  const auto grid = parse_grid(o.grid);
  try {
    const auto pts = interval_scan(in.space, grid, o.tol);
    if (o.json) {
      json arr = json::array();
      for (const auto& pt : pts) arr.push_back(to_json(pt));
      detail::emit(out, json{{"points", arr}});
      return kOk;
    }
    out << "q           status    critical_value\n";
    for (const auto& pt : pts) {
      char line[128];
      std::snprintf(line, sizeof line, "%-11s %-9s %s\n", detail::g9(pt.q).c_str(), std::string(to_string(pt.status)).c_str(),
                    detail::g9(pt.critical_value).c_str());
      out << line;
    }
    return kOk;
  } catch (const IntervalAnomaly& a) {
    err << "error: " << a.what() << '\n';
    return kNumericWarning;
  }
}

inline int cmd_gen(const Options& o, std::ostream& out) {
  const auto in = resolve_input(o);
  if (o.json)
    detail::emit(out, to_json(in.space));
  else
    write_matrix_csv(out, in.space);
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  auto corpus = default_corpus(o.seed);
  std::vector<std::string> rejected;
  if (!o.corpus.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& f : std::filesystem::directory_iterator(o.corpus))
      if (f.is_regular_file()) files.push_back(f.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        auto in = load_matrix_file(f.string());
        corpus.push_back({f.filename().string(), std::move(in.space), std::nullopt});
      } catch (const Error& e) {
        rejected.push_back(f.filename().string() + ": " + e.what());
      }
    }
  }
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.samples = o.samples;
  vo.tol = o.tol;
  auto report = run_verify(corpus, vo);
  report.rejected_inputs = rejected;

  std::size_t passed = 0;
  for (const auto& p : report.properties) passed += p.passed();
  if (o.json) {
    json props = json::array();
    for (const auto& p : report.properties)
      props.push_back(json{{"module", p.module},
                           {"property", p.name},
                           {"passed", p.passed()},
                           {"cases", p.cases},
                           {"failures", p.failures},
                           {"first_failure", p.first_failure}});
    detail::emit(out, json{{"seed", o.seed},
                           {"corpus_size", corpus.size()},
                           {"rejected", report.rejected_inputs},
                           {"properties", props},
                           {"passed", passed},
                           {"total", report.properties.size()}});
  } else {
    out << "corpus: " << corpus.size() << " spaces (seed " << o.seed << ")\n";
    for (const auto& r : report.rejected_inputs) out << "rejected input: " << r << '\n';
    for (const auto& p : report.properties) {
      out << (p.passed() ? "PASS " : "FAIL ") << p.module << ": " << p.name << " (" << p.cases << " cases";
      if (!p.passed()) out << ", " << p.failures << " failed; first: " << p.first_failure;
      out << ")\n";
    }
    out << passed << "/" << report.properties.size() << " properties passed\n";
  }
  return report.all_passed() ? kOk : kVerifyFailed;
}

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negative type of finite semi-metric spaces", "negtype"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool input = true) {
    if (input) {
      sub->add_option("--matrix", o.matrix, "distance matrix file (CSV, or JSON with .json extension)");
      sub->add_option("--tree", o.tree, "tree edge-list file or star/path generator spec");
      sub->add_option("--gen", o.gen, "generator spec, e.g. discrete:4, star:3, circle:0;pi/2;pi");
    }
    sub->add_option("--p", o.p, "exponent");
    sub->add_option("--q", o.q, "exponent (alias of --p)");
    sub->add_flag("--json", o.json, "emit JSON");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol-eig", o.tol.eig_tol, "relative eigenvalue threshold");
    sub->add_option("--tol-bisect", o.tol.bisect_tol, "exponent resolution");
    sub->add_option("--tol-qp", o.tol.qp_tol, "QP stationarity threshold");
    sub->add_option("--p-max", o.tol.p_max, "exponent search cap");
    sub->add_option("--samples", o.samples, "oracle samples");
  };

  auto* check_cmd = app.add_subcommand("check", "classify q-negative type: STRICT, BOUNDARY or FAIL");
  auto* sup_cmd = app.add_subcommand("sup", "supremal exponent of negative type");
  auto* gap_cmd = app.add_subcommand("gap", "p-negative type gap by exhaustive bipartition search");
  auto* zeta_cmd = app.add_subcommand("zeta", "guaranteed strictness interval above p");
  auto* tree_cmd = app.add_subcommand("tree-bound", "lower bound on the supremal exponent of a unit tree");
  auto* scan_cmd = app.add_subcommand("scan", "verdicts over an exponent grid");
  auto* gen_cmd = app.add_subcommand("gen", "print a space (CSV, or JSON with --json)");
  auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
  for (auto* s : {check_cmd, sup_cmd, gap_cmd, zeta_cmd, tree_cmd, scan_cmd, gen_cmd}) add_common(s);
  add_common(verify_cmd, false);
  zeta_cmd->add_option("--gamma", o.gamma, "use this gap value instead of computing it");
  scan_cmd->add_option("--grid", o.grid, "exponent grid a:b:step");
  verify_cmd->add_option("--corpus", o.corpus, "directory of extra matrix files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*check_cmd) return cmd_check(o, out);
    if (*sup_cmd) return cmd_sup(o, out);
    if (*gap_cmd) return cmd_gap(o, out);
    if (*zeta_cmd) return cmd_zeta(o, out, err);
    if (*tree_cmd) return cmd_tree_bound(o, out);
    if (*scan_cmd) return cmd_scan(o, out, err);
    if (*gen_cmd) return cmd_gen(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
  } catch (const IntervalAnomaly& e) {
    err << "error: " << e.what() << '\n';
    return kNumericWarning;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::EigensolverFailure ? kNumericWarning : kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace negtype::cli

#endif  // NEGTYPE_TOOLS_CLI_HPP
