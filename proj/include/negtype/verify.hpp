#ifndef NEGTYPE_VERIFY_HPP
#define NEGTYPE_VERIFY_HPP

// Desk-scale property suite: every module invariant checked over a seeded
// corpus of spaces. Used by `negtype verify` and by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "negtype/bounds.hpp"
#include "negtype/checker.hpp"
#include "negtype/serialize.hpp"
#include "negtype/simplex_gap.hpp"
#include "negtype/space.hpp"
#include "negtype/tolerance.hpp"

namespace negtype {

struct CorpusEntry {
  std::string name;
  FiniteSemiMetricSpace space;
  std::optional<std::vector<TreeEdge>> edges;  ///< set for trees

  bool unit_tree() const {
    return edges && std::all_of(edges->begin(), edges->end(), [](const TreeEdge& e) { return e.weight == 1.0; });
  }
};

inline std::vector<TreeEdge> spider_edges() { return {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {1, 4, 1}, {2, 5, 1}}; }

inline std::vector<TreeEdge> random_tree_edges(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> w(lo, hi);
  std::vector<TreeEdge> e;
  for (std::size_t k = 1; k < n; ++k)
    e.push_back({std::uniform_int_distribution<std::size_t>(0, k - 1)(rng), k, lo == hi ? lo : w(rng)});
  return e;
}

/// Trees, discrete spaces, circle subsets, a block truncation and seeded random spaces.
inline std::vector<CorpusEntry> default_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> c;
  auto tree = [&](std::string name, std::vector<TreeEdge> e) {
    auto x = gen_tree(e);
    c.push_back({std::move(name), std::move(x), std::move(e)});
  };
  for (std::size_t n = 3; n <= 5; ++n) tree("path:" + std::to_string(n), path_edges(n));
  for (std::size_t k = 2; k <= 5; ++k) tree("star:" + std::to_string(k), star_edges(k));
  tree("spider:6", spider_edges());
  for (std::size_t n = 3; n <= 5; ++n) c.push_back({"discrete:" + std::to_string(n), gen_discrete(n), std::nullopt});
  c.push_back({"circle:square", gen_circle(equispaced_angles(4)), std::nullopt});
  c.push_back({"circle:triangle", gen_circle(equispaced_angles(3)), std::nullopt});
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> a(0.0, 2.0 * std::numbers::pi);
    std::vector<double> angles(5);
    for (auto& v : angles) v = a(rng);
    c.push_back({"circle:random5", gen_circle(angles), std::nullopt});
  }
  {
    const double exps[] = {2.0};
    c.push_back({"enflo:1.5,4,[2]", gen_enflo_truncation(1.5, exps, 4), std::nullopt});
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    c.push_back({"random:" + std::to_string(n) + "," + std::to_string(seed + n),
                 gen_random_semimetric(n, seed + n, 1.0, 2.0), std::nullopt});
    c.push_back({"random-metric:" + std::to_string(n), gen_random_semimetric(n, seed + 100 + n, 1.0, 1.5),
                 std::nullopt});
  }
  return c;
}

struct PropertyOutcome {
  std::string module;
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
  std::vector<std::string> rejected_inputs;
  std::vector<PropertyOutcome> properties;

  bool all_passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyOutcome& p) { return p.passed(); });
  }
};

struct VerifyOptions {
  std::uint64_t seed = 11;
  std::size_t samples = 100000;  ///< oracle samples per (space, exponent)
  ToleranceConfig tol;
};

namespace detail {

class PropertyRecorder {
 public:
  PropertyRecorder(std::string module, std::string name) : out_{std::move(module), std::move(name)} {}

  void expect(bool ok, const std::string& what) {
    ++out_.cases;
    if (ok) return;
    if (out_.failures++ == 0) out_.first_failure = what;
  }

  template <typename F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }

  PropertyOutcome take() { return std::move(out_); }

 private:
  PropertyOutcome out_;
};

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(9);
  s << v;
  return s.str();
}

}  // namespace detail

inline VerifyReport run_verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& opt = {}) {
  using detail::fmt;
  using detail::PropertyRecorder;
  VerifyReport report;
  const auto& tol = opt.tol;
  auto add = [&](PropertyRecorder& r) { report.properties.push_back(r.take()); };

  // Cached supremal results; the search dominates the runtime.
  std::vector<std::optional<SupremalResult>> sup(corpus.size());
  auto supremal = [&](std::size_t k) -> const SupremalResult& {
    if (!sup[k]) sup[k] = supremal_negative_type(corpus[k].space, tol);
    return *sup[k];
  };

  // ---- core_space
  {
    PropertyRecorder r("core_space", "matrix round trip through from_matrix");
    for (const auto& e : corpus)
      r.guarded(e.name, [&] {
        r.expect(FiniteSemiMetricSpace::from_matrix(e.space.matrix()).matrix() == e.space.matrix(), e.name);
      });
    add(r);
  }
  {
    PropertyRecorder r("core_space", "unit path on n vertices has diameter and scaled diameter n-1");
    for (std::size_t n = 2; n <= 12; ++n) {
      const auto x = gen_path(n);
      r.expect(x.diameter() == double(n - 1) && x.scaled_diameter() == double(n - 1), "path:" + std::to_string(n));
    }
    add(r);
  }
  {
    PropertyRecorder r("core_space", "scaled diameter is invariant under rescaling");
    for (const auto& e : corpus)
      for (double c : {1e-3, 0.5, 3.0, 1e4}) {
        const double a = e.space.scaled_diameter();
        const double b = e.space.rescale(c).scaled_diameter();
        r.expect(std::abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() * a, e.name + " c=" + fmt(c));
      }
    add(r);
  }
  {
    PropertyRecorder r("core_space", "power matrices multiply by adding exponents");
    for (const auto& e : corpus)
      for (auto [p, q] : {std::pair{0.5, 1.0}, std::pair{1.3, 0.7}, std::pair{2.0, 3.5}}) {
        const auto a = e.space.power_matrix(p), b = e.space.power_matrix(q), ab = e.space.power_matrix(p + q);
        bool ok = true;
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) ok = ok && std::abs(a(i, j) * b(i, j) - ab(i, j)) <= 1e-12 * ab(i, j);
        r.expect(ok, e.name + " p=" + fmt(p) + " q=" + fmt(q));
      }
    add(r);
  }
  {
    PropertyRecorder r("core_space", "block truncation distances are 1 or cross values in (1/2, 1)");
    const std::vector<std::vector<double>> exp_lists{{2.0}, {1.7, 1.6}, {3.0, 2.5, 2.1}};
    for (const auto& exps : exp_lists) {
      const auto x = gen_enflo_truncation(1.5, exps, 4);
      bool ok = true;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (i == j) continue;
          const bool cross = i / 8 == j / 8 && (i / 4) % 2 != (j / 4) % 2;
          ok = ok && (cross ? (x(i, j) > 0.5 && x(i, j) < 1.0) : x(i, j) == 1.0);
        }
      r.expect(ok, "blocks=" + std::to_string(exps.size()));
    }
    add(r);
  }

  // ---- negtype_checker
  {
    PropertyRecorder r("negtype_checker", "status is invariant under rescaling");
    for (const auto& e : corpus)
      for (double c : {0.01, 7.0})
        for (double q : {0.5, 1.0, 2.0, 3.0})
          r.guarded(e.name, [&] {
            r.expect(check(e.space, q, tol).status == check(e.space.rescale(c), q, tol).status,
                     e.name + " c=" + fmt(c) + " q=" + fmt(q));
          });
    add(r);
  }
  {
    PropertyRecorder r("negtype_checker", "spectral verdict agrees with the sampling oracle");
    std::uint64_t salt = 0;
    for (const auto& e : corpus) {
      if (e.space.size() > 6) continue;
      for (double q : {0.5, 1.0, 2.0})
        r.guarded(e.name, [&] {
          const auto v = check(e.space, q, tol);
          const double oracle = brute_force_gap(e.space, q, opt.samples, opt.seed + salt++);
          const double band = 1e-9 * v.scale;
          bool ok = false;
          switch (v.status) {
            case Status::Strict: ok = oracle > band; break;
            case Status::Fail: ok = oracle < -band; break;
            case Status::Boundary: ok = oracle >= -band && oracle <= 5e-3 * v.scale; break;
          }
          r.expect(ok, e.name + " q=" + fmt(q) + " " + std::string(to_string(v.status)) + " oracle=" + fmt(oracle));
        });
    }
    add(r);
  }
  {
    PropertyRecorder r("negtype_checker", "strict at every exponent below a non-FAIL exponent");
    for (const auto& e : corpus)
      for (double p : {0.5, 1.0, 2.0, 3.0})
        r.guarded(e.name, [&] {
          if (check(e.space, p, tol).status == Status::Fail) return;
          bool ok = true;
          for (int k = 0; k < 10; ++k) ok = ok && check(e.space, p * k / 10.0, tol).status == Status::Strict;
          r.expect(ok, e.name + " p=" + fmt(p));
        });
    add(r);
  }
  {
    PropertyRecorder r("negtype_checker", "supremal exponent is BOUNDARY, never STRICT");
    for (std::size_t k = 0; k < corpus.size(); ++k)
      r.guarded(corpus[k].name, [&] {
        const auto& s = supremal(k);
        if (s.infinite) return;
        r.expect(check(corpus[k].space, s.p_sup, tol).status == Status::Boundary,
                 corpus[k].name + " p_sup=" + fmt(s.p_sup));
      });
    add(r);
  }
  {
    PropertyRecorder r("negtype_checker", "FAIL witnesses violate the inequality directly");
    for (const auto& e : corpus)
      for (double q : {1.5, 2.5, 4.0, 8.0})
        r.guarded(e.name, [&] {
          const auto v = check(e.space, q, tol);
          if (v.status != Status::Fail) return;
          r.expect(quadratic_form(e.space.power_matrix(q), *v.witness) > 0.0, e.name + " q=" + fmt(q));
        });
    add(r);
  }

  // ---- simplex_gap
  std::mt19937_64 rng(opt.seed);
  {
    PropertyRecorder r("simplex_gap", "signed-vector and simplex forms of the gap agree");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& e = corpus[static_cast<std::size_t>(trial) % corpus.size()];
      const double p = 0.25 * (trial % 13);
      std::vector<double> eta(e.space.size());
      double pos = 0, neg = 0;
      while (pos == 0 || neg == 0) {
        pos = neg = 0;
        for (auto& v : eta) {
          v = u(rng);
          (v > 0 ? pos : neg) += v;
        }
      }
      for (auto& v : eta) v = v > 0 ? v / pos : v / -neg;
      r.guarded(e.name, [&] {
        const double scale = e.space.power_matrix(p).max_abs();
        const double a = gap_from_eta(e.space, eta, p);
        const double b = simplex_gap(e.space, split_by_sign(eta, 0.0), p);
        r.expect(std::abs(a - b) <= 1e-12 * scale, e.name + " p=" + fmt(p));
      });
    }
    add(r);
  }
  {
    PropertyRecorder r("simplex_gap", "optimizer matches the harmonic tree formula");
    for (int trial = 0; trial < 20; ++trial) {
      const auto edges = random_tree_edges(3 + static_cast<std::size_t>(trial) % 7, rng, 0.5, 3.0);
      r.guarded("tree", [&] {
        const auto g = negative_type_gap(gen_tree(edges), 1.0, tol);
        r.expect(std::abs(g.gamma - tree_gap(edges)) <= 1e-5,
                 "trial " + std::to_string(trial) + " qp=" + fmt(g.gamma) + " formula=" + fmt(tree_gap(edges)));
      });
    }
    add(r);
  }
  {
    PropertyRecorder r("simplex_gap", "STRICT has a positive gap floor, BOUNDARY has zero gap");
    for (const auto& e : corpus) {
      if (e.space.size() > 10) continue;
      for (double q : {0.5, 1.0, 2.0})
        r.guarded(e.name, [&] {
          const auto g = negative_type_gap(e.space, q, tol);
          const double n = static_cast<double>(e.space.size());
          if (g.verdict.status == Status::Strict)
            r.expect(g.gamma >= 0.5 * -g.verdict.critical_value * 4.0 / n * (1 - 1e-9) && g.gamma > 0,
                     e.name + " q=" + fmt(q) + " gamma=" + fmt(g.gamma));
          else if (g.verdict.status == Status::Boundary)
            r.expect(std::abs(g.gamma) <= 1e-6 * g.verdict.scale, e.name + " q=" + fmt(q) + " gamma=" + fmt(g.gamma));
        });
      // exactly at the supremal exponent
    }
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      if (corpus[k].space.size() > 10) continue;
      r.guarded(corpus[k].name, [&] {
        const auto& s = supremal(k);
        if (s.infinite) return;
        const auto g = negative_type_gap(corpus[k].space, s.p_sup, tol);
        r.expect(g.verdict.status == Status::Boundary && std::abs(g.gamma) <= 1e-6 * g.verdict.scale,
                 corpus[k].name + " at p_sup gamma=" + fmt(g.gamma));
      });
    }
    add(r);
  }
  {
    PropertyRecorder r("simplex_gap", "sampling oracle sandwiches the optimizer");
    std::uint64_t salt = 1000;
    for (const auto& e : corpus) {
      if (e.space.size() > 6) continue;
      for (double q : {0.5, 1.0, 2.0})
        r.guarded(e.name, [&] {
          const auto g = negative_type_gap(e.space, q, tol);
          if (g.negative_infinite) return;
          const double oracle = brute_force_gap(e.space, q, opt.samples, opt.seed + salt++);
          r.expect(oracle >= g.gamma - tol.qp_tol && oracle - g.gamma <= 5e-3 * g.verdict.scale,
                   e.name + " q=" + fmt(q) + " qp=" + fmt(g.gamma) + " oracle=" + fmt(oracle));
        });
    }
    add(r);
  }
  {
    PropertyRecorder r("simplex_gap", "gap scales as c^p under rescaling");
    for (const auto& e : corpus) {
      if (e.space.size() > 6) continue;
      for (double p : {0.5, 1.0})
        r.guarded(e.name, [&] {
          const auto a = negative_type_gap(e.space, p, tol);
          if (a.negative_infinite) return;
          const double c = 2.5;
          const auto b = negative_type_gap(e.space.rescale(c), p, tol);
          const double want = std::pow(c, p) * a.gamma;
          r.expect(std::abs(b.gamma - want) <= 1e-9 * std::abs(want), e.name + " p=" + fmt(p));
        });
    }
    add(r);
  }
  {
    PropertyRecorder r("simplex_gap", "pairwise load product is maximized at the uniform load");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t s = 1; s <= 6; ++s) {
      Matrix h(s, -1.0);
      for (std::size_t i = 0; i < s; ++i) h(i, i) = 0.0;
      std::vector<double> start(s);
      for (auto& v : start) v = u(rng);
      const std::size_t blocks[] = {s};
      const auto res = minimize_on_simplices(h, blocks, spectral_norm(h), 1e-12, tol.qp_max_iter, start);
      r.expect(std::abs(-res.value - 0.5 * (1.0 - 1.0 / double(s))) <= 1e-8, "s=" + std::to_string(s));
    }
    add(r);
  }

  // ---- bounds
  {
    PropertyRecorder r("bounds", "gamma_fn strictly increasing");
    for (std::size_t m = 2; m <= 1000; ++m) r.expect(gamma_fn(m + 1) > gamma_fn(m), "m=" + std::to_string(m));
    add(r);
  }
  {
    PropertyRecorder r("bounds", "every split of m points is dominated by gamma_fn(m)");
    for (std::size_t m = 2; m <= 40; ++m)
      for (std::size_t s = 1; s < m; ++s) {
        const double lhs = 0.5 * (1 - 1.0 / double(s)) + 0.5 * (1 - 1.0 / double(m - s));
        r.expect(lhs <= gamma_fn(m) + 1e-15, "s=" + std::to_string(s) + " m=" + std::to_string(m));
      }
    add(r);
  }
  {
    PropertyRecorder r("bounds", "strict on the guaranteed interval [p, p + zeta)");
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      const auto& e = corpus[k];
      if (e.space.size() < 3 || e.space.size() > 10) continue;
      r.guarded(e.name, [&] {
        if (supremal(k).infinite) return;
        const double p = 1.0;
        const auto g = negative_type_gap(e.space, p, tol);
        if (g.negative_infinite || !(g.gamma > 0)) return;
        const auto z = zeta_bound(e.space, p, g.gamma);
        if (z.zeta_infinite) return;
        bool ok = true;
        if (z.zeta > 1e-6 + 1e-12) {
          const auto grid = linspace(p, p + z.zeta - 1e-6, 20);
          for (const auto& pt : interval_scan(e.space, grid, tol)) ok = ok && pt.status == Status::Strict;
        }
        ok = ok && check(e.space, p + z.zeta, tol).status != Status::Fail;
        r.expect(ok, e.name + " zeta=" + fmt(z.zeta));
      });
    }
    add(r);
  }
  {
    PropertyRecorder r("bounds", "zeta is invariant under rescaling");
    for (const auto& e : corpus) {
      if (e.space.size() < 3) continue;
      for (double c : {0.2, 9.0}) {
        const double p = 1.0, gamma = 0.1;
        const auto a = zeta_bound(e.space, p, gamma);
        const auto b = zeta_bound(e.space.rescale(c), p, std::pow(c, p) * gamma);
        r.expect(a.zeta_infinite ? b.zeta_infinite : std::abs(a.zeta - b.zeta) <= 1e-9 * a.zeta,
                 e.name + " c=" + fmt(c));
      }
    }
    add(r);
  }
  {
    PropertyRecorder r("bounds", "tree bound below supremal exponent; star formula matches bisection");
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      if (!corpus[k].unit_tree() || corpus[k].space.size() < 3) continue;
      r.guarded(corpus[k].name, [&] {
        const double bound = tree_type_lower_bound(*corpus[k].edges);
        r.expect(bound <= supremal(k).p_sup + tol.bisect_tol,
                 corpus[k].name + " bound=" + fmt(bound) + " p_sup=" + fmt(supremal(k).p_sup));
      });
    }
    for (std::size_t n = 3; n <= 7; ++n) {
      const double bis = supremal_negative_type(gen_star(n - 1), tol).p_sup;
      r.expect(std::abs(bis - star_exact_type(n)) <= 1e-4, "star n=" + std::to_string(n));
    }
    add(r);
  }

  // ---- serialization
  {
    PropertyRecorder r("cli", "JSON reports re-serialize byte-identically");
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      if (corpus[k].space.size() > 6) continue;
      r.guarded(corpus[k].name, [&] {
        for (const auto& j : {to_json(corpus[k].space), to_json(check(corpus[k].space, 1.5, tol)),
                              to_json(supremal(k)), to_json(negative_type_gap(corpus[k].space, 1.0, tol))}) {
          const auto text = j.dump(2);
          r.expect(json::parse(text).dump(2) == text, corpus[k].name);
        }
      });
    }
    add(r);
  }
  return report;
}

}  // namespace negtype

#endif  // NEGTYPE_VERIFY_HPP
