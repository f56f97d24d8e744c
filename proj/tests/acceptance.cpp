// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "negtype/negtype.hpp"
#include "negtype/verify.hpp"

using namespace negtype;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

std::string g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<CorpusEntry> corpus() { return default_corpus(11); }

Outcome tree_gap_formula() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(3, 9);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto edges = random_tree_edges(size(rng), rng, 0.5, 3.0);
    double inv = 0.0;
    for (const auto& e : edges) inv += 1.0 / e.weight;
    const double formula = 1.0 / inv;
    const auto r = negative_type_gap(gen_tree(edges), 1.0);
    const double err = std::abs(r.gamma - formula);
    worst = std::max(worst, err);
    o.expect(err <= 1e-5, "tree " + std::to_string(k) + " qp=" + g(r.gamma) + " formula=" + g(formula));
  }
  o.detail = "20 random trees, max |QP - formula| = " + g(worst);
  return o;
}

Outcome star_exponent() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t k = 2; k <= 6; ++k) {
    const double want = 1.0 + std::log(1.0 + 1.0 / static_cast<double>(k - 1)) / std::log(2.0);
    const auto r = supremal_negative_type(gen_star(k, 1.0));
    const double err = r.infinite ? INFINITY : std::abs(r.p_sup - want);
    worst = std::max(worst, err);
    o.expect(err <= 1e-4, "k=" + std::to_string(k) + " p_sup=" + g(r.p_sup) + " want=" + g(want));
  }
  o.detail = "k = 2..6, max error " + g(worst);
  return o;
}

Outcome zeta_soundness() {
  Outcome o;
  std::size_t trees = 0;
  for (const auto& e : corpus()) {
    if (!e.unit_tree() || e.space.size() < 3) continue;
    ++trees;
    const auto gap = negative_type_gap(e.space, 1.0);
    const auto z = zeta_bound(e.space, 1.0, std::max(gap.gamma, 0.0));
    const auto s = supremal_negative_type(e.space);
    o.expect(!s.infinite && 1.0 + z.zeta <= s.p_sup + 1e-4,
             e.name + " 1+zeta=" + g(1.0 + z.zeta) + " p_sup=" + g(s.p_sup));
  }
  const auto p3 = gen_path(3);
  const auto z = zeta_bound(p3, 1.0, negative_type_gap(p3, 1.0).gamma);
  const auto s = supremal_negative_type(p3);
  o.expect(std::abs(1.0 + z.zeta - 2.0) <= 1e-6 && std::abs(s.p_sup - 2.0) <= 1e-6,
           "P3 1+zeta=" + g(1.0 + z.zeta) + " p_sup=" + g(s.p_sup));
  o.detail = std::to_string(trees) + " unit trees; P3: 1+zeta = " + g(1.0 + z.zeta) + ", p_sup = " + g(s.p_sup);
  return o;
}

Outcome supremal_never_strict() {
  Outcome o;
  std::size_t finite = 0;
  double worst = 0.0;
  for (const auto& e : corpus()) {
    const auto s = supremal_negative_type(e.space);
    if (s.infinite) continue;
    ++finite;
    const auto v = check(e.space, s.p_sup);
    o.expect(v.status == Status::Boundary, e.name + " status " + std::string(to_string(v.status)));
    const auto d = witness_null_simplex(s);
    const double gap = simplex_gap(e.space, d, s.p_sup);
    worst = std::max(worst, std::abs(gap) / v.scale);
    o.expect(std::abs(gap) <= 1e-6 * v.scale, e.name + " null simplex gap " + g(gap));
  }
  o.detail = std::to_string(finite) + " finite spaces, max |gap|/scale = " + g(worst);
  return o;
}

Outcome strict_iff_positive_gap() {
  Outcome o;
  std::size_t counts[3] = {0, 0, 0};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size(3, 6);
  for (std::uint64_t k = 0; k < 30; ++k) {
    // Alternate metric-range and wide semi-metric ranges to hit every verdict.
    const bool wide = k % 2 == 1;
    const auto x = gen_random_semimetric(size(rng), 100 + k, wide ? 0.1 : 1.0, wide ? 3.0 : 2.0);
    for (double q : {0.5, 1.0, 1.5}) {
      const auto r = negative_type_gap(x, q);
      const double scale = r.verdict.scale;
      const std::string tag = "space " + std::to_string(k) + " q=" + g(q);
      switch (r.verdict.status) {
        case Status::Strict:
          ++counts[0];
          o.expect(r.gamma > 1e-8 * scale, tag + " STRICT gamma=" + g(r.gamma));
          break;
        case Status::Boundary:
          ++counts[1];
          o.expect(r.gamma <= 1e-6 * scale, tag + " BOUNDARY gamma=" + g(r.gamma));
          break;
        case Status::Fail:
          ++counts[2];
          o.expect(r.negative_infinite && simplex_gap(x, r.arg_simplex, q) < 0.0, tag + " FAIL without negative simplex");
          break;
      }
    }
  }
  o.detail = "90 cases: " + std::to_string(counts[0]) + " STRICT, " + std::to_string(counts[1]) + " BOUNDARY, " +
             std::to_string(counts[2]) + " FAIL";
  return o;
}

Outcome interval_structure() {
  Outcome o;
  const ToleranceConfig tol;
  std::size_t points = 0;
  for (const auto& e : corpus()) {
    const auto s = supremal_negative_type(e.space, tol);
    const double hi = s.infinite ? 10.0 : s.p_sup + 1.0;
    try {
      const auto scan = interval_scan(e.space, linspace(0.0, hi, 40), tol);
      for (const auto& pt : scan) {
        ++points;
        if (!s.infinite && pt.q >= s.p_sup - tol.bisect_tol) continue;
        o.expect(pt.status == Status::Strict, e.name + " q=" + g(pt.q) + " " + std::string(to_string(pt.status)));
      }
    } catch (const IntervalAnomaly& a) {
      o.expect(false, e.name + ": " + a.what());
    }
  }
  o.detail = std::to_string(points) + " grid points, no anomaly expected";
  return o;
}

Outcome enflo_blocks() {
  Outcome o;
  const auto x1 = gen_enflo_truncation(1.5, std::vector<double>{2.0}, 4);
  const auto x2 = gen_enflo_truncation(1.5, std::vector<double>{1.7, 1.6}, 4);
  const auto s1 = supremal_negative_type(x1);
  const auto s2 = supremal_negative_type(x2);
  o.expect(x1.size() == 8 && !s1.infinite && std::abs(s1.p_sup - 2.0) <= 1e-3, "X_1 p_sup=" + g(s1.p_sup));
  o.expect(x2.size() == 16 && !s2.infinite && std::abs(s2.p_sup - 1.6) <= 1e-3, "X_2 p_sup=" + g(s2.p_sup));
  o.detail = "X_1 (" + std::to_string(x1.size()) + " points) p_sup = " + g(s1.p_sup) + "; X_2 (" +
             std::to_string(x2.size()) + " points) p_sup = " + g(s2.p_sup);
  return o;
}

Outcome antipodal_circle() {
  Outcome o;
  const auto square = gen_circle(equispaced_angles(4));
  const auto s = supremal_negative_type(square);
  const auto at_one = check(square, 1.0);
  o.expect(!s.infinite && std::abs(s.p_sup - 1.0) <= 1e-4, "square p_sup=" + g(s.p_sup));
  o.expect(at_one.status == Status::Boundary, "square at 1: " + std::string(to_string(at_one.status)));
  const double third = 2.0 * std::numbers::pi / 3.0;
  const auto tri = check(gen_circle(std::vector<double>{0.0, third, 2.0 * third}), 1.0);
  o.expect(tri.status == Status::Strict, "triangle at 1: " + std::string(to_string(tri.status)));
  o.detail = "square p_sup = " + g(s.p_sup) + " (" + std::string(to_string(at_one.status)) + " at 1); triangle " +
             std::string(to_string(tri.status)) + " at 1";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const ToleranceConfig tol;
  std::size_t cases = 0;
  double worst = 0.0;
  std::uint64_t seed = 77;
  for (const auto& e : corpus()) {
    if (e.space.size() > 5) continue;
    std::vector<double> qs{0.5, 1.0, 1.5, 2.0, 3.0};
    const auto s = supremal_negative_type(e.space, tol);
    if (!s.infinite) qs.push_back(s.p_sup);
    for (double q : qs) {
      ++cases;
      const auto v = check(e.space, q, tol);
      const double oracle = brute_force_gap(e.space, q, 100000, seed++);
      const double band = tol.eig_tol * v.scale;
      const std::string tag = e.name + " q=" + g(q) + " " + std::string(to_string(v.status)) + " oracle=" + g(oracle);
      switch (v.status) {
        case Status::Strict: o.expect(oracle > band, tag); break;
        case Status::Boundary: o.expect(oracle >= -band && oracle <= 5e-3 * v.scale, tag); break;
        case Status::Fail: o.expect(oracle < -band, tag); break;
      }
      if (v.status != Status::Fail) {
        const auto r = negative_type_gap(e.space, q, tol);
        const double diff = std::abs(oracle - r.gamma);
        worst = std::max(worst, diff / v.scale);
        o.expect(diff <= 5e-3 * v.scale, tag + " qp=" + g(r.gamma));
      }
    }
  }
  o.detail = std::to_string(cases) + " cases, max |QP - oracle|/scale = " + g(worst);
  return o;
}

Outcome formula_units() {
  Outcome o;
  const std::pair<std::size_t, double> values[] = {{2, 0.0}, {3, 0.25}, {4, 0.5}, {5, 7.0 / 12.0}};
  for (const auto& [m, want] : values)
    o.expect(std::abs(gamma_fn(m) - want) <= 1e-15, "gamma(" + std::to_string(m) + ")=" + g(gamma_fn(m)));

  // Maximize the pairwise product sum from a random start; the maximizer must be uniform.
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> expo(1.0);
  double worst = 0.0;
  for (std::size_t s = 1; s <= 6; ++s) {
    Matrix h(s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) h(i, j) = i == j ? 0.0 : -1.0;
    std::vector<double> start(s);
    for (double& v : start) v = expo(rng);
    const std::size_t blocks[] = {s};
    const auto r = minimize_on_simplices(h, blocks, static_cast<double>(s), 1e-13, 1000000, start);
    double products = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      worst = std::max(worst, std::abs(r.x[i] - 1.0 / static_cast<double>(s)));
      for (std::size_t j = i + 1; j < s; ++j) products += r.x[i] * r.x[j];
    }
    o.expect(std::abs(products - 0.5 * (1.0 - 1.0 / static_cast<double>(s))) <= 1e-12, "s=" + std::to_string(s));
  }
  o.expect(worst <= 1e-8, "maximizer off uniform by " + g(worst));

  std::size_t splits = 0;
  for (std::size_t m = 2; m <= 40; ++m) {
    const std::size_t lo = m / 2;
    const std::size_t hi = m - lo;
    for (std::size_t s = 1; s < m; ++s) {
      const std::size_t t = m - s;
      ++splits;
      // Cleared of denominators the inequality reads s*t <= floor(m/2)*ceil(m/2).
      o.expect(s * t <= lo * hi, "m=" + std::to_string(m) + " s=" + std::to_string(s));
      const double lhs = 0.5 * (1.0 - 1.0 / static_cast<double>(s)) + 0.5 * (1.0 - 1.0 / static_cast<double>(t));
      o.expect(lhs <= gamma_fn(m) + 1e-15, "float m=" + std::to_string(m) + " s=" + std::to_string(s));
    }
    if (m > 2) o.expect(gamma_fn(m) > gamma_fn(m - 1), "gamma not increasing at " + std::to_string(m));
  }
  o.detail = "gamma values exact; uniform maximizer within " + g(worst) + "; " + std::to_string(splits) +
             " splits for m <= 40";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tree gap formula", tree_gap_formula},
      {"star exponent", star_exponent},
      {"zeta soundness and sharpness", zeta_soundness},
      {"supremal type is never strict", supremal_never_strict},
      {"strict iff positive gap", strict_iff_positive_gap},
      {"interval structure", interval_structure},
      {"Enflo block truncations", enflo_blocks},
      {"antipodal circle", antipodal_circle},
      {"oracle equivalence", oracle_equivalence},
      {"formula unit checks", formula_units},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    if (!o.pass) {
      std::printf("       first failure: %s\n", o.first_failure.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
