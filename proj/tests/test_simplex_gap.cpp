#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "negtype/simplex_gap.hpp"

using namespace negtype;

namespace {

FiniteSemiMetricSpace p3() { return gen_path(3); }

LoadedSimplex star_leaves_vs_center() { return {{1, 2, 3}, {0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0}}; }

// Random tree on n vertices: vertex k > 0 attaches to a uniformly chosen earlier vertex.
std::vector<TreeEdge> random_tree(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> w(lo, hi);
  std::vector<TreeEdge> e;
  for (std::size_t k = 1; k < n; ++k) e.push_back({std::uniform_int_distribution<std::size_t>(0, k - 1)(rng), k, w(rng)});
  return e;
}

// Independent oracle for 3-point spaces: every bipartition has at most two
// points per side, so a one-dimensional weight grid covers each cell.
double grid_gap_three_points(const FiniteSemiMetricSpace& x, double p, int steps) {
  double best = 1e300;
  for (std::size_t lone = 0; lone < 3; ++lone) {
    std::vector<std::size_t> pair;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != lone) pair.push_back(i);
    for (int k = 0; k <= steps; ++k) {
      const double w = static_cast<double>(k) / steps;
      LoadedSimplex d{{lone}, pair, {1.0}, {w, 1.0 - w}};
      best = std::min(best, simplex_gap(x, d, p));
    }
  }
  return best;
}

}  // namespace

TEST(SimplexGap, HandExamples) {
  LoadedSimplex d{{0, 2}, {1}, {0.5, 0.5}, {1.0}};
  EXPECT_NEAR(simplex_gap(p3(), d, 2.0), 0.0, 1e-15);
  for (double p : {0.0, 0.5, 1.0, 3.0}) EXPECT_EQ(simplex_gap(gen_discrete(3), {{0}, {1}, {1.0}, {1.0}}, p), 1.0);
  EXPECT_NEAR(simplex_gap(gen_star(3, 1), star_leaves_vs_center(), 1.0), 1.0 / 3, 1e-15);
}

TEST(SimplexGap, RejectsInvalidSimplex) {
  auto x = p3();
  auto bad = [&](LoadedSimplex d) {
    try {
      simplex_gap(x, d, 1.0);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidSimplex);
    }
  };
  bad({{0}, {0}, {1}, {1}});
  bad({{0}, {}, {1}, {}});
  bad({{0, 1}, {2}, {0.5, 0.4}, {1}});
  bad({{0}, {5}, {1}, {1}});
  bad({{0, 1}, {2}, {1.5, -0.5}, {1}});
}

TEST(GapFromEta, Examples) {
  const double eta[] = {0.5, -1.0, 0.5};
  EXPECT_NEAR(gap_from_eta(p3(), eta, 2.0), 0.0, 1e-15);

  const auto x = gen_random_semimetric(5, 3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      std::vector<double> e(5, 0.0);
      e[i] = 1.0;
      e[j] = -1.0;
      EXPECT_NEAR(gap_from_eta(x, e, 1.7), std::pow(x(i, j), 1.7), 1e-15);
    }

  const double unnormalized[] = {1.0, -0.5, 0.0};
  EXPECT_THROW(gap_from_eta(p3(), unnormalized, 1.0), Error);
}

TEST(GapFromEta, AgreesWithSignSplitSimplex) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto x = gen_random_semimetric(n, trial, 0.2, 3.0);
    const double p = 0.25 * (trial % 13);
    std::vector<double> eta(n);
    double pos = 0, neg = 0;
    do {
      pos = neg = 0;
      for (auto& e : eta) {
        e = (trial % 3 == 0 && u(rng) > 0.4) ? 0.0 : u(rng);
        (e > 0 ? pos : neg) += e;
      }
    } while (pos == 0 || neg == 0);
    for (auto& e : eta) e = e > 0 ? e / pos : e / -neg;
    const double scale = x.power_matrix(p).max_abs();
    EXPECT_NEAR(gap_from_eta(x, eta, p), simplex_gap(x, split_by_sign(eta, 0.0), p), 1e-12 * scale);
  }
}

TEST(Projection, OntoSimplex) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + trial % 8);
    for (auto& e : v) e = g(rng);
    auto x = v;
    project_to_simplex(x);
    double sum = 0;
    for (double e : x) {
      EXPECT_GE(e, 0.0);
      sum += e;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    // Optimality: (v - x) . (y - x) <= 0 for every vertex y of the simplex.
    double dot_x = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dot_x += (v[i] - x[i]) * x[i];
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_LE((v[k] - x[k]) - dot_x, 1e-12);
  }
}

TEST(NegativeTypeGap, StarAndPathTrees) {
  const auto path = negative_type_gap(gen_path(3, 1), 1.0);
  EXPECT_NEAR(path.gamma, 0.5, 1e-9);
  EXPECT_TRUE(path.converged);
  EXPECT_EQ(path.bipartitions_searched, 3u);

  const auto star = negative_type_gap(gen_star(3, 1), 1.0);
  EXPECT_NEAR(star.gamma, 1.0 / 3, 1e-9);
  EXPECT_EQ(star.bipartitions_searched, 7u);
  EXPECT_LE(star.gamma, simplex_gap(gen_star(3, 1), star.arg_simplex, 1.0) + ToleranceConfig{}.qp_tol);
}

TEST(NegativeTypeGap, DiscreteTriangleAgainstGridOracle) {
  const auto x = gen_discrete(3);
  const double oracle = grid_gap_three_points(x, 1.0, 10000);
  // lone point against a uniform pair: 1 - 1/4
  EXPECT_NEAR(oracle, 0.75, 1e-12);
  EXPECT_NEAR(negative_type_gap(x, 1.0).gamma, oracle, 1e-9);
  // Off-grid check on a non-uniform 3-point space.
  const auto y = FiniteSemiMetricSpace::from_rows({{0, 1, 1.5}, {1, 0, 1.2}, {1.5, 1.2, 0}});
  for (double p : {0.5, 1.0, 1.5}) EXPECT_NEAR(negative_type_gap(y, p).gamma, grid_gap_three_points(y, p, 20000), 1e-7);
}

TEST(NegativeTypeGap, TreeFormulaAgreement) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 7;
    const auto edges = random_tree(n, rng, 0.5, 3.0);
    const auto g = negative_type_gap(gen_tree(edges), 1.0);
    EXPECT_TRUE(g.converged);
    EXPECT_NEAR(g.gamma, tree_gap(edges), 1e-5) << "trial " << trial;
  }
}

TEST(NegativeTypeGap, StrictAndBoundaryAgreeWithChecker) {
  ToleranceConfig tol;
  int strict = 0;
  for (unsigned seed = 0; seed < 30; ++seed) {
    const auto x = gen_random_semimetric(3 + seed % 4, 500 + seed, 1.0, 2.0);
    for (double q : {0.5, 1.0, 2.0}) {
      const auto g = negative_type_gap(x, q, tol);
      if (g.verdict.status != Status::Strict) continue;
      ++strict;
      // gap >= lambda/2 * min |eta|^2, and |eta|^2 >= 1/|A| + 1/|B| >= 4/n.
      const double lambda = -g.verdict.critical_value;
      const double floor = 0.5 * lambda * 4.0 / static_cast<double>(x.size());
      EXPECT_GE(g.gamma, floor * (1 - 1e-9));
      EXPECT_GT(g.gamma, 0.0);
    }
  }
  EXPECT_GT(strict, 20);

  for (const auto& [x, p] : {std::pair{gen_path(3), 2.0}, std::pair{gen_circle(equispaced_angles(4)), 1.0}}) {
    const auto g = negative_type_gap(x, p, tol);
    EXPECT_EQ(g.verdict.status, Status::Boundary);
    EXPECT_LE(std::abs(g.gamma), 1e-6 * x.power_matrix(p).max_abs());
  }
}

TEST(NegativeTypeGap, FailReportsViolatingSimplex) {
  const auto x = gen_star(3, 1);
  const auto g = negative_type_gap(x, 2.0);
  EXPECT_TRUE(g.negative_infinite);
  EXPECT_TRUE(std::isinf(g.gamma) && g.gamma < 0);
  EXPECT_LT(simplex_gap(x, g.arg_simplex, 2.0), 0.0);
}

TEST(NegativeTypeGap, ScalingLaw) {
  for (unsigned seed = 0; seed < 8; ++seed) {
    const auto x = gen_random_semimetric(5, 900 + seed, 1.0, 1.8);
    for (double c : {0.3, 4.0})
      for (double p : {0.5, 1.0}) {
        const auto a = negative_type_gap(x, p);
        if (a.negative_infinite) continue;
        const auto b = negative_type_gap(x.rescale(c), p);
        EXPECT_NEAR(b.gamma, std::pow(c, p) * a.gamma, 1e-9 * std::pow(c, p) * a.gamma);
      }
  }
}

TEST(NegativeTypeGap, RefusesLargeSpaces) {
  try {
    negative_type_gap(gen_discrete(23), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyPoints);
  }
}

TEST(BruteForce, SandwichesTheOptimizer) {
  const auto path = brute_force_gap(gen_path(3, 1), 1.0, 100000, 1);
  EXPECT_GE(path, 0.5 - 1e-12);
  EXPECT_LE(path, 0.5 + 5e-3);
  const auto star = brute_force_gap(gen_star(3, 1), 1.0, 100000, 1);
  EXPECT_GE(star, 1.0 / 3 - 1e-12);
  EXPECT_LE(star, 1.0 / 3 + 5e-3);
  EXPECT_EQ(brute_force_gap(gen_star(3, 1), 1.0, 1000, 9), brute_force_gap(gen_star(3, 1), 1.0, 1000, 9));

  for (unsigned seed = 0; seed < 6; ++seed) {
    const auto x = gen_random_semimetric(4 + seed % 3, 700 + seed, 1.0, 1.6);
    const auto g = negative_type_gap(x, 1.0);
    ASSERT_FALSE(g.negative_infinite);
    const double oracle = brute_force_gap(x, 1.0, 100000, seed);
    const double scale = x.power_matrix(1.0).max_abs();
    EXPECT_GE(oracle, g.gamma - ToleranceConfig{}.qp_tol);
    EXPECT_LE(oracle - g.gamma, 5e-3 * scale);
  }
}

TEST(SimplexQp, PairwiseProductMaximizedAtUniform) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t s = 1; s <= 6; ++s) {
    // maximize sum_{k1<k2} l_k1 l_k2 = minimize 1/2 l^T (I - J) l
    Matrix h(s, -1.0);
    for (std::size_t i = 0; i < s; ++i) h(i, i) = 0.0;
    std::vector<double> start(s);
    for (auto& v : start) v = u(rng);
    const std::size_t blocks[] = {s};
    const auto r = minimize_on_simplices(h, blocks, spectral_norm(h), 1e-12, 100000, start);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(-r.value, 0.5 * (1.0 - 1.0 / static_cast<double>(s)), 1e-8);
    for (double v : r.x) EXPECT_NEAR(v, 1.0 / static_cast<double>(s), 1e-8);
  }
}

TEST(TreeGap, Formula) {
  EXPECT_DOUBLE_EQ(tree_gap(path_edges(3)), 0.5);
  const std::vector<TreeEdge> mixed{{0, 1, 1}, {1, 2, 2}};
  EXPECT_DOUBLE_EQ(tree_gap(mixed), 2.0 / 3);
  for (std::size_t k = 2; k < 9; ++k) EXPECT_DOUBLE_EQ(tree_gap(star_edges(k)), 1.0 / static_cast<double>(k));
  const std::vector<TreeEdge> cycle{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  EXPECT_THROW(tree_gap(cycle), Error);
}
