#ifndef NEGTYPE_SPACE_HPP
#define NEGTYPE_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "negtype/error.hpp"
#include "negtype/matrix.hpp"

namespace negtype {

/// A finite set of pairwise distinct points with a symmetric distance. The
/// triangle inequality is not required; see is_metric() for the diagnostic.
class FiniteSemiMetricSpace {
 public:
  /// Validates and wraps a square distance matrix.
  static FiniteSemiMetricSpace from_matrix(Matrix dist, std::vector<std::string> labels = {}) {
    const std::size_t n = dist.size();
    if (n < 2) throw Error(ErrorKind::TooSmall, "a space needs at least 2 points");
    if (!labels.empty() && labels.size() != n)
      throw Error(ErrorKind::ParseError, "label count does not match point count");
    for (std::size_t i = 0; i < n; ++i) {
      if (dist(i, i) != 0.0)
        throw Error(ErrorKind::NonzeroDiagonal, "d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (dist(i, j) != dist(j, i))
          throw Error(ErrorKind::AsymmetricMatrix,
                      "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" + std::to_string(j) + "," +
                          std::to_string(i) + ")");
        if (!(dist(i, j) > 0.0) || !std::isfinite(dist(i, j)))
          throw Error(ErrorKind::NonpositiveOffDiagonal,
                      "d(" + std::to_string(i) + "," + std::to_string(j) + ") must be positive and finite");
      }
    }
    return FiniteSemiMetricSpace(std::move(dist), std::move(labels));
  }

  static FiniteSemiMetricSpace from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error(ErrorKind::ParseError, "distance matrix is not square");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return from_matrix(std::move(m));
  }

  std::size_t size() const noexcept { return dist_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Matrix& matrix() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(std::size_t i) const { return labels_.empty() ? "x" + std::to_string(i) : labels_[i]; }

  double diameter() const {
    double d = 0.0;
    for (double v : dist_.values()) d = std::max(d, v);
    return d;
  }

  double min_positive_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) d = std::min(d, dist_(i, j));
    return d;
  }

  /// Diameter over minimum distance; exactly 1 for multiples of the discrete metric.
  double scaled_diameter() const { return diameter() / min_positive_distance(); }

  /// Entrywise d^p with a zero diagonal, including at p = 0.
  Matrix power_matrix(double p) const {
    if (!(p >= 0.0)) throw Error(ErrorKind::NegativeExponent, "exponent must be >= 0");
    const std::size_t n = size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = p == 1.0 ? dist_(i, j) : std::pow(dist_(i, j), p);
        m(i, j) = v;
        m(j, i) = v;
      }
    return m;
  }

  FiniteSemiMetricSpace rescale(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::NonpositiveScale, "scale must be positive");
    Matrix m(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m(i, j) = c * dist_(i, j);
    return FiniteSemiMetricSpace(std::move(m), labels_);
  }

  /// Sub-space on the given points, in the given order.
  FiniteSemiMetricSpace subspace(std::span<const std::size_t> idx) const {
    std::vector<std::string> sub_labels;
    if (!labels_.empty())
      for (auto i : idx) sub_labels.push_back(labels_[i]);
    return from_matrix(dist_.submatrix(idx), std::move(sub_labels));
  }

 private:
  FiniteSemiMetricSpace(Matrix dist, std::vector<std::string> labels)
      : dist_(std::move(dist)), labels_(std::move(labels)) {}

  Matrix dist_;
  std::vector<std::string> labels_;
};

/// Triple with d(i,k) > d(i,j) + d(j,k).
struct TriangleViolation {
  std::size_t i, j, k;
  friend bool operator==(const TriangleViolation&, const TriangleViolation&) = default;
};

struct MetricDiagnostic {
  bool is_metric = true;
  std::vector<TriangleViolation> violations;
};

/// Triangle-inequality diagnostic. Never used to gate any computation.
/// Each violation is reported once with i < k and j the intermediate point.
inline MetricDiagnostic is_metric(const FiniteSemiMetricSpace& x, double rel_slack = 1e-12) {
  MetricDiagnostic out;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = x(i, j) + x(j, k);
        if (x(i, k) > via * (1.0 + rel_slack)) out.violations.push_back({i, j, k});
      }
  out.is_metric = out.violations.empty();
  return out;
}

struct TreeEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace detail

/// Checks that the edges span vertices 0..edges.size() as a tree and returns
/// the vertex count.
inline std::size_t validate_tree(std::span<const TreeEdge> edges) {
  if (edges.empty()) throw Error(ErrorKind::TooSmall, "a tree needs at least one edge");
  const std::size_t n = edges.size() + 1;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& e : edges) {
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw Error(ErrorKind::NonpositiveWeight, "edge weights must be positive");
    if (e.u >= n || e.v >= n)
      throw Error(ErrorKind::NotATree, "vertex ids must be 0.." + std::to_string(n - 1) + " for " +
                                           std::to_string(edges.size()) + " edges");
    if (e.u == e.v) throw Error(ErrorKind::NotATree, "self loop at " + std::to_string(e.u));
    const auto ru = detail::find_root(parent, e.u);
    const auto rv = detail::find_root(parent, e.v);
    if (ru == rv) throw Error(ErrorKind::NotATree, "edge list contains a cycle");
    parent[ru] = rv;
  }
  // n - 1 edges without a cycle on n vertices is connected.
  return n;
}

/// Path metric of a weighted tree.
inline FiniteSemiMetricSpace gen_tree(std::span<const TreeEdge> edges) {
  const std::size_t n = validate_tree(edges);
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  Matrix d(n);
  std::vector<std::size_t> stack;
  std::vector<bool> seen(n);
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(seen.begin(), seen.end(), false);
    stack.assign(1, src);
    seen[src] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto [v, w] : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        d(src, v) = d(src, u) + w;
        stack.push_back(v);
      }
    }
  }
  // Sums can differ in the last bit depending on traversal direction.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(j, i) = d(i, j);
  return FiniteSemiMetricSpace::from_matrix(std::move(d));
}

inline std::vector<TreeEdge> star_edges(std::size_t leaves, double weight = 1.0) {
  if (leaves < 2) throw Error(ErrorKind::TooSmall, "a star needs at least 2 leaves");
  std::vector<TreeEdge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, i, weight});
  return e;
}

inline std::vector<TreeEdge> path_edges(std::size_t n, double weight = 1.0) {
  if (n < 2) throw Error(ErrorKind::TooSmall, "a path needs at least 2 vertices");
  std::vector<TreeEdge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, weight});
  return e;
}

/// All off-diagonal distances equal to 1.
inline FiniteSemiMetricSpace gen_discrete(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::TooSmall, "discrete space needs at least 2 points");
  Matrix m(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
  return FiniteSemiMetricSpace::from_matrix(std::move(m));
}

/// Star with `leaves` leaves around center 0.
inline FiniteSemiMetricSpace gen_star(std::size_t leaves, double weight = 1.0) {
  return gen_tree(star_edges(leaves, weight));
}

inline FiniteSemiMetricSpace gen_path(std::size_t n, double weight = 1.0) { return gen_tree(path_edges(n, weight)); }

/// Truncation X_m of a two-family block space: blocks Y_k, Z_k of `block`
/// points each, k = 1..m. Cross distance inside block k is
/// (1 - 1/block)^(1/exps[k]); every other distance is 1. Points are laid out
/// as Y_1, Z_1, Y_2, Z_2, ...
inline FiniteSemiMetricSpace gen_enflo_truncation(double target, std::span<const double> exps, std::size_t block) {
  if (!(target > 0.0)) throw Error(ErrorKind::BadRange, "target exponent must be positive");
  if (exps.empty()) throw Error(ErrorKind::ExponentsNotDecreasing, "need at least one block exponent");
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (!(exps[k] > target))
      throw Error(ErrorKind::ExponentsNotDecreasing, "block exponents must exceed the target exponent");
    if (k > 0 && !(exps[k] < exps[k - 1]))
      throw Error(ErrorKind::ExponentsNotDecreasing, "block exponents must be strictly decreasing");
  }
  if (block < 1) throw Error(ErrorKind::BlockSizeTooSmall, "block size must be positive");
  const double base = 1.0 - 1.0 / static_cast<double>(block);
  if (!(std::pow(base, 1.0 / target) >= 0.5))
    throw Error(ErrorKind::BlockSizeTooSmall, "(1 - 1/n)^(1/target) must be at least 1/2");

  const std::size_t total = 2 * exps.size() * block;
  Matrix d(total, 1.0);
  std::vector<std::string> labels(total);
  for (std::size_t k = 0; k < exps.size(); ++k) {
    const double cross = std::pow(base, 1.0 / exps[k]);
    const std::size_t y0 = 2 * k * block;
    const std::size_t z0 = y0 + block;
    for (std::size_t a = 0; a < block; ++a) {
      labels[y0 + a] = "y" + std::to_string(k + 1) + "_" + std::to_string(a);
      labels[z0 + a] = "z" + std::to_string(k + 1) + "_" + std::to_string(a);
      for (std::size_t b = 0; b < block; ++b) {
        d(y0 + a, z0 + b) = cross;
        d(z0 + b, y0 + a) = cross;
      }
    }
  }
  for (std::size_t i = 0; i < total; ++i) d(i, i) = 0.0;
  return FiniteSemiMetricSpace::from_matrix(std::move(d), std::move(labels));
}

/// Points on the unit circle with the geodesic (arc-length) distance.
inline FiniteSemiMetricSpace gen_circle(std::span<const double> angles) {
  const std::size_t n = angles.size();
  if (n < 2) throw Error(ErrorKind::TooSmall, "circle subset needs at least 2 points");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = std::abs(angles[i] - angles[j]);
      const double g = std::min(diff, two_pi - diff);
      if (!(g > 0.0)) throw Error(ErrorKind::DuplicateAngle, "angles " + std::to_string(i) + " and " +
                                                                  std::to_string(j) + " coincide");
      d(i, j) = g;
      d(j, i) = g;
    }
  return FiniteSemiMetricSpace::from_matrix(std::move(d));
}

inline std::vector<double> equispaced_angles(std::size_t n) {
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  return a;
}

/// Off-diagonal entries i.i.d. uniform in [min_d, max_d]; deterministic per seed.
inline FiniteSemiMetricSpace gen_random_semimetric(std::size_t n, std::uint64_t seed, double min_d = 1.0,
                                                   double max_d = 2.0) {
  if (!(min_d > 0.0) || !(max_d >= min_d) || !std::isfinite(max_d))
    throw Error(ErrorKind::BadRange, "require 0 < min_d <= max_d");
  if (n < 2) throw Error(ErrorKind::TooSmall, "a space needs at least 2 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = min_d == max_d ? min_d : min_d + (max_d - min_d) * unif(rng);
      d(i, j) = v;
      d(j, i) = v;
    }
  return FiniteSemiMetricSpace::from_matrix(std::move(d));
}

}  // namespace negtype

#endif  // NEGTYPE_SPACE_HPP
