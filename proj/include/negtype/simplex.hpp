#ifndef NEGTYPE_SIMPLEX_HPP
#define NEGTYPE_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "negtype/error.hpp"
#include "negtype/space.hpp"

namespace negtype {

/// Two disjoint sides of points with a load on each point; each side's
/// loads sum to 1. The closure form admits zero loads.
struct LoadedSimplex {
  std::vector<std::size_t> side_a;
  std::vector<std::size_t> side_b;
  std::vector<double> weights_a;
  std::vector<double> weights_b;

  std::size_t s() const noexcept { return side_a.size(); }
  std::size_t t() const noexcept { return side_b.size(); }
};

/// Throws InvalidSimplex unless `d` is a normalized simplex on `n` points.
inline void validate(const LoadedSimplex& d, std::size_t n, bool allow_zero_weights = false) {
  if (d.side_a.empty() || d.side_b.empty()) throw Error(ErrorKind::InvalidSimplex, "both sides must be nonempty");
  if (d.side_a.size() != d.weights_a.size() || d.side_b.size() != d.weights_b.size())
    throw Error(ErrorKind::InvalidSimplex, "one weight per vertex required");
  std::vector<bool> used(n, false);
  auto mark = [&](std::span<const std::size_t> side) {
    for (auto i : side) {
      if (i >= n) throw Error(ErrorKind::InvalidSimplex, "vertex index " + std::to_string(i) + " out of range");
      if (used[i]) throw Error(ErrorKind::InvalidSimplex, "vertex " + std::to_string(i) + " appears twice");
      used[i] = true;
    }
  };
  mark(d.side_a);
  mark(d.side_b);
  auto check_weights = [&](std::span<const double> w) {
    double sum = 0.0;
    for (double x : w) {
      if (allow_zero_weights ? !(x >= 0.0) : !(x > 0.0))
        throw Error(ErrorKind::InvalidSimplex, allow_zero_weights ? "weights must be nonnegative" : "weights must be positive");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::InvalidSimplex, "each side's weights must sum to 1");
  };
  check_weights(d.weights_a);
  check_weights(d.weights_b);
}

/// Splits a zero-sum vector by sign; coordinates with |eta_i| <= drop_rel *
/// max|eta| are discarded. Each side is normalized to total load 1.
inline LoadedSimplex split_by_sign(std::span<const double> eta, double drop_rel = 1e-12) {
  double inf_norm = 0.0;
  for (double v : eta) inf_norm = std::max(inf_norm, std::abs(v));
  LoadedSimplex d;
  const double cut = drop_rel * inf_norm;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] > cut) {
      d.side_a.push_back(i);
      d.weights_a.push_back(eta[i]);
    } else if (eta[i] < -cut) {
      d.side_b.push_back(i);
      d.weights_b.push_back(-eta[i]);
    }
  }
  if (d.side_a.empty() || d.side_b.empty())
    throw Error(ErrorKind::BadNormalization, "vector does not have both positive and negative entries");
  auto normalize = [](std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
  };
  normalize(d.weights_a);
  normalize(d.weights_b);
  return d;
}

/// Inverse of split_by_sign: loads on side A positive, side B negative.
inline std::vector<double> to_eta(const LoadedSimplex& d, std::size_t n) {
  std::vector<double> eta(n, 0.0);
  for (std::size_t k = 0; k < d.s(); ++k) eta[d.side_a[k]] = d.weights_a[k];
  for (std::size_t k = 0; k < d.t(); ++k) eta[d.side_b[k]] = -d.weights_b[k];
  return eta;
}

}  // namespace negtype

#endif  // NEGTYPE_SIMPLEX_HPP
