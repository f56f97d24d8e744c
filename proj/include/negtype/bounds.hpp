#ifndef NEGTYPE_BOUNDS_HPP
#define NEGTYPE_BOUNDS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "negtype/error.hpp"
#include "negtype/simplex_gap.hpp"
#include "negtype/space.hpp"

namespace negtype {

/// 1 - (1/floor(m/2) + 1/ceil(m/2)) / 2; strictly increasing for m >= 2.
inline double gamma_fn(std::size_t m) {
  if (m < 2) throw Error(ErrorKind::TooSmall, "gamma_fn needs m >= 2");
  const double lo = static_cast<double>(m / 2);
  const double hi = static_cast<double>(m - m / 2);
  return 1.0 - 0.5 * (1.0 / lo + 1.0 / hi);
}

/// Audit record of the strictness-interval bound above a base exponent p.
struct ZetaReport {
  double p = 0.0;
  double gamma_gap = 0.0;
  double diam_p = 0.0;
  double gamma_n = 0.0;
  double frak_d = 1.0;
  std::size_t n = 0;
  double zeta = 0.0;
  /// Multiple of the discrete metric: strict for every exponent.
  bool zeta_infinite = false;

  /// Strict q-negative type is guaranteed on [p, p + zeta).
  double interval_lo() const noexcept { return p; }
  double interval_hi() const noexcept { return zeta_infinite ? std::numeric_limits<double>::infinity() : p + zeta; }
};

inline ZetaReport zeta_bound(const FiniteSemiMetricSpace& x, double p, double gamma_gap) {
  if (x.size() < 3) throw Error(ErrorKind::TooFewPoints, "zeta bound needs at least 3 points");
  if (!(p >= 0.0)) throw Error(ErrorKind::NegativeExponent, "exponent must be >= 0");
  if (!(gamma_gap >= 0.0)) throw Error(ErrorKind::NegativeGap, "gap must be nonnegative");
  ZetaReport r;
  r.p = p;
  r.n = x.size();
  r.gamma_gap = gamma_gap;
  r.diam_p = std::pow(x.diameter(), p);
  r.gamma_n = gamma_fn(x.size());
  r.frak_d = x.scaled_diameter();
  if (r.frak_d == 1.0) {
    r.zeta_infinite = true;
    r.zeta = std::numeric_limits<double>::infinity();
    return r;
  }
  r.zeta = std::log1p(gamma_gap / (r.diam_p * r.gamma_n)) / std::log(r.frak_d);
  return r;
}

/// Lower bound on the supremal exponent of a tree with unit edge lengths,
/// using its 1-gap 1/(n-1).
inline double tree_type_lower_bound(std::span<const TreeEdge> edges) {
  const std::size_t n = validate_tree(edges);
  if (n < 3) throw Error(ErrorKind::TooFewPoints, "tree bound needs at least 3 vertices");
  for (const auto& e : edges)
    if (e.weight != 1.0) throw Error(ErrorKind::NotUnitWeights, "tree bound requires unit edge lengths");
  const double diam = gen_tree(edges).diameter();
  const double nd = static_cast<double>(n);
  return 1.0 + std::log1p(1.0 / (diam * (nd - 1.0) * gamma_fn(n))) / std::log(diam);
}

/// Supremal exponent of a star with n - 1 unit leaves.
inline double star_exact_type(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::TooFewPoints, "star needs at least 3 vertices");
  return 1.0 + std::log1p(1.0 / (static_cast<double>(n) - 2.0)) / std::log(2.0);
}

}  // namespace negtype

#endif  // NEGTYPE_BOUNDS_HPP
