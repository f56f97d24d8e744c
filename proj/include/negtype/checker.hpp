#ifndef NEGTYPE_CHECKER_HPP
#define NEGTYPE_CHECKER_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negtype/error.hpp"
#include "negtype/jacobi.hpp"
#include "negtype/matrix.hpp"
#include "negtype/simplex.hpp"
#include "negtype/space.hpp"
#include "negtype/tolerance.hpp"

namespace negtype {

enum class Status { Strict, Boundary, Fail };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Strict: return "STRICT";
    case Status::Boundary: return "BOUNDARY";
    case Status::Fail: return "FAIL";
  }
  return "?";
}

inline Status status_from_string(std::string_view s) {
  if (s == "STRICT") return Status::Strict;
  if (s == "BOUNDARY") return Status::Boundary;
  if (s == "FAIL") return Status::Fail;
  throw Error(ErrorKind::ParseError, "unknown status '" + std::string(s) + "'");
}

struct NegTypeVerdict {
  double q = 0.0;
  Status status = Status::Strict;
  /// Maximum of sum_ij d_ij^q eta_i eta_j over unit eta with sum(eta) = 0.
  double critical_value = 0.0;
  /// Largest entry of the power matrix; the classification band is eig_tol * scale.
  double scale = 1.0;
  /// Maximizing eta; present for BOUNDARY and FAIL.
  std::optional<std::vector<double>> witness;
};

/// Orthonormal basis of the zero-sum hyperplane (Helmert contrasts), stored
/// as an n x (n-1) row-major array.
class ZeroSumBasis {
 public:
  explicit ZeroSumBasis(std::size_t n) : n_(n), q_(n * (n - 1), 0.0) {
    for (std::size_t k = 1; k < n; ++k) {
      const double norm = std::sqrt(static_cast<double>(k) * static_cast<double>(k + 1));
      for (std::size_t i = 0; i < k; ++i) at(i, k - 1) = 1.0 / norm;
      at(k, k - 1) = -static_cast<double>(k) / norm;
    }
  }

  std::size_t points() const noexcept { return n_; }
  std::size_t dim() const noexcept { return n_ - 1; }
  double at(std::size_t i, std::size_t k) const { return q_[i * (n_ - 1) + k]; }

  /// Q^T M Q
  Matrix compress(const Matrix& m) const {
    const std::size_t d = dim();
    std::vector<double> mq(n_ * d, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const double mij = m(i, j);
        if (mij == 0.0) continue;
        // Column k of Q has support 0..k+1.
        for (std::size_t k = (j == 0 ? 0 : j - 1); k < d; ++k) mq[i * d + k] += mij * at(j, k);
      }
    Matrix h(d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i <= a + 1; ++i) s += at(i, a) * mq[i * d + b];
        h(a, b) = s;
        h(b, a) = s;
      }
    return h;
  }

  /// Q u
  std::vector<double> expand(std::span<const double> u) const {
    std::vector<double> eta(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < dim(); ++k) eta[i] += at(i, k) * u[k];
    return eta;
  }

 private:
  double& at(std::size_t i, std::size_t k) { return q_[i * (n_ - 1) + k]; }

  std::size_t n_;
  std::vector<double> q_;
};

namespace detail {

inline std::vector<double> clean_witness(std::vector<double> eta) {
  double mean = 0.0;
  for (double v : eta) mean += v;
  mean /= static_cast<double>(eta.size());
  double norm = 0.0;
  for (double& v : eta) {
    v -= mean;
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : eta) v /= norm;
  return eta;
}

}  // namespace detail

/// Classifies q-negative type from the spectrum of the power matrix
/// restricted to the zero-sum hyperplane.
inline NegTypeVerdict check(const FiniteSemiMetricSpace& x, double q, const ToleranceConfig& tol = {}) {
  const Matrix m = x.power_matrix(q);
  const ZeroSumBasis basis(x.size());
  const auto eig = jacobi_eigen(basis.compress(m));

  NegTypeVerdict v;
  v.q = q;
  v.scale = m.max_abs();
  v.critical_value = eig.values.back();
  const double band = tol.eig_tol * v.scale;
  if (v.critical_value < -band)
    v.status = Status::Strict;
  else if (v.critical_value > band)
    v.status = Status::Fail;
  else
    v.status = Status::Boundary;
  if (v.status != Status::Strict) v.witness = detail::clean_witness(basis.expand(eig.vector(eig.values.size() - 1)));
  return v;
}

struct SupremalResult {
  bool infinite = false;  ///< no FAIL up to tol.p_max
  double p_sup = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<NegTypeVerdict> verdict_at_sup;
  std::size_t probes = 0;
};

/// Supremal exponent of negative type. Doubles from q = 1 to bracket the
/// first FAIL, then bisects. Once the bracket is within bisect_tol the search
/// keeps halving it until a probe lands inside the BOUNDARY band, so the
/// returned exponent is the one the checker itself classifies as boundary.
inline SupremalResult supremal_negative_type(const FiniteSemiMetricSpace& x, const ToleranceConfig& tol = {}) {
  tol.validate();
  SupremalResult r;
  auto probe = [&](double q) {
    ++r.probes;
    return check(x, q, tol);
  };

  if (probe(tol.p_max).status != Status::Fail) {
    r.infinite = true;
    r.p_sup = tol.p_max;
    r.lo = tol.p_max;
    r.hi = tol.p_max;
    return r;
  }

  double lo = 0.0;
  double hi = 1.0;
  while (hi < tol.p_max && probe(hi).status != Status::Fail) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi > tol.p_max) hi = tol.p_max;

  while (hi - lo > tol.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid).status == Status::Fail)
      hi = mid;
    else
      lo = mid;
  }

  std::optional<NegTypeVerdict> at_sup;
  for (int extra = 0; extra < 80; ++extra) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    auto v = probe(mid);
    if (v.status == Status::Boundary) {
      at_sup = std::move(v);
      break;
    }
    (v.status == Status::Fail ? hi : lo) = mid;
  }
  if (!at_sup) at_sup = probe(0.5 * (lo + hi));

  r.lo = lo;
  r.hi = hi;
  r.p_sup = at_sup->q;
  r.verdict_at_sup = std::move(at_sup);
  return r;
}

struct ScanPoint {
  double q = 0.0;
  Status status = Status::Strict;
  double critical_value = 0.0;
};

/// Raised when a scan contradicts the [0, p] interval structure of negative type.
class IntervalAnomaly : public Error {
 public:
  IntervalAnomaly(ScanPoint first, ScanPoint second)
      : Error(ErrorKind::IntervalAnomaly, "status " + std::string(to_string(first.status)) + " at q=" +
                                              std::to_string(first.q) + " followed by " +
                                              std::string(to_string(second.status)) + " at q=" +
                                              std::to_string(second.q)),
        first_(first),
        second_(second) {}

  const ScanPoint& first() const noexcept { return first_; }
  const ScanPoint& second() const noexcept { return second_; }

 private:
  ScanPoint first_;
  ScanPoint second_;
};

/// Checks each grid exponent and enforces the pattern STRICT* BOUNDARY? FAIL*.
inline std::vector<ScanPoint> interval_scan(const FiniteSemiMetricSpace& x, std::span<const double> grid,
                                            const ToleranceConfig& tol = {}) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw Error(ErrorKind::NegativeExponent, "grid exponents must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorKind::BadRange, "grid must be strictly increasing");
  }
  std::vector<ScanPoint> out;
  out.reserve(grid.size());
  for (double q : grid) {
    const auto v = check(x, q, tol);
    out.push_back({q, v.status, v.critical_value});
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    const auto prev = out[i - 1].status;
    const auto cur = out[i].status;
    const bool ok = prev == Status::Strict || (cur == Status::Fail);
    if (!ok) throw IntervalAnomaly(out[i - 1], out[i]);
  }
  return out;
}

/// Evenly spaced grid of `count` points on [a, b].
inline std::vector<double> linspace(double a, double b, std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

/// Loaded simplex with zero gap at the supremal exponent, built from the
/// boundary eigenvector by splitting it by sign.
inline LoadedSimplex witness_null_simplex(const SupremalResult& sup) {
  if (sup.infinite || !sup.verdict_at_sup || sup.verdict_at_sup->status == Status::Strict ||
      !sup.verdict_at_sup->witness)
    throw Error(ErrorKind::NoBoundaryWitness, "no boundary witness: supremal exponent is not finite");
  try {
    return split_by_sign(*sup.verdict_at_sup->witness);
  } catch (const Error&) {
    throw Error(ErrorKind::NoBoundaryWitness, "boundary witness is degenerate");
  }
}

inline LoadedSimplex witness_null_simplex(const FiniteSemiMetricSpace& x, const ToleranceConfig& tol = {}) {
  return witness_null_simplex(supremal_negative_type(x, tol));
}

}  // namespace negtype

#endif  // NEGTYPE_CHECKER_HPP
