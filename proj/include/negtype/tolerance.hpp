#ifndef NEGTYPE_TOLERANCE_HPP
#define NEGTYPE_TOLERANCE_HPP

#include <cstddef>

#include "negtype/error.hpp"

namespace negtype {

/// Numeric thresholds shared by the checker, the bisection and the gap solver.
struct ToleranceConfig {
  double eig_tol = 1e-9;          ///< relative to the largest power-matrix entry
  double bisect_tol = 1e-6;       ///< exponent resolution of the supremal search
  double qp_tol = 1e-10;          ///< projected-gradient stationarity threshold
  double p_max = 64.0;            ///< exponent search cap
  std::size_t qp_max_iter = 100000;

  void validate() const {
    if (!(eig_tol > 0) || !(bisect_tol > 0) || !(qp_tol > 0) || qp_max_iter == 0)
      throw Error(ErrorKind::InvalidTolerance, "tolerances must be strictly positive");
    if (!(p_max > 1)) throw Error(ErrorKind::InvalidTolerance, "p_max must exceed 1");
  }
};

}  // namespace negtype

#endif  // NEGTYPE_TOLERANCE_HPP
