#ifndef NEGTYPE_JACOBI_HPP
#define NEGTYPE_JACOBI_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "negtype/error.hpp"
#include "negtype/matrix.hpp"

namespace negtype {

struct SymmetricEigen {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column k is the unit eigenvector of values[k]
  std::size_t sweeps = 0;

  std::vector<double> vector(std::size_t k) const {
    std::vector<double> v(vectors.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
  }
};

/// Cyclic Jacobi rotations on a dense symmetric matrix. Converged when every
/// off-diagonal magnitude is below rel_tol times the Frobenius norm.
inline SymmetricEigen jacobi_eigen(Matrix a, double rel_tol = 1e-14, std::size_t max_sweeps = 100) {
  const std::size_t n = a.size();
  Matrix v = Matrix::identity(n);
  const double threshold = rel_tol * a.frobenius_norm();

  auto max_off = [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
  };

  std::size_t sweep = 0;
  while (max_off() > threshold) {
    if (sweep == max_sweeps)
      throw Error(ErrorKind::EigensolverFailure, "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= threshold * 1e-3) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + s * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Largest absolute eigenvalue.
inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const auto e = jacobi_eigen(a);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

}  // namespace negtype

#endif  // NEGTYPE_JACOBI_HPP
