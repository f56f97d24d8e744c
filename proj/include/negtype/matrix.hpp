#ifndef NEGTYPE_MATRIX_HPP
#define NEGTYPE_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace negtype {

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> values() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  /// Principal submatrix on the given index list, in that order.
  Matrix submatrix(std::span<const std::size_t> idx) const {
    Matrix out(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = (*this)(idx[a], idx[b]);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.size(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

/// x^T M x
inline double quadratic_form(const Matrix& m, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto r = m.row(i);
    double ri = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) ri += r[j] * x[j];
    s += x[i] * ri;
  }
  return s;
}

}  // namespace negtype

#endif  // NEGTYPE_MATRIX_HPP
