#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vlink/rational.hpp"

namespace vlink {

/// Row-major square matrix over an arbitrary scalar (double or Rational).
template <class Scalar>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, const Scalar& fill = Scalar(0)) : size_(size), data_(size * size, fill) {}

  std::size_t size() const { return size_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }

  template <class Vec>
  Vec multiply(const Vec& v) const {
    Vec out(size_, typename Vec::value_type(0));
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) out[i] += data_[i * size_ + j] * v[j];
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = i + 1; j < size_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Scalar> data_;
};

template <class Scalar>
Eigen::MatrixXd to_eigen(const SquareMatrix<Scalar>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = to_double(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  return out;
}

/// Ascending eigenvalues of a symmetric matrix.
inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Largest absolute eigenvalue (spectral norm of a symmetric matrix).
inline double spectral_norm(const std::vector<double>& eigenvalues) {
  double out = 0.0;
  for (double e : eigenvalues) out = std::max(out, std::abs(e));
  return out;
}

}  // namespace vlink
