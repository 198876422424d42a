#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace maglap {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Row-major dense matrix. Desk-scale sizes only.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using CMatrix = DenseMatrix<cplx>;
using RMatrix = DenseMatrix<double>;

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  assert(a.cols() == b.rows());
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
  DenseMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

inline CMatrix conjugate(const CMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
  return c;
}

inline CMatrix to_complex(const RMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  return c;
}

template <class T>
double max_abs(const DenseMatrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <class T>
double max_abs_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, static_cast<double>(std::abs(a.data()[i] - b.data()[i])));
  return m;
}

// max |a - a^H|
inline double hermitian_defect(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

template <class T>
DenseMatrix<T> matrix_power(const DenseMatrix<T>& a, unsigned ell) {
  DenseMatrix<T> result = DenseMatrix<T>::identity(a.rows());
  for (unsigned i = 0; i < ell; ++i) result = multiply(result, a);
  return result;
}

}  // namespace maglap
