#pragma once

// Small dense real/rational matrices for body-level linear algebra.

#include <optional>
#include <vector>

#include "superspin/scalar.hpp"

namespace superspin {

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, S(0)) {}

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const S& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  DenseMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

template <class S>
DenseMatrix<S> operator*(const DenseMatrix<S>& a, const DenseMatrix<S>& b);
template <class S>
DenseMatrix<S> operator+(const DenseMatrix<S>& a, const DenseMatrix<S>& b);
template <class S>
DenseMatrix<S> operator-(const DenseMatrix<S>& a, const DenseMatrix<S>& b);
template <class S>
DenseMatrix<S> operator*(const S& s, const DenseMatrix<S>& a);

/// Max |a_ij|, as double.
template <class S>
double max_abs(const DenseMatrix<S>& a);

/// Unique solution X of A X = B, or empty when A is rank deficient or the
/// system is inconsistent. A may be tall (least-squares shape, exact
/// consistency required). Gaussian elimination with largest-magnitude pivots;
/// in float64 mode entries below `rel_tol * max|A|` count as zero.
template <class S>
std::optional<DenseMatrix<S>> solve_unique(const DenseMatrix<S>& a, const DenseMatrix<S>& b,
                                           double rel_tol = 1e-11);

/// Inverse of a square matrix, empty when singular.
template <class S>
std::optional<DenseMatrix<S>> inverse(const DenseMatrix<S>& a);

/// Scale-free invertibility gate: exact rank in rational mode, smallest
/// singular value > 1e-10 x largest in float64 mode. Empty matrices pass.
bool body_invertible(const DenseMatrix<double>& a);
bool body_invertible(const DenseMatrix<Rational>& a);

/// Symmetric eigendecomposition A = O diag(w) O^T with eigenvalues in
/// descending order and each eigenvector's first nonzero component positive.
/// A matrix that is already diagonal returns the stable permutation sorting
/// its diagonal descending.
struct SymmetricEigen {
  std::vector<double> values;
  DenseMatrix<double> vectors;
};
SymmetricEigen symmetric_eigen(const DenseMatrix<double>& a);

/// Real matrix exponential and principal logarithm (float64 only).
DenseMatrix<double> expm(const DenseMatrix<double>& a);
DenseMatrix<double> logm(const DenseMatrix<double>& a);

template <class To, class From>
DenseMatrix<To> convert(const DenseMatrix<From>& a);

}  // namespace superspin
