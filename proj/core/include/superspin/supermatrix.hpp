#pragma once

// Square (m|n)-block matrices over the Grassmann algebra.
//
// Rows and columns 0..m-1 are even, m..m+n-1 odd. An even-class matrix has
// even entries in the diagonal blocks A (m x m), B (n x n) and odd entries in
// the off-diagonal blocks C (m x n), D (n x m); an odd-class matrix has the
// parities flipped blockwise.

#include <string>
#include <vector>

#include "superspin/dense.hpp"
#include "superspin/grassmann.hpp"

namespace superspin {

struct BlockShape {
  int m = 0;  // even dimension
  int n = 0;  // odd dimension

  int size() const { return m + n; }
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

enum class MatrixParity { even, odd, general };

const char* to_string(MatrixParity p);

template <class S>
class SuperMatrix {
 public:
  SuperMatrix(const AlgebraConfig& config, BlockShape shape,
              MatrixParity parity = MatrixParity::general);

  static SuperMatrix identity(const AlgebraConfig& config, BlockShape shape);
  /// Row-major entries; validates the declared parity class.
  static SuperMatrix from_entries(const AlgebraConfig& config, BlockShape shape,
                                  MatrixParity parity, std::vector<Supernumber<S>> entries);
  static SuperMatrix from_real(const AlgebraConfig& config, BlockShape shape,
                               MatrixParity parity, const DenseMatrix<S>& values);

  const AlgebraConfig& config() const { return config_; }
  BlockShape shape() const { return shape_; }
  int size() const { return shape_.size(); }
  MatrixParity parity() const { return parity_; }

  const Supernumber<S>& operator()(int r, int c) const { return entries_[index(r, c)]; }
  /// Throws ParityMismatch if the value violates the declared class.
  void set(int r, int c, Supernumber<S> value);

  bool is_zero() const;
  /// Re-tag with another class; throws ParityMismatch if entries disagree.
  SuperMatrix with_parity(MatrixParity parity) const;

  SuperMatrix operator-() const;
  SuperMatrix& operator+=(const SuperMatrix& other);
  SuperMatrix& operator-=(const SuperMatrix& other);
  SuperMatrix& operator*=(const S& scalar);

  friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
  friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
  friend SuperMatrix operator*(SuperMatrix a, const S& s) { return a *= s; }
  friend SuperMatrix operator*(const S& s, SuperMatrix a) { return a *= s; }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.config_ == b.config_ && a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

  /// True when (r, c) lies in a diagonal block (A or B).
  bool in_diagonal_block(int r, int c) const { return (r < shape_.m) == (c < shape_.m); }

 private:
  std::size_t index(int r, int c) const { return std::size_t(r) * shape_.size() + c; }

  AlgebraConfig config_;
  BlockShape shape_;
  MatrixParity parity_;
  std::vector<Supernumber<S>> entries_;
};

/// Tightest class the entries satisfy (the zero matrix counts as even).
template <class S>
MatrixParity classify(const SuperMatrix<S>& a);

template <class S>
bool conforms(const SuperMatrix<S>& a, MatrixParity parity);

/// Row-by-column product, entry order preserved. Throws ShapeMismatch.
template <class S>
SuperMatrix<S> matmul(const SuperMatrix<S>& p, const SuperMatrix<S>& q);

template <class S>
SuperMatrix<S> operator*(const SuperMatrix<S>& p, const SuperMatrix<S>& q) {
  return matmul(p, q);
}

/// z * M entrywise, z on the left.
template <class S>
SuperMatrix<S> scale_left(const Supernumber<S>& z, const SuperMatrix<S>& a);

/// [[A, C], [D, B]] -> [[A^T, -D^T], [C^T, B^T]]. Even class only.
template <class S>
SuperMatrix<S> supertranspose(const SuperMatrix<S>& a);

template <class S>
DenseMatrix<S> body_matrix(const SuperMatrix<S>& a);

template <class S>
bool has_zero_body(const SuperMatrix<S>& a);

/// Exact inverse from N = B (I + B^-1 S): N^-1 = (sum_k (-B^-1 S)^k) B^-1.
/// Throws BodyNotInvertible when the body fails the invertibility gate.
template <class S>
SuperMatrix<S> invert_matrix(const SuperMatrix<S>& a);

/// sum_k X^k / k! for zero-body X; terminates by nilpotency. Throws NonZeroBody.
template <class S>
SuperMatrix<S> exp_zero_body(const SuperMatrix<S>& x);

/// sum_k (-1)^(k+1) (U - I)^k / k for body(U) = I. Throws NotUnipotent.
template <class S>
SuperMatrix<S> log_unipotent(const SuperMatrix<S>& u);

template <class S>
SuperMatrix<S> commutator(const SuperMatrix<S>& x, const SuperMatrix<S>& y);

template <class S>
SuperMatrix<S> anticommutator(const SuperMatrix<S>& x, const SuperMatrix<S>& y);

/// max over entries of ||M_ab|| (l1).
template <class S>
S max_entry_norm(const SuperMatrix<S>& a);

/// sum over entries of ||M_ab|| (l1); submultiplicative.
template <class S>
S total_norm(const SuperMatrix<S>& a);

/// Lambda-coordinates of M against real homogeneous basis matrices X_k:
/// M = sum_k lambda^k X_k (entrywise, lambda on the left).
/// Throws BasisDegenerate (non-real, inhomogeneous, or dependent basis) or
/// NotInSpan.
template <class S>
std::vector<Supernumber<S>> coordinates(const SuperMatrix<S>& m,
                                        const std::vector<SuperMatrix<S>>& basis);

/// sum_k lambda^k X_k.
template <class S>
SuperMatrix<S> from_coordinates(const std::vector<Supernumber<S>>& coords,
                                const std::vector<SuperMatrix<S>>& basis);

/// Matrix of ad_X over a real homogeneous basis {X_j} of a graded matrix Lie
/// algebra. The operator is the Lambda-linear extension of the even-matrix
/// commutator: for mu of the same parity as X_j,
///   X (mu X_j) - (mu X_j) X = sum_l (mu * matrix(l, j)) X_l,
/// so column j holds the coordinates of [X, X_j]. Concretely
/// matrix(l, j) = sum_k lambda^k c_{kj}^l where X = sum lambda^k X_k and c
/// are the structure constants of XY - YX, except -(XY + YX) for two odd
/// basis elements (the sign picked up moving mu past an odd coefficient).
template <class S>
struct AdOperator {
  SuperMatrix<S> source;
  SuperMatrix<S> matrix;
  std::string basis_tag;
};

template <class S>
AdOperator<S> ad_operator(const SuperMatrix<S>& x, const std::vector<SuperMatrix<S>>& basis,
                          std::string basis_tag = "g");

/// Operator of "inner, then outer" in the coordinate convention above:
/// result(p, j) = sum_l inner(l, j) * outer(p, l).
template <class S>
SuperMatrix<S> compose_operators(const SuperMatrix<S>& outer, const SuperMatrix<S>& inner);

enum class SpectrumVerdict { invertible, singular };

/// Decides invertibility of xi I - ad.matrix from its body xi I.
/// Throws NonZeroBodyOperator when body(ad.matrix) != 0.
template <class S>
SpectrumVerdict spectrum_gate(const AdOperator<S>& ad, const S& xi);

#define SUPERSPIN_EXTERN(S) extern template class SuperMatrix<S>;
SUPERSPIN_EXTERN(double)
SUPERSPIN_EXTERN(Rational)
#undef SUPERSPIN_EXTERN

}  // namespace superspin
