#pragma once

// Canonical forms of super Riemannian metric Gram matrices.
//
// A Gram matrix G = [[A, C], [D, B]] of an even, graded-symmetric,
// non-degenerate form transforms as G -> P^ST G P under an even transition P.
// The pipeline
//   1. diagonalizes the even block (orthogonal body diagonalization, then
//      Gram-Schmidt over the even supernumbers),
//   2. removes the mixed blocks by projecting the odd basis vectors onto the
//      orthogonal complement of the even span,
//   3. brings the skew odd block to the standard symplectic matrix,
// and yields Gamma = diag(eta, J_n) with eta = diag(d_1, ..., d_m).
// body_reduce then rescales each d_i to +-1.

#include <vector>

#include "superspin/supermatrix.hpp"

namespace superspin {

/// A validated Gram matrix: A = A^T, B = -B^T, D = C^T, even entries in A and
/// B, odd entries in C and D, invertible bodies of A and B, n even.
template <class S>
class SuperMetric {
 public:
  const SuperMatrix<S>& gram() const { return gram_; }
  int m() const { return gram_.shape().m; }
  int n() const { return gram_.shape().n; }

  template <class T>
  friend SuperMetric<T> validate_metric(const SuperMatrix<T>& g);

 private:
  explicit SuperMetric(SuperMatrix<S> gram) : gram_(std::move(gram)) {}
  SuperMatrix<S> gram_;
};

/// Throws NotEven, OddDimensionOdd, NotGradedSymmetric, DegenerateBody.
template <class S>
SuperMetric<S> validate_metric(const SuperMatrix<S>& g);

template <class S>
struct EvenOrthogonalization {
  /// m x m transition over the even supernumbers, shape (m|0).
  SuperMatrix<S> transition;
  std::vector<Supernumber<S>> d;
};

template <class S>
EvenOrthogonalization<S> orthogonalize_even(const SuperMetric<S>& metric);

template <class S>
struct OddComplement {
  /// Full (m|n) transition: P1 = [[P0, P0 X], [0, I]].
  SuperMatrix<S> transition;
  /// Gram matrix diag(diag(d), B1) with vanishing mixed blocks.
  SuperMatrix<S> gram;
  /// The skew odd-odd block B1, shape (n|0).
  SuperMatrix<S> odd_block;
};

template <class S>
OddComplement<S> odd_complement(const SuperMetric<S>& metric, const EvenOrthogonalization<S>& even);

/// Q with Q^T B1 Q = J_n exactly (rational) for a skew even block with
/// invertible body. Shapes (n|0).
template <class S>
SuperMatrix<S> symplectic_reduce(const SuperMatrix<S>& odd_block);

template <class S>
struct Reducibility {
  S ratio;             // ||s(d_i)|| / |beta(d_i)|
  bool condition_met;  // ratio < 1
  int sign;            // beta(d_i) / |beta(d_i)|
  int source = 0;      // position of d_i before the sign ordering
};

/// Condition record of a single diagonal entry (source = 0). Throws
/// DegenerateBody for a zero body.
template <class S>
Reducibility<S> reducibility(const Supernumber<S>& d);

template <class S>
struct CanonicalizationResult {
  SuperMatrix<S> P;
  SuperMatrix<S> Gamma;
  std::vector<Supernumber<S>> d;
  /// Filled by body_reduce, one record per diagonal entry (final order).
  std::vector<Reducibility<S>> reducibility;
  /// Filled by body_reduce: the column scale lambda_i (final order), with
  /// lambda_i^2 d_i = +-1 for the pre-reduction d_i.
  std::vector<Supernumber<S>> lambda;
  bool body_reduced = false;

  /// All per-index conditions hold.
  bool body_reducible() const;
};

/// diag(eta, J_n) for the given diagonal.
template <class S>
SuperMatrix<S> canonical_matrix(const AlgebraConfig& config, const std::vector<Supernumber<S>>& eta, int n);

/// J_n: block diagonal of n/2 copies of [[0, 1], [-1, 0]], shape (n|0).
template <class S>
DenseMatrix<S> standard_symplectic(int n);

template <class S>
CanonicalizationResult<S> canonical_form(const SuperMetric<S>& metric);

/// Rescales each even basis vector by
///   lambda_i = |beta(d_i)|^(-1/2) (1 + s(d_i)/beta(d_i))^(-1/2)
/// so that g(e_i, e_i) = +-1, then orders +1 entries before -1 entries.
/// In strict mode an index with ||s(d_i)|| / |beta(d_i)| >= 1 throws
/// ConvergenceViolation; otherwise the (terminating) series is used and the
/// condition is recorded as unmet. Rational mode throws IrrationalScale when
/// |beta(d_i)| is not a rational square.
template <class S>
CanonicalizationResult<S> body_reduce(const CanonicalizationResult<S>& result, bool strict);

/// Extend an m x m and an n x n transition to diag(top, bottom), shape (m|n).
template <class S>
SuperMatrix<S> block_diagonal(const SuperMatrix<S>& top, const SuperMatrix<S>& bottom);

}  // namespace superspin
