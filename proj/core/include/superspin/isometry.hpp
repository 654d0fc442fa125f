#pragma once

// Local isometries of Gamma = diag(eta, J_n) and their Lie algebra.
//
// An even matrix N = [[A, C], [D, B]] is an isometry iff N^ST Gamma N = Gamma,
// i.e.
//   (1) A^T eta A - D^T J D = eta
//   (2) C^T eta C + B^T J B = J
//   (3) A^T eta C - D^T J B = 0.
// Differentiating at the identity, an even matrix l = [[a, c], [d, b]] lies in
// the Lie algebra iff
//   (1) a^T eta + eta a = 0
//   (2) b^T J + J b = 0
//   (3) eta c - d^T J = 0,
// equivalently l^ST Gamma + Gamma l = 0.

#include <array>
#include <vector>

#include "superspin/supermatrix.hpp"

namespace superspin {

template <class S>
struct GammaForm {
  AlgebraConfig config;
  std::vector<Supernumber<S>> eta;
  int n = 0;

  /// eta = (+1 x p, -1 x q). Throws OddDimensionOdd for odd n.
  static GammaForm signature(const AlgebraConfig& config, int p, int q, int n);
  /// Throws OddDimensionOdd, ParityMismatch (odd eta entry) or DegenerateBody.
  static GammaForm from_eta(const AlgebraConfig& config, std::vector<Supernumber<S>> eta, int n);

  int m() const { return static_cast<int>(eta.size()); }
  BlockShape shape() const { return {m(), n}; }
  SuperMatrix<S> matrix() const;
  /// Every eta entry is the constant +1 or -1.
  bool is_body_reduced() const;
};

/// Max entrywise l1 norm of N^ST Gamma N - Gamma.
template <class S>
S isometry_residual(const SuperMatrix<S>& n, const GammaForm<S>& gamma);

/// Exact in rational mode; residual <= 1e-10 (1 + max ||N_ab||)^2 in float64.
/// Throws ShapeMismatch, ParityMismatch.
template <class S>
bool is_isometry(const SuperMatrix<S>& n, const GammaForm<S>& gamma);

template <class S>
struct MembershipReport {
  /// Max entry norm of the residual of conditions (1), (2), (3).
  std::array<S, 3> residual;
  std::array<bool, 3> condition;
  /// Max entry norm of l^ST Gamma + Gamma l.
  S single_residual;
  bool single_test = false;
  bool member = false;
  /// The triple and the single test agree.
  bool consistent = false;
  /// 1-based numbers of the violated conditions.
  std::vector<int> violated() const;
};

/// Tolerance: residual <= 1e-10 (1 + total norm of l) in float64, exact zero
/// in rational mode. Throws ShapeMismatch, ParityMismatch (l not even).
template <class S>
MembershipReport<S> lie_membership(const SuperMatrix<S>& l, const GammaForm<S>& gamma);

struct BasisIndex {
  MultiIndex index;
  bool odd = false;  // base element from g1 (else g0)
  int base = 0;      // position within g0 or g1
};

template <class S>
struct LieBasis {
  /// so(p, q) part (a blocks E_ij eta_j - E_ji eta_i, i < j) followed by the
  /// sp(n) part (b = J S for the symmetric units S).
  std::vector<SuperMatrix<S>> g0;
  /// d = E_(alpha, i), c = eta^-1 d^T J; ordered by i, then alpha.
  std::vector<SuperMatrix<S>> g1;
  /// g0 elements with every even multi-index, g1 elements with every odd one.
  std::vector<BasisIndex> hJ;

  /// g0 followed by g1.
  std::vector<SuperMatrix<S>> homogeneous() const;
  /// zeta^J X for an hJ entry.
  SuperMatrix<S> element(const BasisIndex& index) const;
};

/// Throws NotBodyReduced.
template <class S>
LieBasis<S> lie_basis(const GammaForm<S>& gamma);

/// Real block-diagonal [[beta(a), 0], [0, beta(b)]].
template <class S>
DenseMatrix<S> body_project(const SuperMatrix<S>& l);

/// sum_i ||y^i|| ||X_i||. Throws LengthMismatch.
template <class S>
S u_norm(const std::vector<Supernumber<S>>& coords, const std::vector<S>& basis_norms);

/// Real conditions (1)-(2) for a block-diagonal real matrix against beta(Gamma)
/// (odd blocks must vanish).
template <class S>
bool in_body_algebra(const DenseMatrix<S>& x0, const GammaForm<S>& gamma);

/// Real isometry relation g^T beta(Gamma) g = beta(Gamma) for block-diagonal g.
template <class S>
bool in_body_group(const DenseMatrix<S>& g, const GammaForm<S>& gamma);

}  // namespace superspin
