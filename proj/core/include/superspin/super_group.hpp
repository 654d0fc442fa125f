#pragma once

// The nilpotent group (n, diamond) of zero-body Lie elements, truncated BCH
// series, the action of the body group by conjugation, and the semi-direct
// product H = G x| N in exponential coordinates.

#include <map>
#include <string>
#include <vector>

#include "superspin/isometry.hpp"

namespace superspin {

/// Zero-body Lie algebra element. Throws NonZeroBody or NotInLieAlgebra.
template <class S>
SuperMatrix<S> validate_nil(const SuperMatrix<S>& x, const GammaForm<S>& gamma);

/// log(exp X exp Y); exact by nilpotency. Throws NonZeroBody.
template <class S>
SuperMatrix<S> diamond(const SuperMatrix<S>& x, const SuperMatrix<S>& y);

struct BCHOrderConfig {
  int max_order = 4;
  static constexpr int kMaxOrder = 6;
  void validate() const;
};

/// Homogeneous component Theta_m of log(e^x e^y) in the free algebra, as
/// coefficients of words in {x, y}. Derived from W(Z(x, y)) with
/// W(z) = log(1 + z), Z(x, y) = e^x e^y - 1 in exact arithmetic.
const std::map<std::string, Rational>& bch_term(int order);

/// 2 x (sum of entry l1 norms); dominates ||[X, Y]|| <= ||X|| ||Y||.
template <class S>
S lie_norm(const SuperMatrix<S>& x);

/// sum_{m <= max_order} Theta_m(X, Y). Inputs with nonzero body must satisfy
/// lie_norm(X) + lie_norm(Y) <= ln 2, else NormBoundViolation.
template <class S>
SuperMatrix<S> bch_series(const SuperMatrix<S>& x, const SuperMatrix<S>& y, const BCHOrderConfig& cfg = {});

/// g Y g^-1 for a real invertible body-group matrix g.
template <class S>
SuperMatrix<S> act_by(const DenseMatrix<S>& g, const SuperMatrix<S>& y);

/// alpha(exp X0)(Y) = exp(X0) Y exp(-X0). Float64 only (ModeUnsupported in
/// rational mode); throws NotInG0 when X0 violates the real conditions.
template <class S>
SuperMatrix<S> action_alpha(const DenseMatrix<S>& x0, const SuperMatrix<S>& y, const GammaForm<S>& gamma);

/// (I - X0/2)^-1 (I + X0/2): an exact rational group element for X0 in g0.
template <class S>
DenseMatrix<S> cayley(const DenseMatrix<S>& x0, const GammaForm<S>& gamma);

/// exp(X0) as a body-group element (float64 only).
DenseMatrix<double> body_exp(const DenseMatrix<double>& x0, const GammaForm<double>& gamma);

template <class S>
struct GroupElement {
  DenseMatrix<S> g;   // block-diagonal real isometry of beta(Gamma)
  SuperMatrix<S> n;   // zero-body Lie element

  static GroupElement identity(const GammaForm<S>& gamma);
};

/// Throws ShapeMismatch, NotInG0 (g not a body isometry), NonZeroBody,
/// NotInLieAlgebra.
template <class S>
void validate_group_element(const GroupElement<S>& h, const GammaForm<S>& gamma);

/// (g1 g2, n1 diamond alpha(g1)(n2)).
template <class S>
GroupElement<S> semidirect_multiply(const GroupElement<S>& h1, const GroupElement<S>& h2);

/// (g^-1, alpha(g^-1)(-n)).
template <class S>
GroupElement<S> group_inverse(const GroupElement<S>& h);

/// exp(n) g = g exp(g^-1 n g), an isometry of Gamma.
template <class S>
SuperMatrix<S> embed_isometry(const GroupElement<S>& h, const GammaForm<S>& gamma);

}  // namespace superspin
