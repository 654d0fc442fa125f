#pragma once

// Grassmann algebra on L anticommuting generators with the l1 norm.
//
// A supernumber is a finite sum  z = sum_I z_I zeta^I  over increasing
// multi-indices I. The generators satisfy zeta^i zeta^j = -zeta^j zeta^i, so
// zeta^i squares to zero and every soul is nilpotent once L is fixed.

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "superspin/error.hpp"
#include "superspin/scalar.hpp"

namespace superspin {

inline constexpr int kMaxGenerators = 24;

enum class CoefficientMode { float64, rational };

struct AlgebraConfig {
  int generators = 6;
  CoefficientMode mode = CoefficientMode::float64;
  /// Relative pruning threshold; float64 mode only, must be 0 for rational.
  double zero_tolerance = 1e-14;

  static AlgebraConfig float64(int generators, double zero_tolerance = 1e-14);
  static AlgebraConfig rational(int generators);

  /// Throws InvalidConfig.
  void validate() const;

  friend bool operator==(const AlgebraConfig&, const AlgebraConfig&) = default;
};

/// Mode tag matching a scalar type.
template <class S>
constexpr CoefficientMode mode_of() {
  return ScalarOps<S>::exact ? CoefficientMode::rational : CoefficientMode::float64;
}

/// Increasing string of generator labels, stored as a bitset
/// (generator i <-> bit i-1). The empty index labels the body term.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(std::uint32_t bits) : bits_(bits) {}

  /// From 1-based generator labels; must be strictly increasing and <= L.
  static MultiIndex from_generators(std::span<const int> labels, int generators);

  constexpr std::uint32_t bits() const { return bits_; }
  int size() const { return __builtin_popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool is_even() const { return (size() & 1) == 0; }
  bool disjoint(MultiIndex other) const { return (bits_ & other.bits_) == 0; }
  std::vector<int> generators() const;

  friend constexpr auto operator<=>(MultiIndex, MultiIndex) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Sign of zeta^a zeta^b relative to zeta^{a u b}; 0 when a and b overlap.
int merge_sign(MultiIndex a, MultiIndex b);

enum class Parity { zero, even, odd, mixed };

template <class S>
class Supernumber {
 public:
  using Term = std::pair<MultiIndex, S>;

  explicit Supernumber(const AlgebraConfig& config);

  static Supernumber constant(const AlgebraConfig& config, const S& value);
  static Supernumber generator(const AlgebraConfig& config, int label);
  static Supernumber monomial(const AlgebraConfig& config, MultiIndex index, const S& coeff);
  /// Merges duplicate indices and drops zero coefficients.
  static Supernumber from_terms(const AlgebraConfig& config, std::vector<Term> terms);

  const AlgebraConfig& config() const { return config_; }
  /// Terms in ascending bitset order, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(MultiIndex index) const;
  S body() const { return coefficient(MultiIndex{}); }
  Supernumber soul() const;
  Parity parity() const;
  /// True for zero and even elements.
  bool is_even() const;
  /// True for zero and odd elements.
  bool is_odd() const;
  /// Smallest length among stored multi-indices (0 for zero).
  int min_degree() const;

  Supernumber operator-() const;
  Supernumber& operator+=(const Supernumber& other);
  Supernumber& operator-=(const Supernumber& other);
  Supernumber& operator*=(const S& scalar);

  friend Supernumber operator+(Supernumber a, const Supernumber& b) { return a += b; }
  friend Supernumber operator-(Supernumber a, const Supernumber& b) { return a -= b; }
  friend Supernumber operator*(Supernumber a, const S& s) { return a *= s; }
  friend Supernumber operator*(const S& s, Supernumber a) { return a *= s; }
  friend Supernumber operator*(const Supernumber& a, const Supernumber& b) {
    return multiply(a, b);
  }

  /// Exact comparison of configuration and coefficients.
  friend bool operator==(const Supernumber& a, const Supernumber& b) {
    return a.config_ == b.config_ && a.terms_ == b.terms_;
  }

  template <class T>
  friend Supernumber<T> multiply(const Supernumber<T>& x, const Supernumber<T>& y);

 private:
  Supernumber(const AlgebraConfig& config, std::vector<Term> terms)
      : config_(config), terms_(std::move(terms)) {}

  void prune(double scale);

  AlgebraConfig config_;
  std::vector<Term> terms_;
};

template <class S>
Supernumber<S> multiply(const Supernumber<S>& x, const Supernumber<S>& y);

/// sum_i coeffs[i] * terms[i]; throws LengthMismatch / ConfigMismatch.
template <class S>
Supernumber<S> linear_combine(std::span<const S> coeffs, std::span<const Supernumber<S>> terms);

template <class S>
S ell1_norm(const Supernumber<S>& z);

template <class S>
std::pair<S, Supernumber<S>> body_soul(const Supernumber<S>& z);

template <class S>
Parity parity(const Supernumber<S>& z) {
  return z.parity();
}

/// Multiplicative inverse via the (finite) Neumann series in the soul.
/// Throws BodyNotInvertible.
template <class S>
Supernumber<S> invert(const Supernumber<S>& z);

/// (1 + mu)^(-1/2) for even mu. The soul part of the binomial series
/// terminates at finite L; a nonzero body factors out as (1 + beta)^(-1/2).
/// `strict` enforces the convergence gate ||mu|| < 1 whenever beta(mu) != 0.
/// Throws ParityMismatch, ConvergenceViolation, IrrationalScale (rational mode
/// with a non-square body factor).
template <class S>
Supernumber<S> binomial_inverse_sqrt(const Supernumber<S>& mu, bool strict);

/// z^k by repeated multiplication.
template <class S>
Supernumber<S> power(const Supernumber<S>& z, int k);

void require_same_config(const AlgebraConfig& a, const AlgebraConfig& b);

extern template class Supernumber<double>;
extern template class Supernumber<Rational>;

}  // namespace superspin
