#pragma once

// Coefficient types. Every numeric template in the library is instantiated
// for exactly these two scalars: `double` (float64 mode) and `Rational`
// (exact mode, GMP-backed).

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>

namespace superspin {

using Rational = mpq_class;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float64";

  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_fraction(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool is_zero(double x) { return x == 0.0; }
  static std::optional<double> sqrt(double x) {
    if (x < 0.0) return std::nullopt;
    return std::sqrt(x);
  }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_double(double x) { return Rational(x); }
  static Rational from_fraction(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  /// Exact square root; empty unless numerator and denominator are both
  /// perfect squares.
  static std::optional<Rational> sqrt(const Rational& x);
};

inline std::optional<Rational> ScalarOps<Rational>::sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
      mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

/// Shortest round-trip text for doubles, "p/q" (or "p") for rationals.
std::string format_scalar(double x);
std::string format_scalar(const Rational& x);

}  // namespace superspin
