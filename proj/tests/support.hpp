#pragma once

#include <string>

#include "superspin/grassmann.hpp"
#include "superspin/supermatrix.hpp"

namespace testing_support {

using superspin::AlgebraConfig;
using superspin::MultiIndex;
using superspin::Rational;
using superspin::Supernumber;

inline AlgebraConfig rat(int generators = 6) { return AlgebraConfig::rational(generators); }
inline AlgebraConfig flt(int generators = 6) { return AlgebraConfig::float64(generators); }

// zeta^{(i1,...,ik)} with coefficient c.
template <class S>
Supernumber<S> zeta(const AlgebraConfig& cfg, std::initializer_list<int> labels, S c = S(1)) {
  std::vector<int> l(labels);
  return Supernumber<S>::monomial(cfg, MultiIndex::from_generators(l, cfg.generators), c);
}

template <class S>
Supernumber<S> num(const AlgebraConfig& cfg, S c) {
  return Supernumber<S>::constant(cfg, c);
}

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace testing_support
