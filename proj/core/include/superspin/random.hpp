#pragma once

// Seeded generators for property suites. All coefficients are small dyadic
// fractions k/4, so the same draws are exact in both coefficient modes.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "superspin/isometry.hpp"
#include "superspin/metric.hpp"

namespace superspin {

enum class Draw { any, even, odd, soul_even, soul_odd };

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (rng_() & 1u) != 0; }

  /// Nonzero k/4 with |k| <= 8.
  template <class S>
  S coefficient() {
    int k = uniform_int(1, 8);
    if (coin()) k = -k;
    return ScalarOps<S>::from_fraction(k, 4);
  }

  MultiIndex index(int generators, int min_size, int max_size, int parity /* -1 any, 0 even, 1 odd */) {
    for (;;) {
      std::uint32_t bits = 0;
      const int size = uniform_int(min_size, std::min(max_size, generators));
      std::vector<int> labels(generators);
      for (int i = 0; i < generators; ++i) labels[i] = i;
      for (int i = 0; i < size; ++i) {
        const int j = uniform_int(i, generators - 1);
        std::swap(labels[i], labels[j]);
        bits |= std::uint32_t(1) << labels[i];
      }
      MultiIndex idx(bits);
      if (parity < 0 || (parity == 0) == idx.is_even()) return idx;
    }
  }

  /// Sparse random supernumber; max_degree < 0 allows every index length.
  template <class S>
  Supernumber<S> supernumber(const AlgebraConfig& cfg, Draw draw, int max_terms = 4, int max_degree = -1) {
    const int l = cfg.generators;
    const int top = max_degree < 0 ? l : std::min(l, max_degree);
    int parity = -1;
    int min_size = 0;
    switch (draw) {
      case Draw::any: break;
      case Draw::even: parity = 0; break;
      case Draw::odd: parity = 1; min_size = 1; break;
      case Draw::soul_even: parity = 0; min_size = 2; break;
      case Draw::soul_odd: parity = 1; min_size = 1; break;
    }
    if (min_size > top) return Supernumber<S>(cfg);
    Supernumber<S> z(cfg);
    const int terms = uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      MultiIndex idx = index(l, min_size, top, parity);
      z += Supernumber<S>::monomial(cfg, idx, coefficient<S>());
    }
    return z;
  }

  /// Even supernumber with |body| >= 1/4.
  template <class S>
  Supernumber<S> invertible_even(const AlgebraConfig& cfg, int max_terms = 4) {
    Supernumber<S> z = supernumber<S>(cfg, Draw::soul_even, max_terms);
    return z + Supernumber<S>::constant(cfg, coefficient<S>());
  }

  /// Random valid Gram matrix of shape (m|n). Bodies: A symmetric and B skew
  /// with small integer entries, redrawn until invertible.
  template <class S>
  SuperMatrix<S> metric(const AlgebraConfig& cfg, int m, int n, int max_terms = 2) {
    SuperMatrix<S> g(cfg, BlockShape{m, n}, MatrixParity::even);
    DenseMatrix<S> a(m, m), b(n, n);
    do {
      for (int r = 0; r < m; ++r)
        for (int c = r; c < m; ++c) a(r, c) = a(c, r) = S(uniform_int(-3, 3));
    } while (!body_invertible(a));
    do {
      for (int r = 0; r < n; ++r) {
        b(r, r) = S(0);
        for (int c = r + 1; c < n; ++c) {
          b(r, c) = S(uniform_int(-3, 3));
          b(c, r) = S(-1) * b(r, c);
        }
      }
    } while (!body_invertible(b));
    fill_metric(g, a, b, max_terms);
    return g;
  }

  /// Gram matrix whose even block has a diagonal body with entries from
  /// {+-1, +-4, +-9, +-1/4}; the reduction scales are then rational.
  template <class S>
  SuperMatrix<S> square_body_metric(const AlgebraConfig& cfg, int m, int n, int max_terms = 2) {
    static const long squares[][2] = {{1, 1}, {4, 1}, {9, 1}, {1, 4}};
    SuperMatrix<S> g(cfg, BlockShape{m, n}, MatrixParity::even);
    DenseMatrix<S> a(m, m), b(n, n);
    for (int r = 0; r < m; ++r) {
      const auto& sq = squares[uniform_int(0, 3)];
      a(r, r) = ScalarOps<S>::from_fraction(coin() ? sq[0] : -sq[0], sq[1]);
    }
    for (int k = 0; k + 1 < n; k += 2) {
      b(k, k + 1) = S(uniform_int(1, 3));
      b(k + 1, k) = S(-1) * b(k, k + 1);
    }
    fill_metric(g, a, b, max_terms);
    return g;
  }

  /// sum_k lambda^k X_k over the homogeneous basis with lambda of matching
  /// parity; `soul` drops all bodies (an element of the nilpotent ideal).
  template <class S>
  SuperMatrix<S> lie_element(const LieBasis<S>& basis, const AlgebraConfig& cfg, bool soul, int max_terms = 2,
                             int max_degree = -1) {
    const auto homogeneous = basis.homogeneous();
    const int k0 = static_cast<int>(basis.g0.size());
    std::vector<Supernumber<S>> coords;
    for (int k = 0; k < static_cast<int>(homogeneous.size()); ++k) {
      const bool odd = k >= k0;
      Supernumber<S> z(cfg);
      if (coin()) {
        z = supernumber<S>(cfg, odd ? Draw::soul_odd : Draw::soul_even, max_terms, max_degree);
        if (!soul && !odd && coin()) z += Supernumber<S>::constant(cfg, coefficient<S>());
      }
      coords.push_back(std::move(z));
    }
    return from_coordinates(coords, homogeneous).with_parity(MatrixParity::even);
  }

  /// Lie algebra element for an arbitrary (not necessarily body-reduced)
  /// Gamma: a = eta^-1 K with K skew, b = J S with S symmetric, random odd d
  /// and c = eta^-1 d^T J.
  template <class S>
  SuperMatrix<S> lie_element_general(const GammaForm<S>& gamma, bool soul, int max_terms = 2) {
    const AlgebraConfig& cfg = gamma.config;
    const int m = gamma.m();
    const int n = gamma.n;
    const DenseMatrix<S> j = standard_symplectic<S>(n);
    std::vector<Supernumber<S>> eta_inv;
    for (const auto& z : gamma.eta) eta_inv.push_back(invert(z));
    auto even_entry = [&]() {
      Supernumber<S> z(cfg);
      if (coin()) z = supernumber<S>(cfg, Draw::soul_even, max_terms);
      if (!soul && coin()) z += Supernumber<S>::constant(cfg, coefficient<S>());
      return z;
    };
    SuperMatrix<S> l(cfg, gamma.shape(), MatrixParity::even);
    for (int r = 0; r < m; ++r) {
      for (int c = r + 1; c < m; ++c) {
        const Supernumber<S> k = even_entry();
        l.set(r, c, eta_inv[r] * k);
        l.set(c, r, -(eta_inv[c] * k));
      }
    }
    SuperMatrix<S> sym(cfg, BlockShape{n, 0}, MatrixParity::even);
    for (int r = 0; r < n; ++r) {
      for (int c = r; c < n; ++c) {
        const Supernumber<S> z = even_entry();
        sym.set(r, c, z);
        sym.set(c, r, z);
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        Supernumber<S> acc(cfg);
        for (int k = 0; k < n; ++k)
          if (!ScalarOps<S>::is_zero(j(r, k))) acc += sym(k, c) * j(r, k);
        l.set(m + r, m + c, acc);
      }
    }
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < m; ++i)
        if (coin()) l.set(m + a, i, supernumber<S>(cfg, Draw::soul_odd, max_terms));
    for (int i = 0; i < m; ++i) {
      for (int a = 0; a < n; ++a) {
        Supernumber<S> acc(cfg);
        for (int b = 0; b < n; ++b)
          if (!ScalarOps<S>::is_zero(j(b, a))) acc += l(m + b, i) * j(b, a);
        l.set(i, m + a, eta_inv[i] * acc);
      }
    }
    return l;
  }

  /// Real element of g0 with coefficients k/4.
  template <class S>
  DenseMatrix<S> body_algebra_element(const LieBasis<S>& basis, const S& scale) {
    const int size = basis.g0.empty() ? 0 : basis.g0.front().size();
    DenseMatrix<S> x(size, size);
    for (const auto& e : basis.g0) {
      if (!coin()) continue;
      const S c = coefficient<S>() * scale;
      const DenseMatrix<S> body = body_matrix(e);
      x = x + c * body;
    }
    return x;
  }

  /// Random even matrix of shape (m|n).
  template <class S>
  SuperMatrix<S> even_matrix(const AlgebraConfig& cfg, BlockShape shape, int max_terms = 2) {
    SuperMatrix<S> x(cfg, shape, MatrixParity::even);
    for (int r = 0; r < shape.size(); ++r)
      for (int c = 0; c < shape.size(); ++c)
        if (coin()) x.set(r, c, supernumber<S>(cfg, x.in_diagonal_block(r, c) ? Draw::even : Draw::odd, max_terms));
    return x;
  }

 private:
  template <class S>
  void fill_metric(SuperMatrix<S>& g, const DenseMatrix<S>& a, const DenseMatrix<S>& b, int max_terms) {
    const AlgebraConfig& cfg = g.config();
    const int m = g.shape().m;
    const int n = g.shape().n;
    for (int r = 0; r < m; ++r) {
      for (int c = r; c < m; ++c) {
        Supernumber<S> z = Supernumber<S>::constant(cfg, a(r, c));
        if (coin()) z += supernumber<S>(cfg, Draw::soul_even, max_terms);
        g.set(r, c, z);
        g.set(c, r, z);
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int c = r + 1; c < n; ++c) {
        Supernumber<S> z = Supernumber<S>::constant(cfg, b(r, c));
        if (coin()) z += supernumber<S>(cfg, Draw::soul_even, max_terms);
        g.set(m + r, m + c, z);
        g.set(m + c, m + r, -z);
      }
    }
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        if (!coin()) continue;
        Supernumber<S> z = supernumber<S>(cfg, Draw::odd, max_terms);
        g.set(r, m + c, z);
        g.set(m + c, r, z);
      }
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace superspin
