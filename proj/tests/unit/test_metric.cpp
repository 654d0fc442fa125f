#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>

#include "superspin/metric.hpp"
#include "superspin/random.hpp"
#include "support.hpp"

using namespace superspin;
using namespace testing_support;

namespace {

template <class S>
SuperMatrix<S> gram(const AlgebraConfig& cfg, int m, int n, std::vector<Supernumber<S>> entries) {
  return SuperMatrix<S>::from_entries(cfg, BlockShape{m, n}, MatrixParity::even, std::move(entries));
}

// diag(eta, J_n) written out by hand.
template <class S>
SuperMatrix<S> diag_eta_j(const AlgebraConfig& cfg, const std::vector<S>& eta, int n) {
  const int m = static_cast<int>(eta.size());
  SuperMatrix<S> g(cfg, BlockShape{m, n}, MatrixParity::even);
  for (int i = 0; i < m; ++i) g.set(i, i, num(cfg, eta[i]));
  for (int k = 0; k < n; k += 2) {
    g.set(m + k, m + k + 1, num(cfg, S(1)));
    g.set(m + k + 1, m + k, num(cfg, S(-1)));
  }
  return g;
}

template <class S>
SuperMatrix<S> congruence(const SuperMatrix<S>& p, const SuperMatrix<S>& g) {
  return matmul(matmul(supertranspose(p), g), p);
}

Supernumber<Rational> z12(const AlgebraConfig& cfg, Rational c = 1) { return zeta<Rational>(cfg, {1, 2}, c); }

}  // namespace

TEST(ValidateMetric, AcceptsCanonicalMatrix) {
  auto cfg = rat();
  EXPECT_NO_THROW(validate_metric(diag_eta_j<Rational>(cfg, {1, 1}, 4)));
}

TEST(ValidateMetric, SingularOddBodyIsDegenerate) {
  auto cfg = rat();
  auto g = diag_eta_j<Rational>(cfg, {1}, 2);
  g.set(1, 2, z12(cfg));
  g.set(2, 1, -z12(cfg));
  try {
    validate_metric(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBody);
    EXPECT_EQ(e.where(), "B");
  }
}

TEST(ValidateMetric, OddDimensionMustBeEven) {
  auto cfg = rat();
  SuperMatrix<Rational> g = SuperMatrix<Rational>::identity(cfg, BlockShape{1, 3});
  try {
    validate_metric(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OddDimensionOdd);
  }
}

TEST(ValidateMetric, RejectsAsymmetryAndOddEntries) {
  auto cfg = rat();
  auto g = diag_eta_j<Rational>(cfg, {1, 1}, 2);
  g.set(0, 1, z12(cfg));
  try {
    validate_metric(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGradedSymmetric);
    EXPECT_EQ(e.where(), "entry (0,1)");
  }
  // D must equal C^T, not -C^T.
  auto h = diag_eta_j<Rational>(cfg, {1}, 2);
  h.set(0, 1, zeta<Rational>(cfg, {1}));
  h.set(1, 0, zeta<Rational>(cfg, {1}, -1));
  EXPECT_THROW(validate_metric(h), Error);
  SuperMatrix<Rational> odd(cfg, BlockShape{1, 0}, MatrixParity::general);
  odd.set(0, 0, zeta<Rational>(cfg, {1}));
  try {
    validate_metric(odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEven);
  }
}

TEST(OrthogonalizeEven, IdentityIsFixed) {
  auto cfg = rat();
  auto res = orthogonalize_even(validate_metric(SuperMatrix<Rational>::identity(cfg, BlockShape{3, 0})));
  EXPECT_EQ(res.transition, SuperMatrix<Rational>::identity(cfg, BlockShape{3, 0}));
  for (const auto& d : res.d) EXPECT_EQ(d, num(cfg, Rational(1)));
}

TEST(OrthogonalizeEven, SoulCouplingRemovedExactly) {
  auto cfg = rat();
  auto one = num(cfg, Rational(1));
  auto g = gram<Rational>(cfg, 2, 0, {one, z12(cfg), z12(cfg), one});
  auto res = orthogonalize_even(validate_metric(g));
  // f2 = e2 - zeta12 e1
  EXPECT_EQ(res.transition(0, 0), one);
  EXPECT_EQ(res.transition(1, 0), Supernumber<Rational>(cfg));
  EXPECT_EQ(res.transition(0, 1), -z12(cfg));
  EXPECT_EQ(res.transition(1, 1), one);
  ASSERT_EQ(res.d.size(), 2u);
  EXPECT_EQ(res.d[0], one);
  EXPECT_EQ(res.d[1], one);
  // P0^T A P0 by hand, entry by entry.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Supernumber<Rational> acc(cfg);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) acc += res.transition(k, i) * g(k, l) * res.transition(l, j);
      EXPECT_EQ(acc, i == j ? one : Supernumber<Rational>(cfg));
    }
  }
}

TEST(OrthogonalizeEven, AlreadyDiagonalKeepsEntries) {
  auto cfg = rat();
  auto d1 = num(cfg, Rational(2)) + z12(cfg);
  auto d2 = num(cfg, Rational(-3));
  auto g = gram<Rational>(cfg, 2, 0, {d1, Supernumber<Rational>(cfg), Supernumber<Rational>(cfg), d2});
  auto res = orthogonalize_even(validate_metric(g));
  EXPECT_EQ(res.transition, SuperMatrix<Rational>::identity(cfg, BlockShape{2, 0}));
  EXPECT_EQ(res.d[0], d1);
  EXPECT_EQ(res.d[1], d2);
}

TEST(OddComplement, ZeroMixedBlockExtendsByIdentity) {
  auto cfg = rat();
  auto g = diag_eta_j<Rational>(cfg, {1, -1}, 2);
  auto metric = validate_metric(g);
  auto even = orthogonalize_even(metric);
  auto odd = odd_complement(metric, even);
  EXPECT_EQ(odd.transition, block_diagonal(even.transition, SuperMatrix<Rational>::identity(cfg, BlockShape{2, 0})));
}

TEST(OddComplement, SingleOddCouplingIsProjectedOut) {
  auto cfg = rat();
  auto g = diag_eta_j<Rational>(cfg, {1}, 2);
  g.set(0, 1, zeta<Rational>(cfg, {1}));
  g.set(1, 0, zeta<Rational>(cfg, {1}));
  auto metric = validate_metric(g);
  auto odd = odd_complement(metric, orthogonalize_even(metric));
  // f1 = e1_odd - zeta1 e1
  EXPECT_EQ(odd.transition(0, 1), -zeta<Rational>(cfg, {1}));
  EXPECT_EQ(odd.transition(0, 2), Supernumber<Rational>(cfg));
  auto g1 = congruence(odd.transition, g);
  for (int a = 1; a < 3; ++a) {
    EXPECT_TRUE(g1(0, a).is_zero());
    EXPECT_TRUE(g1(a, 0).is_zero());
  }
  EXPECT_EQ(g1, odd.gram);
}

TEST(OddComplement, OddBlockBodyUnchanged) {
  auto cfg = rat();
  Sampler rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = rng.metric<Rational>(cfg, 3, 4);
    auto metric = validate_metric(g);
    auto odd = odd_complement(metric, orthogonalize_even(metric));
    EXPECT_EQ(congruence(odd.transition, g), odd.gram);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) EXPECT_EQ(odd.odd_block(a, b).body(), g(3 + a, 3 + b).body());
  }
}

TEST(SymplecticReduce, StandardBlockIsFixed) {
  auto cfg = rat();
  auto j = SuperMatrix<Rational>::from_real(cfg, BlockShape{2, 0}, MatrixParity::even,
                                            standard_symplectic<Rational>(2));
  EXPECT_EQ(symplectic_reduce(j), SuperMatrix<Rational>::identity(cfg, BlockShape{2, 0}));
}

TEST(SymplecticReduce, SoulPairingScaledByInverse) {
  auto cfg = rat();
  auto w = num(cfg, Rational(1)) + z12(cfg);
  auto b = gram<Rational>(cfg, 2, 0, {Supernumber<Rational>(cfg), w, -w, Supernumber<Rational>(cfg)});
  auto qm = symplectic_reduce(b);
  EXPECT_EQ(qm(1, 1), num(cfg, Rational(1)) - z12(cfg));
  auto j = SuperMatrix<Rational>::from_real(cfg, BlockShape{2, 0}, MatrixParity::even,
                                            standard_symplectic<Rational>(2));
  SuperMatrix<Rational> qt(cfg, BlockShape{2, 0});
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) qt.set(r, c, qm(c, r));
  EXPECT_EQ(matmul(matmul(qt, b), qm), j);
}

TEST(SymplecticReduce, ScalarPairing) {
  auto cfg = rat();
  auto b = gram<Rational>(cfg, 2, 0, {Supernumber<Rational>(cfg), num(cfg, Rational(2)),
                                      num(cfg, Rational(-2)), Supernumber<Rational>(cfg)});
  auto qm = symplectic_reduce(b);
  EXPECT_EQ(qm(1, 1), num(cfg, Rational(1, 2)));
  EXPECT_EQ(qm(0, 0), num(cfg, Rational(1)));
}

TEST(SymplecticReduce, PicksLargestBodyPartner) {
  auto cfg = flt();
  DenseMatrix<double> b(4, 4);
  b(0, 1) = 1e-3, b(0, 2) = 5, b(0, 3) = 0.5, b(1, 2) = 2, b(1, 3) = 1, b(2, 3) = 3;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < r; ++c) b(r, c) = -b(c, r);
  auto qm = symplectic_reduce(SuperMatrix<double>::from_real(cfg, BlockShape{4, 0}, MatrixParity::even, b));
  // partner of e0 is e2, scaled by 1/5
  EXPECT_NEAR(qm(2, 1).body(), 0.2, 1e-15);
  auto qb = body_matrix(qm);
  auto res = qb.transpose() * b * qb - standard_symplectic<double>(4);
  EXPECT_LT(max_abs(res), 1e-14);
}

TEST(CanonicalForm, RealDiagonalIsSortedOnly) {
  auto cfg = rat();
  auto g = diag_eta_j<Rational>(cfg, {Rational(-2), Rational(3), Rational(1)}, 2);
  auto res = canonical_form(validate_metric(g));
  EXPECT_EQ(res.Gamma, diag_eta_j<Rational>(cfg, {Rational(3), Rational(1), Rational(-2)}, 2));
  EXPECT_EQ(congruence(res.P, g), res.Gamma);
  // P is the sorting permutation on the even block, identity on the odd block.
  EXPECT_EQ(res.P(1, 0), num(cfg, Rational(1)));
  EXPECT_EQ(res.P(2, 1), num(cfg, Rational(1)));
  EXPECT_EQ(res.P(0, 2), num(cfg, Rational(1)));
  EXPECT_EQ(res.P(3, 3), num(cfg, Rational(1)));
}

TEST(CanonicalForm, IdempotentOnOrthosymplectic) {
  for (auto signs : std::vector<std::vector<Rational>>{{1, 1, -1}, {1}, {-1, -1}, {}}) {
    auto cfg = rat();
    auto g = diag_eta_j<Rational>(cfg, signs, 4);
    auto res = canonical_form(validate_metric(g));
    EXPECT_EQ(res.Gamma, g);
    EXPECT_EQ(res.P, SuperMatrix<Rational>::identity(cfg, g.shape()));
  }
}

TEST(CanonicalForm, RandomRationalMetricsExact) {
  auto cfg = rat(5);
  Sampler rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform_int(0, 4);
    const int n = 2 * rng.uniform_int(0, 2);
    auto g = rng.metric<Rational>(cfg, m, n);
    auto res = canonical_form(validate_metric(g));
    EXPECT_EQ(congruence(res.P, g), res.Gamma);
    for (const auto& d : res.d) EXPECT_NE(d.body(), 0);
  }
}

TEST(CanonicalForm, RandomFloatMetricsWithinTolerance) {
  auto cfg = flt(6);
  Sampler rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform_int(1, 5);
    const int n = 2 * rng.uniform_int(0, 2);
    auto g = rng.metric<double>(cfg, m, n);
    auto res = canonical_form(validate_metric(g));
    EXPECT_LE(max_entry_norm(congruence(res.P, g) - res.Gamma), 1e-9);
  }
}

// Body-level oracle: eigenvalues of beta(A) from Eigen, sorted descending,
// and beta(P)^T beta(G) beta(P) = beta(Gamma) in plain double arithmetic.
TEST(CanonicalForm, BodyMatchesClassicalReduction) {
  auto cfg = flt(4);
  Sampler rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = rng.uniform_int(1, 4);
    const int n = 2 * rng.uniform_int(0, 2);
    auto g = rng.metric<double>(cfg, m, n);
    auto res = canonical_form(validate_metric(g));
    Eigen::MatrixXd a(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) a(r, c) = g(r, c).body();
    Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
    std::vector<double> sorted(w.data(), w.data() + m);
    std::sort(sorted.rbegin(), sorted.rend());
    for (int i = 0; i < m; ++i) EXPECT_NEAR(res.d[i].body(), sorted[i], 1e-9 * (1 + std::fabs(sorted[i])));
    const int size = m + n;
    Eigen::MatrixXd p(size, size), gb(size, size), gam(size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) {
        p(r, c) = res.P(r, c).body();
        gb(r, c) = g(r, c).body();
        gam(r, c) = res.Gamma(r, c).body();
      }
    EXPECT_LT((p.transpose() * gb * p - gam).cwiseAbs().maxCoeff(), 1e-9);
  }
}

// The diagonal-body path is shared by both modes; results must agree.
TEST(CanonicalForm, FloatAgreesWithRational) {
  Sampler rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    auto gr = rng.square_body_metric<Rational>(rat(4), 3, 2);
    SuperMatrix<double> gf(flt(4), gr.shape(), MatrixParity::even);
    for (int r = 0; r < gr.size(); ++r)
      for (int c = 0; c < gr.size(); ++c) {
        std::vector<Supernumber<double>::Term> terms;
        for (const auto& [idx, coeff] : gr(r, c).terms()) terms.push_back({idx, coeff.get_d()});
        gf.set(r, c, Supernumber<double>::from_terms(flt(4), terms));
      }
    auto rr = canonical_form(validate_metric(gr));
    auto rf = canonical_form(validate_metric(gf));
    for (int r = 0; r < gr.size(); ++r)
      for (int c = 0; c < gr.size(); ++c)
        for (const auto& [idx, coeff] : rr.P(r, c).terms())
          EXPECT_NEAR(rf.P(r, c).coefficient(idx), coeff.get_d(), 1e-12);
  }
}

TEST(BodyReduce, UnitIsUnchanged) {
  auto cfg = rat();
  auto res = body_reduce(canonical_form(validate_metric(diag_eta_j<Rational>(cfg, {Rational(1)}, 0))), true);
  EXPECT_EQ(res.lambda[0], num(cfg, Rational(1)));
  EXPECT_EQ(res.d[0], num(cfg, Rational(1)));
  EXPECT_TRUE(res.body_reducible());
}

TEST(BodyReduce, NegativeSoulEntryExact) {
  auto cfg = rat();
  auto d = num(cfg, Rational(-4)) + z12(cfg);
  auto g = gram<Rational>(cfg, 1, 0, {d});
  auto res = body_reduce(canonical_form(validate_metric(g)), true);
  EXPECT_EQ(res.lambda[0], num(cfg, q(1, 2)) + z12(cfg, q(1, 16)));
  EXPECT_EQ(res.lambda[0] * res.lambda[0] * d, num(cfg, Rational(-1)));
  EXPECT_EQ(res.d[0], num(cfg, Rational(-1)));
  EXPECT_EQ(res.reducibility[0].sign, -1);
  EXPECT_EQ(res.reducibility[0].ratio, q(1, 4));
  EXPECT_EQ(congruence(res.P, g), res.Gamma);
}

TEST(BodyReduce, PositiveEntriesComeFirst) {
  auto cfg = rat();
  auto g = diag_eta_j<Rational>(cfg, {Rational(4), Rational(-9), Rational(1, 4)}, 2);
  g.set(0, 0, num(cfg, Rational(-1)) + z12(cfg));
  auto res = body_reduce(canonical_form(validate_metric(g)), false);
  std::vector<int> signs;
  for (const auto& r : res.reducibility) signs.push_back(r.sign);
  EXPECT_TRUE(std::is_sorted(signs.rbegin(), signs.rend()));
  EXPECT_EQ(congruence(res.P, g), res.Gamma);
  EXPECT_EQ(res.Gamma, diag_eta_j<Rational>(cfg, {Rational(1), Rational(-1), Rational(-1)}, 2));
}

TEST(BodyReduce, StrictRefusesLargeSoul) {
  auto cfg = rat();
  auto d = num(cfg, Rational(1)) + z12(cfg, Rational(3, 2));
  auto result = canonical_form(validate_metric(gram<Rational>(cfg, 1, 0, {d})));
  try {
    body_reduce(result, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConvergenceViolation);
    EXPECT_EQ(e.where(), "d[0]");
  }
  auto lax = body_reduce(result, false);
  EXPECT_FALSE(lax.body_reducible());
  EXPECT_EQ(lax.lambda[0] * lax.lambda[0] * d, num(cfg, Rational(1)));
}

TEST(BodyReduce, IrrationalScaleInExactMode) {
  auto cfg = rat();
  auto result = canonical_form(validate_metric(gram<Rational>(cfg, 1, 0, {num(cfg, Rational(2))})));
  try {
    body_reduce(result, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IrrationalScale);
  }
  auto f = canonical_form(validate_metric(gram<double>(flt(), 1, 0, {num(flt(), 2.0)})));
  auto reduced = body_reduce(f, false);
  EXPECT_NEAR(reduced.lambda[0].body(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(BodyReduce, SymplecticBlockUntouched) {
  auto cfg = rat(4);
  Sampler rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = rng.square_body_metric<Rational>(cfg, 3, 4);
    auto canon = canonical_form(validate_metric(g));
    auto reduced = body_reduce(canon, false);
    for (int r = 3; r < 7; ++r)
      for (int c = 3; c < 7; ++c) EXPECT_EQ(reduced.Gamma(r, c), canon.Gamma(r, c));
    EXPECT_EQ(congruence(reduced.P, g), reduced.Gamma);
  }
}

TEST(StandardSymplectic, SquaresToMinusIdentity) {
  for (int n : {0, 2, 4, 6}) {
    auto j = standard_symplectic<Rational>(n);
    EXPECT_EQ(j * j, Rational(-1) * DenseMatrix<Rational>::identity(n));
    EXPECT_EQ(j.transpose(), Rational(-1) * j);
  }
}
