#include <gtest/gtest.h>

#include "superspin/error.hpp"
#include "superspin/isometry.hpp"
#include "superspin/random.hpp"
#include "superspin/super_group.hpp"
#include "superspin/verify.hpp"
#include "support.hpp"

using namespace superspin;
using namespace testing_support;

namespace {

using Z = Supernumber<Rational>;
using M = SuperMatrix<Rational>;
using G = GammaForm<Rational>;

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidConfig;
}

M real_block(const AlgebraConfig& cfg, const DenseMatrix<Rational>& o, int n) {
  const int m = o.rows();
  DenseMatrix<Rational> full = DenseMatrix<Rational>::identity(m + n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) full(r, c) = o(r, c);
  return M::from_real(cfg, BlockShape{m, n}, MatrixParity::even, full);
}

DenseMatrix<Rational> two_by_two(Rational a, Rational b, Rational c, Rational d) {
  DenseMatrix<Rational> o(2, 2);
  o(0, 0) = a, o(0, 1) = b, o(1, 0) = c, o(1, 1) = d;
  return o;
}

}  // namespace

TEST(IsIsometry, Identity) {
  auto cfg = rat();
  for (auto [p, qn, n] : {std::tuple{1, 0, 2}, {1, 1, 2}, {0, 0, 4}, {3, 0, 0}}) {
    const auto gamma = G::signature(cfg, p, qn, n);
    EXPECT_TRUE(is_isometry(M::identity(cfg, gamma.shape()), gamma));
  }
}

TEST(IsIsometry, RealBodyBlocks) {
  auto cfg = rat();
  // Rotation for eta = (+1, +1); hyperbolic boost for eta = (+1, -1).
  const auto rotation = two_by_two(q(3, 5), q(-4, 5), q(4, 5), q(3, 5));
  const auto boost = two_by_two(q(5, 4), q(3, 4), q(3, 4), q(5, 4));
  EXPECT_TRUE(is_isometry(real_block(cfg, rotation, 2), G::signature(cfg, 2, 0, 2)));
  EXPECT_TRUE(is_isometry(real_block(cfg, boost, 2), G::signature(cfg, 1, 1, 2)));
  EXPECT_FALSE(is_isometry(real_block(cfg, boost, 2), G::signature(cfg, 2, 0, 2)));
  EXPECT_FALSE(is_isometry(real_block(cfg, rotation, 2), G::signature(cfg, 1, 1, 2)));
}

TEST(IsIsometry, SoulExponentials) {
  auto cfg = rat();
  Sampler rng(21);
  for (int i = 0; i < 30; ++i) {
    const auto gamma = i % 2 ? G::signature(cfg, 1, 1, 2)
                             : G::from_eta(cfg, {rng.invertible_even<Rational>(cfg, 2)}, 2);
    const auto s = rng.lie_element_general(gamma, true);
    EXPECT_TRUE(lie_membership(s, gamma).member);
    const auto n = exp_zero_body(s);
    EXPECT_TRUE(is_isometry(n, gamma));
    EXPECT_EQ(isometry_residual(n, gamma), 0);
  }
}

TEST(IsIsometry, ClosedUnderProductsAndInverses) {
  auto cfg = rat();
  Sampler rng(22);
  const auto gamma = G::signature(cfg, 1, 1, 2);
  const auto basis = lie_basis(gamma);
  const auto boost = real_block(cfg, two_by_two(q(5, 4), q(3, 4), q(3, 4), q(5, 4)), 2);
  for (int i = 0; i < 10; ++i) {
    const auto n1 = exp_zero_body(rng.lie_element(basis, cfg, true)) * boost;
    const auto n2 = exp_zero_body(rng.lie_element(basis, cfg, true));
    ASSERT_TRUE(is_isometry(n1, gamma));
    EXPECT_TRUE(is_isometry(n1 * n2, gamma));
    EXPECT_TRUE(is_isometry(invert_matrix(n1), gamma));
  }
}

TEST(IsIsometry, FloatExpOfFullLieElement) {
  auto cfg = flt();
  Sampler rng(23);
  const auto gamma = GammaForm<double>::signature(cfg, 2, 1, 2);
  const auto basis = lie_basis(gamma);
  for (double t : {1e-1, 1e-2}) {
    const auto x0 = rng.body_algebra_element(basis, 1.0);
    const auto s = rng.lie_element(basis, cfg, true);
    const auto n = exp_zero_body(s * t) *
                   SuperMatrix<double>::from_real(cfg, gamma.shape(), MatrixParity::even, body_exp(t * x0, gamma));
    EXPECT_TRUE(is_isometry(n, gamma));
    EXPECT_LE(isometry_residual(n, gamma), 1e-12);
  }
}

TEST(IsIsometry, Errors) {
  auto cfg = rat();
  const auto gamma = G::signature(cfg, 1, 0, 2);
  EXPECT_EQ(kind_of([&] { is_isometry(M::identity(cfg, {2, 2}), gamma); }), ErrorKind::ShapeMismatch);
  M odd(cfg, BlockShape{1, 2}, MatrixParity::odd);
  odd.set(0, 0, zeta<Rational>(cfg, {1}));
  EXPECT_EQ(kind_of([&] { is_isometry(odd, gamma); }), ErrorKind::ParityMismatch);
}

TEST(GammaFormTest, Validation) {
  auto cfg = rat();
  EXPECT_EQ(kind_of([&] { G::signature(cfg, 1, 0, 3); }), ErrorKind::OddDimensionOdd);
  EXPECT_EQ(kind_of([&] { G::from_eta(cfg, {zeta<Rational>(cfg, {1})}, 2); }), ErrorKind::ParityMismatch);
  EXPECT_EQ(kind_of([&] { G::from_eta(cfg, {zeta<Rational>(cfg, {1, 2})}, 2); }), ErrorKind::DegenerateBody);
  EXPECT_TRUE(G::signature(cfg, 1, 1, 2).is_body_reduced());
  EXPECT_FALSE(G::from_eta(cfg, {num<Rational>(cfg, 2)}, 0).is_body_reduced());
  const auto g = G::signature(cfg, 1, 1, 2).matrix();
  EXPECT_EQ(g(0, 0), num<Rational>(cfg, 1));
  EXPECT_EQ(g(1, 1), num<Rational>(cfg, -1));
  EXPECT_EQ(g(2, 3), num<Rational>(cfg, 1));
  EXPECT_EQ(g(3, 2), num<Rational>(cfg, -1));
}

TEST(LieMembership, Examples) {
  auto cfg = rat();
  const auto gamma = G::signature(cfg, 1, 0, 2);
  EXPECT_TRUE(lie_membership(M(cfg, gamma.shape(), MatrixParity::even), gamma).member);

  // d odd column, c = eta^-1 d^T J.
  const auto d0 = zeta<Rational>(cfg, {1});
  const auto d1 = zeta<Rational>(cfg, {2}, 3);
  M l(cfg, gamma.shape(), MatrixParity::even);
  l.set(1, 0, d0);
  l.set(2, 0, d1);
  // (d^T J)_0 = d_1 * J_10 = -d1, (d^T J)_1 = d_0 * J_01 = d0.
  l.set(0, 1, -d1);
  l.set(0, 2, d0);
  const auto report = lie_membership(l, gamma);
  EXPECT_TRUE(report.member);
  EXPECT_TRUE(report.consistent);

  M a(cfg, gamma.shape(), MatrixParity::even);
  a.set(0, 0, num<Rational>(cfg, 1));
  const auto bad = lie_membership(a, gamma);
  EXPECT_FALSE(bad.member);
  EXPECT_TRUE(bad.consistent);
  EXPECT_EQ(bad.violated(), std::vector<int>{1});
}

TEST(LieMembership, ReportsEachCondition) {
  auto cfg = rat();
  const auto gamma = G::signature(cfg, 1, 1, 2);
  M b(cfg, gamma.shape(), MatrixParity::even);
  b.set(2, 2, num<Rational>(cfg, 1));  // b = diag(1, 0) is not in sp(2)
  EXPECT_EQ(lie_membership(b, gamma).violated(), std::vector<int>{2});
  M c(cfg, gamma.shape(), MatrixParity::even);
  c.set(0, 2, zeta<Rational>(cfg, {1}));
  EXPECT_EQ(lie_membership(c, gamma).violated(), std::vector<int>{3});
}

// Triple of explicit conditions versus the single super-transpose test, on
// members, perturbed members and unrelated matrices.
TEST(LieMembership, TripleAgreesWithSingleTest) {
  for (auto cfg : {rat(4), flt(4)}) {
    SuiteResult r = cfg.mode == CoefficientMode::rational
                        ? Checks<Rational>::membership_agreement(cfg, 31, 300, {3, 2})
                        : Checks<double>::membership_agreement(cfg, 31, 300, {3, 2});
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
    EXPECT_GT(r.detail["accepted"].get<long>(), 0);
    EXPECT_GT(r.detail["rejected"].get<long>(), 0);
  }
}

TEST(LieMembership, ShapeMismatch) {
  auto cfg = rat();
  EXPECT_EQ(kind_of([&] { lie_membership(M::identity(cfg, {2, 2}), G::signature(cfg, 1, 0, 2)); }),
            ErrorKind::ShapeMismatch);
}

TEST(LieBasisTest, DimensionsExample) {
  auto cfg = rat(2);
  const auto basis = lie_basis(G::signature(cfg, 2, 0, 2));
  EXPECT_EQ(basis.g0.size(), 4u);
  EXPECT_EQ(basis.g1.size(), 4u);
  EXPECT_EQ(basis.hJ.size(), 16u);
  for (const auto& entry : basis.hJ) EXPECT_EQ(entry.index.is_even(), !entry.odd);
}

TEST(LieBasisTest, NoOddPartWithoutOddDimensions) {
  auto cfg = rat();
  const auto basis = lie_basis(G::signature(cfg, 2, 1, 0));
  EXPECT_TRUE(basis.g1.empty());
  EXPECT_EQ(basis.g0.size(), 3u);
}

TEST(LieBasisTest, DimensionsMatchBruteForce) {
  const auto r = Checks<Rational>::lie_dimensions(rat(3), 4, 4);
  EXPECT_EQ(r.cases, 15);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
}

TEST(LieBasisTest, RequiresBodyReducedGamma) {
  auto cfg = rat();
  EXPECT_EQ(kind_of([&] { lie_basis(G::from_eta(cfg, {num<Rational>(cfg, 2)}, 2)); }), ErrorKind::NotBodyReduced);
}

TEST(LieBasisTest, BracketClosure) {
  auto cfg = rat();
  for (const auto& gamma : {G::signature(cfg, 2, 1, 2), G::signature(cfg, 1, 0, 4)}) {
    const auto basis = lie_basis(gamma);
    const auto z1 = zeta<Rational>(cfg, {1});
    auto member = [&](const M& x, bool odd) {
      // Odd real matrices enter the even part with an odd coefficient.
      return lie_membership(odd ? scale_left(z1, x) : x, gamma).member;
    };
    for (const auto& x : basis.g0) {
      for (const auto& y : basis.g0) EXPECT_TRUE(member(commutator(x, y), false));
      for (const auto& y : basis.g1) EXPECT_TRUE(member(commutator(x, y), true));
    }
    for (const auto& x : basis.g1)
      for (const auto& y : basis.g1) EXPECT_TRUE(member(anticommutator(x, y), false));
  }
}

TEST(BodyProject, Examples) {
  auto cfg = rat();
  Sampler rng(41);
  const auto gamma = G::signature(cfg, 2, 1, 2);
  const auto basis = lie_basis(gamma);
  const auto soul = rng.lie_element(basis, cfg, true);
  EXPECT_EQ(body_project(soul), DenseMatrix<Rational>(5, 5));
  const auto x0 = rng.body_algebra_element(basis, Rational(1));
  EXPECT_TRUE(in_body_algebra(x0, gamma));
  const auto l = M::from_real(cfg, gamma.shape(), MatrixParity::even, x0) + soul;
  EXPECT_EQ(body_project(l), x0);
}

TEST(BodyProject, KernelIsAnIdeal) {
  auto cfg = rat();
  Sampler rng(42);
  const auto basis = lie_basis(G::signature(cfg, 1, 1, 2));
  for (int i = 0; i < 20; ++i) {
    const auto x = rng.lie_element(basis, cfg, false);
    const auto y = rng.lie_element(basis, cfg, false);
    const auto s = rng.lie_element(basis, cfg, true);
    const auto bx = body_project(x);
    const auto by = body_project(y);
    EXPECT_EQ(body_project(commutator(x, y)), bx * by - by * bx);
    EXPECT_EQ(body_project(commutator(x, s)), DenseMatrix<Rational>(4, 4));
  }
}

TEST(BodyGroup, Membership) {
  auto cfg = rat();
  const auto gamma = G::signature(cfg, 1, 1, 2);
  const auto basis = lie_basis(gamma);
  Sampler rng(43);
  const auto x0 = rng.body_algebra_element(basis, q(1, 2));
  EXPECT_TRUE(in_body_group(cayley(x0, gamma), gamma));
  EXPECT_FALSE(in_body_group(Rational(2) * DenseMatrix<Rational>::identity(4), gamma));
  EXPECT_FALSE(in_body_algebra(DenseMatrix<Rational>::identity(4), gamma));
}

TEST(UNorm, Examples) {
  auto cfg = rat();
  EXPECT_EQ(u_norm<Rational>({Z(cfg), Z(cfg)}, {1, 1}), 0);
  EXPECT_EQ(u_norm<Rational>({zeta<Rational>(cfg, {1}), Z(cfg)}, {1, 5}), 1);
  EXPECT_EQ(kind_of([&] { u_norm<Rational>({Z(cfg)}, {1, 1}); }), ErrorKind::LengthMismatch);
}

// With basis norms rescaled by K = max_ij sum_l |c_ij^l| ||X_l|| / (||X_i|| ||X_j||),
// the u-norm is a Banach Lie algebra norm.
TEST(UNorm, BracketBound) {
  auto cfg = rat(4);
  const auto lb = lie_basis(G::signature(cfg, 1, 1, 2));
  const auto basis = lb.homogeneous();
  const int k = static_cast<int>(basis.size());
  const int g0 = static_cast<int>(lb.g0.size());
  std::vector<Rational> base;
  for (const auto& x : basis) base.push_back(total_norm(x));
  Rational scale = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const auto bracket = (i >= g0 && j >= g0) ? anticommutator(basis[i], basis[j]) : commutator(basis[i], basis[j]);
      const bool odd = (i >= g0) != (j >= g0);
      const auto coords =
          coordinates(odd ? scale_left(zeta<Rational>(cfg, {1}), bracket) : bracket, basis);
      Rational sum = 0;
      for (int l = 0; l < k; ++l) sum += ell1_norm(coords[l]) * base[l];
      scale = std::max(scale, Rational(sum / (base[i] * base[j])));
    }
  }
  std::vector<Rational> norms;
  for (const auto& b : base) norms.push_back(b * std::max(scale, Rational(1)));
  Sampler rng(44);
  for (int t = 0; t < 50; ++t) {
    const auto y = rng.lie_element(lb, cfg, t % 2 == 0);
    const auto z = rng.lie_element(lb, cfg, t % 3 == 0);
    const Rational lhs = u_norm(coordinates(commutator(y, z), basis), norms);
    const Rational rhs = u_norm(coordinates(y, basis), norms) * u_norm(coordinates(z, basis), norms);
    EXPECT_LE(lhs, rhs);
  }
}
