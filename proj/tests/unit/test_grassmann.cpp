#include <gtest/gtest.h>

#include "oracle/permutation_sign.hpp"
#include "superspin/error.hpp"
#include "superspin/grassmann.hpp"
#include "superspin/random.hpp"
#include "support.hpp"

using namespace superspin;
using namespace testing_support;

namespace {

std::vector<int> labels(std::uint32_t bits) { return MultiIndex(bits).generators(); }

}  // namespace

TEST(Multiply, GeneratorsAnticommute) {
  auto cfg = rat();
  const auto z1 = Supernumber<Rational>::generator(cfg, 1);
  const auto z2 = Supernumber<Rational>::generator(cfg, 2);
  EXPECT_EQ(z1 * z2, zeta<Rational>(cfg, {1, 2}));
  EXPECT_EQ(z2 * z1, zeta<Rational>(cfg, {1, 2}, -1));
  EXPECT_TRUE((z1 * z1).is_zero());
}

TEST(Multiply, MergeSignExample) {
  auto cfg = rat();
  EXPECT_EQ(zeta<Rational>(cfg, {2}) * zeta<Rational>(cfg, {1, 3}), zeta<Rational>(cfg, {1, 2, 3}, -1));
}

TEST(Multiply, AllMonomialPairsMatchTranspositionCount) {
  const int generators = 6;
  auto cfg = rat(generators);
  for (std::uint32_t a = 0; a < (1u << generators); ++a) {
    for (std::uint32_t b = 0; b < (1u << generators); ++b) {
      std::vector<int> word = labels(a);
      const auto right = labels(b);
      word.insert(word.end(), right.begin(), right.end());
      const auto [sign, sorted] = oracle::sort_generators(word);
      const auto product = Supernumber<Rational>::monomial(cfg, MultiIndex(a), 1) *
                           Supernumber<Rational>::monomial(cfg, MultiIndex(b), 1);
      if (sign == 0) {
        ASSERT_TRUE(product.is_zero()) << a << " " << b;
      } else {
        ASSERT_EQ(product, Supernumber<Rational>::monomial(
                               cfg, MultiIndex::from_generators(sorted, generators), Rational(sign)))
            << a << " " << b;
      }
      ASSERT_EQ(merge_sign(MultiIndex(a), MultiIndex(b)), sign);
    }
  }
}

TEST(LinearCombine, Examples) {
  auto cfg = rat();
  const auto z = num<Rational>(cfg, 3) + zeta<Rational>(cfg, {1});
  const std::vector<Rational> one{1};
  const std::vector<Supernumber<Rational>> single{z};
  EXPECT_EQ(linear_combine<Rational>(one, single), z);
  const std::vector<Rational> cancel{1, -1};
  const std::vector<Supernumber<Rational>> pair{z, z};
  EXPECT_TRUE(linear_combine<Rational>(cancel, pair).is_zero());
  const std::vector<Rational> c{2, 3};
  const std::vector<Supernumber<Rational>> t{zeta<Rational>(cfg, {1}), zeta<Rational>(cfg, {1, 2})};
  EXPECT_EQ(linear_combine<Rational>(c, t), zeta<Rational>(cfg, {1}, 2) + zeta<Rational>(cfg, {1, 2}, 3));
}

TEST(LinearCombine, LengthAndConfigChecked) {
  auto cfg = rat();
  const std::vector<Rational> c{1, 2};
  const std::vector<Supernumber<Rational>> t{num<Rational>(cfg, 1)};
  try {
    linear_combine<Rational>(c, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
  const std::vector<Supernumber<Rational>> mixed{num<Rational>(cfg, 1), num<Rational>(rat(4), 1)};
  try {
    linear_combine<Rational>(c, mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigMismatch);
  }
}

TEST(Norm, Examples) {
  auto cfg = rat();
  EXPECT_EQ(ell1_norm(num<Rational>(cfg, 3) - zeta<Rational>(cfg, {1, 2}, 4)), 7);
  EXPECT_EQ(ell1_norm(Supernumber<Rational>(cfg)), 0);
  const auto x = num<Rational>(cfg, 1) + zeta<Rational>(cfg, {1});
  const auto y = num<Rational>(cfg, 1) - zeta<Rational>(cfg, {1});
  EXPECT_EQ(x * y, num<Rational>(cfg, 1));
  EXPECT_EQ(ell1_norm(x * y), 1);
  EXPECT_EQ(ell1_norm(x) * ell1_norm(y), 4);
}

TEST(BodySoul, Examples) {
  auto cfg = rat();
  const auto [b, s] = body_soul(num<Rational>(cfg, 3) + zeta<Rational>(cfg, {1, 2}));
  EXPECT_EQ(b, 3);
  EXPECT_EQ(s, zeta<Rational>(cfg, {1, 2}));
  const auto [b1, s1] = body_soul(zeta<Rational>(cfg, {1}));
  EXPECT_EQ(b1, 0);
  EXPECT_EQ(s1, zeta<Rational>(cfg, {1}));
}

TEST(BodySoul, BodyIsMultiplicativeAndSoulIsAnIdeal) {
  auto cfg = rat();
  Sampler rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto x = rng.supernumber<Rational>(cfg, Draw::any);
    const auto y = rng.supernumber<Rational>(cfg, Draw::any);
    EXPECT_EQ((x * y).body(), x.body() * y.body());
    EXPECT_EQ((x.soul() * y).body(), 0);
  }
}

TEST(Parity, Examples) {
  auto cfg = rat();
  EXPECT_EQ(parity(num<Rational>(cfg, 1) + zeta<Rational>(cfg, {1, 2})), Parity::even);
  EXPECT_EQ(parity(zeta<Rational>(cfg, {1})), Parity::odd);
  EXPECT_EQ(parity(num<Rational>(cfg, 1) + zeta<Rational>(cfg, {1})), Parity::mixed);
  EXPECT_EQ(parity(Supernumber<Rational>(cfg)), Parity::zero);
}

TEST(Nilpotency, SoulPowerVanishesPastL) {
  for (int generators : {2, 4, 6}) {
    auto cfg = rat(generators);
    Sampler rng(generators);
    for (int i = 0; i < 20; ++i) {
      const auto s = rng.supernumber<Rational>(cfg, Draw::soul_even, 6) +
                     rng.supernumber<Rational>(cfg, Draw::soul_odd, 6);
      EXPECT_TRUE(power(s, generators + 1).is_zero());
    }
  }
}

TEST(Invert, Examples) {
  auto cfg = rat();
  EXPECT_EQ(invert(num<Rational>(cfg, 2)), num<Rational>(cfg, q(1, 2)));
  EXPECT_EQ(invert(num<Rational>(cfg, 1) + zeta<Rational>(cfg, {1, 2})),
            num<Rational>(cfg, 1) - zeta<Rational>(cfg, {1, 2}));
  const auto z = num<Rational>(cfg, 2) + zeta<Rational>(cfg, {1, 2}) + zeta<Rational>(cfg, {3, 4});
  const auto w = num<Rational>(cfg, q(1, 2)) - zeta<Rational>(cfg, {1, 2}, q(1, 4)) -
                 zeta<Rational>(cfg, {3, 4}, q(1, 4)) + zeta<Rational>(cfg, {1, 2, 3, 4}, q(1, 4));
  EXPECT_EQ(invert(z), w);
  EXPECT_EQ(z * w, num<Rational>(cfg, 1));
}

TEST(Invert, ZeroBodyThrows) {
  auto cfg = rat();
  try {
    invert(zeta<Rational>(cfg, {1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BodyNotInvertible);
  }
}

TEST(Invert, FloatMultiplyBack) {
  auto cfg = flt();
  Sampler rng(5);
  for (int i = 0; i < 200; ++i) {
    auto z = rng.supernumber<double>(cfg, Draw::any);
    z = z.soul() + num<double>(cfg, i % 2 ? 0.1 : -3.25);
    const auto p = z * invert(z);
    EXPECT_NEAR(p.body(), 1.0, 1e-12);
    EXPECT_LE(ell1_norm(p.soul()), 1e-10);
  }
}

TEST(BinomialInverseSqrt, Examples) {
  auto cfg = rat();
  EXPECT_EQ(binomial_inverse_sqrt(Supernumber<Rational>(cfg), true), num<Rational>(cfg, 1));
  const auto mu = zeta<Rational>(cfg, {1, 2});
  const auto w = binomial_inverse_sqrt(mu, true);
  EXPECT_EQ(w, num<Rational>(cfg, 1) - zeta<Rational>(cfg, {1, 2}, q(1, 2)));
  EXPECT_EQ(w * w * (num<Rational>(cfg, 1) + mu), num<Rational>(cfg, 1));
}

TEST(BinomialInverseSqrt, StrictGate) {
  auto cfg = rat();
  const auto mu = num<Rational>(cfg, q(1, 2)) + zeta<Rational>(cfg, {1, 2}, q(7, 10));
  ASSERT_EQ(ell1_norm(mu), q(6, 5));
  try {
    binomial_inverse_sqrt(mu, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConvergenceViolation);
  }
}

TEST(BinomialInverseSqrt, OddInputRejected) {
  auto cfg = rat();
  try {
    binomial_inverse_sqrt(zeta<Rational>(cfg, {1}), false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParityMismatch);
  }
}

TEST(BinomialInverseSqrt, IrrationalScaleInRationalMode) {
  auto cfg = rat();
  try {
    binomial_inverse_sqrt(num<Rational>(cfg, 1) + zeta<Rational>(cfg, {1, 2}), false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IrrationalScale);
  }
  // 1 + 5/4 = 9/4 is a square.
  const auto mu = num<Rational>(cfg, q(5, 4)) + zeta<Rational>(cfg, {1, 2});
  const auto w = binomial_inverse_sqrt(mu, false);
  EXPECT_EQ(w * w * (num<Rational>(cfg, 1) + mu), num<Rational>(cfg, 1));
}

TEST(BinomialInverseSqrt, FloatMatchesClosedFormOnBody) {
  auto cfg = flt();
  const auto mu = num<double>(cfg, 0.3) + zeta<double>(cfg, {1, 2}, 0.2);
  const auto w = binomial_inverse_sqrt(mu, true);
  EXPECT_NEAR(w.body(), 1.0 / std::sqrt(1.3), 1e-14);
  // d/dx (1+x)^(-1/2) = -1/2 (1+x)^(-3/2)
  EXPECT_NEAR(w.coefficient(MultiIndex(3)), -0.5 * std::pow(1.3, -1.5) * 0.2, 1e-14);
}

TEST(Config, Validation) {
  EXPECT_THROW(AlgebraConfig::float64(25).validate(), Error);
  EXPECT_THROW(AlgebraConfig::float64(-1).validate(), Error);
  AlgebraConfig bad = AlgebraConfig::rational(4);
  bad.zero_tolerance = 1e-3;
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_NO_THROW(AlgebraConfig::rational(24).validate());
}

TEST(MultiIndex, FromGeneratorsRejectsBadLabels) {
  const std::vector<int> dup{1, 1};
  const std::vector<int> big{7};
  const std::vector<int> down{2, 1};
  EXPECT_THROW(MultiIndex::from_generators(dup, 6), Error);
  EXPECT_THROW(MultiIndex::from_generators(big, 6), Error);
  EXPECT_THROW(MultiIndex::from_generators(down, 6), Error);
}

TEST(Multiply, MismatchedConfigsRejected) {
  try {
    (void)(num<Rational>(rat(4), 1) * num<Rational>(rat(6), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigMismatch);
  }
}

TEST(Prune, CancellationDustIsDropped) {
  auto cfg = flt();
  const auto a = num<double>(cfg, 1.0) + zeta<double>(cfg, {1, 2}, 1.0 + 1e-15);
  const auto b = num<double>(cfg, 1.0) + zeta<double>(cfg, {1, 2}, 1.0);
  EXPECT_TRUE((a - b).is_zero());
  // A small coefficient that did not come from cancellation stays.
  const auto c = num<double>(cfg, 1.0) + zeta<double>(cfg, {1, 2}, 1e-20);
  EXPECT_EQ(c.terms().size(), 2u);
}
