#include <gtest/gtest.h>

#include "superspin/error.hpp"
#include "superspin/json_io.hpp"
#include "superspin/random.hpp"
#include "support.hpp"

using namespace superspin;
using namespace testing_support;

namespace {

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::InvalidConfig, "nothing thrown");
}

}  // namespace

TEST(JsonConfig, RoundTrip) {
  for (const auto& cfg : {rat(3), flt(6), AlgebraConfig::float64(24, 1e-12)}) {
    EXPECT_EQ(config_from_json(config_to_json(cfg)), cfg);
  }
  EXPECT_EQ(config_from_json(json::object()), AlgebraConfig{});
  EXPECT_EQ(error_of([] { config_from_json(json{{"mode", "complex"}}); }).kind(), ErrorKind::InvalidConfig);
  EXPECT_EQ(error_of([] { config_from_json(json{{"generators", 30}}); }).kind(), ErrorKind::InvalidConfig);
}

TEST(JsonSupernumber, TextualForm) {
  auto cfg = rat();
  const auto z = num<Rational>(cfg, 3) - zeta<Rational>(cfg, {1, 2}, q(4, 3));
  const json expected = json::parse(R"([{"index": [], "coeff": "3"}, {"index": [1, 2], "coeff": "-4/3"}])");
  EXPECT_EQ(to_json(z), expected);
  EXPECT_EQ(supernumber_from_json<Rational>(expected, cfg), z);
}

TEST(JsonSupernumber, RationalRoundTripIsLossless) {
  auto cfg = rat();
  Sampler rng(71);
  for (int i = 0; i < 200; ++i) {
    auto z = rng.supernumber<Rational>(cfg, Draw::any, 6);
    z *= q(1, 3 + i);
    EXPECT_EQ(supernumber_from_json<Rational>(json::parse(to_json(z).dump()), cfg), z);
  }
}

TEST(JsonSupernumber, FloatRoundTripIsLossless) {
  auto cfg = flt();
  Sampler rng(72);
  for (int i = 0; i < 200; ++i) {
    auto z = rng.supernumber<double>(cfg, Draw::any, 6);
    z *= 1.0 / (3.0 + i);
    EXPECT_EQ(supernumber_from_json<double>(json::parse(to_json(z).dump()), cfg), z);
  }
}

TEST(JsonSupernumber, ExactDecimalsAndBareNumbers) {
  auto cfg = rat();
  EXPECT_EQ(supernumber_from_json<Rational>(json::parse("0.1"), cfg), num<Rational>(cfg, q(1, 10)));
  EXPECT_EQ(supernumber_from_json<Rational>(json("-1.25e-3"), cfg), num<Rational>(cfg, q(-1, 800)));
  EXPECT_EQ(supernumber_from_json<Rational>(json("6/4"), cfg), num<Rational>(cfg, q(3, 2)));
  EXPECT_EQ(supernumber_from_json<Rational>(json(7), cfg), num<Rational>(cfg, 7));
  EXPECT_EQ(supernumber_from_json<double>(json("1/4"), flt()), num<double>(flt(), 0.25));
}

TEST(JsonSupernumber, ErrorsCarryPaths) {
  auto cfg = rat(4);
  auto e = error_of([&] { supernumber_from_json<Rational>(json::parse(R"([{"index": [2, 1], "coeff": 1}])"), cfg, "/z"); });
  EXPECT_EQ(e.where(), "/z/0/index");
  e = error_of([&] { supernumber_from_json<Rational>(json::parse(R"([{"index": [5], "coeff": 1}])"), cfg); });
  EXPECT_EQ(e.where(), "/0/index");
  e = error_of([&] { supernumber_from_json<Rational>(json::parse(R"([{"index": [1]}])"), cfg); });
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  EXPECT_EQ(e.where(), "/0");
  e = error_of([&] { supernumber_from_json<Rational>(json::parse(R"([{"index": [1], "coeff": "1/0"}])"), cfg); });
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  EXPECT_EQ(e.where(), "/0/coeff");
  e = error_of([&] { supernumber_from_json<Rational>(json::parse(R"([{"index": [1], "coeff": "x"}])"), cfg); });
  EXPECT_EQ(e.where(), "/0/coeff");
  e = error_of([&] {
    supernumber_from_json<Rational>(json::parse(R"([{"index": [1], "coeff": 1}, {"index": [1], "coeff": 2}])"), cfg);
  });
  EXPECT_EQ(e.where(), "/1/index");
}

TEST(JsonMatrix, RoundTrip) {
  auto cfg = rat();
  Sampler rng(73);
  for (int i = 0; i < 20; ++i) {
    const auto a = rng.even_matrix<Rational>(cfg, BlockShape{2, 2});
    const auto back = matrix_from_json<Rational>(json::parse(to_json(a).dump()), cfg);
    EXPECT_EQ(back, a);
    EXPECT_EQ(back.parity(), MatrixParity::even);
  }
}

TEST(JsonMatrix, Errors) {
  auto cfg = rat();
  const json short_entries = {{"shape", {{"m", 1}, {"n", 1}}}, {"parity", "even"}, {"entries", {1, 0, 0}}};
  auto e = error_of([&] { matrix_from_json<Rational>(short_entries, cfg, "/inputs/metric"); });
  EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  EXPECT_EQ(e.where(), "/inputs/metric/entries");
  const json odd_in_a = {{"shape", {{"m", 1}, {"n", 0}}},
                         {"parity", "even"},
                         {"entries", {json::parse(R"([{"index": [1], "coeff": 1}])")}}};
  EXPECT_EQ(error_of([&] { matrix_from_json<Rational>(odd_in_a, cfg); }).kind(), ErrorKind::ParityMismatch);
  const json bad_parity = {{"shape", {{"m", 1}, {"n", 0}}}, {"parity", "weird"}, {"entries", {1}}};
  EXPECT_EQ(error_of([&] { matrix_from_json<Rational>(bad_parity, cfg); }).where(), "/parity");
}

TEST(JsonRealMatrix, RoundTripAndShape) {
  DenseMatrix<Rational> a(2, 2);
  a(0, 0) = q(1, 3), a(0, 1) = -2, a(1, 0) = 0, a(1, 1) = q(5, 7);
  EXPECT_EQ(real_matrix_from_json<Rational>(to_json(a)), a);
  EXPECT_EQ(error_of([] { real_matrix_from_json<Rational>(json::parse("[[1, 2]]")); }).kind(), ErrorKind::ShapeMismatch);
}

TEST(JsonGamma, BothForms) {
  auto cfg = rat();
  const auto sig = gamma_from_json<Rational>(json{{"p", 1}, {"q", 1}, {"n", 2}}, cfg);
  EXPECT_TRUE(sig.is_body_reduced());
  EXPECT_EQ(sig.m(), 2);
  const auto back = gamma_from_json<Rational>(to_json(sig), cfg);
  EXPECT_EQ(back.eta, sig.eta);
  EXPECT_EQ(back.n, 2);
  const auto general = gamma_from_json<Rational>(json::parse(R"({"eta": [[{"index": [], "coeff": 2}, {"index": [1, 2], "coeff": 1}]], "n": 0})"), cfg);
  EXPECT_FALSE(general.is_body_reduced());
  EXPECT_EQ(error_of([&] { gamma_from_json<Rational>(json{{"p", 1}, {"q", 0}, {"n", 3}}, cfg); }).kind(),
            ErrorKind::OddDimensionOdd);
}

TEST(JsonGroupElement, RoundTrip) {
  auto cfg = rat();
  Sampler rng(74);
  const auto gamma = GammaForm<Rational>::signature(cfg, 1, 1, 2);
  const auto basis = lie_basis(gamma);
  const GroupElement<Rational> h{cayley(rng.body_algebra_element(basis, q(1, 3)), gamma),
                                 rng.lie_element(basis, cfg, true)};
  const auto back = group_element_from_json<Rational>(json::parse(to_json(h).dump()), cfg);
  EXPECT_EQ(back.g, h.g);
  EXPECT_EQ(back.n, h.n);
}

TEST(JsonCanonicalization, ReportShape) {
  auto cfg = rat();
  Sampler rng(75);
  const auto g = rng.metric<Rational>(cfg, 2, 2);
  const auto result = canonical_form(validate_metric(g));
  const json j = to_json(result);
  for (const char* key : {"P", "Gamma", "d", "reducibility", "body_reducible"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["d"].size(), 2u);
  EXPECT_EQ(matrix_from_json<Rational>(j["P"], cfg), result.P);
  EXPECT_EQ(matrix_from_json<Rational>(j["Gamma"], cfg), result.Gamma);
  for (const auto& rec : j["reducibility"]) {
    EXPECT_TRUE(rec.contains("ratio"));
    EXPECT_TRUE(rec.contains("condition_met"));
    EXPECT_TRUE(rec.contains("sign"));
  }
}
