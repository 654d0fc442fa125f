#include <benchmark/benchmark.h>

#include "superspin/grassmann.hpp"
#include "superspin/isometry.hpp"
#include "superspin/metric.hpp"
#include "superspin/random.hpp"
#include "superspin/super_group.hpp"
#include "superspin/supermatrix.hpp"

using namespace superspin;

namespace {

template <class S>
AlgebraConfig config(int l) {
  if constexpr (std::is_same_v<S, double>) {
    return AlgebraConfig::float64(l);
  } else {
    return AlgebraConfig::rational(l);
  }
}

template <class S>
void BM_Multiply(benchmark::State& state) {
  const AlgebraConfig cfg = config<S>(static_cast<int>(state.range(0)));
  Sampler rng(1);
  const auto a = rng.supernumber<S>(cfg, Draw::any, 16);
  const auto b = rng.supernumber<S>(cfg, Draw::any, 16);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK_TEMPLATE(BM_Multiply, double)->Arg(6)->Arg(12)->Arg(24);
BENCHMARK_TEMPLATE(BM_Multiply, Rational)->Arg(6)->Arg(12)->Arg(24);

template <class S>
void BM_Invert(benchmark::State& state) {
  const AlgebraConfig cfg = config<S>(static_cast<int>(state.range(0)));
  Sampler rng(2);
  const auto z = rng.invertible_even<S>(cfg, 8);
  for (auto _ : state) benchmark::DoNotOptimize(invert(z));
}
BENCHMARK_TEMPLATE(BM_Invert, double)->Arg(6)->Arg(12);
BENCHMARK_TEMPLATE(BM_Invert, Rational)->Arg(6)->Arg(12);

template <class S>
void BM_CanonicalForm(benchmark::State& state) {
  const AlgebraConfig cfg = config<S>(6);
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  Sampler rng(3);
  const SuperMetric<S> metric = validate_metric(rng.metric<S>(cfg, m, n));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(metric));
}
BENCHMARK_TEMPLATE(BM_CanonicalForm, double)->Args({2, 2})->Args({4, 4})->Args({6, 6});
BENCHMARK_TEMPLATE(BM_CanonicalForm, Rational)->Args({2, 2})->Args({4, 4});

template <class S>
void BM_LieMembership(benchmark::State& state) {
  const AlgebraConfig cfg = config<S>(6);
  Sampler rng(4);
  const auto gamma = GammaForm<S>::signature(cfg, 2, 1, 2);
  const auto l = rng.lie_element_general(gamma, false);
  for (auto _ : state) benchmark::DoNotOptimize(lie_membership(l, gamma));
}
BENCHMARK_TEMPLATE(BM_LieMembership, double);
BENCHMARK_TEMPLATE(BM_LieMembership, Rational);

template <class S>
void BM_Diamond(benchmark::State& state) {
  const AlgebraConfig cfg = config<S>(6);
  Sampler rng(5);
  const auto gamma = GammaForm<S>::signature(cfg, 2, 0, 2);
  const auto basis = lie_basis(gamma);
  const auto x = rng.lie_element(basis, cfg, true);
  const auto y = rng.lie_element(basis, cfg, true);
  for (auto _ : state) benchmark::DoNotOptimize(diamond(x, y));
}
BENCHMARK_TEMPLATE(BM_Diamond, double);
BENCHMARK_TEMPLATE(BM_Diamond, Rational);

void BM_BchSeries(benchmark::State& state) {
  const AlgebraConfig cfg = config<double>(6);
  Sampler rng(6);
  const auto gamma = GammaForm<double>::signature(cfg, 2, 0, 2);
  const auto basis = lie_basis(gamma);
  const double t = 1.0 / 64;
  const auto x = t * rng.lie_element(basis, cfg, false, 2, 2);
  const auto y = t * rng.lie_element(basis, cfg, false, 2, 2);
  BCHOrderConfig order;
  order.max_order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bch_series(x, y, order));
}
BENCHMARK(BM_BchSeries)->Arg(2)->Arg(4)->Arg(6);

}  // namespace
BENCHMARK_MAIN();
