#pragma once

// Self-checking property suites. Each check draws its inputs from a seeded
// Sampler and reports how many cases ran and how many failed; reports carry
// no timings, so a fixed seed gives identical output in rational mode.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superspin/grassmann.hpp"

namespace superspin {

struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  nlohmann::json detail = nlohmann::json::object();

  bool passed() const { return cases > 0 && failures == 0; }
  nlohmann::json to_json() const;
};

struct MatrixDims {
  int m = 2;
  int n = 2;
};

template <class S>
struct Checks {
  static SuiteResult ring_axioms(const AlgebraConfig& cfg, std::uint64_t seed, int cases);
  static SuiteResult anticommutation(const AlgebraConfig& cfg, std::uint64_t seed, int cases);
  static SuiteResult submultiplicativity(const AlgebraConfig& cfg, std::uint64_t seed, int cases);
  static SuiteResult inversion(const AlgebraConfig& cfg, std::uint64_t seed, int cases);
  static SuiteResult binomial(const AlgebraConfig& cfg, std::uint64_t seed, int cases);
  /// (ratio < 1) <=> ||s(d~)|| < 1/2 for d~ = d / ||d||.
  static SuiteResult normalized_criterion(const AlgebraConfig& cfg, std::uint64_t seed, int cases);
  /// Random metrics with m <= max.m, n <= max.n.
  static SuiteResult canonicalization(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims max);
  static SuiteResult body_reduction(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims max);
  /// Condition triple against the single test, on members and non-members.
  static SuiteResult membership_agreement(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
  static SuiteResult soul_exponentials(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
  /// Every m <= max_m and n in {0, 2, ..., max_n}.
  static SuiteResult lie_dimensions(const AlgebraConfig& cfg, int max_m, int max_n);
  static SuiteResult spectrum(const AlgebraConfig& cfg, std::uint64_t seed, int cases, int xi_count, MatrixDims dims);
  static SuiteResult diamond_group_law(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
  /// Order 2 against X + Y + [X, Y]/2, and order 6 against diamond for L <= 6.
  static SuiteResult bch_low_orders(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
  /// Residual of the order-`order` series against diamond, at t and t/2.
  static SuiteResult bch_decay(const AlgebraConfig& cfg, std::uint64_t seed, int cases, int order, MatrixDims dims);
  static SuiteResult semidirect_law(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
  static SuiteResult action_homomorphism(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
  static SuiteResult embedding(const AlgebraConfig& cfg, std::uint64_t seed, int cases, MatrixDims dims);
};

/// log(e^{tA} e^{tB}) - t(A + B) - t^2 [A, B] / 2 = O(t^3) for real g0
/// matrices (float64 only).
SuiteResult local_expansion(std::uint64_t seed, int cases, MatrixDims dims);

struct VerifyOptions {
  std::uint64_t seed = 42;
  MatrixDims dims;
  int scale = 1;  // multiplies every case count
};

/// The bundle behind `verify`: every check at desk-check sizes.
template <class S>
std::vector<SuiteResult> run_verify(const AlgebraConfig& cfg, const VerifyOptions& options);

}  // namespace superspin
