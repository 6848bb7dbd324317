// Copyright 2026 The Spectrum Duopoly Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "duopoly/coordinated.h"

#include <cmath>

#include "doctest.h"
#include "test_util.h"

namespace duopoly {
namespace {

using doctest::Approx;
using testing::ErrorOf;

TEST_CASE("coordinated optimum") {
  const CoordinatedOutcome a = ComputeCoordinatedOptimum(CostPair(0.5, 2.0), 1.0);
  CHECK(a.bw.b_i() == Approx(std::exp(-2.5)).epsilon(1e-15));
  CHECK(a.bw.b_j() == 0.0);
  CHECK(a.price == Approx(1.5));
  CHECK(a.total_profit == Approx(std::exp(-2.5)).epsilon(1e-14));

  CHECK(ComputeCoordinatedOptimum(CostPair(0.3, 0.4), 1.0).total_profit ==
        Approx(std::exp(-2.3)).epsilon(1e-14));

  const CoordinatedOutcome tie = ComputeCoordinatedOptimum(CostPair(1.0, 1.0), 1.0);
  CHECK(tie.survivor == Operator::kI);
  CHECK(tie.total_profit == Approx(std::exp(-3.0)).epsilon(1e-14));

  const CoordinatedOutcome j = ComputeCoordinatedOptimum(CostPair(0.9, 0.2), 1.0);
  CHECK(j.survivor == Operator::kJ);
  CHECK(j.bw.b_i() == 0.0);
}

TEST_CASE("profit ratio closed forms") {
  CHECK(HighComparableRatio(2.0 - std::sqrt(3.0)) == Approx(0.773).epsilon(5e-4));
  CHECK(HighComparableRatio(1.0) == 1.0);
  CHECK(LowCostsRatio(0.0, 0.5) == Approx(0.75).epsilon(1e-15));
  CHECK(LowCostsRatio(0.0, 0.3) == Approx(0.79).epsilon(1e-15));
  CHECK(LowCostsRatio(1e-9, 0.5) > 0.75);
}

TEST_CASE("profit ratio by regime") {
  const RatioReport low = ComputeProfitRatio(CostPair(0.3, 0.4), 1.0);
  CHECK(low.ratio == Approx(LowCostsRatio(0.3, 0.4)).epsilon(1e-14));
  REQUIRE(low.worst_rho.has_value());
  CHECK(*low.worst_rho == Approx(0.4));

  const RatioReport hc = ComputeProfitRatio(CostPair(1.2, 0.9), 1.0);
  CHECK(hc.ratio == Approx(HighComparableRatio(0.3)).epsilon(1e-14));
  CHECK_FALSE(hc.worst_rho.has_value());

  CHECK(ComputeProfitRatio(CostPair(0.5, 2.0), 1.0).ratio == 1.0);
  CHECK(ComputeProfitRatio(CostPair(0.25, 1.25), 1.0).ratio ==
        Approx(1.0).epsilon(1e-14));
}

TEST_CASE("minimum ratio scan") {
  const MinRatioScan s = ScanMinimumRatio(500);
  CHECK(s.low_costs_grid_min >= 0.75);
  CHECK(s.low_costs_grid_min <= 0.7525);
  CHECK(s.low_costs_limit == 0.75);
  CHECK(s.high_comparable_min == Approx(0.7729).epsilon(2e-4));
  CHECK(s.high_comparable_argmin_delta == Approx(0.268).epsilon(2e-3));
  CHECK(s.max_ratio <= 1.0);
  CHECK(ErrorOf([] { ScanMinimumRatio(10); }) == ErrorCode::kValidation);
}

TEST_CASE("users never lose from competition") {
  const UserPayoffComparison low = CompareUserPayoffs(CostPair(0.3, 0.4), 1.0);
  CHECK(low.duopoly == Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(low.coordinated == Approx(std::exp(-2.3)).epsilon(1e-14));
  const UserPayoffComparison hi = CompareUserPayoffs(CostPair(0.5, 2.0), 1.0);
  CHECK(hi.duopoly == Approx(hi.coordinated).epsilon(1e-15));
  // On the closed boundary C_j - C_i = 1 the two already coincide.
  const UserPayoffComparison edge = CompareUserPayoffs(CostPair(0.25, 1.25), 1.0);
  CHECK(edge.duopoly == Approx(edge.coordinated).epsilon(1e-14));
}

TEST_CASE("slice shapes") {
  CHECK(ClassifySliceShape(0.0, 0.0065) == CurveShape::kDecreasing);
  CHECK(ClassifySliceShape(0.3, 0.0065) == CurveShape::kUnimodal);
  CHECK(ClassifySliceShape(0.8, 0.0065) == CurveShape::kIncreasing);
}

TEST_CASE("effect regions") {
  const EffectRegions r = ComputeEffectRegions(0.0065);
  CHECK(r.ei_upper == Approx(0.171).epsilon(0.03));
  CHECK(r.cr_lower == Approx(0.407).epsilon(0.0125));
  CHECK(r.strict_ei_upper == 0.0);
  CHECK(r.strict_cr_lower == Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  // A finer resolution moves both thresholds toward the strict limits.
  const EffectRegions fine = ComputeEffectRegions(0.001);
  CHECK(fine.ei_upper < r.ei_upper);
  CHECK(std::abs(fine.cr_lower - r.strict_cr_lower) <
        std::abs(r.cr_lower - r.strict_cr_lower));
  CHECK(ErrorOf([] { ComputeEffectRegions(0.0); }) == ErrorCode::kValidation);
  CHECK(ErrorOf([] { ComputeEffectRegions(0.02); }) == ErrorCode::kValidation);
}

TEST_CASE("ratio curve") {
  const auto zero = ComputeRatioCurve(0.0, 201);
  // The sample at c_low = 0.5 is the junction of both branches.
  CHECK(zero[100].c_low == Approx(0.5));
  CHECK(zero[100].ratio == Approx(0.5 * std::exp(0.5)).epsilon(1e-12));
  CHECK(zero[100].ratio == Approx(0.8244).epsilon(1e-4));

  const auto one = ComputeRatioCurve(1.0, 50);
  for (const RatioPoint& p : one) CHECK(p.ratio == Approx(1.0).epsilon(1e-14));

  const auto mid = ComputeRatioCurve(0.3, 200);
  CHECK(mid.size() == 200);
  CHECK(mid.front().c_low == 0.0);
  CHECK(mid.front().ratio == Approx(0.79).epsilon(1e-14));
  CHECK(ErrorOf([] { ComputeRatioCurve(1.5, 10); }) == ErrorCode::kValidation);
  CHECK(ErrorOf([] { ComputeRatioCurve(0.3, 1); }) == ErrorCode::kValidation);
}

}  // namespace
}  // namespace duopoly
