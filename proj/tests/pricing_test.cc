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
#include "duopoly/pricing.h"

#include <cmath>
#include <variant>

#include "doctest.h"
#include "duopoly/users.h"
#include "test_util.h"

namespace duopoly {
namespace {

using doctest::Approx;
using testing::ErrorOf;

constexpr SnrRegime kHigh = SnrRegime::kHighSnr;
constexpr SnrRegime kGeneral = SnrRegime::kGeneral;

TEST_CASE("low-investment cap") {
  CHECK(LowInvestmentCap(1.0, kHigh) == Approx(std::exp(-2.0)));
  CHECK(LowInvestmentCap(10.0, kGeneral) == Approx(4.62));
  CHECK(ErrorOf([] { LowInvestmentCap(0.0, kHigh); }) ==
        ErrorCode::kValidation);
}

TEST_CASE("monopolist price") {
  CHECK(MonopolistPrice(std::exp(-2.0), 1.0, kHigh) ==
        Approx(1.0).epsilon(1e-14));
  CHECK(MonopolistPrice(std::exp(-3.0), 1.0, kHigh) ==
        Approx(2.0).epsilon(1e-14));
  CHECK(MonopolistPrice(0.3, 1.0, kHigh) == 1.0);
  CHECK(std::abs(MonopolistPrice(0.462, 1.0, kGeneral) - 0.468) < 1e-3);
  CHECK(MonopolistPrice(0.9, 1.0, kGeneral) == kThresholdPrice);
  CHECK(ErrorOf([] { MonopolistPrice(0.0, 1.0, kHigh); }) ==
        ErrorCode::kValidation);
}

TEST_CASE("high-SNR unique price") {
  const PricingOutcome o = ComputePricingEquilibrium(
      BandwidthPair(0.05, 0.05), 1.0, CostPair(0.5, 1.0), kHigh);
  const auto& u = std::get<UniquePositivePrice>(o);
  const double p = std::log(10.0) - 1.0;
  CHECK(u.price == Approx(p).epsilon(1e-15));
  CHECK(u.profits.i == Approx(0.05 * (p - 0.5)).epsilon(1e-14));
  CHECK(u.profits.j == Approx(0.05 * (p - 1.0)).epsilon(1e-14));
  CHECK(PricingOutcomeName(o) == "unique-positive");
}

TEST_CASE("high-SNR regions") {
  const CostPair c(1.0, 1.0);
  CHECK(std::holds_alternative<NoPricingEquilibrium>(
      ComputePricingEquilibrium(BandwidthPair(0.2, 0.5), 1.0, c, kHigh)));
  const PricingOutcome zero =
      ComputePricingEquilibrium(BandwidthPair(0.4, 0.5), 1.0, c, kHigh);
  REQUIRE(std::holds_alternative<ZeroPrice>(zero));
  CHECK(std::get<ZeroPrice>(zero).profits.i == Approx(-0.4));
  CHECK(std::get<ZeroPrice>(zero).profits.j == Approx(-0.5));
  CHECK(PricingOutcomeName(zero) == "zero-price");
  // Exactly on the cap still prices uniquely.
  const double e2 = std::exp(-2.0);
  const PricingOutcome edge = ComputePricingEquilibrium(
      BandwidthPair(0.25 * e2, 0.75 * e2), 1.0, c, kHigh);
  REQUIRE(std::holds_alternative<UniquePositivePrice>(edge));
  CHECK(std::get<UniquePositivePrice>(edge).price == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("general-SNR pricing") {
  const PricingOutcome o = ComputePricingEquilibrium(
      BandwidthPair(0.2, 0.2), 1.0, CostPair(0.3, 0.3), kGeneral);
  const auto& u = std::get<UniquePositivePrice>(o);
  CHECK(u.price == Approx(0.5384772542096538).epsilon(1e-14));
  CHECK(u.profits.i == Approx(0.2 * (u.price - 0.3)).epsilon(1e-14));
  CHECK(std::holds_alternative<NoPricingEquilibrium>(ComputePricingEquilibrium(
      BandwidthPair(0.3, 0.3), 1.0, CostPair(0.3, 0.3), kGeneral)));
  // No zero-price region in the general regime.
  CHECK(std::holds_alternative<NoPricingEquilibrium>(ComputePricingEquilibrium(
      BandwidthPair(5.0, 5.0), 1.0, CostPair(0.3, 0.3), kGeneral)));
}

TEST_CASE("one-sided investment is priced as a monopoly") {
  const double b = std::exp(-3.0);
  const PricingOutcome o = ComputePricingEquilibrium(
      BandwidthPair(0.0, b), 1.0, CostPair(0.5, 0.5), kHigh);
  const auto& u = std::get<UniquePositivePrice>(o);
  CHECK(u.price == Approx(2.0).epsilon(1e-14));
  CHECK(u.profits.i == 0.0);
  CHECK(u.profits.j == Approx(b * 1.5).epsilon(1e-14));
  CHECK(ErrorOf([] {
          ComputePricingEquilibrium(BandwidthPair(0.0, 0.0), 1.0,
                                    CostPair(1.0, 1.0), kHigh);
        }) == ErrorCode::kValidation);
}

TEST_CASE("pricing scales with G") {
  for (double g : {0.5, 3.0, 200.0}) {
    const PricingOutcome o = ComputePricingEquilibrium(
        BandwidthPair(0.02 * g, 0.07 * g), g, CostPair(0.4, 0.6), kGeneral);
    const PricingOutcome base = ComputePricingEquilibrium(
        BandwidthPair(0.02, 0.07), 1.0, CostPair(0.4, 0.6), kGeneral);
    CHECK(std::get<UniquePositivePrice>(o).price ==
          Approx(std::get<UniquePositivePrice>(base).price).epsilon(1e-13));
  }
}

TEST_CASE("supply threshold is recomputed, not assumed") {
  const SupplyThreshold t = ComputeSupplyThreshold();
  CHECK(std::abs(t.price - 0.468) < 1e-3);
  CHECK(std::abs(t.supply_ratio - 0.462) < 1e-3);
  // The maximizer beats its neighbours.
  auto revenue = [](double p) { return p / SolveH(p).h_of_p; };
  CHECK(revenue(t.price) >= revenue(t.price - 1e-3));
  CHECK(revenue(t.price) >= revenue(t.price + 1e-3));
}

}  // namespace
}  // namespace duopoly
