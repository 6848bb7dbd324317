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
#include "duopoly/investment.h"

#include <cmath>
#include <variant>

#include "doctest.h"
#include "test_util.h"

namespace duopoly {
namespace {

using doctest::Approx;
using testing::ErrorOf;

constexpr SnrRegime kHigh = SnrRegime::kHighSnr;
constexpr SnrRegime kGeneral = SnrRegime::kGeneral;
const double kE2 = std::exp(-2.0);

TEST_CASE("best response: large competitor fills the remaining cap") {
  CHECK(BestResponse(0.1, 0.5, 1.0) == Approx(kE2 - 0.1).epsilon(1e-15));
}

TEST_CASE("best response: lone operator buys the monopoly quantity") {
  CHECK(BestResponse(0.0, 1.5, 1.0) == Approx(std::exp(-3.5)).epsilon(1e-12));
}

TEST_CASE("best response: interior first-order root") {
  // Reference root from an independent Brent solve.
  const double b = BestResponse(0.01, 1.5, 1.0);
  CHECK(b == Approx(0.029018750641074613).epsilon(1e-10));
  CHECK(std::abs(MarginalProfit(b, 0.01, 1.5, 1.0, kHigh)) <= 1e-10);
}

TEST_CASE("best response: high cost against a large competitor is zero") {
  CHECK(BestResponse(0.1, 1.5, 1.0) == 0.0);
  CHECK(BestResponse(kE2, 0.5, 1.0) == 0.0);
}

TEST_CASE("best response rejects points outside the strategy space") {
  CHECK(ErrorOf([] { BestResponse(0.2, 0.5, 1.0); }) == ErrorCode::kDomain);
  CHECK(ErrorOf([] { BestResponse(0.5, 0.5, 1.0, kGeneral); }) ==
        ErrorCode::kDomain);
  CHECK(ErrorOf([] { BestResponse(0.01, 0.0, 1.0); }) ==
        ErrorCode::kValidation);
  CHECK(ErrorOf([] { BestResponse(-0.01, 1.0, 1.0); }) ==
        ErrorCode::kValidation);
}

TEST_CASE("investment equilibrium by regime") {
  const auto hc = ComputeInvestmentEquilibrium(CostPair(1.0, 1.0), 1.0);
  const BandwidthPair bw = std::get<UniqueInterior>(hc).bw;
  CHECK(bw.b_i() == Approx(0.5 * std::exp(-2.5)).epsilon(1e-14));
  CHECK(bw.b_j() == Approx(0.5 * std::exp(-2.5)).epsilon(1e-14));

  const auto hi = ComputeInvestmentEquilibrium(CostPair(0.5, 2.0), 1.0);
  const MonopolyCorner& corner = std::get<MonopolyCorner>(hi);
  CHECK(corner.survivor == Operator::kI);
  CHECK(corner.bw.b_i() == Approx(std::exp(-2.5)).epsilon(1e-14));
  CHECK(corner.bw.b_j() == 0.0);

  const auto low = ComputeInvestmentEquilibrium(CostPair(0.3, 0.4), 1.0);
  const Continuum& c = std::get<Continuum>(low);
  CHECK(c.rho_min == Approx(0.4));
  CHECK(c.rho_max == Approx(0.7));
  CHECK(c.focal.equal_investment.bw.b_i() == Approx(0.5 * kE2).epsilon(1e-15));
  CHECK(c.focal.equal_investment.bw.b_j() == Approx(0.5 * kE2).epsilon(1e-15));
}

TEST_CASE("focal points") {
  const FocalPoints a = ComputeFocalPoints(CostPair(0.3, 0.3), 1.0);
  CHECK(a.equal_investment.rho == Approx(0.5));
  const FocalPoints b = ComputeFocalPoints(CostPair(0.7, 0.2), 1.0);
  CHECK(b.min_difference.bw.b_i() == Approx(0.3 * kE2).epsilon(1e-14));
  CHECK(b.min_difference.bw.b_j() == Approx(0.7 * kE2).epsilon(1e-14));
  CHECK(b.equal_investment.rho == Approx(b.min_difference.rho));
  const FocalPoints c = ComputeFocalPoints(CostPair(0.2, 0.7), 1.0);
  CHECK(c.min_difference.rho == Approx(0.7));
  const FocalPoints d = ComputeFocalPoints(CostPair(0.2, 0.2), 1.0);
  CHECK(d.equal_profit.rho == Approx(0.5));
  // Unclamped equal-profit share (1 - c_j) / (2 - c_i - c_j).
  const FocalPoints e = ComputeFocalPoints(CostPair(0.1, 0.3), 1.0);
  CHECK(e.equal_profit.rho == Approx(0.7 / 1.6).epsilon(1e-14));
  CHECK(ErrorOf([] { ComputeFocalPoints(CostPair(1.0, 1.0), 1.0); }) ==
        ErrorCode::kDomain);
}

TEST_CASE("equilibrium summary") {
  const EquilibriumSummary low =
      ComputeEquilibriumSummary(CostPair(0.3, 0.4), 1.0, 0.5);
  CHECK(low.continuum);
  CHECK(*low.price_i == Approx(1.0).epsilon(1e-15));
  CHECK(low.per_user.snr == Approx(std::exp(2.0)).epsilon(1e-14));
  CHECK(low.per_user.payoff == Approx(kE2).epsilon(1e-14));
  CHECK(low.profits.i == Approx(0.5 * 0.7 * kE2).epsilon(1e-14));

  const EquilibriumSummary hc = ComputeEquilibriumSummary(CostPair(1.0, 1.0), 1.0);
  CHECK_FALSE(hc.continuum);
  CHECK(*hc.price_i == Approx(1.5).epsilon(1e-14));
  CHECK(hc.profits.i == Approx(0.25 * std::exp(-2.5)).epsilon(1e-13));
  CHECK(hc.profits.j == Approx(0.25 * std::exp(-2.5)).epsilon(1e-13));

  const EquilibriumSummary hi = ComputeEquilibriumSummary(CostPair(0.5, 2.0), 1.0);
  CHECK(*hi.price_i == Approx(1.5).epsilon(1e-14));
  CHECK_FALSE(hi.price_j.has_value());
  CHECK(hi.profits.i == Approx(std::exp(-2.5)).epsilon(1e-13));
  CHECK(hi.profits.j == 0.0);
  CHECK(hi.per_user.snr == Approx(std::exp(2.5)).epsilon(1e-14));

  CHECK(ErrorOf([] { ComputeEquilibriumSummary(CostPair(0.3, 0.4), 1.0, 0.2); }) ==
        ErrorCode::kDomain);
}

TEST_CASE("general-SNR equilibrium") {
  const GeneralEquilibrium e = ComputeGeneralEquilibrium(CostPair(1.5, 1.5), 1.0);
  CHECK(e.bw.b_i() == Approx(e.bw.b_j()).epsilon(1e-10));
  CHECK(e.residual <= 1e-8);
  CHECK(std::abs(MarginalProfit(e.bw.b_i(), e.bw.b_j(), 1.5, 1.0, kGeneral)) <=
        1e-8);
  CHECK(e.bw.total() <= 0.462);

  const GeneralEquilibrium f = ComputeGeneralEquilibrium(CostPair(1.0, 1.0), 1.0);
  CHECK(f.bw.b_i() == Approx(0.0553719).epsilon(1e-5));
  CHECK(f.price == Approx(1.40527).epsilon(1e-5));

  // Cheap leasing pushes both operators onto the coupled cap.
  CHECK(ErrorOf([] { ComputeGeneralEquilibrium(CostPair(0.1, 0.1), 1.0); }) ==
        ErrorCode::kSolver);
}

TEST_CASE("general-SNR equilibrium approaches high SNR at high cost") {
  // Large costs mean high prices, where the two regimes coincide.
  const CostPair costs(6.0, 6.5);
  const GeneralEquilibrium g = ComputeGeneralEquilibrium(costs, 1.0);
  const EquilibriumSummary h = ComputeEquilibriumSummary(costs, 1.0);
  CHECK(g.price == Approx(*h.price_i).epsilon(5e-3));
}

}  // namespace
}  // namespace duopoly
