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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "duopoly/users.h"

namespace duopoly {
namespace {

// Sums of bandwidths built from fractions of the cap can land one ulp past
// it; region tests treat those as on the boundary.
constexpr double kBoundarySlack = 1e-12;

void CheckAggregate(double g_total) {
  if (!std::isfinite(g_total) || g_total <= 0.0) {
    ThrowValidation("aggregate characteristic must be positive, got " +
                    std::to_string(g_total));
  }
}

bool AtMost(double x, double bound) {
  return x <= bound * (1.0 + kBoundarySlack);
}

double MonopolistProfit(double b, double c, double g_total,
                        SnrRegime regime) {
  const double price = MonopolistPrice(b, g_total, regime);
  const double demand = g_total * DemandScale(price, regime);
  return price * std::min(b, demand) - b * c;
}

}  // namespace

double LowInvestmentCap(double g_total, SnrRegime regime) {
  CheckAggregate(g_total);
  return regime == SnrRegime::kHighSnr ? g_total * std::exp(-2.0)
                                       : kSupplyThresholdRatio * g_total;
}

double ClearingPrice(double s, double g_total, SnrRegime regime) {
  CheckAggregate(g_total);
  if (!std::isfinite(s) || s <= 0.0) {
    ThrowValidation("supply must be positive, got " + std::to_string(s));
  }
  if (regime == SnrRegime::kHighSnr) return std::log(g_total / s) - 1.0;
  return std::log1p(g_total / s) - g_total / (s + g_total);
}

double MonopolistPrice(double b, double g_total, SnrRegime regime) {
  CheckAggregate(g_total);
  if (!std::isfinite(b) || b <= 0.0) {
    ThrowValidation("monopolist bandwidth must be positive, got " +
                    std::to_string(b));
  }
  if (AtMost(b, LowInvestmentCap(g_total, regime))) {
    return ClearingPrice(b, g_total, regime);
  }
  return regime == SnrRegime::kHighSnr ? 1.0 : kThresholdPrice;
}

ProfitPair LowInvestmentProfits(const BandwidthPair& bw, double g_total,
                                const CostPair& costs, SnrRegime regime) {
  if (bw.total() <= 0.0) ThrowValidation("both bandwidths are zero");
  const double price = ClearingPrice(bw.total(), g_total, regime);
  return {bw.b_i() * (price - costs.c_i()), bw.b_j() * (price - costs.c_j())};
}

std::string_view PricingOutcomeName(const PricingOutcome& outcome) {
  if (std::holds_alternative<UniquePositivePrice>(outcome)) {
    return "unique-positive";
  }
  if (std::holds_alternative<ZeroPrice>(outcome)) return "zero-price";
  return "no-equilibrium";
}

PricingOutcome ComputePricingEquilibrium(const BandwidthPair& bw,
                                         double g_total, const CostPair& costs,
                                         SnrRegime regime) {
  CheckAggregate(g_total);
  if (bw.b_i() == 0.0 && bw.b_j() == 0.0) {
    ThrowValidation("pricing needs at least one positive bandwidth");
  }

  if (bw.b_i() == 0.0 || bw.b_j() == 0.0) {
    const Operator active = bw.b_i() > 0.0 ? Operator::kI : Operator::kJ;
    const double b = bw.of(active);
    const double price = MonopolistPrice(b, g_total, regime);
    const double profit =
        MonopolistProfit(b, costs.of(active), g_total, regime);
    return UniquePositivePrice{
        price, active == Operator::kI ? ProfitPair{profit, 0.0}
                                      : ProfitPair{0.0, profit}};
  }

  if (AtMost(bw.total(), LowInvestmentCap(g_total, regime))) {
    return UniquePositivePrice{ClearingPrice(bw.total(), g_total, regime),
                               LowInvestmentProfits(bw, g_total, costs,
                                                    regime)};
  }
  if (regime == SnrRegime::kHighSnr &&
      std::min(bw.b_i(), bw.b_j()) >= g_total * std::exp(-1.0)) {
    return ZeroPrice{{-bw.b_i() * costs.c_i(), -bw.b_j() * costs.c_j()}};
  }
  return NoPricingEquilibrium{};
}

SupplyThreshold ComputeSupplyThreshold() {
  auto negative_revenue = [](double p) { return -p / SolveH(p).h_of_p; };
  std::uintmax_t max_iter = 500;
  const auto best = boost::math::tools::brent_find_minima(
      negative_revenue, 0.05, 2.0, std::numeric_limits<double>::digits / 2,
      max_iter);
  return {best.first, 1.0 / SolveH(best.first).h_of_p};
}

}  // namespace duopoly
