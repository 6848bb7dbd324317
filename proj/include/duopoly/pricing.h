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

#ifndef DUOPOLY_PRICING_H_
#define DUOPOLY_PRICING_H_

// Pricing competition for fixed leased bandwidths.

#include <string_view>
#include <utility>
#include <variant>

#include "duopoly/model.h"

namespace duopoly {

// General-SNR supply threshold B_th = kSupplyThresholdRatio * G, and the
// price a monopolist charges above it. Both are the printed rounded values.
inline constexpr double kSupplyThresholdRatio = 0.462;
inline constexpr double kThresholdPrice = 0.468;

struct ProfitPair {
  double i;
  double j;
};

// Total bandwidth beyond which the shared-price region ends:
// G e^{-2} (high SNR) or 0.462 G (general).
double LowInvestmentCap(double g_total, SnrRegime regime);

// The price at which total preferred demand equals total supply `s`:
// ln(G/s) - 1 (high SNR) or ln(1 + G/s) - G/(s + G) (general).
double ClearingPrice(double s, double g_total, SnrRegime regime);

// Revenue-maximizing price of a lone operator with supply b.
double MonopolistPrice(double b, double g_total, SnrRegime regime);

// Profits p* - c per unit when both lease inside the low-investment cap.
ProfitPair LowInvestmentProfits(const BandwidthPair& bw, double g_total,
                                const CostPair& costs, SnrRegime regime);

struct UniquePositivePrice {
  double price;  // Shared by both operators.
  ProfitPair profits;
};
struct NoPricingEquilibrium {};
struct ZeroPrice {
  ProfitPair profits;  // -b c for each operator.
};

using PricingOutcome =
    std::variant<UniquePositivePrice, NoPricingEquilibrium, ZeroPrice>;

std::string_view PricingOutcomeName(const PricingOutcome& outcome);

// Classifies the Stage-II equilibrium. One-sided investment is priced by the
// monopolist rule; both bandwidths zero is a validation error.
PricingOutcome ComputePricingEquilibrium(const BandwidthPair& bw,
                                         double g_total, const CostPair& costs,
                                         SnrRegime regime);

// Recomputes the general-SNR threshold as the maximizer of D(p) = p / H(p)
// (demand revenue per unit G) and the supply G / H(p*) at that price.
struct SupplyThreshold {
  double price;         // argmax of D, ~0.468
  double supply_ratio;  // 1 / H(price), ~0.462
};
SupplyThreshold ComputeSupplyThreshold();

}  // namespace duopoly

#endif  // DUOPOLY_PRICING_H_
