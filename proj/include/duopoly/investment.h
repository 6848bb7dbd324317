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

#ifndef DUOPOLY_INVESTMENT_H_
#define DUOPOLY_INVESTMENT_H_

// Investment competition: how much bandwidth each operator leases, knowing
// the pricing stage that follows.
//
// The strategy space is coupled, b_i + b_j <= LowInvestmentCap(G), so that
// the pricing stage always has its unique shared price. Within that space
// each operator's profit b (p*(b + b_other) - c) is strictly concave in its
// own b.

#include <optional>
#include <string_view>
#include <variant>

#include "duopoly/model.h"
#include "duopoly/pricing.h"

namespace duopoly {

// Profit-maximizing b_own in [0, cap - b_other]. For the high-SNR regime this
// follows the four-case best-response table (full supply, interior root,
// zero); the general regime uses the same concavity structure numerically.
// b_other above the cap is a domain error.
double BestResponse(double b_other, double c_own, double g_total,
                    SnrRegime regime = SnrRegime::kHighSnr);

// d(profit)/d(b_own) at (b_own, b_other); the best response is its root
// when interior.
double MarginalProfit(double b_own, double b_other, double c_own,
                      double g_total, SnrRegime regime);

// max over both operators of |b - BestResponse(b_other)|.
double BestResponseResidual(const BandwidthPair& bw, const CostPair& costs,
                            double g_total, SnrRegime regime);

// (rho G e^{-2}, (1 - rho) G e^{-2}).
BandwidthPair ContinuumPoint(double rho, double g_total);

struct FocalPoint {
  double rho;
  BandwidthPair bw;
};

struct FocalPoints {
  // Equal leasing when max(c_i, c_j) <= 1/2, else the closest feasible
  // point, which coincides with min_difference.
  FocalPoint equal_investment;
  FocalPoint min_difference;
  // rho (1 - c_i) = (1 - rho)(1 - c_j), clamped into [c_j, 1 - c_i].
  FocalPoint equal_profit;
};

// Only defined in the low-costs regime (domain error otherwise).
FocalPoints ComputeFocalPoints(const CostPair& costs, double g_total);

struct Continuum {
  double rho_min;  // c_j
  double rho_max;  // 1 - c_i
  FocalPoints focal;
};
struct UniqueInterior {
  BandwidthPair bw;
};
struct MonopolyCorner {
  BandwidthPair bw;
  Operator survivor;
};

using InvestmentOutcome =
    std::variant<Continuum, UniqueInterior, MonopolyCorner>;

// High-SNR investment equilibrium. Every returned point is checked to be a
// mutual best response to 1e-8 G.
InvestmentOutcome ComputeInvestmentEquilibrium(const CostPair& costs,
                                               double g_total);

// Demand, SNR and payoff a user gets per unit of its characteristic.
struct PerUserScalars {
  double demand;
  double snr;
  double payoff;
};

struct EquilibriumSummary {
  CostRegime regime;
  bool continuum = false;
  std::optional<double> rho;  // Set for the low-costs continuum.
  BandwidthPair investments{0.0, 0.0};
  // Absent for an operator that leases nothing.
  std::optional<double> price_i;
  std::optional<double> price_j;
  ProfitPair profits{0.0, 0.0};
  PerUserScalars per_user{0.0, 0.0, 0.0};
};

// Backward induction at the high-SNR equilibrium. In the continuum `rho`
// picks the equilibrium (default: the equal-investment focal point); a rho
// outside [c_j, 1 - c_i] is not an equilibrium and is rejected.
EquilibriumSummary ComputeEquilibriumSummary(
    const CostPair& costs, double g_total,
    std::optional<double> rho = std::nullopt);

struct GeneralEquilibrium {
  BandwidthPair bw{0.0, 0.0};
  double price = 0.0;
  ProfitPair profits{0.0, 0.0};
  PerUserScalars per_user{0.0, 0.0, 0.0};
  double residual = 0.0;  // BestResponseResidual at bw.
  int iterations = 0;
};

// General-SNR investment equilibrium by damped alternating best responses
// (damping 0.5) started from the high-SNR equilibrium. Fails with a solver
// error when the fixed point sits on the coupled cap (no isolated
// equilibrium in the analyzed region) or the iteration does not settle.
GeneralEquilibrium ComputeGeneralEquilibrium(const CostPair& costs,
                                             double g_total);

}  // namespace duopoly

#endif  // DUOPOLY_INVESTMENT_H_
