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

#ifndef DUOPOLY_COORDINATED_H_
#define DUOPOLY_COORDINATED_H_

// The joint-profit benchmark and what competition costs relative to it.
// Everything here assumes the high-SNR regime.

#include <optional>
#include <vector>

#include "duopoly/model.h"

namespace duopoly {

struct CoordinatedOutcome {
  BandwidthPair bw{0.0, 0.0};  // Only the cheaper operator leases.
  Operator survivor = Operator::kI;  // Ties go to operator i.
  double price = 0.0;         // 1 + c_min
  double total_profit = 0.0;  // G e^{-(2 + c_min)}
};

CoordinatedOutcome ComputeCoordinatedOptimum(const CostPair& costs,
                                             double g_total);

// Duopoly / coordinated total profit. In the low-costs regime this is the
// worst case over the equilibrium continuum.
struct RatioReport {
  CostRegime regime;
  double ratio = 1.0;
  // Share of the cheaper operator at the worst equilibrium (low costs only).
  std::optional<double> worst_rho;
  double duopoly_total = 0.0;
  double coordinated_total = 0.0;
};

RatioReport ComputeProfitRatio(const CostPair& costs, double g_total);

// Closed forms, with c_low <= c_high. These accept the closed boundary
// c_low = 0 so curves can start at the origin.
double LowCostsRatio(double c_low, double c_high);
double HighComparableRatio(double delta);

struct MinRatioScan {
  double low_costs_grid_min = 0.0;
  double low_costs_argmin_c_low = 0.0;
  double low_costs_argmin_c_high = 0.0;
  // The infimum, approached as (c_low, c_high) -> (0, 0.5).
  double low_costs_limit = 0.0;
  double high_comparable_min = 0.0;
  double high_comparable_argmin_delta = 0.0;
  double max_ratio = 0.0;  // Over every scanned point, both regimes.
};

// Scans the low-costs triangle on a (grid_n x grid_n) lattice with spacing
// 1/grid_n and the high-comparable regime over delta in [0, 1] with the same
// spacing (each delta sampled on a strip of c_low values).
MinRatioScan ScanMinimumRatio(int grid_n);

struct UserPayoffComparison {
  double duopoly;
  double coordinated;
};

// Per-unit-characteristic user payoff at the duopoly equilibrium vs the
// coordinated optimum.
UserPayoffComparison CompareUserPayoffs(const CostPair& costs, double g_total);

// Shape of c_low -> LowCostsRatio(c_low, c_low + delta) on the low-costs
// slice c_low in [0, (1 - delta)/2].
enum class CurveShape { kDecreasing, kUnimodal, kIncreasing };

// A rise or fall smaller than `resolution` times the curve's range counts as
// flat. With resolution -> 0 this is the sign test of the slice's endpoint
// derivatives.
CurveShape ClassifySliceShape(double delta, double resolution);

struct EffectRegions {
  double resolution = 0.0;
  // Excessive investment dominates for delta <= ei_upper, cheaper resource
  // for delta >= cr_lower.
  double ei_upper = 0.0;
  double cr_lower = 0.0;
  // Closed-form limits of the strict endpoint-derivative test: the slice's
  // maximum sits at c* = delta^2 / (1 - delta).
  double strict_ei_upper = 0.0;
  double strict_cr_lower = 0.0;
};

// resolution in (0, 0.01].
EffectRegions ComputeEffectRegions(double resolution);

struct RatioPoint {
  double c_low;
  double ratio;
};

// Profit ratio against the lower cost for a fixed cost difference, sampled
// evenly over c_low in [0, 1]: the low-costs branch below (1 - delta)/2 and
// the constant high-comparable branch above.
std::vector<RatioPoint> ComputeRatioCurve(double delta, int samples);

}  // namespace duopoly

#endif  // DUOPOLY_COORDINATED_H_
