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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "duopoly/investment.h"
#include "duopoly/pricing.h"
#include "duopoly/users.h"

namespace duopoly {
namespace {

void CheckAggregate(double g_total) {
  if (!std::isfinite(g_total) || g_total <= 0.0) {
    ThrowValidation("aggregate characteristic must be positive, got " +
                    std::to_string(g_total));
  }
}

double SliceRatio(double c_low, double delta) {
  return LowCostsRatio(c_low, c_low + delta);
}

struct SliceProfile {
  double left;
  double right;
  double peak;
};

SliceProfile ProfileSlice(double delta) {
  const double end = 0.5 * (1.0 - delta);
  SliceProfile s{SliceRatio(0.0, delta), SliceRatio(end, delta), 0.0};
  std::uintmax_t max_iter = 200;
  const auto best = boost::math::tools::brent_find_minima(
      [delta](double c) { return -SliceRatio(c, delta); }, 0.0, end,
      std::numeric_limits<double>::digits, max_iter);
  s.peak = std::max({-best.second, s.left, s.right});
  return s;
}

}  // namespace

CoordinatedOutcome ComputeCoordinatedOptimum(const CostPair& costs,
                                             double g_total) {
  CheckAggregate(g_total);
  CoordinatedOutcome out;
  out.survivor = costs.c_i() <= costs.c_j() ? Operator::kI : Operator::kJ;
  const double c = costs.of(out.survivor);
  const double b = g_total * std::exp(-(2.0 + c));
  out.bw = out.survivor == Operator::kI ? BandwidthPair(b, 0.0)
                                        : BandwidthPair(0.0, b);
  // The joint price is the lone operator's clearing price, ln(G/b) - 1.
  out.price = MonopolistPrice(b, g_total, SnrRegime::kHighSnr);
  out.total_profit = b * (out.price - c);
  return out;
}

double LowCostsRatio(double c_low, double c_high) {
  const double rest = 1.0 - c_high;
  return (c_high * (1.0 - c_low) + rest * rest) * std::exp(c_low);
}

double HighComparableRatio(double delta) {
  return 0.5 * (1.0 + delta * delta) * std::exp(0.5 * (1.0 - delta));
}

RatioReport ComputeProfitRatio(const CostPair& costs, double g_total) {
  CheckAggregate(g_total);
  RatioReport report;
  report.regime = ClassifyCostRegime(costs);
  report.coordinated_total =
      ComputeCoordinatedOptimum(costs, g_total).total_profit;

  const double c_low = costs.min();
  const double c_high = costs.max();
  std::optional<double> rho_i;
  switch (report.regime.kind) {
    case CostRegimeKind::kLowCosts:
      report.ratio = LowCostsRatio(c_low, c_high);
      report.worst_rho = c_high;
      // Total profit grows with the cheaper operator's share, so the worst
      // equilibrium gives it the smallest feasible share.
      rho_i = costs.c_i() <= costs.c_j() ? c_high : 1.0 - c_high;
      break;
    case CostRegimeKind::kHighComparable:
      report.ratio = HighComparableRatio(c_high - c_low);
      break;
    case CostRegimeKind::kHighIncomparable:
      report.ratio = 1.0;
      break;
  }
  const EquilibriumSummary summary =
      ComputeEquilibriumSummary(costs, g_total, rho_i);
  report.duopoly_total = summary.profits.i + summary.profits.j;
  return report;
}

MinRatioScan ScanMinimumRatio(int grid_n) {
  if (grid_n < 100) {
    ThrowValidation("grid_n must be at least 100, got " +
                    std::to_string(grid_n));
  }
  const double step = 1.0 / grid_n;
  MinRatioScan scan;
  scan.low_costs_grid_min = std::numeric_limits<double>::infinity();
  scan.high_comparable_min = std::numeric_limits<double>::infinity();
  scan.max_ratio = -std::numeric_limits<double>::infinity();

  for (int a = 1; 2 * a <= grid_n; ++a) {
    for (int b = a; a + b <= grid_n; ++b) {
      const double r = LowCostsRatio(a * step, b * step);
      scan.max_ratio = std::max(scan.max_ratio, r);
      if (r < scan.low_costs_grid_min) {
        scan.low_costs_grid_min = r;
        scan.low_costs_argmin_c_low = a * step;
        scan.low_costs_argmin_c_high = b * step;
      }
    }
  }
  scan.low_costs_limit = LowCostsRatio(0.0, 0.5);

  for (int k = 0; k <= grid_n; ++k) {
    const double delta = k * step;
    // Two cost pairs per difference: just inside the regime boundary and
    // far from it. The ratio must not depend on which.
    for (double c_low : {0.5 * (1.0 - delta) + step, 1.0 + 0.5 * delta}) {
      const RatioReport r =
          ComputeProfitRatio(CostPair(c_low, c_low + delta), 1.0);
      if (r.regime.kind != CostRegimeKind::kHighComparable) continue;
      scan.max_ratio = std::max(scan.max_ratio, r.ratio);
      if (r.ratio < scan.high_comparable_min) {
        scan.high_comparable_min = r.ratio;
        scan.high_comparable_argmin_delta = delta;
      }
    }
  }
  return scan;
}

UserPayoffComparison CompareUserPayoffs(const CostPair& costs,
                                        double g_total) {
  const EquilibriumSummary duopoly = ComputeEquilibriumSummary(costs, g_total);
  const CoordinatedOutcome coordinated =
      ComputeCoordinatedOptimum(costs, g_total);
  return {duopoly.per_user.payoff,
          PayoffScale(coordinated.price, SnrRegime::kHighSnr)};
}

CurveShape ClassifySliceShape(double delta, double resolution) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    ThrowValidation("cost difference must lie in [0, 1], got " +
                    std::to_string(delta));
  }
  // The slice degenerates to a point at delta = 1, where the curve meets the
  // constant high-comparable branch from below.
  if (delta >= 1.0) return CurveShape::kIncreasing;
  const SliceProfile s = ProfileSlice(delta);
  const double range = s.peak - std::min(s.left, s.right);
  if (s.peak - s.left <= resolution * range) return CurveShape::kDecreasing;
  if (s.peak - s.right <= resolution * range) return CurveShape::kIncreasing;
  return CurveShape::kUnimodal;
}

EffectRegions ComputeEffectRegions(double resolution) {
  if (!(resolution > 0.0 && resolution <= 0.01)) {
    ThrowValidation("resolution must lie in (0, 0.01], got " +
                    std::to_string(resolution));
  }
  EffectRegions regions;
  regions.resolution = resolution;
  regions.strict_ei_upper = 0.0;
  regions.strict_cr_lower = std::sqrt(2.0) - 1.0;

  // The slice maximum moves monotonically from c = 0 (delta = 0) to the
  // right end (delta = sqrt(2) - 1), so each shape boundary is a single
  // crossing.
  auto bisect = [resolution](double lo, double hi, CurveShape shape) {
    // Invariant: shape holds at one end only; `inside_low` says which.
    const bool inside_low = ClassifySliceShape(lo, resolution) == shape;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool inside = ClassifySliceShape(mid, resolution) == shape;
      (inside == inside_low ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  regions.ei_upper = bisect(0.0, 0.5, CurveShape::kDecreasing);
  regions.cr_lower = bisect(0.2, 0.999, CurveShape::kIncreasing);
  return regions;
}

std::vector<RatioPoint> ComputeRatioCurve(double delta, int samples) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    ThrowValidation("cost difference must lie in [0, 1], got " +
                    std::to_string(delta));
  }
  if (samples < 2) {
    ThrowValidation("need at least 2 samples, got " + std::to_string(samples));
  }
  std::vector<RatioPoint> curve;
  curve.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double c = static_cast<double>(k) / (samples - 1);
    const bool low = c + (c + delta) <= 1.0;
    curve.push_back({c, low ? LowCostsRatio(c, c + delta)
                            : HighComparableRatio(delta)});
  }
  return curve;
}

}  // namespace duopoly
