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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "duopoly/users.h"

namespace duopoly {
namespace {

constexpr double kCapSlack = 1e-12;
constexpr double kFocResidualTolerance = 1e-10;
constexpr double kFixedPointTolerance = 1e-8;
constexpr double kDamping = 0.5;
constexpr int kMaxGeneralIterations = 10000;

void CheckAggregate(double g_total) {
  if (!std::isfinite(g_total) || g_total <= 0.0) {
    ThrowValidation("aggregate characteristic must be positive, got " +
                    std::to_string(g_total));
  }
}

// d p*(s) / ds for the shared clearing price.
double ClearingPriceSlope(double s, double g_total, SnrRegime regime) {
  if (regime == SnrRegime::kHighSnr) return -1.0 / s;
  return -g_total * g_total / (s * (s + g_total) * (s + g_total));
}

double ClearingPriceCurvature(double s, double g_total, SnrRegime regime) {
  if (regime == SnrRegime::kHighSnr) return 1.0 / (s * s);
  const double t = s + g_total;
  return g_total * g_total * (1.0 / (s * s * t * t) + 2.0 / (s * t * t * t));
}

// Root of MarginalProfit in (lo, hi) where it changes sign from + to -.
double InteriorRoot(double lo, double hi, double b_other, double c_own,
                    double g_total, SnrRegime regime) {
  auto foc = [&](double b) {
    return MarginalProfit(b, b_other, c_own, g_total, regime);
  };
  std::uintmax_t max_iter = 200;
  std::pair<double, double> bracket;
  try {
    bracket = boost::math::tools::bisect(
        foc, lo, hi, boost::math::tools::eps_tolerance<double>(24), max_iter);
  } catch (const std::domain_error& e) {
    ThrowSolver(std::string("best-response root not bracketed: ") + e.what());
  }

  auto foc_and_slope = [&](double b) {
    const double s = b + b_other;
    const double slope = 2.0 * ClearingPriceSlope(s, g_total, regime) +
                         b * ClearingPriceCurvature(s, g_total, regime);
    return std::make_pair(foc(b), slope);
  };
  max_iter = 200;
  const double root = boost::math::tools::newton_raphson_iterate(
      foc_and_slope, 0.5 * (bracket.first + bracket.second), bracket.first,
      bracket.second, std::numeric_limits<double>::digits - 2, max_iter);
  if (!(std::abs(foc(root)) <= kFocResidualTolerance)) {
    ThrowSolver("best-response first-order condition did not converge");
  }
  return root;
}

}  // namespace

double MarginalProfit(double b_own, double b_other, double c_own,
                      double g_total, SnrRegime regime) {
  const double s = b_own + b_other;
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  return ClearingPrice(s, g_total, regime) +
         b_own * ClearingPriceSlope(s, g_total, regime) - c_own;
}

double BestResponse(double b_other, double c_own, double g_total,
                    SnrRegime regime) {
  CheckAggregate(g_total);
  if (!std::isfinite(c_own) || c_own <= 0.0) {
    ThrowValidation("cost must be positive, got " + std::to_string(c_own));
  }
  if (!std::isfinite(b_other) || b_other < 0.0) {
    ThrowValidation("competitor bandwidth must be non-negative");
  }
  const double cap = LowInvestmentCap(g_total, regime);
  if (b_other > cap * (1.0 + kCapSlack)) {
    ThrowDomain("competitor bandwidth " + std::to_string(b_other) +
                " exceeds the investment cap " + std::to_string(cap));
  }
  const double room = std::max(cap - b_other, 0.0);

  if (regime == SnrRegime::kHighSnr) {
    // Best-response table: low cost leases to the cap against a large
    // competitor, high cost stays out against a large competitor, and
    // otherwise the first-order condition has an interior root.
    if (c_own <= 1.0) {
      if (b_other >= c_own * cap) return room;
    } else if (b_other >= g_total * std::exp(-(1.0 + c_own))) {
      return 0.0;
    }
  }
  // Endpoint signs settle ties the table misses by rounding.
  if (room == 0.0) return 0.0;
  if (MarginalProfit(0.0, b_other, c_own, g_total, regime) <= 0.0) return 0.0;
  if (MarginalProfit(room, b_other, c_own, g_total, regime) >= 0.0) {
    return room;
  }
  return InteriorRoot(0.0, room, b_other, c_own, g_total, regime);
}

double BestResponseResidual(const BandwidthPair& bw, const CostPair& costs,
                            double g_total, SnrRegime regime) {
  const double ri =
      std::abs(bw.b_i() - BestResponse(bw.b_j(), costs.c_i(), g_total, regime));
  const double rj =
      std::abs(bw.b_j() - BestResponse(bw.b_i(), costs.c_j(), g_total, regime));
  return std::max(ri, rj);
}

BandwidthPair ContinuumPoint(double rho, double g_total) {
  const double total = g_total * std::exp(-2.0);
  return BandwidthPair(rho * total, (1.0 - rho) * total);
}

FocalPoints ComputeFocalPoints(const CostPair& costs, double g_total) {
  CheckAggregate(g_total);
  if (ClassifyCostRegime(costs).kind != CostRegimeKind::kLowCosts) {
    ThrowDomain("focal points exist only in the low-costs regime");
  }
  const double lo = costs.c_j();
  const double hi = 1.0 - costs.c_i();
  const double closest_to_half = std::clamp(0.5, lo, hi);
  const double equal_profit = std::clamp(
      (1.0 - costs.c_j()) / (2.0 - costs.c_i() - costs.c_j()), lo, hi);
  const double equal_investment =
      costs.max() <= 0.5 ? 0.5 : closest_to_half;
  return {{equal_investment, ContinuumPoint(equal_investment, g_total)},
          {closest_to_half, ContinuumPoint(closest_to_half, g_total)},
          {equal_profit, ContinuumPoint(equal_profit, g_total)}};
}

InvestmentOutcome ComputeInvestmentEquilibrium(const CostPair& costs,
                                               double g_total) {
  CheckAggregate(g_total);
  const CostRegime regime = ClassifyCostRegime(costs);
  const double ci = costs.c_i();
  const double cj = costs.c_j();

  InvestmentOutcome outcome = UniqueInterior{BandwidthPair(0.0, 0.0)};
  std::vector<BandwidthPair> to_check;
  switch (regime.kind) {
    case CostRegimeKind::kLowCosts: {
      Continuum c{cj, 1.0 - ci, ComputeFocalPoints(costs, g_total)};
      to_check = {ContinuumPoint(c.rho_min, g_total),
                  ContinuumPoint(c.rho_max, g_total),
                  c.focal.equal_investment.bw, c.focal.equal_profit.bw};
      outcome = c;
      break;
    }
    case CostRegimeKind::kHighComparable: {
      const double scale = 0.5 * g_total * std::exp(-(ci + cj + 3.0) / 2.0);
      UniqueInterior u{
          BandwidthPair((1.0 + cj - ci) * scale, (1.0 + ci - cj) * scale)};
      to_check = {u.bw};
      outcome = u;
      break;
    }
    case CostRegimeKind::kHighIncomparable: {
      const Operator s = *regime.survivor;
      const double b = g_total * std::exp(-(2.0 + costs.of(s)));
      MonopolyCorner m{s == Operator::kI ? BandwidthPair(b, 0.0)
                                         : BandwidthPair(0.0, b),
                       s};
      to_check = {m.bw};
      outcome = m;
      break;
    }
  }
  for (const auto& bw : to_check) {
    const double residual =
        BestResponseResidual(bw, costs, g_total, SnrRegime::kHighSnr);
    if (!(residual <= kFixedPointTolerance * g_total)) {
      ThrowSolver("equilibrium candidate is not a mutual best response "
                  "(residual " + std::to_string(residual) + ")");
    }
  }
  return outcome;
}

EquilibriumSummary ComputeEquilibriumSummary(const CostPair& costs,
                                             double g_total,
                                             std::optional<double> rho) {
  const InvestmentOutcome outcome =
      ComputeInvestmentEquilibrium(costs, g_total);
  EquilibriumSummary summary;
  summary.regime = ClassifyCostRegime(costs);

  if (const auto* c = std::get_if<Continuum>(&outcome)) {
    const double r = rho.value_or(c->focal.equal_investment.rho);
    if (!std::isfinite(r) || r < c->rho_min - kCapSlack ||
        r > c->rho_max + kCapSlack) {
      ThrowDomain("rho = " + std::to_string(r) +
                  " is outside the equilibrium interval [" +
                  std::to_string(c->rho_min) + ", " +
                  std::to_string(c->rho_max) + "]");
    }
    summary.continuum = true;
    summary.rho = r;
    summary.investments = ContinuumPoint(r, g_total);
  } else if (const auto* u = std::get_if<UniqueInterior>(&outcome)) {
    summary.investments = u->bw;
  } else {
    summary.investments = std::get<MonopolyCorner>(outcome).bw;
  }

  const PricingOutcome pricing = ComputePricingEquilibrium(
      summary.investments, g_total, costs, SnrRegime::kHighSnr);
  const auto& priced = std::get<UniquePositivePrice>(pricing);
  if (summary.investments.b_i() > 0.0) summary.price_i = priced.price;
  if (summary.investments.b_j() > 0.0) summary.price_j = priced.price;
  summary.profits = priced.profits;
  summary.per_user = {DemandScale(priced.price, SnrRegime::kHighSnr),
                      UserSnr(priced.price, SnrRegime::kHighSnr),
                      PayoffScale(priced.price, SnrRegime::kHighSnr)};
  return summary;
}

GeneralEquilibrium ComputeGeneralEquilibrium(const CostPair& costs,
                                             double g_total) {
  CheckAggregate(g_total);
  constexpr SnrRegime kRegime = SnrRegime::kGeneral;
  const double cap = LowInvestmentCap(g_total, kRegime);

  // Warm start from the high-SNR equilibrium, which lies inside the cap.
  const EquilibriumSummary start = ComputeEquilibriumSummary(costs, g_total);
  double bi = start.investments.b_i();
  double bj = start.investments.b_j();

  GeneralEquilibrium eq;
  bool settled = false;
  for (int it = 1; it <= kMaxGeneralIterations; ++it) {
    const double next_i =
        (1.0 - kDamping) * bi +
        kDamping * BestResponse(bj, costs.c_i(), g_total, kRegime);
    const double next_j =
        (1.0 - kDamping) * bj +
        kDamping * BestResponse(next_i, costs.c_j(), g_total, kRegime);
    const double change = std::max(std::abs(next_i - bi), std::abs(next_j - bj));
    bi = next_i;
    bj = next_j;
    eq.iterations = it;
    if (change <= 1e-15 * g_total) {
      settled = true;
      break;
    }
  }
  if (!settled) {
    ThrowSolver("general-SNR best-response iteration did not converge in " +
                std::to_string(kMaxGeneralIterations) + " iterations");
  }
  // One undamped round lands corner solutions exactly on zero.
  bi = BestResponse(bj, costs.c_i(), g_total, kRegime);
  bj = BestResponse(bi, costs.c_j(), g_total, kRegime);
  if (bi + bj >= cap * (1.0 - 1e-9)) {
    ThrowSolver("no equilibrium in analyzed region: investments bind the "
                "coupled cap 0.462 G");
  }

  eq.bw = BandwidthPair(bi, bj);
  eq.residual = BestResponseResidual(eq.bw, costs, g_total, kRegime);
  if (!(eq.residual <= kFixedPointTolerance * g_total)) {
    ThrowSolver("general-SNR fixed point residual too large: " +
                std::to_string(eq.residual));
  }
  eq.price = ClearingPrice(eq.bw.total(), g_total, kRegime);
  eq.profits = LowInvestmentProfits(eq.bw, g_total, costs, kRegime);
  eq.per_user = {DemandScale(eq.price, kRegime), UserSnr(eq.price, kRegime),
                 PayoffScale(eq.price, kRegime)};
  return eq;
}

}  // namespace duopoly
