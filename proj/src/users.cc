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

#include "duopoly/users.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>

namespace duopoly {
namespace {

constexpr int kMaxRootIterations = 200;
constexpr double kResidualTolerance = 1e-12;
// Beyond this price e^{1+p} no longer fits in a double.
constexpr double kMaxPrice = 700.0;

void CheckPrice(double p, SnrRegime regime) {
  if (!std::isfinite(p) || p < 0.0) {
    ThrowValidation("price must be finite and non-negative, got " +
                    std::to_string(p));
  }
  if (regime == SnrRegime::kGeneral && p == 0.0) {
    ThrowDomain("unbounded demand: general-SNR demand diverges at price 0");
  }
  if (p > kMaxPrice) ThrowDomain("price too large: " + std::to_string(p));
}

void CheckCharacteristic(double g) {
  if (!std::isfinite(g) || g <= 0.0) {
    ThrowValidation("characteristic must be positive, got " +
                    std::to_string(g));
  }
}

// Greedy fill over users in order, consuming availability until the served
// characteristic reaches `target`. Returns what was actually served.
double Fill(const Market& market, const std::vector<std::size_t>& order,
            double target, std::vector<double>& available,
            std::vector<SetMember>& out) {
  double served = 0.0;
  for (std::size_t k : order) {
    if (served >= target) break;
    const double g = market.users()[k].g();
    const double room = available[k] * g;
    if (room <= 0.0) continue;
    const double take = std::min(room, target - served);
    const double fraction = take / g;
    available[k] -= fraction;
    served += take;
    out.push_back({market.users()[k].id(), fraction});
  }
  return served;
}

}  // namespace

double Rate(double g, double w, SnrRegime regime) {
  CheckCharacteristic(g);
  if (!std::isfinite(w) || w < 0.0) {
    ThrowValidation("bandwidth must be non-negative, got " +
                    std::to_string(w));
  }
  if (w == 0.0) return 0.0;
  if (regime == SnrRegime::kHighSnr) return w * std::log(g / w);
  return w * std::log1p(g / w);
}

double PayoffOfPurchase(double g, double w, double p, SnrRegime regime) {
  return Rate(g, w, regime) - p * w;
}

double PriceForSnr(double h) {
  // ln(1+H) - H/(1+H) = H^2/2 - 2H^3/3 + 3H^4/4 - ...; the direct form
  // cancels badly for small H.
  if (h < 1e-4) {
    return h * h * (0.5 - h * (2.0 / 3.0 - h * (0.75 - h * 0.8)));
  }
  return std::log1p(h) - h / (1.0 + h);
}

FixedPointSolution SolveH(double p) {
  if (!std::isfinite(p) || p <= 0.0) {
    ThrowDomain("H(p) needs a positive price, got " + std::to_string(p));
  }
  if (p > kMaxPrice) ThrowDomain("price too large: " + std::to_string(p));

  auto f = [p](double h) { return PriceForSnr(h) - p; };
  // p(H) is increasing from 0 and exceeds p at 3 e^{1+p}, so the bracket
  // always holds the root.
  double lo = 0.0;
  double hi = std::max(10.0, 3.0 * std::exp(1.0 + p));

  std::uintmax_t max_iter = kMaxRootIterations;
  auto bracket = boost::math::tools::bisect(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(24), max_iter);
  lo = bracket.first;
  hi = bracket.second;

  auto f_and_slope = [p](double h) {
    const double slope = h / ((1.0 + h) * (1.0 + h));
    return std::make_pair(PriceForSnr(h) - p, slope);
  };
  max_iter = kMaxRootIterations;
  double h = boost::math::tools::newton_raphson_iterate(
      f_and_slope, 0.5 * (lo + hi), lo, hi,
      std::numeric_limits<double>::digits - 2, max_iter);

  const double residual = std::abs(f(h));
  if (!(residual <= kResidualTolerance) || !(h > 0.0)) {
    ThrowSolver("H(p) root did not converge at p = " + std::to_string(p));
  }
  return {p, h, residual};
}

double DemandScale(double p, SnrRegime regime) {
  CheckPrice(p, regime);
  if (regime == SnrRegime::kHighSnr) return std::exp(-(1.0 + p));
  return 1.0 / SolveH(p).h_of_p;
}

double PayoffScale(double p, SnrRegime regime) {
  CheckPrice(p, regime);
  if (regime == SnrRegime::kHighSnr) return std::exp(-(1.0 + p));
  const double h = SolveH(p).h_of_p;
  return (std::log1p(h) - p) / h;
}

double UserSnr(double p, SnrRegime regime) {
  CheckPrice(p, regime);
  if (regime == SnrRegime::kHighSnr) return std::exp(1.0 + p);
  return SolveH(p).h_of_p;
}

double OptimalDemand(double g, double p, SnrRegime regime) {
  CheckCharacteristic(g);
  return g * DemandScale(p, regime);
}

double UserPayoff(double g, double p, SnrRegime regime) {
  CheckCharacteristic(g);
  return g * PayoffScale(p, regime);
}

std::vector<UserOutcome> EvaluateUsers(const Market& market, double p,
                                       SnrRegime regime) {
  std::vector<UserOutcome> out;
  out.reserve(market.size());
  for (const auto& u : market.users()) {
    const double w = OptimalDemand(u.g(), p, regime);
    out.push_back({u.id(), u.g(), w, u.g() / w,
                   PayoffOfPurchase(u.g(), w, p, regime)});
  }
  return out;
}

DemandTotals ComputeDemandTotals(double g_total, const BandwidthPair& bw,
                                 const PricePair& prices, SnrRegime regime) {
  const double scale_i = DemandScale(prices.p_i(), regime);
  const double scale_j = prices.p_j() == prices.p_i()
                             ? scale_i
                             : DemandScale(prices.p_j(), regime);
  return ComputeDemandTotals(g_total, bw, prices, scale_i, scale_j);
}

DemandTotals ComputeDemandTotals(double g_total, const BandwidthPair& bw,
                                 const PricePair& prices, double scale_i,
                                 double scale_j) {
  CheckCharacteristic(g_total);
  DemandTotals t;
  if (prices.p_i() == prices.p_j()) {
    const double half = 0.5 * g_total * scale_i;
    t.preferred_i = half;
    t.preferred_j = half;
    t.realized_i = std::min(bw.b_i(), half + std::max(half - bw.b_j(), 0.0));
    t.realized_j = std::min(bw.b_j(), half + std::max(half - bw.b_i(), 0.0));
    return t;
  }

  const bool i_low = prices.p_i() < prices.p_j();
  const double d_low = i_low ? scale_i : scale_j;
  const double d_high = i_low ? scale_j : scale_i;
  const double supply_low = i_low ? bw.b_i() : bw.b_j();
  const double supply_high = i_low ? bw.b_j() : bw.b_i();
  const double preferred_low = g_total * d_low;
  double realized_low = preferred_low;
  double realized_high = 0.0;
  if (supply_low < preferred_low) {
    realized_low = supply_low;
    // Users served by the cheaper operator carry supply / d_low of the
    // characteristic; the rest buy from the other operator at its price.
    const double rest = std::max(g_total - supply_low / d_low, 0.0);
    realized_high = std::min(supply_high, rest * d_high);
  }
  (i_low ? t.preferred_i : t.preferred_j) = preferred_low;
  (i_low ? t.realized_i : t.realized_j) = realized_low;
  (i_low ? t.realized_j : t.realized_i) = realized_high;
  return t;
}

DemandSplit ComputeDemandSplit(const Market& market, const BandwidthPair& bw,
                               const PricePair& prices, SnrRegime regime) {
  const DemandTotals t =
      ComputeDemandTotals(market.g_total(), bw, prices, regime);
  DemandSplit split;
  split.preferred_i = t.preferred_i;
  split.preferred_j = t.preferred_j;
  split.realized_i = t.realized_i;
  split.realized_j = t.realized_j;

  const std::size_t n = market.size();
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  std::vector<double> available(n, 1.0);

  if (prices.p_i() == prices.p_j()) {
    const double d = DemandScale(prices.p_i(), regime);
    std::vector<std::size_t> pref_i, pref_j;
    for (std::size_t k = 0; k < n; ++k) {
      (k % 2 == 0 ? pref_i : pref_j).push_back(k);
      (k % 2 == 0 ? split.preferred_set_i : split.preferred_set_j)
          .push_back({market.users()[k].id(), 1.0});
    }
    // Each operator first serves its own preferred users, then overflow
    // from the other side. Falling through to the other list keeps the
    // served characteristic equal to the fluid totals.
    std::vector<std::size_t> order_i = pref_i, order_j = pref_j;
    order_i.insert(order_i.end(), pref_j.begin(), pref_j.end());
    order_j.insert(order_j.end(), pref_i.begin(), pref_i.end());
    const double own_i = std::min(t.realized_i, t.preferred_i) / d;
    const double own_j = std::min(t.realized_j, t.preferred_j) / d;
    Fill(market, order_i, own_i, available, split.realized_set_i);
    Fill(market, order_j, own_j, available, split.realized_set_j);
    Fill(market, order_j, t.realized_j / d - own_j, available,
         split.realized_set_j);
    Fill(market, order_i, t.realized_i / d - own_i, available,
         split.realized_set_i);
    return split;
  }

  const bool i_low = prices.p_i() < prices.p_j();
  auto& pref_low = i_low ? split.preferred_set_i : split.preferred_set_j;
  auto& real_low = i_low ? split.realized_set_i : split.realized_set_j;
  auto& real_high = i_low ? split.realized_set_j : split.realized_set_i;
  const double q_low = i_low ? t.realized_i : t.realized_j;
  const double q_high = i_low ? t.realized_j : t.realized_i;
  for (const auto& u : market.users()) pref_low.push_back({u.id(), 1.0});
  Fill(market, all, q_low / DemandScale(i_low ? prices.p_i() : prices.p_j(),
                                        regime),
       available, real_low);
  if (q_high > 0.0) {
    Fill(market, all,
         q_high / DemandScale(i_low ? prices.p_j() : prices.p_i(), regime),
         available, real_high);
  }
  return split;
}

}  // namespace duopoly
