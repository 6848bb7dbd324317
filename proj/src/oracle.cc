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

#include "duopoly/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "duopoly/pricing.h"
#include "duopoly/users.h"

namespace duopoly {
namespace {

// Smallest price probed in the general regime, where p = 0 is excluded.
constexpr double kGeneralPriceFloor = 1e-6;
constexpr int kRefineCells = 2;
constexpr int kRefineFactor = 10;
constexpr int kStableRounds = 3;

std::vector<double> Linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  if (hi <= lo) {
    std::fill(xs.begin(), xs.end(), lo);
    return xs;
  }
  const double step = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) xs[k] = lo + k * step;
  xs.back() = hi;
  return xs;
}

// Scan result for one operator: the best deviation and its gain over the
// candidate's own payoff.
struct Scan {
  double best_point;
  double gain;
  bool refined;
};

// Scans `points` plus the two cells either side of the candidate at 10x
// density, so undercuts smaller than one cell are not missed. If the best
// deviation sits within two cells of the candidate and beats epsilon, the
// neighbourhood is rescanned and the near-candidate gains are taken from the
// finer grid only.
template <typename Payoff>
Scan ScanDeviations(const Payoff& payoff, double candidate,
                    const std::vector<double>& points, double lo, double hi,
                    double epsilon) {
  const double base = payoff(candidate);
  Scan s{candidate, 0.0, false};
  double best = base;
  for (double x : points) {
    const double v = payoff(x);
    if (v > best) {
      best = v;
      s.best_point = x;
    }
  }
  if (points.size() < 2) {
    s.gain = best - base;
    return s;
  }
  const double cell = points[1] - points[0];
  const double reach = kRefineCells * cell;
  const int fine_n = 2 * kRefineCells * kRefineFactor + 1;
  for (double x : Linspace(candidate - reach, candidate + reach, fine_n)) {
    if (x < lo || x > hi) continue;
    const double v = payoff(x);
    if (v > best) {
      best = v;
      s.best_point = x;
    }
  }
  s.gain = best - base;
  if (s.gain <= epsilon) return s;
  if (std::abs(s.best_point - candidate) > reach * (1.0 + 1e-12)) return s;

  s.refined = true;
  best = base;
  s.best_point = candidate;
  for (double x : points) {
    if (std::abs(x - candidate) <= reach * (1.0 + 1e-12)) continue;
    const double v = payoff(x);
    if (v > best) {
      best = v;
      s.best_point = x;
    }
  }
  for (double x : Linspace(candidate - reach, candidate + reach, fine_n)) {
    if (x < lo || x > hi) continue;
    const double v = payoff(x);
    if (v > best) {
      best = v;
      s.best_point = x;
    }
  }
  s.gain = best - base;
  return s;
}

// Per-unit demand scales on the price grid, shared by both operators' scans.
class ScaleCache {
 public:
  ScaleCache(const std::vector<double>& prices, SnrRegime regime)
      : regime_(regime) {
    prices_ = prices;
    scales_.reserve(prices.size());
    for (double p : prices) scales_.push_back(Compute(p));
  }

  double operator()(double p) const {
    const auto it = std::lower_bound(prices_.begin(), prices_.end(), p);
    if (it != prices_.end() && *it == p) {
      return scales_[static_cast<std::size_t>(it - prices_.begin())];
    }
    return Compute(p);
  }

 private:
  double Compute(double p) const {
    // Nobody is served at a free price in the general regime; treat the
    // demand as effectively unbounded.
    if (regime_ == SnrRegime::kGeneral && p <= 0.0) return HUGE_VAL;
    return DemandScale(p, regime_);
  }

  SnrRegime regime_;
  std::vector<double> prices_;
  std::vector<double> scales_;
};

double Revenue(double g_total, const BandwidthPair& bw, double p_own,
               double p_other, Operator op, const ScaleCache& cache) {
  if (p_own <= 0.0) return 0.0;
  const PricePair prices = op == Operator::kI ? PricePair(p_own, p_other)
                                              : PricePair(p_other, p_own);
  const DemandTotals t = ComputeDemandTotals(
      g_total, bw, prices, cache(prices.p_i()), cache(prices.p_j()));
  return p_own * (op == Operator::kI ? t.realized_i : t.realized_j);
}

// Price at which aggregate preferred demand at a common price equals the
// total supply, found from the user stage alone.
double MarketClearingPrice(double g_total, double supply, SnrRegime regime) {
  const BandwidthPair none(0.0, 0.0);
  auto excess = [&](double p) {
    const double d = DemandScale(p, regime);
    const DemandTotals t =
        ComputeDemandTotals(g_total, none, PricePair(p, p), d, d);
    return t.preferred_i + t.preferred_j - supply;
  };
  double lo = regime == SnrRegime::kGeneral ? kGeneralPriceFloor : 0.0;
  double hi = 1.0;
  if (excess(lo) <= 0.0) return lo;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 512.0) ThrowSolver("market-clearing price out of range");
  }
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::bisect(
      excess, lo, hi, boost::math::tools::eps_tolerance<double>(50),
      max_iter);
  return 0.5 * (r.first + r.second);
}

}  // namespace

void ValidateGrid(const GridSpec& grid) {
  if (grid.n < 50) {
    ThrowValidation("grid needs at least 50 points, got " +
                    std::to_string(grid.n));
  }
  if (!(grid.epsilon > 0.0) || !std::isfinite(grid.epsilon)) {
    ThrowValidation("epsilon must be positive");
  }
  if (!std::isfinite(grid.lower) || !std::isfinite(grid.upper) ||
      !(grid.lower < grid.upper)) {
    ThrowValidation("grid needs lower < upper");
  }
}

double DefaultEpsilonScale(double g_total) {
  return g_total * std::exp(-2.0);
}

GridSpec DefaultPricingGrid(const BandwidthPair& bw, double g_total,
                            SnrRegime regime, int n, double epsilon) {
  double s = 0.0;
  if (bw.b_i() > 0.0 && bw.b_j() > 0.0) {
    s = std::min(bw.b_i(), bw.b_j());
  } else {
    s = std::max(bw.b_i(), bw.b_j());
  }
  if (!(s > 0.0)) ThrowValidation("pricing grid needs a positive supply");
  const double lower = regime == SnrRegime::kGeneral ? kGeneralPriceFloor : 0.0;
  const double top = regime == SnrRegime::kHighSnr
                         ? std::log(g_total / s)
                         : ClearingPrice(std::min(s, LowInvestmentCap(
                                                         g_total, regime)),
                                         g_total, regime);
  return {lower, std::max(top, 0.0) + 2.0, n, epsilon};
}

GridSpec DefaultInvestmentGrid(double g_total, SnrRegime regime, int n,
                               double epsilon) {
  return {0.0, LowInvestmentCap(g_total, regime), n, epsilon};
}

NashCertificate CertifyPricing(const Market& market, const BandwidthPair& bw,
                               const CostPair& costs, SnrRegime regime,
                               const GridSpec& grid,
                               const PricePair& candidate) {
  ValidateGrid(grid);
  // Leasing costs are sunk once the bandwidth is bought, so revenue alone
  // decides pricing deviations.
  (void)costs;
  const double g = market.g_total();
  const std::vector<double> prices = Linspace(grid.lower, grid.upper, grid.n);
  const ScaleCache cache(prices, regime);

  NashCertificate cert;
  cert.point_i = candidate.p_i();
  cert.point_j = candidate.p_j();
  for (Operator op : {Operator::kI, Operator::kJ}) {
    const double other = candidate.of(Other(op));
    auto revenue = [&](double p) {
      return Revenue(g, bw, p, other, op, cache);
    };
    const Scan s = ScanDeviations(revenue, candidate.of(op), prices,
                                  grid.lower, grid.upper, grid.epsilon);
    (op == Operator::kI ? cert.max_gain_i : cert.max_gain_j) = s.gain;
    (op == Operator::kI ? cert.best_deviation_i : cert.best_deviation_j) =
        s.best_point;
    cert.refined = cert.refined || s.refined;
  }
  cert.is_epsilon_nash =
      std::max(cert.max_gain_i, cert.max_gain_j) <= grid.epsilon;
  return cert;
}

double OracleStageTwoProfit(const Market& market, const BandwidthPair& bw,
                            const CostPair& costs, SnrRegime regime,
                            Operator op) {
  const double own = bw.of(op);
  if (own <= 0.0) return 0.0;
  const double g = market.g_total();
  const double p = MarketClearingPrice(g, bw.total(), regime);
  const double d = DemandScale(p, regime);
  const DemandTotals t = ComputeDemandTotals(g, bw, PricePair(p, p), d, d);
  const double q = op == Operator::kI ? t.realized_i : t.realized_j;
  return p * q - own * costs.of(op);
}

NashCertificate CertifyInvestment(const Market& market, const CostPair& costs,
                                  SnrRegime regime, const GridSpec& grid,
                                  const BandwidthPair& candidate) {
  ValidateGrid(grid);
  const double cap = LowInvestmentCap(market.g_total(), regime);
  if (candidate.total() > cap * (1.0 + 1e-9)) {
    ThrowDomain("candidate investments exceed the coupled cap");
  }
  NashCertificate cert;
  cert.point_i = candidate.b_i();
  cert.point_j = candidate.b_j();
  for (Operator op : {Operator::kI, Operator::kJ}) {
    const double other = candidate.of(Other(op));
    const double hi = std::min(grid.upper, std::max(cap - other, 0.0));
    const double lo = std::min(grid.lower, hi);
    auto profit = [&](double b) {
      const BandwidthPair bw = op == Operator::kI ? BandwidthPair(b, other)
                                                  : BandwidthPair(other, b);
      return OracleStageTwoProfit(market, bw, costs, regime, op);
    };
    const Scan s = ScanDeviations(profit, candidate.of(op),
                                  Linspace(lo, hi, grid.n), lo, hi,
                                  grid.epsilon);
    (op == Operator::kI ? cert.max_gain_i : cert.max_gain_j) = s.gain;
    (op == Operator::kI ? cert.best_deviation_i : cert.best_deviation_j) =
        s.best_point;
    cert.refined = cert.refined || s.refined;
  }
  cert.is_epsilon_nash =
      std::max(cert.max_gain_i, cert.max_gain_j) <= grid.epsilon;
  return cert;
}

SymmetricRefutation RefuteSymmetricPrices(const Market& market,
                                          const BandwidthPair& bw,
                                          const CostPair& costs,
                                          SnrRegime regime,
                                          const GridSpec& grid) {
  ValidateGrid(grid);
  SymmetricRefutation out;
  out.min_max_gain = HUGE_VAL;
  const std::vector<double> prices = Linspace(grid.lower, grid.upper, grid.n);
  const ScaleCache cache(prices, regime);
  const double g = market.g_total();
  for (double p : prices) {
    ++out.candidates;
    double gain = 0.0;
    for (Operator op : {Operator::kI, Operator::kJ}) {
      auto revenue = [&](double x) { return Revenue(g, bw, x, p, op, cache); };
      const Scan s = ScanDeviations(revenue, p, prices, grid.lower,
                                    grid.upper, grid.epsilon);
      gain = std::max(gain, s.gain);
    }
    out.min_max_gain = std::min(out.min_max_gain, gain);
    if (gain <= grid.epsilon) {
      ++out.survivors;
      if (!out.first_survivor) out.first_survivor = p;
    }
  }
  (void)costs;
  return out;
}

DynamicsReport RunBestResponseDynamics(const Market& market,
                                       const CostPair& costs, SnrRegime regime,
                                       const GridSpec& grid,
                                       const BandwidthPair& start,
                                       int max_iters) {
  ValidateGrid(grid);
  if (max_iters < 1) ThrowValidation("max_iters must be positive");
  const double cap = LowInvestmentCap(market.g_total(), regime);
  if (start.total() > cap * (1.0 + 1e-9)) {
    ThrowValidation("start point lies outside the strategy space");
  }
  // Two points closer than one grid cell count as the same point.
  const double tol = (std::min(grid.upper, cap) - grid.lower) / (grid.n - 1);
  auto same = [tol](const BandwidthPair& a, const BandwidthPair& b) {
    return std::abs(a.b_i() - b.b_i()) <= tol &&
           std::abs(a.b_j() - b.b_j()) <= tol;
  };

  auto respond = [&](Operator op, double other) {
    const double hi = std::min(grid.upper, std::max(cap - other, 0.0));
    const double lo = std::min(grid.lower, hi);
    double best_b = lo;
    double best = -HUGE_VAL;
    for (double b : Linspace(lo, hi, grid.n)) {
      const BandwidthPair bw = op == Operator::kI ? BandwidthPair(b, other)
                                                  : BandwidthPair(other, b);
      const double v = OracleStageTwoProfit(market, bw, costs, regime, op);
      if (v > best) {
        best = v;
        best_b = b;
      }
    }
    return best_b;
  };

  DynamicsReport report;
  BandwidthPair current = start;
  int stable = 0;
  for (int round = 1; round <= max_iters; ++round) {
    const double bi = respond(Operator::kI, current.b_j());
    const double bj = respond(Operator::kJ, bi);
    const BandwidthPair next(bi, bj);
    report.rounds = round;
    stable = same(next, current) ? stable + 1 : 0;
    for (std::size_t k = 0; k + 1 < report.trajectory.size(); ++k) {
      if (same(report.trajectory[k], next) && !same(current, next)) {
        report.cycling = true;
      }
    }
    report.trajectory.push_back(next);
    current = next;
    if (stable >= kStableRounds) {
      report.converged = true;
      break;
    }
    if (report.cycling) break;
  }
  report.terminal = current;
  if (report.converged) {
    report.certificate =
        CertifyInvestment(market, costs, regime, grid, current);
  }
  return report;
}

}  // namespace duopoly
