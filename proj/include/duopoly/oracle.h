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

#ifndef DUOPOLY_ORACLE_H_
#define DUOPOLY_ORACLE_H_

// Brute-force equilibrium checks that do not trust any closed form.
//
// Revenues come from the user stage's demand split only. Stage-I profits use
// the shared price found by bisecting aggregate preferred demand against the
// total supply, never the pricing formulas. A candidate is certified when no
// grid deviation improves either operator's profit by more than epsilon.

#include <optional>
#include <vector>

#include "duopoly/model.h"

namespace duopoly {

struct GridSpec {
  double lower;
  double upper;
  int n;           // >= 50
  double epsilon;  // Absolute, in profit units.
};

// Throws a validation error unless n >= 50, epsilon > 0 and lower < upper.
void ValidateGrid(const GridSpec& grid);

// Profit scale G e^{-2} used to express epsilon.
double DefaultEpsilonScale(double g_total);

// Price grid over [lower, clearing price of the smaller positive supply + 2];
// lower is 0 for high SNR and a small positive price for the general regime.
GridSpec DefaultPricingGrid(const BandwidthPair& bw, double g_total,
                            SnrRegime regime, int n, double epsilon);

// Investment grid over [0, coupled cap].
GridSpec DefaultInvestmentGrid(double g_total, SnrRegime regime, int n,
                               double epsilon);

struct NashCertificate {
  double point_i = 0.0;
  double point_j = 0.0;
  double max_gain_i = 0.0;
  double max_gain_j = 0.0;
  double best_deviation_i = 0.0;
  double best_deviation_j = 0.0;
  bool is_epsilon_nash = false;
  // A deviation within two cells of the candidate triggered a 10x local
  // rescan for at least one operator.
  bool refined = false;
};

// Stage II: checks each operator's revenue over all grid prices while the
// other keeps its candidate price.
NashCertificate CertifyPricing(const Market& market, const BandwidthPair& bw,
                               const CostPair& costs, SnrRegime regime,
                               const GridSpec& grid,
                               const PricePair& candidate);

// Stage-I profit of one operator, from the market-clearing shared price.
double OracleStageTwoProfit(const Market& market, const BandwidthPair& bw,
                            const CostPair& costs, SnrRegime regime,
                            Operator op);

// Stage I: deviations range over [lower, min(upper, cap - b_other)].
NashCertificate CertifyInvestment(const Market& market, const CostPair& costs,
                                  SnrRegime regime, const GridSpec& grid,
                                  const BandwidthPair& candidate);

struct SymmetricRefutation {
  int candidates = 0;
  int survivors = 0;
  std::optional<double> first_survivor;
  // Smallest best-deviation gain seen over all symmetric candidates.
  double min_max_gain = 0.0;
};

// Certifies every symmetric grid price (p, p). Zero survivors confirms that
// no pricing equilibrium exists at grid resolution.
SymmetricRefutation RefuteSymmetricPrices(const Market& market,
                                          const BandwidthPair& bw,
                                          const CostPair& costs,
                                          SnrRegime regime,
                                          const GridSpec& grid);

struct DynamicsReport {
  std::vector<BandwidthPair> trajectory;  // One entry per completed round.
  std::optional<BandwidthPair> terminal;
  bool converged = false;  // Terminal point unchanged for 3 rounds.
  bool cycling = false;    // A non-consecutive repeat was detected.
  int rounds = 0;
  std::optional<NashCertificate> certificate;  // Set when converged.
};

// Alternating discrete best responses (i then j each round) on the grid of
// each operator's feasible interval. Non-convergence is reported, not thrown.
DynamicsReport RunBestResponseDynamics(const Market& market,
                                       const CostPair& costs, SnrRegime regime,
                                       const GridSpec& grid,
                                       const BandwidthPair& start,
                                       int max_iters);

}  // namespace duopoly

#endif  // DUOPOLY_ORACLE_H_
