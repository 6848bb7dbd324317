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

#ifndef DUOPOLY_USERS_H_
#define DUOPOLY_USERS_H_

// Last stage of the game: how users size their bandwidth purchase for a
// given price, and how the market splits between two operators.
//
// Every user facing price p buys in proportion to its characteristic g and
// ends up at the same SNR, so most quantities reduce to a per-unit-g scale:
//
//   high SNR:  demand g e^{-(1+p)},  SNR e^{1+p},  payoff g e^{-(1+p)}
//   general:   demand g / H(p),      SNR H(p),     payoff g (ln(1+H) - p) / H
//
// where H(p) is the positive root of ln(1+H) - H/(1+H) = p.

#include <string>
#include <vector>

#include "duopoly/model.h"

namespace duopoly {

// Data rate in nats of a user with characteristic g on bandwidth w.
// Zero bandwidth yields zero rate.
double Rate(double g, double w, SnrRegime regime);

// Payoff of buying w at price p: Rate(g, w) - p w. Used to check optimality.
double PayoffOfPurchase(double g, double w, double p, SnrRegime regime);

struct FixedPointSolution {
  double p;
  double h_of_p;
  double residual;  // |ln(1+H) - H/(1+H) - p|
};

// Inverse of SolveH: p(H) = ln(1+H) - H/(1+H).
double PriceForSnr(double h);

// Requires p > 0. Bracketed bisection followed by Newton polish using
// H'(p) = (1+H)^2 / H.
FixedPointSolution SolveH(double p);

// Demand, SNR and payoff per unit characteristic at price p. The general
// regime needs p > 0 (demand is unbounded at a free price).
double DemandScale(double p, SnrRegime regime);
double PayoffScale(double p, SnrRegime regime);
double UserSnr(double p, SnrRegime regime);

double OptimalDemand(double g, double p, SnrRegime regime);
double UserPayoff(double g, double p, SnrRegime regime);

// One user's optimal purchase at a price. The SNR is recomputed as g / demand
// rather than taken from the closed form.
struct UserOutcome {
  std::string id;
  double g;
  double demand;
  double snr;
  double payoff;
};

std::vector<UserOutcome> EvaluateUsers(const Market& market, double p,
                                       SnrRegime regime);

// Aggregate quantities of the split, without per-user bookkeeping.
struct DemandTotals {
  double preferred_i = 0.0;
  double preferred_j = 0.0;
  double realized_i = 0.0;
  double realized_j = 0.0;
};

DemandTotals ComputeDemandTotals(double g_total, const BandwidthPair& bw,
                                 const PricePair& prices, SnrRegime regime);

// Same split with the per-unit demand scales at p_i and p_j supplied by the
// caller (DemandScale values), for sweeps that revisit the same prices.
DemandTotals ComputeDemandTotals(double g_total, const BandwidthPair& bw,
                                 const PricePair& prices, double scale_i,
                                 double scale_j);

// A user's share of an operator's preferred or realized set. Fractions below
// one appear for the single marginal user cut by a binding supply.
struct SetMember {
  std::string id;
  double fraction;
};

struct DemandSplit {
  double preferred_i = 0.0;
  double preferred_j = 0.0;
  double realized_i = 0.0;
  double realized_j = 0.0;
  std::vector<SetMember> preferred_set_i;
  std::vector<SetMember> preferred_set_j;
  std::vector<SetMember> realized_set_i;
  std::vector<SetMember> realized_set_j;
};

// Totals follow the fluid model exactly. Set membership is a deterministic
// greedy fill in user order: at equal prices users alternate between the
// operators' preferred sets, and a binding supply serves users in order until
// the served characteristic reaches supply / demand-scale.
DemandSplit ComputeDemandSplit(const Market& market, const BandwidthPair& bw,
                               const PricePair& prices, SnrRegime regime);

}  // namespace duopoly

#endif  // DUOPOLY_USERS_H_
