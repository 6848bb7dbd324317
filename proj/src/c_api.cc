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

#include "duopoly/duopoly_c.h"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "duopoly/coordinated.h"
#include "duopoly/investment.h"
#include "duopoly/model.h"
#include "duopoly/oracle.h"
#include "duopoly/pricing.h"
#include "duopoly/users.h"

struct duo_market {
  std::vector<duopoly::UserProfile> users;
  // Rebuilt lazily after users change.
  mutable std::optional<duopoly::Market> market;

  const duopoly::Market& Get() const {
    if (!market) market.emplace(users);
    return *market;
  }
};

struct duo_table {
  std::vector<std::string> columns;
  std::vector<double> values;  // Row-major.
};

namespace {

using namespace duopoly;

thread_local std::string last_error;

duo_status Fail(duo_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, mapping library exceptions onto status codes.
template <typename F>
duo_status Guard(F&& body) {
  try {
    body();
    last_error.clear();
    return DUO_OK;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kValidation:
        return Fail(DUO_ERROR_VALIDATION, e.what());
      case ErrorCode::kDomain:
        return Fail(DUO_ERROR_DOMAIN, e.what());
      case ErrorCode::kSolver:
        return Fail(DUO_ERROR_SOLVER, e.what());
    }
    return Fail(DUO_ERROR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DUO_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DUO_ERROR_INTERNAL, e.what());
  } catch (...) {
    return Fail(DUO_ERROR_INTERNAL, "unknown error");
  }
}

#define DUO_REQUIRE(ptr)                                             \
  do {                                                               \
    if ((ptr) == nullptr) {                                          \
      return Fail(DUO_ERROR_NULL_ARGUMENT, #ptr " must not be NULL"); \
    }                                                                \
  } while (0)

SnrRegime ToRegime(duo_regime r) {
  switch (r) {
    case DUO_HIGH_SNR:
      return SnrRegime::kHighSnr;
    case DUO_GENERAL:
      return SnrRegime::kGeneral;
  }
  ThrowValidation("unknown SNR regime " + std::to_string(static_cast<int>(r)));
}

duo_cost_regime ToCostRegime(CostRegimeKind k) {
  switch (k) {
    case CostRegimeKind::kLowCosts:
      return DUO_LOW_COSTS;
    case CostRegimeKind::kHighComparable:
      return DUO_HIGH_COMPARABLE;
    case CostRegimeKind::kHighIncomparable:
      return DUO_HIGH_INCOMPARABLE;
  }
  return DUO_LOW_COSTS;
}

duo_operator ToOperator(std::optional<Operator> op) {
  if (!op) return -1;
  return *op == Operator::kI ? 0 : 1;
}

GridSpec ToGrid(const duo_grid& g) { return {g.lower, g.upper, g.n, g.epsilon}; }

duo_grid FromGrid(const GridSpec& g) {
  return {g.lower, g.upper, g.n, g.epsilon};
}

duo_certificate FromCertificate(const NashCertificate& c) {
  return {c.point_i,          c.point_j,          c.max_gain_i,
          c.max_gain_j,       c.best_deviation_i, c.best_deviation_j,
          c.is_epsilon_nash,  c.refined};
}

duo_table* NewTable(std::vector<std::string> columns) {
  auto* t = new duo_table;
  t->columns = std::move(columns);
  return t;
}

}  // namespace

extern "C" {

DUO_API const char* duo_last_error_message(void) { return last_error.c_str(); }

DUO_API const char* duo_status_name(duo_status status) {
  switch (status) {
    case DUO_OK:
      return "ok";
    case DUO_ERROR_NULL_ARGUMENT:
      return "null-argument";
    case DUO_ERROR_VALIDATION:
      return "validation";
    case DUO_ERROR_SOLVER:
      return "solver";
    case DUO_ERROR_REFUTED:
      return "refuted";
    case DUO_ERROR_DOMAIN:
      return "domain";
    case DUO_ERROR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

DUO_API const char* duo_version(void) { return "1.0.0"; }

// ---- Markets

DUO_API duo_status duo_market_create_aggregate(double g_total,
                                               duo_market** out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    auto m = std::make_unique<duo_market>();
    m->users.push_back(UserProfile::FromCharacteristic("aggregate", g_total));
    *out = m.release();
  });
}

DUO_API duo_status duo_market_create(duo_market** out) {
  DUO_REQUIRE(out);
  return Guard([&] { *out = new duo_market; });
}

DUO_API duo_status duo_market_add_user_physical(duo_market* market,
                                                const char* id, double p_max,
                                                double h, double n0) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(id);
  return Guard([&] {
    market->users.push_back(UserProfile::FromRadio(id, {p_max, h, n0}));
    market->market.reset();
  });
}

DUO_API duo_status duo_market_add_user_g(duo_market* market, const char* id,
                                         double g) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(id);
  return Guard([&] {
    market->users.push_back(UserProfile::FromCharacteristic(id, g));
    market->market.reset();
  });
}

DUO_API duo_status duo_market_g_total(const duo_market* market, double* out) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(out);
  return Guard([&] { *out = market->Get().g_total(); });
}

DUO_API duo_status duo_market_size(const duo_market* market, size_t* out) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(out);
  *out = market->users.size();
  return DUO_OK;
}

DUO_API void duo_market_destroy(duo_market* market) { delete market; }

// ---- Tables

DUO_API size_t duo_table_rows(const duo_table* table) {
  if (table == nullptr || table->columns.empty()) return 0;
  return table->values.size() / table->columns.size();
}

DUO_API size_t duo_table_cols(const duo_table* table) {
  return table == nullptr ? 0 : table->columns.size();
}

DUO_API const char* duo_table_column_name(const duo_table* table, size_t col) {
  if (table == nullptr || col >= table->columns.size()) return nullptr;
  return table->columns[col].c_str();
}

DUO_API double duo_table_value(const duo_table* table, size_t row,
                               size_t col) {
  if (table == nullptr || col >= table->columns.size() ||
      row >= duo_table_rows(table)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return table->values[row * table->columns.size() + col];
}

DUO_API void duo_table_destroy(duo_table* table) { delete table; }

// ---- Model

DUO_API duo_status duo_classify_costs(double c_i, double c_j,
                                      duo_cost_class* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const CostRegime r = ClassifyCostRegime(CostPair(c_i, c_j));
    *out = {ToCostRegime(r.kind), ToOperator(r.survivor)};
  });
}

// ---- Users

DUO_API duo_status duo_rate(double g, double w, duo_regime regime,
                            double* out) {
  DUO_REQUIRE(out);
  return Guard([&] { *out = Rate(g, w, ToRegime(regime)); });
}

DUO_API duo_status duo_optimal_demand(double g, double p, duo_regime regime,
                                      double* out) {
  DUO_REQUIRE(out);
  return Guard([&] { *out = OptimalDemand(g, p, ToRegime(regime)); });
}

DUO_API duo_status duo_user_payoff(double g, double p, duo_regime regime,
                                   double* out) {
  DUO_REQUIRE(out);
  return Guard([&] { *out = UserPayoff(g, p, ToRegime(regime)); });
}

DUO_API duo_status duo_user_snr(double p, duo_regime regime, double* out) {
  DUO_REQUIRE(out);
  return Guard([&] { *out = UserSnr(p, ToRegime(regime)); });
}

DUO_API duo_status duo_solve_h(double p, duo_fixed_point* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const FixedPointSolution s = SolveH(p);
    *out = {s.p, s.h_of_p, s.residual};
  });
}

DUO_API duo_status duo_demand_split(const duo_market* market, double b_i,
                                    double b_j, double p_i, double p_j,
                                    duo_regime regime, duo_demand_totals* out,
                                    double* realized_fraction_i,
                                    double* realized_fraction_j) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(out);
  return Guard([&] {
    const Market& m = market->Get();
    const DemandSplit s = ComputeDemandSplit(m, BandwidthPair(b_i, b_j),
                                             PricePair(p_i, p_j),
                                             ToRegime(regime));
    *out = {s.preferred_i, s.preferred_j, s.realized_i, s.realized_j};
    // Map member ids back onto market order.
    auto scatter = [&m](const std::vector<SetMember>& set, double* dst) {
      if (dst == nullptr) return;
      for (std::size_t k = 0; k < m.size(); ++k) {
        dst[k] = 0.0;
        for (const auto& member : set) {
          if (member.id == m.users()[k].id()) dst[k] += member.fraction;
        }
      }
    };
    scatter(s.realized_set_i, realized_fraction_i);
    scatter(s.realized_set_j, realized_fraction_j);
  });
}

// ---- Pricing

DUO_API duo_status duo_monopolist_price(double b, double g_total,
                                        duo_regime regime, double* out) {
  DUO_REQUIRE(out);
  return Guard([&] { *out = MonopolistPrice(b, g_total, ToRegime(regime)); });
}

DUO_API duo_status duo_pricing_equilibrium(double b_i, double b_j,
                                           double g_total, double c_i,
                                           double c_j, duo_regime regime,
                                           duo_pricing* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const PricingOutcome o =
        ComputePricingEquilibrium(BandwidthPair(b_i, b_j), g_total,
                                  CostPair(c_i, c_j), ToRegime(regime));
    duo_pricing r{DUO_PRICING_NONE, 0.0, 0.0, 0.0};
    if (const auto* u = std::get_if<UniquePositivePrice>(&o)) {
      r = {DUO_PRICING_UNIQUE, u->price, u->profits.i, u->profits.j};
    } else if (const auto* z = std::get_if<ZeroPrice>(&o)) {
      r = {DUO_PRICING_ZERO, 0.0, z->profits.i, z->profits.j};
    }
    *out = r;
  });
}

DUO_API duo_status duo_supply_threshold_compute(duo_supply_threshold* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const SupplyThreshold t = ComputeSupplyThreshold();
    *out = {t.price, t.supply_ratio};
  });
}

// ---- Investment

DUO_API duo_status duo_best_response(double b_other, double c_own,
                                     double g_total, duo_regime regime,
                                     double* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    *out = BestResponse(b_other, c_own, g_total, ToRegime(regime));
  });
}

DUO_API duo_status duo_investment_equilibrium(double c_i, double c_j,
                                              double g_total,
                                              duo_investment* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const InvestmentOutcome o =
        ComputeInvestmentEquilibrium(CostPair(c_i, c_j), g_total);
    duo_investment r{};
    r.survivor = -1;
    if (const auto* c = std::get_if<Continuum>(&o)) {
      r.kind = DUO_INVESTMENT_CONTINUUM;
      r.b_i = c->focal.equal_investment.bw.b_i();
      r.b_j = c->focal.equal_investment.bw.b_j();
      r.rho_min = c->rho_min;
      r.rho_max = c->rho_max;
      r.rho_equal_investment = c->focal.equal_investment.rho;
      r.rho_min_difference = c->focal.min_difference.rho;
      r.rho_equal_profit = c->focal.equal_profit.rho;
    } else if (const auto* u = std::get_if<UniqueInterior>(&o)) {
      r.kind = DUO_INVESTMENT_UNIQUE_INTERIOR;
      r.b_i = u->bw.b_i();
      r.b_j = u->bw.b_j();
    } else if (const auto* m = std::get_if<MonopolyCorner>(&o)) {
      r.kind = DUO_INVESTMENT_MONOPOLY_CORNER;
      r.b_i = m->bw.b_i();
      r.b_j = m->bw.b_j();
      r.survivor = ToOperator(m->survivor);
    }
    *out = r;
  });
}

DUO_API duo_status duo_equilibrium_summary(double c_i, double c_j,
                                           double g_total, int has_rho,
                                           double rho, duo_summary* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const EquilibriumSummary s = ComputeEquilibriumSummary(
        CostPair(c_i, c_j), g_total,
        has_rho ? std::optional<double>(rho) : std::nullopt);
    duo_summary r{};
    r.regime = ToCostRegime(s.regime.kind);
    r.survivor = ToOperator(s.regime.survivor);
    r.continuum = s.continuum;
    r.has_rho = s.rho.has_value();
    r.rho = s.rho.value_or(0.0);
    r.b_i = s.investments.b_i();
    r.b_j = s.investments.b_j();
    r.has_price_i = s.price_i.has_value();
    r.price_i = s.price_i.value_or(0.0);
    r.has_price_j = s.price_j.has_value();
    r.price_j = s.price_j.value_or(0.0);
    r.profit_i = s.profits.i;
    r.profit_j = s.profits.j;
    r.demand = s.per_user.demand;
    r.snr = s.per_user.snr;
    r.payoff = s.per_user.payoff;
    *out = r;
  });
}

DUO_API duo_status duo_general_equilibrium_solve(
    double c_i, double c_j, double g_total, duo_general_equilibrium* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const GeneralEquilibrium e =
        ComputeGeneralEquilibrium(CostPair(c_i, c_j), g_total);
    *out = {e.bw.b_i(),        e.bw.b_j(),        e.price,
            e.profits.i,       e.profits.j,       e.per_user.demand,
            e.per_user.snr,    e.per_user.payoff, e.residual,
            e.iterations};
  });
}

// ---- Coordinated benchmark

DUO_API duo_status duo_coordinated_optimum(double c_i, double c_j,
                                           double g_total,
                                           duo_coordinated* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const CoordinatedOutcome c =
        ComputeCoordinatedOptimum(CostPair(c_i, c_j), g_total);
    *out = {c.bw.b_i(), c.bw.b_j(), ToOperator(c.survivor), c.price,
            c.total_profit};
  });
}

DUO_API duo_status duo_profit_ratio(double c_i, double c_j, double g_total,
                                    duo_ratio* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const RatioReport r = ComputeProfitRatio(CostPair(c_i, c_j), g_total);
    *out = {ToCostRegime(r.regime.kind), r.ratio, r.worst_rho.has_value(),
            r.worst_rho.value_or(0.0),   r.duopoly_total,
            r.coordinated_total};
  });
}

DUO_API duo_status duo_min_ratio_scan(int grid_n, duo_min_ratio* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const MinRatioScan s = ScanMinimumRatio(grid_n);
    *out = {s.low_costs_grid_min,        s.low_costs_argmin_c_low,
            s.low_costs_argmin_c_high,   s.low_costs_limit,
            s.high_comparable_min,       s.high_comparable_argmin_delta,
            s.max_ratio};
  });
}

DUO_API duo_status duo_user_payoffs(double c_i, double c_j, double g_total,
                                    double* duopoly, double* coordinated) {
  DUO_REQUIRE(duopoly);
  DUO_REQUIRE(coordinated);
  return Guard([&] {
    const UserPayoffComparison c =
        CompareUserPayoffs(CostPair(c_i, c_j), g_total);
    *duopoly = c.duopoly;
    *coordinated = c.coordinated;
  });
}

DUO_API duo_status duo_effect_regions_compute(double resolution,
                                              duo_effect_regions* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const EffectRegions e = ComputeEffectRegions(resolution);
    *out = {e.resolution, e.ei_upper, e.cr_lower, e.strict_ei_upper,
            e.strict_cr_lower};
  });
}

DUO_API duo_status duo_ratio_curve(double delta, int samples,
                                   duo_table** out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    const std::vector<RatioPoint> curve = ComputeRatioCurve(delta, samples);
    std::unique_ptr<duo_table> t(
        NewTable({"c_low", "c_high", "ratio", "regime"}));
    for (const RatioPoint& p : curve) {
      const bool low = p.c_low + (p.c_low + delta) <= 1.0;
      t->values.insert(t->values.end(),
                       {p.c_low, p.c_low + delta, p.ratio, low ? 0.0 : 1.0});
    }
    *out = t.release();
  });
}

DUO_API duo_status duo_pricing_map(double g_total, duo_regime regime, int n,
                                   double extent, duo_table** out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    if (n < 2) ThrowValidation("pricing map needs n >= 2");
    if (!(extent > 0.0) || !std::isfinite(extent)) {
      ThrowValidation("pricing map extent must be positive");
    }
    if (!(g_total > 0.0) || !std::isfinite(g_total)) {
      ThrowValidation("aggregate characteristic must be positive");
    }
    const SnrRegime r = ToRegime(regime);
    // Costs do not affect which pricing outcome occurs.
    const CostPair costs(1.0, 1.0);
    std::unique_ptr<duo_table> t(NewTable({"b_i", "b_j", "label"}));
    t->values.reserve(static_cast<std::size_t>(n) * n * 3);
    // Cell centres keep every point off the both-zero corner.
    const double step = extent * g_total / n;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const BandwidthPair bw((a + 0.5) * step, (b + 0.5) * step);
        const PricingOutcome o = ComputePricingEquilibrium(bw, g_total, costs, r);
        double label = 0.0;
        if (std::holds_alternative<NoPricingEquilibrium>(o)) {
          label = r == SnrRegime::kHighSnr ? 1.0 : 2.0;
        } else if (std::holds_alternative<ZeroPrice>(o)) {
          label = 2.0;
        }
        t->values.insert(t->values.end(), {bw.b_i(), bw.b_j(), label});
      }
    }
    *out = t.release();
  });
}

// ---- Oracle

DUO_API duo_status duo_default_pricing_grid(double b_i, double b_j,
                                            double g_total, duo_regime regime,
                                            int n, double epsilon,
                                            duo_grid* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    *out = FromGrid(DefaultPricingGrid(BandwidthPair(b_i, b_j), g_total,
                                       ToRegime(regime), n, epsilon));
  });
}

DUO_API duo_status duo_default_investment_grid(double g_total,
                                               duo_regime regime, int n,
                                               double epsilon, duo_grid* out) {
  DUO_REQUIRE(out);
  return Guard([&] {
    *out = FromGrid(
        DefaultInvestmentGrid(g_total, ToRegime(regime), n, epsilon));
  });
}

DUO_API duo_status duo_certify_pricing(const duo_market* market, double b_i,
                                       double b_j, double c_i, double c_j,
                                       duo_regime regime, const duo_grid* grid,
                                       double p_i, double p_j,
                                       duo_certificate* out) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(grid);
  DUO_REQUIRE(out);
  return Guard([&] {
    *out = FromCertificate(CertifyPricing(
        market->Get(), BandwidthPair(b_i, b_j), CostPair(c_i, c_j),
        ToRegime(regime), ToGrid(*grid), PricePair(p_i, p_j)));
  });
}

DUO_API duo_status duo_certify_investment(const duo_market* market,
                                          double c_i, double c_j,
                                          duo_regime regime,
                                          const duo_grid* grid, double b_i,
                                          double b_j, duo_certificate* out) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(grid);
  DUO_REQUIRE(out);
  return Guard([&] {
    *out = FromCertificate(CertifyInvestment(
        market->Get(), CostPair(c_i, c_j), ToRegime(regime), ToGrid(*grid),
        BandwidthPair(b_i, b_j)));
  });
}

DUO_API duo_status duo_refute_symmetric_prices(const duo_market* market,
                                               double b_i, double b_j,
                                               double c_i, double c_j,
                                               duo_regime regime,
                                               const duo_grid* grid,
                                               duo_refutation* out) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(grid);
  DUO_REQUIRE(out);
  return Guard([&] {
    const SymmetricRefutation r = RefuteSymmetricPrices(
        market->Get(), BandwidthPair(b_i, b_j), CostPair(c_i, c_j),
        ToRegime(regime), ToGrid(*grid));
    *out = {r.candidates, r.survivors, r.min_max_gain};
  });
}

DUO_API duo_status duo_best_response_dynamics(
    const duo_market* market, double c_i, double c_j, duo_regime regime,
    const duo_grid* grid, double start_b_i, double start_b_j, int max_iters,
    duo_dynamics* out, duo_table** trajectory) {
  DUO_REQUIRE(market);
  DUO_REQUIRE(grid);
  DUO_REQUIRE(out);
  return Guard([&] {
    const DynamicsReport d = RunBestResponseDynamics(
        market->Get(), CostPair(c_i, c_j), ToRegime(regime), ToGrid(*grid),
        BandwidthPair(start_b_i, start_b_j), max_iters);
    std::unique_ptr<duo_table> t;
    if (trajectory != nullptr) {
      t.reset(NewTable({"round", "b_i", "b_j"}));
      for (std::size_t k = 0; k < d.trajectory.size(); ++k) {
        t->values.insert(t->values.end(),
                         {static_cast<double>(k + 1), d.trajectory[k].b_i(),
                          d.trajectory[k].b_j()});
      }
    }
    duo_dynamics r{};
    r.converged = d.converged;
    r.cycling = d.cycling;
    r.rounds = d.rounds;
    r.terminal_b_i = d.terminal ? d.terminal->b_i() : start_b_i;
    r.terminal_b_j = d.terminal ? d.terminal->b_j() : start_b_j;
    r.has_certificate = d.certificate.has_value();
    if (d.certificate) r.certificate = FromCertificate(*d.certificate);
    *out = r;
    if (trajectory != nullptr) *trajectory = t.release();
  });
}

}  // extern "C"
