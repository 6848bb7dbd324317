/* Copyright 2026 The Spectrum Duopoly Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DUOPOLY_DUOPOLY_C_H_
#define DUOPOLY_DUOPOLY_C_H_

/* C interface to the duopoly spectrum-leasing engine.
 *
 * Every function returns a duo_status. Results are written through out
 * pointers only on DUO_OK. On failure, duo_last_error_message() describes the
 * problem for the calling thread until the next call on that thread.
 *
 * Markets and tables are opaque handles owned by the caller and released
 * with the matching *_destroy function. Handles are not shared between
 * threads by the library; distinct handles may be used concurrently.
 */

#include <stddef.h>

#if defined(DUO_BUILDING_LIBRARY)
#define DUO_API __attribute__((visibility("default")))
#else
#define DUO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum duo_status {
  DUO_OK = 0,
  DUO_ERROR_NULL_ARGUMENT = 1,
  DUO_ERROR_VALIDATION = 2,
  DUO_ERROR_SOLVER = 3,
  DUO_ERROR_REFUTED = 4,
  DUO_ERROR_DOMAIN = 5,
  DUO_ERROR_INTERNAL = 6
} duo_status;

typedef enum duo_regime { DUO_HIGH_SNR = 0, DUO_GENERAL = 1 } duo_regime;

typedef enum duo_cost_regime {
  DUO_LOW_COSTS = 0,
  DUO_HIGH_COMPARABLE = 1,
  DUO_HIGH_INCOMPARABLE = 2
} duo_cost_regime;

/* Operator index: 0 for i, 1 for j, -1 for none. */
typedef int duo_operator;

DUO_API const char* duo_last_error_message(void);
DUO_API const char* duo_status_name(duo_status status);
DUO_API const char* duo_version(void);

/* ---- Markets ---------------------------------------------------------- */

typedef struct duo_market duo_market;

/* A single aggregate user with characteristic g_total. */
DUO_API duo_status duo_market_create_aggregate(double g_total,
                                               duo_market** out);
/* An empty builder; add at least one user before use. */
DUO_API duo_status duo_market_create(duo_market** out);
DUO_API duo_status duo_market_add_user_physical(duo_market* market,
                                                const char* id, double p_max,
                                                double h, double n0);
DUO_API duo_status duo_market_add_user_g(duo_market* market, const char* id,
                                         double g);
DUO_API duo_status duo_market_g_total(const duo_market* market, double* out);
DUO_API duo_status duo_market_size(const duo_market* market, size_t* out);
DUO_API void duo_market_destroy(duo_market* market);

/* ---- Tables ----------------------------------------------------------- */

/* Row-major numeric table with named columns. */
typedef struct duo_table duo_table;

DUO_API size_t duo_table_rows(const duo_table* table);
DUO_API size_t duo_table_cols(const duo_table* table);
/* NULL when col is out of range. */
DUO_API const char* duo_table_column_name(const duo_table* table, size_t col);
/* NaN when out of range. */
DUO_API double duo_table_value(const duo_table* table, size_t row, size_t col);
DUO_API void duo_table_destroy(duo_table* table);

/* ---- Model ------------------------------------------------------------ */

typedef struct duo_cost_class {
  duo_cost_regime regime;
  duo_operator survivor; /* Set for DUO_HIGH_INCOMPARABLE only. */
} duo_cost_class;

DUO_API duo_status duo_classify_costs(double c_i, double c_j,
                                      duo_cost_class* out);

/* ---- Users ------------------------------------------------------------ */

DUO_API duo_status duo_rate(double g, double w, duo_regime regime,
                            double* out);
DUO_API duo_status duo_optimal_demand(double g, double p, duo_regime regime,
                                      double* out);
DUO_API duo_status duo_user_payoff(double g, double p, duo_regime regime,
                                   double* out);
DUO_API duo_status duo_user_snr(double p, duo_regime regime, double* out);

typedef struct duo_fixed_point {
  double p;
  double h_of_p;
  double residual;
} duo_fixed_point;

DUO_API duo_status duo_solve_h(double p, duo_fixed_point* out);

typedef struct duo_demand_totals {
  double preferred_i;
  double preferred_j;
  double realized_i;
  double realized_j;
} duo_demand_totals;

/* Per-user realized fractions are optional: pass NULL to skip, otherwise
 * arrays with one slot per market user (market order). */
DUO_API duo_status duo_demand_split(const duo_market* market, double b_i,
                                    double b_j, double p_i, double p_j,
                                    duo_regime regime, duo_demand_totals* out,
                                    double* realized_fraction_i,
                                    double* realized_fraction_j);

/* ---- Pricing ---------------------------------------------------------- */

typedef enum duo_pricing_kind {
  DUO_PRICING_UNIQUE = 0,
  DUO_PRICING_NONE = 1,
  DUO_PRICING_ZERO = 2
} duo_pricing_kind;

typedef struct duo_pricing {
  duo_pricing_kind kind;
  double price; /* Shared price; 0 unless DUO_PRICING_UNIQUE. */
  double profit_i;
  double profit_j;
} duo_pricing;

DUO_API duo_status duo_monopolist_price(double b, double g_total,
                                        duo_regime regime, double* out);
DUO_API duo_status duo_pricing_equilibrium(double b_i, double b_j,
                                           double g_total, double c_i,
                                           double c_j, duo_regime regime,
                                           duo_pricing* out);

typedef struct duo_supply_threshold {
  double price;
  double supply_ratio;
} duo_supply_threshold;

DUO_API duo_status duo_supply_threshold_compute(duo_supply_threshold* out);

/* ---- Investment ------------------------------------------------------- */

DUO_API duo_status duo_best_response(double b_other, double c_own,
                                     double g_total, duo_regime regime,
                                     double* out);

typedef enum duo_investment_kind {
  DUO_INVESTMENT_CONTINUUM = 0,
  DUO_INVESTMENT_UNIQUE_INTERIOR = 1,
  DUO_INVESTMENT_MONOPOLY_CORNER = 2
} duo_investment_kind;

typedef struct duo_investment {
  duo_investment_kind kind;
  double b_i; /* Focal (equal-investment) point for the continuum. */
  double b_j;
  double rho_min; /* Continuum only. */
  double rho_max;
  double rho_equal_investment;
  double rho_min_difference;
  double rho_equal_profit;
  duo_operator survivor; /* Monopoly corner only. */
} duo_investment;

DUO_API duo_status duo_investment_equilibrium(double c_i, double c_j,
                                              double g_total,
                                              duo_investment* out);

typedef struct duo_summary {
  duo_cost_regime regime;
  duo_operator survivor;
  int continuum;
  int has_rho;
  double rho;
  double b_i;
  double b_j;
  int has_price_i;
  double price_i;
  int has_price_j;
  double price_j;
  double profit_i;
  double profit_j;
  double demand; /* Per unit characteristic. */
  double snr;
  double payoff; /* Per unit characteristic. */
} duo_summary;

/* has_rho = 0 selects the focal point in the low-costs regime. */
DUO_API duo_status duo_equilibrium_summary(double c_i, double c_j,
                                           double g_total, int has_rho,
                                           double rho, duo_summary* out);

typedef struct duo_general_equilibrium {
  double b_i;
  double b_j;
  double price;
  double profit_i;
  double profit_j;
  double demand;
  double snr;
  double payoff;
  double residual;
  int iterations;
} duo_general_equilibrium;

DUO_API duo_status duo_general_equilibrium_solve(
    double c_i, double c_j, double g_total, duo_general_equilibrium* out);

/* ---- Coordinated benchmark -------------------------------------------- */

typedef struct duo_coordinated {
  double b_i;
  double b_j;
  duo_operator survivor;
  double price;
  double total_profit;
} duo_coordinated;

DUO_API duo_status duo_coordinated_optimum(double c_i, double c_j,
                                           double g_total,
                                           duo_coordinated* out);

typedef struct duo_ratio {
  duo_cost_regime regime;
  double ratio;
  int has_worst_rho;
  double worst_rho;
  double duopoly_total;
  double coordinated_total;
} duo_ratio;

DUO_API duo_status duo_profit_ratio(double c_i, double c_j, double g_total,
                                    duo_ratio* out);

typedef struct duo_min_ratio {
  double low_costs_grid_min;
  double low_costs_argmin_c_low;
  double low_costs_argmin_c_high;
  double low_costs_limit;
  double high_comparable_min;
  double high_comparable_argmin_delta;
  double max_ratio;
} duo_min_ratio;

DUO_API duo_status duo_min_ratio_scan(int grid_n, duo_min_ratio* out);

DUO_API duo_status duo_user_payoffs(double c_i, double c_j, double g_total,
                                    double* duopoly, double* coordinated);

typedef struct duo_effect_regions {
  double resolution;
  double ei_upper;
  double cr_lower;
  double strict_ei_upper;
  double strict_cr_lower;
} duo_effect_regions;

DUO_API duo_status duo_effect_regions_compute(double resolution,
                                              duo_effect_regions* out);

/* Columns: c_low, c_high, ratio, regime (0 low costs, 1 high comparable). */
DUO_API duo_status duo_ratio_curve(double delta, int samples, duo_table** out);

/* Columns: b_i, b_j, label (0 unique price, 1 no equilibrium, 2 zero
 * price). The grid spans [0, extent * G]^2 with n points per axis. */
DUO_API duo_status duo_pricing_map(double g_total, duo_regime regime, int n,
                                   double extent, duo_table** out);

/* ---- Oracle ----------------------------------------------------------- */

typedef struct duo_grid {
  double lower;
  double upper;
  int n;
  double epsilon;
} duo_grid;

typedef struct duo_certificate {
  double point_i;
  double point_j;
  double max_gain_i;
  double max_gain_j;
  double best_deviation_i;
  double best_deviation_j;
  int is_epsilon_nash;
  int refined;
} duo_certificate;

DUO_API duo_status duo_default_pricing_grid(double b_i, double b_j,
                                            double g_total, duo_regime regime,
                                            int n, double epsilon,
                                            duo_grid* out);
DUO_API duo_status duo_default_investment_grid(double g_total,
                                               duo_regime regime, int n,
                                               double epsilon, duo_grid* out);

DUO_API duo_status duo_certify_pricing(const duo_market* market, double b_i,
                                       double b_j, double c_i, double c_j,
                                       duo_regime regime, const duo_grid* grid,
                                       double p_i, double p_j,
                                       duo_certificate* out);
DUO_API duo_status duo_certify_investment(const duo_market* market,
                                          double c_i, double c_j,
                                          duo_regime regime,
                                          const duo_grid* grid, double b_i,
                                          double b_j, duo_certificate* out);

typedef struct duo_refutation {
  int candidates;
  int survivors;
  double min_max_gain;
} duo_refutation;

DUO_API duo_status duo_refute_symmetric_prices(const duo_market* market,
                                               double b_i, double b_j,
                                               double c_i, double c_j,
                                               duo_regime regime,
                                               const duo_grid* grid,
                                               duo_refutation* out);

typedef struct duo_dynamics {
  int converged;
  int cycling;
  int rounds;
  double terminal_b_i;
  double terminal_b_j;
  int has_certificate;
  duo_certificate certificate;
} duo_dynamics;

/* trajectory may be NULL; otherwise it receives a table with columns round,
 * b_i, b_j. Non-convergence is reported in out, not as an error. */
DUO_API duo_status duo_best_response_dynamics(
    const duo_market* market, double c_i, double c_j, duo_regime regime,
    const duo_grid* grid, double start_b_i, double start_b_j, int max_iters,
    duo_dynamics* out, duo_table** trajectory);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DUOPOLY_DUOPOLY_C_H_ */
