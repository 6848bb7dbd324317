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

// Command-line front end to libduopoly.
//
//   duopoly equilibrium --ci 0.3 --cj 0.4 [--g 1 | --user P H N0 ...]
//   duopoly sweep ratio-curve|min-ratio|effect-regions|pricing-map
//   duopoly verify --ci 1 --cj 1 [--grid-n 2000] [--candidate-rho R]
//
// Every option may also come from a flat `key = value` file given with
// --config; flags on the command line override the file. Exit codes: 0 ok,
// 2 invalid input, 3 solver failure, 4 refuted equilibrium, 1 internal error.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "duopoly/duopoly_c.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;
constexpr int kExitRefuted = 4;

// ---- Records and output

using Value = std::variant<std::monostate, bool, long long, double,
                           std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

// Shortest representation that round-trips the value rounded to 12
// significant digits. Locale independent.
std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v,
                         std::chars_format::general, 12);
  double rounded = 0.0;
  std::from_chars(buf, r.ptr, rounded);
  r = std::to_chars(buf, buf + sizeof(buf), rounded);
  return std::string(buf, r.ptr);
}

std::string CsvCell(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long n) const { return std::to_string(n); }
    std::string operator()(double d) const { return FormatDouble(d); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::ordered_json JsonValue(const Value& v) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(long long n) const { return n; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      // Parse the formatted text back so JSON carries the rounded value.
      return nlohmann::ordered_json::parse(FormatDouble(d));
    }
    nlohmann::ordered_json operator()(const std::string& s) const {
      return s;
    }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::ordered_json JsonObject(const Record& r) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r) o[k] = JsonValue(v);
  return o;
}

enum class Format { kCsv, kJson };

// A report is a header record (scalars describing the run) plus optional
// rows. CSV prints the rows when there are any, otherwise the header as a
// single row. JSON prints one object with the rows under "rows".
struct Report {
  std::string name;
  Record header;
  std::vector<Record> rows;
};

void Write(const Report& report, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    o["report"] = report.name;
    for (const auto& [k, v] : report.header) o[k] = JsonValue(v);
    if (!report.rows.empty()) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const Record& r : report.rows) rows.push_back(JsonObject(r));
      o["rows"] = std::move(rows);
    }
    out << o.dump() << '\n';
    return;
  }
  const std::vector<Record> single{report.header};
  const std::vector<Record>& rows = report.rows.empty() ? single : report.rows;
  for (std::size_t k = 0; k < rows.front().size(); ++k) {
    out << (k ? "," : "") << rows.front()[k].first;
  }
  out << '\n';
  for (const Record& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      out << (k ? "," : "") << CsvCell(r[k].second);
    }
    out << '\n';
  }
}

// ---- Errors

struct Failure {
  int exit_code;
  std::string status;
  std::string message;
};

int ExitCodeFor(duo_status s) {
  switch (s) {
    case DUO_OK:
      return kExitOk;
    case DUO_ERROR_VALIDATION:
    case DUO_ERROR_DOMAIN:
      return kExitInvalid;
    case DUO_ERROR_SOLVER:
      return kExitSolver;
    case DUO_ERROR_REFUTED:
      return kExitRefuted;
    default:
      return kExitInternal;
  }
}

void Check(duo_status s) {
  if (s != DUO_OK) {
    throw Failure{ExitCodeFor(s), duo_status_name(s),
                  duo_last_error_message()};
  }
}

void Invalid(const std::string& message) {
  throw Failure{kExitInvalid, "validation", message};
}

// ---- Handles

struct MarketDeleter {
  void operator()(duo_market* m) const { duo_market_destroy(m); }
};
struct TableDeleter {
  void operator()(duo_table* t) const { duo_table_destroy(t); }
};
using MarketPtr = std::unique_ptr<duo_market, MarketDeleter>;
using TablePtr = std::unique_ptr<duo_table, TableDeleter>;

std::vector<Record> TableRows(const duo_table* t) {
  std::vector<Record> rows;
  const std::size_t cols = duo_table_cols(t);
  for (std::size_t r = 0; r < duo_table_rows(t); ++r) {
    Record rec;
    for (std::size_t c = 0; c < cols; ++c) {
      rec.emplace_back(duo_table_column_name(t, c), duo_table_value(t, r, c));
    }
    rows.push_back(std::move(rec));
  }
  return rows;
}

// ---- Scenario

struct Options {
  std::optional<double> ci;
  std::optional<double> cj;
  std::optional<double> g;
  std::vector<std::array<double, 3>> users;
  std::string regime = "high";
  std::optional<double> rho;
  int grid_n = 2000;
  std::optional<double> epsilon_scale;
  std::string format = "csv";
  std::string out;

  std::string sweep_kind;
  double delta = 0.3;
  int n = 200;
  double resolution = 0.0065;
  double extent = 0.6;
  std::optional<double> candidate_rho;
  std::optional<double> bi;
  std::optional<double> bj;
};

struct Scenario {
  MarketPtr market;
  double g_total = 0.0;
  bool aggregate = true;
  duo_regime regime = DUO_HIGH_SNR;
};

duo_regime ParseRegime(const std::string& s) {
  if (s == "high" || s == "high-snr") return DUO_HIGH_SNR;
  if (s == "general") return DUO_GENERAL;
  Invalid("unknown regime '" + s + "' (expected high or general)");
  return DUO_HIGH_SNR;
}

std::string RegimeName(duo_regime r) {
  return r == DUO_HIGH_SNR ? "high" : "general";
}

std::string CostRegimeName(duo_cost_regime r) {
  switch (r) {
    case DUO_LOW_COSTS:
      return "low-costs";
    case DUO_HIGH_COMPARABLE:
      return "high-comparable";
    case DUO_HIGH_INCOMPARABLE:
      return "high-incomparable";
  }
  return "unknown";
}

Value OperatorValue(duo_operator op) {
  if (op < 0) return std::monostate{};
  return std::string(op == 0 ? "i" : "j");
}

Scenario BuildScenario(const Options& o) {
  Scenario s;
  s.regime = ParseRegime(o.regime);
  if (o.g.has_value() == !o.users.empty()) {
    Invalid("give exactly one of --g or --user");
  }
  duo_market* m = nullptr;
  if (o.g) {
    Check(duo_market_create_aggregate(*o.g, &m));
    s.market.reset(m);
  } else {
    Check(duo_market_create(&m));
    s.market.reset(m);
    s.aggregate = false;
    for (std::size_t k = 0; k < o.users.size(); ++k) {
      const auto& u = o.users[k];
      const std::string id = "u" + std::to_string(k + 1);
      Check(duo_market_add_user_physical(m, id.c_str(), u[0], u[1], u[2]));
    }
  }
  Check(duo_market_g_total(s.market.get(), &s.g_total));
  return s;
}

std::pair<double, double> Costs(const Options& o) {
  if (!o.ci || !o.cj) Invalid("--ci and --cj are required");
  return {*o.ci, *o.cj};
}

// ---- equilibrium

Report Equilibrium(const Options& o) {
  const Scenario s = BuildScenario(o);
  const auto [ci, cj] = Costs(o);
  duo_cost_class cls;
  Check(duo_classify_costs(ci, cj, &cls));

  Record head{{"snr_regime", RegimeName(s.regime)},
              {"cost_regime", CostRegimeName(cls.regime)},
              {"survivor", OperatorValue(cls.survivor)},
              {"c_i", ci},
              {"c_j", cj},
              {"g_total", s.g_total}};
  double price = 0.0;
  if (s.regime == DUO_HIGH_SNR) {
    duo_summary r;
    Check(duo_equilibrium_summary(ci, cj, s.g_total, o.rho.has_value(),
                                  o.rho.value_or(0.0), &r));
    head.insert(head.end(),
                {{"continuum", static_cast<bool>(r.continuum)},
                 {"rho", r.has_rho ? Value(r.rho) : Value()},
                 {"b_i", r.b_i},
                 {"b_j", r.b_j},
                 {"price_i", r.has_price_i ? Value(r.price_i) : Value()},
                 {"price_j", r.has_price_j ? Value(r.price_j) : Value()},
                 {"profit_i", r.profit_i},
                 {"profit_j", r.profit_j},
                 {"demand", r.demand},
                 {"snr", r.snr},
                 {"payoff", r.payoff}});
    price = r.has_price_i ? r.price_i : r.price_j;
  } else {
    if (o.rho) Invalid("--rho applies to the high-SNR regime only");
    duo_general_equilibrium r;
    Check(duo_general_equilibrium_solve(ci, cj, s.g_total, &r));
    head.insert(head.end(),
                {{"continuum", false},
                 {"rho", Value()},
                 {"b_i", r.b_i},
                 {"b_j", r.b_j},
                 {"price_i", r.b_i > 0.0 ? Value(r.price) : Value()},
                 {"price_j", r.b_j > 0.0 ? Value(r.price) : Value()},
                 {"profit_i", r.profit_i},
                 {"profit_j", r.profit_j},
                 {"demand", r.demand},
                 {"snr", r.snr},
                 {"payoff", r.payoff}});
    price = r.price;
  }

  Report report{"equilibrium", head, {}};
  if (!s.aggregate) {
    // One row per user, with that user's own purchase.
    for (std::size_t k = 0; k < o.users.size(); ++k) {
      const auto& u = o.users[k];
      const double g = u[0] * u[1] / u[2];
      double demand = 0.0;
      double payoff = 0.0;
      Check(duo_optimal_demand(g, price, s.regime, &demand));
      Check(duo_user_payoff(g, price, s.regime, &payoff));
      Record row = head;
      row.insert(row.end(), {{"user_id", "u" + std::to_string(k + 1)},
                             {"user_g", g},
                             {"user_demand", demand},
                             {"user_snr", g / demand},
                             {"user_payoff", payoff}});
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

// ---- sweep

Report Sweep(const Options& o) {
  const std::string& kind = o.sweep_kind;
  if (kind == "ratio-curve") {
    duo_table* t = nullptr;
    Check(duo_ratio_curve(o.delta, o.n, &t));
    TablePtr table(t);
    Report r{"ratio-curve", {{"delta", o.delta}, {"n", (long long)o.n}}, {}};
    r.rows = TableRows(t);
    for (Record& row : r.rows) {
      // Regime codes print as names.
      for (auto& [k, v] : row) {
        if (k == "regime") {
          v = std::get<double>(v) == 0.0 ? "low-costs" : "high-comparable";
        }
      }
    }
    return r;
  }
  if (kind == "min-ratio") {
    duo_min_ratio m;
    Check(duo_min_ratio_scan(o.n, &m));
    return {"min-ratio",
            {{"grid_n", (long long)o.n},
             {"low_costs_grid_min", m.low_costs_grid_min},
             {"low_costs_argmin_c_low", m.low_costs_argmin_c_low},
             {"low_costs_argmin_c_high", m.low_costs_argmin_c_high},
             {"low_costs_limit", m.low_costs_limit},
             {"high_comparable_min", m.high_comparable_min},
             {"high_comparable_argmin_delta", m.high_comparable_argmin_delta},
             {"max_ratio", m.max_ratio}},
            {}};
  }
  if (kind == "effect-regions") {
    duo_effect_regions e;
    Check(duo_effect_regions_compute(o.resolution, &e));
    return {"effect-regions",
            {{"resolution", e.resolution},
             {"ei_upper", e.ei_upper},
             {"cr_lower", e.cr_lower},
             {"strict_ei_upper", e.strict_ei_upper},
             {"strict_cr_lower", e.strict_cr_lower}},
            {}};
  }
  if (kind == "pricing-map") {
    const duo_regime regime = ParseRegime(o.regime);
    const double g = o.g.value_or(1.0);
    duo_table* t = nullptr;
    Check(duo_pricing_map(g, regime, o.n, o.extent, &t));
    TablePtr table(t);
    Report r{"pricing-map",
             {{"snr_regime", RegimeName(regime)},
              {"g_total", g},
              {"n", (long long)o.n},
              {"extent", o.extent}},
             {}};
    r.rows = TableRows(t);
    static const char* kLabels[] = {"L", "M", "H"};
    for (Record& row : r.rows) {
      for (auto& [k, v] : row) {
        if (k == "label") v = kLabels[static_cast<int>(std::get<double>(v))];
      }
    }
    return r;
  }
  Invalid("unknown sweep kind '" + kind + "'");
  return {};
}

// ---- verify

Record CertificateRow(const std::string& check, const duo_certificate& c,
                      double epsilon) {
  return {{"check", check},
          {"point_i", c.point_i},
          {"point_j", c.point_j},
          {"max_gain_i", c.max_gain_i},
          {"max_gain_j", c.max_gain_j},
          {"best_deviation_i", c.best_deviation_i},
          {"best_deviation_j", c.best_deviation_j},
          {"epsilon", epsilon},
          {"is_epsilon_nash", static_cast<bool>(c.is_epsilon_nash)},
          {"refined", static_cast<bool>(c.refined)},
          {"result", c.is_epsilon_nash ? "certified" : "refuted"}};
}

// Checks the pricing stage at bw against the analytic pricing outcome.
// Returns false on a refutation.
bool VerifyPricing(const Scenario& s, double ci, double cj, double bi,
                   double bj, double epsilon, int grid_n,
                   std::vector<Record>& rows) {
  duo_pricing analytic;
  Check(duo_pricing_equilibrium(bi, bj, s.g_total, ci, cj, s.regime,
                                &analytic));
  duo_grid grid;
  Check(duo_default_pricing_grid(bi, bj, s.g_total, s.regime, grid_n, epsilon,
                                 &grid));
  if (analytic.kind == DUO_PRICING_NONE) {
    duo_refutation r;
    Check(duo_refute_symmetric_prices(s.market.get(), bi, bj, ci, cj,
                                      s.regime, &grid, &r));
    const bool confirmed = r.survivors == 0;
    rows.push_back({{"check", "pricing-nonexistence"},
                    {"point_i", bi},
                    {"point_j", bj},
                    {"max_gain_i", r.min_max_gain},
                    {"max_gain_j", Value()},
                    {"best_deviation_i", Value()},
                    {"best_deviation_j", Value()},
                    {"epsilon", epsilon},
                    {"is_epsilon_nash", false},
                    {"refined", false},
                    {"result", confirmed ? "no equilibrium confirmed"
                                         : "symmetric equilibrium found"}});
    return confirmed;
  }
  double p_i = analytic.price;
  double p_j = analytic.price;
  if (analytic.kind == DUO_PRICING_UNIQUE && (bi == 0.0 || bj == 0.0)) {
    Check(duo_monopolist_price(bi + bj, s.g_total, s.regime, &p_i));
    p_j = p_i;
  }
  duo_certificate c;
  Check(duo_certify_pricing(s.market.get(), bi, bj, ci, cj, s.regime, &grid,
                            p_i, p_j, &c));
  rows.push_back(CertificateRow("pricing", c, epsilon));
  return c.is_epsilon_nash;
}

int Verify(const Options& o, Report& report) {
  const Scenario s = BuildScenario(o);
  const auto [ci, cj] = Costs(o);
  const double scale = o.epsilon_scale.value_or(s.g_total * std::exp(-2.0));
  if (!(scale > 0.0)) Invalid("--epsilon-scale must be positive");
  const double epsilon = 1e-3 * scale;
  report = {"verify",
            {{"snr_regime", RegimeName(s.regime)},
             {"c_i", ci},
             {"c_j", cj},
             {"g_total", s.g_total},
             {"grid_n", (long long)o.grid_n},
             {"epsilon", epsilon}},
            {}};
  bool ok = true;

  if (o.bi || o.bj) {
    // Pricing-point check only.
    if (!o.bi || !o.bj) Invalid("--bi and --bj go together");
    ok = VerifyPricing(s, ci, cj, *o.bi, *o.bj, epsilon, o.grid_n,
                       report.rows);
    return ok ? kExitOk : kExitRefuted;
  }

  double bi = 0.0;
  double bj = 0.0;
  if (o.candidate_rho) {
    if (s.regime != DUO_HIGH_SNR) {
      Invalid("--candidate-rho applies to the high-SNR regime only");
    }
    if (!(*o.candidate_rho >= 0.0 && *o.candidate_rho <= 1.0)) {
      Invalid("--candidate-rho must lie in [0, 1]");
    }
    // Injected as-is, without checking it against the continuum.
    bi = *o.candidate_rho * s.g_total * std::exp(-2.0);
    bj = (1.0 - *o.candidate_rho) * s.g_total * std::exp(-2.0);
  } else if (s.regime == DUO_HIGH_SNR) {
    duo_summary r;
    Check(duo_equilibrium_summary(ci, cj, s.g_total, o.rho.has_value(),
                                  o.rho.value_or(0.0), &r));
    bi = r.b_i;
    bj = r.b_j;
  } else {
    duo_general_equilibrium r;
    Check(duo_general_equilibrium_solve(ci, cj, s.g_total, &r));
    bi = r.b_i;
    bj = r.b_j;
  }

  duo_grid grid;
  Check(duo_default_investment_grid(s.g_total, s.regime, o.grid_n, epsilon,
                                    &grid));
  duo_certificate c;
  Check(duo_certify_investment(s.market.get(), ci, cj, s.regime, &grid, bi,
                               bj, &c));
  report.rows.push_back(CertificateRow("investment", c, epsilon));
  ok = c.is_epsilon_nash;
  ok = VerifyPricing(s, ci, cj, bi, bj, epsilon, o.grid_n, report.rows) && ok;
  return ok ? kExitOk : kExitRefuted;
}

void WriteError(const Failure& f) {
  nlohmann::ordered_json e = {{"error", f.status},
                              {"exit_code", f.exit_code},
                              {"message", f.message}};
  std::cerr << e.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of the duopoly spectrum-leasing game."};
  app.set_config("--config", "", "Flat key = value file of option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--ci", o.ci, "Leasing cost of operator i");
  app.add_option("--cj", o.cj, "Leasing cost of operator j");
  app.add_option("--g", o.g, "Aggregate user characteristic G");
  app.add_option("--user", o.users,
                 "User given by P_MAX H N0 (repeatable; replaces --g)")
      ->delimiter(',');
  app.add_option("--regime", o.regime, "high or general")
      ->capture_default_str();
  app.add_option("--rho", o.rho,
                 "Share of operator i on the low-costs continuum");
  app.add_option("--grid-n", o.grid_n, "Oracle grid points per axis")
      ->capture_default_str();
  app.add_option("--epsilon-scale", o.epsilon_scale,
                 "Profit scale S; epsilon = 1e-3 S (default G e^-2)");
  app.add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--delta", o.delta, "Cost difference for ratio-curve")
      ->capture_default_str();
  app.add_option("--n", o.n, "Samples or grid size for sweeps")
      ->capture_default_str();
  app.add_option("--resolution", o.resolution,
                 "Flatness resolution for effect-regions")
      ->capture_default_str();
  app.add_option("--extent", o.extent,
                 "Pricing-map axis length as a multiple of G")
      ->capture_default_str();
  app.add_option("--candidate-rho", o.candidate_rho,
                 "Verify this continuum share instead of the analytic one");
  app.add_option("--bi", o.bi, "Verify pricing at this B_i only");
  app.add_option("--bj", o.bj, "Verify pricing at this B_j only");

  auto* equilibrium =
      app.add_subcommand("equilibrium", "Single-point equilibrium report");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->add_option("kind", o.sweep_kind, "Sweep kind")
      ->required()
      ->check(CLI::IsMember(
          {"ratio-curve", "min-ratio", "effect-regions", "pricing-map"}));
  auto* verify =
      app.add_subcommand("verify", "Brute-force check of the equilibrium");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    WriteError({kExitInvalid, "validation", e.what()});
    return kExitInvalid;
  }

  const Format format = o.format == "json" ? Format::kJson : Format::kCsv;
  int code = kExitOk;
  Report report;
  try {
    if (equilibrium->parsed()) {
      report = Equilibrium(o);
    } else if (sweep->parsed()) {
      report = Sweep(o);
    } else if (verify->parsed()) {
      code = Verify(o, report);
    }
  } catch (const Failure& f) {
    WriteError(f);
    return f.exit_code;
  }

  std::ostringstream text;
  Write(report, format, text);
  if (o.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    file << text.str();
    if (!file) {
      WriteError({kExitInternal, "internal", "cannot write " + o.out});
      return kExitInternal;
    }
  }
  if (code == kExitRefuted) {
    WriteError({kExitRefuted, "refuted",
                "a profitable deviation exceeds epsilon; see the rows marked "
                "refuted"});
  }
  return code;
}
