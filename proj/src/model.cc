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

#include "duopoly/model.h"

#include <cmath>
#include <numeric>
#include <sstream>

namespace duopoly {
namespace {

bool IsFinitePositive(double x) { return std::isfinite(x) && x > 0.0; }
bool IsFiniteNonNegative(double x) { return std::isfinite(x) && x >= 0.0; }

std::string Describe(std::string_view name, double value) {
  std::ostringstream out;
  out << name << " = " << value;
  return out.str();
}

}  // namespace

void ThrowValidation(const std::string& what) {
  throw Error(ErrorCode::kValidation, what);
}
void ThrowDomain(const std::string& what) {
  throw Error(ErrorCode::kDomain, what);
}
void ThrowSolver(const std::string& what) {
  throw Error(ErrorCode::kSolver, what);
}

Operator Other(Operator op) {
  return op == Operator::kI ? Operator::kJ : Operator::kI;
}

std::string_view OperatorName(Operator op) {
  return op == Operator::kI ? "i" : "j";
}

std::string_view SnrRegimeName(SnrRegime regime) {
  return regime == SnrRegime::kHighSnr ? "high" : "general";
}

std::optional<SnrRegime> ParseSnrRegime(std::string_view name) {
  if (name == "high" || name == "high-snr") return SnrRegime::kHighSnr;
  if (name == "general") return SnrRegime::kGeneral;
  return std::nullopt;
}

UserProfile UserProfile::FromRadio(std::string id, RadioParameters radio) {
  if (!IsFinitePositive(radio.p_max)) {
    ThrowValidation("user " + id + ": " + Describe("p_max", radio.p_max) +
                    " must be positive");
  }
  if (!IsFinitePositive(radio.h)) {
    ThrowValidation("user " + id + ": " + Describe("h", radio.h) +
                    " must be positive");
  }
  if (!IsFinitePositive(radio.n0)) {
    ThrowValidation("user " + id + ": " + Describe("n0", radio.n0) +
                    " must be positive");
  }
  const double g = radio.p_max * radio.h / radio.n0;
  if (!IsFinitePositive(g)) {
    ThrowValidation("user " + id + ": characteristic overflows");
  }
  return UserProfile(std::move(id), g, radio);
}

UserProfile UserProfile::FromCharacteristic(std::string id, double g) {
  if (!IsFinitePositive(g)) {
    ThrowValidation("user " + id + ": " + Describe("g", g) +
                    " must be positive");
  }
  return UserProfile(std::move(id), g, std::nullopt);
}

Market::Market(std::vector<UserProfile> users) : users_(std::move(users)) {
  if (users_.empty()) ThrowValidation("market needs at least one user");
  g_total_ = std::accumulate(
      users_.begin(), users_.end(), 0.0,
      [](double acc, const UserProfile& u) { return acc + u.g(); });
}

Market Market::Aggregate(double g_total) {
  return Market({UserProfile::FromCharacteristic("aggregate", g_total)});
}

CostPair::CostPair(double c_i, double c_j) : c_i_(c_i), c_j_(c_j) {
  if (!IsFinitePositive(c_i)) {
    ThrowValidation(Describe("cost c_i", c_i) + " must be positive");
  }
  if (!IsFinitePositive(c_j)) {
    ThrowValidation(Describe("cost c_j", c_j) + " must be positive");
  }
}

BandwidthPair::BandwidthPair(double b_i, double b_j) : b_i_(b_i), b_j_(b_j) {
  if (!IsFiniteNonNegative(b_i)) {
    ThrowValidation(Describe("bandwidth b_i", b_i) + " must be non-negative");
  }
  if (!IsFiniteNonNegative(b_j)) {
    ThrowValidation(Describe("bandwidth b_j", b_j) + " must be non-negative");
  }
}

PricePair::PricePair(double p_i, double p_j) : p_i_(p_i), p_j_(p_j) {
  if (!IsFiniteNonNegative(p_i)) {
    ThrowValidation(Describe("price p_i", p_i) + " must be non-negative");
  }
  if (!IsFiniteNonNegative(p_j)) {
    ThrowValidation(Describe("price p_j", p_j) + " must be non-negative");
  }
}

std::string_view CostRegimeName(CostRegimeKind kind) {
  switch (kind) {
    case CostRegimeKind::kLowCosts:
      return "low-costs";
    case CostRegimeKind::kHighComparable:
      return "high-comparable";
    case CostRegimeKind::kHighIncomparable:
      return "high-incomparable";
  }
  return "unknown";
}

CostRegime ClassifyCostRegime(const CostPair& costs) {
  const double sum = costs.c_i() + costs.c_j();
  const double diff = costs.c_j() - costs.c_i();
  // Both region definitions are closed on the side written with <=.
  if (std::abs(diff) > 1.0) {
    return {CostRegimeKind::kHighIncomparable,
            diff > 0.0 ? Operator::kI : Operator::kJ};
  }
  if (sum <= 1.0) return {CostRegimeKind::kLowCosts, std::nullopt};
  return {CostRegimeKind::kHighComparable, std::nullopt};
}

}  // namespace duopoly
