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

#ifndef DUOPOLY_MODEL_H_
#define DUOPOLY_MODEL_H_

// Domain types shared by every stage of the spectrum leasing game: users,
// the market they form, and the operators' strategic variables.
//
// All types validate on construction and are immutable afterwards.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace duopoly {

enum class ErrorCode {
  kValidation,  // An input violates a documented invariant.
  kDomain,      // Inputs are valid but outside the operation's domain.
  kSolver,      // A numerical procedure failed to produce a certified result.
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void ThrowValidation(const std::string& what);
[[noreturn]] void ThrowDomain(const std::string& what);
[[noreturn]] void ThrowSolver(const std::string& what);

enum class Operator { kI, kJ };

Operator Other(Operator op);
std::string_view OperatorName(Operator op);

enum class SnrRegime { kHighSnr, kGeneral };

std::string_view SnrRegimeName(SnrRegime regime);
// Accepts "high", "high-snr", "general" (case sensitive).
std::optional<SnrRegime> ParseSnrRegime(std::string_view name);

// Physical parameters a user characteristic can be derived from.
struct RadioParameters {
  double p_max;  // Maximum transmit power.
  double h;      // Channel gain.
  double n0;     // Noise power per unit bandwidth.
};

class UserProfile {
 public:
  // g = p_max * h / n0.
  static UserProfile FromRadio(std::string id, RadioParameters radio);
  static UserProfile FromCharacteristic(std::string id, double g);

  const std::string& id() const { return id_; }
  double g() const { return g_; }
  // Present only for users built from radio parameters.
  const std::optional<RadioParameters>& radio() const { return radio_; }

 private:
  UserProfile(std::string id, double g, std::optional<RadioParameters> radio)
      : id_(std::move(id)), g_(g), radio_(radio) {}

  std::string id_;
  double g_;
  std::optional<RadioParameters> radio_;
};

// Ordered, non-empty set of users. Order is the user-id order used whenever
// individual users must be rationed.
class Market {
 public:
  explicit Market(std::vector<UserProfile> users);
  // A single aggregate user carrying the whole characteristic.
  static Market Aggregate(double g_total);

  const std::vector<UserProfile>& users() const { return users_; }
  std::size_t size() const { return users_.size(); }
  double g_total() const { return g_total_; }

 private:
  std::vector<UserProfile> users_;
  double g_total_;
};

// Leasing costs per unit bandwidth. Both strictly positive.
class CostPair {
 public:
  CostPair(double c_i, double c_j);

  double c_i() const { return c_i_; }
  double c_j() const { return c_j_; }
  double of(Operator op) const { return op == Operator::kI ? c_i_ : c_j_; }
  double min() const { return c_i_ <= c_j_ ? c_i_ : c_j_; }
  double max() const { return c_i_ <= c_j_ ? c_j_ : c_i_; }
  CostPair Swapped() const { return CostPair(c_j_, c_i_); }

 private:
  double c_i_;
  double c_j_;
};

// Leased bandwidths. Both non-negative.
class BandwidthPair {
 public:
  BandwidthPair(double b_i, double b_j);

  double b_i() const { return b_i_; }
  double b_j() const { return b_j_; }
  double of(Operator op) const { return op == Operator::kI ? b_i_ : b_j_; }
  double total() const { return b_i_ + b_j_; }
  BandwidthPair Swapped() const { return BandwidthPair(b_j_, b_i_); }

 private:
  double b_i_;
  double b_j_;
};

// Announced prices per unit bandwidth. Both non-negative.
class PricePair {
 public:
  PricePair(double p_i, double p_j);

  double p_i() const { return p_i_; }
  double p_j() const { return p_j_; }
  double of(Operator op) const { return op == Operator::kI ? p_i_ : p_j_; }
  PricePair Swapped() const { return PricePair(p_j_, p_i_); }

 private:
  double p_i_;
  double p_j_;
};

enum class CostRegimeKind { kLowCosts, kHighComparable, kHighIncomparable };

struct CostRegime {
  CostRegimeKind kind;
  // Set only for kHighIncomparable: the operator that stays in the market.
  std::optional<Operator> survivor;

  friend bool operator==(const CostRegime&, const CostRegime&) = default;
};

std::string_view CostRegimeName(CostRegimeKind kind);

// Low:   c_i + c_j <= 1.
// HC:    c_i + c_j > 1 and |c_j - c_i| <= 1.
// HI:    |c_j - c_i| > 1; the cheaper operator survives.
CostRegime ClassifyCostRegime(const CostPair& costs);

}  // namespace duopoly

#endif  // DUOPOLY_MODEL_H_
