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

#include <cmath>

#include "doctest.h"
#include "test_util.h"

namespace duopoly {
namespace {

using doctest::Approx;
using testing::ErrorOf;

constexpr SnrRegime kHigh = SnrRegime::kHighSnr;
constexpr SnrRegime kGeneral = SnrRegime::kGeneral;

// Reference H values from an independent Brent solve.
constexpr double kH0468 = 2.1644965146934902;
constexpr double kH15 = 10.136220786575034;
constexpr double kH01 = 0.6212268350317863;

TEST_CASE("rate") {
  CHECK(Rate(1.0, 1.0, kGeneral) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(Rate(std::exp(1.0), 1.0, kHigh) == Approx(1.0).epsilon(1e-15));
  CHECK(Rate(100.0, 1.0, kGeneral) ==
        Approx(4.61512051684126).epsilon(1e-14));
  CHECK(Rate(100.0, 1.0, kHigh) == Approx(std::log(100.0)).epsilon(1e-15));
  CHECK(Rate(3.0, 0.0, kGeneral) == 0.0);
  CHECK(Rate(3.0, 0.0, kHigh) == 0.0);
  CHECK(ErrorOf([] { Rate(1.0, -1.0, kHigh); }) == ErrorCode::kValidation);
  CHECK(ErrorOf([] { Rate(-1.0, 1.0, kHigh); }) == ErrorCode::kValidation);
}

TEST_CASE("solve H") {
  CHECK(SolveH(0.468).h_of_p == Approx(kH0468).epsilon(1e-12));
  CHECK(SolveH(1.5).h_of_p == Approx(kH15).epsilon(1e-12));
  CHECK(SolveH(0.1).h_of_p == Approx(kH01).epsilon(1e-12));
  CHECK(SolveH(0.468).residual <= 1e-12);
  CHECK(SolveH(1e-6).h_of_p == Approx(std::sqrt(2e-6)).epsilon(1e-3));
  const double gap = std::abs(SolveH(4.0).h_of_p * std::exp(-5.0) - 1.0);
  CHECK(gap <= 0.05);
  CHECK(PriceForSnr(kH0468) == Approx(0.468).epsilon(1e-13));
  CHECK(ErrorOf([] { SolveH(0.0); }) == ErrorCode::kDomain);
  CHECK(ErrorOf([] { SolveH(-1.0); }) == ErrorCode::kDomain);
}

TEST_CASE("optimal demand") {
  CHECK(OptimalDemand(1.0, 1.0, kHigh) == Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(OptimalDemand(1.0, 0.0, kHigh) == Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(OptimalDemand(1.0, 0.468, kGeneral) ==
        Approx(0.4620012059209104).epsilon(1e-12));
  CHECK(ErrorOf([] { OptimalDemand(1.0, 0.0, kGeneral); }) ==
        ErrorCode::kDomain);
  CHECK(ErrorOf([] { OptimalDemand(1.0, -0.1, kHigh); }) ==
        ErrorCode::kValidation);
  CHECK(ErrorOf([] { OptimalDemand(0.0, 1.0, kHigh); }) ==
        ErrorCode::kValidation);
}

TEST_CASE("user payoff and SNR") {
  CHECK(UserPayoff(1.0, 1.0, kHigh) == Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(UserPayoff(2.0, 1.0, kHigh) ==
        Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(UserPayoff(1.0, 0.468, kGeneral) ==
        Approx(0.3160060361440654).epsilon(1e-12));
  CHECK(UserSnr(1.0, kHigh) == Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(UserSnr(1.5, kHigh) == Approx(std::exp(2.5)).epsilon(1e-15));
  CHECK(UserSnr(0.468, kGeneral) == Approx(kH0468).epsilon(1e-12));
}

TEST_CASE("evaluate users shares one SNR") {
  const Market m({UserProfile::FromCharacteristic("a", 0.5),
                  UserProfile::FromRadio("b", {2.0, 3.0, 0.7})});
  const auto out = EvaluateUsers(m, 0.9, kGeneral);
  REQUIRE(out.size() == 2);
  CHECK(out[0].id == "a");
  CHECK(out[0].snr == Approx(out[1].snr).epsilon(1e-12));
  CHECK(out[1].demand == Approx(m.users()[1].g() / SolveH(0.9).h_of_p));
}

TEST_CASE("demand split: cheaper operator with ample supply takes all") {
  const Market m = Market::Aggregate(1.0);
  const DemandSplit s = ComputeDemandSplit(m, BandwidthPair(10.0, 10.0),
                                           PricePair(0.5, 1.0), kHigh);
  CHECK(s.realized_i == Approx(std::exp(-1.5)).epsilon(1e-14));
  CHECK(s.realized_j == 0.0);
  CHECK(s.realized_set_j.empty());
}

TEST_CASE("demand split: overflow to the dearer operator") {
  const Market m = Market::Aggregate(1.0);
  const DemandSplit s = ComputeDemandSplit(m, BandwidthPair(0.05, 10.0),
                                           PricePair(0.5, 1.0), kHigh);
  CHECK(s.realized_i == Approx(0.05).epsilon(1e-15));
  CHECK(s.realized_j == Approx(0.10500875025098104).epsilon(1e-13));
  REQUIRE(s.realized_set_i.size() == 1);
  CHECK(s.realized_set_i[0].fraction == Approx(0.05 * std::exp(1.5)));
}

TEST_CASE("demand split: equal prices share preferred demand") {
  const Market m = Market::Aggregate(1.0);
  const double p = std::log(10.0) - 1.0 + std::log(1.25);
  const DemandSplit s = ComputeDemandSplit(m, BandwidthPair(0.04, 0.04),
                                           PricePair(p, p), kHigh);
  CHECK(s.preferred_i == Approx(0.04).epsilon(1e-13));
  CHECK(s.preferred_j == Approx(0.04).epsilon(1e-13));
  CHECK(s.realized_i == Approx(0.04).epsilon(1e-13));
  CHECK(s.realized_j == Approx(0.04).epsilon(1e-13));

  // The rounded price from the worked example: supply binds at 0.04 each.
  const DemandTotals t = ComputeDemandTotals(1.0, BandwidthPair(0.04, 0.04),
                                             PricePair(1.3026, 1.3026), kHigh);
  CHECK(t.preferred_i == Approx(0.05).epsilon(1e-4));
  CHECK(t.realized_i == Approx(0.04).epsilon(1e-15));
  CHECK(t.realized_j == Approx(0.04).epsilon(1e-15));
}

TEST_CASE("demand split: equal prices alternate users between operators") {
  const Market m({UserProfile::FromCharacteristic("a", 1.0),
                  UserProfile::FromCharacteristic("b", 1.0),
                  UserProfile::FromCharacteristic("c", 1.0)});
  const DemandSplit s = ComputeDemandSplit(m, BandwidthPair(5.0, 5.0),
                                           PricePair(1.0, 1.0), kHigh);
  CHECK(s.preferred_i == Approx(s.preferred_j));
  CHECK(s.preferred_i + s.preferred_j ==
        Approx(3.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("demand totals agree with the split") {
  const Market m({UserProfile::FromCharacteristic("a", 0.3),
                  UserProfile::FromCharacteristic("b", 0.7)});
  for (SnrRegime r : {kHigh, kGeneral}) {
    const BandwidthPair bw(0.05, 0.2);
    const PricePair pr(0.8, 1.1);
    const DemandSplit s = ComputeDemandSplit(m, bw, pr, r);
    const DemandTotals t = ComputeDemandTotals(1.0, bw, pr, r);
    CHECK(s.realized_i == Approx(t.realized_i).epsilon(1e-14));
    CHECK(s.realized_j == Approx(t.realized_j).epsilon(1e-14));
  }
}

}  // namespace
}  // namespace duopoly
