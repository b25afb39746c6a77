// Copyright 2026 The sgdual Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "sgdual/physics.hpp"
#include "sgdual/units.hpp"

using namespace sgdual;
using doctest::Approx;

TEST_SUITE("units") {

TEST_CASE("time suffixes") {
    CHECK(parse_quantity("10ns", Dimension::Time) == Approx(1e-8).epsilon(1e-12));
    CHECK(parse_quantity("100ms", Dimension::Time) == Approx(0.1).epsilon(1e-12));
    CHECK(parse_quantity("2us", Dimension::Time) == Approx(2e-6).epsilon(1e-12));
    CHECK(parse_quantity("3ps", Dimension::Time) == Approx(3e-12).epsilon(1e-12));
    CHECK(parse_quantity("0.5s", Dimension::Time) == Approx(0.5).epsilon(1e-12));
    CHECK(parse_quantity("0.1", Dimension::Time) == Approx(0.1).epsilon(1e-12));
}

TEST_CASE("length suffixes") {
    CHECK(parse_quantity("100um", Dimension::Length) == Approx(1e-4).epsilon(1e-12));
    CHECK(parse_quantity("10nm", Dimension::Length) == Approx(1e-8).epsilon(1e-12));
    CHECK(parse_quantity("1mm", Dimension::Length) == Approx(1e-3).epsilon(1e-12));
    CHECK(parse_quantity("2cm", Dimension::Length) == Approx(0.02).epsilon(1e-12));
    CHECK(parse_quantity("1m", Dimension::Length) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("charge in elementary units") {
    CHECK(parse_quantity("-3e", Dimension::Charge) ==
          Approx(-3.0 * constants::kElementaryCharge).epsilon(1e-12));
    CHECK(parse_quantity("1e", Dimension::Charge) ==
          Approx(constants::kElementaryCharge).epsilon(1e-12));
    CHECK(parse_quantity("-1.5e-19C", Dimension::Charge) == Approx(-1.5e-19).epsilon(1e-12));
    // A bare number with an exponent must stay scientific notation, not an
    // elementary-charge suffix.
    CHECK(parse_quantity("1e-19", Dimension::Charge) == Approx(1e-19).epsilon(1e-12));
}

TEST_CASE("mass suffixes include electron masses") {
    CHECK(parse_quantity("1e-14kg", Dimension::Mass) == Approx(1e-14).epsilon(1e-12));
    CHECK(parse_quantity("5g", Dimension::Mass) == Approx(5e-3).epsilon(1e-12));
    CHECK(parse_quantity("1me", Dimension::Mass) ==
          Approx(constants::kElectronMass).epsilon(1e-12));
}

TEST_CASE("frequency suffixes") {
    CHECK(parse_quantity("1kHz", Dimension::Frequency) == Approx(1000.0).epsilon(1e-12));
    CHECK(parse_quantity("50MHz", Dimension::Frequency) == Approx(5e7).epsilon(1e-12));
    CHECK(parse_quantity("2GHz", Dimension::Frequency) == Approx(2e9).epsilon(1e-12));
    CHECK(parse_quantity("10Hz", Dimension::Frequency) == Approx(10.0).epsilon(1e-12));
}

TEST_CASE("field gradient") {
    CHECK(parse_quantity("1e6T/m", Dimension::FieldGradient) == Approx(1e6).epsilon(1e-12));
    CHECK(parse_quantity("1e6", Dimension::FieldGradient) == Approx(1e6).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(parse_quantity("10ns", Dimension::Length), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("10um", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("1kHz", Dimension::Mass), std::invalid_argument);
}

TEST_CASE("malformed quantities are rejected") {
    CHECK_THROWS_AS(parse_quantity("", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("fast", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("10nss", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("--3e", Dimension::Charge), std::invalid_argument);
}

TEST_CASE("angles accept pi fractions and radians") {
    constexpr double kPi = std::numbers::pi;
    CHECK(parse_angle("pi") == Approx(kPi).epsilon(1e-15));
    CHECK(parse_angle("pi/4") == Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(parse_angle("pi/6") == Approx(kPi / 6.0).epsilon(1e-15));
    CHECK(parse_angle("2pi") == Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(parse_angle("3pi/2") == Approx(3.0 * kPi / 2.0).epsilon(1e-15));
    CHECK(parse_angle("-pi/6") == Approx(-kPi / 6.0).epsilon(1e-15));
    CHECK(parse_angle("0.25") == Approx(0.25).epsilon(1e-15));
    CHECK(parse_angle("1rad") == Approx(1.0).epsilon(1e-15));
    CHECK(parse_angle("0") == 0.0);
}

TEST_CASE("malformed angles are rejected") {
    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("deg45"), std::invalid_argument);
}

TEST_CASE("dimension names are distinct and non-empty") {
    CHECK(dimension_name(Dimension::Time) != dimension_name(Dimension::Length));
    CHECK_FALSE(dimension_name(Dimension::Charge).empty());
}

}  // TEST_SUITE
