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

#pragma once

#include <string>
#include <string_view>

namespace sgdual {

/// Physical dimension a config value is expected to carry. Values are
/// stored in SI base units internally; suffixes are resolved at parse time.
enum class Dimension {
    Time,         // s, ms, us, ns, ps
    Frequency,    // Hz, kHz, MHz, GHz
    Length,       // m, cm, mm, um, nm
    Mass,         // kg, g, me (electron masses)
    Charge,       // C, e (elementary charges)
    FieldGradient,  // T/m
    Angle,        // rad, plus symbolic pi fractions
    Dimensionless,
};

/// Parse "10ns", "100um", "-3e", "1e-14kg", "1kHz", "0.25", ... into SI.
/// A bare number is taken as already-SI. Throws std::invalid_argument when
/// the text does not parse or the suffix disagrees with the expected
/// dimension.
double parse_quantity(std::string_view text, Dimension expected);

/// Parse an angle in radians. Accepts decimal radians, an optional "rad"
/// suffix, and symbolic pi fractions: "pi", "pi/4", "2pi", "3pi/2", "-pi/6".
double parse_angle(std::string_view text);

/// Human-readable dimension name for error messages.
std::string_view dimension_name(Dimension d);

}  // namespace sgdual
