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

#include "sgdual/units.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "sgdual/physics.hpp"

namespace sgdual {

namespace {

struct UnitEntry {
    std::string_view suffix;
    Dimension dimension;
    double factor;
};

// Longer suffixes must come before their prefixes ("ms" before "m", "ns"
// before... there is no bare "n") so the first match wins correctly.
constexpr UnitEntry kUnits[] = {
    {"ms", Dimension::Time, 1e-3},
    {"us", Dimension::Time, 1e-6},
    {"ns", Dimension::Time, 1e-9},
    {"ps", Dimension::Time, 1e-12},
    {"s", Dimension::Time, 1.0},
    {"kHz", Dimension::Frequency, 1e3},
    {"MHz", Dimension::Frequency, 1e6},
    {"GHz", Dimension::Frequency, 1e9},
    {"Hz", Dimension::Frequency, 1.0},
    {"cm", Dimension::Length, 1e-2},
    {"mm", Dimension::Length, 1e-3},
    {"um", Dimension::Length, 1e-6},
    {"nm", Dimension::Length, 1e-9},
    {"m", Dimension::Length, 1.0},
    {"kg", Dimension::Mass, 1.0},
    {"g", Dimension::Mass, 1e-3},
    {"me", Dimension::Mass, constants::kElectronMass},
    {"C", Dimension::Charge, 1.0},
    {"e", Dimension::Charge, constants::kElementaryCharge},
    {"T/m", Dimension::FieldGradient, 1.0},
    {"rad", Dimension::Angle, 1.0},
};

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

[[noreturn]] void fail(std::string_view text, std::string_view why) {
    throw std::invalid_argument("cannot parse quantity '" + std::string(text) + "': " +
                                std::string(why));
}

// Parses the leading numeric part; returns the number of chars consumed.
std::size_t parse_number(std::string_view text, double& value) {
    const std::string owned(text);
    char* end = nullptr;
    value = std::strtod(owned.c_str(), &end);
    return static_cast<std::size_t>(end - owned.c_str());
}

}  // namespace

std::string_view dimension_name(Dimension d) {
    switch (d) {
        case Dimension::Time: return "time";
        case Dimension::Frequency: return "frequency";
        case Dimension::Length: return "length";
        case Dimension::Mass: return "mass";
        case Dimension::Charge: return "charge";
        case Dimension::FieldGradient: return "field gradient";
        case Dimension::Angle: return "angle";
        case Dimension::Dimensionless: return "dimensionless";
    }
    return "unknown";
}

double parse_quantity(std::string_view raw, Dimension expected) {
    const std::string_view text = trim(raw);
    if (text.empty()) fail(raw, "empty value");
    if (expected == Dimension::Angle) return parse_angle(text);

    double value = 0.0;
    const std::size_t consumed = parse_number(text, value);
    if (consumed == 0) fail(raw, "no leading number");

    const std::string_view suffix = trim(text.substr(consumed));
    if (suffix.empty()) return value;  // bare number: already SI

    for (const auto& unit : kUnits) {
        if (suffix == unit.suffix) {
            if (unit.dimension != expected) {
                fail(raw, "unit '" + std::string(suffix) + "' is a " +
                              std::string(dimension_name(unit.dimension)) + ", expected " +
                              std::string(dimension_name(expected)));
            }
            return value * unit.factor;
        }
    }
    fail(raw, "unknown unit suffix '" + std::string(suffix) + "'");
}

double parse_angle(std::string_view raw) {
    std::string_view text = trim(raw);
    if (text.empty()) {
        throw std::invalid_argument("cannot parse angle: empty value");
    }

    // Symbolic pi fractions: [coefficient] "pi" ["/" divisor]
    const std::size_t pi_at = text.find("pi");
    if (pi_at != std::string_view::npos) {
        double coefficient = 1.0;
        const std::string_view head = trim(text.substr(0, pi_at));
        if (head == "-") {
            coefficient = -1.0;
        } else if (!head.empty()) {
            double value = 0.0;
            if (parse_number(head, value) != head.size()) {
                throw std::invalid_argument("cannot parse angle '" + std::string(raw) + "'");
            }
            coefficient = value;
        }
        double divisor = 1.0;
        std::string_view tail = trim(text.substr(pi_at + 2));
        if (!tail.empty()) {
            if (tail.front() != '/') {
                throw std::invalid_argument("cannot parse angle '" + std::string(raw) + "'");
            }
            tail = trim(tail.substr(1));
            double value = 0.0;
            if (tail.empty() || parse_number(tail, value) != tail.size() || value == 0.0) {
                throw std::invalid_argument("cannot parse angle '" + std::string(raw) + "'");
            }
            divisor = value;
        }
        return coefficient * std::numbers::pi / divisor;
    }

    double value = 0.0;
    const std::size_t consumed = parse_number(text, value);
    if (consumed == 0) {
        throw std::invalid_argument("cannot parse angle '" + std::string(raw) + "'");
    }
    const std::string_view suffix = trim(text.substr(consumed));
    if (!suffix.empty() && suffix != "rad") {
        throw std::invalid_argument("cannot parse angle '" + std::string(raw) +
                                    "': unknown suffix '" + std::string(suffix) + "'");
    }
    return value;
}

}  // namespace sgdual
