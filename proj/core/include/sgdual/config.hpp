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

#include <cstdint>
#include <string>
#include <string_view>

#include "sgdual/engines.hpp"
#include "sgdual/stages.hpp"

namespace sgdual {

enum class OutputFormat { Json, Csv };

std::string_view to_string(OutputFormat f);

/// A full run description: the apparatus (StageConfig), the engine and its
/// knobs, the batch size and seed, and where the report goes.
struct ExperimentConfig {
    StageConfig stage_config;
    EngineKind engine = EngineKind::CI;
    BhsiParams bhsi;  ///< read only when engine = BHSI
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string output_path;  ///< empty = print to stdout only
    OutputFormat output_format = OutputFormat::Json;

    /// StageConfig cross-field rules, BHSI knob ranges, trials > 0.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parse the line-oriented sectioned key = value format:
///
///     [experiment]
///     stage = 1
///     engine = ci        # ci | mwi | bhsi
///     trials = 1000000
///     seed = 42
///
///     [initial]
///     theta = pi/4       # accepts pi fractions and decimal radians
///     phi = 0
///
/// plus optional [timings], [output], a [bhsi] section (required exactly
/// when engine = bhsi) and a [physics] section (required exactly when
/// stage = 3, keys defaulting to the electron-ion values). '#' and ';'
/// start comments. Unknown sections or keys are rejected. All failures
/// raise ConfigError carrying the line number and key.
ExperimentConfig parse_config(std::string_view text);

/// parse_config on a file's contents. File-system failures raise
/// std::runtime_error; parse failures raise ConfigError.
ExperimentConfig load_config(const std::string& path);

/// Canonical serialization: fixed section and key order, every effective
/// key written explicitly, doubles in shortest round-trip form. Parsing
/// the output reproduces the config exactly.
std::string write_config(const ExperimentConfig& config);

/// FNV-1a 64-bit hash of the canonical form, as 16 lowercase hex digits.
/// Two configs digest equal exactly when they are equal.
std::string config_digest(const ExperimentConfig& config);

}  // namespace sgdual
