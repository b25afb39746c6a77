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

#include "sgdual/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sgdual/errors.hpp"
#include "sgdual/physics.hpp"
#include "sgdual/rng.hpp"
#include "sgdual/units.hpp"

namespace sgdual {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

/// Shortest form that parses back to the identical double.
std::string format_double(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

std::uint64_t parse_u64(std::string_view text, int line, const std::string& key) {
    const std::string value(trim(text));
    if (value.empty() || value.front() == '-') {
        throw ConfigError("expected a non-negative integer", line, key);
    }
    try {
        std::size_t consumed = 0;
        const unsigned long long parsed = std::stoull(value, &consumed, 0);
        if (consumed == value.size()) return parsed;
    } catch (const std::exception&) {
    }
    // Allow scientific shorthand like 1e6 as long as it is exactly integral.
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed == value.size() && std::isfinite(parsed) && parsed >= 0.0 &&
            parsed <= 9007199254740992.0 && std::floor(parsed) == parsed) {
            return static_cast<std::uint64_t>(parsed);
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("expected a non-negative integer", line, key);
}

bool parse_bool(std::string_view text, int line, const std::string& key) {
    const std::string value = lowercase(trim(text));
    if (value == "true" || value == "yes" || value == "on" || value == "1") return true;
    if (value == "false" || value == "no" || value == "off" || value == "0") return false;
    throw ConfigError("expected a boolean (true/false)", line, key);
}

double parse_value(std::string_view text, Dimension dim, int line, const std::string& key) {
    try {
        return dim == Dimension::Angle ? parse_angle(text) : parse_quantity(text, dim);
    } catch (const std::exception& e) {
        throw ConfigError(e.what(), line, key);
    }
}

}  // namespace

std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::Json ? "json" : "csv";
}

void ExperimentConfig::validate() const {
    stage_config.validate();
    if (engine == EngineKind::BHSI) bhsi.validate();
    if (trials == 0) {
        throw std::domain_error("config: trials must be positive");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    PhysicsParams physics = default_physics();

    bool saw_experiment = false;
    bool saw_bhsi = false;
    bool saw_physics = false;
    bool have_stage = false;
    bool have_engine = false;
    bool have_trials = false;
    bool have_theta = false;
    double theta = 0.0;
    double phi = 0.0;
    std::set<std::string> seen;

    std::string section;
    int line_no = 0;
    std::size_t cursor = 0;
    while (cursor <= text.size()) {
        const std::size_t newline = text.find('\n', cursor);
        std::string_view raw = text.substr(
            cursor, newline == std::string_view::npos ? std::string_view::npos : newline - cursor);
        cursor = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_no;

        const std::size_t comment = raw.find_first_of("#;");
        if (comment != std::string_view::npos) raw = raw.substr(0, comment);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("unterminated section header", line_no);
            }
            section = lowercase(trim(line.substr(1, line.size() - 2)));
            if (section == "experiment") saw_experiment = true;
            else if (section == "bhsi") saw_bhsi = true;
            else if (section == "physics") saw_physics = true;
            else if (section != "initial" && section != "timings" && section != "output") {
                throw ConfigError("unknown section '" + section + "'", line_no);
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        const std::string key = lowercase(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("missing key before '='", line_no);
        }
        if (section.empty()) {
            throw ConfigError("key appears before any section header", line_no, key);
        }
        if (!seen.insert(section + "." + key).second) {
            throw ConfigError("duplicate key", line_no, key);
        }

        if (section == "experiment") {
            if (key == "stage") {
                const std::uint64_t stage = parse_u64(value, line_no, key);
                if (stage < 1 || stage > 3) {
                    throw ConfigError("stage must be 1, 2 or 3", line_no, key);
                }
                cfg.stage_config.stage = static_cast<int>(stage);
                have_stage = true;
            } else if (key == "engine") {
                const auto kind = parse_engine_kind(trim(value));
                if (!kind) {
                    throw ConfigError("unknown engine '" + std::string(trim(value)) +
                                          "' (expected ci, mwi or bhsi)",
                                      line_no, key);
                }
                cfg.engine = *kind;
                have_engine = true;
            } else if (key == "trials") {
                cfg.trials = parse_u64(value, line_no, key);
                have_trials = true;
            } else if (key == "seed") {
                cfg.seed = parse_u64(value, line_no, key);
            } else if (key == "ts_inserted") {
                cfg.stage_config.ts_inserted = parse_bool(value, line_no, key);
            } else {
                throw ConfigError("unknown key in [experiment]", line_no, key);
            }
        } else if (section == "initial") {
            if (key == "theta") {
                theta = parse_value(value, Dimension::Angle, line_no, key);
                have_theta = true;
            } else if (key == "phi") {
                phi = parse_value(value, Dimension::Angle, line_no, key);
            } else {
                throw ConfigError("unknown key in [initial]", line_no, key);
            }
        } else if (section == "timings") {
            SensorTimings& t = cfg.stage_config.timings;
            if (key == "tau_od") t.tau_od = parse_value(value, Dimension::Time, line_no, key);
            else if (key == "tau_ts") t.tau_ts = parse_value(value, Dimension::Time, line_no, key);
            else if (key == "t_window")
                t.t_window = parse_value(value, Dimension::Time, line_no, key);
            else if (key == "rep_rate")
                t.rep_rate = parse_value(value, Dimension::Frequency, line_no, key);
            else if (key == "gap_transit")
                t.gap_transit = parse_value(value, Dimension::Time, line_no, key);
            else throw ConfigError("unknown key in [timings]", line_no, key);
        } else if (section == "bhsi") {
            if (key == "p_delayed")
                cfg.bhsi.p_delayed = parse_value(value, Dimension::Dimensionless, line_no, key);
            else if (key == "p_uncommitted")
                cfg.bhsi.p_uncommitted =
                    parse_value(value, Dimension::Dimensionless, line_no, key);
            else if (key == "p_double_ts")
                cfg.bhsi.p_double_ts = parse_value(value, Dimension::Dimensionless, line_no, key);
            else if (key == "p_recohere")
                cfg.bhsi.p_recohere = parse_value(value, Dimension::Dimensionless, line_no, key);
            else if (key == "retrocausal_mode") {
                const auto mode = parse_retrocausal_mode(trim(value));
                if (!mode) {
                    throw ConfigError("unknown mode '" + std::string(trim(value)) +
                                          "' (expected unitary or erasure)",
                                      line_no, key);
                }
                cfg.bhsi.retrocausal_mode = *mode;
            } else {
                throw ConfigError("unknown key in [bhsi]", line_no, key);
            }
        } else if (section == "physics") {
            if (key == "q1") physics.q1 = parse_value(value, Dimension::Charge, line_no, key);
            else if (key == "q2") physics.q2 = parse_value(value, Dimension::Charge, line_no, key);
            else if (key == "d") physics.d = parse_value(value, Dimension::Length, line_no, key);
            else if (key == "delta_x")
                physics.delta_x = parse_value(value, Dimension::Length, line_no, key);
            else if (key == "tau") physics.tau = parse_value(value, Dimension::Time, line_no, key);
            else if (key == "m") physics.m = parse_value(value, Dimension::Mass, line_no, key);
            else if (key == "grad_b")
                physics.grad_b = parse_value(value, Dimension::FieldGradient, line_no, key);
            else if (key == "dt_ref")
                physics.dt_ref = parse_value(value, Dimension::Time, line_no, key);
            else if (key == "m_ref")
                physics.m_ref = parse_value(value, Dimension::Mass, line_no, key);
            else throw ConfigError("unknown key in [physics]", line_no, key);
        } else if (section == "output") {
            if (key == "path") {
                cfg.output_path = std::string(value);
            } else if (key == "format") {
                const std::string fmt = lowercase(trim(value));
                if (fmt == "json") cfg.output_format = OutputFormat::Json;
                else if (fmt == "csv") cfg.output_format = OutputFormat::Csv;
                else throw ConfigError("unknown format (expected json or csv)", line_no, key);
            } else {
                throw ConfigError("unknown key in [output]", line_no, key);
            }
        }
    }

    if (!saw_experiment) throw ConfigError("missing [experiment] section");
    if (!have_stage) throw ConfigError("missing required key 'stage' in [experiment]");
    if (!have_engine) throw ConfigError("missing required key 'engine' in [experiment]");
    if (!have_trials) throw ConfigError("missing required key 'trials' in [experiment]");
    if (!have_theta) throw ConfigError("missing required key 'theta' in [initial]");

    if (cfg.engine == EngineKind::BHSI && !saw_bhsi) {
        throw ConfigError("engine bhsi requires a [bhsi] section");
    }
    if (cfg.engine != EngineKind::BHSI && saw_bhsi) {
        throw ConfigError("[bhsi] section is only valid with engine = bhsi");
    }
    if (cfg.stage_config.stage == 3 && !saw_physics) {
        throw ConfigError("stage 3 requires a [physics] section");
    }
    if (cfg.stage_config.stage != 3 && saw_physics) {
        throw ConfigError("[physics] section is only valid for stage 3");
    }
    if (cfg.stage_config.stage == 3) cfg.stage_config.em = physics;

    try {
        // phi is periodic, so any finite value is meaningful; theta stays
        // strict because the chart requires [0, pi/2].
        cfg.stage_config.initial = prepare_qubit(theta, wrap_angle(phi));
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string write_config(const ExperimentConfig& config) {
    std::string out;
    const auto kv = [&out](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };

    out += "[experiment]\n";
    kv("stage", std::to_string(config.stage_config.stage));
    kv("engine", std::string(to_string(config.engine)));
    kv("trials", std::to_string(config.trials));
    kv("seed", std::to_string(config.seed));
    kv("ts_inserted", config.stage_config.ts_inserted ? "true" : "false");

    out += "\n[initial]\n";
    kv("theta", format_double(config.stage_config.initial.theta));
    kv("phi", format_double(config.stage_config.initial.phi));

    const SensorTimings& t = config.stage_config.timings;
    out += "\n[timings]\n";
    kv("tau_od", format_double(t.tau_od));
    kv("tau_ts", format_double(t.tau_ts));
    kv("t_window", format_double(t.t_window));
    kv("rep_rate", format_double(t.rep_rate));
    kv("gap_transit", format_double(t.gap_transit));

    if (config.engine == EngineKind::BHSI) {
        out += "\n[bhsi]\n";
        kv("p_delayed", format_double(config.bhsi.p_delayed));
        kv("p_uncommitted", format_double(config.bhsi.p_uncommitted));
        kv("p_double_ts", format_double(config.bhsi.p_double_ts));
        kv("p_recohere", format_double(config.bhsi.p_recohere));
        kv("retrocausal_mode", std::string(to_string(config.bhsi.retrocausal_mode)));
    }

    if (config.stage_config.em.has_value()) {
        const PhysicsParams& p = *config.stage_config.em;
        out += "\n[physics]\n";
        kv("q1", format_double(p.q1));
        kv("q2", format_double(p.q2));
        kv("d", format_double(p.d));
        kv("delta_x", format_double(p.delta_x));
        kv("tau", format_double(p.tau));
        kv("m", format_double(p.m));
        kv("grad_b", format_double(p.grad_b));
        kv("dt_ref", format_double(p.dt_ref));
        kv("m_ref", format_double(p.m_ref));
    }

    if (!config.output_path.empty() || config.output_format != OutputFormat::Json) {
        out += "\n[output]\n";
        if (!config.output_path.empty()) kv("path", config.output_path);
        kv("format", std::string(to_string(config.output_format)));
    }
    return out;
}

std::string config_digest(const ExperimentConfig& config) {
    const std::string canonical = write_config(config);
    const std::uint64_t hash = fnv1a64(canonical.data(), canonical.size());
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace sgdual
