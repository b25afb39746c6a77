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

#include "sgdual/sensor.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sgdual/units.hpp"

namespace sgdual {

namespace {

void require_positive_finite(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::domain_error(std::string("timings: ") + name + " must be positive and finite");
    }
}

void apply_click(ClickRecord& record, const TimedClick& click) {
    switch (click.channel) {
        case Channel::TsLeft: record.ts_left = true; break;
        case Channel::TsRight: record.ts_right = true; break;
        case Channel::OdLeft: record.od_left = true; break;
        case Channel::OdRight: record.od_right = true; break;
        case Channel::OdSpin:
            record.od_spin_fired = true;
            record.od_theta = click.theta;
            record.od_phi = click.phi;
            break;
    }
    record.clicks.push_back(click);
}

}  // namespace

SensorTimings default_timings() {
    return SensorTimings{1e-9, 10e-9, 60e-9, 1e3, 1e-9};
}

ValidationReport validate_timing(const SensorTimings& t, double separation_factor) {
    require_positive_finite(t.tau_od, "tau_od");
    require_positive_finite(t.tau_ts, "tau_ts");
    require_positive_finite(t.t_window, "t_window");
    require_positive_finite(t.rep_rate, "rep_rate");
    require_positive_finite(t.gap_transit, "gap_transit");
    if (!std::isfinite(separation_factor) || separation_factor <= 0.0) {
        throw std::domain_error("timings: separation factor must be positive and finite");
    }

    ValidationReport report;
    report.checks.push_back({"tau_od < tau_ts", t.tau_od, t.tau_ts, t.tau_od < t.tau_ts});
    report.checks.push_back({"tau_ts < t_window", t.tau_ts, t.t_window, t.tau_ts < t.t_window});
    const double budget = (1.0 / t.rep_rate) / separation_factor;
    report.checks.push_back({"t_window << 1/rep_rate", t.t_window, budget, t.t_window <= budget});
    report.pass = true;
    for (const auto& check : report.checks) report.pass = report.pass && check.pass;
    return report;
}

TSEvent sample_ts_event(double branch_weight, const SensorTimings& timings,
                        double commit_probability, TrialRng& rng) {
    if (branch_weight < 0.0 || branch_weight > 1.0) {
        throw std::domain_error("sample_ts_event: branch weight outside [0, 1]");
    }
    if (commit_probability < 0.0 || commit_probability > 1.0) {
        throw std::domain_error("sample_ts_event: commit probability outside [0, 1]");
    }
    TSEvent event;
    event.fired = rng.bernoulli(commit_probability);
    event.commit_time = rng.uniform(0.0, timings.tau_ts);
    return event;
}

std::vector<ClickRecord> pair_clicks(const std::vector<TimedClick>& events,
                                     const SensorTimings& timings, int stage) {
    if (events.empty()) {
        throw std::invalid_argument("pair_clicks: empty trial, no clicks to pair");
    }
    std::vector<ClickRecord> records;
    double window_start = 0.0;
    for (const auto& click : events) {
        if (records.empty() || click.time > window_start + timings.t_window) {
            window_start = click.time;
            records.emplace_back();
            records.back().stage = stage;
        }
        apply_click(records.back(), click);
    }
    return records;
}

std::string format_pattern(const ClickRecord& r) {
    const char* left = r.ts_left ? "1" : "0";
    const char* right = r.ts_right ? "1" : "0";
    char buffer[64];
    if (r.stage == 1) {
        std::snprintf(buffer, sizeof buffer, "[%s,%s;%s,%s]", left, right,
                      r.od_left ? "1" : "0", r.od_right ? "1" : "0");
        return buffer;
    }
    const char* theta = "?";
    if (std::abs(r.od_theta) < 1e-9) theta = "0";
    else if (std::abs(r.od_theta - std::numbers::pi / 4.0) < 1e-9) theta = "pi/4";
    else if (std::abs(r.od_theta - std::numbers::pi / 2.0) < 1e-9) theta = "pi/2";
    if (r.stage == 2) {
        std::snprintf(buffer, sizeof buffer, "[%s,%s;%s]", left, right, theta);
    } else {
        std::snprintf(buffer, sizeof buffer, "[%s,%s;%s,%.9g]", left, right, theta, r.od_phi);
    }
    return buffer;
}

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(strip(s.substr(start)));
            return parts;
        }
        parts.push_back(strip(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

bool parse_binary(std::string_view token) {
    if (token == "0") return false;
    if (token == "1") return true;
    throw std::invalid_argument("pattern: expected 0 or 1, got '" + std::string(token) + "'");
}

double parse_angle_token(std::string_view token) {
    try {
        return parse_angle(token);
    } catch (const std::exception&) {
        throw std::invalid_argument("pattern: bad angle '" + std::string(token) + "'");
    }
}

}  // namespace

ClickRecord parse_pattern(std::string_view pattern, int stage) {
    if (stage < 1 || stage > 3) {
        throw std::invalid_argument("pattern: stage must be 1, 2 or 3");
    }
    std::string_view body = strip(pattern);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
        throw std::invalid_argument("pattern: expected '[...]', got '" + std::string(pattern) +
                                    "'");
    }
    body = body.substr(1, body.size() - 2);
    const std::vector<std::string_view> halves = split(body, ';');
    if (halves.size() != 2) {
        throw std::invalid_argument("pattern: expected one ';' separating TS and OD parts");
    }
    const std::vector<std::string_view> ts = split(halves[0], ',');
    if (ts.size() != 2) {
        throw std::invalid_argument("pattern: expected two TS entries");
    }

    ClickRecord r;
    r.stage = stage;
    r.ts_left = parse_binary(ts[0]);
    r.ts_right = parse_binary(ts[1]);

    const std::vector<std::string_view> od = split(halves[1], ',');
    if (stage == 1) {
        if (od.size() != 2) {
            throw std::invalid_argument("pattern: stage 1 needs two OD entries");
        }
        r.od_left = parse_binary(od[0]);
        r.od_right = parse_binary(od[1]);
        return r;
    }
    if (stage == 2) {
        if (od.size() != 1) {
            throw std::invalid_argument("pattern: stage 2 needs a single theta entry");
        }
        r.od_spin_fired = true;
        r.od_theta = parse_angle_token(od[0]);
        return r;
    }
    if (od.size() != 2) {
        throw std::invalid_argument("pattern: stage 3 needs theta and phi entries");
    }
    r.od_spin_fired = true;
    r.od_theta = parse_angle_token(od[0]);
    r.od_phi = parse_angle_token(od[1]);
    return r;
}

}  // namespace sgdual
