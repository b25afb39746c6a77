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
#include <vector>

#include "sgdual/rng.hpp"

namespace sgdual {

/// Default ratio quantifying "much smaller than" in the timing-ordering
/// check: the click window must be at most 1/f divided by this factor.
inline constexpr double kWindowSeparationFactor = 100.0;

/// Reaction times and windows of the dual-sensor arrangement, in SI units.
struct SensorTimings {
    double tau_od;       ///< opaque-detector reaction time [s]
    double tau_ts;       ///< transparent-sensor reaction time [s]
    double t_window;     ///< click-pairing window T_w [s]
    double rep_rate;     ///< trial repetition frequency f [Hz]
    double gap_transit;  ///< time of flight from TS probe region to OD [s]

    friend bool operator==(const SensorTimings&, const SensorTimings&) = default;
};

/// Reference values quoted with the timing constraint: tau_OD ~ 1 ns,
/// tau_TS ~ 10 ns, T_w ~ 60 ns, f ~ 1 kHz, sub-millimeter gap.
SensorTimings default_timings();

struct TimingCheck {
    std::string name;
    double lhs;
    double rhs;
    bool pass;
};

struct ValidationReport {
    std::vector<TimingCheck> checks;
    bool pass;
};

/// Check the ordering tau_OD < tau_TS < T_w <= (1/f)/separation_factor.
/// Each inequality is reported individually; overall pass requires all.
/// Throws std::domain_error on non-positive or non-finite fields.
ValidationReport validate_timing(const SensorTimings& t,
                                 double separation_factor = kWindowSeparationFactor);

enum class Channel {
    TsLeft,
    TsRight,
    OdLeft,
    OdRight,
    OdSpin,  ///< the single bottom detector of the full-loop stages
};

/// One sensor click. theta/phi carry the spin reading for OdSpin clicks and
/// are meaningless for the binary channels.
struct TimedClick {
    Channel channel;
    double time;  ///< seconds from trial start
    double theta = 0.0;
    double phi = 0.0;
};

/// Per-trial sensor readings.
///
/// Stage 1 uses the four binary fields; stages 2-3 use od_theta (discrete
/// {0, pi/4, pi/2}) and stage 3 additionally od_phi. clicks keeps the raw
/// timestamped events the record was assembled from.
struct ClickRecord {
    int stage = 1;
    bool ts_left = false;
    bool ts_right = false;
    bool od_left = false;
    bool od_right = false;
    bool od_spin_fired = false;
    double od_theta = 0.0;
    double od_phi = 0.0;
    std::vector<TimedClick> clicks;
};

struct TSEvent {
    bool fired;
    double commit_time;  ///< seconds from probe crossing, in [0, tau_TS]
};

/// Stochastic realization of one transparent-sensor interaction.
///
/// The engine decides whether the sensor fires by passing commit_probability
/// 0 or 1 for committed choices; values in between model a sensor that may
/// fail to commit. The commit time is uniform on [0, tau_TS]; the scale of
/// the reaction time is known but not its distribution, so uniform is the
/// least-assumption choice.
TSEvent sample_ts_event(double branch_weight, const SensorTimings& timings,
                        double commit_probability, TrialRng& rng);

/// Group timestamped clicks into trial records by the pairing window: the
/// first click opens a window of width t_window; clicks inside it join the
/// record, the first click beyond opens the next record. Events must be
/// sorted by time. A normal simulated trial yields exactly one record.
/// Throws std::invalid_argument on an empty event list.
std::vector<ClickRecord> pair_clicks(const std::vector<TimedClick>& events,
                                     const SensorTimings& timings, int stage);

/// Compact tuple form of a record: "[1,0;1,0]" (stage 1),
/// "[1,0;pi/4]" (stage 2), "[1,0;pi/4,0.122]" (stage 3).
std::string format_pattern(const ClickRecord& r);

/// Inverse of format_pattern for the given stage (the stage cannot always
/// be told from the tuple alone: "[0,0;0,0]" is a valid stage-1 and a
/// valid stage-3 shape). Angles accept pi fractions and decimal radians.
/// Throws std::invalid_argument on malformed text or a shape/stage clash.
ClickRecord parse_pattern(std::string_view pattern, int stage);

}  // namespace sgdual
