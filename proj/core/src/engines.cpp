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

#include "sgdual/engines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sgdual/physics.hpp"
#include "sgdual/spin_state.hpp"

namespace sgdual {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

double od_click_time(const SensorTimings& t) {
    return t.gap_transit + t.tau_od;
}

void add_click(std::vector<TimedClick>& events, Channel channel, double time, double theta = 0.0,
               double phi = 0.0) {
    events.push_back(TimedClick{channel, time, theta, phi});
}

ClickRecord assemble(std::vector<TimedClick> events, const StageConfig& config) {
    std::sort(events.begin(), events.end(),
              [](const TimedClick& a, const TimedClick& b) { return a.time < b.time; });
    std::vector<ClickRecord> records = pair_clicks(events, config.timings, config.stage);
    if (records.size() != 1) {
        throw std::runtime_error(
            "trial events span more than one pairing window; gap_transit is too large for "
            "t_window");
    }
    return std::move(records.front());
}

PathState entangled_state(const StageConfig& config) {
    PathState s = split(config.initial);
    if (config.stage == 3) s = apply_em_phase(s, em_phase_shift(*config.em));
    return s;
}

/// The no-TS run: nothing probes the paths, the second half-loop undoes the
/// first and the detector sees the restored superposition. Needs no
/// randomness at all. The phi reading is the accumulated electromagnetic
/// phase, measured against the phase the input state already had.
ClickRecord control_trial(const StageConfig& config) {
    PathState s = entangled_state(config);
    const SpinQubit merged = merge(s);
    std::vector<TimedClick> events;
    add_click(events, Channel::OdSpin, od_click_time(config.timings), merged.theta, s.em_phase);
    return assemble(std::move(events), config);
}

/// Shared sampler for the two global-account engines.
///
/// Draw order is part of the contract: (1) the Born side, (2) the TS commit
/// via sample_ts_event. The commit can land later on the trial clock than
/// the opaque detector's absorption; the record keeps both timestamps.
ClickRecord baseline_trial(const StageConfig& config, TrialRng& rng) {
    if (!config.ts_inserted) return control_trial(config);

    PathState s = entangled_state(config);
    const BornWeights w = born_weights(s);
    const bool left = rng.uniform01() < w.p_up_left;

    std::vector<TimedClick> events;
    const TSEvent ts =
        sample_ts_event(left ? w.p_up_left : w.p_down_right, config.timings, 1.0, rng);
    if (ts.fired) {
        add_click(events, left ? Channel::TsLeft : Channel::TsRight, ts.commit_time);
    }

    if (config.stage == 1) {
        add_click(events, left ? Channel::OdLeft : Channel::OdRight,
                  od_click_time(config.timings));
    } else {
        // The committed read leaves a single occupied path, so the merged
        // beam is the pure spin state of that path and carries no phase.
        add_click(events, Channel::OdSpin, od_click_time(config.timings), left ? 0.0 : kHalfPi,
                  0.0);
    }
    return assemble(std::move(events), config);
}

enum class AnomalyKind { Delayed, Uncommitted, DoubleTs, Normal };

/// One uniform draw regardless of the knob values, so the draw count per
/// trial does not depend on the parameter point.
AnomalyKind draw_anomaly(const BhsiParams& p, TrialRng& rng) {
    const double u = rng.uniform01();
    if (u < p.p_delayed) return AnomalyKind::Delayed;
    if (u < p.p_delayed + p.p_uncommitted) return AnomalyKind::Uncommitted;
    if (u < p.p_delayed + p.p_uncommitted + p.p_double_ts) return AnomalyKind::DoubleTs;
    return AnomalyKind::Normal;
}

}  // namespace

void BhsiParams::validate() const {
    const double probs[4] = {p_delayed, p_uncommitted, p_double_ts, p_recohere};
    const char* names[4] = {"p_delayed", "p_uncommitted", "p_double_ts", "p_recohere"};
    for (int i = 0; i < 4; ++i) {
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
            throw std::domain_error(std::string("bhsi params: ") + names[i] +
                                    " must lie in [0, 1]");
        }
    }
    if (p_delayed + p_uncommitted + p_double_ts > 1.0 + 1e-9) {
        throw std::domain_error(
            "bhsi params: p_delayed + p_uncommitted + p_double_ts must not exceed 1");
    }
}

std::string_view to_string(EngineKind kind) {
    switch (kind) {
        case EngineKind::CI: return "ci";
        case EngineKind::MWI: return "mwi";
        case EngineKind::BHSI: return "bhsi";
    }
    return "?";
}

std::string_view to_string(RetrocausalMode mode) {
    return mode == RetrocausalMode::Unitary ? "unitary" : "erasure";
}

std::optional<EngineKind> parse_engine_kind(std::string_view name) {
    if (iequals(name, "ci")) return EngineKind::CI;
    if (iequals(name, "mwi")) return EngineKind::MWI;
    if (iequals(name, "bhsi")) return EngineKind::BHSI;
    return std::nullopt;
}

std::optional<RetrocausalMode> parse_retrocausal_mode(std::string_view name) {
    if (iequals(name, "unitary")) return RetrocausalMode::Unitary;
    if (iequals(name, "erasure")) return RetrocausalMode::Erasure;
    return std::nullopt;
}

ClickRecord run_trial_ci(const StageConfig& config, TrialRng& rng) {
    return baseline_trial(config, rng);
}

ClickRecord run_trial_mwi(const StageConfig& config, TrialRng& rng) {
    return baseline_trial(config, rng);
}

ClickRecord run_trial_bhsi(const StageConfig& config, const BhsiParams& params, TrialRng& rng) {
    params.validate();
    if (!config.ts_inserted) return control_trial(config);

    PathState s = entangled_state(config);
    const BornWeights w = born_weights(s);

    // Fixed draw order: Born side, anomaly category, TS commits (left
    // before right when both), then the merge roll for the categories that
    // can remerge. The opaque absorption keeps the Born side under every
    // parameter point, so the detector marginals stay on the Born rule.
    const bool left = rng.uniform01() < w.p_up_left;
    const AnomalyKind anomaly = draw_anomaly(params, rng);

    std::vector<TimedClick> events;
    bool committed_left = false;
    bool committed_right = false;
    switch (anomaly) {
        case AnomalyKind::Delayed: {
            const bool ts_on_left = !left;
            const TSEvent ts = sample_ts_event(ts_on_left ? w.p_up_left : w.p_down_right,
                                               config.timings, 1.0, rng);
            add_click(events, ts_on_left ? Channel::TsLeft : Channel::TsRight, ts.commit_time);
            (ts_on_left ? committed_left : committed_right) = true;
            break;
        }
        case AnomalyKind::Uncommitted:
            break;
        case AnomalyKind::DoubleTs: {
            const TSEvent ts_l = sample_ts_event(w.p_up_left, config.timings, 1.0, rng);
            add_click(events, Channel::TsLeft, ts_l.commit_time);
            const TSEvent ts_r = sample_ts_event(w.p_down_right, config.timings, 1.0, rng);
            add_click(events, Channel::TsRight, ts_r.commit_time);
            committed_left = committed_right = true;
            break;
        }
        case AnomalyKind::Normal: {
            const TSEvent ts =
                sample_ts_event(left ? w.p_up_left : w.p_down_right, config.timings, 1.0, rng);
            add_click(events, left ? Channel::TsLeft : Channel::TsRight, ts.commit_time);
            (left ? committed_left : committed_right) = true;
            break;
        }
    }

    if (config.stage == 1) {
        add_click(events, left ? Channel::OdLeft : Channel::OdRight,
                  od_click_time(config.timings));
        return assemble(std::move(events), config);
    }

    // Full-loop stages from here. A committed read tags its branch; the tag
    // blocks nothing by itself, remerging stays possible.
    if (committed_left) s.left_status = BranchStatus::TsTagged;
    if (committed_right) s.right_status = BranchStatus::TsTagged;

    // A delayed commit happens after the second half-loop has already
    // passed the particle, so that category never remerges. The others
    // remerge with the recoherence probability.
    bool merged = false;
    if (anomaly != AnomalyKind::Delayed) {
        merged = rng.uniform01() < params.p_recohere;
    }

    double theta = 0.0;
    double phi = 0.0;
    if (merged) {
        const SpinQubit out = merge(s);
        theta = out.theta;
        const bool any_commit = committed_left || committed_right;
        const bool erased = any_commit && params.retrocausal_mode == RetrocausalMode::Erasure;
        phi = erased ? 0.0 : s.em_phase;
    } else {
        theta = left ? 0.0 : kHalfPi;
    }
    add_click(events, Channel::OdSpin, od_click_time(config.timings), theta, phi);
    return assemble(std::move(events), config);
}

ClickRecord run_trial(EngineKind kind, const StageConfig& config, const BhsiParams& params,
                      TrialRng& rng) {
    switch (kind) {
        case EngineKind::CI: return run_trial_ci(config, rng);
        case EngineKind::MWI: return run_trial_mwi(config, rng);
        case EngineKind::BHSI: return run_trial_bhsi(config, params, rng);
    }
    throw std::domain_error("run_trial: unknown engine kind");
}

}  // namespace sgdual
