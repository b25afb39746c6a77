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

#include <optional>
#include <string_view>

#include "sgdual/rng.hpp"
#include "sgdual/sensor.hpp"
#include "sgdual/stages.hpp"

namespace sgdual {

/// The three accounts of what a sensor interaction does to the state.
///
/// CI collapses the global wavefunction at the first committed read. MWI
/// branches the global wavefunction instead. Both predict the same click
/// statistics, so their samplers are observationally identical here and
/// differ only in which story the histogram is a histogram of. BHSI
/// branches locally at each sensor, which opens outcome classes the global
/// accounts forbid; those are controlled by BhsiParams.
enum class EngineKind { CI, MWI, BHSI };

/// What a committed transparent-sensor read does to the electromagnetic
/// phase accumulated by the branches it tagged, should they later remerge.
///
/// Unitary keeps the phase: the remerged beam carries the full shift and a
/// detector can verify the branch kept evolving independently between the
/// read and the merge. Erasure drops it: the remerged beam looks as if the
/// independent evolution never happened, the signature a retrocausal
/// reading of the delayed choice would predict.
enum class RetrocausalMode { Unitary, Erasure };

/// Knobs for the local-branching engine. All four probabilities are
/// per-trial; the first three are mutually exclusive anomaly categories
/// and must sum to at most 1, with the remainder going to the normal
/// aligned outcome.
struct BhsiParams {
    double p_delayed = 0.0;      ///< TS commits on the path the OD does not absorb
    double p_uncommitted = 0.0;  ///< no TS commits at all
    double p_double_ts = 0.0;    ///< both TS commit
    double p_recohere = 0.0;     ///< full-loop stages: branches remerge at the second half-loop
    RetrocausalMode retrocausal_mode = RetrocausalMode::Unitary;

    /// Throws std::domain_error when a probability leaves [0, 1] or the
    /// anomaly categories sum past 1.
    void validate() const;

    friend bool operator==(const BhsiParams&, const BhsiParams&) = default;
};

std::string_view to_string(EngineKind kind);
std::string_view to_string(RetrocausalMode mode);

/// Case-insensitive names: "ci", "mwi", "bhsi". Empty on no match.
std::optional<EngineKind> parse_engine_kind(std::string_view name);

/// Case-insensitive names: "unitary", "erasure". Empty on no match.
std::optional<RetrocausalMode> parse_retrocausal_mode(std::string_view name);

/// One simulated trial under global collapse. The first committed sensor
/// read selects a path with Born weight and every later device sees only
/// that path. Assumes config.validate() has passed.
ClickRecord run_trial_ci(const StageConfig& config, TrialRng& rng);

/// One simulated trial under global branching. All outcomes occur; the
/// record returned is the one in the branch selected with Born weight,
/// which is the only thing a single run of the apparatus can show. The
/// sampler is deliberately identical to the collapse engine's.
ClickRecord run_trial_mwi(const StageConfig& config, TrialRng& rng);

/// One simulated trial under local branching with the given anomaly knobs.
/// With all probabilities zero this reproduces the global engines' record
/// distribution exactly.
ClickRecord run_trial_bhsi(const StageConfig& config, const BhsiParams& params, TrialRng& rng);

/// Dispatch on kind; params is read only by the BHSI engine.
ClickRecord run_trial(EngineKind kind, const StageConfig& config, const BhsiParams& params,
                      TrialRng& rng);

}  // namespace sgdual
