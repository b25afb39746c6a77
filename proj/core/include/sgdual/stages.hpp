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
#include <string>
#include <vector>

#include "sgdual/physics.hpp"
#include "sgdual/sensor.hpp"
#include "sgdual/spin_state.hpp"

namespace sgdual {

/// One experimental arrangement.
///
/// Stage 1: a single splitter with a dual sensor on each path.
/// Stage 2: a full loop with a TS on each path and one detector at the
///          remerge point.
/// Stage 3: stage 2 plus a second loop whose charge imprints an
///          electromagnetic phase on the right branch.
struct StageConfig {
    int stage = 1;
    SpinQubit initial{0.0, 0.0};
    SensorTimings timings = default_timings();
    std::optional<PhysicsParams> em;  ///< stage 3 only
    bool ts_inserted = true;          ///< false = the no-TS control run (stages 2-3)

    /// Cross-field rules: stage 3 requires em, stages 1-2 forbid it;
    /// ts_inserted = false is legal only for stages 2-3.
    void validate() const;

    /// The phase shift the detector is expected to see in a recohered
    /// stage-3 record (verbatim formula). Zero for stages 1-2.
    double expected_phase() const;

    friend bool operator==(const StageConfig&, const StageConfig&) = default;
};

enum class Verdict { Consistent, Violated, NoExplanation };

std::string_view to_string(Verdict v);

/// Outcome categories across all three stages.
enum class OutcomeLabel {
    // stage 1
    Normal,
    DelayedChoice,
    UncommittedChoice,
    DoubleTS,
    Forbidden,
    // stages 2-3 (Normal is shared)
    Recoherence,
    TSAnomalyNoMerge,
    TSAnomalyWithMerge,
    Mismatch,
    // stage 3 refinements of the merged classes
    RecoherenceWithPhase,
    RecoherenceWithoutPhase,
    TSAnomalyWithMergeWithPhase,
    TSAnomalyWithMergeWithoutPhase,
    /// A phase reading on a record whose detector saw a pure spin state.
    /// No engine produces these; the label exists so the stage-3 outcome
    /// space stays total.
    PhaseAnomaly,
};

std::string_view to_string(OutcomeLabel label);

/// Classification of one record: the category, the per-interpretation
/// verdicts, and the conservation flags.
struct OutcomeClass {
    OutcomeLabel label;
    Verdict ci;
    Verdict mwi;
    Verdict bhsi;
    bool probability_violation = false;
    bool physical_violation = false;
    std::string note;  ///< caveats the taxonomy attaches to this category
};

/// Stage-1 classifier, total over the 16 tuples [ts_L, ts_R; od_L, od_R].
/// Throws std::domain_error on a record whose stage field is not 1.
OutcomeClass classify_stage1(const ClickRecord& r);

/// Stage-2 classifier, total over the 12 combinations [ts_L, ts_R; theta]
/// with theta in {0, pi/4, pi/2}; any other theta is a domain error.
/// ts_inserted = false marks the control run: its expected outcome
/// [0,0;pi/4] classifies as Normal and no TS pattern is flagged.
OutcomeClass classify_stage2(const ClickRecord& r, bool ts_inserted = true);

/// Stage-3 classifier: the stage-2 taxonomy extended by a phase dimension.
/// A merged record whose phase is within tolerance of expected_phase is
/// "with phase" (retrocausal readings falsified); within tolerance of zero
/// it is "without phase" (signature consistent with retrocausality). A
/// phase near neither raises UnclassifiablePhaseError. Tolerance < 0
/// selects the default |expected_phase| / 10.
OutcomeClass classify_stage3(const ClickRecord& r, double expected_phase,
                             double phase_tolerance = -1.0, bool ts_inserted = true);

/// Dispatch on record stage; stage 3 uses config.expected_phase().
OutcomeClass classify(const ClickRecord& r, const StageConfig& config);

/// One row of the outcome table.
struct TaxonomyRow {
    int stage;
    std::string pattern;
    OutcomeClass outcome;
};

/// The full labeled outcome space: 16 rows for stage 1, 12 for stage 2,
/// 24 for stage 3 (12 tuples x 2 phase readings). Rows partition the
/// space: every syntactically valid record matches exactly one row.
/// expected_phase only shapes the stage-3 phase column.
std::vector<TaxonomyRow> enumerate_taxonomy(int stage, double expected_phase = 0.122);

}  // namespace sgdual
