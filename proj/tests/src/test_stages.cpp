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

#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "sgdual/errors.hpp"
#include "sgdual/sensor.hpp"
#include "sgdual/stages.hpp"

using namespace sgdual;

namespace {

constexpr double kPi = std::numbers::pi;

ClickRecord stage1_record(bool ts_l, bool ts_r, bool od_l, bool od_r) {
    ClickRecord r;
    r.stage = 1;
    r.ts_left = ts_l;
    r.ts_right = ts_r;
    r.od_left = od_l;
    r.od_right = od_r;
    return r;
}

ClickRecord loop_record(int stage, bool ts_l, bool ts_r, double theta, double phi = 0.0) {
    ClickRecord r;
    r.stage = stage;
    r.ts_left = ts_l;
    r.ts_right = ts_r;
    r.od_spin_fired = true;
    r.od_theta = theta;
    r.od_phi = phi;
    return r;
}

std::map<OutcomeLabel, int> label_counts(const std::vector<TaxonomyRow>& rows) {
    std::map<OutcomeLabel, int> counts;
    for (const TaxonomyRow& row : rows) counts[row.outcome.label] += 1;
    return counts;
}

}  // namespace

TEST_SUITE("stages") {

TEST_CASE("stage config cross-field rules") {
    StageConfig c;
    CHECK_NOTHROW(c.validate());

    c.stage = 3;
    CHECK_THROWS_AS(c.validate(), std::domain_error);  // stage 3 needs physics
    c.em = default_physics();
    CHECK_NOTHROW(c.validate());

    c.stage = 1;
    CHECK_THROWS_AS(c.validate(), std::domain_error);  // stages 1-2 forbid physics
    c.em.reset();

    c.ts_inserted = false;
    CHECK_THROWS_AS(c.validate(), std::domain_error);  // control runs need a loop
    c.stage = 2;
    CHECK_NOTHROW(c.validate());

    c = StageConfig{};
    c.stage = 0;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("expected phase comes from the physics parameters") {
    StageConfig c;
    CHECK(c.expected_phase() == 0.0);
    c.stage = 3;
    c.em = default_physics();
    CHECK(c.expected_phase() == doctest::Approx(0.12170674232591702).epsilon(1e-12));
}

TEST_CASE("splitter outcomes classify per the discrimination table") {
    struct Expectation {
        bool ts_l, ts_r, od_l, od_r;
        OutcomeLabel label;
        Verdict ci, mwi, bhsi;
        bool prob_flag, phys_flag;
    };
    const Verdict C = Verdict::Consistent;
    const Verdict V = Verdict::Violated;
    const Verdict N = Verdict::NoExplanation;
    const std::vector<Expectation> table = {
        {false, false, false, false, OutcomeLabel::Forbidden, V, V, V, true, true},
        {false, false, false, true, OutcomeLabel::UncommittedChoice, N, N, C, true, false},
        {false, false, true, false, OutcomeLabel::UncommittedChoice, N, N, C, true, false},
        {false, false, true, true, OutcomeLabel::Forbidden, V, V, V, true, true},
        {false, true, false, false, OutcomeLabel::Forbidden, V, V, V, false, true},
        {false, true, false, true, OutcomeLabel::Normal, C, C, C, false, false},
        {false, true, true, false, OutcomeLabel::DelayedChoice, V, V, C, false, false},
        {false, true, true, true, OutcomeLabel::Forbidden, V, V, V, false, true},
        {true, false, false, false, OutcomeLabel::Forbidden, V, V, V, false, true},
        {true, false, false, true, OutcomeLabel::DelayedChoice, V, V, C, false, false},
        {true, false, true, false, OutcomeLabel::Normal, C, C, C, false, false},
        {true, false, true, true, OutcomeLabel::Forbidden, V, V, V, false, true},
        {true, true, false, false, OutcomeLabel::Forbidden, V, V, V, true, true},
        {true, true, false, true, OutcomeLabel::DoubleTS, N, N, N, true, false},
        {true, true, true, false, OutcomeLabel::DoubleTS, N, N, N, true, false},
        {true, true, true, true, OutcomeLabel::Forbidden, V, V, V, true, true},
    };
    for (const Expectation& e : table) {
        const ClickRecord r = stage1_record(e.ts_l, e.ts_r, e.od_l, e.od_r);
        CAPTURE(format_pattern(r));
        const OutcomeClass out = classify_stage1(r);
        CHECK(out.label == e.label);
        CHECK(out.ci == e.ci);
        CHECK(out.mwi == e.mwi);
        CHECK(out.bhsi == e.bhsi);
        CHECK(out.probability_violation == e.prob_flag);
        CHECK(out.physical_violation == e.phys_flag);
    }
}

TEST_CASE("splitter classifier rejects other stages") {
    ClickRecord r = stage1_record(true, false, true, false);
    r.stage = 2;
    CHECK_THROWS_AS(classify_stage1(r), std::domain_error);
}

TEST_CASE("full-loop outcomes classify per the discrimination table") {
    struct Expectation {
        bool ts_l, ts_r;
        double theta;
        OutcomeLabel label;
        Verdict ci, mwi, bhsi;
        bool prob_flag;
    };
    const Verdict C = Verdict::Consistent;
    const Verdict V = Verdict::Violated;
    const Verdict N = Verdict::NoExplanation;
    const double half = kPi / 2.0;
    const double quarter = kPi / 4.0;
    const std::vector<Expectation> table = {
        {true, false, 0.0, OutcomeLabel::Normal, C, C, C, false},
        {false, true, half, OutcomeLabel::Normal, C, C, C, false},
        {true, false, quarter, OutcomeLabel::Recoherence, V, V, C, false},
        {false, true, quarter, OutcomeLabel::Recoherence, V, V, C, false},
        {false, false, 0.0, OutcomeLabel::TSAnomalyNoMerge, N, N, N, true},
        {false, false, half, OutcomeLabel::TSAnomalyNoMerge, N, N, N, true},
        {true, true, 0.0, OutcomeLabel::TSAnomalyNoMerge, N, N, N, true},
        {true, true, half, OutcomeLabel::TSAnomalyNoMerge, N, N, N, true},
        {false, false, quarter, OutcomeLabel::TSAnomalyWithMerge, N, N, N, true},
        {true, true, quarter, OutcomeLabel::TSAnomalyWithMerge, N, N, N, true},
        {true, false, half, OutcomeLabel::Mismatch, V, V, C, false},
        {false, true, 0.0, OutcomeLabel::Mismatch, V, V, C, false},
    };
    for (const Expectation& e : table) {
        const ClickRecord r = loop_record(2, e.ts_l, e.ts_r, e.theta);
        CAPTURE(format_pattern(r));
        const OutcomeClass out = classify_stage2(r);
        CHECK(out.label == e.label);
        CHECK(out.ci == e.ci);
        CHECK(out.mwi == e.mwi);
        CHECK(out.bhsi == e.bhsi);
        CHECK(out.probability_violation == e.prob_flag);
        CHECK_FALSE(out.physical_violation);
    }
}

TEST_CASE("the ignorable-TS reading keeps its caveat") {
    const OutcomeClass quiet = classify_stage2(loop_record(2, false, false, kPi / 4.0));
    CHECK(quiet.label == OutcomeLabel::TSAnomalyWithMerge);
    CHECK_FALSE(quiet.note.empty());
}

TEST_CASE("full-loop classifier rejects off-grid readings") {
    CHECK_THROWS_AS(classify_stage2(loop_record(2, true, false, 0.3)), std::domain_error);
    CHECK_THROWS_AS(classify_stage2(loop_record(2, true, false, kPi)), std::domain_error);
}

TEST_CASE("control runs classify without TS flags") {
    CHECK(classify_stage2(loop_record(2, false, false, kPi / 4.0), false).label ==
          OutcomeLabel::Normal);
    const OutcomeClass pure = classify_stage2(loop_record(2, false, false, 0.0), false);
    CHECK(pure.label == OutcomeLabel::TSAnomalyNoMerge);
    CHECK_FALSE(pure.probability_violation);
    // A TS click without a TS in the beam is not a classification, it is a
    // broken apparatus.
    CHECK_THROWS_AS(classify_stage2(loop_record(2, true, false, 0.0), false),
                    std::domain_error);
}

TEST_CASE("phase dimension splits the merged classes") {
    const double phase = 0.122;
    const OutcomeClass with = classify_stage3(loop_record(3, true, false, kPi / 4.0, 0.122), phase);
    CHECK(with.label == OutcomeLabel::RecoherenceWithPhase);
    CHECK(with.ci == Verdict::Violated);
    CHECK(with.mwi == Verdict::Violated);
    CHECK(with.bhsi == Verdict::Consistent);

    const OutcomeClass without = classify_stage3(loop_record(3, true, false, kPi / 4.0, 0.0), phase);
    CHECK(without.label == OutcomeLabel::RecoherenceWithoutPhase);

    CHECK(classify_stage3(loop_record(3, false, false, kPi / 4.0, 0.122), phase).label ==
          OutcomeLabel::TSAnomalyWithMergeWithPhase);
    CHECK(classify_stage3(loop_record(3, true, true, kPi / 4.0, 0.0), phase).label ==
          OutcomeLabel::TSAnomalyWithMergeWithoutPhase);
}

TEST_CASE("pure readings pass through the stage-2 taxonomy") {
    const double phase = 0.122;
    CHECK(classify_stage3(loop_record(3, true, false, 0.0, 0.0), phase).label ==
          OutcomeLabel::Normal);
    CHECK(classify_stage3(loop_record(3, false, true, kPi / 2.0, 0.0), phase).label ==
          OutcomeLabel::Normal);
    CHECK(classify_stage3(loop_record(3, true, false, kPi / 2.0, 0.0), phase).label ==
          OutcomeLabel::Mismatch);
    CHECK(classify_stage3(loop_record(3, false, false, 0.0, 0.0), phase).label ==
          OutcomeLabel::TSAnomalyNoMerge);
}

TEST_CASE("a phase on a pure reading is its own anomaly") {
    const OutcomeClass out = classify_stage3(loop_record(3, true, false, 0.0, 0.122), 0.122);
    CHECK(out.label == OutcomeLabel::PhaseAnomaly);
    CHECK(out.ci == Verdict::NoExplanation);
    CHECK(out.mwi == Verdict::NoExplanation);
    CHECK(out.bhsi == Verdict::NoExplanation);
}

TEST_CASE("phase tolerance defaults to a tenth of the shift") {
    const double phase = 0.122;
    // 0.0121 is inside the default band around zero, 0.0123 is outside both.
    CHECK(classify_stage3(loop_record(3, true, false, kPi / 4.0, 0.0121), phase).label ==
          OutcomeLabel::RecoherenceWithoutPhase);
    CHECK_THROWS_AS(classify_stage3(loop_record(3, true, false, kPi / 4.0, 0.061), phase),
                    UnclassifiablePhaseError);
    // A custom tolerance widens the bands.
    CHECK(classify_stage3(loop_record(3, true, false, kPi / 4.0, 0.05), phase, 0.06).label ==
          OutcomeLabel::RecoherenceWithoutPhase);
    CHECK(classify_stage3(loop_record(3, true, false, kPi / 4.0, 0.08), phase, 0.06).label ==
          OutcomeLabel::RecoherenceWithPhase);
}

TEST_CASE("probability flags survive the phase refinement") {
    const OutcomeClass out =
        classify_stage3(loop_record(3, true, true, kPi / 4.0, 0.122), 0.122);
    CHECK(out.label == OutcomeLabel::TSAnomalyWithMergeWithPhase);
    CHECK(out.probability_violation);
}

TEST_CASE("classify dispatches on the record stage") {
    StageConfig config;
    config.stage = 1;
    CHECK(classify(stage1_record(true, false, true, false), config).label ==
          OutcomeLabel::Normal);

    config.stage = 2;
    CHECK(classify(loop_record(2, true, false, kPi / 4.0), config).label ==
          OutcomeLabel::Recoherence);

    config.stage = 3;
    config.em = default_physics();
    const double phase = config.expected_phase();
    CHECK(classify(loop_record(3, true, false, kPi / 4.0, phase), config).label ==
          OutcomeLabel::RecoherenceWithPhase);
}

TEST_CASE("taxonomy row counts per stage") {
    CHECK(enumerate_taxonomy(1).size() == 16);
    CHECK(enumerate_taxonomy(2).size() == 12);
    CHECK(enumerate_taxonomy(3).size() == 24);
}

TEST_CASE("taxonomy class counts per stage") {
    const auto s1 = label_counts(enumerate_taxonomy(1));
    CHECK(s1.at(OutcomeLabel::Normal) == 2);
    CHECK(s1.at(OutcomeLabel::DelayedChoice) == 2);
    CHECK(s1.at(OutcomeLabel::UncommittedChoice) == 2);
    CHECK(s1.at(OutcomeLabel::DoubleTS) == 2);
    CHECK(s1.at(OutcomeLabel::Forbidden) == 8);
    CHECK(s1.size() == 5);

    const auto s2 = label_counts(enumerate_taxonomy(2));
    CHECK(s2.at(OutcomeLabel::Normal) == 2);
    CHECK(s2.at(OutcomeLabel::Recoherence) == 2);
    CHECK(s2.at(OutcomeLabel::TSAnomalyNoMerge) == 4);
    CHECK(s2.at(OutcomeLabel::TSAnomalyWithMerge) == 2);
    CHECK(s2.at(OutcomeLabel::Mismatch) == 2);
    CHECK(s2.size() == 5);

    const auto s3 = label_counts(enumerate_taxonomy(3));
    CHECK(s3.at(OutcomeLabel::Normal) == 2);
    CHECK(s3.at(OutcomeLabel::RecoherenceWithPhase) == 2);
    CHECK(s3.at(OutcomeLabel::RecoherenceWithoutPhase) == 2);
    CHECK(s3.at(OutcomeLabel::TSAnomalyNoMerge) == 4);
    CHECK(s3.at(OutcomeLabel::TSAnomalyWithMergeWithPhase) == 2);
    CHECK(s3.at(OutcomeLabel::TSAnomalyWithMergeWithoutPhase) == 2);
    CHECK(s3.at(OutcomeLabel::Mismatch) == 2);
    CHECK(s3.at(OutcomeLabel::PhaseAnomaly) == 8);
    CHECK(s3.size() == 8);
}

TEST_CASE("taxonomy rows partition the outcome space") {
    for (const int stage : {1, 2, 3}) {
        CAPTURE(stage);
        const std::vector<TaxonomyRow> rows = enumerate_taxonomy(stage);
        std::set<std::string> patterns;
        for (const TaxonomyRow& row : rows) {
            // No duplicate tuples, and re-classifying the tuple reproduces
            // the row it came from.
            REQUIRE(patterns.insert(row.pattern).second);
            const ClickRecord r = parse_pattern(row.pattern, stage);
            OutcomeClass out;
            if (stage == 1) out = classify_stage1(r);
            else if (stage == 2) out = classify_stage2(r);
            else out = classify_stage3(r, 0.122);
            REQUIRE(out.label == row.outcome.label);
            REQUIRE(out.ci == row.outcome.ci);
            REQUIRE(out.mwi == row.outcome.mwi);
            REQUIRE(out.bhsi == row.outcome.bhsi);
        }
    }
}

TEST_CASE("taxonomy verdicts follow the label") {
    for (const int stage : {1, 2, 3}) {
        for (const TaxonomyRow& row : enumerate_taxonomy(stage)) {
            CAPTURE(stage);
            CAPTURE(row.pattern);
            switch (row.outcome.label) {
                case OutcomeLabel::Normal:
                    CHECK(row.outcome.ci == Verdict::Consistent);
                    CHECK(row.outcome.mwi == Verdict::Consistent);
                    CHECK(row.outcome.bhsi == Verdict::Consistent);
                    break;
                case OutcomeLabel::DelayedChoice:
                case OutcomeLabel::Recoherence:
                case OutcomeLabel::RecoherenceWithPhase:
                case OutcomeLabel::RecoherenceWithoutPhase:
                case OutcomeLabel::Mismatch:
                    CHECK(row.outcome.ci == Verdict::Violated);
                    CHECK(row.outcome.mwi == Verdict::Violated);
                    CHECK(row.outcome.bhsi == Verdict::Consistent);
                    break;
                case OutcomeLabel::Forbidden:
                    CHECK(row.outcome.ci == Verdict::Violated);
                    CHECK(row.outcome.mwi == Verdict::Violated);
                    CHECK(row.outcome.bhsi == Verdict::Violated);
                    break;
                default:
                    CHECK(row.outcome.ci == Verdict::NoExplanation);
                    CHECK(row.outcome.mwi == Verdict::NoExplanation);
                    break;
            }
        }
    }
}

TEST_CASE("taxonomy flags follow the conservation rules") {
    for (const int stage : {1, 2, 3}) {
        for (const TaxonomyRow& row : enumerate_taxonomy(stage)) {
            CAPTURE(stage);
            CAPTURE(row.pattern);
            const ClickRecord r = parse_pattern(row.pattern, stage);
            const int ts_count = (r.ts_left ? 1 : 0) + (r.ts_right ? 1 : 0);
            CHECK(row.outcome.probability_violation == (ts_count != 1));
            if (stage == 1) {
                const int od_count = (r.od_left ? 1 : 0) + (r.od_right ? 1 : 0);
                CHECK(row.outcome.physical_violation == (od_count != 1));
            } else {
                CHECK_FALSE(row.outcome.physical_violation);
            }
        }
    }
}

TEST_CASE("taxonomy rejects unknown stages") {
    CHECK_THROWS_AS(enumerate_taxonomy(0), std::domain_error);
    CHECK_THROWS_AS(enumerate_taxonomy(4), std::domain_error);
}

}  // TEST_SUITE
