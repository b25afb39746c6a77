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
#include <map>
#include <string>

#include "sgdual/sensor.hpp"

namespace sgdual {

/// z for a central 95% normal interval.
inline constexpr double kWilson95Z = 1.959964;

/// Default significance threshold for the homogeneity tests. 0.05 is too
/// trigger-happy when every commit reruns million-trial comparisons.
inline constexpr double kEquivalenceAlpha = 0.001;

/// Ordered so serialized reports iterate in a stable key order.
using Histogram = std::map<std::string, std::uint64_t>;

/// Upper regularized incomplete gamma Q(a, x), evaluated by the classic
/// series / continued-fraction pair. Relative accuracy ~1e-14.
/// Throws std::domain_error for a <= 0 or x < 0.
double regularized_gamma_q(double a, double x);

/// Chi-square survival function P(X >= chi2) with dof degrees of freedom.
/// Throws std::domain_error for dof <= 0 or negative/non-finite chi2
/// (+infinity is allowed and gives 0).
double chi_square_sf(double chi2, int dof);

struct Chi2Result {
    double chi2 = 0.0;
    int dof = 0;
    double p = 1.0;
};

/// Goodness of fit of observed (left, right) detector counts against the
/// Born weights (cos^2 theta, sin^2 theta), one degree of freedom.
/// Throws std::invalid_argument when both counts are zero and
/// std::domain_error for theta outside [0, pi/2].
Chi2Result born_rule_test(std::uint64_t left_count, std::uint64_t right_count, double theta);

struct RateInterval {
    double rate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Wilson 95% score interval for hits out of trials. Chosen over the Wald
/// interval for sane behavior at zero observed hits, the central use case
/// when the anomaly knobs are off. Throws std::invalid_argument for
/// trials = 0 and std::domain_error for hits > trials.
RateInterval anomaly_rate(std::uint64_t hits, std::uint64_t trials);

struct AuditReport {
    std::uint64_t records = 0;
    /// Stage-1 records whose OD click count is not exactly one.
    std::uint64_t forbidden = 0;
    /// Records whose TS click count is not exactly one (zero when the run
    /// was a no-TS control).
    std::uint64_t probability_violations = 0;
    /// The audit gate: probability anomalies are reported, physical
    /// conservation breaches fail the run.
    bool pass = true;
};

/// Streaming conservation audit. Feed records as they are produced; merge
/// partials from worker threads; read the report at the end. The stream
/// must be stage-homogeneous, mixing stages throws std::domain_error.
class AuditAccumulator {
public:
    explicit AuditAccumulator(bool ts_inserted = true);

    void add(const ClickRecord& r);
    void merge(const AuditAccumulator& other);
    AuditReport report() const;

private:
    bool ts_inserted_;
    int stage_ = 0;  ///< 0 until the first record fixes the stage
    AuditReport counts_;
};

/// One-shot audit of a whole record stream.
AuditReport conservation_audit(const std::vector<ClickRecord>& records, bool ts_inserted = true);

/// Two-sample chi-square homogeneity test over outcome buckets. The bucket
/// set is the union of both key sets with absent buckets counted as zero;
/// two histograms sharing no bucket at all are incomparable and throw
/// std::domain_error, as does an empty histogram.
Chi2Result engine_equivalence(const Histogram& a, const Histogram& b);

/// Everything a finished run reports. Serialization lives in report.hpp;
/// the invariants (histograms sum to trial_count, interval bounds ordered)
/// are established by the runner.
struct RunReport {
    std::uint64_t trial_count = 0;
    Histogram label_histogram;
    Histogram pattern_histogram;
    std::uint64_t born_left = 0;   ///< stage 1: OD_L clicks; stages 2-3: theta = 0 readings
    std::uint64_t born_right = 0;  ///< stage 1: OD_R clicks; stages 2-3: theta = pi/2 readings
    bool born_tested = false;      ///< false when no pure reading was available
    Chi2Result born_test;
    std::map<std::string, RateInterval> anomaly_rates;
    AuditReport audit;
    std::uint64_t seed = 0;
    std::string config_digest;
};

}  // namespace sgdual
