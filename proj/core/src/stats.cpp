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

#include "sgdual/stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sgdual {

namespace {

constexpr int kMaxGammaIterations = 500;
constexpr double kGammaEpsilon = 1e-16;

// Lower regularized incomplete gamma P(a, x) by its power series,
// convergent for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < kMaxGammaIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaEpsilon) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a, x) by the modified Lentz
// continued fraction, convergent for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxGammaIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaEpsilon) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double chi2_term(double observed, double expected) {
    if (expected > 0.0) {
        const double diff = observed - expected;
        return diff * diff / expected;
    }
    // Zero expectation: any observation there is infinitely surprising.
    return observed > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("regularized_gamma_q: a must be positive and finite");
    }
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("regularized_gamma_q: x must be non-negative");
    }
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_continued_fraction(a, x);
}

double chi_square_sf(double chi2, int dof) {
    if (dof <= 0) {
        throw std::domain_error("chi_square_sf: degrees of freedom must be positive");
    }
    if (std::isnan(chi2) || chi2 < 0.0) {
        throw std::domain_error("chi_square_sf: statistic must be non-negative");
    }
    return regularized_gamma_q(dof / 2.0, chi2 / 2.0);
}

Chi2Result born_rule_test(std::uint64_t left_count, std::uint64_t right_count, double theta) {
    const double total = static_cast<double>(left_count) + static_cast<double>(right_count);
    if (total <= 0.0) {
        throw std::invalid_argument("born_rule_test: no detector counts to test");
    }
    if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi / 2.0) {
        throw std::domain_error("born_rule_test: theta must lie in [0, pi/2]");
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double expected_left = total * c * c;
    const double expected_right = total * s * s;

    Chi2Result result;
    result.chi2 = chi2_term(static_cast<double>(left_count), expected_left) +
                  chi2_term(static_cast<double>(right_count), expected_right);
    result.dof = 1;
    result.p = std::isinf(result.chi2) ? 0.0 : chi_square_sf(result.chi2, result.dof);
    return result;
}

RateInterval anomaly_rate(std::uint64_t hits, std::uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("anomaly_rate: no trials");
    }
    if (hits > trials) {
        throw std::domain_error("anomaly_rate: hits exceed trials");
    }
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(hits) / n;
    const double z2 = kWilson95Z * kWilson95Z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        kWilson95Z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;

    RateInterval interval;
    interval.rate = p_hat;
    interval.lower = std::max(0.0, std::min(center - half, p_hat));
    interval.upper = std::min(1.0, std::max(center + half, p_hat));
    return interval;
}

AuditAccumulator::AuditAccumulator(bool ts_inserted) : ts_inserted_(ts_inserted) {}

void AuditAccumulator::add(const ClickRecord& r) {
    if (stage_ == 0) {
        stage_ = r.stage;
    } else if (stage_ != r.stage) {
        throw std::domain_error("conservation audit: record stream mixes stages");
    }
    ++counts_.records;
    const int ts_count = (r.ts_left ? 1 : 0) + (r.ts_right ? 1 : 0);
    if (ts_inserted_ && ts_count != 1) ++counts_.probability_violations;
    if (r.stage == 1) {
        const int od_count = (r.od_left ? 1 : 0) + (r.od_right ? 1 : 0);
        if (od_count != 1) ++counts_.forbidden;
    }
}

void AuditAccumulator::merge(const AuditAccumulator& other) {
    if (other.stage_ == 0) return;
    if (stage_ == 0) {
        stage_ = other.stage_;
    } else if (stage_ != other.stage_) {
        throw std::domain_error("conservation audit: record stream mixes stages");
    }
    if (ts_inserted_ != other.ts_inserted_) {
        throw std::domain_error("conservation audit: partials disagree on ts_inserted");
    }
    counts_.records += other.counts_.records;
    counts_.forbidden += other.counts_.forbidden;
    counts_.probability_violations += other.counts_.probability_violations;
}

AuditReport AuditAccumulator::report() const {
    AuditReport r = counts_;
    r.pass = r.forbidden == 0;
    return r;
}

AuditReport conservation_audit(const std::vector<ClickRecord>& records, bool ts_inserted) {
    AuditAccumulator acc(ts_inserted);
    for (const auto& r : records) acc.add(r);
    return acc.report();
}

Chi2Result engine_equivalence(const Histogram& a, const Histogram& b) {
    if (a.empty() || b.empty()) {
        throw std::domain_error("engine_equivalence: empty histogram");
    }
    bool any_shared = false;
    for (const auto& [key, count] : a) {
        (void)count;
        if (b.count(key) != 0) {
            any_shared = true;
            break;
        }
    }
    if (!any_shared) {
        throw std::domain_error("engine_equivalence: histograms share no outcome bucket");
    }

    Histogram buckets = a;
    for (const auto& [key, count] : b) buckets.try_emplace(key, 0);

    double total_a = 0.0;
    double total_b = 0.0;
    for (const auto& [key, count] : a) total_a += static_cast<double>(count);
    for (const auto& [key, count] : b) total_b += static_cast<double>(count);
    if (total_a <= 0.0 || total_b <= 0.0) {
        throw std::domain_error("engine_equivalence: histogram with zero total");
    }
    const double grand = total_a + total_b;

    Chi2Result result;
    int informative_buckets = 0;
    for (const auto& [key, unused] : buckets) {
        (void)unused;
        const auto count_of = [&](const Histogram& h) {
            const auto it = h.find(key);
            return it == h.end() ? 0.0 : static_cast<double>(it->second);
        };
        const double obs_a = count_of(a);
        const double obs_b = count_of(b);
        const double column = obs_a + obs_b;
        if (column <= 0.0) continue;
        ++informative_buckets;
        result.chi2 += chi2_term(obs_a, total_a * column / grand);
        result.chi2 += chi2_term(obs_b, total_b * column / grand);
    }
    result.dof = informative_buckets - 1;
    if (result.dof <= 0) {
        // A single shared bucket cannot disagree.
        result.dof = 0;
        result.chi2 = 0.0;
        result.p = 1.0;
        return result;
    }
    result.p = std::isinf(result.chi2) ? 0.0 : chi_square_sf(result.chi2, result.dof);
    return result;
}

}  // namespace sgdual
