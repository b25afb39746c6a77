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

#include "sgdual/report.hpp"

#include <charconv>
#include <ctime>

#include <json.hpp>

namespace sgdual {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

ordered_json timings_json(const SensorTimings& t) {
    return ordered_json{{"tau_od", t.tau_od},
                        {"tau_ts", t.tau_ts},
                        {"t_window", t.t_window},
                        {"rep_rate", t.rep_rate},
                        {"gap_transit", t.gap_transit}};
}

std::string flags_field(const OutcomeClass& outcome) {
    std::string flags;
    if (outcome.probability_violation) flags += "probability-violation";
    if (outcome.physical_violation) {
        if (!flags.empty()) flags += ';';
        flags += "physical-conservation-violation";
    }
    return flags;
}

}  // namespace

std::string report_json(const RunReport& report, const ExperimentConfig& config) {
    ordered_json doc;
    doc["schema"] = "sgdual-report/1";

    ordered_json experiment;
    experiment["stage"] = config.stage_config.stage;
    experiment["engine"] = to_string(config.engine);
    experiment["trials"] = report.trial_count;
    experiment["seed"] = report.seed;
    experiment["ts_inserted"] = config.stage_config.ts_inserted;
    experiment["initial"] = ordered_json{{"theta", config.stage_config.initial.theta},
                                         {"phi", config.stage_config.initial.phi}};
    experiment["timings"] = timings_json(config.stage_config.timings);
    if (config.engine == EngineKind::BHSI) {
        experiment["bhsi"] = ordered_json{
            {"p_delayed", config.bhsi.p_delayed},
            {"p_uncommitted", config.bhsi.p_uncommitted},
            {"p_double_ts", config.bhsi.p_double_ts},
            {"p_recohere", config.bhsi.p_recohere},
            {"retrocausal_mode", to_string(config.bhsi.retrocausal_mode)}};
    }
    if (config.stage_config.em.has_value()) {
        const PhysicsParams& p = *config.stage_config.em;
        experiment["physics"] = ordered_json{{"q1", p.q1},
                                             {"q2", p.q2},
                                             {"d", p.d},
                                             {"delta_x", p.delta_x},
                                             {"tau", p.tau},
                                             {"m", p.m},
                                             {"grad_b", p.grad_b},
                                             {"dt_ref", p.dt_ref},
                                             {"m_ref", p.m_ref}};
        experiment["expected_phase"] = config.stage_config.expected_phase();
    }
    doc["experiment"] = experiment;
    doc["config_digest"] = report.config_digest;

    ordered_json labels = ordered_json::object();
    for (const auto& [label, count] : report.label_histogram) labels[label] = count;
    ordered_json patterns = ordered_json::object();
    for (const auto& [pattern, count] : report.pattern_histogram) patterns[pattern] = count;
    doc["histogram"] = ordered_json{{"labels", labels}, {"patterns", patterns}};

    ordered_json born;
    born["tested"] = report.born_tested;
    born["left"] = report.born_left;
    born["right"] = report.born_right;
    if (report.born_tested) {
        born["theta"] = config.stage_config.initial.theta;
        born["chi2"] = report.born_test.chi2;
        born["dof"] = report.born_test.dof;
        born["p"] = report.born_test.p;
    }
    doc["born"] = born;

    ordered_json rates = ordered_json::object();
    for (const auto& [label, interval] : report.anomaly_rates) {
        rates[label] = ordered_json{
            {"rate", interval.rate}, {"lower95", interval.lower}, {"upper95", interval.upper}};
    }
    doc["anomaly_rates"] = rates;

    doc["audit"] = ordered_json{{"records", report.audit.records},
                                {"forbidden", report.audit.forbidden},
                                {"probability_violations", report.audit.probability_violations},
                                {"pass", report.audit.pass}};

    return doc.dump(2) + "\n";
}

std::string histogram_csv(const RunReport& report) {
    std::string out = "label,count,rate,lower95,upper95\n";
    for (const auto& [label, count] : report.label_histogram) {
        out += label;
        out += ',';
        out += std::to_string(count);
        const auto it = report.anomaly_rates.find(label);
        if (it != report.anomaly_rates.end()) {
            out += ',';
            out += format_double(it->second.rate);
            out += ',';
            out += format_double(it->second.lower);
            out += ',';
            out += format_double(it->second.upper);
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    return out;
}

std::string taxonomy_csv(const std::vector<TaxonomyRow>& rows) {
    std::string out = "stage,tuple,label,ci_verdict,mwi_verdict,bhsi_verdict,flags\n";
    for (const TaxonomyRow& row : rows) {
        out += std::to_string(row.stage);
        out += ",\"";
        out += row.pattern;
        out += "\",";
        out += to_string(row.outcome.label);
        out += ',';
        out += to_string(row.outcome.ci);
        out += ',';
        out += to_string(row.outcome.mwi);
        out += ',';
        out += to_string(row.outcome.bhsi);
        out += ',';
        out += flags_field(row.outcome);
        out += '\n';
    }
    return out;
}

std::string metadata_json(double wall_seconds, int workers) {
    ordered_json doc;
    doc["wall_seconds"] = wall_seconds;
    doc["workers"] = workers;
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::tm parts{};
    gmtime_r(&now, &parts);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &parts);
    doc["written_at"] = stamp;
    return doc.dump(2) + "\n";
}

}  // namespace sgdual
