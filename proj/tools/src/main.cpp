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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgdual/config.hpp"
#include "sgdual/engines.hpp"
#include "sgdual/errors.hpp"
#include "sgdual/physics.hpp"
#include "sgdual/report.hpp"
#include "sgdual/runner.hpp"
#include "sgdual/sensor.hpp"
#include "sgdual/stages.hpp"
#include "sgdual/stats.hpp"
#include "sgdual/units.hpp"

using namespace sgdual;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitAudit = 3;

/// Relative output paths land under this directory when it is set.
constexpr const char* kOutputDirEnvVar = "SGDUAL_OUTPUT_DIR";

std::string format_value(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

std::string format_short(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.4g", v);
    return buffer;
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnvVar)) {
            if (*dir != '\0') return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

std::string strip_report_extension(const std::string& name) {
    for (const char* ext : {".json", ".csv"}) {
        if (name.size() > std::strlen(ext) &&
            name.compare(name.size() - std::strlen(ext), std::string::npos, ext) == 0) {
            return name.substr(0, name.size() - std::strlen(ext));
        }
    }
    return name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    std::optional<std::string> format;
    int workers = 1;
};

int cmd_run(const RunArgs& args) {
    ExperimentConfig config = load_config(args.config_path);
    if (args.seed) config.seed = *args.seed;
    if (args.output) config.output_path = *args.output;
    if (args.format) {
        if (*args.format == "json") config.output_format = OutputFormat::Json;
        else if (*args.format == "csv") config.output_format = OutputFormat::Csv;
        else throw std::invalid_argument("--format expects json or csv");
    }

    const auto start = std::chrono::steady_clock::now();
    const RunReport report = run(config, RunOptions{args.workers});
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();

    const std::string body = report_json(report, config);
    if (config.output_path.empty()) {
        std::cout << body;
    } else {
        const std::filesystem::path base =
            resolve_output(strip_report_extension(config.output_path));
        const std::filesystem::path json_path = base.string() + ".json";
        write_file(json_path, body);
        std::cout << "stage " << config.stage_config.stage << "  engine "
                  << to_string(config.engine) << "  trials " << report.trial_count << "  seed "
                  << report.seed << "\n";
        if (report.born_tested) {
            std::cout << "born: left " << report.born_left << "  right " << report.born_right
                      << "  chi2 " << format_short(report.born_test.chi2) << "  p "
                      << format_short(report.born_test.p) << "\n";
        }
        std::cout << "audit: " << (report.audit.pass ? "pass" : "FAIL") << " (forbidden "
                  << report.audit.forbidden << ", probability violations "
                  << report.audit.probability_violations << ")\n";
        std::cout << "wrote " << json_path.string() << "\n";
        if (config.output_format == OutputFormat::Csv) {
            const std::filesystem::path csv_path = base.string() + ".csv";
            write_file(csv_path, histogram_csv(report));
            std::cout << "wrote " << csv_path.string() << "\n";
        }
        const std::filesystem::path meta_path = base.string() + ".meta.json";
        write_file(meta_path, metadata_json(wall, args.workers));
        std::cout << "wrote " << meta_path.string() << "\n";
    }

    if (!report.audit.pass) {
        std::cerr << "sgdual: conservation audit failed: " << report.audit.forbidden
                  << " forbidden record(s)\n";
        return kExitAudit;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// feasibility

struct FeasibilityArgs {
    std::optional<std::string> q1, q2, d, delta_x, tau, m, grad_b, dt_ref, m_ref;
    std::optional<std::string> tau_od, tau_ts, t_window, rep_rate, gap_transit;
    std::string sweep_spec;
    bool csv = false;
};

Dimension field_dimension(const std::string& field) {
    if (field == "q1" || field == "q2") return Dimension::Charge;
    if (field == "d" || field == "delta_x") return Dimension::Length;
    if (field == "tau" || field == "dt_ref") return Dimension::Time;
    if (field == "m" || field == "m_ref") return Dimension::Mass;
    if (field == "grad_b") return Dimension::FieldGradient;
    throw std::invalid_argument("unknown physics field '" + field + "'");
}

struct FeasibilityRow {
    std::string quantity;
    std::string detail;
    std::string value;
};

void append_phase_rows(std::vector<FeasibilityRow>& rows, const PhysicsParams& p,
                       const std::string& detail) {
    rows.push_back({"em_phase_verbatim_rad", detail,
                    format_value(em_phase_shift(p, PhaseFormula::Verbatim))});
    rows.push_back({"em_phase_exact_rad", detail,
                    format_value(em_phase_shift(p, PhaseFormula::ExactDenominator))});
}

int cmd_feasibility(const FeasibilityArgs& args) {
    PhysicsParams params = default_physics();
    bool custom = false;
    const auto apply = [&custom](const std::optional<std::string>& opt, double& target,
                                 Dimension dim) {
        if (!opt) return;
        target = parse_quantity(*opt, dim);
        custom = true;
    };
    apply(args.q1, params.q1, Dimension::Charge);
    apply(args.q2, params.q2, Dimension::Charge);
    apply(args.d, params.d, Dimension::Length);
    apply(args.delta_x, params.delta_x, Dimension::Length);
    apply(args.tau, params.tau, Dimension::Time);
    apply(args.m, params.m, Dimension::Mass);
    apply(args.grad_b, params.grad_b, Dimension::FieldGradient);
    apply(args.dt_ref, params.dt_ref, Dimension::Time);
    apply(args.m_ref, params.m_ref, Dimension::Mass);

    SensorTimings timings = default_timings();
    bool timing_custom = false;
    const auto apply_t = [&timing_custom](const std::optional<std::string>& opt, double& target,
                                          Dimension dim) {
        if (!opt) return;
        target = parse_quantity(*opt, dim);
        timing_custom = true;
    };
    apply_t(args.tau_od, timings.tau_od, Dimension::Time);
    apply_t(args.tau_ts, timings.tau_ts, Dimension::Time);
    apply_t(args.t_window, timings.t_window, Dimension::Time);
    apply_t(args.rep_rate, timings.rep_rate, Dimension::Frequency);
    apply_t(args.gap_transit, timings.gap_transit, Dimension::Time);
    (void)timing_custom;

    if (!args.sweep_spec.empty()) {
        const std::size_t eq = args.sweep_spec.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--sweep expects field=value,value,...");
        }
        const std::string field = args.sweep_spec.substr(0, eq);
        const Dimension dim = field_dimension(field);
        std::vector<double> values;
        std::stringstream list(args.sweep_spec.substr(eq + 1));
        std::string item;
        while (std::getline(list, item, ',')) {
            if (!item.empty()) values.push_back(parse_quantity(item, dim));
        }
        if (values.empty()) {
            throw std::invalid_argument("--sweep needs at least one value");
        }
        const std::vector<SweepRow> rows = sweep(params, field, values);
        const bool time_sweep = field == "m" || field == "dt_ref" || field == "m_ref";
        const char* quantity = time_sweep ? "acceleration_time_s" : "em_phase_verbatim_rad";
        std::cout << "field,value,quantity,result,valid,error\n";
        for (const SweepRow& row : rows) {
            std::cout << field << ',' << format_value(row.value) << ',' << quantity << ','
                      << (row.valid ? format_value(row.result) : "") << ','
                      << (row.valid ? "true" : "false") << ',' << row.error << '\n';
        }
        return kExitOk;
    }

    std::vector<FeasibilityRow> rows;
    rows.push_back({"acceleration_time_s", "m=" + format_value(params.m),
                    format_value(acceleration_time(params.m, params.dt_ref, params.m_ref))});
    if (custom) {
        append_phase_rows(rows, params,
                          "q1=" + format_value(params.q1) + " q2=" + format_value(params.q2));
    } else {
        // The three charge configurations discussed for the two-loop setup:
        // a -3e pair, the electron + heavy -5e ion, and an electron pair.
        PhysicsParams triple = params;
        triple.q1 = triple.q2 = -3.0 * constants::kElementaryCharge;
        append_phase_rows(rows, triple, "q1=-3e q2=-3e");
        append_phase_rows(rows, params, "q1=-1e q2=-5e");
        PhysicsParams pair = params;
        pair.q1 = pair.q2 = -constants::kElementaryCharge;
        append_phase_rows(rows, pair, "q1=-1e q2=-1e");
    }

    const ValidationReport timing = validate_timing(timings);
    if (args.csv) {
        std::cout << "quantity,detail,value\n";
        for (const FeasibilityRow& row : rows) {
            std::cout << row.quantity << ',' << row.detail << ',' << row.value << '\n';
        }
        for (const TimingCheck& check : timing.checks) {
            std::cout << "timing_check," << check.name << ',' << (check.pass ? "pass" : "fail")
                      << '\n';
        }
        std::cout << "timing_overall,," << (timing.pass ? "pass" : "fail") << '\n';
    } else {
        std::cout << "acceleration time: " << format_short(std::stod(rows[0].value) * 1e9)
                  << " ns  (m = " << format_short(params.m) << " kg)\n";
        for (std::size_t i = 1; i + 1 < rows.size(); i += 2) {
            std::cout << "EM phase, " << rows[i].detail << ": verbatim "
                      << format_short(std::stod(rows[i].value)) << " rad, exact "
                      << format_short(std::stod(rows[i + 1].value)) << " rad\n";
        }
        for (const TimingCheck& check : timing.checks) {
            std::cout << "timing: " << check.name << "  (" << format_short(check.lhs) << " vs "
                      << format_short(check.rhs) << ")  " << (check.pass ? "pass" : "FAIL")
                      << "\n";
        }
        std::cout << "timing overall: " << (timing.pass ? "pass" : "FAIL") << "\n";
    }
    return timing.pass ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------------------
// taxonomy

struct TaxonomyArgs {
    int stage = 0;  ///< 0 = all stages
    std::string expected_phase = "0.122";
    bool csv = false;
    std::optional<std::string> output;
};

int cmd_taxonomy(const TaxonomyArgs& args) {
    const double phase = parse_angle(args.expected_phase);
    std::vector<TaxonomyRow> rows;
    for (int stage : {1, 2, 3}) {
        if (args.stage != 0 && args.stage != stage) continue;
        const std::vector<TaxonomyRow> part = enumerate_taxonomy(stage, phase);
        rows.insert(rows.end(), part.begin(), part.end());
    }

    if (args.output) {
        const std::filesystem::path path = resolve_output(*args.output);
        write_file(path, taxonomy_csv(rows));
        std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
        return kExitOk;
    }
    if (args.csv) {
        std::cout << taxonomy_csv(rows);
        return kExitOk;
    }
    std::printf("%-6s %-22s %-32s %-15s %-15s %-15s %s\n", "stage", "tuple", "label", "ci", "mwi",
                "bhsi", "flags");
    for (const TaxonomyRow& row : rows) {
        std::string flags;
        if (row.outcome.probability_violation) flags += "probability-violation";
        if (row.outcome.physical_violation) {
            if (!flags.empty()) flags += ';';
            flags += "physical-conservation-violation";
        }
        std::printf("%-6d %-22s %-32s %-15s %-15s %-15s %s\n", row.stage, row.pattern.c_str(),
                    std::string(to_string(row.outcome.label)).c_str(),
                    std::string(to_string(row.outcome.ci)).c_str(),
                    std::string(to_string(row.outcome.mwi)).c_str(),
                    std::string(to_string(row.outcome.bhsi)).c_str(), flags.c_str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
    std::string input;
    int stage = 0;
    std::string expected_phase = "0.122";
    double tolerance = -1.0;
    bool no_ts = false;
    std::optional<std::string> output;
};

int cmd_classify(const ClassifyArgs& args) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (args.input != "-") {
        file.open(args.input);
        if (!file) {
            throw std::runtime_error("cannot read '" + args.input + "'");
        }
        in = &file;
    }

    const double phase = parse_angle(args.expected_phase);
    std::vector<TaxonomyRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(*in, line)) {
        ++line_no;
        const std::size_t open = line.find('[');
        if (open == std::string::npos) {
            // Allow header lines and blanks; anything else is noise worth
            // rejecting loudly.
            std::string trimmed;
            for (char c : line) {
                if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
            }
            if (trimmed.empty() || trimmed[0] == '#' || line_no == 1) continue;
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": no tuple pattern found");
        }
        const std::size_t close = line.find(']', open);
        if (close == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unterminated '['");
        }
        const std::string pattern = line.substr(open, close - open + 1);
        try {
            const ClickRecord record = parse_pattern(pattern, args.stage);
            OutcomeClass outcome;
            switch (args.stage) {
                case 1: outcome = classify_stage1(record); break;
                case 2: outcome = classify_stage2(record, !args.no_ts); break;
                default:
                    outcome = classify_stage3(record, phase, args.tolerance, !args.no_ts);
                    break;
            }
            rows.push_back({args.stage, format_pattern(record), outcome});
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }

    const std::string csv = taxonomy_csv(rows);
    if (args.output) {
        const std::filesystem::path path = resolve_output(*args.output);
        write_file(path, csv);
        std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator of the three-stage dual-sensing interferometer"};
    app.set_version_flag("--version", "sgdual 0.1.0");
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Execute a configured trial batch");
    run_cmd->add_option("config", run_args.config_path, "Experiment config file")->required();
    run_cmd->add_option("--seed", run_args.seed, "Override the config seed");
    run_cmd->add_option("--workers,-j", run_args.workers, "Worker threads")
        ->check(CLI::Range(1, 256));
    run_cmd->add_option("--output,-o", run_args.output,
                        "Output base path (overrides the config; relative paths resolve "
                        "under $SGDUAL_OUTPUT_DIR)");
    run_cmd->add_option("--format", run_args.format, "Report format: json or csv");

    FeasibilityArgs feas_args;
    CLI::App* feas_cmd =
        app.add_subcommand("feasibility", "Phase-shift and timing estimates");
    feas_cmd->add_option("--q1", feas_args.q1, "Left-arm charge (e.g. -1e)");
    feas_cmd->add_option("--q2", feas_args.q2, "Right-arm charge (e.g. -5e)");
    feas_cmd->add_option("--d", feas_args.d, "Loop separation (e.g. 100um)");
    feas_cmd->add_option("--delta-x", feas_args.delta_x, "Branch separation (e.g. 10um)");
    feas_cmd->add_option("--tau", feas_args.tau, "Interaction time (e.g. 100ms)");
    feas_cmd->add_option("--m", feas_args.m, "Particle mass (e.g. 1me)");
    feas_cmd->add_option("--grad-b", feas_args.grad_b, "Field gradient in T/m");
    feas_cmd->add_option("--dt-ref", feas_args.dt_ref, "Reference acceleration time");
    feas_cmd->add_option("--m-ref", feas_args.m_ref, "Reference mass");
    feas_cmd->add_option("--tau-od", feas_args.tau_od, "OD reaction time");
    feas_cmd->add_option("--tau-ts", feas_args.tau_ts, "TS reaction time");
    feas_cmd->add_option("--t-window", feas_args.t_window, "Click-pairing window");
    feas_cmd->add_option("--rep-rate", feas_args.rep_rate, "Trial repetition rate");
    feas_cmd->add_option("--gap-transit", feas_args.gap_transit, "TS-to-OD transit time");
    feas_cmd->add_option("--sweep", feas_args.sweep_spec,
                         "Sweep one field: field=value,value,... (CSV output)");
    feas_cmd->add_flag("--csv", feas_args.csv, "Machine-readable output");

    TaxonomyArgs tax_args;
    CLI::App* tax_cmd = app.add_subcommand("taxonomy", "Print the labeled outcome table");
    tax_cmd->add_option("--stage", tax_args.stage, "Restrict to one stage")
        ->check(CLI::Range(1, 3));
    tax_cmd->add_option("--expected-phase", tax_args.expected_phase,
                        "Phase value used for the stage-3 phase column");
    tax_cmd->add_flag("--csv", tax_args.csv, "CSV instead of the aligned table");
    tax_cmd->add_option("--output,-o", tax_args.output, "Write CSV to this file");

    ClassifyArgs cls_args;
    CLI::App* cls_cmd =
        app.add_subcommand("classify", "Label raw outcome tuples read from a file");
    cls_cmd->add_option("input", cls_args.input, "Tuple file, one [..;..] per line ('-' = stdin)")
        ->required();
    cls_cmd->add_option("--stage", cls_args.stage, "Stage the tuples belong to")
        ->required()
        ->check(CLI::Range(1, 3));
    cls_cmd->add_option("--expected-phase", cls_args.expected_phase,
                        "Stage-3 expected phase shift");
    cls_cmd->add_option("--tolerance", cls_args.tolerance,
                        "Stage-3 phase tolerance in radians (default: expected/10)");
    cls_cmd->add_flag("--no-ts", cls_args.no_ts, "Classify as a no-TS control run");
    cls_cmd->add_option("--output,-o", cls_args.output, "Write CSV to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_args);
        if (feas_cmd->parsed()) return cmd_feasibility(feas_args);
        if (tax_cmd->parsed()) return cmd_taxonomy(tax_args);
        if (cls_cmd->parsed()) return cmd_classify(cls_args);
    } catch (const ConfigError& e) {
        std::cerr << "sgdual: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "sgdual: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "sgdual: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "sgdual: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
