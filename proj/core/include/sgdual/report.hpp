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

#include "sgdual/config.hpp"
#include "sgdual/stages.hpp"
#include "sgdual/stats.hpp"

namespace sgdual {

/// Render a finished run as JSON with a fixed key order and no wall-clock
/// content, so equal runs serialize to equal bytes. Ends with a newline.
std::string report_json(const RunReport& report, const ExperimentConfig& config);

/// Histogram CSV: one row per outcome label with its count and Wilson
/// interval. Columns: label,count,rate,lower95,upper95.
std::string histogram_csv(const RunReport& report);

/// The labeled outcome table as CSV. Columns:
/// stage,tuple,label,ci_verdict,mwi_verdict,bhsi_verdict,flags. The tuple
/// field is quoted (it contains commas), flags are semicolon-separated.
std::string taxonomy_csv(const std::vector<TaxonomyRow>& rows);

/// Wall-clock and environment data for the sidecar file next to the
/// report. Deliberately not part of the report body: the body must stay
/// byte-reproducible while this is allowed to vary run to run.
std::string metadata_json(double wall_seconds, int workers);

}  // namespace sgdual
