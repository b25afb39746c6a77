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

#include "sgdual/physics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace sgdual {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::domain_error(std::string("physics: ") + name + " must be positive and finite");
    }
}

double* field_pointer(PhysicsParams& p, std::string_view field) {
    if (field == "q1") return &p.q1;
    if (field == "q2") return &p.q2;
    if (field == "d") return &p.d;
    if (field == "delta_x") return &p.delta_x;
    if (field == "tau") return &p.tau;
    if (field == "m") return &p.m;
    if (field == "grad_b") return &p.grad_b;
    if (field == "dt_ref") return &p.dt_ref;
    if (field == "m_ref") return &p.m_ref;
    return nullptr;
}

}  // namespace

void PhysicsParams::validate() const {
    if (!std::isfinite(q1) || !std::isfinite(q2)) {
        throw std::domain_error("physics: charges must be finite");
    }
    if (!std::isfinite(delta_x) || delta_x < 0.0) {
        throw std::domain_error("physics: delta_x must be non-negative and finite");
    }
    if (!std::isfinite(d) || d <= delta_x / 2.0) {
        throw std::domain_error("physics: separation d must exceed delta_x/2");
    }
    require_positive(tau, "tau");
    require_positive(m, "m");
    require_positive(grad_b, "grad_b");
    require_positive(dt_ref, "dt_ref");
    require_positive(m_ref, "m_ref");
}

PhysicsParams default_physics() {
    PhysicsParams p;
    p.q1 = -1.0 * constants::kElementaryCharge;
    p.q2 = -5.0 * constants::kElementaryCharge;
    p.d = 100e-6;
    p.delta_x = 10e-6;
    p.tau = 100e-3;
    p.m = constants::kElectronMass;
    p.grad_b = 1e6;
    p.dt_ref = 0.1;
    p.m_ref = 1e-14;
    return p;
}

double acceleration_time(double m, double dt_ref, double m_ref) {
    require_positive(m, "m");
    require_positive(dt_ref, "dt_ref");
    require_positive(m_ref, "m_ref");
    return dt_ref * std::sqrt(m / m_ref);
}

double em_phase_shift(const PhysicsParams& p, PhaseFormula formula) {
    if (!std::isfinite(p.delta_x) || p.delta_x < 0.0) {
        throw std::domain_error("physics: delta_x must be non-negative and finite");
    }
    if (!std::isfinite(p.d) || p.d <= p.delta_x / 2.0) {
        throw std::domain_error("physics: separation d must exceed delta_x/2");
    }
    require_positive(p.tau, "tau");
    const double numerator = p.q1 * p.q2 * p.tau * p.delta_x;
    const double denominator = formula == PhaseFormula::Verbatim
                                   ? p.d * p.d
                                   : p.d * p.d - p.delta_x * p.delta_x / 4.0;
    return numerator / (constants::kHbar * denominator);
}

bool is_physics_field(std::string_view field) {
    PhysicsParams dummy{};
    return field_pointer(dummy, field) != nullptr;
}

std::vector<SweepRow> sweep(PhysicsParams base, std::string_view field,
                            const std::vector<double>& values) {
    double* slot = field_pointer(base, field);
    if (slot == nullptr) {
        throw std::invalid_argument("sweep: unknown physics field '" + std::string(field) + "'");
    }
    const bool time_quantity = field == "m" || field == "dt_ref" || field == "m_ref";

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        *slot = value;
        SweepRow row{value, 0.0, true, ""};
        try {
            row.result = time_quantity ? acceleration_time(base.m, base.dt_ref, base.m_ref)
                                       : em_phase_shift(base, PhaseFormula::Verbatim);
        } catch (const std::domain_error& e) {
            row.valid = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sgdual
