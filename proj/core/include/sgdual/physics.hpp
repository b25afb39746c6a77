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
#include <string_view>
#include <vector>

namespace sgdual {

namespace constants {
// Pinned so regression tests are bit-stable.
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kHbar = 1.0545718e-34;                // J s
inline constexpr double kElectronMass = 9.1093837e-31;        // kg
}  // namespace constants

/// Feasibility parameters: two charges interacting across the inter-loop
/// separation, plus the mass-scaling reference pair. All SI.
struct PhysicsParams {
    double q1;       ///< left-arm particle charge [C]
    double q2;       ///< right-arm particle/ion charge [C]
    double d;        ///< separation between the two interferometers [m]
    double delta_x;  ///< branch separation inside the left loop [m]
    double tau;      ///< interaction duration [s]
    double m;        ///< particle mass [kg]
    double grad_b;   ///< magnetic field gradient [T/m]
    double dt_ref;   ///< reference acceleration time [s]
    double m_ref;    ///< reference mass [kg]

    /// Enforce d > delta_x/2 >= 0 (the exact-denominator form must stay
    /// positive) and positivity of tau, m, grad_b, dt_ref, m_ref.
    void validate() const;

    friend bool operator==(const PhysicsParams&, const PhysicsParams&) = default;
};

/// Electron in the left loop, heavy -5e ion in the right loop: the
/// configuration that boosts the phase shift to ~0.1 rad.
PhysicsParams default_physics();

/// Acceleration-time scaling at fixed branch separation and gradient:
/// dt = dt_ref * sqrt(m / m_ref). Throws std::domain_error on non-positive
/// inputs.
double acceleration_time(double m, double dt_ref, double m_ref);

/// Which printed form of the phase-shift estimate to evaluate.
///
/// Verbatim is the final approximation q1 q2 tau dx / (hbar d^2) and is the
/// default and the reproduction target; ExactDenominator keeps the
/// d^2 - dx^2/4 denominator. Both evaluate the formula exactly as printed,
/// with no electrostatic coupling constant.
enum class PhaseFormula { Verbatim, ExactDenominator };

/// Differential electromagnetic phase between the two branches [rad].
/// Throws std::domain_error when d <= delta_x/2.
double em_phase_shift(const PhysicsParams& p, PhaseFormula formula = PhaseFormula::Verbatim);

struct SweepRow {
    double value;       ///< the swept field's value
    double result;      ///< phase shift [rad] or acceleration time [s]
    bool valid;         ///< false when the value violates an invariant
    std::string error;  ///< the violation, for invalid rows
};

/// Evaluate one parameter over a list of values, all others held fixed.
/// Sweeping m, dt_ref or m_ref tabulates the acceleration time; any other
/// field tabulates the verbatim phase shift. Rows that violate invariants
/// are marked invalid, not dropped. Throws std::invalid_argument for an
/// unknown field name.
std::vector<SweepRow> sweep(PhysicsParams base, std::string_view field,
                            const std::vector<double>& values);

/// True when the field name is a valid sweep target.
bool is_physics_field(std::string_view field);

}  // namespace sgdual
