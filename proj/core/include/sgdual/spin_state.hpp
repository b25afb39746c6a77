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

#include <complex>

namespace sgdual {

/// Tolerance for the algebraic identities of this module (normalization,
/// round trips, phase composition). Every operation is a handful of
/// double-precision multiplications, so 1e-12 is comfortable.
inline constexpr double kStateTolerance = 1e-12;

/// Two-level spin state cos(theta)|up> + e^{i phi} sin(theta)|down>.
///
/// theta is restricted to [0, pi/2] so both implied real amplitudes are
/// non-negative and the (theta, phi) chart is unique; phi lives in [0, 2pi).
struct SpinQubit {
    double theta;
    double phi;

    friend bool operator==(const SpinQubit&, const SpinQubit&) = default;
};

/// Per-branch bookkeeping for a spin-path superposition.
///
/// TsTagged marks a branch whose transparent sensor has committed a read;
/// such a branch is locally decohered but can still remerge.
/// EnvironmentAbsorbed marks a branch that has dissipated into the
/// environment; it can never interfere again.
enum class BranchStatus {
    Coherent,
    TsTagged,
    EnvironmentAbsorbed,
    Recohered,
};

/// Spin-path entangled superposition a|up,L> + b|down,R>.
///
/// em_phase accumulates the electromagnetic phase applied to the right/down
/// branch. global_phase records the overall unobservable phase picked up
/// during unitary evolution; it is stored for completeness and excluded
/// from every observable comparison.
struct PathState {
    std::complex<double> amp_up_left;
    std::complex<double> amp_down_right;
    double em_phase = 0.0;
    double global_phase = 0.0;
    BranchStatus left_status = BranchStatus::Coherent;
    BranchStatus right_status = BranchStatus::Coherent;
};

struct BornWeights {
    double p_up_left;
    double p_down_right;
};

/// Normalize an angle to the representative in [0, 2pi).
double wrap_angle(double phi);

/// Validate and build a qubit. Throws std::domain_error for non-finite or
/// out-of-range angles (theta outside [0, pi/2], phi outside [0, 2pi)).
SpinQubit prepare_qubit(double theta, double phi);

/// Entangle spin with path: cos(theta) on |up,L>, e^{i phi} sin(theta) on
/// |down,R>, both branches coherent, no accumulated phases.
PathState split(const SpinQubit& q);

/// Squared branch magnitudes. Requires both branches coherent or TS-tagged;
/// throws std::logic_error once a branch has been absorbed.
BornWeights born_weights(const PathState& s);

/// Multiply the right/down branch by e^{i delta_phi}. Branch magnitudes are
/// untouched, so Born weights are invariant under this operation.
PathState apply_em_phase(PathState s, double delta_phi);

/// Recombine the two branches into a single qubit, inverting split() up to
/// the accumulated EM phase: the result carries phi' = phi + em_phase.
///
/// Coherent and TS-tagged branches can merge (the latter is recoherence);
/// an environment-absorbed branch cannot, which raises RecoherenceError.
/// Whether that failure is an anomaly is the caller's call.
SpinQubit merge(const PathState& s);

}  // namespace sgdual
