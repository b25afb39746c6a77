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

#include "sgdual/spin_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgdual/errors.hpp"

namespace sgdual {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

bool mergeable(BranchStatus status) {
    return status != BranchStatus::EnvironmentAbsorbed;
}

}  // namespace

double wrap_angle(double phi) {
    double wrapped = std::fmod(phi, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    // fmod can land exactly on 2pi after the correction when phi is a tiny
    // negative number; fold that back to 0.
    if (wrapped >= kTwoPi) wrapped = 0.0;
    return wrapped;
}

SpinQubit prepare_qubit(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::domain_error("prepare_qubit: angles must be finite");
    }
    if (theta < 0.0 || theta > kHalfPi) {
        throw std::domain_error("prepare_qubit: theta must lie in [0, pi/2]");
    }
    if (phi < 0.0 || phi >= kTwoPi) {
        throw std::domain_error("prepare_qubit: phi must lie in [0, 2pi)");
    }
    return SpinQubit{theta, phi};
}

PathState split(const SpinQubit& q) {
    PathState s;
    s.amp_up_left = std::cos(q.theta);
    s.amp_down_right = std::polar(std::sin(q.theta), q.phi);
    return s;
}

BornWeights born_weights(const PathState& s) {
    if (!mergeable(s.left_status) || !mergeable(s.right_status)) {
        throw std::logic_error("born_weights: branch already absorbed into the environment");
    }
    return BornWeights{std::norm(s.amp_up_left), std::norm(s.amp_down_right)};
}

PathState apply_em_phase(PathState s, double delta_phi) {
    if (!std::isfinite(delta_phi)) {
        throw std::domain_error("apply_em_phase: phase must be finite");
    }
    if (s.left_status != BranchStatus::Coherent || s.right_status != BranchStatus::Coherent) {
        throw std::logic_error("apply_em_phase: both branches must be coherent");
    }
    s.amp_down_right *= std::polar(1.0, delta_phi);
    s.em_phase += delta_phi;
    return s;
}

SpinQubit merge(const PathState& s) {
    if (!mergeable(s.left_status)) {
        throw RecoherenceError("merge: left branch was absorbed; recoherence impossible");
    }
    if (!mergeable(s.right_status)) {
        throw RecoherenceError("merge: right branch was absorbed; recoherence impossible");
    }
    const double mag_left = std::abs(s.amp_up_left);
    const double mag_right = std::abs(s.amp_down_right);
    const double theta = std::atan2(mag_right, mag_left);
    // Relative phase between the branches; the single-branch states carry
    // none (phi = 0 at theta = 0 by the chart convention, and at
    // theta = pi/2 the right amplitude's own argument is the phase).
    double phi = 0.0;
    if (mag_right > 0.0) {
        phi = std::arg(s.amp_down_right);
        if (mag_left > 0.0) phi -= std::arg(s.amp_up_left);
        phi = wrap_angle(phi);
    }
    return SpinQubit{theta, phi};
}

}  // namespace sgdual
