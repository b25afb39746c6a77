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

#include <array>
#include <cstdint>

namespace sgdual {

/// Philox 4x32-10 counter-based generator.
/// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
///
/// The whole point of a counter-based generator here is reproducibility
/// that is independent of scheduling: the random stream for trial k is a
/// pure function of (seed, k), so a report is identical whether trials run
/// on 1 worker or 8.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    /// One 128-bit block of the keyed bijection (10 rounds).
    static Counter block(Counter counter, Key key);
};

/// Random stream for a single trial, derived from (master seed, trial index).
///
/// Counter layout: words 0-1 hold the running draw counter, words 2-3 the
/// trial index. The master seed is the key. Streams for distinct trials are
/// therefore distinct key/counter prefixes and never overlap.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_index);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p);

private:
    void refill();

    Philox4x32::Key key_;
    std::uint64_t trial_;
    std::uint64_t draw_;
    Philox4x32::Counter buffer_{};
    int position_;
};

/// FNV-1a 64-bit hash; used for config digests.
std::uint64_t fnv1a64(const void* data, std::size_t size);

}  // namespace sgdual
