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

#include "sgdual/rng.hpp"

namespace sgdual {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

inline void round_once(Philox4x32::Counter& x, const Philox4x32::Key& k) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mul_hi_lo(kMultA, x[0], lo0, hi0);
    mul_hi_lo(kMultB, x[2], lo1, hi1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter counter, Key key) {
    for (int round = 0; round < 10; ++round) {
        round_once(counter, key);
        if (round != 9) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
    }
    return counter;
}

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
    : key_{static_cast<std::uint32_t>(master_seed),
           static_cast<std::uint32_t>(master_seed >> 32)},
      trial_(trial_index),
      draw_(0),
      position_(4) {}

void TrialRng::refill() {
    const Philox4x32::Counter counter = {
        static_cast<std::uint32_t>(draw_),
        static_cast<std::uint32_t>(draw_ >> 32),
        static_cast<std::uint32_t>(trial_),
        static_cast<std::uint32_t>(trial_ >> 32),
    };
    buffer_ = Philox4x32::block(counter, key_);
    ++draw_;
    position_ = 0;
}

std::uint32_t TrialRng::next_u32() {
    if (position_ == 4) refill();
    return buffer_[static_cast<std::size_t>(position_++)];
}

std::uint64_t TrialRng::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double TrialRng::uniform01() {
    // 53-bit mantissa; 2^-53 spacing keeps the value strictly below 1.
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

bool TrialRng::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

}  // namespace sgdual
