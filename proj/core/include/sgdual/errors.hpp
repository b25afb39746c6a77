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

#include <stdexcept>
#include <string>

namespace sgdual {

/// Raised when a state transition is requested that the current branch
/// statuses forbid (e.g. merging after environmental absorption).
class RecoherenceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised by the stage-3 classifier when a phase reading is near neither
/// zero nor the expected shift.
class UnclassifiablePhaseError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Configuration parse failure. Carries the line number (1-based, 0 when
/// not tied to a specific line) and the offending key when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0, std::string key = "")
        : std::runtime_error(format(message, line, key)),
          line_(line),
          key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(const std::string& message, int line, const std::string& key) {
        std::string out = "config error";
        if (line > 0) out += " at line " + std::to_string(line);
        if (!key.empty()) out += " (key '" + key + "')";
        out += ": " + message;
        return out;
    }

    int line_;
    std::string key_;
};

}  // namespace sgdual
