/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GYRO_REPORT_HPP
#define GYRO_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "gyro/element.hpp"

namespace gyro {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct Counterexample {
    Tuple tuple;
    double residual = 0.0;
    std::string detail;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct PropertyResult {
    std::string name;
    Status status = Status::skipped;
    std::size_t checks = 0;
    std::size_t budget = 0;
    /// Largest residual seen over all checks (0 for exact carriers).
    double max_residual = 0.0;
    bool exhaustive = false;
    std::optional<Counterexample> counterexample;
    std::string note;

    friend bool operator==(const PropertyResult&, const PropertyResult&) = default;
};

/**
 * Per-property outcome of a verification run.
 *
 * A failing entry always carries a counterexample and no entry performs
 * more checks than its budget.
 */
class VerificationReport {
public:
    void add(PropertyResult r);
    void merge(const VerificationReport& other);

    const std::vector<PropertyResult>& properties() const noexcept { return props_; }
    const PropertyResult* find(std::string_view name) const;

    bool passed() const;
    std::size_t budget_consumed() const;
    /// Name of the first failing property, if any.
    std::optional<std::string> first_failure() const;

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;

private:
    std::vector<PropertyResult> props_;
};

/// Builds a pass/fail entry for a single exact yes/no check.
PropertyResult single_check(std::string name, bool ok, Tuple witness = {},
                            std::string detail = {});

}  // namespace gyro

#endif  // GYRO_REPORT_HPP
