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

#include "gyro/report.hpp"

#include <algorithm>
#include <cassert>

namespace gyro {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "unknown";
}

void VerificationReport::add(PropertyResult r) {
    assert(r.status != Status::fail || r.counterexample.has_value());
    assert(r.checks <= r.budget);
    props_.push_back(std::move(r));
}

void VerificationReport::merge(const VerificationReport& other) {
    for (const auto& p : other.props_) props_.push_back(p);
}

const PropertyResult* VerificationReport::find(std::string_view name) const {
    auto it = std::find_if(props_.begin(), props_.end(),
                           [&](const PropertyResult& p) { return p.name == name; });
    return it == props_.end() ? nullptr : &*it;
}

bool VerificationReport::passed() const {
    return std::none_of(props_.begin(), props_.end(),
                        [](const PropertyResult& p) { return p.status == Status::fail; });
}

std::size_t VerificationReport::budget_consumed() const {
    std::size_t total = 0;
    for (const auto& p : props_) total += p.checks;
    return total;
}

std::optional<std::string> VerificationReport::first_failure() const {
    for (const auto& p : props_)
        if (p.status == Status::fail) return p.name;
    return std::nullopt;
}

PropertyResult single_check(std::string name, bool ok, Tuple witness, std::string detail) {
    PropertyResult r;
    r.name = std::move(name);
    r.checks = 1;
    r.budget = 1;
    r.exhaustive = true;
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.counterexample = Counterexample{std::move(witness), 1.0, std::move(detail)};
    return r;
}

}  // namespace gyro
