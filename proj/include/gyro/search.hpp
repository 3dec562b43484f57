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

#ifndef GYRO_SEARCH_HPP
#define GYRO_SEARCH_HPP

#include <cstddef>
#include <vector>

#include "gyro/finite.hpp"
#include "gyro/kernel.hpp"

namespace gyro {

inline constexpr std::size_t max_search_order = 16;

struct SearchOptions {
    /// Upper bound on backtracking nodes (value assignments tried).
    std::size_t budget = 50'000'000;
    Execution exec = Execution::parallel;
};

struct SearchResult {
    /// Canonical tables, sorted and pairwise non-isomorphic.
    std::vector<CayleyTable> tables;
    /// Set when the node budget ran out; `tables` is then partial.
    bool exhausted = false;
    std::size_t nodes = 0;
};

/**
 * Enumerates the gyrogroups of order n up to relabelings fixing 0.
 *
 * Depth-first over table cells in row-major order. The inverse map is
 * fixed to a canonical involution (every gyrogroup is isomorphic to one
 * using it), and each assignment propagates the Latin property, the left
 * cancellation law and the automorphism and left loop constraints of the
 * derived gyrations. Serial and parallel runs return identical results,
 * including under budget exhaustion.
 */
SearchResult search_small(std::size_t n, const SearchOptions& opt = {});

/// Lexicographically smallest relabeling of `t` fixing 0.
CayleyTable canonical_form(const CayleyTable& t);

}  // namespace gyro

#endif  // GYRO_SEARCH_HPP
