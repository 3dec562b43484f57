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

#ifndef GYRO_KERNEL_HPP
#define GYRO_KERNEL_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "gyro/carrier.hpp"
#include "gyro/report.hpp"

namespace gyro {

/**
 * Execution policy for the data-parallel kernels.
 *
 * `serial` is the reference path kept for testing; `parallel` splits the
 * index space across OpenMP threads and merges deterministically, so both
 * produce identical results.
 */
enum class Execution { serial, parallel };

bool openmp_enabled() noexcept;
int max_threads() noexcept;

using TupleAt = std::function<Tuple(std::size_t)>;
using ResidualFn = std::function<double(const Tuple&)>;

/**
 * Runs one property over `count` tuples.
 *
 * A tuple fails when its residual exceeds `tolerance` (or is NaN, or the
 * residual function throws). The reported counterexample is the
 * lexicographically smallest failing tuple, independent of scheduling.
 */
PropertyResult run_property(std::string name, std::size_t count, const TupleAt& tuple_at,
                            const ResidualFn& residual, double tolerance, Execution exec);

/// Tuple source over all `arity`-tuples of a finite carrier, in lexicographic order.
TupleAt exhaustive_tuples(const Carrier& c, std::size_t arity);

/// Pre-draws `count` tuples from a stream keyed by (seed, stream).
std::vector<Tuple> sampled_tuples(const Carrier& c, std::size_t arity, std::size_t count,
                                  std::uint64_t seed, std::uint64_t stream);

/// Integer power with saturation at SIZE_MAX.
std::size_t saturating_pow(std::size_t base, std::size_t exp);

/// Generic index-space loop used by non-tuple kernels: body(i) for i in [0, n).
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body);

}  // namespace gyro

#endif  // GYRO_KERNEL_HPP
