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

#ifndef GYRO_VERIFY_HPP
#define GYRO_VERIFY_HPP

#include <cstdint>
#include <optional>

#include "gyro/carrier.hpp"
#include "gyro/kernel.hpp"
#include "gyro/report.hpp"

namespace gyro {

struct VerifyOptions {
    /// Sampled tuples per property (ignored for exhaustive checks).
    std::size_t budget = 10000;
    std::uint64_t seed = 0;
    /// Finite carriers up to this order are checked exhaustively.
    std::size_t exhaustive_cap = 32;
    /// Overrides the carrier's own tolerance when set.
    std::optional<double> tolerance;
    Execution exec = Execution::parallel;
};

/// Property names produced by verify_axioms, in report order.
namespace prop {
inline constexpr const char* identity = "G1_identity";
inline constexpr const char* inverse = "G2_inverse";
inline constexpr const char* gyroassociative = "G3_left_gyroassociative";
inline constexpr const char* gyr_automorphism = "G3_gyration_automorphism";
inline constexpr const char* gyr_bijective = "G3_gyration_bijective";
inline constexpr const char* left_loop = "G4_left_loop";
inline constexpr const char* left_cancellation = "left_cancellation";
inline constexpr const char* right_cancellation_inverse = "right_cancellation_inverse";
inline constexpr const char* right_cancellation_gyration = "right_cancellation_gyration";
inline constexpr const char* gyration_formula = "gyration_formula";
}  // namespace prop

/**
 * Checks the gyrogroup axioms and the standard identities that follow from
 * them:
 *
 *   identity, inverse (both sides), left gyroassociativity, gyr[a,b] is an
 *   automorphism and a bijection, the left loop property
 *   gyr[a(+)b, b] = gyr[a,b], left cancellation (-)a(+)(a(+)b) = b, the two
 *   right cancellation laws, and agreement of gyr with its derived formula.
 *
 * Finite carriers up to the exhaustive cap enumerate every tuple; anything
 * else is checked on `budget` seeded tuples per property.
 */
VerificationReport verify_axioms(const Carrier& c, const VerifyOptions& opt = {});

/// Compares the closed-form gyration with the derived one; "skipped" without a closed form.
VerificationReport gyr_consistency_check(const Carrier& c, const VerifyOptions& opt = {});

struct DegeneracyVerdict {
    bool degenerate = true;
    /// (a, b, z) with gyr[a,b](z) != z when not degenerate.
    std::optional<Tuple> witness;
    std::size_t checks = 0;
    bool exhaustive = false;
};

/// True iff every checked gyration acts as the identity.
DegeneracyVerdict is_degenerate_group(const Carrier& c, const VerifyOptions& opt = {});

}  // namespace gyro

#endif  // GYRO_VERIFY_HPP
