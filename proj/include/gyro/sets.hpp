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

#ifndef GYRO_SETS_HPP
#define GYRO_SETS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gyro/finite.hpp"
#include "gyro/report.hpp"
#include "gyro/subgyro.hpp"

namespace gyro {

/**
 * A subset of a carrier.
 *
 * Exact sets hold sorted element indices of a finite carrier. Sampled sets
 * hold a seeded cloud of members plus a membership predicate; when the set
 * is a centered closed disk ball its radius is kept so that ball arithmetic
 * stays exact. A radius of 1 or more stands for the whole disk.
 */
class SetHandle {
public:
    using Predicate = std::function<bool(const Element&)>;

    static SetHandle exact(CarrierPtr c, std::vector<Index> members);
    static SetHandle whole(CarrierPtr c, std::size_t resolution = 1000, std::uint64_t seed = 0);
    static SetHandle ball(CarrierPtr disk, double radius, std::size_t resolution = 1000,
                          std::uint64_t seed = 0);
    static SetHandle sampled(CarrierPtr c, std::vector<Element> cloud, Predicate member,
                             std::size_t resolution, std::uint64_t seed);

    const CarrierPtr& carrier() const noexcept { return carrier_; }
    bool is_exact() const noexcept { return exact_; }

    /// Exact sets: ascending indices.
    const std::vector<Index>& indices() const;
    /// Sampled sets: cloud ordered by (modulus, argument) of the first point atom.
    const std::vector<Element>& cloud() const noexcept { return cloud_; }
    std::optional<double> ball_radius() const noexcept { return radius_; }
    std::size_t resolution() const noexcept { return resolution_; }
    std::uint64_t seed() const noexcept { return seed_; }

    bool contains(const Element& e) const;
    bool contains(Index i) const;
    /// Exact sets: the members as elements. Sampled sets: the cloud.
    std::vector<Element> elements() const;
    std::size_t size() const;

    friend bool operator==(const SetHandle& a, const SetHandle& b);

private:
    CarrierPtr carrier_;
    bool exact_ = true;
    std::vector<Index> indices_;
    std::vector<Element> cloud_;
    Predicate member_;
    std::optional<double> radius_;
    std::size_t resolution_ = 0;
    std::uint64_t seed_ = 0;
};

/// A (+) B. Exact for finite carriers; ball (+) ball is again an exact ball.
SetHandle set_add(const SetHandle& A, const SetHandle& B);
/// (-)A, elementwise.
SetHandle set_inv(const SetHandle& A);
/// A inside B. Exact for exact sets and balls; otherwise checked over A's cloud.
bool is_subset(const SetHandle& A, const SetHandle& B);
SetHandle set_intersection(const SetHandle& A, const SetHandle& B);

struct DisjointnessVerdict {
    /// (A (+) B) n C is empty.
    bool left_disjoint = false;
    /// B n ((-)A (+) C) is empty.
    bool right_disjoint = false;
    bool holds() const noexcept { return left_disjoint == right_disjoint; }
};

/// Evaluates both sides of the disjointness equivalence. Exact sets only.
DisjointnessVerdict disjointness_check(const SetHandle& A, const SetHandle& B, const SetHandle& C);

/**
 * Nested neighborhoods U0 >= U1 >= ... of the identity.
 *
 * A stabilizing chain repeats its last set forever, so `at(n)` past the
 * end returns the final set. Other chains (disk balls shrinking to 0) are
 * materialized to a fixed depth and reject indices past it.
 */
class NeighborhoodChain {
public:
    NeighborhoodChain() = default;
    explicit NeighborhoodChain(std::vector<SetHandle> sets, bool stabilizes = true);

    bool stabilizes() const noexcept { return stabilizes_; }

    std::size_t size() const noexcept { return sets_.size(); }
    bool empty() const noexcept { return sets_.empty(); }
    const SetHandle& at(std::size_t n) const;
    const SetHandle& back() const { return sets_.back(); }
    const std::vector<SetHandle>& sets() const noexcept { return sets_; }
    const CarrierPtr& carrier() const;

    /// True when every member is an exact ball.
    bool is_ball_chain() const;

private:
    std::vector<SetHandle> sets_;
    bool stabilizes_ = true;
};

/// Default number of chain levels materialized for disk chains.
inline constexpr std::size_t default_chain_depth = 16;

/// Balls with r0 = `first` and r(n+1) = r(n) * `ratio`.
NeighborhoodChain geometric_ball_chain(CarrierPtr disk, double first = 1.0 / 3.0,
                                       double ratio = 1.0 / 3.0,
                                       std::size_t depth = default_chain_depth,
                                       std::size_t resolution = 1000, std::uint64_t seed = 0);

/// Balls of radius 1/n; U0 and U1 are the whole disk.
NeighborhoodChain harmonic_ball_chain(CarrierPtr disk, std::size_t depth = default_chain_depth,
                                      std::size_t resolution = 1000, std::uint64_t seed = 0);

/// Exact chain over a finite carrier from index sets.
NeighborhoodChain exact_chain(CarrierPtr c, const std::vector<std::vector<Index>>& sets);

/// Intersection over n of U_n (+) A across the materialized chain.
SetHandle closure_via_chain(const SetHandle& A, const NeighborhoodChain& chain);

/**
 * Intersection of a family of exact neighborhoods of 0.
 *
 * Each U must have some V in the family with V (+) V and (-)V inside U;
 * the first U without one raises ConditionsViolated with U's members as
 * witness.
 */
SubgyroHandle intersection_subgyrogroup(const std::vector<SetHandle>& family);

enum class ChainMode { prenorm, base_at_H, invariant_set };

struct ChainCheckOptions {
    ChainMode mode = ChainMode::prenorm;
    /// base_at_H and invariant_set: the reference base U_n (defaults to the chain itself).
    std::optional<NeighborhoodChain> reference;
    /// invariant_set: the set F with F (+) V_n inside U_n.
    std::optional<SetHandle> invariant;
    /// Sampled (x, y) pairs for the gyration invariance check on infinite carriers.
    std::size_t budget = 1000;
    std::uint64_t seed = 0;
    Execution exec = Execution::parallel;
};

namespace chain_prop {
inline constexpr const char* contains_identity = "contains_identity";
inline constexpr const char* symmetric = "symmetric";
inline constexpr const char* nested = "nested";
inline constexpr const char* prenorm = "prenorm_condition";
inline constexpr const char* base = "base_condition";
inline constexpr const char* base_intersection = "base_intersection_subgyrogroup";
inline constexpr const char* invariant = "invariant_set_condition";
inline constexpr const char* invariant_core = "invariant_set_core";
inline constexpr const char* gyr_invariant = "gyration_invariant";
}  // namespace chain_prop

/**
 * Checks a chain level by level.
 *
 * Exact chains and ball chains are decided exactly; ball inclusions compare
 * radii and report the extremal pair as witness. Other sampled sets give
 * one-sided verdicts over their clouds.
 */
VerificationReport validate_chain(const NeighborhoodChain& chain, const ChainCheckOptions& opt = {});

}  // namespace gyro

#endif  // GYRO_SETS_HPP
