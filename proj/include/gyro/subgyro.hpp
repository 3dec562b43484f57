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

#ifndef GYRO_SUBGYRO_HPP
#define GYRO_SUBGYRO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gyro/finite.hpp"
#include "gyro/kernel.hpp"
#include "gyro/report.hpp"

namespace gyro {

/// Outcome of a structural check. `sampled` means no counterexample was found
/// on an infinite carrier, which is weaker than `yes`.
enum class Verdict { yes, no, unchecked, sampled };

std::string to_string(Verdict v);

struct SubgyroHandle {
    CarrierPtr carrier;
    /// Members in ascending element order.
    std::vector<Element> members;
    Verdict is_subgyrogroup = Verdict::unchecked;
    Verdict is_L_subgyrogroup = Verdict::unchecked;
    /// Set when a closure on an infinite carrier stopped at its cap.
    bool partial = false;

    bool contains(const Element& e) const;
};

struct CheckResult {
    bool holds = true;
    /// Violating tuple when `holds` is false.
    std::optional<Tuple> witness;
    std::size_t checks = 0;
};

/**
 * Closure test for a finite subset: every a (+) b and every (-)a stays in S.
 *
 * Pairs are scanned in ascending order before inverses, so the witness is
 * the smallest violating pair (or the single element whose inverse escapes).
 */
CheckResult is_subgyrogroup(const Carrier& c, const std::vector<Element>& S);

/// Wraps `S` as a handle after checking it; is_subgyrogroup is yes or no.
SubgyroHandle make_subgyro(CarrierPtr c, std::vector<Element> S);

/// Index-set convenience for finite carriers.
SubgyroHandle make_subgyro(CarrierPtr c, const std::vector<Index>& S);

struct GeneratedClosure {
    SubgyroHandle handle;
    /// Largest modulus (disk) or set size (finite) after each round; round 0 is the seeds.
    std::vector<double> round_extent;
    std::size_t rounds = 0;
};

/// Default element limit for closures on infinite carriers.
inline constexpr std::size_t default_closure_limit = 2048;

/**
 * Least set containing `seeds` that is closed under (+) and (-).
 *
 * Each round adds all pairwise sums and inverses. Finite carriers always
 * run to the fixed point. Infinite carriers stop after `cap` rounds or once
 * the set exceeds `element_limit`, returning a partial handle.
 */
GeneratedClosure generated(CarrierPtr c, const std::vector<Element>& seeds, std::size_t cap,
                           std::size_t element_limit = default_closure_limit);

struct LVerdict {
    Verdict verdict = Verdict::unchecked;
    /// (a, h, x) with x in H and gyr[a,h](x) outside H.
    std::optional<Tuple> witness;
    std::size_t checks = 0;
};

/**
 * Whether gyr[a,h](H) = H for all a in G and h in H.
 *
 * Exhaustive on finite carriers (a gyration is injective, so mapping H
 * into H is enough). On infinite carriers `a` ranges over `budget` seeded
 * samples and a clean run reports `Verdict::sampled`.
 */
LVerdict is_L_subgyrogroup(const Carrier& c, const SubgyroHandle& H, std::size_t budget = 10000,
                           std::uint64_t seed = 0);

struct CosetDecomposition {
    std::vector<Index> subgroup;
    /// Minimal member of each block, ascending.
    std::vector<Index> representatives;
    std::vector<std::vector<Index>> blocks;
    /// block_of[x] is the block containing x.
    std::vector<std::size_t> block_of;
};

/// Left cosets a (+) H. Throws PartitionFailure when blocks overlap, miss an element or differ in size.
CosetDecomposition left_cosets(const FiniteCarrier& c, const SubgyroHandle& H);

struct Quotient {
    CayleyTable table;
    CosetDecomposition cosets;
    /// Well-definedness entry followed by the axiom checks of the quotient table.
    VerificationReport report;
};

/**
 * The table (a (+) H) (+) (b (+) H) = (a (+) b) (+) H on block indices.
 *
 * Every representative pair is checked; the first mismatch throws
 * IllDefined with witness (a, a', b, b').
 */
Quotient quotient(const FiniteCarrier& c, const SubgyroHandle& H, Execution exec = Execution::parallel);

struct NssProbe {
    enum class Outcome { escaped, contained, inconclusive };
    Outcome outcome = Outcome::inconclusive;
    /// Round at which an element first left U (escaped only).
    std::size_t step = 0;
    std::optional<Element> escapee;
    /// Largest modulus (disk) or set size (finite) per round, starting at round 1.
    std::vector<double> round_extent;
    /// The closed subgyrogroup found inside U (contained only).
    std::optional<SubgyroHandle> subgroup;
};

std::string to_string(NssProbe::Outcome o);

/// Iterates the closure of {x} until an element leaves the open disk ball of `radius`.
NssProbe nss_probe(CarrierPtr disk, double radius, const Element& x, std::size_t cap);

/// Iterates the closure of {x} until an element leaves the finite subset U.
NssProbe nss_probe(CarrierPtr c, const std::vector<Element>& U, const Element& x, std::size_t cap);

}  // namespace gyro

#endif  // GYRO_SUBGYRO_HPP
