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

#ifndef GYRO_CARRIER_HPP
#define GYRO_CARRIER_HPP

#include <memory>
#include <optional>
#include <random>
#include <string>

#include "gyro/element.hpp"

namespace gyro {

enum class CarrierKind { finite_table, mobius_disk, product };

std::string to_string(CarrierKind kind);

/// Deterministic source for all sampled checks.
using Rng = std::mt19937_64;

/**
 * A gyrogroup carrier: a set with a binary operation, inverses and
 * gyrations.
 *
 * Carriers are immutable after construction and safe to share between
 * threads. The derived gyration
 *
 *     gyr[a,b](z) = (-)(a(+)b) (+) (a (+) (b (+) z))
 *
 * is the reference definition; a carrier may additionally expose a closed
 * form, which `gyr` then prefers and `gyr_consistency_check` validates.
 */
class Carrier {
public:
    virtual ~Carrier() = default;

    virtual CarrierKind kind() const = 0;
    virtual std::string describe() const = 0;

    /// Number of atoms in each element.
    virtual std::size_t arity() const = 0;

    virtual Element identity() const = 0;
    virtual Element add(const Element& a, const Element& b) const = 0;
    virtual Element inv(const Element& a) const = 0;

    /// Throws DomainError when `a` is not an element of this carrier.
    virtual void check_domain(const Element& a) const = 0;

    /// Closed-form gyration, when the carrier has one.
    virtual std::optional<Element> gyr_closed_form(const Element& a, const Element& b,
                                                   const Element& z) const;
    bool has_closed_form_gyr() const;

    /// Closed form when available, otherwise the derived gyration.
    Element gyr(const Element& a, const Element& b, const Element& z) const;
    Element gyr_derived(const Element& a, const Element& b, const Element& z) const;

    /// Distance used for tolerance comparisons; 0 or 1 on discrete atoms.
    virtual double distance(const Element& a, const Element& b) const = 0;
    /// Equality tolerance; 0 for exact carriers.
    virtual double tolerance() const = 0;
    bool equal(const Element& a, const Element& b) const {
        return distance(a, b) <= tolerance();
    }

    /// Finite order, or nullopt for infinite carriers.
    virtual std::optional<std::size_t> order() const = 0;
    /// The i-th element in enumeration order (finite carriers only).
    virtual Element element_at(std::size_t i) const = 0;

    virtual Element sample(Rng& rng) const = 0;

protected:
    virtual bool provides_closed_form() const { return false; }
};

using CarrierPtr = std::shared_ptr<const Carrier>;

}  // namespace gyro

#endif  // GYRO_CARRIER_HPP
