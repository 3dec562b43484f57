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

#ifndef GYRO_MOBIUS_HPP
#define GYRO_MOBIUS_HPP

#include <memory>

#include "gyro/carrier.hpp"

namespace gyro {

/// Möbius addition (a + b) / (1 + conj(a) b) on points of the open unit disk.
inline Complex mobius_add(Complex a, Complex b) {
    return (a + b) / (1.0 + std::conj(a) * b);
}

/// The unimodular factor (1 + a conj(b)) / (1 + conj(a) b) of gyr[a,b].
inline Complex mobius_gyr_factor(Complex a, Complex b) {
    return (1.0 + a * std::conj(b)) / (1.0 + std::conj(a) * b);
}

/// Modulus of u (+) v for collinear, equally oriented u and v of moduli r, s.
inline double mobius_modulus_sum(double r, double s) { return (r + s) / (1.0 + r * s); }

/**
 * The complex open unit disk under Möbius addition.
 *
 * Equality and membership use an absolute tolerance; the sampler draws
 * uniformly from the closed disk of radius `guard_radius` so sampled
 * arguments stay away from the boundary.
 */
class MobiusDisk : public Carrier {
public:
    static constexpr double default_tolerance = 1e-9;
    static constexpr double default_guard_radius = 0.95;

    MobiusDisk(double tolerance = default_tolerance, double guard_radius = default_guard_radius);

    double guard_radius() const noexcept { return guard_; }

    CarrierKind kind() const override { return CarrierKind::mobius_disk; }
    std::string describe() const override;
    std::size_t arity() const override { return 1; }

    Element identity() const override { return Element(Complex{0.0, 0.0}); }
    Element add(const Element& a, const Element& b) const override;
    Element inv(const Element& a) const override;
    void check_domain(const Element& a) const override;
    std::optional<Element> gyr_closed_form(const Element& a, const Element& b,
                                           const Element& z) const override;

    double distance(const Element& a, const Element& b) const override;
    double tolerance() const override { return tol_; }
    std::optional<std::size_t> order() const override { return std::nullopt; }
    Element element_at(std::size_t i) const override;
    Element sample(Rng& rng) const override;

    Complex sample_point(Rng& rng) const;

protected:
    bool provides_closed_form() const override { return true; }

private:
    double tol_;
    double guard_;
};

/// Validates parameters: 0 < tolerance < 1e-2 and 0 < guard_radius < 1.
std::shared_ptr<const MobiusDisk> mobius_make(double tolerance = MobiusDisk::default_tolerance,
                                              double guard_radius = MobiusDisk::default_guard_radius);

}  // namespace gyro

#endif  // GYRO_MOBIUS_HPP
