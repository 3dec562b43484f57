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

#include "gyro/mobius.hpp"

#include <cmath>
#include <cstdio>

#include "gyro/error.hpp"

namespace gyro {

MobiusDisk::MobiusDisk(double tolerance, double guard_radius)
    : tol_(tolerance), guard_(guard_radius) {
    if (!(tolerance > 0.0) || !(tolerance < 1e-2))
        throw PreconditionError("mobius: tolerance must lie in (0, 1e-2)");
    if (!(guard_radius > 0.0) || !(guard_radius < 1.0))
        throw PreconditionError("mobius: guard radius must lie in (0, 1)");
}

std::string MobiusDisk::describe() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mobius-disk(tol=%g, guard=%g)", tol_, guard_);
    return buf;
}

void MobiusDisk::check_domain(const Element& a) const {
    if (a.arity() != 1 || !std::holds_alternative<Complex>(a[0]))
        throw DomainError("mobius: element is not a disk point");
    const Complex z = a.point();
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= 1.0)
        throw DomainError("mobius: |z| >= 1 for z = " + to_string(a));
}

Element MobiusDisk::add(const Element& a, const Element& b) const {
    check_domain(a);
    check_domain(b);
    return Element(mobius_add(a.point(), b.point()));
}

Element MobiusDisk::inv(const Element& a) const {
    check_domain(a);
    return Element(-a.point());
}

std::optional<Element> MobiusDisk::gyr_closed_form(const Element& a, const Element& b,
                                                   const Element& z) const {
    check_domain(a);
    check_domain(b);
    check_domain(z);
    return Element(mobius_gyr_factor(a.point(), b.point()) * z.point());
}

double MobiusDisk::distance(const Element& a, const Element& b) const {
    return std::abs(a.point() - b.point());
}

Element MobiusDisk::element_at(std::size_t) const {
    throw PreconditionError("mobius: the disk cannot be enumerated");
}

Complex MobiusDisk::sample_point(Rng& rng) const {
    std::uniform_real_distribution<double> u(-guard_, guard_);
    for (;;) {
        const Complex z{u(rng), u(rng)};
        if (std::abs(z) <= guard_) return z;
    }
}

Element MobiusDisk::sample(Rng& rng) const { return Element(sample_point(rng)); }

std::shared_ptr<const MobiusDisk> mobius_make(double tolerance, double guard_radius) {
    return std::make_shared<const MobiusDisk>(tolerance, guard_radius);
}

}  // namespace gyro
