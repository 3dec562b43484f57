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

#include "gyro/product.hpp"

#include <algorithm>

#include "gyro/error.hpp"

namespace gyro {

ProductCarrier::ProductCarrier(CarrierPtr left, CarrierPtr right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (!left_ || !right_) throw PreconditionError("product: both factors are required");
}

std::string ProductCarrier::describe() const {
    return "product(" + left_->describe() + ", " + right_->describe() + ")";
}

Element ProductCarrier::identity() const {
    return Element::concat(left_->identity(), right_->identity());
}

void ProductCarrier::check_domain(const Element& a) const {
    if (a.arity() != arity()) throw DomainError("product: wrong arity for " + to_string(a));
    auto [l, r] = split(a);
    left_->check_domain(l);
    right_->check_domain(r);
}

Element ProductCarrier::add(const Element& a, const Element& b) const {
    check_domain(a);
    check_domain(b);
    auto [al, ar] = split(a);
    auto [bl, br] = split(b);
    return Element::concat(left_->add(al, bl), right_->add(ar, br));
}

Element ProductCarrier::inv(const Element& a) const {
    check_domain(a);
    auto [l, r] = split(a);
    return Element::concat(left_->inv(l), right_->inv(r));
}

bool ProductCarrier::provides_closed_form() const { return true; }

std::optional<Element> ProductCarrier::gyr_closed_form(const Element& a, const Element& b,
                                                       const Element& z) const {
    auto [al, ar] = split(a);
    auto [bl, br] = split(b);
    auto [zl, zr] = split(z);
    return Element::concat(left_->gyr(al, bl, zl), right_->gyr(ar, br, zr));
}

double ProductCarrier::distance(const Element& a, const Element& b) const {
    auto [al, ar] = split(a);
    auto [bl, br] = split(b);
    return std::max(left_->distance(al, bl), right_->distance(ar, br));
}

double ProductCarrier::tolerance() const {
    return std::max(left_->tolerance(), right_->tolerance());
}

std::optional<std::size_t> ProductCarrier::order() const {
    const auto l = left_->order();
    const auto r = right_->order();
    if (!l || !r) return std::nullopt;
    return *l * *r;
}

Element ProductCarrier::element_at(std::size_t i) const {
    const auto r = right_->order();
    if (!order()) throw PreconditionError("product: infinite carrier cannot be enumerated");
    return Element::concat(left_->element_at(i / *r), right_->element_at(i % *r));
}

Element ProductCarrier::sample(Rng& rng) const {
    Element l = left_->sample(rng);
    return Element::concat(l, right_->sample(rng));
}

CarrierPtr product(CarrierPtr left, CarrierPtr right) {
    return std::make_shared<const ProductCarrier>(std::move(left), std::move(right));
}

}  // namespace gyro
