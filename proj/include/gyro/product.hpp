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

#ifndef GYRO_PRODUCT_HPP
#define GYRO_PRODUCT_HPP

#include "gyro/carrier.hpp"

namespace gyro {

/// Coordinatewise product of two carriers; gyrations act coordinatewise.
class ProductCarrier : public Carrier {
public:
    ProductCarrier(CarrierPtr left, CarrierPtr right);

    const Carrier& left() const noexcept { return *left_; }
    const Carrier& right() const noexcept { return *right_; }

    CarrierKind kind() const override { return CarrierKind::product; }
    std::string describe() const override;
    std::size_t arity() const override { return left_->arity() + right_->arity(); }

    Element identity() const override;
    Element add(const Element& a, const Element& b) const override;
    Element inv(const Element& a) const override;
    void check_domain(const Element& a) const override;
    std::optional<Element> gyr_closed_form(const Element& a, const Element& b,
                                           const Element& z) const override;

    /// Maximum of the coordinate distances.
    double distance(const Element& a, const Element& b) const override;
    double tolerance() const override;
    std::optional<std::size_t> order() const override;
    /// Element i is (left i / |right|, right i % |right|).
    Element element_at(std::size_t i) const override;
    Element sample(Rng& rng) const override;

    std::pair<Element, Element> split(const Element& a) const { return a.split(left_->arity()); }

protected:
    bool provides_closed_form() const override;

private:
    CarrierPtr left_;
    CarrierPtr right_;
};

CarrierPtr product(CarrierPtr left, CarrierPtr right);

}  // namespace gyro

#endif  // GYRO_PRODUCT_HPP
