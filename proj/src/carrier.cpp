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

#include "gyro/carrier.hpp"

namespace gyro {

std::string to_string(CarrierKind kind) {
    switch (kind) {
        case CarrierKind::finite_table: return "finite-table";
        case CarrierKind::mobius_disk: return "mobius-disk";
        case CarrierKind::product: return "product";
    }
    return "unknown";
}

std::optional<Element> Carrier::gyr_closed_form(const Element&, const Element&,
                                                const Element&) const {
    return std::nullopt;
}

bool Carrier::has_closed_form_gyr() const { return provides_closed_form(); }

Element Carrier::gyr(const Element& a, const Element& b, const Element& z) const {
    if (auto closed = gyr_closed_form(a, b, z)) return *std::move(closed);
    return gyr_derived(a, b, z);
}

Element Carrier::gyr_derived(const Element& a, const Element& b, const Element& z) const {
    return add(inv(add(a, b)), add(a, add(b, z)));
}

}  // namespace gyro
