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

#include "gyro/element_set.hpp"

#include <algorithm>
#include <cmath>

namespace gyro {

ElementSet::ElementSet(const Carrier& c) : carrier_(&c), step_(c.tolerance()) {}

ElementSet::Key ElementSet::key_of(const Element& e) const {
    Key k;
    k.reserve(e.arity() * 2);
    for (const Atom& a : e.parts()) {
        if (const auto* i = std::get_if<Index>(&a)) {
            k.push_back(static_cast<std::int64_t>(*i));
        } else {
            const Complex z = std::get<Complex>(a);
            k.push_back(static_cast<std::int64_t>(std::floor(z.real() / step_)));
            k.push_back(static_cast<std::int64_t>(std::floor(z.imag() / step_)));
        }
    }
    return k;
}

const Element* ElementSet::find(const Element& e) const {
    if (step_ <= 0.0) {
        auto it = buckets_.find(Key{});
        if (it == buckets_.end()) return nullptr;
        // exact carriers keep a single sorted bucket of positions
        const auto& pos = it->second;
        auto lo = std::lower_bound(pos.begin(), pos.end(), e,
                                   [this](std::size_t p, const Element& x) { return items_[p] < x; });
        if (lo != pos.end() && items_[*lo] == e) return &items_[*lo];
        return nullptr;
    }
    const Key base = key_of(e);
    // positions of the continuous coordinates inside the key
    std::vector<std::size_t> cont;
    std::size_t slot = 0;
    for (const Atom& a : e.parts()) {
        if (std::holds_alternative<Index>(a)) {
            ++slot;
        } else {
            cont.push_back(slot++);
            cont.push_back(slot++);
        }
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < cont.size(); ++i) combos *= 3;
    Key k = base;
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t r = c;
        for (std::size_t s : cont) {
            k[s] = base[s] + static_cast<std::int64_t>(r % 3) - 1;
            r /= 3;
        }
        auto it = buckets_.find(k);
        if (it == buckets_.end()) continue;
        for (std::size_t p : it->second)
            if (carrier_->equal(items_[p], e)) return &items_[p];
    }
    return nullptr;
}

bool ElementSet::contains(const Element& e) const { return find(e) != nullptr; }

bool ElementSet::insert(const Element& e) {
    if (find(e)) return false;
    items_.push_back(e);
    if (step_ <= 0.0) {
        auto& pos = buckets_[Key{}];
        auto at = std::lower_bound(pos.begin(), pos.end(), e,
                                   [this](std::size_t p, const Element& x) { return items_[p] < x; });
        pos.insert(at, items_.size() - 1);
    } else {
        buckets_[key_of(e)].push_back(items_.size() - 1);
    }
    return true;
}

std::vector<Element> ElementSet::sorted() const {
    std::vector<Element> out = items_;
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gyro
