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

#ifndef GYRO_ELEMENT_SET_HPP
#define GYRO_ELEMENT_SET_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "gyro/carrier.hpp"

namespace gyro {

/**
 * A finite set of carrier elements with the carrier's notion of equality.
 *
 * Exact carriers compare atoms directly. Carriers with a tolerance bucket
 * points on a grid of that step and compare against neighbouring buckets,
 * so two points within tolerance are never both inserted.
 */
class ElementSet {
public:
    explicit ElementSet(const Carrier& c);

    /// Inserts `e` unless an equal element is present; true when inserted.
    bool insert(const Element& e);
    bool contains(const Element& e) const;
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }

    /// Elements in insertion order.
    const std::vector<Element>& items() const noexcept { return items_; }
    /// Elements in ascending element order.
    std::vector<Element> sorted() const;

private:
    using Key = std::vector<std::int64_t>;
    Key key_of(const Element& e) const;
    const Element* find(const Element& e) const;

    const Carrier* carrier_;
    double step_;
    std::vector<Element> items_;
    std::map<Key, std::vector<std::size_t>> buckets_;
};

}  // namespace gyro

#endif  // GYRO_ELEMENT_SET_HPP
