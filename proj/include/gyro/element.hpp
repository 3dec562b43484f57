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

#ifndef GYRO_ELEMENT_HPP
#define GYRO_ELEMENT_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace gyro {

using Index = std::uint32_t;
using Complex = std::complex<double>;

/// One coordinate of an element: a table index or a point of the disk.
using Atom = std::variant<Index, Complex>;

/**
 * An element of some carrier.
 *
 * Elements are flat lists of atoms. Finite carriers and the disk use a
 * single atom; a product carrier concatenates the atoms of its factors,
 * left factor first.
 */
class Element {
public:
    Element() = default;
    Element(Index i) : parts_{Atom{i}} {}
    Element(Complex z) : parts_{Atom{z}} {}
    explicit Element(std::vector<Atom> parts) : parts_(std::move(parts)) {}

    std::size_t arity() const noexcept { return parts_.size(); }
    const std::vector<Atom>& parts() const noexcept { return parts_; }
    const Atom& operator[](std::size_t i) const { return parts_[i]; }

    Index index(std::size_t i = 0) const { return std::get<Index>(parts_.at(i)); }
    Complex point(std::size_t i = 0) const { return std::get<Complex>(parts_.at(i)); }

    /// Splits into the first `left` atoms and the rest.
    std::pair<Element, Element> split(std::size_t left) const;
    static Element concat(const Element& a, const Element& b);

    /// Total lexicographic order: indices before points, points by (re, im).
    friend bool operator<(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b);

private:
    std::vector<Atom> parts_;
};

using Tuple = std::vector<Element>;

bool tuple_less(const Tuple& a, const Tuple& b);

std::string to_string(const Element& e);
std::string to_string(const Tuple& t);

}  // namespace gyro

#endif  // GYRO_ELEMENT_HPP
