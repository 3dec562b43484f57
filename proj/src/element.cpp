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

#include "gyro/element.hpp"

#include <algorithm>
#include <cstdio>

namespace gyro {

namespace {

int compare_atoms(const Atom& a, const Atom& b) {
    if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
    if (const auto* ia = std::get_if<Index>(&a)) {
        const Index ib = std::get<Index>(b);
        return *ia == ib ? 0 : (*ia < ib ? -1 : 1);
    }
    const Complex za = std::get<Complex>(a);
    const Complex zb = std::get<Complex>(b);
    if (za.real() != zb.real()) return za.real() < zb.real() ? -1 : 1;
    if (za.imag() != zb.imag()) return za.imag() < zb.imag() ? -1 : 1;
    return 0;
}

}  // namespace

std::pair<Element, Element> Element::split(std::size_t left) const {
    std::vector<Atom> l(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(left));
    std::vector<Atom> r(parts_.begin() + static_cast<std::ptrdiff_t>(left), parts_.end());
    return {Element(std::move(l)), Element(std::move(r))};
}

Element Element::concat(const Element& a, const Element& b) {
    std::vector<Atom> p = a.parts_;
    p.insert(p.end(), b.parts_.begin(), b.parts_.end());
    return Element(std::move(p));
}

bool operator<(const Element& a, const Element& b) {
    const std::size_t n = std::min(a.parts_.size(), b.parts_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = compare_atoms(a.parts_[i], b.parts_[i]);
        if (c != 0) return c < 0;
    }
    return a.parts_.size() < b.parts_.size();
}

bool operator==(const Element& a, const Element& b) {
    if (a.parts_.size() != b.parts_.size()) return false;
    for (std::size_t i = 0; i < a.parts_.size(); ++i)
        if (compare_atoms(a.parts_[i], b.parts_[i]) != 0) return false;
    return true;
}

bool tuple_less(const Tuple& a, const Tuple& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const Element& e) {
    std::string out;
    if (e.arity() != 1) out += '(';
    for (std::size_t i = 0; i < e.arity(); ++i) {
        if (i) out += ", ";
        if (const auto* idx = std::get_if<Index>(&e[i])) {
            out += std::to_string(*idx);
        } else {
            const Complex z = std::get<Complex>(e[i]);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
            out += buf;
        }
    }
    if (e.arity() != 1) out += ')';
    return out;
}

std::string to_string(const Tuple& t) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t[i]);
    }
    return out + "]";
}

}  // namespace gyro
