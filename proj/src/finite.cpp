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

#include "gyro/finite.hpp"

#include "gyro/error.hpp"
#include "gyro/verify.hpp"

namespace gyro {

CayleyTable CayleyTable::from_rows(const std::vector<std::vector<Index>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw MalformedTable("table is empty");
    CayleyTable t;
    t.n_ = n;
    t.data_.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (rows[a].size() != n)
            throw MalformedTable("row " + std::to_string(a) + " has " + std::to_string(rows[a].size()) +
                                 " entries, expected " + std::to_string(n));
        for (std::size_t b = 0; b < n; ++b) {
            if (rows[a][b] >= n)
                throw MalformedTable("entry (" + std::to_string(a) + ", " + std::to_string(b) +
                                     ") = " + std::to_string(rows[a][b]) + " out of range");
            t.data_.push_back(rows[a][b]);
        }
    }
    t.inverse_.assign(n, 0);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            if (t.at(b, a) == 0) {
                t.inverse_[a] = b;
                break;
            }
        }
    }
    return t;
}

CayleyTable CayleyTable::cyclic(std::size_t n) {
    if (n == 0) throw PreconditionError("cyclic group of order 0");
    std::vector<std::vector<Index>> rows(n, std::vector<Index>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) rows[a][b] = static_cast<Index>((a + b) % n);
    auto t = from_rows(rows);
    t.set_name("Z" + std::to_string(n));
    return t;
}

CayleyTable CayleyTable::klein_four() {
    std::vector<std::vector<Index>> rows(4, std::vector<Index>(4));
    for (Index a = 0; a < 4; ++a)
        for (Index b = 0; b < 4; ++b) rows[a][b] = a ^ b;
    auto t = from_rows(rows);
    t.set_name("V4");
    return t;
}

std::vector<std::vector<Index>> CayleyTable::rows() const {
    std::vector<std::vector<Index>> out(n_);
    for (Index a = 0; a < n_; ++a) out[a].assign(row(a).begin(), row(a).end());
    return out;
}

std::vector<Index> CayleyTable::gyr_permutation(Index a, Index b) const {
    std::vector<Index> p(n_);
    for (Index z = 0; z < n_; ++z) p[z] = gyr(a, b, z);
    return p;
}

long CayleyTable::first_non_permutation_row() const {
    std::vector<bool> seen(n_);
    for (Index a = 0; a < n_; ++a) {
        std::fill(seen.begin(), seen.end(), false);
        for (Index v : row(a)) {
            if (seen[v]) return static_cast<long>(a);
            seen[v] = true;
        }
    }
    return -1;
}

CayleyTable direct_product(const CayleyTable& left, const CayleyTable& right) {
    const std::size_t n1 = left.order(), n2 = right.order(), n = n1 * n2;
    std::vector<std::vector<Index>> rows(n, std::vector<Index>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Index l = left.at(static_cast<Index>(a / n2), static_cast<Index>(b / n2));
            const Index r = right.at(static_cast<Index>(a % n2), static_cast<Index>(b % n2));
            rows[a][b] = static_cast<Index>(l * n2 + r);
        }
    }
    auto t = CayleyTable::from_rows(rows);
    if (!left.name().empty() && !right.name().empty()) t.set_name(left.name() + "x" + right.name());
    return t;
}

CayleyTable relabel(const CayleyTable& t, std::span<const Index> perm) {
    const std::size_t n = t.order();
    if (perm.size() != n || perm[0] != 0) throw PreconditionError("relabel: permutation must fix 0");
    std::vector<std::vector<Index>> rows(n, std::vector<Index>(n));
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) rows[perm[a]][perm[b]] = perm[t.at(a, b)];
    auto out = CayleyTable::from_rows(rows);
    out.set_name(t.name());
    return out;
}

// ---------------------------------------------------------------------------

FiniteCarrier::FiniteCarrier(std::shared_ptr<const CayleyTable> table, bool is_group)
    : table_(std::move(table)), group_(is_group) {
    if (!table_ || table_->order() == 0) throw PreconditionError("finite carrier needs a table");
}

std::string FiniteCarrier::describe() const {
    std::string s = "finite-table(n=" + std::to_string(table_->order());
    if (!table_->name().empty()) s += ", name=" + table_->name();
    if (group_) s += ", group";
    return s + ")";
}

void FiniteCarrier::check_domain(const Element& a) const {
    if (a.arity() != 1 || !std::holds_alternative<Index>(a[0]) || a.index() >= table_->order())
        throw DomainError("finite: " + to_string(a) + " is not in {0.." +
                          std::to_string(table_->order() - 1) + "}");
}

Element FiniteCarrier::add(const Element& a, const Element& b) const {
    check_domain(a);
    check_domain(b);
    return Element(table_->at(a.index(), b.index()));
}

Element FiniteCarrier::inv(const Element& a) const {
    check_domain(a);
    return Element(table_->inv(a.index()));
}

std::optional<Element> FiniteCarrier::gyr_closed_form(const Element& a, const Element& b,
                                                      const Element& z) const {
    if (!group_) return std::nullopt;
    check_domain(a);
    check_domain(b);
    check_domain(z);
    return z;
}

double FiniteCarrier::distance(const Element& a, const Element& b) const {
    return a == b ? 0.0 : 1.0;
}

Element FiniteCarrier::sample(Rng& rng) const {
    std::uniform_int_distribution<Index> u(0, static_cast<Index>(table_->order() - 1));
    return Element(u(rng));
}

// ---------------------------------------------------------------------------

FiniteCarrierPtr finite_from_table(CayleyTable table, std::size_t exhaustive_cap,
                                   std::size_t budget, std::uint64_t seed) {
    if (table.order() == 0) throw MalformedTable("table is empty");
    if (const long bad = table.first_non_permutation_row(); bad >= 0)
        throw MalformedTable("row " + std::to_string(bad) + " is not a permutation");

    auto carrier = std::make_shared<const FiniteCarrier>(
        std::make_shared<const CayleyTable>(std::move(table)), false);
    VerifyOptions opt;
    opt.exhaustive_cap = exhaustive_cap;
    opt.budget = budget;
    opt.seed = seed;
    const auto report = verify_axioms(*carrier, opt);
    for (const auto& p : report.properties()) {
        if (p.status == Status::fail)
            throw NotAGyrogroup("not a gyrogroup: " + p.name + " fails at " +
                                    to_string(p.counterexample->tuple),
                                p.name, p.counterexample->tuple);
    }
    return carrier;
}

FiniteCarrierPtr finite_from_table(const std::vector<std::vector<Index>>& rows) {
    return finite_from_table(CayleyTable::from_rows(rows));
}

FiniteCarrierPtr group_adapter(CayleyTable t) {
    const Index n = static_cast<Index>(t.order());
    for (Index a = 0; a < n; ++a) {
        if (t.at(0, a) != a || t.at(a, 0) != a)
            throw InvalidGroup("group: 0 is not a two-sided identity", "identity", {Element(a)});
    }
    for (Index a = 0; a < n; ++a) {
        if (t.at(t.inv(a), a) != 0 || t.at(a, t.inv(a)) != 0)
            throw InvalidGroup("group: element " + std::to_string(a) + " has no inverse", "inverse",
                               {Element(a)});
    }
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index c = 0; c < n; ++c)
                if (t.at(a, t.at(b, c)) != t.at(t.at(a, b), c))
                    throw InvalidGroup("group: not associative at (" + std::to_string(a) + ", " +
                                           std::to_string(b) + ", " + std::to_string(c) + ")",
                                       "associativity", {Element(a), Element(b), Element(c)});
    return std::make_shared<const FiniteCarrier>(std::make_shared<const CayleyTable>(std::move(t)),
                                                 true);
}

FiniteCarrierPtr cyclic_group(std::size_t n) { return group_adapter(CayleyTable::cyclic(n)); }

}  // namespace gyro
