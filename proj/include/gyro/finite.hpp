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

#ifndef GYRO_FINITE_HPP
#define GYRO_FINITE_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gyro/carrier.hpp"

namespace gyro {

/**
 * An explicit operation table on {0, ..., n-1}; `at(a, b)` is a (+) b.
 *
 * Construction only checks shape and range. Whether the table is a
 * gyrogroup is decided by `finite_from_table` (or `verify_axioms`), so the
 * type can also hold deliberately corrupted tables for fault injection.
 * Index 0 is the identity by convention.
 */
class CayleyTable {
public:
    CayleyTable() = default;

    /// Throws MalformedTable on non-square input or out-of-range entries.
    static CayleyTable from_rows(const std::vector<std::vector<Index>>& rows);
    static CayleyTable cyclic(std::size_t n);
    static CayleyTable klein_four();

    std::size_t order() const noexcept { return n_; }
    Index at(Index a, Index b) const { return data_[static_cast<std::size_t>(a) * n_ + b]; }
    std::span<const Index> row(Index a) const {
        return {data_.data() + static_cast<std::size_t>(a) * n_, n_};
    }
    std::vector<std::vector<Index>> rows() const;

    /// The b with b (+) a = 0 (first such b; 0 if the column has no 0).
    Index inv(Index a) const { return inverse_[a]; }

    /// Derived gyration (-)(a(+)b) (+) (a (+) (b (+) z)).
    Index gyr(Index a, Index b, Index z) const { return at(inv(at(a, b)), at(a, at(b, z))); }
    std::vector<Index> gyr_permutation(Index a, Index b) const;

    /// Index of the first row that is not a permutation, or -1.
    long first_non_permutation_row() const;

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }
    friend bool operator<(const CayleyTable& a, const CayleyTable& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.data_ < b.data_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Index> data_;
    std::vector<Index> inverse_;
    std::string name_;
};

/// Row-major table of the coordinatewise product; (i, j) has index i * |right| + j.
CayleyTable direct_product(const CayleyTable& left, const CayleyTable& right);

/// Relabels by `perm` (perm[old] = new); perm[0] must be 0.
CayleyTable relabel(const CayleyTable& t, std::span<const Index> perm);

/// Carrier adapter over a Cayley table.
class FiniteCarrier : public Carrier {
public:
    FiniteCarrier(std::shared_ptr<const CayleyTable> table, bool is_group);

    const CayleyTable& table() const noexcept { return *table_; }
    std::shared_ptr<const CayleyTable> table_ptr() const noexcept { return table_; }
    bool is_group() const noexcept { return group_; }

    CarrierKind kind() const override { return CarrierKind::finite_table; }
    std::string describe() const override;
    std::size_t arity() const override { return 1; }

    Element identity() const override { return Element(Index{0}); }
    Element add(const Element& a, const Element& b) const override;
    Element inv(const Element& a) const override;
    void check_domain(const Element& a) const override;
    std::optional<Element> gyr_closed_form(const Element& a, const Element& b,
                                           const Element& z) const override;

    double distance(const Element& a, const Element& b) const override;
    double tolerance() const override { return 0.0; }
    std::optional<std::size_t> order() const override { return table_->order(); }
    Element element_at(std::size_t i) const override { return Element(static_cast<Index>(i)); }
    Element sample(Rng& rng) const override;

protected:
    bool provides_closed_form() const override { return group_; }

private:
    std::shared_ptr<const CayleyTable> table_;
    bool group_;
};

using FiniteCarrierPtr = std::shared_ptr<const FiniteCarrier>;

/// Orders up to this bound are verified exhaustively over all triples.
inline constexpr std::size_t default_exhaustive_cap = 32;

/**
 * Validates a table as a gyrogroup.
 *
 * Throws MalformedTable for shape or range problems and for rows that are
 * not permutations; NotAGyrogroup (first failing property plus witness)
 * when an axiom or identity fails. Orders up to `exhaustive_cap` are
 * checked exhaustively, larger ones with `budget` seeded samples.
 */
FiniteCarrierPtr finite_from_table(CayleyTable table,
                                   std::size_t exhaustive_cap = default_exhaustive_cap,
                                   std::size_t budget = 100000, std::uint64_t seed = 0);
FiniteCarrierPtr finite_from_table(const std::vector<std::vector<Index>>& rows);

/// A group viewed as a gyrogroup with identity gyrations. Throws InvalidGroup.
FiniteCarrierPtr group_adapter(CayleyTable table);
FiniteCarrierPtr cyclic_group(std::size_t n);

}  // namespace gyro

#endif  // GYRO_FINITE_HPP
