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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gyro/error.hpp"
#include "gyro/finite.hpp"
#include "gyro/mobius.hpp"
#include "gyro/product.hpp"
#include "gyro/search.hpp"
#include "gyro/verify.hpp"
#include "oracles.hpp"

using namespace gyro;

namespace {

std::vector<std::vector<Index>> to_index_rows(const oracle::Rows& r) {
    std::vector<std::vector<Index>> out(r.size());
    for (std::size_t a = 0; a < r.size(); ++a) out[a].assign(r[a].begin(), r[a].end());
    return out;
}

oracle::Rows to_plain(const CayleyTable& t) {
    oracle::Rows out;
    for (const auto& row : t.rows()) out.emplace_back(row.begin(), row.end());
    return out;
}

}  // namespace

TEST_CASE("mobius_make validates its parameters") {
    CHECK(mobius_make()->tolerance() == 1e-9);
    CHECK(mobius_make()->guard_radius() == 0.95);
    CHECK_THROWS_AS(mobius_make(0.0), PreconditionError);
    CHECK_THROWS_AS(mobius_make(1e-9, 1.0), PreconditionError);
    CHECK_THROWS_AS(mobius_make(0.5), PreconditionError);
    CHECK(mobius_gyr_factor(Complex{0.3, 0}, Complex{-0.7, 0}) == Complex{1.0, 0.0});
}

TEST_CASE("finite_from_table") {
    const auto z4 = finite_from_table(to_index_rows(oracle::cyclic(4)));
    CHECK(z4->order() == 4u);
    CHECK(is_degenerate_group(*z4).degenerate);

    SUBCASE("non-permutation row") {
        auto r = to_index_rows(oracle::cyclic(4));
        r[1][1] = 3;
        CHECK_THROWS_AS(finite_from_table(r), MalformedTable);
    }
    SUBCASE("permutation rows that are not a gyrogroup") {
        auto r = to_index_rows(oracle::cyclic(4));
        std::swap(r[1][1], r[1][2]);
        try {
            finite_from_table(r);
            FAIL("expected NotAGyrogroup");
        } catch (const NotAGyrogroup& e) {
            CHECK_FALSE(e.witness().empty());
            CHECK_FALSE(e.property().empty());
        }
    }
    SUBCASE("out of range and ragged input") {
        CHECK_THROWS_AS(finite_from_table({{0, 1}, {1, 2}}), MalformedTable);
        CHECK_THROWS_AS(finite_from_table({{0, 1}, {1}}), MalformedTable);
    }
}

TEST_CASE("group adapters") {
    const auto trivial = cyclic_group(1);
    CHECK(trivial->order() == 1u);
    CHECK(verify_axioms(*trivial).passed());
    const auto k4 = group_adapter(CayleyTable::klein_four());
    CHECK(verify_axioms(*k4).passed());
    CHECK(is_degenerate_group(*k4).degenerate);
    CHECK(is_degenerate_group(*cyclic_group(4)).degenerate);

    // A non-degenerate gyrogroup is not associative, so the adapter rejects it.
    const auto g8 = search_small(8);
    for (const auto& t : g8.tables) {
        const FiniteCarrier fc(std::make_shared<const CayleyTable>(t), false);
        if (!is_degenerate_group(fc).degenerate) {
            CHECK_THROWS_AS(group_adapter(t), InvalidGroup);
            break;
        }
    }
}

TEST_CASE("products") {
    auto zz = product(cyclic_group(4), cyclic_group(2));
    CHECK(zz->order() == std::optional<std::size_t>(8));
    CHECK(is_degenerate_group(*zz).degenerate);
    CHECK(verify_axioms(*zz).passed());
    CHECK(zz->identity() == Element::concat(Element(Index{0}), Element(Index{0})));

    auto zd = product(cyclic_group(4), mobius_make());
    CHECK_FALSE(zd->order().has_value());
    const auto d = is_degenerate_group(*zd);
    CHECK_FALSE(d.degenerate);

    const auto* pc = static_cast<const ProductCarrier*>(zd.get());
    Rng rng(9);
    for (int k = 0; k < 500; ++k) {
        const Element a = zd->sample(rng), b = zd->sample(rng), z = zd->sample(rng);
        auto [al, ar] = pc->split(a);
        auto [bl, br] = pc->split(b);
        auto [zl, zr] = pc->split(z);
        const Element want = Element::concat(pc->left().gyr_derived(al, bl, zl), pc->right().gyr_derived(ar, br, zr));
        CHECK(zd->equal(zd->gyr(a, b, z), want));
    }
    VerifyOptions o;
    o.budget = 2000;
    CHECK(verify_axioms(*zd, o).passed());
}

TEST_CASE("Mobius sums stay inside the disk and under the collinear bound") {
    auto disk = mobius_make();
    Rng rng(21);
    for (int k = 0; k < 5000; ++k) {
        const Complex a = disk->sample_point(rng), b = disk->sample_point(rng);
        const double m = std::abs(mobius_add(a, b));
        CHECK(m < 1.0);
        CHECK(m <= mobius_modulus_sum(std::abs(a), std::abs(b)) + 1e-12);
    }
}

TEST_CASE("search matches brute-force enumeration for n <= 4") {
    for (unsigned n = 1; n <= 4; ++n) {
        CAPTURE(n);
        const auto expected = oracle::enumerate(n);
        const auto got = search_small(n);
        CHECK_FALSE(got.exhausted);
        std::set<oracle::Rows> found;
        for (const auto& t : got.tables) found.insert(to_plain(t));
        CHECK(found == expected);
        CHECK(found.size() == got.tables.size());
    }
    // Orders 1..3 give only the cyclic groups.
    for (unsigned n = 1; n <= 3; ++n) {
        const auto got = search_small(n);
        REQUIRE(got.tables.size() == 1u);
        CHECK(to_plain(got.tables[0]) == oracle::lex_min(oracle::cyclic(n)));
    }
}

TEST_CASE("search at order 8 finds non-degenerate gyrogroups") {
    const auto r = search_small(8);
    CHECK_FALSE(r.exhausted);
    std::size_t nondegenerate = 0;
    for (const auto& t : r.tables) {
        const auto fc = finite_from_table(t);
        CHECK(oracle::is_gyrogroup(to_plain(t)));
        if (!is_degenerate_group(*fc).degenerate) ++nondegenerate;
    }
    CHECK(r.tables.size() == 11u);
    CHECK(nondegenerate == 6u);
    for (std::size_t n = 4; n <= 7; ++n) {
        for (const auto& t : search_small(n).tables)
            CHECK(is_degenerate_group(*finite_from_table(t)).degenerate);
    }
}

TEST_CASE("search is deterministic across execution modes and budgets") {
    SearchOptions s, p;
    s.exec = Execution::serial;
    const auto a = search_small(8, s), b = search_small(8, p);
    CHECK(a.tables == b.tables);
    CHECK(a.nodes == b.nodes);
    s.budget = p.budget = a.nodes / 3;
    const auto c = search_small(8, s), d = search_small(8, p);
    CHECK(c.exhausted);
    CHECK(c.tables == d.tables);
    CHECK(c.nodes == d.nodes);
    CHECK(c.nodes <= s.budget);
    CHECK_THROWS_AS(search_small(0), PreconditionError);
}

TEST_CASE("canonical_form agrees with the permutation oracle") {
    std::mt19937 rng(4);
    std::vector<CayleyTable> pool = search_small(8).tables;
    pool.push_back(CayleyTable::cyclic(6));
    pool.push_back(CayleyTable::klein_four());
    for (const auto& t : pool) {
        std::vector<Index> perm(t.order());
        std::iota(perm.begin(), perm.end(), Index{0});
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        const CayleyTable shuffled = relabel(t, perm);
        const auto want = oracle::lex_min(to_plain(t));
        CHECK(to_plain(canonical_form(shuffled)) == want);
        CHECK(to_plain(canonical_form(t)) == want);
    }
}
