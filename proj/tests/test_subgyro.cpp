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

#include "gyro/error.hpp"
#include "gyro/finite.hpp"
#include "gyro/mobius.hpp"
#include "gyro/search.hpp"
#include "gyro/subgyro.hpp"
#include "gyro/verify.hpp"
#include "oracles.hpp"

using namespace gyro;

namespace {

std::vector<Index> members_of(const SubgyroHandle& h) {
    std::vector<Index> out;
    for (const auto& e : h.members) out.push_back(e.index());
    return out;
}

/// Every subset of the carrier (as a bitmask) that is closed and symmetric.
std::vector<std::vector<Index>> all_subgyrogroups(const CayleyTable& t) {
    std::vector<std::vector<Index>> out;
    const std::size_t n = t.order();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); m += 2) {
        bool ok = true;
        for (Index a = 0; a < n && ok; ++a)
            if (m >> a & 1u) {
                ok = m >> t.inv(a) & 1u;
                for (Index b = 0; b < n && ok; ++b)
                    if (m >> b & 1u) ok = m >> t.at(a, b) & 1u;
            }
        if (!ok) continue;
        std::vector<Index> s;
        for (Index a = 0; a < n; ++a)
            if (m >> a & 1u) s.push_back(a);
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("is_subgyrogroup") {
    auto z4 = cyclic_group(4);
    CHECK(is_subgyrogroup(*z4, {Element(Index{0}), Element(Index{2})}).holds);
    const auto bad = is_subgyrogroup(*z4, {Element(Index{0}), Element(Index{1})});
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.witness);
    CHECK(*bad.witness == Tuple{Element(Index{1}), Element(Index{1})});
    CHECK(is_subgyrogroup(*z4, {Element(Index{0})}).holds);
    CHECK(is_subgyrogroup(*mobius_make(), {Element(Complex{})}).holds);
    CHECK_THROWS_AS(is_subgyrogroup(*z4, {}), PreconditionError);
}

TEST_CASE("generated closures") {
    auto z4 = cyclic_group(4);
    CHECK(members_of(generated(z4, {Element(Index{1})}, 10).handle) == std::vector<Index>{0, 1, 2, 3});
    CHECK(members_of(generated(z4, {Element(Index{2})}, 10).handle) == std::vector<Index>{0, 2});

    const auto g = generated(mobius_make(), {Element(Complex{0.1, 0})}, 10);
    CHECK(g.handle.partial);
    const auto want = oracle::doubling_moduli(0.1, 3);
    REQUIRE(g.round_extent.size() >= 4u);
    for (std::size_t k = 0; k < 3; ++k) CHECK(g.round_extent[k + 1] == doctest::Approx(want[k]).epsilon(1e-9));
    for (std::size_t k = 1; k < g.round_extent.size(); ++k) {
        CHECK(g.round_extent[k] <= 1.0);
        if (g.round_extent[k - 1] < 1.0 - 1e-9) CHECK(g.round_extent[k] > g.round_extent[k - 1]);
    }
}

TEST_CASE("L-subgyrogroups") {
    auto z6 = cyclic_group(6);
    for (const auto& s : all_subgyrogroups(z6->table()))
        CHECK(is_L_subgyrogroup(*z6, make_subgyro(z6, s)).verdict == Verdict::yes);
    auto disk = mobius_make();
    CHECK(is_L_subgyrogroup(*disk, make_subgyro(disk, std::vector<Element>{Element(Complex{})})).verdict ==
          Verdict::yes);

    // Exhaustive oracle on the non-degenerate order-8 tables.
    std::size_t proper = 0, rejected = 0;
    for (const auto& t : search_small(8).tables) {
        auto c = finite_from_table(t);
        for (const auto& s : all_subgyrogroups(t)) {
            if (s.size() == 1 || s.size() == 8) continue;
            ++proper;
            bool invariant = true;
            for (Index a = 0; a < 8; ++a)
                for (Index h : s)
                    for (Index x : s)
                        invariant = invariant && std::find(s.begin(), s.end(), t.gyr(a, h, x)) != s.end();
            const auto v = is_L_subgyrogroup(*c, make_subgyro(c, s));
            CHECK(v.verdict == (invariant ? Verdict::yes : Verdict::no));
            if (!invariant) {
                ++rejected;
                REQUIRE(v.witness);
                const auto& w = *v.witness;
                CHECK(std::find(s.begin(), s.end(), t.gyr(w[0].index(), w[1].index(), w[2].index())) == s.end());
            }
        }
    }
    CHECK(proper > 0u);
    CHECK(rejected > 0u);
}

TEST_CASE("left cosets") {
    auto z4 = cyclic_group(4);
    const auto d = left_cosets(*z4, make_subgyro(z4, std::vector<Index>{0, 2}));
    CHECK(d.blocks == std::vector<std::vector<Index>>{{0, 2}, {1, 3}});
    CHECK(d.representatives == std::vector<Index>{0, 1});
    CHECK(left_cosets(*z4, make_subgyro(z4, std::vector<Index>{0, 1, 2, 3})).blocks.size() == 1u);
    CHECK(left_cosets(*z4, make_subgyro(z4, std::vector<Index>{0})).blocks.size() == 4u);

    for (const auto& t : search_small(8).tables) {
        auto c = finite_from_table(t);
        for (const auto& s : all_subgyrogroups(t)) {
            auto h = make_subgyro(c, s);
            if (is_L_subgyrogroup(*c, h).verdict != Verdict::yes) continue;
            const auto cd = left_cosets(*c, h);
            std::size_t total = 0;
            for (const auto& b : cd.blocks) {
                CHECK(b.size() == s.size());
                total += b.size();
            }
            CHECK(total == 8u);
        }
    }
}

TEST_CASE("quotients") {
    auto z4 = cyclic_group(4);
    const auto q = quotient(*z4, make_subgyro(z4, std::vector<Index>{0, 2}));
    CHECK(q.table == CayleyTable::cyclic(2));
    CHECK(q.report.passed());
    REQUIRE(q.report.find("well_defined"));
    CHECK(q.report.find("well_defined")->checks == 16u);

    CHECK(quotient(*z4, make_subgyro(z4, std::vector<Index>{0, 1, 2, 3})).table.order() == 1u);
    CHECK(quotient(*z4, make_subgyro(z4, std::vector<Index>{0})).table == z4->table());

    // Z6 / {0, 3} is Z3 up to relabeling.
    auto z6 = cyclic_group(6);
    const auto q6 = quotient(*z6, make_subgyro(z6, std::vector<Index>{0, 3}));
    CHECK(canonical_form(q6.table) == canonical_form(CayleyTable::cyclic(3)));

    std::size_t checked = 0;
    for (const auto& t : search_small(8).tables) {
        auto c = finite_from_table(t);
        for (const auto& s : all_subgyrogroups(t)) {
            auto h = make_subgyro(c, s);
            if (is_L_subgyrogroup(*c, h).verdict != Verdict::yes) continue;
            try {
                const auto qq = quotient(*c, h, Execution::serial);
                CHECK(qq.report.passed());
                CHECK(verify_axioms(*finite_from_table(qq.table)).passed());
                ++checked;
            } catch (const IllDefined& e) {
                CHECK(e.witness().size() == 4u);
            }
        }
    }
    CHECK(checked > 0u);
}

TEST_CASE("nss probe") {
    auto disk = mobius_make();
    const auto p = nss_probe(disk, 0.5, Element(Complex{0.1, 0}), 10);
    CHECK(p.outcome == NssProbe::Outcome::escaped);
    CHECK(p.step == 3u);
    REQUIRE(p.round_extent.size() == 3u);
    CHECK(p.round_extent[0] == doctest::Approx(0.19802).epsilon(1e-4));
    CHECK(p.round_extent[1] == doctest::Approx(0.38110).epsilon(1e-4));
    CHECK(p.round_extent[2] == doctest::Approx(0.66554).epsilon(1e-4));

    auto z4 = cyclic_group(4);
    const auto c = nss_probe(z4, {Element(Index{0}), Element(Index{2})}, Element(Index{2}), 10);
    CHECK(c.outcome == NssProbe::Outcome::contained);
    REQUIRE(c.subgroup);
    CHECK(members_of(*c.subgroup) == std::vector<Index>{0, 2});

    CHECK_THROWS_AS(nss_probe(disk, 0.5, Element(Complex{}), 10), PreconditionError);
    CHECK(nss_probe(disk, 0.99, Element(Complex{0.001, 0}), 2).outcome == NssProbe::Outcome::inconclusive);

    // Doubling moduli increase and stay below 1, so every radius is eventually left.
    for (double r = 0.01; r < 0.95; r += 0.01) {
        const double v = oracle::doubling_moduli(r, 1)[0];
        CHECK(v > r);
        CHECK(v < 1.0);
    }
    CHECK(nss_probe(disk, 0.999, Element(Complex{0, 0.01}), 40).outcome == NssProbe::Outcome::escaped);
}
