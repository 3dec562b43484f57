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
#include "gyro/prenorm.hpp"
#include "gyro/search.hpp"

using namespace gyro;

namespace {

const std::vector<std::vector<Index>> z4_chain{{0, 1, 2, 3}, {0, 2}, {0}};

PrenormTable z4_table(std::size_t depth) {
    return PrenormTable::build(DyadicFamily::build(exact_chain(cyclic_group(4), z4_chain), depth));
}

}  // namespace

TEST_CASE("dyadic family on Z4") {
    auto z4 = cyclic_group(4);
    const auto fam = DyadicFamily::build(exact_chain(z4, z4_chain), 2);
    // V(1) = U0, V(1/2) = U1, V(1/4) = U2, V(3/4) = U2 (+) V(1/2) = {0} (+) {0, 2}.
    CHECK(fam.set(1, 0).indices() == std::vector<Index>{0, 1, 2, 3});
    CHECK(fam.set(1, 1).indices() == std::vector<Index>{0, 2});
    CHECK(fam.set(1, 2).indices() == std::vector<Index>{0});
    CHECK(fam.set(3, 2).indices() == std::vector<Index>{0, 2});
    CHECK(fam.set(2, 2) == fam.set(1, 1));
    CHECK(fam.set(5, 2).indices().size() == 4u);

    const auto shallow = DyadicFamily::build(exact_chain(z4, z4_chain), 0);
    CHECK(shallow.set(1, 0).indices().size() == 4u);

    CHECK_THROWS_AS(DyadicFamily::build(exact_chain(z4, {{0, 1, 2, 3}, {0, 1, 3}}), 3), ChainInvalid);
}

TEST_CASE("family monotonicity and internal sums on every order-8 table") {
    for (const auto& t : search_small(8).tables) {
        auto c = finite_from_table(t);
        const auto fam = DyadicFamily::build(exact_chain(c, {{0, 1, 2, 3, 4, 5, 6, 7}, {0}}), 4);
        CHECK(fam.checks() > 0u);
        for (std::uint64_t m = 1; m < 16; ++m)
            CHECK(is_subset(fam.set(m, 4), fam.set(m + 1, 4)));
    }
}

TEST_CASE("f and N on Z4") {
    const auto tab = z4_table(4);
    // f(0) = 0: 0 lies in every V(r), including the smallest stored radius.
    // f(2) = 1/2: 2 is in V(1/2) = {0, 2} but not in any V(m/16) below it, all equal to {0}.
    // f(1) = f(3) = 1: only V(r) with r >= 1 contain them.
    CHECK(tab.f_values() == std::vector<double>{0.0, 1.0, 0.5, 1.0});
    // N(x) = sup_y |f(x + y) - f(y)|: N(2) = |f(2) - f(0)| = 1/2, N(1) = |f(1) - f(0)| = 1.
    CHECK(tab.N_values() == std::vector<double>{0.0, 1.0, 0.5, 1.0});
    for (Index x = 0; x < 4; ++x) CHECK(tab.f(Element(x)) <= 2.0);
    CHECK(pseudometric_d(tab, Element(Index{1}), Element(Index{2})) == 0.5);
    CHECK(pseudometric_d(tab, Element(Index{3}), Element(Index{3})) == 0.0);
    CHECK(pseudometric_d(tab, Element(Index{2}), Element(Index{1})) == 0.5);
}

TEST_CASE("prenorm checks on Z4 and on groups") {
    const auto r = prenorm_check(z4_table(3));
    CHECK(r.passed());
    CHECK(r.find(prenorm_prop::sandwich_lower)->status == Status::pass);
    CHECK(r.find(prenorm_prop::gyr_invariant)->status == Status::pass);

    auto z8 = cyclic_group(8);
    CHECK(prenorm_check(exact_chain(z8, {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 2, 4, 6}, {0, 4}, {0}}), 5).passed());
}

TEST_CASE("prenorm properties on the disk") {
    auto disk = mobius_make();
    PrenormOptions po;
    po.grid = 60;
    po.sup_samples = 300;
    const auto tab = PrenormTable::build(DyadicFamily::build(geometric_ball_chain(disk), 6), po);
    CHECK(tab.N(disk->identity()) == 0.0);
    CHECK(tab.N_is_lower_bound());
    CHECK(tab.f_error_bound() == 1.0 / 64.0);
    PrenormCheckOptions pc;
    pc.budget = 2000;
    const auto r = prenorm_check(tab, pc);
    CHECK(r.passed());

    // N is radial, nondecreasing in the modulus and bounded by 1 + 2^-depth.
    double prev = 0.0;
    for (double t = 0.0; t < 0.999; t += 0.01) {
        const double n = tab.N_radial(t);
        CHECK(n >= prev);
        CHECK(n <= 1.0 + tab.f_error_bound());
        prev = n;
    }
    CHECK_THROWS_AS(DyadicFamily::build(harmonic_ball_chain(disk), 6), ChainInvalid);
}

TEST_CASE("coset metric on Z4") {
    auto z4 = cyclic_group(4);
    SUBCASE("P = {0}") {
        const auto tab = z4_table(3);
        const auto P = make_subgyro(z4, std::vector<Index>{0});
        // (-)0 (+) 1 = 1 and (-)1 (+) 0 = 3, so the distance is N(1) + N(3) = 2.
        CHECK(coset_metric(*z4, P, tab, Element(Index{0}), Element(Index{1})) == 2.0);
        CHECK(coset_metric(*z4, P, tab, Element(Index{2}), Element(Index{2})) == 0.0);
        CHECK(metric_check(*z4, P, tab).passed());
        CHECK_THROWS_AS(coset_metric(*z4, make_subgyro(z4, std::vector<Index>{0, 2}), tab, Element(Index{0}),
                                     Element(Index{1})),
                        ChainInvalid);
    }
    SUBCASE("P = {0, 2}") {
        const auto tab = PrenormTable::build(DyadicFamily::build(exact_chain(z4, {{0, 1, 2, 3}, {0, 2}}), 3));
        const auto P = make_subgyro(z4, std::vector<Index>{0, 2});
        CHECK(coset_metric(*z4, P, tab, Element(Index{0}), Element(Index{2})) == 0.0);
        CHECK(coset_metric(*z4, P, tab, Element(Index{1}), Element(Index{3})) == 0.0);
        CHECK(coset_metric(*z4, P, tab, Element(Index{0}), Element(Index{1})) > 0.0);
        CHECK(metric_check(*z4, P, tab).passed());
    }
}

TEST_CASE("serial and parallel prenorm agree") {
    auto disk = mobius_make();
    PrenormOptions a, b;
    a.grid = b.grid = 40;
    a.sup_samples = b.sup_samples = 200;
    a.exec = Execution::serial;
    const auto chain = geometric_ball_chain(disk);
    const auto ta = PrenormTable::build(DyadicFamily::build(chain, 5), a);
    const auto tb = PrenormTable::build(DyadicFamily::build(chain, 5), b);
    CHECK(ta.N_values() == tb.N_values());
    PrenormCheckOptions ca, cb;
    ca.budget = cb.budget = 500;
    ca.exec = Execution::serial;
    CHECK(prenorm_check(ta, ca) == prenorm_check(tb, cb));
    MetricCheckOptions ma, mb;
    ma.budget = mb.budget = 300;
    ma.exec = Execution::serial;
    const auto P = make_subgyro(disk, std::vector<Element>{disk->identity()});
    CHECK(metric_check(*disk, P, ta, ma) == metric_check(*disk, P, tb, mb));
}
