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
#include "gyro/sets.hpp"
#include "oracles.hpp"

using namespace gyro;

namespace {

oracle::Rows to_plain(const CayleyTable& t) {
    oracle::Rows out;
    for (const auto& row : t.rows()) out.emplace_back(row.begin(), row.end());
    return out;
}

std::vector<Index> bits(oracle::Mask m, std::size_t n) {
    std::vector<Index> out;
    for (Index i = 0; i < n; ++i)
        if (m >> i & 1u) out.push_back(i);
    return out;
}

oracle::Mask mask_of(const SetHandle& s) {
    oracle::Mask m = 0;
    for (Index i : s.indices()) m |= oracle::Mask{1} << i;
    return m;
}

}  // namespace

TEST_CASE("exact set arithmetic") {
    auto z4 = cyclic_group(4);
    auto S = [&](std::vector<Index> v) { return SetHandle::exact(z4, std::move(v)); };
    CHECK(set_add(S({0, 2}), S({0, 2})).indices() == std::vector<Index>{0, 2});
    CHECK(set_add(S({1, 3}), S({0})).indices() == std::vector<Index>{1, 3});
    CHECK(set_inv(S({1})).indices() == std::vector<Index>{3});
    CHECK(set_inv(S({0, 1, 3})) == S({0, 1, 3}));
    CHECK(is_subset(S({0, 2}), S({0, 1, 2})));
    CHECK_FALSE(is_subset(S({0, 3}), S({0, 1, 2})));
    CHECK(set_intersection(S({0, 1, 2}), S({1, 2, 3})).indices() == std::vector<Index>{1, 2});
}

TEST_CASE("set_add agrees with elementwise brute force") {
    Rng rng(1);
    for (const auto& t : search_small(8).tables) {
        auto c = finite_from_table(t);
        const auto plain = to_plain(t);
        std::uniform_int_distribution<oracle::Mask> pick(0, 255);
        for (int k = 0; k < 200; ++k) {
            const oracle::Mask a = pick(rng), b = pick(rng);
            const auto sum = set_add(SetHandle::exact(c, bits(a, 8)), SetHandle::exact(c, bits(b, 8)));
            CHECK(mask_of(sum) == oracle::set_sum(plain, a, b));
            CHECK(mask_of(set_inv(SetHandle::exact(c, bits(a, 8)))) == oracle::set_neg(plain, a));
        }
    }
}

TEST_CASE("disjointness equivalence") {
    auto z4 = cyclic_group(4);
    auto S = [&](std::vector<Index> v) { return SetHandle::exact(z4, std::move(v)); };
    auto v = disjointness_check(S({1}), S({1}), S({3}));
    CHECK(v.left_disjoint);
    CHECK(v.right_disjoint);
    v = disjointness_check(S({1}), S({1}), S({2}));
    CHECK_FALSE(v.left_disjoint);
    CHECK_FALSE(v.right_disjoint);
    CHECK(v.holds());

    SUBCASE("A = {0} reduces both sides to B n C") {
        for (oracle::Mask b = 0; b < 16; ++b)
            for (oracle::Mask c = 0; c < 16; ++c) {
                const auto r = disjointness_check(S({0}), S(bits(b, 4)), S(bits(c, 4)));
                CHECK(r.left_disjoint == ((b & c) == 0));
                CHECK(r.right_disjoint == ((b & c) == 0));
            }
    }
    SUBCASE("all subset triples for every gyrogroup of order <= 4") {
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& t : search_small(n).tables) {
                auto c = finite_from_table(t);
                const auto plain = to_plain(t);
                const oracle::Mask full = oracle::Mask{1} << n;
                for (oracle::Mask a = 0; a < full; ++a)
                    for (oracle::Mask b = 0; b < full; ++b)
                        for (oracle::Mask cc = 0; cc < full; ++cc) {
                            const auto r = disjointness_check(SetHandle::exact(c, bits(a, n)), SetHandle::exact(c, bits(b, n)),
                                                         SetHandle::exact(c, bits(cc, n)));
                            const auto want = oracle::disjointness(plain, a, b, cc);
                            CHECK(r.left_disjoint == want.first);
                            CHECK(r.right_disjoint == want.second);
                            CHECK(r.holds());
                        }
            }
    }
    SUBCASE("random subset triples at orders up to 8") {
        Rng rng(2);
        std::size_t total = 0;
        for (std::size_t n = 5; n <= 8; ++n)
            for (const auto& t : search_small(n).tables) {
                auto c = finite_from_table(t);
                std::uniform_int_distribution<oracle::Mask> pick(0, (oracle::Mask{1} << n) - 1);
                for (int k = 0; k < 700; ++k, ++total) {
                    const auto r = disjointness_check(SetHandle::exact(c, bits(pick(rng), n)),
                                                 SetHandle::exact(c, bits(pick(rng), n)),
                                                 SetHandle::exact(c, bits(pick(rng), n)));
                    CHECK(r.holds());
                }
            }
        CHECK(total >= 10000u);
    }
}

TEST_CASE("disk balls") {
    auto disk = mobius_make();
    const auto B = SetHandle::ball(disk, 0.3);
    CHECK(B.contains(Element(Complex{0.0, 0.3})));
    CHECK_FALSE(B.contains(Element(Complex{0.0, 0.31})));
    const auto sum = set_add(B, B);
    REQUIRE(sum.ball_radius());
    CHECK(*sum.ball_radius() == doctest::Approx(0.6 / 1.09));
    CHECK(is_subset(set_inv(B), B));

    // Sampled pairwise sums stay inside the doubled ball.
    Rng rng(4);
    const double r = 0.3, bound = 2 * r / (1 + r * r);
    for (int k = 0; k < 3000; ++k) {
        const Complex u = std::polar(r * std::sqrt(std::uniform_real_distribution<>(0, 1)(rng)),
                                     std::uniform_real_distribution<>(0, 6.283185307179586)(rng));
        const Complex v = std::polar(r * std::sqrt(std::uniform_real_distribution<>(0, 1)(rng)),
                                     std::uniform_real_distribution<>(0, 6.283185307179586)(rng));
        CHECK(std::abs(mobius_add(u, v)) <= bound + 1e-12);
    }
    // Gyrations map the ball cloud into the ball.
    for (int k = 0; k < 200; ++k) {
        const Element x = disk->sample(rng), y = disk->sample(rng);
        for (std::size_t i = 0; i < B.cloud().size(); i += 37) CHECK(B.contains(disk->gyr(x, y, B.cloud()[i])));
    }
}

TEST_CASE("closure via chain") {
    auto z4 = cyclic_group(4);
    const auto chain = exact_chain(z4, {{0, 1, 2, 3}, {0, 2}, {0}});
    CHECK(closure_via_chain(SetHandle::exact(z4, {1}), chain).indices() == std::vector<Index>{1});
    CHECK(closure_via_chain(SetHandle::exact(z4, {0, 1, 2, 3}), chain).indices().size() == 4u);
    for (oracle::Mask m = 1; m < 16; ++m)
        CHECK(closure_via_chain(SetHandle::exact(z4, bits(m, 4)), chain).indices() == bits(m, 4));
    const auto coarse = exact_chain(z4, {{0, 1, 2, 3}, {0, 2}});
    CHECK(closure_via_chain(SetHandle::exact(z4, {1}), coarse).indices() == std::vector<Index>{1, 3});

    auto disk = mobius_make();
    const auto balls = geometric_ball_chain(disk, 1.0 / 3.0, 1.0 / 3.0, 9);
    const auto A = SetHandle::ball(disk, 0.2, 300);
    const auto closed = closure_via_chain(A, balls);
    for (const auto& e : A.cloud()) CHECK(closed.contains(e));
    const double slack = mobius_modulus_sum(0.2, *balls.back().ball_radius());
    CHECK_FALSE(closed.contains(Element(Complex{slack + 0.01, 0})));
}

TEST_CASE("intersection subgyrogroup") {
    auto z4 = cyclic_group(4);
    const auto h = intersection_subgyrogroup({SetHandle::exact(z4, {0, 1, 2, 3}), SetHandle::exact(z4, {0, 2})});
    REQUIRE(h.members.size() == 2u);
    CHECK(h.members[1] == Element(Index{2}));
    CHECK(h.is_subgyrogroup == Verdict::yes);
    CHECK(intersection_subgyrogroup({SetHandle::exact(z4, {0, 2}), SetHandle::exact(z4, {0})}).members.size() == 1u);
    CHECK_THROWS_AS(intersection_subgyrogroup({SetHandle::exact(z4, {0, 1})}), ConditionsViolated);
}

TEST_CASE("validate_chain") {
    auto disk = mobius_make();
    const auto geo = validate_chain(geometric_ball_chain(disk));
    CHECK(geo.passed());

    const auto harm = validate_chain(harmonic_ball_chain(disk));
    CHECK_FALSE(harm.passed());
    const auto* p = harm.find(chain_prop::prenorm);
    REQUIRE(p);
    REQUIRE(p->counterexample);
    CHECK(p->counterexample->detail.rfind("n=2:", 0) == 0);
    CHECK(p->counterexample->detail.find("0.6 > 0.5") != std::string::npos);

    auto z4 = cyclic_group(4);
    CHECK(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 2}, {0}})).passed());
    CHECK(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 1, 3}, {0}})).passed());
    CHECK_FALSE(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 1, 3}, {0, 1, 3}})).passed());
    CHECK_FALSE(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 1}})).passed());

    ChainCheckOptions base;
    base.mode = ChainMode::base_at_H;
    CHECK(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 2}}), base).passed());

    ChainCheckOptions inv;
    inv.mode = ChainMode::invariant_set;
    inv.invariant = SetHandle::exact(z4, {0, 2});
    CHECK(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 2}}), inv).passed());
    inv.invariant = SetHandle::exact(z4, {1});
    CHECK_FALSE(validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 2}}), inv).passed());
    inv.invariant = SetHandle::exact(z4, {0});
    const auto core = validate_chain(exact_chain(z4, {{0, 1, 2, 3}, {0, 2}}), inv);
    CHECK(core.find(chain_prop::invariant)->status == Status::pass);
    CHECK(core.find(chain_prop::invariant_core)->status == Status::fail);
}
