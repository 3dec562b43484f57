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

// Independent reference implementations used as test oracles. They work on
// plain nested vectors and never call into the library.

#ifndef GYRO_TESTS_ORACLES_HPP
#define GYRO_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<unsigned>>;

inline Rows cyclic(unsigned n) {
    Rows t(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return t;
}

/// Left inverse of a: the b with b + a = 0, or n when none exists.
inline unsigned left_inverse(const Rows& t, unsigned a) {
    for (unsigned b = 0; b < t.size(); ++b)
        if (t[b][a] == 0) return b;
    return static_cast<unsigned>(t.size());
}

/// Brute-force gyrogroup test: left identity 0, left inverses, and the
/// derived gyrations satisfy left gyroassociativity, are automorphisms and
/// have the left loop property.
inline bool is_gyrogroup(const Rows& t) {
    const unsigned n = static_cast<unsigned>(t.size());
    for (unsigned a = 0; a < n; ++a)
        if (t[0][a] != a) return false;
    std::vector<unsigned> inv(n);
    for (unsigned a = 0; a < n; ++a) {
        inv[a] = left_inverse(t, a);
        if (inv[a] == n) return false;
    }
    auto gyr = [&](unsigned a, unsigned b, unsigned z) { return t[inv[t[a][b]]][t[a][t[b][z]]]; };
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            std::vector<bool> hit(n, false);
            for (unsigned z = 0; z < n; ++z) {
                const unsigned g = gyr(a, b, z);
                if (hit[g]) return false;
                hit[g] = true;
                if (t[a][t[b][z]] != t[t[a][b]][g]) return false;
                if (gyr(t[a][b], b, z) != g) return false;
            }
            for (unsigned x = 0; x < n; ++x)
                for (unsigned y = 0; y < n; ++y)
                    if (gyr(a, b, t[x][y]) != t[gyr(a, b, x)][gyr(a, b, y)]) return false;
        }
    return true;
}

/// Relabeling with perm[old] = new.
inline Rows relabel(const Rows& t, const std::vector<unsigned>& perm) {
    const std::size_t n = t.size();
    Rows r(n, std::vector<unsigned>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) r[perm[a]][perm[b]] = perm[t[a][b]];
    return r;
}

/// Lexicographically smallest relabeling fixing 0, by trying every permutation.
inline Rows lex_min(const Rows& t) {
    const unsigned n = static_cast<unsigned>(t.size());
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    Rows best = t;
    if (n <= 1) return best;
    do {
        Rows r = relabel(t, perm);
        if (r < best) best = r;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

/// Every gyrogroup of order n up to relabeling, from all tables with a
/// two-sided identity at 0.
inline std::set<Rows> enumerate(unsigned n) {
    std::set<Rows> out;
    const unsigned free = (n - 1) * (n - 1);
    std::uint64_t total = 1;
    for (unsigned k = 0; k < free; ++k) total *= n;
    for (std::uint64_t code = 0; code < total; ++code) {
        Rows t(n, std::vector<unsigned>(n));
        for (unsigned a = 0; a < n; ++a) {
            t[0][a] = a;
            t[a][0] = a;
        }
        std::uint64_t c = code;
        for (unsigned a = 1; a < n; ++a)
            for (unsigned b = 1; b < n; ++b) {
                t[a][b] = static_cast<unsigned>(c % n);
                c /= n;
            }
        if (is_gyrogroup(t)) out.insert(lex_min(t));
    }
    return out;
}

using Mask = std::uint64_t;

inline Mask set_sum(const Rows& t, Mask A, Mask B) {
    Mask out = 0;
    for (unsigned a = 0; a < t.size(); ++a)
        if (A >> a & 1u)
            for (unsigned b = 0; b < t.size(); ++b)
                if (B >> b & 1u) out |= Mask{1} << t[a][b];
    return out;
}

inline Mask set_neg(const Rows& t, Mask A) {
    Mask out = 0;
    for (unsigned a = 0; a < t.size(); ++a)
        if (A >> a & 1u) out |= Mask{1} << left_inverse(t, a);
    return out;
}

/// Both sides of the disjointness equivalence: (A+B) n C empty, B n (-A + C) empty.
inline std::pair<bool, bool> disjointness(const Rows& t, Mask A, Mask B, Mask C) {
    return {(set_sum(t, A, B) & C) == 0, (B & set_sum(t, set_neg(t, A), C)) == 0};
}

/// Moduli of the doubling iteration r -> 2r / (1 + r^2).
inline std::vector<double> doubling_moduli(double r, std::size_t steps) {
    std::vector<double> out;
    for (std::size_t k = 0; k < steps; ++k) {
        r = 2.0 * r / (1.0 + r * r);
        out.push_back(r);
    }
    return out;
}

/// Mobius sum in real arithmetic: (a + b) / (1 + conj(a) b).
inline void mobius_add(double ar, double ai, double br, double bi, double& outr, double& outi) {
    const double nr = ar + br, ni = ai + bi;
    const double dr = 1.0 + ar * br + ai * bi, di = ar * bi - ai * br;
    const double d2 = dr * dr + di * di;
    outr = (nr * dr + ni * di) / d2;
    outi = (ni * dr - nr * di) / d2;
}

}  // namespace oracle

#endif  // GYRO_TESTS_ORACLES_HPP
