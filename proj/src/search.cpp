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

#include "gyro/search.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>

#include "gyro/error.hpp"

namespace gyro {

namespace {

constexpr int kMax = static_cast<int>(max_search_order);
constexpr std::int8_t kUnknown = -1;

struct State {
    std::array<std::int8_t, kMax * kMax> t;
    std::array<std::uint32_t, kMax> row_used{};
    std::array<std::uint32_t, kMax> col_used{};
    int free_cells = 0;
};

struct Subtree {
    std::vector<CayleyTable> solutions;
    std::size_t nodes = 0;
    bool hit_cap = false;
};

/// Constraint store for one fixed inverse involution.
class Solver {
public:
    Solver(int n, std::array<int, kMax> inverse) : n_(n), inv_(inverse) {}

    int order() const { return n_; }

    std::int8_t get(const State& s, int a, int b) const { return s.t[a * kMax + b]; }

    bool root(State& s) const {
        s.t.fill(kUnknown);
        s.free_cells = n_ * n_;
        for (int a = 0; a < n_; ++a) {
            if (!assign(s, 0, a, a) || !assign(s, a, 0, a)) return false;
        }
        for (int a = 1; a < n_; ++a) {
            if (!assign(s, a, inv_[a], 0) || !assign(s, inv_[a], a, 0)) return false;
        }
        return propagate(s);
    }

    /// Sets a (+) b = v and closes under left cancellation: inv(a) (+) v = b.
    bool assign(State& s, int a, int b, int v) const {
        std::int8_t& cell = s.t[a * kMax + b];
        if (cell == v) return true;
        if (cell != kUnknown) return false;
        const std::uint32_t bit = 1u << v;
        if ((s.row_used[a] & bit) || (s.col_used[b] & bit)) return false;
        cell = static_cast<std::int8_t>(v);
        s.row_used[a] |= bit;
        s.col_used[b] |= 1u << v;
        --s.free_cells;
        return assign(s, inv_[a], v, b);
    }

    /**
     * Checks and propagates the gyration constraints to a fixed point.
     *
     * gyr[a,b](z) = inv(a(+)b) (+) (a (+) (b (+) z)). A gyration value whose
     * inner lookups are known but whose final lookup is not can be forced
     * by the automorphism and left loop constraints.
     */
    bool propagate(State& s) const {
        const int n = n_;
        // gyr values, or the (row, col) of the single missing final lookup.
        std::vector<std::int8_t> g(static_cast<std::size_t>(n * n * n));
        std::vector<std::int16_t> pending(static_cast<std::size_t>(n * n * n));
        auto idx = [n](int a, int b, int z) { return static_cast<std::size_t>((a * n + b) * n + z); };

        for (bool changed = true; changed;) {
            changed = false;
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    const int ab = get(s, a, b);
                    std::uint32_t seen = 0;
                    for (int z = 0; z < n; ++z) {
                        g[idx(a, b, z)] = kUnknown;
                        pending[idx(a, b, z)] = -1;
                        if (ab == kUnknown) continue;
                        const int bz = get(s, b, z);
                        if (bz == kUnknown) continue;
                        const int w = get(s, a, bz);
                        if (w == kUnknown) continue;
                        const int u = inv_[ab];
                        const int v = get(s, u, w);
                        if (v == kUnknown) {
                            pending[idx(a, b, z)] = static_cast<std::int16_t>(u * kMax + w);
                            continue;
                        }
                        if (seen & (1u << v)) return false;
                        seen |= 1u << v;
                        g[idx(a, b, z)] = static_cast<std::int8_t>(v);
                    }
                }
            }

            // Forces gyr[a,b](z) = target, or fails on a conflict.
            auto force = [&](int a, int b, int z, int target, bool& ok) {
                const int known = g[idx(a, b, z)];
                if (known != kUnknown) {
                    ok = known == target;
                    return;
                }
                const int p = pending[idx(a, b, z)];
                if (p < 0) return;
                if (!assign(s, p / kMax, p % kMax, target)) {
                    ok = false;
                    return;
                }
                g[idx(a, b, z)] = static_cast<std::int8_t>(target);
                pending[idx(a, b, z)] = -1;
                changed = true;
            };

            for (int a = 1; a < n; ++a) {
                for (int b = 1; b < n; ++b) {
                    // automorphism: gyr(x (+) y) = gyr(x) (+) gyr(y)
                    for (int x = 1; x < n; ++x) {
                        const int gx = g[idx(a, b, x)];
                        if (gx == kUnknown) continue;
                        for (int y = 1; y < n; ++y) {
                            const int gy = g[idx(a, b, y)];
                            const int xy = get(s, x, y);
                            if (gy == kUnknown || xy == kUnknown) continue;
                            const int gxy = g[idx(a, b, xy)];
                            const int prod = get(s, gx, gy);
                            bool ok = true;
                            if (prod != kUnknown) {
                                force(a, b, xy, prod, ok);
                            } else if (gxy != kUnknown) {
                                if (!assign(s, gx, gy, gxy)) return false;
                                changed = true;
                            }
                            if (!ok) return false;
                        }
                    }
                    // left loop: gyr[a (+) b, b] = gyr[a, b]
                    const int c = get(s, a, b);
                    if (c == kUnknown) continue;
                    for (int z = 0; z < n; ++z) {
                        const int lhs = g[idx(c, b, z)];
                        const int rhs = g[idx(a, b, z)];
                        bool ok = true;
                        if (lhs != kUnknown) force(a, b, z, lhs, ok);
                        else if (rhs != kUnknown) force(c, b, z, rhs, ok);
                        if (!ok) return false;
                    }
                }
            }
        }
        return true;
    }

    /// First unknown cell in row-major order, or -1.
    int next_cell(const State& s) const {
        for (int a = 1; a < n_; ++a)
            for (int b = 1; b < n_; ++b)
                if (get(s, a, b) == kUnknown) return a * kMax + b;
        return -1;
    }

    CayleyTable to_table(const State& s) const {
        std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n_),
                                             std::vector<Index>(static_cast<std::size_t>(n_)));
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) rows[a][b] = static_cast<Index>(get(s, a, b));
        return CayleyTable::from_rows(rows);
    }

    /// Children of `s`: one per candidate value of the next cell, in value order.
    template <class Visit>
    void expand(const State& s, int cell, Visit&& visit) const {
        const int a = cell / kMax, b = cell % kMax;
        for (int v = 1; v < n_; ++v) {
            if ((s.row_used[a] >> v) & 1u || (s.col_used[b] >> v) & 1u) continue;
            State child = s;
            const bool ok = assign(child, a, b, v) && propagate(child);
            if (!visit(child, ok)) return;
        }
    }

private:
    int n_;
    std::array<int, kMax> inv_;
};

struct Root {
    const Solver* solver;
    State state;
};

void explore(const Solver& solver, const State& s, std::size_t cap, Subtree& out) {
    const int cell = solver.next_cell(s);
    if (cell < 0) {
        out.solutions.push_back(solver.to_table(s));
        return;
    }
    solver.expand(s, cell, [&](const State& child, bool ok) {
        if (out.nodes >= cap) {
            out.hit_cap = true;
            return false;
        }
        ++out.nodes;
        if (ok) explore(solver, child, cap, out);
        return !out.hit_cap;
    });
}

/// Splits the search into independent roots `depth` decisions deep.
void frontier(const Solver& solver, const State& s, int depth, std::size_t cap,
              std::vector<Root>& roots, Subtree& out) {
    const int cell = solver.next_cell(s);
    if (cell < 0) {
        out.solutions.push_back(solver.to_table(s));
        return;
    }
    if (depth == 0) {
        roots.push_back({&solver, s});
        return;
    }
    solver.expand(s, cell, [&](const State& child, bool ok) {
        if (out.nodes >= cap) {
            out.hit_cap = true;
            return false;
        }
        ++out.nodes;
        if (ok) frontier(solver, child, depth - 1, cap, roots, out);
        return !out.hit_cap;
    });
}

}  // namespace

SearchResult search_small(std::size_t n, const SearchOptions& opt) {
    if (n == 0 || n > max_search_order)
        throw PreconditionError("search: order must lie in 1.." + std::to_string(max_search_order));

    const int order = static_cast<int>(n);
    std::vector<Solver> solvers;
    for (int pairs = 0; 2 * pairs <= order - 1; ++pairs) {
        std::array<int, kMax> inv{};
        for (int a = 0; a < order; ++a) inv[a] = a;
        for (int p = 0; p < pairs; ++p) {
            inv[1 + 2 * p] = 2 + 2 * p;
            inv[2 + 2 * p] = 1 + 2 * p;
        }
        solvers.emplace_back(order, inv);
    }

    Subtree head;
    std::vector<Root> roots;
    for (const auto& solver : solvers) {
        State s;
        if (!solver.root(s)) continue;
        frontier(solver, s, 2, opt.budget, roots, head);
        if (head.hit_cap) break;
    }

    std::set<CayleyTable> found;
    for (const auto& t : head.solutions) found.insert(canonical_form(t));
    SearchResult result;
    result.nodes = head.nodes;
    result.exhausted = head.hit_cap;

    if (!result.exhausted) {
        const std::size_t remaining = opt.budget - head.nodes;
        std::vector<Subtree> parts(roots.size());
        if (opt.exec == Execution::parallel) {
            for_each_index(roots.size(), Execution::parallel, [&](std::size_t i) {
                explore(*roots[i].solver, roots[i].state, remaining, parts[i]);
            });
        }
        std::size_t used = 0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const std::size_t left = remaining - used;
            if (opt.exec == Execution::serial || parts[i].hit_cap || parts[i].nodes > left) {
                parts[i] = Subtree{};
                explore(*roots[i].solver, roots[i].state, left, parts[i]);
            }
            used += parts[i].nodes;
            for (const auto& t : parts[i].solutions) found.insert(canonical_form(t));
            if (parts[i].hit_cap) {
                result.exhausted = true;
                break;
            }
        }
        result.nodes += used;
    }

    result.tables.assign(found.begin(), found.end());
    for (auto& t : result.tables) t.set_name("G" + std::to_string(n));
    return result;
}

// ---------------------------------------------------------------------------

namespace {

/// Labels row `a` greedily; `choose` picks the element for each free label.
class Canonizer {
public:
    explicit Canonizer(const CayleyTable& t) : t_(t), n_(static_cast<Index>(t.order())) {}

    CayleyTable run() {
        // The greedy row under each choice of label 1 does not depend on later choices.
        std::vector<std::vector<Index>> first_rows(n_);
        std::vector<Index> best_row;
        for (Index a = 1; a < n_; ++a) {
            first_rows[a] = row_pattern(a);
            if (best_row.empty() || first_rows[a] < best_row) best_row = first_rows[a];
        }
        for (Index a = 1; a < n_; ++a) {
            if (first_rows[a] != best_row) continue;
            std::vector<Index> sigma(n_, kNone), pi(n_, kNone);
            sigma[0] = 0;
            pi[0] = 0;
            sigma[1] = a;
            pi[a] = 1;
            branch(a, 1, 1, sigma, pi);
        }
        auto out = CayleyTable::from_rows(best_);
        out.set_name(t_.name());
        return out;
    }

private:
    static constexpr Index kNone = ~Index{0};

    std::vector<Index> row_pattern(Index a) const {
        std::vector<Index> sigma(n_, kNone), pi(n_, kNone), row(n_);
        sigma[0] = 0;
        pi[0] = 0;
        sigma[1] = a;
        pi[a] = 1;
        Index k = 1;
        row[0] = 1;
        for (Index j = 1; j < n_; ++j) {
            if (j > k) {
                for (Index e = 0; e < n_; ++e)
                    if (pi[e] == kNone) {
                        sigma[++k] = e;
                        pi[e] = k;
                        break;
                    }
            }
            const Index v = t_.at(a, sigma[j]);
            if (pi[v] == kNone) {
                sigma[++k] = v;
                pi[v] = k;
            }
            row[j] = pi[v];
        }
        return row;
    }

    void branch(Index a, Index j, Index k, std::vector<Index>& sigma, std::vector<Index>& pi) {
        for (; j < n_; ++j) {
            if (j > k) {
                for (Index e = 0; e < n_; ++e) {
                    if (pi[e] != kNone) continue;
                    auto s2 = sigma;
                    auto p2 = pi;
                    s2[k + 1] = e;
                    p2[e] = k + 1;
                    branch(a, j, k + 1, s2, p2);
                }
                return;
            }
            const Index v = t_.at(a, sigma[j]);
            if (pi[v] == kNone) {
                sigma[++k] = v;
                pi[v] = k;
            }
        }
        leaf(sigma, pi);
    }

    void leaf(const std::vector<Index>& sigma, const std::vector<Index>& pi) {
        std::vector<std::vector<Index>> rows(n_, std::vector<Index>(n_));
        for (Index i = 0; i < n_; ++i)
            for (Index j = 0; j < n_; ++j) rows[i][j] = pi[t_.at(sigma[i], sigma[j])];
        if (best_.empty() || rows < best_) best_ = std::move(rows);
    }

    const CayleyTable& t_;
    Index n_;
    std::vector<std::vector<Index>> best_;
};

}  // namespace

CayleyTable canonical_form(const CayleyTable& t) {
    if (t.order() <= 2) return t;
    return Canonizer(t).run();
}

}  // namespace gyro
