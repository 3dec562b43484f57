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

#include "gyro/prenorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gyro/error.hpp"
#include "gyro/mobius.hpp"

namespace gyro {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

double ball_sum(double r, double s) {
    if (r >= 1.0 || s >= 1.0) return 1.0;
    return std::min(1.0, mobius_modulus_sum(r, s));
}

bool radius_leq(double a, double b) { return b >= 1.0 || a <= b * (1.0 + 1e-12); }

Rng seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

const FiniteCarrier& finite_of(const Carrier& c) {
    const auto* f = dynamic_cast<const FiniteCarrier*>(&c);
    if (!f) throw PreconditionError("expected a finite table carrier");
    return *f;
}

}  // namespace

// ---------------------------------------------------------------------------

DyadicFamily DyadicFamily::build(const NeighborhoodChain& chain, std::size_t depth) {
    if (chain.empty()) throw ChainInvalid("empty chain");
    if (depth > 24) throw PreconditionError("dyadic depth above 24 is not supported");
    const bool exact = chain.at(0).is_exact();
    if (!exact && !chain.is_ball_chain())
        throw ChainInvalid("dyadic families need an exact chain or a chain of disk balls");
    if (!chain.stabilizes() && depth >= chain.size())
        throw ChainInvalid("chain has " + std::to_string(chain.size()) + " levels, depth " +
                           std::to_string(depth) + " needs " + std::to_string(depth + 1));

    ChainCheckOptions copt;
    copt.budget = 16;
    const auto report = validate_chain(chain, copt);
    for (const auto& p : report.properties()) {
        if (p.name == chain_prop::gyr_invariant || p.status != Status::fail) continue;
        throw ChainInvalid("chain fails " + p.name + " (" + p.counterexample->detail + ")");
    }

    DyadicFamily fam;
    fam.chain_ = chain;
    fam.depth_ = depth;
    fam.exact_ = exact;

    if (exact) {
        const SetHandle whole = SetHandle::whole(chain.carrier());
        std::vector<SetHandle> cur{chain.at(0)};
        auto level_checks = [&](const std::vector<SetHandle>& lv, std::size_t n) {
            const std::size_t top = lv.size();
            for (std::size_t m = 1; m <= top; ++m) {
                const SetHandle& next = m < top ? lv[m] : whole;
                ++fam.checks_;
                if (!is_subset(set_add(lv[0], lv[m - 1]), next))
                    throw ChainInvalid("V(1/2^" + std::to_string(n) + ") (+) V(" + std::to_string(m) + "/2^" +
                                       std::to_string(n) + ") is not inside V(" + std::to_string(m + 1) +
                                       "/2^" + std::to_string(n) + ")");
                ++fam.checks_;
                if (!is_subset(lv[m - 1], next))
                    throw ChainInvalid("family is not monotone at " + std::to_string(m) + "/2^" +
                                       std::to_string(n));
            }
        };
        level_checks(cur, 0);
        for (std::size_t n = 1; n <= depth; ++n) {
            const SetHandle& U = chain.at(n);
            std::vector<SetHandle> next;
            next.reserve(cur.size() * 2);
            for (std::size_t k = 1; k <= cur.size() * 2; ++k) {
                if (k == 1) next.push_back(U);
                else if (k % 2 == 0) next.push_back(cur[k / 2 - 1]);
                else next.push_back(set_add(U, cur[(k - 1) / 2 - 1]));
            }
            level_checks(next, n);
            cur = std::move(next);
        }
        fam.sets_ = std::move(cur);
    } else {
        std::vector<double> cur{*chain.at(0).ball_radius()};
        auto level_checks = [&](const std::vector<double>& lv, std::size_t n) {
            const std::size_t top = lv.size();
            for (std::size_t m = 1; m <= top; ++m) {
                const double next = m < top ? lv[m] : 1.0;
                fam.checks_ += 2;
                if (!radius_leq(ball_sum(lv[0], lv[m - 1]), next))
                    throw ChainInvalid("V(1/2^" + std::to_string(n) + ") (+) V(" + std::to_string(m) + "/2^" +
                                       std::to_string(n) + ") has radius " + fmt(ball_sum(lv[0], lv[m - 1])) +
                                       " > " + fmt(next));
                if (!radius_leq(lv[m - 1], next))
                    throw ChainInvalid("family is not monotone at " + std::to_string(m) + "/2^" +
                                       std::to_string(n));
            }
        };
        level_checks(cur, 0);
        for (std::size_t n = 1; n <= depth; ++n) {
            const double u = *chain.at(n).ball_radius();
            std::vector<double> next;
            next.reserve(cur.size() * 2);
            for (std::size_t k = 1; k <= cur.size() * 2; ++k) {
                if (k == 1) next.push_back(u);
                else if (k % 2 == 0) next.push_back(cur[k / 2 - 1]);
                else next.push_back(ball_sum(u, cur[(k - 1) / 2 - 1]));
            }
            level_checks(next, n);
            cur = std::move(next);
        }
        fam.radii_ = std::move(cur);
    }
    return fam;
}

std::uint64_t DyadicFamily::finest(std::uint64_t m, std::size_t n) const {
    if (m == 0) throw PreconditionError("V(0) is not part of the family");
    if (n > depth_)
        throw PreconditionError("depth " + std::to_string(n) + " exceeds the family depth " +
                                std::to_string(depth_));
    return m << (depth_ - n);
}

SetHandle DyadicFamily::set(std::uint64_t m, std::size_t n) const {
    const std::uint64_t k = finest(m, n);
    const std::uint64_t top = std::uint64_t{1} << depth_;
    if (exact_) return k > top ? SetHandle::whole(carrier()) : sets_[k - 1];
    return SetHandle::ball(carrier(), radius(m, n));
}

double DyadicFamily::radius(std::uint64_t m, std::size_t n) const {
    if (exact_) throw PreconditionError("exact families have no radii");
    const std::uint64_t k = finest(m, n);
    const std::uint64_t top = std::uint64_t{1} << depth_;
    return k > top ? 1.0 : radii_[k - 1];
}

// ---------------------------------------------------------------------------

PrenormTable PrenormTable::build(DyadicFamily family, const PrenormOptions& opt) {
    PrenormTable tab;
    tab.family_ = std::move(family);
    const DyadicFamily& fam = tab.family_;
    const Carrier& c = *fam.carrier();
    const std::uint64_t top = std::uint64_t{1} << fam.depth();
    const double unit = 1.0 / static_cast<double>(top);

    if (fam.is_exact()) {
        const CayleyTable& t = finite_of(c).table();
        const std::size_t n = t.order();
        const SetHandle& P = fam.chain().back();
        // right limits P (+) V(m / 2^depth), with V(0) = {0}
        std::vector<double> f(n, static_cast<double>(top + 1) * unit);
        std::vector<bool> done(n, false);
        for (std::uint64_t m = 0; m <= top; ++m) {
            const SetHandle W = m == 0 ? P : set_add(P, fam.set(m, fam.depth()));
            for (Index x : W.indices()) {
                if (done[x]) continue;
                done[x] = true;
                f[x] = static_cast<double>(m) * unit;
            }
        }
        std::vector<double> N(n, 0.0);
        for_each_index(n, opt.exec, [&](std::size_t x) {
            double best = 0.0;
            for (Index y = 0; y < n; ++y)
                best = std::max(best, std::abs(f[t.at(static_cast<Index>(x), y)] - f[y]));
            N[x] = best;
        });
        for (Index x = 0; x < n; ++x) tab.points_.push_back(Element(x));
        tab.f_ = std::move(f);
        tab.N_ = std::move(N);
        return tab;
    }

    for (std::uint64_t k = 1; k <= top; ++k) tab.radii_.push_back(std::min(1.0, fam.radius(k, fam.depth())));

    // Disk: moduli entering the supremum.
    Rng rng = seeded(opt.seed, 11);
    std::vector<double> sup{0.0};
    for (std::size_t i = 0; i < opt.sup_samples; ++i) {
        Element y = c.sample(rng);
        sup.push_back(std::abs(y.point()));
        tab.sup_points_.push_back(std::move(y));
    }
    for (std::uint64_t k = 1; k <= top; ++k) {
        const double r = fam.radius(k, fam.depth());
        if (r >= 1.0) continue;
        sup.push_back(r);
        sup.push_back(std::nextafter(r, 2.0));
    }
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
    tab.sup_ = std::move(sup);
    tab.sup_f_.reserve(tab.sup_.size());
    for (double s : tab.sup_) tab.sup_f_.push_back(tab.f_radial(s));

    tab.grid_ = opt.grid;
    const double h = 2.0 / static_cast<double>(opt.grid);
    for (std::size_t j = 0; j < opt.grid; ++j) {
        for (std::size_t i = 0; i < opt.grid; ++i) {
            const Complex z(-1.0 + (static_cast<double>(i) + 0.5) * h, -1.0 + (static_cast<double>(j) + 0.5) * h);
            if (std::abs(z) < 1.0) tab.points_.emplace_back(z);
        }
    }
    tab.f_.assign(tab.points_.size(), 0.0);
    tab.N_.assign(tab.points_.size(), 0.0);
    for_each_index(tab.points_.size(), opt.exec, [&](std::size_t k) {
        const double r = std::abs(tab.points_[k].point());
        tab.f_[k] = tab.f_radial(r);
        tab.N_[k] = tab.N_radial(r);
    });
    return tab;
}

double PrenormTable::f_radial(double t) const {
    if (t == 0.0) return 0.0;
    const double unit = f_error_bound();
    // radii are nondecreasing; f is k / 2^depth for the first radius k with t <= radius
    const auto it = std::lower_bound(radii_.begin(), radii_.end(), t);
    return static_cast<double>(it - radii_.begin() + 1) * unit;
}

double PrenormTable::N_radial(double r) const {
    const double unit = f_error_bound();
    const std::size_t K = radii_.size();
    double best = 0.0;
    // Each endpoint sequence below is monotone in s, so f is read off by a forward walk.
    auto walk = [&](auto first, auto last, auto endpoint) {
        std::size_t p = 0;
        for (auto i = first; i != last; ++i) {
            const double t = endpoint(sup_[*i]);
            while (p < K && radii_[p] < t) ++p;
            const double ft = t == 0.0 ? 0.0 : static_cast<double>(p + 1) * unit;
            best = std::max(best, std::abs(ft - sup_f_[*i]));
        }
    };
    std::vector<std::size_t> up(sup_.size());
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = i;
    const auto split = static_cast<std::size_t>(std::upper_bound(sup_.begin(), sup_.end(), r) - sup_.begin());
    walk(up.begin(), up.end(), [r](double s) { return (s + r) / (1.0 + s * r); });
    walk(up.rbegin() + static_cast<std::ptrdiff_t>(up.size() - split), up.rend(),
         [r](double s) { return (r - s) / (1.0 - s * r); });
    walk(up.begin() + static_cast<std::ptrdiff_t>(split), up.end(),
         [r](double s) { return (s - r) / (1.0 - s * r); });
    return best;
}

double PrenormTable::f(const Element& x) const {
    const Carrier& c = *family_.carrier();
    c.check_domain(x);
    if (is_exact()) return f_[x.index()];
    return f_radial(std::abs(x.point()));
}

double PrenormTable::N(const Element& x) const {
    const Carrier& c = *family_.carrier();
    c.check_domain(x);
    if (is_exact()) return N_[x.index()];
    return N_radial(std::abs(x.point()));
}

double PrenormTable::f_error_bound() const {
    return 1.0 / static_cast<double>(std::uint64_t{1} << family_.depth());
}

// ---------------------------------------------------------------------------

namespace {

/// First-failure accumulator for one property.
class Tally {
public:
    Tally(std::string name, bool exhaustive) : name_(std::move(name)), exhaustive_(exhaustive) {}

    void check(bool ok, double residual, const Tuple& witness, const std::string& detail) {
        ++checks_;
        if (residual > max_residual_) max_residual_ = residual;
        if (!ok && !failure_) failure_ = Counterexample{witness, residual, detail};
    }
    void note(std::string s) { note_ = std::move(s); }

    PropertyResult result(std::size_t budget = 0) const {
        PropertyResult r;
        r.name = name_;
        r.status = failure_ ? Status::fail : Status::pass;
        r.checks = checks_;
        r.budget = std::max(budget, checks_);
        r.max_residual = max_residual_;
        r.exhaustive = exhaustive_;
        r.counterexample = failure_;
        r.note = note_;
        return r;
    }

private:
    std::string name_;
    bool exhaustive_;
    std::size_t checks_ = 0;
    double max_residual_ = 0.0;
    std::optional<Counterexample> failure_;
    std::string note_;
};

PropertyResult skipped(std::string name, std::string note) {
    PropertyResult r;
    r.name = std::move(name);
    r.status = Status::skipped;
    r.note = std::move(note);
    return r;
}

bool chain_is_gyr_invariant(const NeighborhoodChain& chain, std::uint64_t seed) {
    ChainCheckOptions copt;
    copt.budget = 256;
    copt.seed = seed;
    const auto report = validate_chain(chain, copt);
    const auto* p = report.find(chain_prop::gyr_invariant);
    return p && p->status == Status::pass;
}

VerificationReport finite_prenorm_check(const PrenormTable& tab) {
    const DyadicFamily& fam = tab.family();
    const auto& fc = finite_of(*fam.carrier());
    const CayleyTable& t = fc.table();
    const Index n = static_cast<Index>(t.order());
    const std::uint64_t top = std::uint64_t{1} << fam.depth();
    const double unit = 1.0 / static_cast<double>(top);
    const auto& f = tab.f_values();
    const auto& N = tab.N_values();
    VerificationReport rep;

    Tally family(prenorm_prop::family, true);
    for (std::size_t i = 0; i < fam.checks(); ++i) family.check(true, 0.0, {}, {});
    rep.add(family.result());

    Tally inside(prenorm_prop::f_inside, true);
    for (std::uint64_t m = 1; m <= top + 1; ++m) {
        const double r = static_cast<double>(m) * unit;
        const SetHandle V = fam.set(m, fam.depth());
        for (Index x = 0; x < n; ++x) {
            if (!(f[x] < r)) continue;
            inside.check(V.contains(x), V.contains(x) ? 0.0 : 1.0, {Element(x)},
                         "f = " + fmt(f[x]) + " < " + fmt(r) + " but x is not in V(r)");
        }
    }
    rep.add(inside.result());

    Tally pn1(prenorm_prop::pn1, true);
    pn1.check(N[0] == 0.0, N[0], {Element(Index{0})}, "N(0) = " + fmt(N[0]));
    rep.add(pn1.result());

    Tally pn2(prenorm_prop::pn2, true);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            const double excess = N[t.at(x, y)] - N[x] - N[y];
            pn2.check(excess <= 0.0, std::max(0.0, excess), {Element(x), Element(y)},
                      "N(x (+) y) exceeds N(x) + N(y) by " + fmt(excess));
        }
    rep.add(pn2.result());

    Tally pn3(prenorm_prop::pn3, true);
    for (Index x = 0; x < n; ++x) {
        const double d = std::abs(N[t.inv(x)] - N[x]);
        pn3.check(d == 0.0, d, {Element(x)}, "N((-)x) differs by " + fmt(d));
    }
    rep.add(pn3.result());

    if (chain_is_gyr_invariant(fam.chain(), 0)) {
        Tally gyr(prenorm_prop::gyr_invariant, true);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                for (Index z = 0; z < n; ++z) {
                    const double d = std::abs(N[t.gyr(x, y, z)] - N[z]);
                    gyr.check(d == 0.0, d, {Element(x), Element(y), Element(z)},
                              "N(gyr[x,y](z)) differs by " + fmt(d));
                }
        rep.add(gyr.result());
    } else {
        rep.add(skipped(prenorm_prop::gyr_invariant, "chain levels are not gyration invariant"));
    }

    Tally lower(prenorm_prop::sandwich_lower, true);
    Tally upper(prenorm_prop::sandwich_upper, true);
    for (std::size_t k = 0; k <= fam.depth(); ++k) {
        const SetHandle& U = fam.chain().at(k);
        const double level = std::ldexp(1.0, -static_cast<int>(k));
        for (Index x = 0; x < n; ++x) {
            if (N[x] < level)
                lower.check(U.contains(x), U.contains(x) ? 0.0 : 1.0, {Element(x)},
                            "n=" + std::to_string(k) + ": N = " + fmt(N[x]) + " < " + fmt(level) +
                                " but x is not in Un");
            if (U.contains(x))
                upper.check(N[x] <= 2.0 * level, std::max(0.0, N[x] - 2.0 * level), {Element(x)},
                            "n=" + std::to_string(k) + ": x in Un but N = " + fmt(N[x]) + " > " +
                                fmt(2.0 * level));
        }
    }
    rep.add(lower.result());
    rep.add(upper.result());
    return rep;
}

VerificationReport disk_prenorm_check(const PrenormTable& tab, const PrenormCheckOptions& opt) {
    const DyadicFamily& fam = tab.family();
    const Carrier& c = *fam.carrier();
    const std::uint64_t top = std::uint64_t{1} << fam.depth();
    const double unit = 1.0 / static_cast<double>(top);
    const double tol = opt.tolerance.value_or(2.0 * unit);
    const auto& pts = tab.points();
    const auto& N = tab.N_values();
    const auto& f = tab.f_values();
    VerificationReport rep;
    const std::string sampled_note =
        "N is a lower bound from sampled moduli; f over-estimates by less than " + fmt(unit);

    Tally family(prenorm_prop::family, true);
    for (std::size_t i = 0; i < fam.checks(); ++i) family.check(true, 0.0, {}, {});
    rep.add(family.result());

    Tally inside(prenorm_prop::f_inside, false);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::uint64_t m = static_cast<std::uint64_t>(std::llround(f[k] / unit)) + 1;
        if (m > top) continue;
        const double r = fam.radius(m, fam.depth());
        const double t = std::abs(pts[k].point());
        inside.check(t <= r, std::max(0.0, t - r), {pts[k]},
                     "f = " + fmt(f[k]) + " but |x| = " + fmt(t) + " exceeds the radius " + fmt(r));
    }
    rep.add(inside.result());

    Tally pn1(prenorm_prop::pn1, true);
    const double n0 = tab.N(c.identity());
    pn1.check(n0 <= tol, n0, {c.identity()}, "N(0) = " + fmt(n0));
    rep.add(pn1.result());

    Rng rng = seeded(opt.seed, 21);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);

    Tally pn2(prenorm_prop::pn2, false);
    for (std::size_t i = 0; i < opt.budget; ++i) {
        const Element& x = pts[pick(rng)];
        const Element& y = pts[pick(rng)];
        const double excess = tab.N(c.add(x, y)) - tab.N(x) - tab.N(y);
        pn2.check(excess <= tol, std::max(0.0, excess), {x, y},
                  "N(x (+) y) exceeds N(x) + N(y) by " + fmt(excess));
    }
    pn2.note(sampled_note);
    rep.add(pn2.result(opt.budget));

    Tally pn3(prenorm_prop::pn3, false);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double d = std::abs(tab.N(c.inv(pts[k])) - N[k]);
        pn3.check(d <= tol, d, {pts[k]}, "N((-)x) differs by " + fmt(d));
    }
    pn3.note(sampled_note);
    rep.add(pn3.result());

    if (chain_is_gyr_invariant(fam.chain(), opt.seed)) {
        Tally gyr(prenorm_prop::gyr_invariant, false);
        for (std::size_t i = 0; i < opt.budget; ++i) {
            const Element x = c.sample(rng);
            const Element y = c.sample(rng);
            const Element& z = pts[pick(rng)];
            const double d = std::abs(tab.N(c.gyr(x, y, z)) - tab.N(z));
            gyr.check(d <= opt.gyr_tolerance, d, {x, y, z}, "N(gyr[x,y](z)) differs by " + fmt(d));
        }
        gyr.note(sampled_note);
        rep.add(gyr.result(opt.budget));
    } else {
        rep.add(skipped(prenorm_prop::gyr_invariant, "chain levels are not gyration invariant"));
    }

    Tally lower(prenorm_prop::sandwich_lower, false);
    Tally upper(prenorm_prop::sandwich_upper, false);
    for (std::size_t k = 0; k <= fam.depth(); ++k) {
        const SetHandle& U = fam.chain().at(k);
        const double r = std::min(1.0, *U.ball_radius());
        const double level = std::ldexp(1.0, -static_cast<int>(k));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double t = std::abs(pts[i].point());
            if (N[i] < level)
                lower.check(r >= 1.0 || t <= r, r >= 1.0 || t <= r ? 0.0 : t - r, {pts[i]},
                            "n=" + std::to_string(k) + ": N = " + fmt(N[i]) + " < " + fmt(level) +
                                " but |x| = " + fmt(t) + " > " + fmt(r));
            if (r >= 1.0 || t <= r)
                upper.check(N[i] <= 2.0 * level, std::max(0.0, N[i] - 2.0 * level), {pts[i]},
                            "n=" + std::to_string(k) + ": x in Un but N = " + fmt(N[i]) + " > " +
                                fmt(2.0 * level));
        }
        // the grid is too coarse for the small levels; their sample clouds fill in
        for (const auto& u : U.cloud()) {
            const double nu = tab.N(u);
            upper.check(nu <= 2.0 * level, std::max(0.0, nu - 2.0 * level), {u},
                        "n=" + std::to_string(k) + ": x in Un but N = " + fmt(nu) + " > " + fmt(2.0 * level));
        }
    }
    lower.note(sampled_note);
    upper.note(sampled_note);
    rep.add(lower.result());
    rep.add(upper.result());

    // Pointwise supremum over the same samples can never beat the circle-closed one.
    Tally cross(prenorm_prop::sup_cross_check, false);
    const std::size_t probes = std::min<std::size_t>(pts.size(), std::max<std::size_t>(opt.budget / 10, 1));
    const auto& ys = tab.sup_points();
    for (std::size_t i = 0; i < probes; ++i) {
        const Element& x = pts[pick(rng)];
        double pointwise = 0.0;
        for (const auto& y : ys) pointwise = std::max(pointwise, std::abs(tab.f(c.add(x, y)) - tab.f(y)));
        const double nx = tab.N(x);
        cross.check(pointwise <= nx, std::max(0.0, pointwise - nx), {x},
                    "pointwise sup " + fmt(pointwise) + " exceeds N = " + fmt(nx));
    }
    rep.add(cross.result());
    return rep;
}

}  // namespace

VerificationReport prenorm_check(const PrenormTable& tab, const PrenormCheckOptions& opt) {
    return tab.is_exact() ? finite_prenorm_check(tab) : disk_prenorm_check(tab, opt);
}

VerificationReport prenorm_check(const NeighborhoodChain& chain, std::size_t depth, const PrenormOptions& table,
                                 const PrenormCheckOptions& opt) {
    return prenorm_check(PrenormTable::build(DyadicFamily::build(chain, depth), table), opt);
}

double pseudometric_d(const PrenormTable& tab, const Element& x, const Element& y) {
    return std::abs(tab.N(x) - tab.N(y));
}

namespace {

void require_chain_core(const Carrier& c, const SubgyroHandle& P, const PrenormTable& tab) {
    const NeighborhoodChain& chain = tab.family().chain();
    if (tab.is_exact()) {
        if (!chain.stabilizes()) throw ChainInvalid("finite chains must stabilize");
        const auto want = chain.back().elements();
        if (P.members != want)
            throw ChainInvalid("P = " + to_string(P.members) + " is not the chain's final set " + to_string(want));
        return;
    }
    if (P.members.size() != 1 || !c.equal(P.members[0], c.identity()))
        throw ChainInvalid("balls shrinking to 0 intersect in {0}, but P = " + to_string(P.members));
}

double rho(const Carrier& c, const PrenormTable& tab, const Element& x, const Element& y) {
    return tab.N(c.add(c.inv(x), y)) + tab.N(c.add(c.inv(y), x));
}

}  // namespace

double coset_metric(const Carrier& c, const SubgyroHandle& P, const PrenormTable& tab, const Element& x,
                    const Element& y) {
    require_chain_core(c, P, tab);
    return rho(c, tab, x, y);
}

VerificationReport metric_check(const Carrier& c, const SubgyroHandle& P, const PrenormTable& tab,
                                const MetricCheckOptions& opt) {
    require_chain_core(c, P, tab);
    VerificationReport rep;
    if (tab.is_exact()) {
        const auto& fc = finite_of(c);
        const CayleyTable& t = fc.table();
        const Index n = static_cast<Index>(t.order());
        const auto cosets = left_cosets(fc, P);
        std::vector<double> R(static_cast<std::size_t>(n) * n);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) R[x * n + y] = rho(c, tab, Element(x), Element(y));
        auto r = [&](Index x, Index y) { return R[x * n + y]; };

        Tally rep_ind(metric_prop::representative, true);
        for (Index x = 0; x < n; ++x)
            for (const auto& p : P.members) {
                const double d = std::abs(tab.N(Element(t.at(x, p.index()))) - tab.N(Element(x)));
                rep_ind.check(d == 0.0, d, {Element(x), p}, "N(x (+) p) differs from N(x) by " + fmt(d));
            }
        rep.add(rep_ind.result());

        Tally inv(metric_prop::coset_invariance, true);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                for (const auto& p : P.members)
                    for (const auto& q : P.members) {
                        const double d = std::abs(r(t.at(x, p.index()), t.at(y, q.index())) - r(x, y));
                        inv.check(d == 0.0, d, {Element(x), Element(y), p, q},
                                  "value changes with the representatives by " + fmt(d));
                    }
        rep.add(inv.result());

        Tally ind(metric_prop::indiscernibles, true);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) {
                const bool same = cosets.block_of[x] == cosets.block_of[y];
                ind.check((r(x, y) == 0.0) == same, (r(x, y) == 0.0) == same ? 0.0 : std::max(r(x, y), 1.0), {Element(x), Element(y)},
                          same ? "same coset but distance " + fmt(r(x, y)) : "different cosets at distance 0");
            }
        rep.add(ind.result());

        Tally sym(metric_prop::symmetry, true);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) {
                const double d = std::abs(r(x, y) - r(y, x));
                sym.check(d == 0.0, d, {Element(x), Element(y)}, "asymmetric by " + fmt(d));
            }
        rep.add(sym.result());

        Tally tri(metric_prop::triangle, true);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                for (Index z = 0; z < n; ++z) {
                    const double excess = r(x, z) - r(x, y) - r(y, z);
                    tri.check(excess <= 0.0, std::max(0.0, excess), {Element(x), Element(y), Element(z)},
                              "triangle inequality fails by " + fmt(excess));
                }
        rep.add(tri.result());
        return rep;
    }

    const double tol = opt.tolerance.value_or(2.0 * 2.0 * tab.f_error_bound());
    const auto& pts = tab.points();
    Rng rng = seeded(opt.seed, 31);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    const std::string note = "sampled grid triples; N is a lower bound from sampled moduli";

    Tally rep_ind(metric_prop::representative, true);
    for (const auto& x : pts) {
        const double d = std::abs(tab.N(c.add(x, c.identity())) - tab.N(x));
        rep_ind.check(d <= tol, d, {x, c.identity()}, "N(x (+) 0) differs from N(x) by " + fmt(d));
    }
    rep.add(rep_ind.result());

    Tally inv(metric_prop::coset_invariance, true);
    inv.check(true, 0.0, {}, {});
    inv.note("P = {0}: every coset is a single point");
    rep.add(inv.result());

    Tally ind(metric_prop::indiscernibles, false), sym(metric_prop::symmetry, false),
        tri(metric_prop::triangle, false);
    for (std::size_t i = 0; i < opt.budget; ++i) {
        const Element& x = pts[pick(rng)];
        const Element& y = pts[pick(rng)];
        const Element& z = pts[pick(rng)];
        const double xy = rho(c, tab, x, y), yx = rho(c, tab, y, x);
        const bool same = x == y;
        ind.check((xy == 0.0) == same, (xy == 0.0) == same ? 0.0 : std::max(xy, 1.0), {x, y},
                  same ? "distance " + fmt(xy) + " from a point to itself" : "distinct points at distance 0");
        sym.check(std::abs(xy - yx) <= tol, std::abs(xy - yx), {x, y}, "asymmetric by " + fmt(xy - yx));
        const double excess = rho(c, tab, x, z) - xy - rho(c, tab, y, z);
        tri.check(excess <= tol, std::max(0.0, excess), {x, y, z}, "triangle inequality fails by " + fmt(excess));
    }
    ind.note(note);
    sym.note(note);
    tri.note(note);
    rep.add(ind.result(opt.budget));
    rep.add(sym.result(opt.budget));
    rep.add(tri.result(opt.budget));
    return rep;
}

}  // namespace gyro
