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

#include "gyro/subgyro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gyro/element_set.hpp"
#include "gyro/error.hpp"
#include "gyro/mobius.hpp"
#include "gyro/verify.hpp"

namespace gyro {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unchecked: return "unchecked";
        case Verdict::sampled: return "sampled: no counterexample found";
    }
    return "unknown";
}

std::string to_string(NssProbe::Outcome o) {
    switch (o) {
        case NssProbe::Outcome::escaped: return "escaped";
        case NssProbe::Outcome::contained: return "contained";
        case NssProbe::Outcome::inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool SubgyroHandle::contains(const Element& e) const {
    if (carrier && carrier->tolerance() > 0.0) {
        return std::any_of(members.begin(), members.end(),
                           [&](const Element& m) { return carrier->equal(m, e); });
    }
    return std::binary_search(members.begin(), members.end(), e);
}

namespace {

ElementSet to_set(const Carrier& c, const std::vector<Element>& xs) {
    ElementSet s(c);
    for (const auto& x : xs) {
        c.check_domain(x);
        s.insert(x);
    }
    return s;
}

/// Largest modulus over the continuous atoms, or the set size for finite carriers.
double extent(const Carrier& c, const ElementSet& s) {
    if (c.order()) return static_cast<double>(s.size());
    double m = 0.0;
    for (const auto& e : s.items())
        for (const Atom& a : e.parts())
            if (const auto* z = std::get_if<Complex>(&a)) m = std::max(m, std::abs(*z));
    return m;
}

/// One closure round: S u (S (+) S) u (-)S. Returns false when nothing was added.
bool closure_round(const Carrier& c, ElementSet& s) {
    const std::vector<Element> cur = s.items();
    bool grew = false;
    for (const auto& a : cur) grew |= s.insert(c.inv(a));
    for (const auto& a : cur)
        for (const auto& b : cur) grew |= s.insert(c.add(a, b));
    return grew;
}

/// Member furthest from the identity, smallest in element order on ties.
Element outermost(const Carrier& c, const std::vector<Element>& xs) {
    const Element zero = c.identity();
    Element best = xs.front();
    double best_d = c.distance(best, zero);
    for (const auto& x : xs) {
        const double d = c.distance(x, zero);
        if (d > best_d || (d == best_d && x < best)) {
            best = x;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

CheckResult is_subgyrogroup(const Carrier& c, const std::vector<Element>& S) {
    if (S.empty()) throw PreconditionError("is_subgyrogroup: empty set");
    const ElementSet set = to_set(c, S);
    const std::vector<Element> xs = set.sorted();
    CheckResult r;
    for (const auto& a : xs) {
        for (const auto& b : xs) {
            ++r.checks;
            if (!set.contains(c.add(a, b))) {
                r.holds = false;
                r.witness = Tuple{a, b};
                return r;
            }
        }
    }
    for (const auto& a : xs) {
        ++r.checks;
        if (!set.contains(c.inv(a))) {
            r.holds = false;
            r.witness = Tuple{a};
            return r;
        }
    }
    return r;
}

SubgyroHandle make_subgyro(CarrierPtr c, std::vector<Element> S) {
    const auto check = is_subgyrogroup(*c, S);
    SubgyroHandle h;
    h.members = to_set(*c, S).sorted();
    h.carrier = std::move(c);
    h.is_subgyrogroup = check.holds ? Verdict::yes : Verdict::no;
    return h;
}

SubgyroHandle make_subgyro(CarrierPtr c, const std::vector<Index>& S) {
    std::vector<Element> xs;
    xs.reserve(S.size());
    for (Index i : S) xs.push_back(c->element_at(i));
    return make_subgyro(std::move(c), std::move(xs));
}

GeneratedClosure generated(CarrierPtr c, const std::vector<Element>& seeds, std::size_t cap,
                           std::size_t element_limit) {
    if (seeds.empty()) throw PreconditionError("generated: no seeds");
    ElementSet s = to_set(*c, seeds);
    GeneratedClosure out;
    out.round_extent.push_back(extent(*c, s));
    const bool finite = c->order().has_value();
    bool closed = false;
    while (true) {
        if (!finite && (out.rounds >= cap || s.size() > element_limit)) break;
        if (!closure_round(*c, s)) {
            closed = true;
            break;
        }
        ++out.rounds;
        out.round_extent.push_back(extent(*c, s));
    }
    out.handle.members = s.sorted();
    out.handle.carrier = std::move(c);
    out.handle.partial = !closed;
    out.handle.is_subgyrogroup = closed ? Verdict::yes : Verdict::unchecked;
    return out;
}

LVerdict is_L_subgyrogroup(const Carrier& c, const SubgyroHandle& H, std::size_t budget,
                           std::uint64_t seed) {
    if (H.is_subgyrogroup != Verdict::yes)
        throw PreconditionError("is_L_subgyrogroup: H is not a verified subgyrogroup");
    LVerdict r;
    if (H.members.size() == 1 && c.equal(H.members.front(), c.identity())) {
        r.verdict = Verdict::yes;
        return r;
    }
    auto scan = [&](const Element& a) {
        for (const auto& h : H.members) {
            for (const auto& x : H.members) {
                ++r.checks;
                if (!H.contains(c.gyr(a, h, x))) {
                    r.witness = Tuple{a, h, x};
                    return false;
                }
            }
        }
        return true;
    };
    if (const auto n = c.order()) {
        for (std::size_t i = 0; i < *n; ++i) {
            if (!scan(c.element_at(i))) {
                r.verdict = Verdict::no;
                return r;
            }
        }
        r.verdict = Verdict::yes;
        return r;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    Rng rng(seq);
    for (std::size_t i = 0; i < budget; ++i) {
        if (!scan(c.sample(rng))) {
            r.verdict = Verdict::no;
            return r;
        }
    }
    r.verdict = Verdict::sampled;
    return r;
}

CosetDecomposition left_cosets(const FiniteCarrier& c, const SubgyroHandle& H) {
    if (H.is_subgyrogroup != Verdict::yes)
        throw PreconditionError("left_cosets: H is not a verified subgyrogroup");
    const CayleyTable& t = c.table();
    const std::size_t n = t.order();
    CosetDecomposition d;
    for (const auto& m : H.members) d.subgroup.push_back(m.index());
    constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
    d.block_of.assign(n, unassigned);
    for (Index x = 0; x < n; ++x) {
        if (d.block_of[x] != unassigned) continue;
        std::vector<Index> block;
        for (Index h : d.subgroup) block.push_back(t.at(x, h));
        std::sort(block.begin(), block.end());
        if (std::adjacent_find(block.begin(), block.end()) != block.end())
            throw PartitionFailure("coset " + std::to_string(x) + " (+) H has fewer than |H| elements",
                                   "partition", {Element(x)});
        const std::size_t id = d.blocks.size();
        for (Index y : block) {
            if (d.block_of[y] != unassigned)
                throw PartitionFailure("cosets of " + std::to_string(d.representatives[d.block_of[y]]) +
                                           " and " + std::to_string(x) + " overlap in " +
                                           std::to_string(y),
                                       "partition",
                                       {Element(d.representatives[d.block_of[y]]), Element(x),
                                        Element(y)});
            d.block_of[y] = id;
        }
        d.representatives.push_back(x);
        d.blocks.push_back(std::move(block));
    }
    return d;
}

Quotient quotient(const FiniteCarrier& c, const SubgyroHandle& H, Execution exec) {
    const CayleyTable& t = c.table();
    CosetDecomposition d = left_cosets(c, H);
    const std::size_t k = d.blocks.size();

    // first mismatch per left block, as (a', b, b') positions
    std::vector<std::optional<Tuple>> bad(k);
    for_each_index(k, exec, [&](std::size_t i) {
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t want = d.block_of[t.at(d.representatives[i], d.representatives[j])];
            for (Index a : d.blocks[i]) {
                for (Index b : d.blocks[j]) {
                    if (d.block_of[t.at(a, b)] != want) {
                        bad[i] = Tuple{Element(d.representatives[i]), Element(a),
                                       Element(d.representatives[j]), Element(b)};
                        return;
                    }
                }
            }
        }
    });
    for (const auto& w : bad)
        if (w) throw IllDefined("coset operation depends on representatives at " + to_string(*w),
                                "well_defined", *w);

    std::vector<std::vector<Index>> rows(k, std::vector<Index>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            rows[i][j] = static_cast<Index>(
                d.block_of[t.at(d.representatives[i], d.representatives[j])]);

    Quotient q;
    q.table = CayleyTable::from_rows(rows);
    if (!t.name().empty()) q.table.set_name(t.name() + "/H");
    PropertyResult wd;
    wd.name = "well_defined";
    wd.status = Status::pass;
    wd.checks = t.order() * t.order();
    wd.budget = wd.checks;
    wd.exhaustive = true;
    q.report.add(std::move(wd));
    FiniteCarrier qc(std::make_shared<const CayleyTable>(q.table), false);
    VerifyOptions opt;
    opt.exec = exec;
    q.report.merge(verify_axioms(qc, opt));
    q.cosets = std::move(d);
    return q;
}

namespace {

template <class Outside>
NssProbe run_probe(const CarrierPtr& c, const Element& x, std::size_t cap, Outside&& outside) {
    c->check_domain(x);
    if (c->equal(x, c->identity())) throw PreconditionError("nss_probe: x must not be the identity");
    NssProbe p;
    ElementSet s(*c);
    s.insert(x);
    auto escaped = [&](std::size_t step) {
        std::vector<Element> out;
        for (const auto& e : s.items())
            if (outside(e)) out.push_back(e);
        if (out.empty()) return false;
        p.outcome = NssProbe::Outcome::escaped;
        p.step = step;
        p.escapee = outermost(*c, out);
        return true;
    };
    if (escaped(0)) return p;
    const bool finite = c->order().has_value();
    for (std::size_t round = 1;; ++round) {
        if (!finite && (round > cap || s.size() > default_closure_limit)) {
            p.outcome = NssProbe::Outcome::inconclusive;
            return p;
        }
        const bool grew = closure_round(*c, s);
        p.round_extent.push_back(extent(*c, s));
        if (escaped(round)) return p;
        if (!grew) {
            p.outcome = NssProbe::Outcome::contained;
            SubgyroHandle h;
            h.carrier = c;
            h.members = s.sorted();
            h.is_subgyrogroup = Verdict::yes;
            p.subgroup = std::move(h);
            return p;
        }
    }
}

}  // namespace

NssProbe nss_probe(CarrierPtr disk, double radius, const Element& x, std::size_t cap) {
    if (!(radius > 0.0 && radius < 1.0)) throw PreconditionError("nss_probe: radius must lie in (0, 1)");
    const Carrier& c = *disk;
    const Element zero = c.identity();
    return run_probe(disk, x, cap,
                     [&](const Element& e) { return c.distance(e, zero) >= radius; });
}

NssProbe nss_probe(CarrierPtr c, const std::vector<Element>& U, const Element& x, std::size_t cap) {
    const ElementSet u = to_set(*c, U);
    return run_probe(c, x, cap, [&](const Element& e) { return !u.contains(e); });
}

}  // namespace gyro
