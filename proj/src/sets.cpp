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

#include "gyro/sets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gyro/error.hpp"
#include "gyro/mobius.hpp"

namespace gyro {

namespace {

const FiniteCarrier& finite_of(const CarrierPtr& c) {
    const auto* f = dynamic_cast<const FiniteCarrier*>(c.get());
    if (!f) throw PreconditionError("exact sets need a finite table carrier");
    return *f;
}

const MobiusDisk& disk_of(const CarrierPtr& c) {
    const auto* d = dynamic_cast<const MobiusDisk*>(c.get());
    if (!d) throw PreconditionError("balls need the Möbius disk carrier");
    return *d;
}

bool same_carrier(const CarrierPtr& a, const CarrierPtr& b) {
    if (a == b) return true;
    const auto* fa = dynamic_cast<const FiniteCarrier*>(a.get());
    const auto* fb = dynamic_cast<const FiniteCarrier*>(b.get());
    if (fa && fb) return fa->table() == fb->table();
    const auto* da = dynamic_cast<const MobiusDisk*>(a.get());
    const auto* db = dynamic_cast<const MobiusDisk*>(b.get());
    return da && db && da->tolerance() == db->tolerance();
}

void require_same(const SetHandle& A, const SetHandle& B) {
    if (!same_carrier(A.carrier(), B.carrier()))
        throw CarrierMismatch("sets live on different carriers: " + A.carrier()->describe() +
                              " and " + B.carrier()->describe());
}

bool is_whole_radius(double r) { return r >= 1.0; }

/// Cloud order: modulus, then argument, of the first point atom; element order otherwise.
bool cloud_less(const Element& a, const Element& b) {
    for (std::size_t i = 0; i < std::min(a.arity(), b.arity()); ++i) {
        const auto* za = std::get_if<Complex>(&a[i]);
        const auto* zb = std::get_if<Complex>(&b[i]);
        if (!za || !zb) continue;
        const double ma = std::abs(*za), mb = std::abs(*zb);
        if (ma != mb) return ma < mb;
        const double aa = std::arg(*za), ab = std::arg(*zb);
        if (aa != ab) return aa < ab;
    }
    return a < b;
}

Rng seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL);
}

}  // namespace

SetHandle SetHandle::exact(CarrierPtr c, std::vector<Index> members) {
    const auto& f = finite_of(c);
    for (Index i : members)
        if (i >= f.table().order())
            throw DomainError("exact set: index " + std::to_string(i) + " out of range");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SetHandle s;
    s.carrier_ = std::move(c);
    s.indices_ = std::move(members);
    return s;
}

SetHandle SetHandle::whole(CarrierPtr c, std::size_t resolution, std::uint64_t seed) {
    if (const auto n = c->order()) {
        std::vector<Index> all(*n);
        for (Index i = 0; i < *n; ++i) all[i] = i;
        return exact(std::move(c), std::move(all));
    }
    return ball(std::move(c), 1.0, resolution, seed);
}

SetHandle SetHandle::ball(CarrierPtr disk, double radius, std::size_t resolution, std::uint64_t seed) {
    const MobiusDisk& d = disk_of(disk);
    if (!(radius > 0.0)) throw PreconditionError("ball radius must be positive");
    const double r = std::min(radius, 1.0);
    const double reach = std::min(r, d.guard_radius());
    Rng rng = seeded(seed, 0);
    std::uniform_real_distribution<double> u(-reach, reach);
    std::vector<Element> cloud{d.identity()};
    while (cloud.size() < std::max<std::size_t>(resolution, 1)) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) <= reach) cloud.emplace_back(z);
    }
    const double tol = d.tolerance();
    auto member = [r, tol](const Element& e) {
        return is_whole_radius(r) || std::abs(e.point()) <= r + tol;
    };
    SetHandle s = sampled(std::move(disk), std::move(cloud), member, resolution, seed);
    s.radius_ = r;
    return s;
}

SetHandle SetHandle::sampled(CarrierPtr c, std::vector<Element> cloud, Predicate member,
                             std::size_t resolution, std::uint64_t seed) {
    for (const auto& e : cloud) c->check_domain(e);
    std::stable_sort(cloud.begin(), cloud.end(), cloud_less);
    SetHandle s;
    s.carrier_ = std::move(c);
    s.exact_ = false;
    s.cloud_ = std::move(cloud);
    s.member_ = std::move(member);
    s.resolution_ = resolution;
    s.seed_ = seed;
    return s;
}

const std::vector<Index>& SetHandle::indices() const {
    if (!exact_) throw PreconditionError("sampled sets have no index list");
    return indices_;
}

bool SetHandle::contains(Index i) const {
    if (!exact_) return contains(carrier_->element_at(i));
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool SetHandle::contains(const Element& e) const {
    if (exact_) {
        carrier_->check_domain(e);
        return contains(e.index());
    }
    if (member_) return member_(e);
    return std::any_of(cloud_.begin(), cloud_.end(),
                       [&](const Element& m) { return carrier_->equal(m, e); });
}

std::vector<Element> SetHandle::elements() const {
    if (!exact_) return cloud_;
    std::vector<Element> out;
    out.reserve(indices_.size());
    for (Index i : indices_) out.push_back(carrier_->element_at(i));
    return out;
}

std::size_t SetHandle::size() const { return exact_ ? indices_.size() : cloud_.size(); }

bool operator==(const SetHandle& a, const SetHandle& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) return a.indices_ == b.indices_;
    if (a.radius_ || b.radius_) return a.radius_ == b.radius_;
    return a.cloud_ == b.cloud_;
}

// ---------------------------------------------------------------------------

SetHandle set_add(const SetHandle& A, const SetHandle& B) {
    require_same(A, B);
    if (A.is_exact() && B.is_exact()) {
        const CayleyTable& t = finite_of(A.carrier()).table();
        std::vector<Index> out;
        for (Index a : A.indices())
            for (Index b : B.indices()) out.push_back(t.at(a, b));
        return SetHandle::exact(A.carrier(), std::move(out));
    }
    if (A.is_exact() != B.is_exact()) throw PreconditionError("set_add: cannot mix exact and sampled sets");
    const std::size_t res = std::max(A.resolution(), B.resolution());
    const std::uint64_t seed = mix(A.seed(), B.seed());
    if (A.ball_radius() && B.ball_radius()) {
        const double r = *A.ball_radius(), s = *B.ball_radius();
        const double sum = (is_whole_radius(r) || is_whole_radius(s)) ? 1.0 : mobius_modulus_sum(r, s);
        return SetHandle::ball(A.carrier(), sum, res, seed);
    }
    const Carrier& c = *A.carrier();
    std::vector<Element> cloud;
    for (const auto& a : A.cloud())
        for (const auto& b : B.cloud()) cloud.push_back(c.add(a, b));
    if (cloud.size() > res) {
        Rng rng = seeded(seed, 1);
        std::shuffle(cloud.begin(), cloud.end(), rng);
        cloud.resize(res);
    }
    auto left = std::make_shared<const SetHandle>(A);
    auto right = std::make_shared<const SetHandle>(B);
    auto member = [left, right](const Element& x) {
        const Carrier& cc = *left->carrier();
        return std::any_of(left->cloud().begin(), left->cloud().end(), [&](const Element& a) {
            return right->contains(cc.add(cc.inv(a), x));
        });
    };
    return SetHandle::sampled(A.carrier(), std::move(cloud), member, res, seed);
}

SetHandle set_inv(const SetHandle& A) {
    const Carrier& c = *A.carrier();
    if (A.is_exact()) {
        const CayleyTable& t = finite_of(A.carrier()).table();
        std::vector<Index> out;
        for (Index a : A.indices()) out.push_back(t.inv(a));
        return SetHandle::exact(A.carrier(), std::move(out));
    }
    if (A.ball_radius()) return A;
    std::vector<Element> cloud;
    for (const auto& a : A.cloud()) cloud.push_back(c.inv(a));
    auto src = std::make_shared<const SetHandle>(A);
    auto member = [src](const Element& x) { return src->contains(src->carrier()->inv(x)); };
    return SetHandle::sampled(A.carrier(), std::move(cloud), member, A.resolution(), A.seed());
}

bool is_subset(const SetHandle& A, const SetHandle& B) {
    require_same(A, B);
    if (A.is_exact() && B.is_exact())
        return std::includes(B.indices().begin(), B.indices().end(), A.indices().begin(),
                             A.indices().end());
    if (A.ball_radius() && B.ball_radius())
        return is_whole_radius(*B.ball_radius()) || *A.ball_radius() <= *B.ball_radius();
    const auto xs = A.elements();
    return std::all_of(xs.begin(), xs.end(), [&](const Element& x) { return B.contains(x); });
}

SetHandle set_intersection(const SetHandle& A, const SetHandle& B) {
    require_same(A, B);
    if (A.is_exact() && B.is_exact()) {
        std::vector<Index> out;
        std::set_intersection(A.indices().begin(), A.indices().end(), B.indices().begin(),
                              B.indices().end(), std::back_inserter(out));
        return SetHandle::exact(A.carrier(), std::move(out));
    }
    if (A.ball_radius() && B.ball_radius())
        return *A.ball_radius() <= *B.ball_radius() ? A : B;
    std::vector<Element> cloud;
    for (const auto& a : A.elements())
        if (B.contains(a)) cloud.push_back(a);
    auto left = std::make_shared<const SetHandle>(A);
    auto right = std::make_shared<const SetHandle>(B);
    auto member = [left, right](const Element& x) { return left->contains(x) && right->contains(x); };
    return SetHandle::sampled(A.carrier(), std::move(cloud), member, A.resolution(),
                              mix(A.seed(), B.seed()));
}

DisjointnessVerdict disjointness_check(const SetHandle& A, const SetHandle& B, const SetHandle& C) {
    if (!A.is_exact() || !B.is_exact() || !C.is_exact())
        throw PreconditionError("disjointness equivalence needs exact sets");
    require_same(A, B);
    require_same(A, C);
    DisjointnessVerdict v;
    v.left_disjoint = set_intersection(set_add(A, B), C).size() == 0;
    v.right_disjoint = set_intersection(B, set_add(set_inv(A), C)).size() == 0;
    return v;
}

// ---------------------------------------------------------------------------

NeighborhoodChain::NeighborhoodChain(std::vector<SetHandle> sets, bool stabilizes)
    : sets_(std::move(sets)), stabilizes_(stabilizes) {
    for (std::size_t i = 1; i < sets_.size(); ++i) require_same(sets_[0], sets_[i]);
}

const SetHandle& NeighborhoodChain::at(std::size_t n) const {
    if (sets_.empty()) throw PreconditionError("empty chain");
    if (n >= sets_.size() && !stabilizes_)
        throw PreconditionError("chain level " + std::to_string(n) + " is beyond the materialized depth " +
                                std::to_string(sets_.size()));
    return sets_[std::min(n, sets_.size() - 1)];
}

const CarrierPtr& NeighborhoodChain::carrier() const { return at(0).carrier(); }

bool NeighborhoodChain::is_ball_chain() const {
    return !sets_.empty() &&
           std::all_of(sets_.begin(), sets_.end(), [](const SetHandle& s) { return s.ball_radius().has_value(); });
}

NeighborhoodChain geometric_ball_chain(CarrierPtr disk, double first, double ratio, std::size_t depth,
                                       std::size_t resolution, std::uint64_t seed) {
    if (!(first > 0.0) || !(ratio > 0.0 && ratio < 1.0) || depth == 0)
        throw PreconditionError("geometric chain needs first > 0, 0 < ratio < 1, depth >= 1");
    std::vector<SetHandle> sets;
    double r = first;
    for (std::size_t n = 0; n < depth; ++n, r *= ratio)
        sets.push_back(SetHandle::ball(disk, r, resolution, mix(seed, n)));
    return NeighborhoodChain(std::move(sets), false);
}

NeighborhoodChain harmonic_ball_chain(CarrierPtr disk, std::size_t depth, std::size_t resolution,
                                      std::uint64_t seed) {
    if (depth == 0) throw PreconditionError("harmonic chain needs depth >= 1");
    std::vector<SetHandle> sets;
    for (std::size_t n = 0; n < depth; ++n) {
        const double r = n <= 1 ? 1.0 : 1.0 / static_cast<double>(n);
        sets.push_back(SetHandle::ball(disk, r, resolution, mix(seed, n)));
    }
    return NeighborhoodChain(std::move(sets), false);
}

NeighborhoodChain exact_chain(CarrierPtr c, const std::vector<std::vector<Index>>& sets) {
    std::vector<SetHandle> out;
    for (const auto& s : sets) out.push_back(SetHandle::exact(c, s));
    return NeighborhoodChain(std::move(out));
}

SetHandle closure_via_chain(const SetHandle& A, const NeighborhoodChain& chain) {
    if (chain.empty()) throw PreconditionError("closure_via_chain: empty chain");
    require_same(A, chain.at(0));
    if (A.is_exact()) {
        SetHandle acc = set_add(chain.at(0), A);
        for (std::size_t n = 1; n < chain.size(); ++n)
            acc = set_intersection(acc, set_add(chain.at(n), A));
        return acc;
    }
    if (A.ball_radius() && chain.is_ball_chain()) {
        double r = 1.0;
        for (const auto& u : chain.sets()) {
            const double a = *A.ball_radius(), s = *u.ball_radius();
            const double sum = (is_whole_radius(a) || is_whole_radius(s)) ? 1.0 : mobius_modulus_sum(s, a);
            r = std::min(r, sum);
        }
        return SetHandle::ball(A.carrier(), r, A.resolution(), A.seed());
    }
    std::vector<SetHandle> sums;
    for (const auto& u : chain.sets()) sums.push_back(set_add(u, A));
    auto parts = std::make_shared<const std::vector<SetHandle>>(std::move(sums));
    auto member = [parts](const Element& x) {
        return std::all_of(parts->begin(), parts->end(), [&](const SetHandle& s) { return s.contains(x); });
    };
    return SetHandle::sampled(A.carrier(), A.cloud(), member, A.resolution(), A.seed());
}

SubgyroHandle intersection_subgyrogroup(const std::vector<SetHandle>& family) {
    if (family.empty()) throw PreconditionError("intersection_subgyrogroup: empty family");
    for (const auto& s : family) {
        if (!s.is_exact()) throw PreconditionError("intersection_subgyrogroup needs exact sets");
        require_same(family[0], s);
        if (!s.contains(Index{0})) throw PreconditionError("family members must contain 0");
    }
    for (const auto& U : family) {
        const bool paired = std::any_of(family.begin(), family.end(), [&](const SetHandle& V) {
            return is_subset(set_add(V, V), U) && is_subset(set_inv(V), U);
        });
        if (!paired) {
            std::ostringstream os;
            os << "no V in the family has V (+) V and (-)V inside " << to_string(U.elements());
            throw ConditionsViolated(os.str(), "pairing", U.elements());
        }
    }
    SetHandle H = family[0];
    for (std::size_t i = 1; i < family.size(); ++i) H = set_intersection(H, family[i]);
    return make_subgyro(family[0].carrier(), H.indices());
}

// ---------------------------------------------------------------------------

namespace {

/// Accumulates one property over the levels of a chain.
class LevelCheck {
public:
    LevelCheck(std::string name, bool exact) : name_(std::move(name)), exact_(exact) {}

    void pass(std::size_t count = 1) { checks_ += count; }
    void fail(std::size_t n, Tuple witness, double residual, const std::string& detail) {
        ++checks_;
        if (!failure_) failure_ = Counterexample{std::move(witness), residual, "n=" + std::to_string(n) + ": " + detail};
    }
    bool failed() const { return failure_.has_value(); }
    void note(std::string s) { note_ = std::move(s); }

    PropertyResult result() const {
        PropertyResult r;
        r.name = name_;
        r.status = failure_ ? Status::fail : Status::pass;
        r.checks = checks_;
        r.budget = checks_;
        r.exhaustive = exact_;
        r.counterexample = failure_;
        if (failure_) r.max_residual = failure_->residual;
        r.note = note_;
        if (!exact_ && r.note.empty()) r.note = "sampled: no violation found among the checked points";
        return r;
    }

private:
    std::string name_;
    bool exact_;
    std::size_t checks_ = 0;
    std::optional<Counterexample> failure_;
    std::string note_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

double radius_of(const SetHandle& s) { return std::min(*s.ball_radius(), 1.0); }

/// L (+) L inside R, for n-th level reporting.
void check_sum_inside(LevelCheck& chk, std::size_t n, const SetHandle& L, const SetHandle& R) {
    const Carrier& c = *L.carrier();
    if (L.is_exact() && R.is_exact()) {
        const CayleyTable& t = finite_of(L.carrier()).table();
        for (Index a : L.indices()) {
            for (Index b : L.indices()) {
                const Index v = t.at(a, b);
                if (!R.contains(v)) {
                    chk.fail(n, {Element(a), Element(b)}, 1.0,
                             std::to_string(a) + " (+) " + std::to_string(b) + " = " + std::to_string(v) +
                                 " is outside the level");
                    return;
                }
            }
        }
        chk.pass(L.size() * L.size());
        return;
    }
    if (L.ball_radius() && R.ball_radius()) {
        const double s = radius_of(L), r = radius_of(R);
        if (is_whole_radius(r)) return chk.pass();
        const double sum = is_whole_radius(s) ? 1.0 : mobius_modulus_sum(s, s);
        if (sum <= r * (1.0 + 1e-12)) return chk.pass();
        chk.fail(n, {Element(Complex(s, 0.0)), Element(Complex(s, 0.0))}, sum - r,
                 "|u (+) v| = " + fmt(sum) + " > " + fmt(r) + " for |u| = |v| = " + fmt(s));
        return;
    }
    for (const auto& a : L.cloud()) {
        for (const auto& b : L.cloud()) {
            if (!R.contains(c.add(a, b))) {
                chk.fail(n, {a, b}, 1.0, to_string(c.add(a, b)) + " is outside the level");
                return;
            }
        }
    }
    chk.pass(L.size() * L.size());
}

/// A inside B, for n-th level reporting.
void check_inside(LevelCheck& chk, std::size_t n, const SetHandle& A, const SetHandle& B) {
    if (A.ball_radius() && B.ball_radius()) {
        const double a = radius_of(A), b = radius_of(B);
        if (is_whole_radius(b) || a <= b) return chk.pass();
        const double w = is_whole_radius(a) ? (1.0 + b) / 2.0 : a;
        chk.fail(n, {Element(Complex(w, 0.0))}, w - b, "|z| = " + fmt(w) + " > " + fmt(b));
        return;
    }
    for (const auto& x : A.elements()) {
        if (!B.contains(x)) {
            chk.fail(n, {x}, 1.0, to_string(x) + " is outside the level");
            return;
        }
    }
    chk.pass(A.size());
}

}  // namespace

VerificationReport validate_chain(const NeighborhoodChain& chain, const ChainCheckOptions& opt) {
    if (chain.empty()) throw PreconditionError("validate_chain: empty chain");
    const Carrier& c = *chain.carrier();
    const bool exact = chain.at(0).is_exact();
    const bool decided = exact || chain.is_ball_chain();
    const std::size_t levels = chain.size();
    // conditions on level n+1 reach one past the end only when the tail repeats
    const std::size_t cond_levels = chain.stabilizes() ? levels : levels - 1;
    const Element zero = c.identity();
    const NeighborhoodChain& ref = opt.reference ? *opt.reference : chain;
    if (opt.reference) require_same(ref.at(0), chain.at(0));

    VerificationReport report;

    LevelCheck identity(chain_prop::contains_identity, decided);
    for (std::size_t n = 0; n < levels; ++n) {
        if (chain.at(n).contains(zero)) identity.pass();
        else identity.fail(n, {zero}, 1.0, "0 is not in the level");
    }
    report.add(identity.result());

    LevelCheck symmetric(chain_prop::symmetric, decided);
    for (std::size_t n = 0; n < levels; ++n) {
        const SetHandle& U = chain.at(n);
        if (U.ball_radius()) {
            symmetric.pass();
            continue;
        }
        bool ok = true;
        for (const auto& x : U.elements()) {
            if (!U.contains(c.inv(x))) {
                symmetric.fail(n, {x}, 1.0, "inverse of " + to_string(x) + " is outside the level");
                ok = false;
                break;
            }
        }
        if (ok) symmetric.pass(U.size());
    }
    report.add(symmetric.result());

    LevelCheck nested(chain_prop::nested, decided);
    for (std::size_t n = 0; n + 1 < levels; ++n) check_inside(nested, n, chain.at(n + 1), chain.at(n));
    report.add(nested.result());

    switch (opt.mode) {
        case ChainMode::prenorm: {
            LevelCheck cond(chain_prop::prenorm, decided);
            for (std::size_t n = 0; n < cond_levels; ++n) check_sum_inside(cond, n, chain.at(n + 1), chain.at(n));
            report.add(cond.result());
            break;
        }
        case ChainMode::base_at_H: {
            LevelCheck cond(chain_prop::base, decided);
            const std::size_t span = chain.stabilizes() && ref.stabilizes()
                                         ? std::max(levels, ref.size())
                                         : std::min(cond_levels, ref.stabilizes() ? cond_levels : ref.size());
            for (std::size_t n = 0; n < span; ++n) {
                check_sum_inside(cond, n, chain.at(n + 1), chain.at(n));
                check_sum_inside(cond, n, chain.at(n + 1), ref.at(n));
            }
            report.add(cond.result());
            if (exact) {
                const SetHandle& H = chain.back();
                const auto sub = is_subgyrogroup(c, H.elements());
                LevelCheck core(chain_prop::base_intersection, true);
                if (!sub.holds) core.fail(levels - 1, *sub.witness, 1.0, "the intersection is not closed");
                else if (!is_subset(H, ref.back()))
                    core.fail(levels - 1, H.elements(), 1.0, "the intersection is not inside the reference base");
                else core.pass(sub.checks);
                report.add(core.result());
            } else {
                LevelCheck core(chain_prop::base_intersection, true);
                core.pass();
                core.note("nested balls shrinking to 0 intersect in {0}");
                report.add(core.result());
            }
            break;
        }
        case ChainMode::invariant_set: {
            if (!opt.invariant) throw PreconditionError("invariant-set mode needs the set F");
            const SetHandle& F = *opt.invariant;
            require_same(F, chain.at(0));
            LevelCheck mult(chain_prop::prenorm, decided);
            for (std::size_t n = 0; n < cond_levels; ++n) check_sum_inside(mult, n, chain.at(n + 1), chain.at(n));
            report.add(mult.result());
            LevelCheck cond(chain_prop::invariant, decided && F.is_exact() == exact);
            for (std::size_t n = 0; n < (ref.stabilizes() ? levels : std::min(levels, ref.size())); ++n)
                check_inside(cond, n, set_add(F, chain.at(n)), ref.at(n));
            report.add(cond.result());
            if (exact) {
                LevelCheck core(chain_prop::invariant_core, true);
                const SetHandle& P = chain.back();
                if (!P.contains(Index{0})) core.fail(levels - 1, {zero}, 1.0, "0 is not in P");
                else check_inside(core, levels - 1, set_add(F, P), F);
                report.add(core.result());
            }
            break;
        }
    }

    // gyr[x,y](U) = U: exhaustive on finite carriers, sampled pairs otherwise.
    LevelCheck gyr(chain_prop::gyr_invariant, exact);
    if (exact) {
        const std::size_t n = *c.order();
        std::vector<std::uint8_t> bad(levels, 0);
        std::vector<Tuple> witness(levels);
        for_each_index(levels, opt.exec, [&](std::size_t k) {
            const SetHandle& U = chain.at(k);
            for (Index x = 0; x < n; ++x)
                for (Index y = 0; y < n; ++y)
                    for (Index u : U.indices()) {
                        const Element g = c.gyr(Element(x), Element(y), Element(u));
                        if (!U.contains(g)) {
                            bad[k] = 1;
                            witness[k] = {Element(x), Element(y), Element(u)};
                            return;
                        }
                    }
        });
        for (std::size_t k = 0; k < levels; ++k) {
            if (bad[k]) gyr.fail(k, witness[k], 1.0, "gyration moves " + to_string(witness[k][2]) + " out of the level");
            else gyr.pass(n * n * chain.at(k).size());
        }
    } else {
        Rng rng = seeded(opt.seed, 7);
        std::vector<std::pair<Element, Element>> pairs;
        for (std::size_t i = 0; i < opt.budget; ++i) {
            Element x = c.sample(rng);
            pairs.emplace_back(std::move(x), c.sample(rng));
        }
        for (std::size_t k = 0; k < levels; ++k) {
            const SetHandle& U = chain.at(k);
            const auto& cloud = U.cloud();
            bool ok = true;
            for (std::size_t i = 0; i < pairs.size() && ok; ++i) {
                const Element& u = cloud[i % cloud.size()];
                if (!U.contains(c.gyr(pairs[i].first, pairs[i].second, u))) {
                    gyr.fail(k, {pairs[i].first, pairs[i].second, u}, 1.0,
                             "gyration moves " + to_string(u) + " out of the level");
                    ok = false;
                }
            }
            if (ok) gyr.pass(pairs.size());
        }
    }
    report.add(gyr.result());
    return report;
}

}  // namespace gyro
