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

#include "gyro/verify.hpp"

#include <algorithm>

namespace gyro {

namespace {

/// Shared driver: picks exhaustive or sampled tuples for one property.
class PropertyRunner {
public:
    PropertyRunner(const Carrier& c, const VerifyOptions& opt)
        : c_(c), opt_(opt), tol_(opt.tolerance.value_or(c.tolerance())) {
        const auto order = c.order();
        exhaustive_ = order && *order <= opt.exhaustive_cap;
    }

    bool exhaustive() const { return exhaustive_; }

    PropertyResult run(const char* name, std::size_t arity, const ResidualFn& residual) {
        const std::uint64_t stream = stream_++;
        if (exhaustive_) {
            const std::size_t count = saturating_pow(*c_.order(), arity);
            auto r = run_property(name, count, exhaustive_tuples(c_, arity), residual, tol_, opt_.exec);
            r.exhaustive = true;
            return r;
        }
        auto samples = sampled_tuples(c_, arity, opt_.budget, opt_.seed, stream);
        auto r = run_property(
            name, samples.size(), [&samples](std::size_t i) { return samples[i]; }, residual,
            tol_, opt_.exec);
        r.budget = opt_.budget;
        return r;
    }

private:
    const Carrier& c_;
    const VerifyOptions& opt_;
    double tol_;
    bool exhaustive_ = false;
    std::uint64_t stream_ = 0;
};

}  // namespace

VerificationReport verify_axioms(const Carrier& c, const VerifyOptions& opt) {
    PropertyRunner runner(c, opt);
    VerificationReport report;
    const Element zero = c.identity();

    report.add(runner.run(prop::identity, 1, [&](const Tuple& t) {
        const Element& a = t[0];
        return std::max(c.distance(c.add(zero, a), a), c.distance(c.add(a, zero), a));
    }));

    report.add(runner.run(prop::inverse, 1, [&](const Tuple& t) {
        const Element& a = t[0];
        const Element na = c.inv(a);
        return std::max(c.distance(c.add(na, a), zero), c.distance(c.add(a, na), zero));
    }));

    report.add(runner.run(prop::gyroassociative, 3, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1], &z = t[2];
        return c.distance(c.add(a, c.add(b, z)), c.add(c.add(a, b), c.gyr(a, b, z)));
    }));

    report.add(runner.run(prop::gyr_automorphism, 4, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1], &x = t[2], &y = t[3];
        return c.distance(c.gyr(a, b, c.add(x, y)), c.add(c.gyr(a, b, x), c.gyr(a, b, y)));
    }));

    // Surjective: the candidate preimage (-)b(+)((-)a(+)((a(+)b)(+)z)) maps onto z.
    // Injective: the same map recovers z from gyr[a,b](z).
    report.add(runner.run(prop::gyr_bijective, 3, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1], &z = t[2];
        const Element ab = c.add(a, b);
        auto pre = [&](const Element& w) { return c.add(c.inv(b), c.add(c.inv(a), c.add(ab, w))); };
        const double onto = c.distance(c.gyr(a, b, pre(z)), z);
        const double into = c.distance(pre(c.gyr(a, b, z)), z);
        return std::max(onto, into);
    }));

    report.add(runner.run(prop::left_loop, 3, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1], &z = t[2];
        return c.distance(c.gyr(c.add(a, b), b, z), c.gyr(a, b, z));
    }));

    report.add(runner.run(prop::left_cancellation, 2, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1];
        return c.distance(c.add(c.inv(a), c.add(a, b)), b);
    }));

    report.add(runner.run(prop::right_cancellation_inverse, 2, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1];
        const Element nb = c.inv(b);
        return c.distance(c.add(c.add(a, nb), c.gyr(a, nb, b)), a);
    }));

    report.add(runner.run(prop::right_cancellation_gyration, 2, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1];
        return c.distance(c.add(c.add(a, c.gyr(a, b, c.inv(b))), b), a);
    }));

    report.add(runner.run(prop::gyration_formula, 3, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1], &z = t[2];
        return c.distance(c.gyr(a, b, z), c.gyr_derived(a, b, z));
    }));

    return report;
}

VerificationReport gyr_consistency_check(const Carrier& c, const VerifyOptions& opt) {
    VerificationReport report;
    if (!c.has_closed_form_gyr()) {
        PropertyResult skipped;
        skipped.name = "closed_form_gyration";
        skipped.status = Status::skipped;
        skipped.note = "carrier has no closed-form gyration";
        report.add(std::move(skipped));
        return report;
    }
    PropertyRunner runner(c, opt);
    report.add(runner.run("closed_form_gyration", 3, [&](const Tuple& t) {
        const Element &a = t[0], &b = t[1], &z = t[2];
        const auto closed = c.gyr_closed_form(a, b, z);
        return c.distance(*closed, c.gyr_derived(a, b, z));
    }));
    return report;
}

DegeneracyVerdict is_degenerate_group(const Carrier& c, const VerifyOptions& opt) {
    PropertyRunner runner(c, opt);
    const auto r = runner.run("gyration_identity", 3, [&](const Tuple& t) {
        return c.distance(c.gyr(t[0], t[1], t[2]), t[2]);
    });
    DegeneracyVerdict v;
    v.degenerate = r.status == Status::pass;
    v.checks = r.checks;
    v.exhaustive = r.exhaustive;
    if (r.counterexample) v.witness = r.counterexample->tuple;
    return v;
}

}  // namespace gyro
