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

#include "gyro/kernel.hpp"

#include <cmath>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gyro/error.hpp"

namespace gyro {

bool openmp_enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

struct Accumulator {
    std::size_t checks = 0;
    double max_residual = 0.0;
    bool failed = false;
    Tuple worst_tuple;
    double worst_residual = 0.0;

    void absorb(const Tuple& t, double r, double tol) {
        ++checks;
        const bool bad = std::isnan(r) || r > tol;
        if (!std::isnan(r) && r > max_residual) max_residual = r;
        if (std::isnan(r)) max_residual = std::numeric_limits<double>::infinity();
        if (bad && (!failed || tuple_less(t, worst_tuple))) {
            failed = true;
            worst_tuple = t;
            worst_residual = r;
        }
    }

    void merge(const Accumulator& o) {
        checks += o.checks;
        if (o.max_residual > max_residual) max_residual = o.max_residual;
        if (o.failed && (!failed || tuple_less(o.worst_tuple, worst_tuple))) {
            failed = true;
            worst_tuple = o.worst_tuple;
            worst_residual = o.worst_residual;
        }
    }
};

double safe_residual(const ResidualFn& f, const Tuple& t) {
    try {
        return f(t);
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

PropertyResult run_property(std::string name, std::size_t count, const TupleAt& tuple_at,
                            const ResidualFn& residual, double tolerance, Execution exec) {
    Accumulator total;
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < count; ++i) {
            Tuple t = tuple_at(i);
            total.absorb(t, safe_residual(residual, t), tolerance);
        }
    } else {
        const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
        {
            Accumulator local;
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < n; ++i) {
                Tuple t = tuple_at(static_cast<std::size_t>(i));
                local.absorb(t, safe_residual(residual, t), tolerance);
            }
#pragma omp critical(gyro_run_property)
            total.merge(local);
        }
    }

    PropertyResult r;
    r.name = std::move(name);
    r.checks = total.checks;
    r.budget = count;
    r.max_residual = total.max_residual;
    r.status = total.failed ? Status::fail : Status::pass;
    if (total.failed) r.counterexample = Counterexample{total.worst_tuple, total.worst_residual, {}};
    return r;
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
            return std::numeric_limits<std::size_t>::max();
        r *= base;
    }
    return r;
}

TupleAt exhaustive_tuples(const Carrier& c, std::size_t arity) {
    const auto order = c.order();
    if (!order) throw PreconditionError("exhaustive enumeration needs a finite carrier");
    const std::size_t n = *order;
    return [&c, n, arity](std::size_t i) {
        Tuple t(arity);
        for (std::size_t k = arity; k-- > 0;) {
            t[k] = c.element_at(i % n);
            i /= n;
        }
        return t;
    };
}

std::vector<Tuple> sampled_tuples(const Carrier& c, std::size_t arity, std::size_t count,
                                  std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    Rng rng(seq);
    std::vector<Tuple> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Tuple t;
        t.reserve(arity);
        for (std::size_t k = 0; k < arity; ++k) t.push_back(c.sample(rng));
        out.push_back(std::move(t));
    }
    return out;
}

void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body) {
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto m = static_cast<std::int64_t>(n);
    std::exception_ptr first;
    std::int64_t first_index = m;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < m; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(gyro_for_each_index)
            if (i < first_index) {
                first_index = i;
                first = std::current_exception();
            }
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace gyro
