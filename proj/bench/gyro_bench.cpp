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

// Serial reference vs OpenMP kernels on the heavier workloads.
//
//   gyro_bench [repetitions]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "gyro/kernel.hpp"
#include "gyro/mobius.hpp"
#include "gyro/prenorm.hpp"
#include "gyro/search.hpp"
#include "gyro/verify.hpp"

using namespace gyro;

namespace {

double median_seconds(int reps, const std::function<void()>& body) {
    std::vector<double> t;
    for (int k = 0; k < reps; ++k) {
        const auto start = std::chrono::steady_clock::now();
        body();
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

struct Workload {
    std::string name;
    /// Runs once under `exec` and returns a fingerprint of the result.
    std::function<std::string(Execution)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    auto disk = mobius_make();
    const auto chain = geometric_ball_chain(disk);

    const std::vector<Workload> loads = {
        {"verify_axioms disk 1e5",
         [&](Execution e) {
             VerifyOptions o;
             o.budget = 100000;
             o.exec = e;
             return std::to_string(verify_axioms(*disk, o).budget_consumed());
         }},
        {"verify_axioms Z32 exhaustive",
         [&](Execution e) {
             VerifyOptions o;
             o.exec = e;
             return std::to_string(verify_axioms(*cyclic_group(32), o).budget_consumed());
         }},
        {"prenorm table + check disk depth 8",
         [&](Execution e) {
             PrenormOptions po;
             po.exec = e;
             PrenormCheckOptions pc;
             pc.exec = e;
             const auto tab = PrenormTable::build(DyadicFamily::build(chain, 8), po);
             return std::string(prenorm_check(tab, pc).passed() ? "pass" : "fail");
         }},
        {"search_small order 9",
         [&](Execution e) {
             SearchOptions so;
             so.exec = e;
             const auto r = search_small(9, so);
             return std::to_string(r.tables.size()) + "/" + std::to_string(r.nodes);
         }},
    };

    std::printf("threads: %d (OpenMP %s), repetitions: %d\n", max_threads(), openmp_enabled() ? "on" : "off", reps);
    std::printf("%-38s %12s %12s %9s  %s\n", "workload", "serial [s]", "parallel [s]", "speedup", "agree");
    for (const auto& w : loads) {
        std::string a, b;
        const double ts = median_seconds(reps, [&] { a = w.run(Execution::serial); });
        const double tp = median_seconds(reps, [&] { b = w.run(Execution::parallel); });
        std::printf("%-38s %12.4f %12.4f %8.2fx  %s\n", w.name.c_str(), ts, tp, ts / tp, a == b ? "yes" : "NO");
    }
    return 0;
}
