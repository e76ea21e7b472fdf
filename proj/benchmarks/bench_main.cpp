// Copyright 2026 qsd Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qsd/bounds.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/exact_eval.hpp"
#include "qsd/montecarlo.hpp"

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name.c_str(),
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    {
        const qsd::Ensemble e = qsd::make_ensemble(0.6, 0.35);
        constexpr int n = 22;
        qsd::EvalReport serial{}, parallel{};
        const double ts = time_ms([&] {
            serial = qsd::exact_error_serial(e, qsd::StrategyKind::AdaptiveBayes, n);
        });
        const double tp =
            time_ms([&] { parallel = qsd::exact_error(e, qsd::StrategyKind::AdaptiveBayes, n); });
        report("exact_error N=22 bayes", ts, tp,
               serial.error == parallel.error && serial.success == parallel.success);
    }

    {
        const qsd::Ensemble e = qsd::make_ensemble(0.6, 0.5);
        const qsd::SimConfig cfg{400000, 20260809, 8, qsd::StrategyKind::AdaptiveBayes};
        qsd::SimReport serial, parallel;
        const double ts = time_ms([&] { serial = qsd::simulate_serial(cfg, e); });
        const double tp = time_ms([&] { parallel = qsd::simulate(cfg, e); });
        report("simulate 4e5 trials N=8", ts, tp,
               serial.errors_observed == parallel.errors_observed);
    }

    {
        const qsd::Ensemble e = qsd::make_ensemble(0.7, 0.5);
        qsd::MeasuredChernoff serial{}, parallel{};
        const double ts = time_ms([&] { serial = qsd::best_measured_chernoff_serial(e, 2e-4); });
        const double tp = time_ms([&] { parallel = qsd::best_measured_chernoff(e, 2e-4); });
        report("chernoff scan step=2e-4", ts, tp,
               serial.angle.phi == parallel.angle.phi &&
                   serial.result.lambda_star == parallel.result.lambda_star);
    }

    return 0;
}
