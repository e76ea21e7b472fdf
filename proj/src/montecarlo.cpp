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

#include "qsd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsd/exact_eval.hpp"

namespace qsd {

namespace {

constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SimReport build_report(const SimConfig& cfg, const Ensemble& e, long errors) {
    SimReport report;
    report.errors_observed = errors;
    report.trials = cfg.trials;
    report.error_estimate = static_cast<double>(errors) / static_cast<double>(cfg.trials);
    report.std_error = std::sqrt(report.error_estimate * (1.0 - report.error_estimate) /
                                 static_cast<double>(cfg.trials));
    report.ci95 = wilson95(errors, cfg.trials);
    if (cfg.n <= 20) report.exact_reference = exact_error(e, cfg.kind, cfg.n).error;
    return report;
}

void check_config(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.n < 1) throw std::invalid_argument("copy count must be >= 1");
}

}  // namespace

SplitMix64 trial_stream(std::uint64_t seed, long trial_index) {
    const auto i = static_cast<std::uint64_t>(trial_index);
    return SplitMix64(mix64(seed ^ ((i + 1) * kStreamSalt)));
}

WilsonInterval wilson95(long errors, long trials) {
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    // Rounding at the p = 0 and p = 1 edges must not break lo <= p <= hi.
    return WilsonInterval{std::clamp((center - half) / denom, 0.0, p),
                          std::clamp((center + half) / denom, p, 1.0)};
}

TrialOutcome sample_trial(const Ensemble& e, StrategyKind kind, int n, SplitMix64& stream) {
    const int truth = stream.next_unit() < e.q0 ? 0 : 1;
    OutcomeHistory h;
    for (int s = 0; s < n; ++s) {
        const MeasurementAngle m = next_angle(kind, e, h, n);
        const double p_zero = outcome_prob(e, m, 0, truth);
        h.push(stream.next_unit() < p_zero ? 0 : 1);
    }
    return TrialOutcome{truth, decide(kind, e, h, n), h};
}

SimReport simulate(const SimConfig& cfg, const Ensemble& e) {
    check_config(cfg);
    long errors = 0;
#pragma omp parallel for schedule(static) reduction(+ : errors)
    for (long i = 0; i < cfg.trials; ++i) {
        SplitMix64 stream = trial_stream(cfg.seed, i);
        const TrialOutcome t = sample_trial(e, cfg.kind, cfg.n, stream);
        if (t.guess != t.truth) ++errors;
    }
    return build_report(cfg, e, errors);
}

SimReport simulate_serial(const SimConfig& cfg, const Ensemble& e) {
    check_config(cfg);
    long errors = 0;
    for (long i = 0; i < cfg.trials; ++i) {
        SplitMix64 stream = trial_stream(cfg.seed, i);
        const TrialOutcome t = sample_trial(e, cfg.kind, cfg.n, stream);
        if (t.guess != t.truth) ++errors;
    }
    return build_report(cfg, e, errors);
}

}  // namespace qsd
