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

#ifndef QSD_MONTECARLO_HPP
#define QSD_MONTECARLO_HPP

#include <cstdint>
#include <optional>

#include "qsd/ensemble.hpp"
#include "qsd/strategies.hpp"

namespace qsd {

/// SplitMix64: state advances by the odd constant 0x9E3779B97F4A7C15 and is
/// finalized with the xor-shift/multiply constants 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB (shifts 30, 27, 31). Any port reproducing these
/// constants reproduces every trial bit-for-bit.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// The per-trial stream: SplitMix64 seeded with the finalizer applied to
/// seed XOR (trial_index + 1) * 0xD1B54A32D192ED03. Trials depend only on
/// (seed, trial_index), never on execution order or thread count.
SplitMix64 trial_stream(std::uint64_t seed, long trial_index);

struct SimConfig {
    long trials;
    std::uint64_t seed;
    int n;
    StrategyKind kind;
};

struct WilsonInterval {
    double lo;
    double hi;
};

struct SimReport {
    long errors_observed = 0;
    long trials = 0;
    double error_estimate = 0.0;
    double std_error = 0.0;       // sqrt(p(1-p)/trials) at the estimate
    WilsonInterval ci95{0.0, 0.0};
    std::optional<double> exact_reference;  // filled when n <= 20
};

struct TrialOutcome {
    int truth;
    int guess;
    OutcomeHistory history;
};

/// Wilson 95% score interval for `errors` successes in `trials` draws.
WilsonInterval wilson95(long errors, long trials);

/// One simulated experiment: draws the true state from the priors, samples
/// each outcome with the strategy's next_angle, and applies its decision
/// rule. Consumes 1 + n uniform draws from `stream`.
TrialOutcome sample_trial(const Ensemble& e, StrategyKind kind, int n, SplitMix64& stream);

/// Runs cfg.trials independent trials on per-trial streams and aggregates.
/// Error counts are integers, so the report is identical for any thread
/// count; the serial variant is the reference the parallel one must match.
SimReport simulate(const SimConfig& cfg, const Ensemble& e);
SimReport simulate_serial(const SimConfig& cfg, const Ensemble& e);

}  // namespace qsd

#endif
