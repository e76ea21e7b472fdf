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

#ifndef QSD_STRATEGIES_HPP
#define QSD_STRATEGIES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

/// The four measure-one-copy-at-a-time strategies. The collective bound is
/// not a strategy here; it has no measurement sequence and lives in
/// ensemble.hpp as a closed form.
enum class StrategyKind {
    FixedMajority,      // repeat the single-copy optimal measurement, majority vote
    Unanimity,          // align with the more probable state, require all outcomes to agree
    AdaptiveClosedForm, // per-round angles from the closed form, guess = last outcome
    AdaptiveBayes,      // re-optimize each round with posteriors as priors, guess = last outcome
};

std::string strategy_name(StrategyKind kind);

/// Outcome bits in chronological order: bit(0) is the first measurement,
/// last() the most recent. Count queries n0()/n1() are O(1).
class OutcomeHistory {
  public:
    OutcomeHistory() = default;
    static OutcomeHistory from_string(std::string_view bits);  // e.g. "0110"

    void push(int bit);
    void pop();

    int r() const { return static_cast<int>(bits_.size()); }
    bool empty() const { return bits_.empty(); }
    int n0() const { return n0_; }
    int n1() const { return r() - n0_; }
    int last() const;          // throws std::out_of_range on empty history
    int bit(int s) const { return bits_[static_cast<std::size_t>(s)]; }

  private:
    std::vector<std::uint8_t> bits_;
    int n0_ = 0;
};

/// Sufficient statistic of the Bayesian-updating strategy after r rounds:
/// which hypothesis is currently favored and with what posterior. The
/// posterior of the favored hypothesis never drops below 1/2.
struct BayesState {
    int r = 0;
    int favored = 0;
    double p_favored = 0.5;

    /// R_r = sqrt(1 - 4 P_r (1 - P_r) c^2). Along any outcome path this
    /// equals sqrt(1 - 4 q0 q1 c^(2r+2)).
    double radius(const Ensemble& e) const;
};

/// State before any measurement: favored hypothesis is the more probable
/// prior, p_favored = max(q0, q1).
BayesState initial_bayes_state(const Ensemble& e);

/// Closed form for the optimal adaptive angle before copy r+1 given the
/// last outcome i_r:
///   cos 2phi_r = (-1)^{i_r} c sqrt((1 - 4 q0 q1 c^(2r)) / (1 - 4 q0 q1 c^(2r+2)))
/// with sin 2phi_r >= 0. At r = 0 the sign is sign(q0 - q1), taken as +1
/// when q0 = q1, and `last_outcome` is ignored.
MeasurementAngle adaptive_angle_closed(const Ensemble& e, int r, int last_outcome);

/// One Bayesian-updating round: measure at the Helstrom angle of the current
/// posteriors, observe `outcome`, return the updated state. The new favored
/// hypothesis is the outcome just obtained and its posterior is
/// P_{r+1} = (1 + R_r) / 2. Propagates "impossible outcome" from
/// posterior_update.
BayesState bayes_step(const BayesState& state, const Ensemble& e, int outcome);

/// The angle a strategy uses for the next copy given the outcomes so far.
/// Throws std::out_of_range("history exhausted") if h.r() >= n_total.
MeasurementAngle next_angle(StrategyKind kind, const Ensemble& e, const OutcomeHistory& h,
                            int n_total);

/// The strategy's final guess after all n_total copies are measured.
/// Majority ties go to the larger prior, then to hypothesis 0.
/// Throws std::out_of_range("incomplete history") if h.r() != n_total.
int decide(StrategyKind kind, const Ensemble& e, const OutcomeHistory& h, int n_total);

namespace detail {

/// Posterior of hypothesis 0 after measuring at the Helstrom angle of prior
/// `prior0` and seeing `outcome`. By detailed balance this is (1 + R)/2 for
/// outcome 0 and (1 - R)/2 for outcome 1, R = sqrt(1 - 4 prior0 (1-prior0)
/// c^2). Equivalent to posterior_update at the optimal angle but exactly
/// path-independent, where the general Bayes quotient loses up to ~1e-10 of
/// the complement on near-impossible outcomes against a saturated belief.
double optimal_posterior_next(const Ensemble& e, double prior0, int outcome);

}  // namespace detail

}  // namespace qsd

#endif
