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

#include "qsd/strategies.hpp"

#include <cmath>
#include <stdexcept>

namespace qsd {

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::FixedMajority: return "majority";
        case StrategyKind::Unanimity: return "unanimity";
        case StrategyKind::AdaptiveClosedForm: return "adaptive-closed";
        case StrategyKind::AdaptiveBayes: return "adaptive-bayes";
    }
    throw std::logic_error("unknown strategy kind");
}

OutcomeHistory OutcomeHistory::from_string(std::string_view bits) {
    OutcomeHistory h;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("history bits must be 0 or 1");
        h.push(ch - '0');
    }
    return h;
}

void OutcomeHistory::push(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("outcome bit must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(bit));
    n0_ += bit == 0 ? 1 : 0;
}

void OutcomeHistory::pop() {
    if (bits_.empty()) throw std::out_of_range("empty history");
    n0_ -= bits_.back() == 0 ? 1 : 0;
    bits_.pop_back();
}

int OutcomeHistory::last() const {
    if (bits_.empty()) throw std::out_of_range("empty history");
    return bits_.back();
}

double BayesState::radius(const Ensemble& e) const {
    return std::sqrt(1.0 - 4.0 * p_favored * (1.0 - p_favored) * e.c * e.c);
}

BayesState initial_bayes_state(const Ensemble& e) {
    return BayesState{0, e.q0 >= e.q1 ? 0 : 1, e.q0 >= e.q1 ? e.q0 : e.q1};
}

MeasurementAngle adaptive_angle_closed(const Ensemble& e, int r, int last_outcome) {
    if (r < 0) throw std::out_of_range("round must be >= 0");
    double sign;
    if (r == 0) {
        sign = e.q0 >= e.q1 ? 1.0 : -1.0;
    } else {
        if (last_outcome != 0 && last_outcome != 1)
            throw std::invalid_argument("outcome bit must be 0 or 1");
        sign = last_outcome == 0 ? 1.0 : -1.0;
    }
    const double w = 4.0 * e.q0 * e.q1;
    const double c2r = std::pow(e.c, 2.0 * r);
    const double den = 1.0 - w * c2r * e.c * e.c;
    const double cos2 = sign * e.c * std::sqrt((1.0 - w * c2r) / den);
    const double sin2 = std::sin(2.0 * e.theta) / std::sqrt(den);
    return MeasurementAngle{0.5 * std::atan2(sin2, cos2)};
}

BayesState bayes_step(const BayesState& state, const Ensemble& e, int outcome) {
    const double prior0 = state.favored == 0 ? state.p_favored : 1.0 - state.p_favored;
    const MeasurementAngle m = helstrom_angle(with_prior(e, prior0));
    posterior_update(prior0, e, m, outcome);  // gate: throws on impossible outcomes
    // The outcome hypothesis ends up favored with P_{r+1} = (1 + R_r)/2.
    return BayesState{state.r + 1, outcome, (1.0 + state.radius(e)) / 2.0};
}

MeasurementAngle next_angle(StrategyKind kind, const Ensemble& e, const OutcomeHistory& h,
                            int n_total) {
    if (h.r() >= n_total) throw std::out_of_range("history exhausted");
    switch (kind) {
        case StrategyKind::FixedMajority:
            return helstrom_angle(e);
        case StrategyKind::Unanimity:
            return MeasurementAngle{e.q0 >= e.q1 ? e.theta : -e.theta};
        case StrategyKind::AdaptiveClosedForm:
            return adaptive_angle_closed(e, h.r(), h.empty() ? 0 : h.last());
        case StrategyKind::AdaptiveBayes: {
            double post0 = e.q0;
            for (int s = 0; s < h.r(); ++s) post0 = detail::optimal_posterior_next(e, post0, h.bit(s));
            return helstrom_angle(with_prior(e, post0));
        }
    }
    throw std::logic_error("unknown strategy kind");
}

namespace detail {

double optimal_posterior_next(const Ensemble& e, double prior0, int outcome) {
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome bit must be 0 or 1");
    const double radius = std::sqrt(1.0 - 4.0 * prior0 * (1.0 - prior0) * e.c * e.c);
    return outcome == 0 ? (1.0 + radius) / 2.0 : (1.0 - radius) / 2.0;
}

}  // namespace detail

int decide(StrategyKind kind, const Ensemble& e, const OutcomeHistory& h, int n_total) {
    if (h.r() != n_total) throw std::out_of_range("incomplete history");
    switch (kind) {
        case StrategyKind::FixedMajority: {
            if (h.n0() > h.n1()) return 0;
            if (h.n1() > h.n0()) return 1;
            return e.q0 >= e.q1 ? 0 : 1;
        }
        case StrategyKind::Unanimity: {
            // Projector 0 points at the likelier state (phi = +-theta), so
            // outcome 0 is the aligned outcome under either prior ordering.
            const int favored = e.q0 >= e.q1 ? 0 : 1;
            return h.n1() == 0 ? favored : 1 - favored;
        }
        case StrategyKind::AdaptiveClosedForm:
        case StrategyKind::AdaptiveBayes:
            return h.last();
    }
    throw std::logic_error("unknown strategy kind");
}

}  // namespace qsd
