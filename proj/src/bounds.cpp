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

#include "qsd/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsd {

namespace {

constexpr double kAlphaGridStep = 1e-3;
constexpr int kAlphaGridPoints = 1000;  // alpha = k * step, k = 1..1000
constexpr double kAlphaRefineTol = 1e-8;

void check_distribution(const std::array<double, 2>& p) {
    if (!(p[0] >= 0.0) || !(p[1] >= 0.0))
        throw std::invalid_argument("outcome probabilities must be >= 0");
    if (std::fabs(p[0] + p[1] - 1.0) > 1e-15)
        throw std::invalid_argument("outcome probabilities must sum to 1");
}

template <class F>
std::pair<double, double> golden_section_min(const F& f, double lo, double hi, double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

MeasuredChernoff best_measured_impl(const Ensemble& e, double grid_step, bool parallel) {
    if (!(grid_step > 0.0 && grid_step <= 1e-2))
        throw std::invalid_argument("grid step must lie in (0, 1e-2]");

    const double half_pi = std::acos(-1.0) / 2.0;
    std::vector<double> candidates;
    const long n_steps = static_cast<long>(std::ceil(2.0 * half_pi / grid_step));
    for (long k = 0; k <= n_steps; ++k)
        candidates.push_back(std::min(-half_pi + static_cast<double>(k) * grid_step, half_pi));
    // The aligned angles are where an outcome probability is exactly zero and
    // the alpha -> 0 limit c^2 is actually reached.
    candidates.push_back(e.theta);
    candidates.push_back(-e.theta);

    const auto n_cand = static_cast<long>(candidates.size());
    std::vector<ChernoffResult> results(candidates.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n_cand; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        results[idx] = chernoff_min(induced_channel(e, MeasurementAngle{candidates[idx]}));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].lambda_star < results[best].lambda_star) best = i;
    return MeasuredChernoff{MeasurementAngle{candidates[best]}, results[best]};
}

}  // namespace

BinaryChannel make_channel(std::array<double, 2> p0, std::array<double, 2> p1) {
    check_distribution(p0);
    check_distribution(p1);
    return BinaryChannel{p0, p1};
}

BinaryChannel induced_channel(const Ensemble& e, MeasurementAngle m) {
    return make_channel({outcome_prob(e, m, 0, 0), outcome_prob(e, m, 1, 0)},
                        {outcome_prob(e, m, 0, 1), outcome_prob(e, m, 1, 1)});
}

double chernoff_value(const BinaryChannel& ch, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1]");
    double sum = 0.0;
    for (int b = 0; b < 2; ++b) {
        const double pb0 = ch.p0[static_cast<std::size_t>(b)];
        const double pb1 = ch.p1[static_cast<std::size_t>(b)];
        if (pb0 > 0.0 && pb1 > 0.0) sum += std::pow(pb0, alpha) * std::pow(pb1, 1.0 - alpha);
    }
    return sum;
}

double statistical_overlap(const BinaryChannel& ch) { return chernoff_value(ch, 0.5); }

ChernoffResult chernoff_min(const BinaryChannel& ch) {
    int best_k = 1;
    double best = chernoff_value(ch, kAlphaGridStep);
    for (int k = 2; k <= kAlphaGridPoints; ++k) {
        const double v = chernoff_value(ch, k * kAlphaGridStep);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }

    // lambda decreasing into the left edge with a support gap means the
    // infimum is the alpha -> 0+ limit, which no positive alpha attains.
    const bool support_gap = (ch.p0[0] == 0.0 && ch.p1[0] > 0.0) ||
                             (ch.p0[1] == 0.0 && ch.p1[1] > 0.0);
    if (best_k == 1 && support_gap) {
        const double limit = (ch.p0[0] > 0.0 ? ch.p1[0] : 0.0) +
                             (ch.p0[1] > 0.0 ? ch.p1[1] : 0.0);
        return ChernoffResult{limit, kAlphaGridStep, true};
    }

    const double lo = best_k == 1 ? kAlphaGridStep : (best_k - 1) * kAlphaGridStep;
    const double hi = best_k == kAlphaGridPoints ? 1.0 : (best_k + 1) * kAlphaGridStep;
    const auto [alpha, value] =
        golden_section_min([&](double a) { return chernoff_value(ch, a); }, lo, hi,
                           kAlphaRefineTol);
    if (value < best) return ChernoffResult{value, alpha, false};
    return ChernoffResult{best, best_k * kAlphaGridStep, false};
}

MeasuredChernoff best_measured_chernoff(const Ensemble& e, double grid_step) {
    return best_measured_impl(e, grid_step, true);
}

MeasuredChernoff best_measured_chernoff_serial(const Ensemble& e, double grid_step) {
    return best_measured_impl(e, grid_step, false);
}

}  // namespace qsd
