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

#ifndef QSD_BOUNDS_HPP
#define QSD_BOUNDS_HPP

#include <array>

#include "qsd/ensemble.hpp"

namespace qsd {

/// Outcome distributions of a fixed single-copy measurement under the two
/// hypotheses: p0[a] = p(a|0), p1[a] = p(a|1). Each distribution is
/// non-negative and sums to 1 within 1e-15.
struct BinaryChannel {
    std::array<double, 2> p0;
    std::array<double, 2> p1;
};

BinaryChannel make_channel(std::array<double, 2> p0, std::array<double, 2> p1);

/// The channel a measurement angle induces via the Born rule.
BinaryChannel induced_channel(const Ensemble& e, MeasurementAngle m);

/// Result of minimizing lambda(alpha) = sum_b p(b|0)^alpha p(b|1)^(1-alpha)
/// over alpha. When the infimum is only approached as alpha -> 0+ (some
/// outcome has p(b|0) = 0 but p(b|1) > 0), `boundary_flag` is set,
/// `lambda_star` is the one-sided limit sum_{b: p(b|0)>0} p(b|1), and
/// `alpha_star` is the smallest alpha probed.
struct ChernoffResult {
    double lambda_star;
    double alpha_star;
    bool boundary_flag;
};

/// lambda(alpha) for alpha in (0, 1], with the conventions 0^alpha = 0 for
/// alpha > 0 and p^0 = 1 for p > 0. Throws std::invalid_argument outside
/// (0, 1].
double chernoff_value(const BinaryChannel& ch, double alpha);

/// Minimizes lambda over alpha in (0, 1]: 1e-3 grid seeding followed by
/// golden-section refinement to 1e-8, plus the boundary-limit detection
/// described on ChernoffResult. lambda is smooth and log-convex, so the
/// grid-seeded search is globally correct.
ChernoffResult chernoff_min(const BinaryChannel& ch);

/// The alpha = 1/2 specialization, sum_b sqrt(p(b|0) p(b|1)).
double statistical_overlap(const BinaryChannel& ch);

struct MeasuredChernoff {
    MeasurementAngle angle;
    ChernoffResult result;
};

/// Scans measurement angles over [-pi/2, pi/2] with the given step,
/// augmented with the exactly state-aligned angles +-theta, and returns the
/// angle whose induced channel minimizes the Chernoff quantity. The aligned
/// candidates matter: lambda's alpha -> 0 boundary value is reached only
/// where an outcome probability is exactly zero, and a uniform grid misses
/// it by a logarithmically wide margin. grid_step <= 1e-2.
MeasuredChernoff best_measured_chernoff(const Ensemble& e, double grid_step);
MeasuredChernoff best_measured_chernoff_serial(const Ensemble& e, double grid_step);

}  // namespace qsd

#endif
