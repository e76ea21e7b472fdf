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

#ifndef QSD_ENSEMBLE_HPP
#define QSD_ENSEMBLE_HPP

namespace qsd {

/// A two-state discrimination instance: two pure states with overlap
/// c = cos(2*theta) transmitted with prior probabilities q0 and q1 = 1 - q0.
///
/// Invariants: 0 <= c < 1 (parallel states rejected), theta = arccos(c)/2,
/// q0 + q1 == 1 exactly as stored.
struct Ensemble {
    double c;
    double theta;
    double q0;
    double q1;
};

/// A rank-1 projective measurement in the plane spanned by the two states.
/// Projector 0 points along `phi`, projector 1 along `phi - pi/2`.
struct MeasurementAngle {
    double phi;
};

/// Builds a validated Ensemble from the overlap and the prior of hypothesis 0.
/// Throws std::invalid_argument on c outside [0, 1) or q0 outside [0, 1].
/// c = 0 and q0 in {0, 1} are accepted as degenerate but valid inputs.
Ensemble make_ensemble(double c, double q0);

/// Same state pair, new priors. Used when posteriors replace priors.
Ensemble with_prior(const Ensemble& e, double q0);

/// Born-rule outcome probability p(a|b) = cos^2(phi - a*pi/2 - (-1)^b theta)
/// of obtaining outcome `a` when the transmitted state is hypothesis `b`.
double outcome_prob(const Ensemble& e, MeasurementAngle m, int a, int b);

/// The minimum-error single-copy measurement angle phi0, fixed by
///   cos 2phi0 = (q0 - q1) c / R0,   sin 2phi0 = (q0 + q1) sin 2theta / R0,
/// with R0 = sqrt(1 - 4 q0 q1 c^2). The branch with sin 2phi0 >= 0 is
/// returned, so 2phi0 lies in [0, pi].
MeasurementAngle helstrom_angle(const Ensemble& e);

/// Minimum achievable single-copy error probability (1 - R0) / 2.
double helstrom_error(const Ensemble& e);

/// Error probability of the optimal joint measurement on n copies,
/// (1 - sqrt(1 - 4 q0 q1 c^(2n))) / 2. Non-increasing in n.
double collective_error(const Ensemble& e, int n);

/// Large-n approximation q0 q1 c^(2n) of collective_error.
double collective_error_asymptote(const Ensemble& e, int n);

/// Bayes posterior of hypothesis 0 given outcome `a` of measurement `m`,
/// starting from prior `prior0`. Throws std::domain_error("impossible
/// outcome") when the outcome has zero total probability.
double posterior_update(double prior0, const Ensemble& e, MeasurementAngle m, int a);

namespace detail {

/// posterior_update extended to zero-probability outcomes by its limit:
/// certainty in whichever hypothesis can still produce the outcome. Needed
/// when chained posteriors round to exactly 0 or 1 and the walk continues
/// down a branch the saturated belief assigns probability zero.
double posterior_or_limit(double prior0, const Ensemble& e, MeasurementAngle m, int a);

}  // namespace detail

}  // namespace qsd

#endif
