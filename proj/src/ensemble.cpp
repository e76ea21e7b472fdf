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

#include "qsd/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsd {

namespace {

void check_bit(int v, const char* what) {
    if (v != 0 && v != 1) throw std::invalid_argument(std::string(what) + " must be 0 or 1");
}

}  // namespace

Ensemble make_ensemble(double c, double q0) {
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("parallel or invalid overlap");
    if (!(q0 >= 0.0 && q0 <= 1.0)) throw std::invalid_argument("invalid prior");
    return Ensemble{c, std::acos(c) / 2.0, q0, 1.0 - q0};
}

Ensemble with_prior(const Ensemble& e, double q0) {
    if (!(q0 >= 0.0 && q0 <= 1.0)) throw std::invalid_argument("invalid prior");
    return Ensemble{e.c, e.theta, q0, 1.0 - q0};
}

double outcome_prob(const Ensemble& e, MeasurementAngle m, int a, int b) {
    check_bit(a, "outcome");
    check_bit(b, "hypothesis");
    // cos(x - pi/2) = sin(x); the sin form keeps aligned projectors exactly
    // zero, e.g. p(1|0) == 0 when phi == theta.
    const double delta = m.phi - (b == 0 ? e.theta : -e.theta);
    const double amp = a == 0 ? std::cos(delta) : std::sin(delta);
    return amp * amp;
}

MeasurementAngle helstrom_angle(const Ensemble& e) {
    // atan2 ignores the common factor 1/R0, and pins sin 2phi0 >= 0.
    const double y = (e.q0 + e.q1) * std::sin(2.0 * e.theta);
    const double x = (e.q0 - e.q1) * e.c;
    return MeasurementAngle{0.5 * std::atan2(y, x)};
}

double helstrom_error(const Ensemble& e) {
    return collective_error(e, 1);
}

double collective_error(const Ensemble& e, int n) {
    if (n < 1) throw std::invalid_argument("copy count must be >= 1");
    const double x = 4.0 * e.q0 * e.q1 * std::pow(e.c, 2.0 * n);
    // (1 - sqrt(1-x))/2 without the cancellation for small x.
    return x / (2.0 * (1.0 + std::sqrt(1.0 - x)));
}

double collective_error_asymptote(const Ensemble& e, int n) {
    if (n < 1) throw std::invalid_argument("copy count must be >= 1");
    return e.q0 * e.q1 * std::pow(e.c, 2.0 * n);
}

double posterior_update(double prior0, const Ensemble& e, MeasurementAngle m, int a) {
    if (!(prior0 >= 0.0 && prior0 <= 1.0)) throw std::invalid_argument("invalid prior");
    const double num = prior0 * outcome_prob(e, m, a, 0);
    const double den = num + (1.0 - prior0) * outcome_prob(e, m, a, 1);
    if (den == 0.0) throw std::domain_error("impossible outcome");
    return num / den;
}

namespace detail {

double posterior_or_limit(double prior0, const Ensemble& e, MeasurementAngle m, int a) {
    const double pa0 = outcome_prob(e, m, a, 0);
    const double pa1 = outcome_prob(e, m, a, 1);
    const double num = prior0 * pa0;
    const double den = num + (1.0 - prior0) * pa1;
    if (den == 0.0) {
        if (pa0 > 0.0) return 1.0;
        if (pa1 > 0.0) return 0.0;
        return prior0;
    }
    return num / den;
}

}  // namespace detail

}  // namespace qsd
