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

// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qsd/bounds.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/exact_eval.hpp"
#include "qsd/montecarlo.hpp"
#include "qsd/strategies.hpp"

namespace {

using qsd::Ensemble;
using qsd::StrategyKind;

const std::vector<double> kGridC = {0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kGridQ0 = {0.1, 0.25, 0.5, 0.75, 0.9};

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool report_max(std::string& detail, double worst, double tol, const char* label) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.3g (tol %.3g)", label, worst, tol);
    detail = buf;
    return worst < tol;
}

// 1. The adaptive strategy reproduces the collective bound exactly.
bool adaptive_equals_collective(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            for (int n = 1; n <= 16; ++n) {
                const double diff =
                    std::fabs(qsd::exact_error(e, StrategyKind::AdaptiveBayes, n).error -
                              qsd::collective_error(e, n));
                worst = std::max(worst, diff);
            }
        }
    }
    return report_max(detail, worst, 1e-10, "max|P_adaptive-P_collective|");
}

// 2. Bayesian updating picks the closed-form angles on every history.
bool closed_form_equals_bayes(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            qsd::for_each_node(
                e, StrategyKind::AdaptiveBayes, 12,
                [&](const qsd::OutcomeHistory& h, double, double, double posterior0) {
                    const double bayes = qsd::helstrom_angle(qsd::with_prior(e, posterior0)).phi;
                    const double closed =
                        qsd::adaptive_angle_closed(e, h.r(), h.empty() ? 0 : h.last()).phi;
                    worst = std::max(worst, std::fabs(bayes - closed));
                });
        }
    }
    return report_max(detail, worst, 1e-10, "max|phi_bayes-phi_closed|");
}

// 3. Enumerated unanimity error equals min(q0,q1) c^(2N).
bool unanimity_exactness(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            for (int n = 1; n <= 16; ++n) {
                const double closed = std::min(q0, 1.0 - q0) * std::pow(c, 2.0 * n);
                const double diff =
                    std::fabs(qsd::exact_error(e, StrategyKind::Unanimity, n).error - closed);
                worst = std::max(worst, diff);
            }
        }
    }
    return report_max(detail, worst, 1e-13, "max|P_unanimity-closed|");
}

// 4. Induction invariant over all strings up to N = 12.
bool induction_invariant(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC)
        for (const double q0 : kGridQ0)
            worst = std::max(worst, qsd::verify_induction_invariant(
                                        qsd::make_ensemble(c, q0), 12, 1e-12)
                                        .max_residual);
    return report_max(detail, worst, 1e-12, "max_residual");
}

// 5. One-step recursion formula against direct product joints.
bool one_step_recursion(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC)
        for (const double q0 : kGridQ0)
            worst = std::max(
                worst,
                qsd::verify_recursion(qsd::make_ensemble(c, q0), 12, 1e-12).max_residual);
    return report_max(detail, worst, 1e-12, "max_residual");
}

// 6. Detailed balance p(0|outcome 0) = p(1|outcome 1) at the Helstrom angle.
bool detailed_balance(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            const qsd::MeasurementAngle m = qsd::helstrom_angle(e);
            const double p00 = qsd::posterior_update(e.q0, e, m, 0);
            const double p11 = 1.0 - qsd::posterior_update(e.q0, e, m, 1);
            worst = std::max(worst, std::fabs(p00 - p11));
        }
    }
    return report_max(detail, worst, 1e-12, "max|p(0|0)-p(1|1)|");
}

// 7. The best measured Chernoff exponent is c^2, at the aligned angles.
bool chernoff_exponent(std::string& detail) {
    double worst_lambda = 0.0;
    double worst_angle = 0.0;
    constexpr double kStep = 1e-3;
    for (const double c : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const Ensemble e = qsd::make_ensemble(c, 0.5);
        const qsd::MeasuredChernoff best = qsd::best_measured_chernoff(e, kStep);
        worst_lambda = std::max(worst_lambda, std::fabs(best.result.lambda_star - c * c));
        worst_angle = std::max(worst_angle, std::fabs(std::fabs(best.angle.phi) - e.theta));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max|lambda-c^2|=%.3g (tol 1e-4), max|phi-theta|=%.3g (tol %g)", worst_lambda,
                  worst_angle, kStep);
    detail = buf;
    return worst_lambda < 1e-4 && worst_angle <= kStep;
}

// 8. R_r follows the closed form along every outcome path (path independence).
bool closed_form_radius(std::string& detail) {
    double worst = 0.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            qsd::for_each_node(
                e, StrategyKind::AdaptiveBayes, 12,
                [&](const qsd::OutcomeHistory& h, double, double, double posterior0) {
                    const double radius =
                        std::sqrt(1.0 - 4.0 * posterior0 * (1.0 - posterior0) * e.c * e.c);
                    const double closed =
                        std::sqrt(1.0 - 4.0 * e.q0 * e.q1 * std::pow(e.c, 2.0 * h.r() + 2.0));
                    worst = std::max(worst, std::fabs(radius - closed));
                });
        }
    }
    return report_max(detail, worst, 1e-12, "max|R_r-closed|");
}

// 9. Majority vote stays under the statistical-overlap bound c^N.
bool majority_bound(std::string& detail) {
    double worst_excess = -1.0;
    for (const double c : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const Ensemble e = qsd::make_ensemble(c, 0.5);
        for (int n = 1; n <= 15; n += 2) {
            const double err = qsd::exact_error(e, StrategyKind::FixedMajority, n).error;
            worst_excess = std::max(worst_excess, err - std::pow(c, n));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max(P_majority-c^N)=%.3g (must be <= 0)", worst_excess);
    detail = buf;
    return worst_excess <= 0.0;
}

// 10. Monte Carlo estimates agree with enumeration and are reproducible.
bool monte_carlo_consistency(std::string& detail) {
    double worst_sigmas = 0.0;
    bool reproducible = true;
    for (const double c : {0.5, 0.8}) {
        for (const double q0 : {0.5, 0.6}) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            for (const StrategyKind kind : {StrategyKind::Unanimity, StrategyKind::AdaptiveBayes}) {
                const qsd::SimConfig cfg{100000, 42, 3, kind};
                const qsd::SimReport report = qsd::simulate(cfg, e);
                const qsd::SimReport rerun = qsd::simulate(cfg, e);
                const qsd::SimReport serial = qsd::simulate_serial(cfg, e);
                reproducible = reproducible &&
                               report.errors_observed == rerun.errors_observed &&
                               report.errors_observed == serial.errors_observed &&
                               report.error_estimate == rerun.error_estimate;
                const double exact = qsd::exact_error(e, kind, 3).error;
                if (report.std_error > 0.0)
                    worst_sigmas = std::max(
                        worst_sigmas, std::fabs(report.error_estimate - exact) / report.std_error);
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max|estimate-exact|=%.2f sigma (tol 4), reruns %s",
                  worst_sigmas, reproducible ? "identical" : "DIFFER");
    detail = buf;
    return worst_sigmas <= 4.0 && reproducible;
}

// 11. Collective error approaches q0 q1 c^(2N) from above, within 1%.
bool asymptote_check(std::string& detail) {
    double worst_hi = 1.0;
    double worst_lo = 1.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            if (e.c == 0.0 || e.q0 == 0.0 || e.q1 == 0.0) continue;
            for (int n = 1; n <= 200; ++n) {
                if (4.0 * e.q0 * e.q1 * std::pow(e.c, 2.0 * n) >= 1e-2) continue;
                const double asym = qsd::collective_error_asymptote(e, n);
                if (asym == 0.0) break;
                const double ratio = qsd::collective_error(e, n) / asym;
                worst_hi = std::max(worst_hi, ratio);
                worst_lo = std::min(worst_lo, ratio);
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "ratio in [%.12f, %.12f] (required [1, 1.01])", worst_lo,
                  worst_hi);
    detail = buf;
    return worst_lo >= 1.0 && worst_hi <= 1.01;
}

// 12. No single-angle perturbation improves the adaptive success.
bool stationarity(std::string& detail) {
    double worst = -1.0;
    for (const double c : kGridC) {
        for (const double q0 : kGridQ0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            for (int n = 1; n <= 8; ++n)
                worst = std::max(worst,
                                 qsd::stationarity_check(e, n, 1e-3).max_improvement);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max_improvement=%.3g (allowance 2e-6)", worst);
    detail = buf;
    return worst <= 2e-6;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"adaptive-equals-collective", adaptive_equals_collective},
        {"closed-form-equals-bayes", closed_form_equals_bayes},
        {"unanimity-exactness", unanimity_exactness},
        {"induction-invariant", induction_invariant},
        {"one-step-recursion", one_step_recursion},
        {"detailed-balance", detailed_balance},
        {"chernoff-exponent", chernoff_exponent},
        {"closed-form-radius", closed_form_radius},
        {"majority-bound", majority_bound},
        {"monte-carlo-consistency", monte_carlo_consistency},
        {"asymptote-check", asymptote_check},
        {"stationarity", stationarity},
    };

    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        const bool pass = criteria[i].run(detail);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%2zu/12] %s %-28s %s [%.0f ms]\n", i + 1, pass ? "PASS" : "FAIL",
                    criteria[i].name.c_str(), detail.c_str(), ms);
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
