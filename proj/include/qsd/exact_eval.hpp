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

#ifndef QSD_EXACT_EVAL_HPP
#define QSD_EXACT_EVAL_HPP

#include <functional>
#include <vector>

#include "qsd/ensemble.hpp"
#include "qsd/strategies.hpp"

namespace qsd {

/// Exact error/success probabilities of a strategy, from a full walk of the
/// binary outcome tree. error + success = 1 up to accumulation rounding.
struct EvalReport {
    StrategyKind kind;
    int n;
    double error;
    double success;
    Ensemble ensemble;
};

/// One full-length outcome string with its joint probabilities
/// p(x, b) = q_b * prod_s p(x_s | b) under both hypotheses.
struct JointLeaf {
    OutcomeHistory history;
    double p_joint_0;
    double p_joint_1;
};

/// Residuals of a numerical identity checked over the whole outcome tree.
struct ResidualReport {
    double max_residual = 0.0;
    double tol = 0.0;
    long checks = 0;
    bool pass = false;
};

struct PerturbationDelta {
    int r;
    int last;
    double eps;     // signed perturbation applied to the angle
    double delta;   // change in exact success probability
};

struct StationarityReport {
    double base_success = 0.0;
    double max_improvement = 0.0;  // largest delta over all perturbations
    double allowance = 0.0;        // 2 * epsilon^2
    bool pass = false;
    std::vector<PerturbationDelta> deltas;
};

/// Exact error probability of `kind` on n copies, 1 <= n <= 24. Streaming
/// depth-first recursion; partial sums combine pairwise per tree node, so
/// the result is a fixed floating-point expression independent of execution
/// order. The parallel variant splits the tree at a fixed prefix depth and
/// is bit-identical to the serial reference for every thread count.
EvalReport exact_error(const Ensemble& e, StrategyKind kind, int n);
EvalReport exact_error_serial(const Ensemble& e, StrategyKind kind, int n);

/// Visits every node of the outcome tree (depths 0..n, root included) in
/// depth-first order, outcome 0 before 1. `j0`, `j1` are the running joint
/// probabilities p(x, b); `posterior0` is the chained Bayes posterior of
/// hypothesis 0 along the path (under AdaptiveBayes it follows the
/// detailed-balance recursion, matching next_angle bit-for-bit). Branches
/// with both joints exactly zero are skipped.
void for_each_node(const Ensemble& e, StrategyKind kind, int n,
                   const std::function<void(const OutcomeHistory& h, double j0, double j1,
                                            double posterior0)>& fn);

/// Streams all 2^n leaves in depth-first order. n <= 24.
void for_each_joint_leaf(const Ensemble& e, StrategyKind kind, int n,
                         const std::function<void(const JointLeaf&)>& fn);

/// Materialized leaf table; capped at n <= 20.
std::vector<JointLeaf> collect_joint_leaves(const Ensemble& e, StrategyKind kind, int n);

/// R(x) = sqrt((p0 + p1)^2 - 4 p0 p1 c^2) >= |p0 - p1| for joint
/// probabilities p0, p1 >= 0.
double r_function(double p0, double p1, const Ensemble& e);

/// Max residual of q0 q1 c^(2r) [p(x,0) + p(x,1)]^2 - p(x,0) p(x,1) over all
/// strings of every length r <= n under the Bayesian-updating strategy.
/// n <= 14.
ResidualReport verify_induction_invariant(const Ensemble& e, int n, double tol);

/// Max discrepancy between the one-step update
///   p(xa, b) = p(x,b)/2 * {1 + (-1)^(a+b) [p(x,b) + (1-2c^2) p(x,b^1)] / R(x)}
/// and the direct product-form joints, over all strings of length < n under
/// the Bayesian-updating strategy. n <= 14.
ResidualReport verify_recursion(const Ensemble& e, int n, double tol);

/// Perturbs each per-(round, last-outcome) adaptive angle by +-epsilon, one
/// at a time, and re-evaluates the exact success probability. Passes when no
/// perturbation improves success by more than 2 * epsilon^2. n <= 8,
/// 0 <= epsilon <= 0.1.
StationarityReport stationarity_check(const Ensemble& e, int n, double epsilon);

}  // namespace qsd

#endif
