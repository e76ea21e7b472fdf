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

#include "qsd/exact_eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qsd {

namespace {

// A node of the outcome tree, carried down the recursion. posterior0 is the
// chained Bayes posterior; only the AdaptiveBayes chooser reads it.
struct Node {
    int depth;
    int n_zeros;
    int last;
    double j0;
    double j1;
    double posterior0;
};

struct Accum {
    double success = 0.0;
    double error = 0.0;
};

// Angle policy evaluated per node. Matches next_angle() bit-for-bit: the
// Bayes branch applies the same helstrom_angle/posterior_or_limit sequence
// that next_angle replays from the history.
struct StrategyChooser {
    const Ensemble& e;
    StrategyKind kind;
    MeasurementAngle fixed;  // precomputed for the two fixed strategies

    static StrategyChooser make(const Ensemble& e, StrategyKind kind) {
        MeasurementAngle fixed{0.0};
        if (kind == StrategyKind::FixedMajority) fixed = helstrom_angle(e);
        if (kind == StrategyKind::Unanimity)
            fixed = MeasurementAngle{e.q0 >= e.q1 ? e.theta : -e.theta};
        return StrategyChooser{e, kind, fixed};
    }

    MeasurementAngle operator()(const Node& node) const {
        switch (kind) {
            case StrategyKind::FixedMajority:
            case StrategyKind::Unanimity:
                return fixed;
            case StrategyKind::AdaptiveClosedForm:
                return adaptive_angle_closed(e, node.depth, node.last);
            case StrategyKind::AdaptiveBayes:
                return helstrom_angle(with_prior(e, node.posterior0));
        }
        throw std::logic_error("unknown strategy kind");
    }

    bool optimal_chain() const { return kind == StrategyKind::AdaptiveBayes; }
};

// Angle policy from an explicit per-(round, last) table; used by the
// stationarity check.
struct TableChooser {
    const std::vector<std::array<double, 2>>& phi;
    MeasurementAngle operator()(const Node& node) const {
        return MeasurementAngle{phi[static_cast<std::size_t>(node.depth)]
                                   [static_cast<std::size_t>(node.last)]};
    }
    bool optimal_chain() const { return false; }
};

struct StrategyDecider {
    const Ensemble& e;
    StrategyKind kind;
    int n;
    int operator()(const Node& node) const {
        switch (kind) {
            case StrategyKind::FixedMajority: {
                const int n1 = n - node.n_zeros;
                if (node.n_zeros > n1) return 0;
                if (n1 > node.n_zeros) return 1;
                return e.q0 >= e.q1 ? 0 : 1;
            }
            case StrategyKind::Unanimity: {
                const int favored = e.q0 >= e.q1 ? 0 : 1;
                return n - node.n_zeros == 0 ? favored : 1 - favored;
            }
            case StrategyKind::AdaptiveClosedForm:
            case StrategyKind::AdaptiveBayes:
                return node.last;
        }
        throw std::logic_error("unknown strategy kind");
    }
};

struct LastBitDecider {
    int operator()(const Node& node) const { return node.last; }
};

// `optimal_chain`: under AdaptiveBayes the node's angle is the Helstrom angle
// of posterior0, so the posterior advances by the detailed-balance recursion;
// other policies update by the general Bayes quotient at their own angle.
Node child_of(const Ensemble& e, const Node& node, MeasurementAngle m, int a,
              bool optimal_chain) {
    const double post = optimal_chain ? detail::optimal_posterior_next(e, node.posterior0, a)
                                      : detail::posterior_or_limit(node.posterior0, e, m, a);
    return Node{node.depth + 1,
                node.n_zeros + (a == 0 ? 1 : 0),
                a,
                node.j0 * outcome_prob(e, m, a, 0),
                node.j1 * outcome_prob(e, m, a, 1),
                post};
}

// Depth-first evaluation. Sums combine pairwise at every node, so the value
// is a fixed expression tree: splitting the same recursion across threads
// and re-combining level by level reproduces it bit-for-bit.
template <class Chooser, class Decider>
Accum eval_subtree(const Ensemble& e, const Chooser& choose, const Decider& decide_leaf, int n,
                   const Node& node) {
    if (node.depth == n) {
        const int g = decide_leaf(node);
        return g == 0 ? Accum{node.j0, node.j1} : Accum{node.j1, node.j0};
    }
    const MeasurementAngle m = choose(node);
    Accum total;
    for (int a = 0; a < 2; ++a) {
        const Node child = child_of(e, node, m, a, choose.optimal_chain());
        if (child.j0 == 0.0 && child.j1 == 0.0) continue;
        const Accum sub = eval_subtree(e, choose, decide_leaf, n, child);
        total.success += sub.success;
        total.error += sub.error;
    }
    return total;
}

Node root_node(const Ensemble& e) { return Node{0, 0, 0, e.q0, e.q1, e.q0}; }

template <class Chooser, class Decider>
Accum eval_tree_serial(const Ensemble& e, const Chooser& choose, const Decider& decide_leaf,
                       int n) {
    return eval_subtree(e, choose, decide_leaf, n, root_node(e));
}

constexpr int kSplitDepth = 8;

template <class Chooser, class Decider>
Accum eval_tree_parallel(const Ensemble& e, const Chooser& choose, const Decider& decide_leaf,
                         int n) {
    const int d = std::min(n, kSplitDepth);
    if (d < kSplitDepth) return eval_tree_serial(e, choose, decide_leaf, n);

    const int n_prefixes = 1 << d;
    std::vector<Accum> partial(static_cast<std::size_t>(n_prefixes));
#pragma omp parallel for schedule(dynamic, 4)
    for (int prefix = 0; prefix < n_prefixes; ++prefix) {
        Node node = root_node(e);
        for (int s = 0; s < d; ++s) {
            if (node.j0 == 0.0 && node.j1 == 0.0) break;
            const MeasurementAngle m = choose(node);
            node = child_of(e, node, m, (prefix >> (d - 1 - s)) & 1, choose.optimal_chain());
        }
        if (node.j0 == 0.0 && node.j1 == 0.0) continue;
        partial[static_cast<std::size_t>(prefix)] = eval_subtree(e, choose, decide_leaf, n, node);
    }
    // Pairwise reduction mirroring the recursion's combine order.
    for (int width = n_prefixes; width > 1; width /= 2) {
        for (int i = 0; i < width / 2; ++i) {
            partial[i].success = partial[2 * i].success + partial[2 * i + 1].success;
            partial[i].error = partial[2 * i].error + partial[2 * i + 1].error;
        }
    }
    return partial[0];
}

void check_copy_count(int n, int cap) {
    if (n < 1 || n > cap) throw std::out_of_range("N out of range");
}

EvalReport make_report(const Ensemble& e, StrategyKind kind, int n, const Accum& acc) {
    return EvalReport{kind, n, acc.error, acc.success, e};
}

}  // namespace

EvalReport exact_error(const Ensemble& e, StrategyKind kind, int n) {
    check_copy_count(n, 24);
    const auto choose = StrategyChooser::make(e, kind);
    const StrategyDecider decider{e, kind, n};
    return make_report(e, kind, n, eval_tree_parallel(e, choose, decider, n));
}

EvalReport exact_error_serial(const Ensemble& e, StrategyKind kind, int n) {
    check_copy_count(n, 24);
    const auto choose = StrategyChooser::make(e, kind);
    const StrategyDecider decider{e, kind, n};
    return make_report(e, kind, n, eval_tree_serial(e, choose, decider, n));
}

void for_each_node(const Ensemble& e, StrategyKind kind, int n,
                   const std::function<void(const OutcomeHistory&, double, double, double)>& fn) {
    check_copy_count(n, 24);
    const auto choose = StrategyChooser::make(e, kind);
    OutcomeHistory h;
    auto walk = [&](auto&& self, const Node& node) -> void {
        fn(h, node.j0, node.j1, node.posterior0);
        if (node.depth == n) return;
        const MeasurementAngle m = choose(node);
        for (int a = 0; a < 2; ++a) {
            const Node child = child_of(e, node, m, a, choose.optimal_chain());
            if (child.j0 == 0.0 && child.j1 == 0.0) continue;
            h.push(a);
            self(self, child);
            h.pop();
        }
    };
    walk(walk, root_node(e));
}

void for_each_joint_leaf(const Ensemble& e, StrategyKind kind, int n,
                         const std::function<void(const JointLeaf&)>& fn) {
    for_each_node(e, kind, n, [&](const OutcomeHistory& h, double j0, double j1, double) {
        if (h.r() == n) fn(JointLeaf{h, j0, j1});
    });
}

std::vector<JointLeaf> collect_joint_leaves(const Ensemble& e, StrategyKind kind, int n) {
    check_copy_count(n, 20);
    std::vector<JointLeaf> leaves;
    leaves.reserve(static_cast<std::size_t>(1) << n);
    for_each_joint_leaf(e, kind, n, [&](const JointLeaf& leaf) { leaves.push_back(leaf); });
    return leaves;
}

double r_function(double p0, double p1, const Ensemble& e) {
    if (!(p0 >= 0.0) || !(p1 >= 0.0)) throw std::invalid_argument("joint probabilities must be >= 0");
    const double s = p0 + p1;
    return std::sqrt(std::max(s * s - 4.0 * p0 * p1 * e.c * e.c, 0.0));
}

ResidualReport verify_induction_invariant(const Ensemble& e, int n, double tol) {
    check_copy_count(n, 14);
    ResidualReport report;
    report.tol = tol;
    const double w = e.q0 * e.q1;
    for_each_node(e, StrategyKind::AdaptiveBayes, n,
                  [&](const OutcomeHistory& h, double j0, double j1, double) {
                      const double c2r = std::pow(e.c, 2.0 * h.r());
                      const double s = j0 + j1;
                      const double residual = std::fabs(w * c2r * s * s - j0 * j1);
                      report.max_residual = std::max(report.max_residual, residual);
                      ++report.checks;
                  });
    report.pass = report.max_residual < tol;
    return report;
}

ResidualReport verify_recursion(const Ensemble& e, int n, double tol) {
    check_copy_count(n, 14);
    ResidualReport report;
    report.tol = tol;
    const double one_minus_2c2 = 1.0 - 2.0 * e.c * e.c;
    for_each_node(
        e, StrategyKind::AdaptiveBayes, n,
        [&](const OutcomeHistory& h, double j0, double j1, double) {
            if (h.r() == n) return;
            const MeasurementAngle m = next_angle(StrategyKind::AdaptiveBayes, e, h, n);
            const double r = r_function(j0, j1, e);
            for (int a = 0; a < 2; ++a) {
                const std::array<double, 2> direct = {j0 * outcome_prob(e, m, a, 0),
                                                      j1 * outcome_prob(e, m, a, 1)};
                const std::array<double, 2> joints = {j0, j1};
                for (int b = 0; b < 2; ++b) {
                    const double swing = (joints[b] + one_minus_2c2 * joints[1 - b]) / r;
                    const double predicted =
                        joints[b] / 2.0 * (1.0 + ((a + b) % 2 == 0 ? 1.0 : -1.0) * swing);
                    report.max_residual =
                        std::max(report.max_residual, std::fabs(predicted - direct[b]));
                    ++report.checks;
                }
            }
        });
    report.pass = report.max_residual < tol;
    return report;
}

StationarityReport stationarity_check(const Ensemble& e, int n, double epsilon) {
    check_copy_count(n, 8);
    if (!(epsilon >= 0.0 && epsilon <= 0.1))
        throw std::invalid_argument("epsilon must lie in [0, 0.1]");

    std::vector<std::array<double, 2>> phi(static_cast<std::size_t>(n));
    phi[0][0] = phi[0][1] = adaptive_angle_closed(e, 0, 0).phi;
    for (int r = 1; r < n; ++r)
        for (int last = 0; last < 2; ++last)
            phi[static_cast<std::size_t>(r)][static_cast<std::size_t>(last)] =
                adaptive_angle_closed(e, r, last).phi;

    const LastBitDecider decider;
    const auto success_of = [&](const std::vector<std::array<double, 2>>& table) {
        return eval_tree_serial(e, TableChooser{table}, decider, n).success;
    };

    StationarityReport report;
    report.base_success = success_of(phi);
    report.allowance = 2.0 * epsilon * epsilon;
    report.max_improvement = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < n; ++r) {
        for (int last = 0; last < (r == 0 ? 1 : 2); ++last) {
            for (const double eps : {epsilon, -epsilon}) {
                auto perturbed = phi;
                const auto ri = static_cast<std::size_t>(r);
                const auto li = static_cast<std::size_t>(last);
                perturbed[ri][li] += eps;
                if (r == 0) perturbed[0][1] = perturbed[0][0];
                const double delta = success_of(perturbed) - report.base_success;
                report.deltas.push_back(PerturbationDelta{r, last, eps, delta});
                report.max_improvement = std::max(report.max_improvement, delta);
            }
        }
    }
    report.pass = report.max_improvement <= report.allowance;
    return report;
}

}  // namespace qsd
