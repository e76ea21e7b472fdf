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

// Command-line front end: bounds/enumeration/simulation tables over
// parameter grids plus the numerical verification suite. CSV and JSON output
// are deterministic byte-for-byte for fixed inputs and seed.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsd/bounds.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/exact_eval.hpp"
#include "qsd/montecarlo.hpp"
#include "qsd/strategies.hpp"

namespace {

using qsd::Ensemble;
using qsd::StrategyKind;

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell_to_csv(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return "";
    if (const auto* d = std::get_if<double>(&cell)) return fmt_double(*d);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
}

nlohmann::json cell_to_json(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return nullptr;
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* i = std::get_if<long long>(&cell)) return *i;
    return std::get<std::string>(cell);
}

void write_csv(const Table& table, std::ostream& os) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_to_csv(row[i]);
        os << "\n";
    }
}

void write_json(const Table& table, const nlohmann::json& spec, std::ostream& os) {
    nlohmann::json doc;
    doc["spec"] = spec;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_to_json(row[i]);
        doc["rows"].push_back(obj);
    }
    os << doc.dump(2) << "\n";
}

struct Options {
    double c = 0.5;
    double q0 = 0.5;
    int n = 0;  // 0 = unset
    int n_min = 0;
    int n_max = 0;
    std::string strategy = "adaptive-bayes";
    long trials = 100000;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out;
    std::vector<double> grid_c;
    std::vector<double> grid_q0;
    int enum_cap = 20;
};

StrategyKind parse_strategy(const std::string& name) {
    if (name == "majority") return StrategyKind::FixedMajority;
    if (name == "unanimity") return StrategyKind::Unanimity;
    if (name == "adaptive-bayes") return StrategyKind::AdaptiveBayes;
    if (name == "adaptive-closed") return StrategyKind::AdaptiveClosedForm;
    throw std::invalid_argument("unknown strategy: " + name);
}

std::pair<int, int> resolve_range(const Options& opts, int def_lo, int def_hi) {
    if (opts.n > 0) return {opts.n, opts.n};
    const int lo = opts.n_min > 0 ? opts.n_min : def_lo;
    const int hi = opts.n_max > 0 ? opts.n_max : def_hi;
    if (lo > hi) throw std::invalid_argument("empty copy-count range");
    return {lo, hi};
}

int emit(const Table& table, const nlohmann::json& spec, const Options& opts) {
    std::ofstream file;
    if (!opts.out.empty()) {
        file.open(opts.out);
        if (!file) throw std::invalid_argument("cannot open output path: " + opts.out);
    }
    std::ostream& os = opts.out.empty() ? std::cout : file;
    if (opts.format == "json")
        write_json(table, spec, os);
    else
        write_csv(table, os);
    return 0;
}

nlohmann::json spec_common(const std::string& command, const Options& opts, int n_lo, int n_hi) {
    nlohmann::json spec;
    spec["command"] = command;
    spec["c"] = opts.c;
    spec["q0"] = opts.q0;
    spec["n_min"] = n_lo;
    spec["n_max"] = n_hi;
    spec["enum_cap"] = opts.enum_cap;
    return spec;
}

// ---------------------------------------------------------------------------
// bounds / sweep rows

void append_bound_row(Table& table, const Ensemble& e, int n, int enum_cap,
                      const qsd::MeasuredChernoff& chernoff, double overlap,
                      std::optional<StrategyKind> adaptive_column) {
    std::vector<Cell> row;
    row.emplace_back(static_cast<long long>(n));
    row.emplace_back(e.c);
    row.emplace_back(e.q0);
    row.emplace_back(qsd::collective_error(e, n));
    row.emplace_back(std::min(e.q0, e.q1) * std::pow(e.c, 2.0 * n));
    if (n <= enum_cap)
        row.emplace_back(qsd::exact_error(e, StrategyKind::FixedMajority, n).error);
    else
        row.emplace_back(std::monostate{});
    row.emplace_back(chernoff.result.lambda_star);
    row.emplace_back(overlap);
    if (adaptive_column) {
        if (n <= enum_cap)
            row.emplace_back(qsd::exact_error(e, *adaptive_column, n).error);
        else
            row.emplace_back(std::monostate{});
    }
    table.rows.push_back(std::move(row));
}

const std::vector<std::string> kBoundColumns = {
    "n", "c", "q0", "pbar_collective", "pbar_unanimity", "pbar_majority",
    "chernoff_lambda", "statistical_overlap"};

int cmd_bounds(const Options& opts) {
    const auto [lo, hi] = resolve_range(opts, 1, 10);
    const Ensemble e = qsd::make_ensemble(opts.c, opts.q0);
    const int cap = std::min(opts.enum_cap, 24);
    const auto chernoff = qsd::best_measured_chernoff(e, 1e-3);
    const double overlap = qsd::statistical_overlap(qsd::induced_channel(e, chernoff.angle));
    Table table{kBoundColumns, {}};
    for (int n = lo; n <= hi; ++n)
        append_bound_row(table, e, n, cap, chernoff, overlap, std::nullopt);
    return emit(table, spec_common("bounds", opts, lo, hi), opts);
}

int cmd_sweep(const Options& opts) {
    if (opts.grid_c.empty() || opts.grid_q0.empty())
        throw std::invalid_argument("sweep requires non-empty --grid-c and --grid-q0");
    const auto [lo, hi] = resolve_range(opts, 1, 10);
    const int cap = std::min(opts.enum_cap, 24);
    Table table{kBoundColumns, {}};
    table.columns.push_back("pbar_adaptive_exact");
    for (const double c : opts.grid_c) {
        for (const double q0 : opts.grid_q0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            const auto chernoff = qsd::best_measured_chernoff(e, 1e-3);
            const double overlap =
                qsd::statistical_overlap(qsd::induced_channel(e, chernoff.angle));
            for (int n = lo; n <= hi; ++n)
                append_bound_row(table, e, n, cap, chernoff, overlap,
                                 StrategyKind::AdaptiveBayes);
        }
    }
    nlohmann::json spec = spec_common("sweep", opts, lo, hi);
    spec["grid_c"] = opts.grid_c;
    spec["grid_q0"] = opts.grid_q0;
    return emit(table, spec, opts);
}

int cmd_adaptive(const Options& opts) {
    const auto [lo, hi] = resolve_range(opts, 8, 8);
    if (lo != hi) throw std::invalid_argument("adaptive requires a single --n");
    const int n = lo;
    const Ensemble e = qsd::make_ensemble(opts.c, opts.q0);
    Table table{{"r", "phi_given_last0", "phi_given_last1", "p_r", "r_r", "pbar_after_r"}, {}};
    double p = std::max(e.q0, e.q1);
    for (int r = 0; r < n; ++r) {
        const double phi0 = qsd::adaptive_angle_closed(e, r, 0).phi;
        const double phi1 = r == 0 ? phi0 : qsd::adaptive_angle_closed(e, r, 1).phi;
        const double radius = std::sqrt(1.0 - 4.0 * p * (1.0 - p) * e.c * e.c);
        table.rows.push_back({Cell{static_cast<long long>(r)}, Cell{phi0}, Cell{phi1}, Cell{p},
                              Cell{radius}, Cell{(1.0 - radius) / 2.0}});
        p = (1.0 + radius) / 2.0;
    }
    return emit(table, spec_common("adaptive", opts, n, n), opts);
}

int cmd_enumerate(const Options& opts) {
    const auto [lo, hi] = resolve_range(opts, 8, 8);
    const StrategyKind kind = parse_strategy(opts.strategy);
    const Ensemble e = qsd::make_ensemble(opts.c, opts.q0);
    Table table{{"n", "c", "q0", "strategy", "pbar_exact", "success", "pbar_collective"}, {}};
    for (int n = lo; n <= hi; ++n) {
        const qsd::EvalReport report = qsd::exact_error(e, kind, n);
        table.rows.push_back({Cell{static_cast<long long>(n)}, Cell{e.c}, Cell{e.q0},
                              Cell{opts.strategy}, Cell{report.error}, Cell{report.success},
                              Cell{qsd::collective_error(e, n)}});
    }
    nlohmann::json spec = spec_common("enumerate", opts, lo, hi);
    spec["strategy"] = opts.strategy;
    return emit(table, spec, opts);
}

int cmd_simulate(const Options& opts) {
    const auto [lo, hi] = resolve_range(opts, 3, 3);
    if (lo != hi) throw std::invalid_argument("simulate requires a single --n");
    const StrategyKind kind = parse_strategy(opts.strategy);
    const Ensemble e = qsd::make_ensemble(opts.c, opts.q0);
    const qsd::SimConfig cfg{opts.trials, opts.seed, lo, kind};
    const qsd::SimReport report = qsd::simulate(cfg, e);
    Table table{{"n", "c", "q0", "strategy", "trials", "seed", "errors_observed",
                 "error_estimate", "std_error", "ci95_lo", "ci95_hi", "exact_reference"},
                {}};
    std::vector<Cell> row{Cell{static_cast<long long>(lo)},
                          Cell{e.c},
                          Cell{e.q0},
                          Cell{opts.strategy},
                          Cell{static_cast<long long>(report.trials)},
                          Cell{static_cast<long long>(opts.seed)},
                          Cell{static_cast<long long>(report.errors_observed)},
                          Cell{report.error_estimate},
                          Cell{report.std_error},
                          Cell{report.ci95.lo},
                          Cell{report.ci95.hi}};
    if (report.exact_reference)
        row.emplace_back(*report.exact_reference);
    else
        row.emplace_back(std::monostate{});
    table.rows.push_back(std::move(row));
    nlohmann::json spec = spec_common("simulate", opts, lo, hi);
    spec["strategy"] = opts.strategy;
    spec["trials"] = opts.trials;
    spec["seed"] = opts.seed;
    return emit(table, spec, opts);
}

// ---------------------------------------------------------------------------
// verify

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify(const Options& opts) {
    std::vector<double> grid_c = opts.grid_c;
    std::vector<double> grid_q0 = opts.grid_q0;
    if (grid_c.empty()) grid_c = {0.1, 0.3, 0.5, 0.7, 0.9};
    if (grid_q0.empty()) grid_q0 = {0.1, 0.25, 0.5, 0.75, 0.9};
    const int n_equal = std::min(opts.n > 0 ? opts.n : 16, 24);
    const int n_tree = std::min(n_equal, 12);
    const int n_stat = std::min(n_equal, 8);

    constexpr double kTolEqual = 1e-10;
    constexpr double kTolTree = 1e-12;
    constexpr double kTolBalance = 1e-12;
    constexpr double kStatEps = 1e-3;

    double worst_equal = 0.0, worst_induction = 0.0, worst_recursion = 0.0;
    double worst_balance = 0.0, worst_stationarity = -1.0;
    for (const double c : grid_c) {
        for (const double q0 : grid_q0) {
            const Ensemble e = qsd::make_ensemble(c, q0);
            for (int n = 1; n <= n_equal; ++n) {
                const double diff = std::fabs(
                    qsd::exact_error(e, StrategyKind::AdaptiveBayes, n).error -
                    qsd::collective_error(e, n));
                worst_equal = std::max(worst_equal, diff);
            }
            worst_induction = std::max(
                worst_induction, qsd::verify_induction_invariant(e, n_tree, kTolTree).max_residual);
            worst_recursion =
                std::max(worst_recursion, qsd::verify_recursion(e, n_tree, kTolTree).max_residual);

            const qsd::MeasurementAngle m = qsd::helstrom_angle(e);
            const double p00 = qsd::posterior_update(e.q0, e, m, 0);
            const double p11 = 1.0 - qsd::posterior_update(e.q0, e, m, 1);
            worst_balance = std::max(worst_balance, std::fabs(p00 - p11));

            worst_stationarity =
                std::max(worst_stationarity,
                         qsd::stationarity_check(e, n_stat, kStatEps).max_improvement);
        }
    }

    const double stat_allowance = 2.0 * kStatEps * kStatEps;
    const std::vector<CheckLine> checks = {
        {"adaptive_equals_collective", worst_equal < kTolEqual,
         "n_max=" + std::to_string(n_equal) + " max_residual=" + fmt_double(worst_equal) +
             " tol=" + fmt_double(kTolEqual)},
        {"induction_invariant", worst_induction < kTolTree,
         "n=" + std::to_string(n_tree) + " max_residual=" + fmt_double(worst_induction) +
             " tol=" + fmt_double(kTolTree)},
        {"one_step_recursion", worst_recursion < kTolTree,
         "n=" + std::to_string(n_tree) + " max_residual=" + fmt_double(worst_recursion) +
             " tol=" + fmt_double(kTolTree)},
        {"detailed_balance", worst_balance < kTolBalance,
         "max_residual=" + fmt_double(worst_balance) + " tol=" + fmt_double(kTolBalance)},
        {"stationarity", worst_stationarity <= stat_allowance,
         "n=" + std::to_string(n_stat) + " eps=" + fmt_double(kStatEps) +
             " max_improvement=" + fmt_double(worst_stationarity) +
             " allowance=" + fmt_double(stat_allowance)},
    };

    bool all_pass = true;
    for (const auto& check : checks) {
        all_pass = all_pass && check.pass;
        std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << " " << check.detail
                  << "\n";
    }
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple-copy two-state discrimination toolkit"};
    app.require_subcommand(1);

    Options opts;
    const auto add_ensemble_flags = [&](CLI::App* sub) {
        sub->add_option("--c", opts.c, "overlap of the two states, in [0, 1)");
        sub->add_option("--q0", opts.q0, "prior probability of hypothesis 0");
    };
    const auto add_range_flags = [&](CLI::App* sub) {
        auto* n = sub->add_option("--n", opts.n, "number of copies")->check(CLI::PositiveNumber);
        auto* n_min =
            sub->add_option("--n-min", opts.n_min, "first copy count")->check(CLI::PositiveNumber);
        auto* n_max =
            sub->add_option("--n-max", opts.n_max, "last copy count")->check(CLI::PositiveNumber);
        n->excludes(n_min);
        n->excludes(n_max);
    };
    const auto add_output_flags = [&](CLI::App* sub) {
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", opts.out, "output path (default: stdout)");
    };
    const auto add_strategy_flag = [&](CLI::App* sub) {
        sub->add_option("--strategy", opts.strategy, "strategy to evaluate")
            ->check(CLI::IsMember({"majority", "unanimity", "adaptive-bayes", "adaptive-closed"}));
    };

    CLI::App* bounds = app.add_subcommand("bounds", "error bounds per copy count");
    add_ensemble_flags(bounds);
    add_range_flags(bounds);
    add_output_flags(bounds);
    bounds->add_option("--enum-cap", opts.enum_cap, "largest N enumerated exactly");

    CLI::App* adaptive = app.add_subcommand("adaptive", "per-round adaptive angles and errors");
    add_ensemble_flags(adaptive);
    add_range_flags(adaptive);
    add_output_flags(adaptive);

    CLI::App* enumerate = app.add_subcommand("enumerate", "exact strategy error by enumeration");
    add_ensemble_flags(enumerate);
    add_range_flags(enumerate);
    add_output_flags(enumerate);
    add_strategy_flag(enumerate);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo error estimate");
    add_ensemble_flags(simulate);
    add_range_flags(simulate);
    add_output_flags(simulate);
    add_strategy_flag(simulate);
    simulate->add_option("--trials", opts.trials, "number of trials")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", opts.seed, "RNG seed");

    CLI::App* sweep = app.add_subcommand("sweep", "bounds table over a parameter grid");
    add_range_flags(sweep);
    add_output_flags(sweep);
    sweep->add_option("--grid-c", opts.grid_c, "overlap grid")->delimiter(',');
    sweep->add_option("--grid-q0", opts.grid_q0, "prior grid")->delimiter(',');
    sweep->add_option("--enum-cap", opts.enum_cap, "largest N enumerated exactly");

    CLI::App* verify = app.add_subcommand("verify", "run the numerical verification suite");
    verify->add_option("--grid-c", opts.grid_c, "overlap grid")->delimiter(',');
    verify->add_option("--grid-q0", opts.grid_q0, "prior grid")->delimiter(',');
    verify->add_option("--n", opts.n, "max copies for the equality check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(opts);
        if (adaptive->parsed()) return cmd_adaptive(opts);
        if (enumerate->parsed()) return cmd_enumerate(opts);
        if (simulate->parsed()) return cmd_simulate(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (verify->parsed()) return cmd_verify(opts);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
