#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgp/bilevel.hpp"
#include "mgp/dgc_program.hpp"
#include "mgp/scenario.hpp"
#include "mgp/solver.hpp"

namespace mgp {

// Ratios reported alongside a solved plan. Percentages live in [0, 100]; an
// absent value means the denominator was zero, not that the ratio is zero.
struct MetricSet {
    std::optional<double> unmet_pct;          // unmet over total demand
    std::optional<double> wasted_excess_pct;  // unsold excess over PV potential
    std::optional<double> re_penetration_pct; // PV dispatch + feed-in over served
    double price = 0.0;
    std::optional<double> fit; // absent under the status quo
    double hes = 0.0;
    double npv = 0.0;
};

MetricSet metrics(const DgcPlan& plan, const ScenarioConfig& s, PolicyTuple policy);

// Status-quo reference point: the profit-maximizing plan with renewables
// locked out, an unconstrained budget, and the prevailing retail price.
struct Benchmark {
    double npv0 = 0.0;      // participation threshold for every later study
    double budget0 = 0.0;   // discounted capex of the optimal plan
    double unmet0_kwh = 0.0; // weighted unmet energy over the horizon
    DgcPlan plan;
    MetricSet metrics0;
    std::string error;

    bool ok() const { return error.empty(); }
};

Benchmark run_benchmark(const ScenarioConfig& s, const SolverConfig& solver);

// One full comparison: benchmark, policy grid, and the decoded argmax plan.
// When the scenario leaves the budget unconstrained the study runs at the
// benchmark's budget0 ("budget needed to support current operations").
struct CaseReport {
    Benchmark bench;
    double study_budget = kInf;
    double unmet_cap = kInf; // finite only for the capped variant
    PolicyStudy study;
    std::optional<DgcPlan> best_plan;
    std::optional<MetricSet> best_metrics;
    std::string error;

    bool ok() const { return error.empty(); }
};

CaseReport run_case(const ScenarioConfig& s, const GridSpec& grid,
                    const SolverConfig& solver);

// run_case with the unmet-energy ceiling applied to every tuple and to the
// argmax re-solve. An absent cap falls back to the benchmark's own unmet
// energy, i.e. "no worse than today".
CaseReport run_case_capped(const ScenarioConfig& s, std::optional<double> cap_kwh,
                           const GridSpec& grid, const SolverConfig& solver);

// Grid studies at increasing capacity budgets against one shared benchmark
// (solved once with the budget unconstrained, so npv0 is budget-independent).
struct BudgetPoint {
    double budget = kInf;
    PolicyStudy study;
    std::optional<MetricSet> best_metrics;
};

struct BudgetSweep {
    Benchmark bench;
    std::vector<BudgetPoint> points;
    std::string error;

    bool ok() const { return error.empty(); }
};

BudgetSweep budget_sweep(const ScenarioConfig& s, const std::vector<double>& budgets,
                         const GridSpec& grid, const SolverConfig& solver);

// Varies the PV-owning share of a fixed household total; each share gets its
// own benchmark before the grid runs, and the surplus gain is reported
// against that share's own status quo.
struct SharePoint {
    double share = 0.0;
    double pv_households = 0.0; // year-0 count after rounding
    Benchmark bench;
    PolicyStudy study;
    std::optional<MetricSet> best_metrics;
    double delta_hes = 0.0; // best_hes minus the share's status-quo surplus
};

struct ShareSweep {
    std::vector<SharePoint> points;
    std::string error;

    bool ok() const { return error.empty(); }
};

ShareSweep pv_share_sweep(const ScenarioConfig& s, const std::vector<double>& shares,
                          const GridSpec& grid, const SolverConfig& solver);

// Grid study with every tuple's program additionally capped at cap_kwh of
// weighted unmet energy over the horizon. Bypasses the policy cache since
// the follower program differs from the unconstrained one.
PolicyStudy ud_constrained_run(const ScenarioConfig& s, double cap_kwh, double npv0,
                               const GridSpec& grid, const SolverConfig& solver);

// Deterministic file bundle for one case: study.csv, frontier.csv,
// summary.json, capacity.csv, generation.csv, table4.csv. Creates dir as
// needed; returns an error message or empty.
std::string export_report(const CaseReport& r, const ScenarioConfig& s,
                          const std::string& dir);

} // namespace mgp
