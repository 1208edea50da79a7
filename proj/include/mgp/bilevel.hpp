#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mgp/dgc_program.hpp"
#include "mgp/solver.hpp"

namespace mgp {

// Rectangular policy grid. Tuples with fit > price are skipped, so the
// effective region is triangular.
struct GridSpec {
    double price_lo = 0.0;
    double price_hi = 0.40; // status-quo retail price
    double price_step = 0.01;
    double fit_lo = 0.0;
    double fit_hi = 0.40;
    double fit_step = 0.01;
};

std::vector<Violation> validate(const GridSpec& g);

// Inclusive axis lo, lo+step, ...; keeps the endpoint when it lands on the
// grid within a small relative wobble.
std::vector<double> grid_axis(double lo, double hi, double step);

// Discounted household economic surplus: served energy valued at the outage
// cost minus the retail price, plus feed-in income, both at the households'
// discount rate.
double hes(const DgcPlan& plan, PolicyTuple policy, const ScenarioConfig& s);

struct TupleRecord {
    PolicyTuple policy;
    bool resolved = false; // solver proved optimality and the plan decoded
    bool feasible = false; // resolved and npv >= npv0 - slack
    double npv = 0.0;
    double hes = 0.0;
    double feed_in_share = 0.0; // feed-in energy over served energy
    double unmet_share = 0.0;   // unserved energy over total demand
    bool low_feed_in = true;    // feed_in_share < 5%
    std::array<double, kNumTech> final_capacity{};
    double served_kwh = 0.0;
    double feed_in_kwh = 0.0;
    double unmet_kwh = 0.0;
    std::string note; // why the tuple is unresolved
};

struct FrontierPoint {
    double price = 0.0;
    double fit = 0.0; // largest feasible feed-in tariff at this price
};

struct PolicyStudy {
    GridSpec grid;
    double npv0 = 0.0;
    std::vector<TupleRecord> records;
    std::optional<PolicyTuple> best;
    double best_hes = 0.0;
    std::vector<FrontierPoint> frontier;
    int unresolved = 0;
    std::string error; // non-empty when the grid or scenario was rejected
};

// Evaluates the follower at every grid tuple (price cap and tariff floor
// bind at the optimum, so each tuple is one MILP solve), filters by the
// participation constraint against npv0, and picks the surplus argmax.
// Ties prefer the lower price, then the higher tariff.
PolicyStudy run_grid(const ScenarioConfig& s, const GridSpec& grid, double npv0,
                     const SolverConfig& solver);

// Record fields derived from a decoded plan: surplus, energy totals, shares
// and final capacities. policy, feasible and note stay with the caller.
TupleRecord plan_record(const DgcPlan& plan, PolicyTuple policy,
                        const ScenarioConfig& s);

// The same sweep driven by a caller-supplied evaluator (one call per tuple,
// uncached), so variant studies that add follower constraints keep selection
// and tie-break rules identical. The evaluator fills everything except
// policy, feasible and low_feed_in.
PolicyStudy run_grid_eval(const ScenarioConfig& s, const GridSpec& grid, double npv0,
                          const std::function<TupleRecord(double, double)>& eval);

// One row per evaluated tuple: P,FiT,npv,hes,feasible,feed_in_share,unmet_share
void write_study_csv(const PolicyStudy& study, std::ostream& os);

struct Lemma1Report {
    int samples = 0;
    int comparisons = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Re-optimizes the follower at sampled tuples and their one-step
// perturbations: optimal profit must not fall when the price rises and must
// not rise when the feed-in tariff does.
Lemma1Report check_lemma1(const ScenarioConfig& s, int samples,
                          const SolverConfig& solver, uint64_t seed = 1);

// Tuple evaluations are cached per (scenario, price, fit) behind a lock so
// sweeps and perturbation checks reuse solves. Tests may clear the cache.
void clear_policy_cache();

} // namespace mgp
