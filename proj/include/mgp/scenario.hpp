#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mgp/tensor.hpp"

namespace mgp {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index space of the planning problem: years x representative days x hours.
// Day weights are days-per-year; they must sum to 365.
struct TimeGrid {
    int years = 1;
    std::vector<double> day_weights;
    int hours = 24;

    int days() const { return static_cast<int>(day_weights.size()); }
    double weight_sum() const {
        double s = 0.0;
        for (double w : day_weights) s += w;
        return s;
    }
};

enum class Tech : int { DG = 0, PV = 1, Battery = 2 };
constexpr int kNumTech = 3;
// Dispatchable (non-storage) technologies.
constexpr std::array<Tech, 2> kGenTech = {Tech::DG, Tech::PV};

const char* tech_name(Tech g);

struct Technology {
    // Unit capital cost per build year. Needs years+1 entries: the entry at
    // index Y prices end-of-horizon salvage.
    std::vector<double> capex_by_year;
    double opex_fixed = 0.0;  // USD/kW/year
    double opex_var = 0.0;    // USD/kWh
    int lifetime = 1;         // years
    int remaining_life = 0;   // of the initially installed capacity
    double initial_kw = 0.0;
};

struct HouseholdClass {
    std::vector<double> count_by_year; // one entry per year
    double pv_kw = 0.0;                // average PV system size, 0 for non-owners
};

// Index 0 = non-PV-owner, 1 = PV-owner.
constexpr int kNonPvOwner = 0;
constexpr int kPvOwner = 1;

// Piecewise-constant fuel curve: liters per kWh on each utilization segment.
// Segment breakpoints are fixed at 30% and 60% of installed capacity.
// Defaults put the mid-segment fuel cost at 0.21 USD/kWh under the default
// diesel price, with a 30% low-load and 10% high-load penalty.
struct HeatRate {
    double rho1 = 1.3 * (0.21 / 0.85); // <= 30% load
    double rho2 = 0.21 / 0.85;         // 30..60%
    double rho3 = 1.1 * (0.21 / 0.85); // > 60%
};

struct BatteryParams {
    double efficiency = 0.95;      // one-way charge/discharge efficiency
    double min_soc_fraction = 0.10;
    // Energy capacity is fixed at duration_hours * power capacity.
    static constexpr double duration_hours = 4.0;
};

struct ScenarioConfig {
    TimeGrid time;
    std::array<Technology, kNumTech> tech;
    std::array<HouseholdClass, 2> households;
    // Per-household demand, kW, indexed [class](y,d,h).
    std::array<Tensor3, 2> demand_kw;
    // Solar capacity factor in [0,1], (y,d,h).
    Tensor3 solar_cf;

    double diesel_price = 0.85; // USD/L
    HeatRate heat_rate;
    BatteryParams battery;

    double discount_dgc = 0.10;
    double discount_re = 0.10;
    double voll = 0.70;              // value of lost load, USD/kWh
    double budget = kInf;            // capacity budget, USD; +inf = unconstrained
    bool allow_renewables = true;    // feed-in plus DGC PV/battery allowed
    double unmet_penalty = 1e-4;     // tie-break weight on unmet demand, USD/kWh
    double big_m = 0.0;              // 0 = size automatically per instance
    double status_quo_price = 0.40;  // prevailing retail price, USD/kWh

    const Technology& tech_of(Tech g) const { return tech[static_cast<int>(g)]; }
    Technology& tech_of(Tech g) { return tech[static_cast<int>(g)]; }
};

// Regulator decision: retail price cap and feed-in tariff floor, both USD/kWh.
// Under the fixed-point argument both are taken as the follower's actual
// price and tariff.
struct PolicyTuple {
    double price = 0.0;
    double fit = 0.0;
};

struct Violation {
    std::string field;
    std::string message;
};

// Total function: empty result means every structural invariant holds.
std::vector<Violation> validate(const ScenarioConfig& s);

// Excess supply per household of class i at (y,d,h), kW. Negative = net demand.
double surplus(const ScenarioConfig& s, int i, int y, int d, int h);

// Aggregate microgrid demand at (y,d,h), kW. Never negative.
double total_demand(const ScenarioConfig& s, int y, int d, int h);

// Upper bound on class-i feed-in at (y,d,h): max(0, count * surplus) when
// renewables are allowed, else 0.
double feed_in_cap(const ScenarioConfig& s, int i, int y, int d, int h);

// Largest total_demand over the whole grid and largest single-day energy.
double peak_total_demand(const ScenarioConfig& s);
double max_daily_demand(const ScenarioConfig& s);

// Big-M for the heat-rate segment constraints. Uses the configured value if
// positive, otherwise sized from budget-reachable DG capacity, initial
// capacity and peak demand.
double heat_rate_big_m(const ScenarioConfig& s);

// Upper bound on DG dispatch in at least one optimal solution; sizes the
// automatic big-M when the budget is unconstrained.
double dg_dispatch_bound(const ScenarioConfig& s);

// FNV-1a over a canonical serialization; stable across runs for memoization
// and manifests.
uint64_t scenario_hash(const ScenarioConfig& s);

} // namespace mgp
