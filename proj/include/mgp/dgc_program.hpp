#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mgp/mip.hpp"
#include "mgp/scenario.hpp"
#include "mgp/tensor.hpp"

namespace mgp {

// Dense index map for the operator's planning program. Declaration order:
// additions A, installed capacity C, retirements Ret per (tech, year);
// dispatch D per (generating tech, year, day, hour); battery charge Bp,
// discharge Bm, state of charge SoC; day-start state SoC0; household feed-in
// Fi per (class, year, day, hour); unmet demand U; fuel R; segment binaries
// b1, b2.
struct VariableLayout {
    int years = 0;
    int days = 0;
    int hours = 0;

    int a(Tech g, int y) const { return (int)g * years + y; }
    int c(Tech g, int y) const { return base_c + (int)g * years + y; }
    int ret(Tech g, int y) const { return base_ret + (int)g * years + y; }
    int d(Tech g, int y, int dd, int h) const {
        return base_d + ((int)g * years + y) * days * hours + dd * hours + h;
    }
    int bp(int y, int dd, int h) const { return base_bp + cell(y, dd, h); }
    int bm(int y, int dd, int h) const { return base_bm + cell(y, dd, h); }
    int soc(int y, int dd, int h) const { return base_soc + cell(y, dd, h); }
    int soc0(int y, int dd) const { return base_soc0 + y * days + dd; }
    int fi(int i, int y, int dd, int h) const {
        return base_fi + (i * years + y) * days * hours + dd * hours + h;
    }
    int u(int y, int dd, int h) const { return base_u + cell(y, dd, h); }
    int r(int y, int dd, int h) const { return base_r + cell(y, dd, h); }
    int b1(int y, int dd, int h) const { return base_b1 + cell(y, dd, h); }
    int b2(int y, int dd, int h) const { return base_b2 + cell(y, dd, h); }

    int total = 0;
    int base_c = 0, base_ret = 0, base_d = 0, base_bp = 0, base_bm = 0;
    int base_soc = 0, base_soc0 = 0, base_fi = 0, base_u = 0, base_r = 0;
    int base_b1 = 0, base_b2 = 0;

private:
    int cell(int y, int dd, int h) const { return (y * days + dd) * hours + h; }
};

VariableLayout make_layout(const TimeGrid& time);

// A built program plus everything needed to interpret its solution.
struct DgcModel {
    ScenarioConfig scenario;
    PolicyTuple policy;
    int beta = 1;
    VariableLayout layout;
    MipProgram program;
    std::string error; // non-empty when the inputs were rejected

    bool ok() const { return error.empty(); }
};

// Build the operator's profit-maximization MILP at a fixed price and feed-in
// tariff. beta = 0 locks out PV, batteries and household feed-in (status quo);
// beta = 1 allows them. Requires 0 <= fit <= price and a valid scenario.
DgcModel build_dgc_model(const ScenarioConfig& s, PolicyTuple policy, int beta);

// End-of-horizon salvage credits capacity added in [first, last] (inclusive);
// the window is the last `lifetime` build years, clamped at year 0.
std::pair<int, int> salvage_window(int years, int lifetime);

// Copy of the program with one extra row capping total weighted unmet demand
// at cap_kwh (kWh over the whole horizon). +inf returns the program unchanged.
MipProgram add_unmet_cap(const DgcModel& model, double cap_kwh);

// Solution decoded back into tensors plus financial aggregates, every one of
// them recomputed from raw variable values rather than read off the solver.
struct DgcPlan {
    std::array<std::vector<double>, kNumTech> additions, capacity, retired;
    std::array<Tensor3, 2> dispatch; // [DG, PV]
    Tensor3 charge, discharge, soc;
    std::vector<double> soc_start;   // indexed y * days + d
    std::array<Tensor3, 2> feed_in;  // [household class]
    Tensor3 unmet, fuel;

    // Per-year financials (USD) and served energy (kWh).
    std::vector<double> revenue, capex_cost, var_cost, fixed_cost, unmet_cost;
    std::vector<double> served;
    std::array<double, kNumTech> salvage{};
    double npv = 0.0;
    double objective = 0.0; // npv minus the unmet-demand tie-break penalty
};

// Fails when the solution carries no usable assignment or when the recomputed
// objective disagrees with the solver's beyond 1e-5 relative (a builder or
// solver defect, never a data issue).
bool decode_plan(const DgcModel& model, const MipSolution& sol, DgcPlan* out,
                 std::string* error);

} // namespace mgp
