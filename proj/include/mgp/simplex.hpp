#pragma once

#include <cstdint>
#include <vector>

#include "mgp/mip.hpp"

namespace mgp {

// LP view of a MipProgram: rows become equalities via one logical variable
// each (<=: [0,inf), >=: (-inf,0], =: fixed at 0), integrality is dropped,
// and the objective is internally minimized. Rows whose coefficient spread
// exceeds 1e6 (or whose largest coefficient does) are scaled by 1/max|a|.
struct LpInstance {
    int m = 0; // rows
    int n = 0; // structural variables

    // CSC of the scaled structural matrix.
    std::vector<int> col_ptr;
    std::vector<int> col_row;
    std::vector<double> col_val;

    std::vector<double> row_scale; // applied to rows and rhs
    std::vector<double> b;         // scaled rhs
    std::vector<double> lb, ub;    // n + m entries, logicals appended
    std::vector<double> cost;      // n + m, minimize sense, logicals 0
    bool maximize = false;         // original sense
    double obj_constant = 0.0;

    int total() const { return n + m; }
};

LpInstance make_lp(const MipProgram& p);

// Basis snapshot for warm starts: which variable sits in each basis position
// and the status of all variables (0 basic, 1 at lower, 2 at upper, 3 free
// at zero).
struct SimplexState {
    std::vector<int> basis;
    std::vector<uint8_t> vstat;
    bool valid() const { return !basis.empty(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, NumFail };

struct LpResult {
    LpStatus status = LpStatus::NumFail;
    double objective = 0.0;     // original sense, constant included
    std::vector<double> x;      // structural variables only
    long long iterations = 0;
    int phase1_left = 0;        // residual infeasible count on Infeasible
};

struct SimplexOptions {
    double feas_tol = 1e-6;   // bound violation tolerance (scaled rows)
    double opt_tol = 1e-7;    // reduced-cost tolerance
    long long max_iters = 2'000'000;
    int refactor_every = 64;
    int stall_limit = 1000;   // degenerate pivots before Bland's rule kicks in
};

// Bounded-variable revised primal simplex over an immutable LpInstance.
// Bounds are passed per call so branch-and-bound can tighten them without
// rebuilding; `state` (optional) is consumed as a warm start and overwritten
// with the final basis.
LpResult solve_lp(const LpInstance& lp, const std::vector<double>& lb,
                  const std::vector<double>& ub, SimplexState* state,
                  const SimplexOptions& opt = {});

} // namespace mgp
