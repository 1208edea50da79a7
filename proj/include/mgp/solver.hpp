#pragma once

#include <string>

#include "mgp/config_file.hpp"
#include "mgp/mip.hpp"

namespace mgp {

struct SolveTolerances {
    double feas = 1e-6;        // bound/row feasibility (scaled rows)
    double integrality = 1e-6; // how far from an integer a binary may sit
    double rel_gap = 1e-6;     // relative optimality gap
};

struct SolveLimits {
    long long max_nodes = 0;  // 0 = unlimited
    double time_limit_s = 0;  // 0 = none; runs become nondeterministic when set
    long long max_lp_iters = 2'000'000;
};

// Exact branch-and-bound over the built-in simplex: best-first on the LP
// bound, branching on the most fractional integer (lowest index on ties),
// warm starts from the most recently solved basis, rounding heuristic at the
// root and every 256 nodes. Deterministic whenever no time limit is set.
MipSolution solve_reference(const MipProgram& p, const SolveTolerances& tol = {},
                            const SolveLimits& lim = {});

// File-based adapter: emit LP text, run `command` with {lp}/{sol} substituted,
// import and verify the solution file. Temp files live in `workdir` (empty =
// system temp dir) and are kept on failure for inspection.
struct ExternalSolver {
    std::string command;
    std::string workdir;
    double feas = 1e-6;
};

bool solve_external(const MipProgram& p, const ExternalSolver& ext, MipSolution* out,
                    std::string* error);

// Backend dispatch configured from [solver] settings.
struct SolverConfig {
    std::string backend = "reference";
    SolveTolerances tol;
    SolveLimits limits;
    std::string command;
    std::string workdir;
};

SolverConfig to_solver_config(const SolverSettings& s);

bool solve_mip(const MipProgram& p, const SolverConfig& cfg, MipSolution* out,
               std::string* error);

} // namespace mgp
