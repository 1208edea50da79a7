#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgp/scenario.hpp"

namespace mgp {

enum class Rel { LE, EQ, GE };

// One linear mixed-integer program. Fields are public; builders go through
// the helpers so terms stay sorted, merged and zero-free.
struct MipVar {
    std::string name;
    double lb = 0.0;
    double ub = kInf;
    bool integer = false;
};

struct MipTerm {
    int var;
    double coef;
};

struct MipRow {
    std::string name;
    std::vector<MipTerm> terms; // sorted by var index, unique, non-zero
    Rel rel = Rel::LE;
    double rhs = 0.0;
};

struct MipProgram {
    std::vector<MipVar> vars;
    std::vector<MipRow> rows;
    std::vector<double> obj; // dense, one per variable
    double obj_constant = 0.0;
    bool maximize = true;

    int add_var(const std::string& name, double lb, double ub, bool integer = false);
    int var_index(const std::string& name) const; // -1 when absent
    void set_obj(int var, double coef);
    void add_obj(int var, double coef);
    // Terms are normalized: sorted, duplicates summed, zeros dropped.
    int add_row(const std::string& name, std::vector<MipTerm> terms, Rel rel, double rhs);

    size_t num_vars() const { return vars.size(); }
    size_t num_rows() const { return rows.size(); }
    int num_integer() const;

    // Structural sanity: unique names, declared term indices, lb <= ub,
    // finite coefficients, at least one term per row.
    std::vector<std::string> validate() const;

    bool operator==(const MipProgram& o) const;

private:
    std::unordered_map<std::string, int> name_to_var_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, Limit };

const char* to_string(SolveStatus s);
bool solve_status_from_string(const std::string& s, SolveStatus* out);

struct MipSolution {
    SolveStatus status = SolveStatus::Limit;
    double objective = 0.0;
    std::vector<double> x; // one per variable; empty when no incumbent exists
    double gap = 0.0;      // relative, meaningful for Optimal / Limit with incumbent
    std::string note;      // diagnostics, never part of the contract
};

// Independent feasibility check. Row residuals are scaled by max(1, inf-norm
// of the row) so the tolerance reads as "absolute on scaled constraints".
struct VerifyIssue {
    std::string kind; // "row", "bound", "integrality", "coverage"
    std::string name;
    double residual = 0.0;
};

struct VerifyReport {
    bool ok = false;
    double objective = 0.0; // recomputed from the assignment
    std::vector<VerifyIssue> issues;
    // Worst scaled residual per row-name family (prefix up to '('), including
    // families whose residual is within tolerance.
    std::map<std::string, double> worst_by_family;
};

VerifyReport verify(const MipProgram& p, const std::vector<double>& x, double tol = 1e-6);

} // namespace mgp
