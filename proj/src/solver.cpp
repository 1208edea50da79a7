#include "mgp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>

#include <unistd.h>

#include "mgp/lp_format.hpp"
#include "mgp/simplex.hpp"

namespace mgp {

namespace {

struct Incumbent {
    bool found = false;
    double score = -kInf; // objective in maximize space
    double objective = 0.0;
    std::vector<double> x;
};

class BranchAndBound {
public:
    BranchAndBound(const MipProgram& p, const SolveTolerances& tol, const SolveLimits& lim)
        : p_(p), tol_(tol), lim_(lim), lp_(make_lp(p)) {}

    MipSolution run() {
        MipSolution out;
        auto errs = p_.validate();
        if (!errs.empty()) {
            out.status = SolveStatus::Limit;
            out.note = "invalid program: " + errs.front();
            return out;
        }
        start_ = std::chrono::steady_clock::now();

        root_lb_ = lp_.lb;
        root_ub_ = lp_.ub;
        for (int j = 0; j < lp_.n; ++j)
            if (p_.vars[j].integer) {
                root_lb_[j] = std::ceil(root_lb_[j] - tol_.integrality);
                root_ub_[j] = std::floor(root_ub_[j] + tol_.integrality);
                if (root_lb_[j] > root_ub_[j]) {
                    out.status = SolveStatus::Infeasible;
                    out.note = "no integer value in bounds of " + p_.vars[j].name;
                    return out;
                }
            }

        changes_.push_back({-1, -1, 0.0, false}); // root
        queue_.push({kInf, 0, 0});
        long long processed = 0;
        bool limit_hit = false;
        std::string limit_why;

        std::vector<double> lb, ub;
        while (!queue_.empty()) {
            Entry e = queue_.top();
            queue_.pop();
            if (inc_.found && e.bound <= prune_line()) continue;
            if (lim_.max_nodes > 0 && processed >= lim_.max_nodes) {
                limit_hit = true;
                limit_why = "node limit";
                best_open_ = std::max(best_open_, e.bound);
                continue;
            }
            if (lim_.time_limit_s > 0 && elapsed() > lim_.time_limit_s) {
                limit_hit = true;
                limit_why = "time limit";
                best_open_ = std::max(best_open_, e.bound);
                continue;
            }
            ++processed;

            if (!materialize(e.change, &lb, &ub)) continue;
            bool warm = last_state_.valid();
            SimplexState st = last_state_;
            SimplexOptions sopt;
            sopt.feas_tol = tol_.feas;
            sopt.max_iters = lim_.max_lp_iters;
            LpResult r = solve_lp(lp_, lb, ub, &st, sopt);
            // A warm basis is a speed hint, never evidence: any verdict that
            // would discard the node gets one cold retry before it is final.
            if (warm && (r.status == LpStatus::IterLimit ||
                         r.status == LpStatus::NumFail ||
                         r.status == LpStatus::Infeasible)) {
                SimplexState cold;
                r = solve_lp(lp_, lb, ub, &cold, sopt);
                st = cold;
            }
            if (r.status == LpStatus::Infeasible) continue;
            if (r.status == LpStatus::Unbounded) {
                out.status = SolveStatus::Unbounded;
                out.note = "LP relaxation unbounded";
                return out;
            }
            if (r.status != LpStatus::Optimal) {
                limit_hit = true;
                limit_why = "LP " + std::string(r.status == LpStatus::IterLimit
                                                    ? "iteration limit"
                                                    : "numerical failure");
                continue;
            }
            last_state_ = st;

            double bound = score(r.objective);
            if (inc_.found && bound <= prune_line()) continue;

            int frac = most_fractional(r.x);
            if (frac < 0) {
                // Every integer sits within tolerance of a whole number, but
                // rounding can still be infeasible when a constraint separates
                // points closer than the tolerance (big-M rows do this). If the
                // candidate does not close the node, split on the least clean
                // integer instead of discarding the subtree.
                offer_candidate(r.x, lb, ub);
                if (inc_.found && bound <= prune_line()) continue;
                frac = least_clean_integer(r.x, lb, ub);
                if (frac < 0) continue;
            }
            if (processed == 1 || processed % 256 == 0) round_and_try(r.x, lb, ub);

            double v = r.x[frac];
            int down = (int)changes_.size();
            changes_.push_back({e.change, frac, std::floor(v), true});
            queue_.push({bound, down, next_id_++});
            int up = (int)changes_.size();
            changes_.push_back({e.change, frac, std::ceil(v), false});
            queue_.push({bound, up, next_id_++});
        }

        if (!inc_.found) {
            out.status = limit_hit ? SolveStatus::Limit : SolveStatus::Infeasible;
            out.note = limit_hit ? limit_why : out.note;
            return out;
        }
        out.x = inc_.x;
        out.objective = inc_.objective;
        if (limit_hit) {
            out.status = SolveStatus::Limit;
            out.gap = std::max(0.0, best_open_ - inc_.score) / std::max(1.0, std::fabs(inc_.score));
            out.note = limit_why;
        } else {
            out.status = SolveStatus::Optimal;
            out.gap = 0.0;
        }
        return out;
    }

private:
    struct Change {
        int parent;
        int var;
        double value;
        bool is_upper;
    };
    struct Entry {
        double bound;
        int change;
        long long id;
        // Best bound first; on ties the newest node wins, so plateaus of
        // equal bounds (common when binaries never touch the objective) are
        // explored as a dive that reaches an incumbent quickly instead of a
        // breadth-first sweep that never does.
        bool operator<(const Entry& o) const {
            if (bound != o.bound) return bound < o.bound;
            return id < o.id;
        }
    };

    const MipProgram& p_;
    SolveTolerances tol_;
    SolveLimits lim_;
    LpInstance lp_;
    std::vector<double> root_lb_, root_ub_;
    std::vector<Change> changes_;
    std::priority_queue<Entry> queue_;
    Incumbent inc_;
    SimplexState last_state_;
    long long next_id_ = 1;
    double best_open_ = -kInf;
    std::chrono::steady_clock::time_point start_;

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

    double score(double objective) const { return p_.maximize ? objective : -objective; }

    double prune_line() const {
        return inc_.score + tol_.rel_gap * std::max(1.0, std::fabs(inc_.score));
    }

    bool materialize(int change, std::vector<double>* lb, std::vector<double>* ub) const {
        *lb = root_lb_;
        *ub = root_ub_;
        for (int c = change; c >= 0 && changes_[c].var >= 0; c = changes_[c].parent) {
            const Change& ch = changes_[c];
            if (ch.is_upper)
                (*ub)[ch.var] = std::min((*ub)[ch.var], ch.value);
            else
                (*lb)[ch.var] = std::max((*lb)[ch.var], ch.value);
            if ((*lb)[ch.var] > (*ub)[ch.var]) return false;
        }
        return true;
    }

    int most_fractional(const std::vector<double>& x) const {
        int best = -1;
        double best_frac = tol_.integrality;
        for (int j = 0; j < lp_.n; ++j) {
            if (!p_.vars[j].integer) continue;
            double f = std::fabs(x[j] - std::round(x[j]));
            if (f > best_frac + 1e-15) {
                best_frac = f;
                best = j;
            }
        }
        return best;
    }

    // Fallback branching variable for nominally integral LP points: the
    // unfixed integer farthest from a whole number. Exactly-integral values
    // are skipped so both children cannot reproduce the parent box.
    int least_clean_integer(const std::vector<double>& x, const std::vector<double>& lb,
                            const std::vector<double>& ub) const {
        int best = -1;
        double best_frac = 1e-12;
        for (int j = 0; j < lp_.n; ++j) {
            if (!p_.vars[j].integer || lb[j] >= ub[j]) continue;
            double f = std::fabs(x[j] - std::round(x[j]));
            if (f > best_frac + 1e-15) {
                best_frac = f;
                best = j;
            }
        }
        return best;
    }

    // An integral LP optimum (or rounded point): fix the integers, re-solve
    // the continuous part, and adopt the result if it checks out.
    void offer_candidate(const std::vector<double>& x, const std::vector<double>& lb,
                         const std::vector<double>& ub) {
        std::vector<double> flb = lb, fub = ub;
        for (int j = 0; j < lp_.n; ++j)
            if (p_.vars[j].integer) {
                double v = std::round(x[j]);
                if (v < lb[j] || v > ub[j]) return;
                flb[j] = fub[j] = v;
            }
        SimplexState st = last_state_;
        SimplexOptions sopt;
        sopt.feas_tol = tol_.feas;
        sopt.max_iters = lim_.max_lp_iters;
        LpResult r = solve_lp(lp_, flb, fub, &st, sopt);
        if (r.status != LpStatus::Optimal) return;
        double sc = score(r.objective);
        if (inc_.found && sc <= inc_.score) return;
        VerifyReport rep = verify(p_, r.x, tol_.feas);
        if (!rep.ok) return;
        inc_.found = true;
        inc_.score = sc;
        inc_.objective = rep.objective;
        inc_.x = r.x;
    }

    void round_and_try(const std::vector<double>& x, const std::vector<double>& lb,
                       const std::vector<double>& ub) {
        offer_candidate(x, lb, ub);
    }
};

} // namespace

MipSolution solve_reference(const MipProgram& p, const SolveTolerances& tol,
                            const SolveLimits& lim) {
    BranchAndBound bb(p, tol, lim);
    return bb.run();
}

namespace {

std::string substitute(const std::string& tpl, const std::string& key,
                       const std::string& value) {
    std::string out = tpl;
    size_t at = 0;
    while ((at = out.find(key, at)) != std::string::npos) {
        out.replace(at, key.size(), value);
        at += value.size();
    }
    return out;
}

std::atomic<unsigned> g_temp_seq{0};

} // namespace

bool solve_external(const MipProgram& p, const ExternalSolver& ext, MipSolution* out,
                    std::string* error) {
    if (ext.command.empty()) {
        if (error) *error = "external solver command not configured";
        return false;
    }
    std::string dir = ext.workdir.empty() ? "/tmp" : ext.workdir;
    unsigned seq = g_temp_seq.fetch_add(1);
    std::string stem = dir + "/mgp_" + std::to_string(::getpid()) + "_" + std::to_string(seq);
    std::string lp_path = stem + ".lp";
    std::string sol_path = stem + ".sol";

    {
        std::ofstream f(lp_path);
        if (!f) {
            if (error) *error = "cannot write " + lp_path;
            return false;
        }
        f << emit_interchange(p);
    }
    std::string cmd = substitute(substitute(ext.command, "{lp}", lp_path), "{sol}", sol_path);
    int rc = std::system(cmd.c_str());
    if (rc != 0) {
        if (error) *error = "solver command failed (exit " + std::to_string(rc) + "): " + cmd;
        return false;
    }
    std::ifstream f(sol_path);
    if (!f) {
        if (error) *error = "solver produced no solution file " + sol_path;
        return false;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    MipSolution sol;
    if (!import_solution(p, ss.str(), &sol, error)) return false;

    if (sol.status == SolveStatus::Optimal ||
        (sol.status == SolveStatus::Limit && !sol.x.empty())) {
        // Snap integers and recompute the objective; reject infeasible files.
        for (size_t j = 0; j < p.vars.size(); ++j)
            if (p.vars[j].integer) sol.x[j] = std::round(sol.x[j]);
        VerifyReport rep = verify(p, sol.x, ext.feas);
        if (!rep.ok) {
            if (error) {
                *error = "imported solution fails verification (worst: " +
                         rep.issues.front().name + ")";
            }
            return false;
        }
        if (std::fabs(rep.objective - sol.objective) >
            1e-5 * std::max(1.0, std::fabs(rep.objective)))
            sol.note = "objective recomputed from assignment";
        sol.objective = rep.objective;
    }
    std::remove(lp_path.c_str());
    std::remove(sol_path.c_str());
    *out = std::move(sol);
    return true;
}

SolverConfig to_solver_config(const SolverSettings& s) {
    SolverConfig cfg;
    cfg.backend = s.backend;
    cfg.command = s.command;
    cfg.tol.rel_gap = s.rel_gap;
    cfg.limits.time_limit_s = s.time_limit_s;
    cfg.limits.max_nodes = s.node_limit;
    return cfg;
}

bool solve_mip(const MipProgram& p, const SolverConfig& cfg, MipSolution* out,
               std::string* error) {
    if (cfg.backend == "external") {
        ExternalSolver ext;
        ext.command = cfg.command;
        ext.workdir = cfg.workdir;
        ext.feas = cfg.tol.feas;
        return solve_external(p, ext, out, error);
    }
    *out = solve_reference(p, cfg.tol, cfg.limits);
    return true;
}

} // namespace mgp
