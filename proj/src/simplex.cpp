#include "mgp/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace mgp {

LpInstance make_lp(const MipProgram& p) {
    LpInstance lp;
    lp.n = (int)p.vars.size();
    lp.m = (int)p.rows.size();
    lp.maximize = p.maximize;
    lp.obj_constant = p.obj_constant;

    lp.row_scale.assign(lp.m, 1.0);
    for (int i = 0; i < lp.m; ++i) {
        double maxa = 0.0, mina = kInf;
        for (const MipTerm& t : p.rows[i].terms) {
            double a = std::fabs(t.coef);
            maxa = std::max(maxa, a);
            mina = std::min(mina, a);
        }
        if (maxa > 1e6 * mina || maxa > 1e6) lp.row_scale[i] = 1.0 / maxa;
    }

    std::vector<int> cnt(lp.n, 0);
    for (const MipRow& r : p.rows)
        for (const MipTerm& t : r.terms) cnt[t.var]++;
    lp.col_ptr.assign(lp.n + 1, 0);
    for (int j = 0; j < lp.n; ++j) lp.col_ptr[j + 1] = lp.col_ptr[j] + cnt[j];
    lp.col_row.resize(lp.col_ptr[lp.n]);
    lp.col_val.resize(lp.col_ptr[lp.n]);
    std::vector<int> fill(lp.col_ptr.begin(), lp.col_ptr.end() - 1);
    for (int i = 0; i < lp.m; ++i)
        for (const MipTerm& t : p.rows[i].terms) {
            lp.col_row[fill[t.var]] = i;
            lp.col_val[fill[t.var]] = t.coef * lp.row_scale[i];
            fill[t.var]++;
        }

    lp.b.resize(lp.m);
    lp.lb.resize(lp.total());
    lp.ub.resize(lp.total());
    lp.cost.assign(lp.total(), 0.0);
    for (int j = 0; j < lp.n; ++j) {
        lp.lb[j] = p.vars[j].lb;
        lp.ub[j] = p.vars[j].ub;
        lp.cost[j] = p.maximize ? -p.obj[j] : p.obj[j];
    }
    for (int i = 0; i < lp.m; ++i) {
        lp.b[i] = p.rows[i].rhs * lp.row_scale[i];
        int s = lp.n + i;
        switch (p.rows[i].rel) {
            case Rel::LE: lp.lb[s] = 0.0; lp.ub[s] = kInf; break;
            case Rel::GE: lp.lb[s] = -kInf; lp.ub[s] = 0.0; break;
            case Rel::EQ: lp.lb[s] = 0.0; lp.ub[s] = 0.0; break;
        }
    }
    return lp;
}

namespace {

struct Entry {
    int idx;
    double val;
};

// LU factorization of the basis matrix: singleton peel (no fill, no numeric
// updates) followed by dense elimination of each remaining connected
// component. Solves are expressed against constraint-row indexing on the way
// in and basis-position indexing on the way out.
class BasisLu {
public:
    int m = 0;
    bool ok = false;

    bool factor(const LpInstance& lp, const std::vector<int>& basis) {
        m = (int)basis.size();
        ok = false;
        rowp.clear(); colp.clear();
        l_ptr.assign(1, 0); l_row.clear(); l_val.clear();
        u_ptr.assign(1, 0); u_pos.clear(); u_val.clear();
        u_diag.clear();
        rowp.reserve(m); colp.reserve(m);
        work.assign(m, 0.0);

        std::vector<std::vector<Entry>> cols(m), rows(m);
        for (int j = 0; j < m; ++j) {
            int v = basis[j];
            if (v >= lp.n) {
                cols[j].push_back({v - lp.n, 1.0});
            } else {
                for (int k = lp.col_ptr[v]; k < lp.col_ptr[v + 1]; ++k)
                    cols[j].push_back({lp.col_row[k], lp.col_val[k]});
            }
            for (const Entry& e : cols[j]) rows[e.idx].push_back({j, e.val});
        }
        std::vector<int> row_cnt(m), col_cnt(m);
        std::vector<char> row_done(m, 0), col_done(m, 0);
        for (int i = 0; i < m; ++i) row_cnt[i] = (int)rows[i].size();
        for (int j = 0; j < m; ++j) col_cnt[j] = (int)cols[j].size();

        std::vector<int> rstack, cstack;
        for (int i = 0; i < m; ++i)
            if (row_cnt[i] == 1) rstack.push_back(i);
        for (int j = 0; j < m; ++j)
            if (col_cnt[j] == 1) cstack.push_back(j);

        auto col_max = [&](int j) {
            double mx = 0.0;
            for (const Entry& e : cols[j]) mx = std::max(mx, std::fabs(e.val));
            return mx;
        };

        while (!rstack.empty() || !cstack.empty()) {
            if (!cstack.empty()) {
                int j = cstack.back();
                cstack.pop_back();
                if (col_done[j] || col_cnt[j] != 1) continue;
                int r = -1;
                double pv = 0.0;
                for (const Entry& e : cols[j])
                    if (!row_done[e.idx]) { r = e.idx; pv = e.val; break; }
                if (r < 0 || std::fabs(pv) <= 1e-11 * std::max(1.0, col_max(j))) return false;
                rowp.push_back(r); colp.push_back(j);
                row_done[r] = 1; col_done[j] = 1;
                u_diag.push_back(pv);
                for (const Entry& e : rows[r]) {
                    if (col_done[e.idx]) continue;
                    u_pos.push_back(e.idx); // basis position, remapped below
                    u_val.push_back(e.val);
                    if (--col_cnt[e.idx] == 1) cstack.push_back(e.idx);
                }
                u_ptr.push_back((int)u_pos.size());
                l_ptr.push_back((int)l_row.size());
            } else {
                int r = rstack.back();
                rstack.pop_back();
                if (row_done[r] || row_cnt[r] != 1) continue;
                int c = -1;
                double pv = 0.0;
                for (const Entry& e : rows[r])
                    if (!col_done[e.idx]) { c = e.idx; pv = e.val; break; }
                if (c < 0 || std::fabs(pv) <= 1e-11 * std::max(1.0, col_max(c))) return false;
                rowp.push_back(r); colp.push_back(c);
                row_done[r] = 1; col_done[c] = 1;
                u_diag.push_back(pv);
                u_ptr.push_back((int)u_pos.size());
                for (const Entry& e : cols[c]) {
                    if (row_done[e.idx]) continue;
                    l_row.push_back(e.idx);
                    l_val.push_back(e.val / pv);
                    if (--row_cnt[e.idx] == 1) rstack.push_back(e.idx);
                }
                l_ptr.push_back((int)l_row.size());
            }
        }

        // Bump: factor each remaining connected component densely.
        std::vector<int> comp(m, -1);
        std::vector<int> uf(m);
        for (int i = 0; i < m; ++i) uf[i] = i;
        auto find = [&](int a) {
            while (uf[a] != a) { uf[a] = uf[uf[a]]; a = uf[a]; }
            return a;
        };
        bool any_bump = false;
        for (int j = 0; j < m; ++j) {
            if (col_done[j]) continue;
            any_bump = true;
            int head = -1;
            for (const Entry& e : cols[j]) {
                if (row_done[e.idx]) continue;
                if (head < 0) head = find(e.idx);
                else uf[find(e.idx)] = head;
            }
            if (head < 0) return false; // empty active column
        }
        if (any_bump) {
            std::vector<std::vector<int>> comp_rows, comp_cols;
            std::vector<int> comp_of_root(m, -1);
            for (int i = 0; i < m; ++i) {
                if (row_done[i]) continue;
                int root = find(i);
                if (comp_of_root[root] < 0) {
                    comp_of_root[root] = (int)comp_rows.size();
                    comp_rows.emplace_back();
                    comp_cols.emplace_back();
                }
                comp[i] = comp_of_root[root];
                comp_rows[comp[i]].push_back(i);
            }
            for (int j = 0; j < m; ++j) {
                if (col_done[j]) continue;
                int root = -1;
                for (const Entry& e : cols[j])
                    if (!row_done[e.idx]) { root = find(e.idx); break; }
                comp_cols[comp_of_root[root]].push_back(j);
            }
            std::vector<double> dense;
            std::vector<int> rmap(m, -1);
            for (size_t cix = 0; cix < comp_rows.size(); ++cix) {
                auto& crows = comp_rows[cix];
                auto& ccols = comp_cols[cix];
                int sz = (int)crows.size();
                if (sz != (int)ccols.size()) return false; // structurally singular
                dense.assign((size_t)sz * sz, 0.0);
                for (int t = 0; t < sz; ++t) rmap[crows[t]] = t;
                double mx = 0.0;
                for (int t = 0; t < sz; ++t)
                    for (const Entry& e : cols[ccols[t]]) {
                        if (row_done[e.idx]) continue;
                        dense[(size_t)rmap[e.idx] * sz + t] = e.val;
                        mx = std::max(mx, std::fabs(e.val));
                    }
                double tiny = 1e-11 * std::max(1.0, mx);
                std::vector<int> orig_row = crows;
                for (int s = 0; s < sz; ++s) {
                    int best = s;
                    double bv = std::fabs(dense[(size_t)s * sz + s]);
                    for (int i = s + 1; i < sz; ++i) {
                        double v = std::fabs(dense[(size_t)i * sz + s]);
                        if (v > bv) { bv = v; best = i; }
                    }
                    if (bv <= tiny) return false;
                    if (best != s) {
                        for (int t = 0; t < sz; ++t)
                            std::swap(dense[(size_t)s * sz + t], dense[(size_t)best * sz + t]);
                        std::swap(orig_row[s], orig_row[best]);
                    }
                    double pv = dense[(size_t)s * sz + s];
                    rowp.push_back(orig_row[s]);
                    colp.push_back(ccols[s]);
                    u_diag.push_back(pv);
                    for (int t = s + 1; t < sz; ++t) {
                        double v = dense[(size_t)s * sz + t];
                        if (v != 0.0) {
                            u_pos.push_back(ccols[t]);
                            u_val.push_back(v);
                        }
                    }
                    u_ptr.push_back((int)u_pos.size());
                    for (int i = s + 1; i < sz; ++i) {
                        double a = dense[(size_t)i * sz + s];
                        if (a == 0.0) continue;
                        double mult = a / pv;
                        l_row.push_back(orig_row[i]);
                        l_val.push_back(mult);
                        for (int t = s + 1; t < sz; ++t)
                            dense[(size_t)i * sz + t] -= mult * dense[(size_t)s * sz + t];
                    }
                    l_ptr.push_back((int)l_row.size());
                }
                for (int t = 0; t < sz; ++t) rmap[crows[t]] = -1;
            }
        }

        if ((int)rowp.size() != m) return false;
        // Remap U column references from basis positions to pivot steps.
        step_of_pos.assign(m, -1);
        for (int k = 0; k < m; ++k) step_of_pos[colp[k]] = k;
        for (int& t : u_pos) t = step_of_pos[t];
        ok = true;
        return true;
    }

    // w: constraint-row indexed rhs in, basis-position indexed solution out.
    void ftran(std::vector<double>& w) const {
        for (int k = 0; k < m; ++k) {
            double wr = w[rowp[k]];
            if (wr == 0.0) continue;
            for (int t = l_ptr[k]; t < l_ptr[k + 1]; ++t) w[l_row[t]] -= l_val[t] * wr;
        }
        for (int k = m - 1; k >= 0; --k) {
            double v = w[rowp[k]];
            for (int t = u_ptr[k]; t < u_ptr[k + 1]; ++t) v -= u_val[t] * work[u_pos[t]];
            work[k] = v / u_diag[k];
        }
        for (int k = 0; k < m; ++k) w[colp[k]] = work[k];
    }

    // w: basis-position indexed costs in, constraint-row indexed duals out.
    void btran(std::vector<double>& w) const {
        for (int k = 0; k < m; ++k) work[k] = w[colp[k]];
        for (int k = 0; k < m; ++k) {
            work[k] /= u_diag[k];
            double s = work[k];
            if (s == 0.0) continue;
            for (int t = u_ptr[k]; t < u_ptr[k + 1]; ++t) work[u_pos[t]] -= u_val[t] * s;
        }
        for (int k = 0; k < m; ++k) w[rowp[k]] = work[k];
        for (int k = m - 1; k >= 0; --k) {
            double acc = w[rowp[k]];
            for (int t = l_ptr[k]; t < l_ptr[k + 1]; ++t) acc -= l_val[t] * w[l_row[t]];
            w[rowp[k]] = acc;
        }
    }

private:
    std::vector<int> rowp, colp;
    std::vector<int> l_ptr, l_row;
    std::vector<double> l_val;
    std::vector<int> u_ptr, u_pos;
    std::vector<double> u_val, u_diag;
    std::vector<int> step_of_pos;
    mutable std::vector<double> work;
};

constexpr uint8_t kBasic = 0, kAtLower = 1, kAtUpper = 2, kFreeZero = 3;

class Simplex {
public:
    Simplex(const LpInstance& lp, const std::vector<double>& lb,
            const std::vector<double>& ub, const SimplexOptions& opt)
        : lp_(lp), lb_(lb), ub_(ub), opt_(opt), m_(lp.m), n_(lp.n), N_(lp.total()) {}

    LpResult run(SimplexState* state) {
        init(state);
        LpResult res;
        if (!refactor_and_recompute()) {
            res.status = LpStatus::NumFail;
            return res;
        }
        for (int round = 0; round < 4; ++round) {
            LpStatus st = phase(1);
            if (st == LpStatus::IterLimit || st == LpStatus::NumFail) {
                res.status = st;
                finish(res, state);
                return res;
            }
            if (count_infeasible() > 0) {
                res.status = LpStatus::Infeasible;
                res.phase1_left = count_infeasible();
                finish(res, state);
                return res;
            }
            st = phase(2);
            if (st != LpStatus::Optimal) {
                res.status = st;
                finish(res, state);
                return res;
            }
            // Fresh factorization; if feasibility drifted, repair via phase 1.
            if (!refactor_and_recompute()) {
                res.status = LpStatus::NumFail;
                return res;
            }
            if (count_infeasible() == 0) {
                res.status = LpStatus::Optimal;
                finish(res, state);
                return res;
            }
        }
        res.status = LpStatus::NumFail;
        finish(res, state);
        return res;
    }

private:
    const LpInstance& lp_;
    const std::vector<double>& lb_;
    const std::vector<double>& ub_;
    SimplexOptions opt_;
    int m_, n_, N_;

    std::vector<int> basis_;
    std::vector<uint8_t> vstat_;
    std::vector<double> x_;
    BasisLu lu_;
    struct Eta {
        int pos;
        double diag;
        std::vector<Entry> terms; // position-indexed, pivot excluded
    };
    std::vector<Eta> etas_;
    std::vector<double> alpha_, y_, rhs_;
    long long iters_ = 0;
    int stall_ = 0;
    bool bland_ = false;

    double low(int v) const { return lb_[v]; }
    double upp(int v) const { return ub_[v]; }

    void init(SimplexState* state) {
        x_.assign(N_, 0.0);
        alpha_.assign(m_, 0.0);
        y_.assign(m_, 0.0);
        rhs_.assign(m_, 0.0);
        etas_.clear();
        iters_ = 0;
        stall_ = 0;
        bland_ = false;

        bool adopted = false;
        if (state && state->valid() && (int)state->basis.size() == m_ &&
            (int)state->vstat.size() == N_) {
            std::vector<char> seen(N_, 0);
            adopted = true;
            for (int v : state->basis) {
                if (v < 0 || v >= N_ || seen[v] || state->vstat[v] != kBasic) {
                    adopted = false;
                    break;
                }
                seen[v] = 1;
            }
            if (adopted) {
                basis_ = state->basis;
                vstat_ = state->vstat;
                for (int v = 0; v < N_; ++v) {
                    if (vstat_[v] == kBasic) continue;
                    normalize_nonbasic(v);
                }
            }
        }
        if (!adopted) reset_to_slack_basis();
    }

    void normalize_nonbasic(int v) {
        uint8_t st = vstat_[v];
        if (st == kAtLower && low(v) == -kInf) st = upp(v) < kInf ? kAtUpper : kFreeZero;
        if (st == kAtUpper && upp(v) == kInf) st = low(v) > -kInf ? kAtLower : kFreeZero;
        if (st == kFreeZero && (low(v) > -kInf || upp(v) < kInf))
            st = low(v) > -kInf ? kAtLower : kAtUpper;
        vstat_[v] = st;
        x_[v] = st == kAtLower ? low(v) : st == kAtUpper ? upp(v) : 0.0;
    }

    void reset_to_slack_basis() {
        basis_.resize(m_);
        vstat_.assign(N_, kAtLower);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            vstat_[n_ + i] = kBasic;
        }
        for (int v = 0; v < n_; ++v) {
            vstat_[v] = low(v) > -kInf ? kAtLower : (upp(v) < kInf ? kAtUpper : kFreeZero);
            normalize_nonbasic(v);
        }
    }

    bool refactor_and_recompute() {
        if (!lu_.factor(lp_, basis_)) {
            reset_to_slack_basis();
            if (!lu_.factor(lp_, basis_)) return false;
        }
        etas_.clear();
        compute_basics();
        return true;
    }

    void compute_basics() {
        for (int i = 0; i < m_; ++i) rhs_[i] = lp_.b[i];
        for (int v = 0; v < N_; ++v) {
            if (vstat_[v] == kBasic) continue;
            x_[v] = vstat_[v] == kAtLower ? low(v) : vstat_[v] == kAtUpper ? upp(v) : 0.0;
            double xv = x_[v];
            if (xv == 0.0) continue;
            if (v >= n_) {
                rhs_[v - n_] -= xv;
            } else {
                for (int k = lp_.col_ptr[v]; k < lp_.col_ptr[v + 1]; ++k)
                    rhs_[lp_.col_row[k]] -= lp_.col_val[k] * xv;
            }
        }
        ftran_full(rhs_);
        for (int i = 0; i < m_; ++i) x_[basis_[i]] = rhs_[i];
    }

    void ftran_full(std::vector<double>& w) const {
        lu_.ftran(w);
        for (const Eta& e : etas_) {
            double xi = w[e.pos] / e.diag;
            if (xi != 0.0)
                for (const Entry& t : e.terms) w[t.idx] -= t.val * xi;
            w[e.pos] = xi;
        }
    }

    void btran_full(std::vector<double>& w) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = w[it->pos];
            for (const Entry& t : it->terms) acc -= t.val * w[t.idx];
            w[it->pos] = acc / it->diag;
        }
        lu_.btran(w);
    }

    int count_infeasible() const {
        int k = 0;
        for (int i = 0; i < m_; ++i) {
            int v = basis_[i];
            if (x_[v] < low(v) - opt_.feas_tol || x_[v] > upp(v) + opt_.feas_tol) ++k;
        }
        return k;
    }

    // Phase 1 minimizes the sum of bound violations of basic variables with
    // costs in {-1, 0, +1}; phase 2 minimizes the true costs.
    LpStatus phase(int ph) {
        int refresh = 0;
        for (;;) {
            if (iters_ >= opt_.max_iters) return LpStatus::IterLimit;

            if (ph == 1 && count_infeasible() == 0) return LpStatus::Optimal;

            for (int i = 0; i < m_; ++i) y_[i] = 0.0;
            bool any_cost = false;
            for (int i = 0; i < m_; ++i) {
                int v = basis_[i];
                double c;
                if (ph == 1)
                    c = x_[v] < low(v) - opt_.feas_tol   ? -1.0
                        : x_[v] > upp(v) + opt_.feas_tol ? 1.0
                                                         : 0.0;
                else
                    c = lp_.cost[v];
                y_[i] = c;
                any_cost = any_cost || c != 0.0;
            }
            if (any_cost) btran_full(y_);
            else std::fill(y_.begin(), y_.end(), 0.0);

            int q = -1;
            double best = 0.0;
            int dir = 0;
            for (int v = 0; v < N_; ++v) {
                uint8_t st = vstat_[v];
                if (st == kBasic) continue;
                if (low(v) == upp(v)) continue;
                double d = ph == 2 ? lp_.cost[v] : 0.0;
                if (v >= n_) {
                    d -= y_[v - n_];
                } else {
                    for (int k = lp_.col_ptr[v]; k < lp_.col_ptr[v + 1]; ++k)
                        d -= lp_.col_val[k] * y_[lp_.col_row[k]];
                }
                int want = 0;
                if (st == kAtLower) {
                    if (d < -opt_.opt_tol) want = +1;
                } else if (st == kAtUpper) {
                    if (d > opt_.opt_tol) want = -1;
                } else { // free at zero
                    if (d < -opt_.opt_tol) want = +1;
                    else if (d > opt_.opt_tol) want = -1;
                }
                if (!want) continue;
                if (bland_) { q = v; dir = want; break; }
                double mag = std::fabs(d);
                if (mag > best + 1e-15) { best = mag; q = v; dir = want; }
            }
            if (q < 0) return LpStatus::Optimal;

            // Entering column in position space.
            for (int i = 0; i < m_; ++i) alpha_[i] = 0.0;
            if (q >= n_) {
                alpha_[q - n_] = 1.0;
            } else {
                for (int k = lp_.col_ptr[q]; k < lp_.col_ptr[q + 1]; ++k)
                    alpha_[lp_.col_row[k]] = lp_.col_val[k];
            }
            ftran_full(alpha_);

            // Ratio test. The entering variable moves by dir * delta >= 0;
            // basic i moves at rate -dir * alpha_[i].
            double best_ratio = kInf;
            int leave = -1;
            double leave_alpha = 0.0, leave_bound = 0.0;
            for (int i = 0; i < m_; ++i) {
                double a = alpha_[i];
                if (std::fabs(a) < 1e-11) continue;
                double rate = -dir * a;
                int v = basis_[i];
                double bound, ratio;
                if (rate > 0.0) {
                    if (ph == 1 && x_[v] < low(v) - opt_.feas_tol) bound = low(v);
                    // Already above: moving further up has no kink ahead, so
                    // it never blocks; its growing violation is in the costs.
                    else if (ph == 1 && x_[v] > upp(v) + opt_.feas_tol) continue;
                    else if (upp(v) < kInf) bound = upp(v);
                    else continue;
                    ratio = (bound - x_[v]) / rate;
                } else {
                    if (ph == 1 && x_[v] > upp(v) + opt_.feas_tol) bound = upp(v);
                    else if (ph == 1 && x_[v] < low(v) - opt_.feas_tol) continue;
                    else if (low(v) > -kInf) bound = low(v);
                    else continue;
                    ratio = (bound - x_[v]) / rate;
                }
                if (ratio < 0.0) ratio = 0.0;
                bool better;
                if (ratio < best_ratio - 1e-9) {
                    better = true;
                } else if (ratio <= best_ratio + 1e-9) {
                    if (bland_)
                        better = leave < 0 || basis_[i] < basis_[leave];
                    else
                        better = leave < 0 || std::fabs(a) > std::fabs(leave_alpha) + 1e-12;
                } else {
                    better = false;
                }
                if (better) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = i;
                    leave_alpha = a;
                    leave_bound = bound;
                }
            }

            double range = upp(q) - low(q); // +inf when either bound is open
            if (leave < 0 || range <= best_ratio) {
                if (range == kInf) {
                    // No finite step blocks: phase 1 infeasibility would fall
                    // forever, which cannot happen; in phase 2 this is an
                    // unbounded ray.
                    return ph == 1 ? LpStatus::NumFail : LpStatus::Unbounded;
                }
                double delta = range;
                apply_step(q, dir, delta);
                x_[q] = dir > 0 ? upp(q) : low(q);
                vstat_[q] = dir > 0 ? kAtUpper : kAtLower;
                track_stall(delta);
            } else {
                double delta = best_ratio;
                if (std::fabs(leave_alpha) < 1e-11) {
                    if (++refresh > 3) return LpStatus::NumFail;
                    if (!refactor_and_recompute()) return LpStatus::NumFail;
                    continue;
                }
                apply_step(q, dir, delta);
                int vout = basis_[leave];
                // Land the leaving variable exactly on the bound that blocked.
                x_[vout] = leave_bound;
                vstat_[vout] = leave_bound == low(vout) ? kAtLower : kAtUpper;
                basis_[leave] = q;
                vstat_[q] = kBasic;
                push_eta(leave);
                track_stall(delta);
                if ((int)etas_.size() >= opt_.refactor_every)
                    if (!refactor_and_recompute()) return LpStatus::NumFail;
            }
            ++iters_;
        }
    }

    void apply_step(int q, int dir, double delta) {
        if (delta != 0.0) {
            for (int i = 0; i < m_; ++i) {
                if (alpha_[i] == 0.0) continue;
                x_[basis_[i]] -= dir * delta * alpha_[i];
            }
            x_[q] += dir * delta;
        }
    }

    void push_eta(int pos) {
        Eta e;
        e.pos = pos;
        e.diag = alpha_[pos];
        for (int i = 0; i < m_; ++i)
            if (i != pos && std::fabs(alpha_[i]) > 1e-13) e.terms.push_back({i, alpha_[i]});
        etas_.push_back(std::move(e));
    }

    void track_stall(double delta) {
        if (delta > 1e-12) {
            stall_ = 0;
            bland_ = false;
        } else if (++stall_ > opt_.stall_limit) {
            bland_ = true;
        }
    }

    void finish(LpResult& res, SimplexState* state) {
        res.iterations = iters_;
        res.x.assign(x_.begin(), x_.begin() + n_);
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += lp_.cost[j] * x_[j];
        res.objective = (lp_.maximize ? -obj : obj) + lp_.obj_constant;
        if (state) {
            state->basis = basis_;
            state->vstat = vstat_;
        }
    }
};

} // namespace

LpResult solve_lp(const LpInstance& lp, const std::vector<double>& lb,
                  const std::vector<double>& ub, SimplexState* state,
                  const SimplexOptions& opt) {
    Simplex s(lp, lb, ub, opt);
    return s.run(state);
}

} // namespace mgp
