#include "mgp/bilevel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <random>
#include <unordered_map>

namespace mgp {

namespace {

std::mutex cache_mu;
std::unordered_map<std::string, TupleRecord> cache;

std::string cache_key(const ScenarioConfig& s, double price, double fit) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%016llx:%.12g:%.12g",
                  (unsigned long long)scenario_hash(s), price, fit);
    return buf;
}

TupleRecord evaluate_tuple(const ScenarioConfig& s, double price, double fit,
                           const SolverConfig& solver) {
    std::string key = cache_key(s, price, fit);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    TupleRecord ev;
    ev.policy = {price, fit};
    DgcModel m = build_dgc_model(s, {price, fit}, 1);
    if (!m.ok()) {
        ev.note = m.error;
    } else {
        MipSolution sol;
        std::string err;
        if (!solve_mip(m.program, solver, &sol, &err)) {
            ev.note = err;
        } else if (sol.status != SolveStatus::Optimal) {
            ev.note = std::string("solver status ") + to_string(sol.status) +
                      (sol.note.empty() ? "" : ": " + sol.note);
        } else {
            DgcPlan plan;
            if (!decode_plan(m, sol, &plan, &err))
                ev.note = err;
            else
                ev = plan_record(plan, {price, fit}, s);
        }
    }

    // Only proved-optimal evaluations are worth keeping: a limit hit under
    // one solver config must not shadow a later solve under a stronger one.
    if (!ev.resolved) return ev;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto [it, inserted] = cache.emplace(std::move(key), std::move(ev));
    return it->second;
}

} // namespace

void clear_policy_cache() {
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.clear();
}

std::vector<Violation> validate(const GridSpec& g) {
    std::vector<Violation> v;
    if (!(std::isfinite(g.price_step) && g.price_step > 0.0))
        v.push_back({"grid.price_step", "must be > 0"});
    if (!(std::isfinite(g.fit_step) && g.fit_step > 0.0))
        v.push_back({"grid.fit_step", "must be > 0"});
    if (!(std::isfinite(g.price_lo) && g.price_lo >= 0.0))
        v.push_back({"grid.price_lo", "must be finite and >= 0"});
    if (!(std::isfinite(g.fit_lo) && g.fit_lo >= 0.0))
        v.push_back({"grid.fit_lo", "must be finite and >= 0"});
    if (!(std::isfinite(g.price_hi) && g.price_hi >= g.price_lo))
        v.push_back({"grid.price_hi", "must be finite and >= price_lo"});
    if (!(std::isfinite(g.fit_hi) && g.fit_hi >= g.fit_lo))
        v.push_back({"grid.fit_hi", "must be finite and >= fit_lo"});
    return v;
}

std::vector<double> grid_axis(double lo, double hi, double step) {
    std::vector<double> values;
    if (!(step > 0.0) || hi < lo) return values;
    int n = (int)std::floor((hi - lo) / step + 1e-9);
    values.reserve(n + 1);
    for (int k = 0; k <= n; ++k) values.push_back(lo + k * step);
    return values;
}

double hes(const DgcPlan& plan, PolicyTuple policy, const ScenarioConfig& s) {
    const TimeGrid& t = s.time;
    double total = 0.0;
    for (int y = 0; y < t.years; ++y) {
        double feed = 0.0;
        for (int d = 0; d < t.days(); ++d) {
            double w = t.day_weights[d];
            for (int h = 0; h < t.hours; ++h)
                feed += w * (plan.feed_in[0].at(y, d, h) +
                             plan.feed_in[1].at(y, d, h));
        }
        double year = plan.served[y] * (s.voll - policy.price) + feed * policy.fit;
        total += year * std::pow(1.0 + s.discount_re, -y);
    }
    return total;
}

TupleRecord plan_record(const DgcPlan& plan, PolicyTuple policy,
                        const ScenarioConfig& s) {
    TupleRecord ev;
    ev.policy = policy;
    ev.resolved = true;
    ev.npv = plan.npv;
    ev.hes = hes(plan, policy, s);
    const TimeGrid& t = s.time;
    double demand = 0.0, unmet = 0.0, feed = 0.0;
    for (int y = 0; y < t.years; ++y)
        for (int d = 0; d < t.days(); ++d) {
            double w = t.day_weights[d];
            for (int h = 0; h < t.hours; ++h) {
                demand += w * total_demand(s, y, d, h);
                unmet += w * plan.unmet.at(y, d, h);
                feed += w * (plan.feed_in[0].at(y, d, h) +
                             plan.feed_in[1].at(y, d, h));
            }
        }
    double served = demand - unmet;
    ev.served_kwh = served;
    ev.feed_in_kwh = feed;
    ev.unmet_kwh = unmet;
    ev.feed_in_share = served > 0.0 ? feed / served : 0.0;
    ev.unmet_share = demand > 0.0 ? unmet / demand : 0.0;
    ev.low_feed_in = ev.feed_in_share < 0.05;
    for (int g = 0; g < kNumTech; ++g)
        ev.final_capacity[g] = plan.capacity[g].back();
    return ev;
}

PolicyStudy run_grid_eval(const ScenarioConfig& s, const GridSpec& grid, double npv0,
                          const std::function<TupleRecord(double, double)>& eval) {
    PolicyStudy study;
    study.grid = grid;
    study.npv0 = npv0;

    auto gv = validate(grid);
    if (!gv.empty()) {
        study.error = gv.front().field + ": " + gv.front().message;
        return study;
    }
    auto sv = validate(s);
    if (!sv.empty()) {
        study.error = "invalid scenario: " + sv.front().field + ": " +
                      sv.front().message;
        return study;
    }

    const double slack = 1e-6 * std::fabs(npv0);
    std::vector<double> prices = grid_axis(grid.price_lo, grid.price_hi, grid.price_step);
    std::vector<double> fits = grid_axis(grid.fit_lo, grid.fit_hi, grid.fit_step);

    for (double p : prices) {
        bool any_feasible = false;
        double best_fit = 0.0;
        for (double f : fits) {
            if (f > p + 1e-9) break;
            TupleRecord rec = eval(p, f);
            rec.policy = {p, f};
            rec.low_feed_in = rec.feed_in_share < 0.05;
            rec.feasible = rec.resolved && rec.npv >= npv0 - slack;
            if (!rec.resolved) ++study.unresolved;
            if (rec.feasible) {
                any_feasible = true;
                best_fit = f;
            }
            study.records.push_back(std::move(rec));
        }
        if (any_feasible) study.frontier.push_back({p, best_fit});
    }

    const TupleRecord* best = nullptr;
    for (const TupleRecord& r : study.records) {
        if (!r.feasible) continue;
        if (!best || r.hes > best->hes) {
            best = &r;
        } else if (r.hes == best->hes) {
            if (r.policy.price < best->policy.price ||
                (r.policy.price == best->policy.price &&
                 r.policy.fit > best->policy.fit))
                best = &r;
        }
    }
    if (best) {
        study.best = best->policy;
        study.best_hes = best->hes;
    }
    return study;
}

PolicyStudy run_grid(const ScenarioConfig& s, const GridSpec& grid, double npv0,
                     const SolverConfig& solver) {
    return run_grid_eval(s, grid, npv0, [&](double p, double f) {
        return evaluate_tuple(s, p, f, solver);
    });
}

void write_study_csv(const PolicyStudy& study, std::ostream& os) {
    os << "P,FiT,npv,hes,feasible,feed_in_share,unmet_share\n";
    char buf[256];
    for (const TupleRecord& r : study.records) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%d,%.10g,%.10g\n",
                      r.policy.price, r.policy.fit, r.npv, r.hes,
                      r.feasible ? 1 : 0, r.feed_in_share, r.unmet_share);
        os << buf;
    }
}

Lemma1Report check_lemma1(const ScenarioConfig& s, int samples,
                          const SolverConfig& solver, uint64_t seed) {
    Lemma1Report report;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double step = 0.01;
    char buf[160];

    for (int k = 0; k < samples; ++k) {
        double price = 0.05 + 0.35 * u01(rng);
        double fit = u01(rng) * std::max(0.0, price - step - 1e-9);
        TupleRecord base = evaluate_tuple(s, price, fit, solver);
        TupleRecord up_p = evaluate_tuple(s, price + step, fit, solver);
        TupleRecord up_f = evaluate_tuple(s, price, fit + step, solver);
        if (!base.resolved || !up_p.resolved || !up_f.resolved) {
            std::snprintf(buf, sizeof buf, "unresolved tuple near (%.4f, %.4f)",
                          price, fit);
            report.violations.push_back(buf);
            continue;
        }
        double tol = 1e-6 * std::max(1.0, std::fabs(base.npv));
        report.comparisons += 2;
        if (up_p.npv < base.npv - tol) {
            std::snprintf(buf, sizeof buf,
                          "npv fell when price rose: (%.4f,%.4f) %.6f -> %.6f",
                          price, fit, base.npv, up_p.npv);
            report.violations.push_back(buf);
        }
        if (up_f.npv > base.npv + tol) {
            std::snprintf(buf, sizeof buf,
                          "npv rose when tariff rose: (%.4f,%.4f) %.6f -> %.6f",
                          price, fit, base.npv, up_f.npv);
            report.violations.push_back(buf);
        }
    }
    return report;
}

} // namespace mgp
