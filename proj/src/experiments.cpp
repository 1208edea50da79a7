#include "mgp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace mgp {

namespace {

// Weighted horizon energy sums, kWh. `excess` is household generation beyond
// own use (the feed-in ceiling ignoring the renewables gate); `potential` is
// everything the rooftop panels could produce.
struct EnergyTotals {
    double demand = 0.0, unmet = 0.0, served = 0.0;
    double feed = 0.0, dg = 0.0, pv = 0.0;
    double excess = 0.0, potential = 0.0;
};

EnergyTotals energy_totals(const DgcPlan& plan, const ScenarioConfig& s) {
    EnergyTotals t;
    const TimeGrid& tg = s.time;
    for (int y = 0; y < tg.years; ++y)
        for (int d = 0; d < tg.days(); ++d) {
            double w = tg.day_weights[d];
            for (int h = 0; h < tg.hours; ++h) {
                t.demand += w * total_demand(s, y, d, h);
                t.unmet += w * plan.unmet.at(y, d, h);
                t.dg += w * plan.dispatch[0].at(y, d, h);
                t.pv += w * plan.dispatch[1].at(y, d, h);
                for (int i = 0; i < 2; ++i) {
                    t.feed += w * plan.feed_in[i].at(y, d, h);
                    double ex = s.households[i].count_by_year[y] *
                                surplus(s, i, y, d, h);
                    if (ex > 0.0) t.excess += w * ex;
                }
                t.potential += w * s.households[kPvOwner].count_by_year[y] *
                               s.households[kPvOwner].pv_kw * s.solar_cf.at(y, d, h);
            }
        }
    t.served = t.demand - t.unmet;
    return t;
}

std::string status_note(const MipSolution& sol) {
    std::string n = std::string("solver status ") + to_string(sol.status);
    if (!sol.note.empty()) n += ": " + sol.note;
    return n;
}

// Build, solve and decode one follower program. Returns an empty string on
// success; `capped` (finite) adds the unmet-energy ceiling row first.
std::string solve_plan(const ScenarioConfig& s, PolicyTuple policy, int beta,
                       const SolverConfig& solver, double cap_kwh, DgcPlan* plan) {
    DgcModel m = build_dgc_model(s, policy, beta);
    if (!m.ok()) return m.error;
    MipSolution sol;
    std::string err;
    bool done = std::isfinite(cap_kwh)
                    ? solve_mip(add_unmet_cap(m, cap_kwh), solver, &sol, &err)
                    : solve_mip(m.program, solver, &sol, &err);
    if (!done) return err;
    if (sol.status != SolveStatus::Optimal) return status_note(sol);
    if (!decode_plan(m, sol, plan, &err)) return err;
    return "";
}

double discounted_capex(const DgcPlan& plan, const ScenarioConfig& s) {
    double total = 0.0;
    for (size_t y = 0; y < plan.capex_cost.size(); ++y)
        total += plan.capex_cost[y] * std::pow(1.0 + s.discount_dgc, -(double)y);
    return total;
}

void attach_best(const PolicyStudy& study, const ScenarioConfig& s,
                 const SolverConfig& solver, double cap_kwh,
                 std::optional<DgcPlan>* plan_out,
                 std::optional<MetricSet>* metrics_out, std::string* error) {
    if (!study.best) return;
    DgcPlan plan;
    std::string err = solve_plan(s, *study.best, 1, solver, cap_kwh, &plan);
    if (!err.empty()) {
        if (error) *error = "best tuple re-solve: " + err;
        return;
    }
    if (metrics_out) *metrics_out = metrics(plan, s, *study.best);
    if (plan_out) *plan_out = std::move(plan);
}

} // namespace

MetricSet metrics(const DgcPlan& plan, const ScenarioConfig& s, PolicyTuple policy) {
    MetricSet m;
    m.price = policy.price;
    m.fit = policy.fit;
    m.hes = hes(plan, policy, s);
    m.npv = plan.npv;
    EnergyTotals t = energy_totals(plan, s);
    if (t.demand > 0.0) m.unmet_pct = 100.0 * t.unmet / t.demand;
    if (t.potential > 0.0)
        m.wasted_excess_pct = 100.0 * std::max(0.0, t.excess - t.feed) / t.potential;
    if (t.served > 0.0) m.re_penetration_pct = 100.0 * (t.pv + t.feed) / t.served;
    return m;
}

Benchmark run_benchmark(const ScenarioConfig& s, const SolverConfig& solver) {
    Benchmark b;
    ScenarioConfig sq = s;
    sq.budget = kInf; // the reference point asks what current operations need
    PolicyTuple p0 = {sq.status_quo_price, 0.0};
    std::string err = solve_plan(sq, p0, 0, solver, kInf, &b.plan);
    if (!err.empty()) {
        b.error = err;
        return b;
    }
    b.npv0 = b.plan.npv;
    b.budget0 = discounted_capex(b.plan, sq);
    const TimeGrid& tg = sq.time;
    for (int y = 0; y < tg.years; ++y)
        for (int d = 0; d < tg.days(); ++d)
            for (int h = 0; h < tg.hours; ++h)
                b.unmet0_kwh += tg.day_weights[d] * b.plan.unmet.at(y, d, h);
    b.metrics0 = metrics(b.plan, sq, p0);
    b.metrics0.fit.reset(); // no tariff exists under the status quo
    return b;
}

CaseReport run_case(const ScenarioConfig& s, const GridSpec& grid,
                    const SolverConfig& solver) {
    CaseReport r;
    r.bench = run_benchmark(s, solver);
    if (!r.bench.ok()) {
        r.error = "benchmark: " + r.bench.error;
        return r;
    }
    ScenarioConfig sc = s;
    if (!std::isfinite(sc.budget)) sc.budget = r.bench.budget0;
    r.study_budget = sc.budget;
    r.study = run_grid(sc, grid, r.bench.npv0, solver);
    if (!r.study.error.empty()) {
        r.error = "study: " + r.study.error;
        return r;
    }
    attach_best(r.study, sc, solver, kInf, &r.best_plan, &r.best_metrics, &r.error);
    return r;
}

CaseReport run_case_capped(const ScenarioConfig& s, std::optional<double> cap_kwh,
                           const GridSpec& grid, const SolverConfig& solver) {
    CaseReport r;
    r.bench = run_benchmark(s, solver);
    if (!r.bench.ok()) {
        r.error = "benchmark: " + r.bench.error;
        return r;
    }
    r.unmet_cap = cap_kwh ? *cap_kwh : r.bench.unmet0_kwh;
    ScenarioConfig sc = s;
    if (!std::isfinite(sc.budget)) sc.budget = r.bench.budget0;
    r.study_budget = sc.budget;
    r.study = ud_constrained_run(sc, r.unmet_cap, r.bench.npv0, grid, solver);
    if (!r.study.error.empty()) {
        r.error = "study: " + r.study.error;
        return r;
    }
    attach_best(r.study, sc, solver, r.unmet_cap, &r.best_plan, &r.best_metrics,
                &r.error);
    return r;
}

BudgetSweep budget_sweep(const ScenarioConfig& s, const std::vector<double>& budgets,
                         const GridSpec& grid, const SolverConfig& solver) {
    BudgetSweep sw;
    sw.bench = run_benchmark(s, solver);
    if (!sw.bench.ok()) {
        sw.error = "benchmark: " + sw.bench.error;
        return sw;
    }
    for (double pi : budgets) {
        BudgetPoint pt;
        pt.budget = pi;
        ScenarioConfig sc = s;
        sc.budget = pi;
        pt.study = run_grid(sc, grid, sw.bench.npv0, solver);
        attach_best(pt.study, sc, solver, kInf, nullptr, &pt.best_metrics, nullptr);
        sw.points.push_back(std::move(pt));
    }
    return sw;
}

ShareSweep pv_share_sweep(const ScenarioConfig& s, const std::vector<double>& shares,
                          const GridSpec& grid, const SolverConfig& solver) {
    ShareSweep sw;
    for (double share : shares) {
        SharePoint pt;
        pt.share = share;
        ScenarioConfig sc = s;
        int years = sc.time.years;
        for (int y = 0; y < years; ++y) {
            double total = s.households[kNonPvOwner].count_by_year[y] +
                           s.households[kPvOwner].count_by_year[y];
            double pv = std::round(share * total);
            sc.households[kPvOwner].count_by_year[y] = pv;
            sc.households[kNonPvOwner].count_by_year[y] = total - pv;
        }
        if (!sc.households[kPvOwner].count_by_year.empty())
            pt.pv_households = sc.households[kPvOwner].count_by_year[0];

        pt.bench = run_benchmark(sc, solver);
        if (!pt.bench.ok()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "share %.4g benchmark: ", share);
            sw.error = buf + pt.bench.error;
            sw.points.push_back(std::move(pt));
            return sw;
        }
        ScenarioConfig sg = sc;
        if (!std::isfinite(sg.budget)) sg.budget = pt.bench.budget0;
        pt.study = run_grid(sg, grid, pt.bench.npv0, solver);
        attach_best(pt.study, sg, solver, kInf, nullptr, &pt.best_metrics, nullptr);
        double hes0 = hes(pt.bench.plan, {sc.status_quo_price, 0.0}, sc);
        if (pt.study.best) pt.delta_hes = pt.study.best_hes - hes0;
        sw.points.push_back(std::move(pt));
    }
    return sw;
}

PolicyStudy ud_constrained_run(const ScenarioConfig& s, double cap_kwh, double npv0,
                               const GridSpec& grid, const SolverConfig& solver) {
    // Bypasses the shared cache on purpose: its key does not know about the
    // extra cap row, so capped and plain evaluations must never mix.
    return run_grid_eval(s, grid, npv0, [&](double p, double f) {
        TupleRecord ev;
        ev.policy = {p, f};
        DgcModel m = build_dgc_model(s, {p, f}, 1);
        if (!m.ok()) {
            ev.note = m.error;
            return ev;
        }
        MipSolution sol;
        std::string err;
        if (!solve_mip(add_unmet_cap(m, cap_kwh), solver, &sol, &err)) {
            ev.note = err;
            return ev;
        }
        if (sol.status == SolveStatus::Infeasible) {
            // A proof, not a failure: the cap cannot be met at this tuple.
            ev.resolved = true;
            ev.npv = -kInf;
            ev.note = "infeasible under unmet cap";
            return ev;
        }
        if (sol.status != SolveStatus::Optimal) {
            ev.note = status_note(sol);
            return ev;
        }
        DgcPlan plan;
        if (!decode_plan(m, sol, &plan, &err)) {
            ev.note = err;
            return ev;
        }
        return plan_record(plan, {p, f}, s);
    });
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

bool write_file(const std::filesystem::path& p, const std::string& body,
                std::string* error) {
    std::ofstream os(p, std::ios::binary);
    if (!os) {
        *error = "cannot open " + p.string();
        return false;
    }
    os << body;
    os.flush();
    if (!os) {
        *error = "write failed: " + p.string();
        return false;
    }
    return true;
}

void capacity_rows(std::ostream& os, const char* label, const DgcPlan& plan) {
    for (int g = 0; g < kNumTech; ++g)
        for (size_t y = 0; y < plan.capacity[g].size(); ++y)
            os << label << ',' << y << ',' << tech_name((Tech)g) << ','
               << fmt(plan.capacity[g][y]) << ',' << fmt(plan.additions[g][y])
               << ',' << fmt(plan.retired[g][y]) << '\n';
}

void generation_rows(std::ostream& os, const char* label, const DgcPlan& plan,
                     const ScenarioConfig& s) {
    const TimeGrid& tg = s.time;
    for (int y = 0; y < tg.years && y < (int)plan.served.size(); ++y) {
        double dg = 0.0, pv = 0.0, feed = 0.0, unmet = 0.0;
        for (int d = 0; d < tg.days(); ++d) {
            double w = tg.day_weights[d];
            for (int h = 0; h < tg.hours; ++h) {
                dg += w * plan.dispatch[0].at(y, d, h);
                pv += w * plan.dispatch[1].at(y, d, h);
                feed += w * (plan.feed_in[0].at(y, d, h) +
                             plan.feed_in[1].at(y, d, h));
                unmet += w * plan.unmet.at(y, d, h);
            }
        }
        os << label << ',' << y << ',' << fmt(dg) << ',' << fmt(pv) << ','
           << fmt(feed) << ',' << fmt(unmet) << ',' << fmt(plan.served[y])
           << '\n';
    }
}

} // namespace

std::string export_report(const CaseReport& r, const ScenarioConfig& s,
                          const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::path root(dir);
    fs::create_directories(root, ec);
    if (ec) return "cannot create " + dir + ": " + ec.message();
    std::string error;

    std::ostringstream study;
    write_study_csv(r.study, study);
    if (!write_file(root / "study.csv", study.str(), &error)) return error;

    std::ostringstream frontier;
    frontier << "P,max_feasible_FiT\n";
    for (const FrontierPoint& f : r.study.frontier)
        frontier << fmt(f.price) << ',' << fmt(f.fit) << '\n';
    if (!write_file(root / "frontier.csv", frontier.str(), &error)) return error;

    bool have_bench = r.bench.ok() && !r.bench.plan.served.empty();

    std::ostringstream cap;
    cap << "case,year,tech,installed_kw,added_kw,retired_kw\n";
    if (have_bench) capacity_rows(cap, "status_quo", r.bench.plan);
    if (r.best_plan) capacity_rows(cap, "proposed", *r.best_plan);
    if (!write_file(root / "capacity.csv", cap.str(), &error)) return error;

    std::ostringstream gen;
    gen << "case,year,dg_kwh,dgc_pv_kwh,feed_in_kwh,unmet_kwh,served_kwh\n";
    if (have_bench) generation_rows(gen, "status_quo", r.bench.plan, s);
    if (r.best_plan) generation_rows(gen, "proposed", *r.best_plan, s);
    if (!write_file(root / "generation.csv", gen.str(), &error)) return error;

    std::ostringstream t4;
    t4 << "metric,status_quo,proposed\n";
    if (have_bench) {
        const MetricSet& m0 = r.bench.metrics0;
        std::optional<MetricSet> mb = r.best_metrics;
        double hes0 = hes(r.bench.plan, {s.status_quo_price, 0.0}, s);
        auto opt = [&](auto get) -> std::string {
            return mb ? fmt(get(*mb)) : "NA";
        };
        t4 << "NPV DGC (USD)," << fmt(r.bench.npv0) << ','
           << opt([](const MetricSet& m) { return m.npv; }) << '\n';
        t4 << "Budget (USD)," << fmt(r.bench.budget0) << ','
           << (r.best_plan ? fmt(r.study_budget) : "NA") << '\n';
        t4 << "HES (USD)," << fmt(hes0) << ','
           << opt([](const MetricSet& m) { return m.hes; }) << '\n';
        t4 << "Unmet demand (%)," << fmt(m0.unmet_pct) << ','
           << (mb ? fmt(mb->unmet_pct) : "NA") << '\n';
        t4 << "Wasted excess PV generation potential (%),"
           << fmt(m0.wasted_excess_pct) << ','
           << (mb ? fmt(mb->wasted_excess_pct) : "NA") << '\n';
        t4 << "Price (USD/kWh)," << fmt(m0.price) << ','
           << opt([](const MetricSet& m) { return m.price; }) << '\n';
        t4 << "Feed-in Tariff (USD/kWh)," << fmt(m0.fit) << ','
           << (mb ? fmt(mb->fit) : "NA") << '\n';
        t4 << "Renewable energy penetration (%)," << fmt(m0.re_penetration_pct)
           << ',' << (mb ? fmt(mb->re_penetration_pct) : "NA") << '\n';
    }
    if (!write_file(root / "table4.csv", t4.str(), &error)) return error;

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["benchmark"] = {{"npv0", r.bench.npv0},
                      {"budget0", r.bench.budget0},
                      {"unmet0_kwh", r.bench.unmet0_kwh},
                      {"ok", r.bench.ok()}};
    j["study"] = {{"budget", r.study_budget},
                  {"tuples", r.study.records.size()},
                  {"unresolved", r.study.unresolved},
                  {"frontier_points", r.study.frontier.size()}};
    if (std::isfinite(r.unmet_cap)) j["study"]["unmet_cap_kwh"] = r.unmet_cap;
    if (r.study.best) {
        j["best"] = {{"price", r.study.best->price},
                     {"fit", r.study.best->fit},
                     {"hes", r.study.best_hes}};
        if (r.best_metrics) {
            const MetricSet& m = *r.best_metrics;
            nlohmann::ordered_json jm;
            jm["npv"] = m.npv;
            if (m.unmet_pct) jm["unmet_pct"] = *m.unmet_pct;
            if (m.wasted_excess_pct) jm["wasted_excess_pct"] = *m.wasted_excess_pct;
            if (m.re_penetration_pct)
                jm["re_penetration_pct"] = *m.re_penetration_pct;
            j["best"]["metrics"] = jm;
        }
    } else {
        j["best"] = nullptr;
    }
    if (!r.error.empty()) j["error"] = r.error;
    if (!write_file(root / "summary.json", j.dump(2) + "\n", &error)) return error;
    return "";
}

} // namespace mgp
