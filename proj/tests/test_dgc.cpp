#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mgp/dgc_program.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mgp/solver.hpp"
#include "test_util.hpp"

using namespace mgp;
using doctest::Approx;
using test::tiny_scenario;

namespace {

MipSolution solve_model(const DgcModel& m) {
    REQUIRE(m.ok());
    REQUIRE(m.program.validate().empty());
    SolverConfig cfg;
    MipSolution sol;
    std::string err;
    bool ok = solve_mip(m.program, cfg, &sol, &err);
    CAPTURE(err);
    REQUIRE(ok);
    REQUIRE(sol.status == SolveStatus::Optimal);
    return sol;
}

DgcPlan decode_model(const DgcModel& m, const MipSolution& sol) {
    DgcPlan plan;
    std::string err;
    bool ok = decode_plan(m, sol, &plan, &err);
    CAPTURE(err);
    REQUIRE(ok);
    return plan;
}

// Checks every structural law a decoded plan must satisfy, independent of
// which scenario produced it.
void check_plan_invariants(const DgcModel& m, const MipSolution& sol,
                           const DgcPlan& plan) {
    const ScenarioConfig& s = m.scenario;
    const VariableLayout& L = m.layout;
    const int Y = L.years, Dd = L.days, H = L.hours;
    const double rho[3] = {s.heat_rate.rho1, s.heat_rate.rho2, s.heat_rate.rho3};
    const double eta = s.battery.efficiency;
    const double dur = BatteryParams::duration_hours;
    const double mtol = 1e-5 * std::max(1.0, heat_rate_big_m(s));

    for (int y = 0; y < Y; ++y) {
        double cdg = plan.capacity[(int)Tech::DG][y];
        double cpv = plan.capacity[(int)Tech::PV][y];
        double cb = plan.capacity[(int)Tech::Battery][y];
        double ctol = 1e-6 * std::max(1.0, cdg + cpv + cb);
        for (int d = 0; d < Dd; ++d) {
            for (int h = 0; h < H; ++h) {
                double demand = total_demand(s, y, d, h);
                double supply = plan.unmet.at(y, d, h) + plan.discharge.at(y, d, h) +
                                plan.dispatch[0].at(y, d, h) +
                                plan.dispatch[1].at(y, d, h) +
                                plan.feed_in[0].at(y, d, h) +
                                plan.feed_in[1].at(y, d, h) - plan.charge.at(y, d, h);
                CHECK(std::fabs(supply - demand) <= 1e-6 * std::max(1.0, demand));
                CHECK(plan.unmet.at(y, d, h) <= demand + 1e-6 * std::max(1.0, demand));

                double dv = plan.dispatch[0].at(y, d, h);
                double pv = plan.dispatch[1].at(y, d, h);
                double r = plan.fuel.at(y, d, h);
                CHECK(dv <= cdg + ctol);
                CHECK(pv <= s.solar_cf.at(y, d, h) * cpv + ctol);
                CHECK(plan.charge.at(y, d, h) <= cb + ctol);
                CHECK(plan.discharge.at(y, d, h) <= cb + ctol);
                for (int i = 0; i < 2; ++i) {
                    double cap = m.beta == 0 ? 0.0 : feed_in_cap(s, i, y, d, h);
                    CHECK(plan.feed_in[i].at(y, d, h) <= cap + 1e-6 * std::max(1.0, cap));
                }

                double b1 = sol.x[L.b1(y, d, h)], b2 = sol.x[L.b2(y, d, h)];
                CHECK(std::fabs(b1 - std::round(b1)) <= 1e-6);
                CHECK(std::fabs(b2 - std::round(b2)) <= 1e-6);
                CHECK(b1 + b2 <= 1.0 + 1e-6);
                if (b1 > 0.5) {
                    CHECK(dv <= 0.30 * cdg + mtol);
                    CHECK(std::fabs(r - rho[0] * dv) <= mtol);
                } else if (b2 > 0.5) {
                    CHECK(dv >= 0.30 * cdg - mtol);
                    CHECK(dv <= 0.60 * cdg + mtol);
                    CHECK(std::fabs(r - rho[1] * dv) <= mtol);
                } else {
                    CHECK(dv >= 0.60 * cdg - mtol);
                    CHECK(std::fabs(r - rho[2] * dv) <= mtol);
                }
                if (dv <= 1e-9) CHECK(r <= mtol);

                double prev = h == 0 ? plan.soc_start[(size_t)y * Dd + d]
                                     : plan.soc.at(y, d, h - 1);
                double soc = plan.soc.at(y, d, h);
                double stol = 1e-5 * std::max(1.0, dur * cb);
                CHECK(std::fabs(soc - (prev + eta * plan.charge.at(y, d, h) -
                                       plan.discharge.at(y, d, h) / eta)) <= stol);
                CHECK(soc <= dur * cb + stol);
                CHECK(soc >= s.battery.min_soc_fraction * dur * cb - stol);
            }
            CHECK(std::fabs(plan.soc_start[(size_t)y * Dd + d] -
                            plan.soc.at(y, d, H - 1)) <=
                  1e-5 * std::max(1.0, dur * cb));
        }
    }

    for (int g = 0; g < kNumTech; ++g) {
        const Technology& tg = s.tech[g];
        for (int y = 0; y < Y; ++y) {
            double prev = y == 0 ? tg.initial_kw : plan.capacity[g][y - 1];
            double want = prev + plan.additions[g][y] - plan.retired[g][y];
            CHECK(std::fabs(plan.capacity[g][y] - want) <=
                  1e-6 * std::max(1.0, std::fabs(prev) + plan.additions[g][y]));
            double ret = (y == tg.remaining_life ? tg.initial_kw : 0.0) +
                         (y >= tg.lifetime ? plan.additions[g][y - tg.lifetime] : 0.0);
            CHECK(std::fabs(plan.retired[g][y] - ret) <=
                  1e-6 * std::max(1.0, ret));
        }
    }

    if (s.budget != kInf) {
        double spent = 0.0;
        for (int g = 0; g < kNumTech; ++g)
            for (int y = 0; y < Y; ++y)
                spent += s.tech[g].capex_by_year[y] * plan.additions[g][y] *
                         std::pow(1.0 + s.discount_dgc, -y);
        CHECK(spent <= s.budget * (1.0 + 1e-6) + 1e-6);
    }

    if (m.beta == 0) {
        for (int g : {(int)Tech::PV, (int)Tech::Battery})
            for (int y = 0; y < Y; ++y) {
                CHECK(plan.additions[g][y] <= 1e-9);
                CHECK(plan.capacity[g][y] <= 1e-9);
            }
        for (int i = 0; i < 2; ++i)
            for (double v : plan.feed_in[i].data()) CHECK(v <= 1e-9);
    }

    CHECK(plan.objective ==
          Approx(sol.objective).epsilon(1e-5).scale(std::max(1.0, std::fabs(sol.objective))));
}

} // namespace

TEST_CASE("salvage window matches the worked examples") {
    CHECK(salvage_window(15, 5) == std::pair<int, int>{10, 14});
    CHECK(salvage_window(15, 20) == std::pair<int, int>{0, 14});
    CHECK(salvage_window(1, 1) == std::pair<int, int>{0, 0});
    CHECK(salvage_window(10, 3) == std::pair<int, int>{7, 9});
}

TEST_CASE("variable layout is dense and collision-free") {
    TimeGrid t;
    t.years = 2;
    t.hours = 24;
    t.day_weights = {200.0, 100.0, 65.0};
    VariableLayout L = make_layout(t);

    std::vector<int> hits(L.total, 0);
    auto mark = [&](int idx) {
        REQUIRE(idx >= 0);
        REQUIRE(idx < L.total);
        ++hits[idx];
    };
    for (int g = 0; g < kNumTech; ++g)
        for (int y = 0; y < 2; ++y) {
            mark(L.a((Tech)g, y));
            mark(L.c((Tech)g, y));
            mark(L.ret((Tech)g, y));
        }
    for (Tech g : kGenTech)
        for (int y = 0; y < 2; ++y)
            for (int d = 0; d < 3; ++d)
                for (int h = 0; h < 24; ++h) mark(L.d(g, y, d, h));
    for (int y = 0; y < 2; ++y)
        for (int d = 0; d < 3; ++d) {
            mark(L.soc0(y, d));
            for (int h = 0; h < 24; ++h) {
                mark(L.bp(y, d, h));
                mark(L.bm(y, d, h));
                mark(L.soc(y, d, h));
                mark(L.u(y, d, h));
                mark(L.r(y, d, h));
                mark(L.b1(y, d, h));
                mark(L.b2(y, d, h));
                for (int i = 0; i < 2; ++i) mark(L.fi(i, y, d, h));
            }
        }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; }));
}

TEST_CASE("a one-year single-day model has 48 binaries and named variables") {
    ScenarioConfig s = tiny_scenario();
    DgcModel m = build_dgc_model(s, {0.4, 0.1}, 1);
    REQUIRE(m.ok());
    CHECK(m.program.validate().empty());
    CHECK(m.program.num_integer() == 48);
    CHECK((int)m.program.num_vars() == m.layout.total);
    CHECK(m.layout.total == 274);

    const VariableLayout& L = m.layout;
    CHECK(m.program.vars[L.a(Tech::DG, 0)].name == "A(DG,0)");
    CHECK(m.program.vars[L.c(Tech::Battery, 0)].name == "C(B,0)");
    CHECK(m.program.vars[L.d(Tech::PV, 0, 0, 13)].name == "D(PV,0,0,13)");
    CHECK(m.program.vars[L.fi(1, 0, 0, 7)].name == "Fi(1,0,0,7)");
    CHECK(m.program.vars[L.soc0(0, 0)].name == "SoC0(0,0)");
    CHECK(m.program.vars[L.b2(0, 0, 23)].name == "b2(0,0,23)");
    for (int h = 0; h < 24; ++h) {
        CHECK(m.program.vars[L.b1(0, 0, h)].integer);
        CHECK(m.program.vars[L.b2(0, 0, h)].integer);
    }

    DgcModel again = build_dgc_model(s, {0.4, 0.1}, 1);
    CHECK(m.program == again.program);
}

TEST_CASE("build rejects bad policy, beta, and scenarios") {
    ScenarioConfig s = tiny_scenario();
    CHECK_FALSE(build_dgc_model(s, {0.2, 0.3}, 1).ok());
    CHECK(build_dgc_model(s, {0.2, 0.3}, 1).error.find("fit") != std::string::npos);
    CHECK_FALSE(build_dgc_model(s, {-0.1, 0.0}, 1).ok());
    CHECK_FALSE(build_dgc_model(s, {0.4, 0.1}, 2).ok());
    CHECK(build_dgc_model(s, {0.4, 0.1}, 2).error.find("beta") != std::string::npos);

    ScenarioConfig bad = s;
    bad.time.years = 0;
    DgcModel m = build_dgc_model(bad, {0.4, 0.1}, 1);
    CHECK_FALSE(m.ok());
    CHECK(m.error.find("invalid scenario") != std::string::npos);

    CHECK(build_dgc_model(s, {0.0, 0.0}, 1).ok());
}

TEST_CASE("feed-in bounds follow the household surplus") {
    ScenarioConfig s = tiny_scenario();
    s.households[kPvOwner].pv_kw = 3.0;
    DgcModel m = build_dgc_model(s, {0.4, 0.1}, 1);
    REQUIRE(m.ok());
    // Owners: 3 kW * 0.5 cf - 1 kW demand = 0.5 kW surplus each, 40 of them.
    CHECK(m.program.vars[m.layout.fi(kPvOwner, 0, 0, 12)].ub == Approx(20.0));
    CHECK(m.program.vars[m.layout.fi(kPvOwner, 0, 0, 3)].ub == Approx(0.0));
    CHECK(m.program.vars[m.layout.fi(kNonPvOwner, 0, 0, 12)].ub == Approx(0.0));
    CHECK(m.program.vars[m.layout.u(0, 0, 3)].ub == Approx(100.0));

    DgcModel off = build_dgc_model(s, {0.4, 0.1}, 0);
    REQUIRE(off.ok());
    for (int h = 0; h < 24; ++h) {
        CHECK(off.program.vars[off.layout.fi(kPvOwner, 0, 0, h)].ub == 0.0);
        CHECK(off.program.vars[off.layout.a(Tech::PV, 0)].ub == 0.0);
        CHECK(off.program.vars[off.layout.c(Tech::PV, 0)].ub == 0.0);
        CHECK(off.program.vars[off.layout.a(Tech::Battery, 0)].ub == 0.0);
        CHECK(off.program.vars[off.layout.c(Tech::Battery, 0)].ub == 0.0);
    }
}

TEST_CASE("an idle system decodes to an all-zero plan") {
    ScenarioConfig s = tiny_scenario();
    s.tech_of(Tech::DG).initial_kw = 0.0;
    s.tech_of(Tech::DG).remaining_life = 0;
    for (int i = 0; i < 2; ++i) s.demand_kw[i] = Tensor3(1, 1, 24, 0.0);
    s.households[kPvOwner].pv_kw = 0.0;

    DgcModel m = build_dgc_model(s, {0.4, 0.1}, 0);
    MipSolution sol = solve_model(m);
    DgcPlan plan = decode_model(m, sol);
    check_plan_invariants(m, sol, plan);

    CHECK(plan.npv == Approx(0.0).scale(1.0));
    CHECK(plan.objective == Approx(0.0).scale(1.0));
    for (int g = 0; g < kNumTech; ++g) {
        CHECK(plan.salvage[g] == 0.0);
        for (double v : plan.capacity[g]) CHECK(v <= 1e-9);
    }
    CHECK(plan.revenue[0] == Approx(0.0).scale(1.0));
    CHECK(plan.served[0] == Approx(0.0).scale(1.0));
    for (double v : plan.unmet.data()) CHECK(v <= 1e-9);
}

TEST_CASE("one busy hour of diesel prices out to the textbook revenue") {
    ScenarioConfig s = tiny_scenario();
    s.tech_of(Tech::DG).remaining_life = 2;
    s.tech_of(Tech::DG).capex_by_year = {500.0, 400.0};
    for (int i = 0; i < 2; ++i) s.demand_kw[i] = Tensor3(1, 1, 24, 0.0);
    s.demand_kw[kNonPvOwner].at(0, 0, 12) = 1.0;
    s.households[kNonPvOwner].count_by_year = {100.0};
    s.households[kPvOwner].count_by_year = {0.0};
    s.households[kPvOwner].pv_kw = 0.0;
    s.solar_cf = Tensor3(1, 1, 24, 0.0);

    DgcModel m = build_dgc_model(s, {0.4, 0.0}, 0);
    MipSolution sol = solve_model(m);
    DgcPlan plan = decode_model(m, sol);
    check_plan_invariants(m, sol, plan);

    // 365 days * 100 kWh * 0.4 $/kWh.
    CHECK(plan.revenue[0] == Approx(14600.0).epsilon(1e-6));
    CHECK(plan.served[0] == Approx(36500.0).epsilon(1e-6));
    for (double v : plan.unmet.data()) CHECK(v <= 1e-6);
    CHECK(plan.capex_cost[0] == Approx(0.0).scale(1.0));

    // Full utilization of the 100 kW unit lands in the top band.
    const VariableLayout& L = m.layout;
    CHECK(sol.x[L.b1(0, 0, 12)] == Approx(0.0).scale(1.0));
    CHECK(sol.x[L.b2(0, 0, 12)] == Approx(0.0).scale(1.0));
    double rho3 = s.heat_rate.rho3;
    CHECK(plan.fuel.at(0, 0, 12) == Approx(rho3 * 100.0).epsilon(1e-4));
    double expect_var = 365.0 * (0.01 * 100.0 + s.diesel_price * rho3 * 100.0);
    CHECK(plan.var_cost[0] == Approx(expect_var).epsilon(1e-4));
    CHECK(plan.npv ==
          Approx(14600.0 - expect_var - 20.0 * 100.0).epsilon(1e-4));
}

TEST_CASE("fuel rates follow the utilization bands") {
    ScenarioConfig s = tiny_scenario();
    s.tech_of(Tech::DG).initial_kw = 400.0;
    s.tech_of(Tech::DG).remaining_life = 2;
    s.tech_of(Tech::DG).capex_by_year = {500.0, 1.0};
    s.budget = 0.0;
    for (int i = 0; i < 2; ++i) s.demand_kw[i] = Tensor3(1, 1, 24, 0.0);
    s.households[kNonPvOwner].count_by_year = {1.0};
    s.households[kPvOwner].count_by_year = {0.0};
    s.households[kPvOwner].pv_kw = 0.0;
    s.solar_cf = Tensor3(1, 1, 24, 0.0);
    const double loads[5] = {50.0, 150.0, 200.0, 300.0, 100.0};
    for (int h = 0; h < 5; ++h) s.demand_kw[kNonPvOwner].at(0, 0, h) = loads[h];

    DgcModel m = build_dgc_model(s, {0.4, 0.0}, 0);
    MipSolution sol = solve_model(m);
    DgcPlan plan = decode_model(m, sol);
    check_plan_invariants(m, sol, plan);

    // Budget 0 pins capacity at the initial 400 kW, so the thresholds sit at
    // 120 kW and 240 kW.
    CHECK(plan.capacity[(int)Tech::DG][0] == Approx(400.0));
    const int expect_seg[5] = {1, 2, 2, 3, 1};
    const double rho[3] = {s.heat_rate.rho1, s.heat_rate.rho2, s.heat_rate.rho3};
    const VariableLayout& L = m.layout;
    for (int h = 0; h < 5; ++h) {
        CAPTURE(h);
        CHECK(plan.dispatch[0].at(0, 0, h) == Approx(loads[h]).epsilon(1e-6));
        int b1 = (int)std::lround(sol.x[L.b1(0, 0, h)]);
        int b2 = (int)std::lround(sol.x[L.b2(0, 0, h)]);
        int seg = b1 ? 1 : (b2 ? 2 : 3);
        CHECK(seg == expect_seg[h]);
        CHECK(plan.fuel.at(0, 0, h) ==
              Approx(rho[seg - 1] * loads[h]).epsilon(1e-4));
    }
    for (int h = 5; h < 24; ++h) {
        CHECK(plan.dispatch[0].at(0, 0, h) <= 1e-6);
        CHECK(plan.fuel.at(0, 0, h) <= 1e-4);
    }
    for (double v : plan.unmet.data()) CHECK(v <= 1e-6);
}

TEST_CASE("bought feed-in cycles through the battery overnight") {
    ScenarioConfig s = tiny_scenario();
    s.tech_of(Tech::DG).initial_kw = 0.0;
    s.tech_of(Tech::DG).remaining_life = 0;
    s.tech_of(Tech::DG).capex_by_year = {1e6, 0.0};
    s.tech_of(Tech::PV).capex_by_year = {1e6, 0.0};
    s.tech_of(Tech::Battery).capex_by_year = {10.0, 10.0};
    s.tech_of(Tech::Battery).opex_fixed = 0.1;
    s.tech_of(Tech::Battery).opex_var = 0.005;

    for (int i = 0; i < 2; ++i) s.demand_kw[i] = Tensor3(1, 1, 24, 0.0);
    s.households[kNonPvOwner].count_by_year = {60.0};
    for (int h = 18; h < 23; ++h) s.demand_kw[kNonPvOwner].at(0, 0, h) = 1.0;
    s.households[kPvOwner].count_by_year = {40.0};
    s.households[kPvOwner].pv_kw = 2.0;

    DgcModel m = build_dgc_model(s, {0.4, 0.01}, 1);
    MipSolution sol = solve_model(m);
    DgcPlan plan = decode_model(m, sol);
    check_plan_invariants(m, sol, plan);

    CHECK(plan.capacity[(int)Tech::Battery][0] > 50.0);
    double bought = 0.0, charged = 0.0, discharged = 0.0;
    for (double v : plan.feed_in[kPvOwner].data()) bought += v;
    for (double v : plan.charge.data()) charged += v;
    for (double v : plan.discharge.data()) discharged += v;
    CHECK(bought > 100.0);
    CHECK(charged > 100.0);
    // Evening demand, 60 kW for five hours, is served from storage.
    CHECK(discharged == Approx(300.0).epsilon(1e-3));
    for (double v : plan.unmet.data()) CHECK(v <= 1e-6);
    for (double v : plan.dispatch[0].data()) CHECK(v <= 1e-9);
    CHECK(plan.npv > 0.0);
}

TEST_CASE("capacity recursion tracks additions and retirements") {
    const int years = 4;
    ScenarioConfig s = tiny_scenario(years);
    Technology& dg = s.tech_of(Tech::DG);
    dg.initial_kw = 50.0;
    dg.remaining_life = 1;
    dg.lifetime = 2;
    dg.capex_by_year.assign(years + 1, 20.0);
    dg.capex_by_year[years] = 2.0;
    dg.opex_fixed = 1.0;
    for (int i = 0; i < 2; ++i) s.demand_kw[i] = Tensor3(years, 1, 24, 0.0);
    s.households[kNonPvOwner].count_by_year.assign(years, 1.0);
    s.households[kPvOwner].count_by_year.assign(years, 0.0);
    s.households[kPvOwner].pv_kw = 0.0;
    s.solar_cf = Tensor3(years, 1, 24, 0.0);
    for (int y = 0; y < years; ++y) {
        s.demand_kw[kNonPvOwner].at(y, 0, 0) = 100.0;
        s.demand_kw[kNonPvOwner].at(y, 0, 1) = 100.0;
    }

    DgcModel m = build_dgc_model(s, {0.4, 0.0}, 0);
    MipSolution sol = solve_model(m);
    DgcPlan plan = decode_model(m, sol);
    check_plan_invariants(m, sol, plan);

    const int g = (int)Tech::DG;
    CHECK(plan.additions[g][0] > 0.0);
    CHECK(plan.retired[g][1] == Approx(50.0));
    CHECK(plan.retired[g][2] == Approx(plan.additions[g][0]).epsilon(1e-6));
    CHECK(plan.retired[g][3] == Approx(plan.additions[g][1]).scale(1.0).epsilon(1e-6));
    for (int y = 0; y < years; ++y) {
        CHECK(plan.capacity[g][y] >= 100.0 - 1e-6);
        double prev = y == 0 ? dg.initial_kw : plan.capacity[g][y - 1];
        CHECK(plan.capacity[g][y] ==
              Approx(prev + plan.additions[g][y] - plan.retired[g][y]).scale(100.0));
    }
    for (double v : plan.unmet.data()) CHECK(v <= 1e-6);
}

TEST_CASE("a finite budget caps discounted capex") {
    ScenarioConfig base = tiny_scenario();
    Technology& dg = base.tech_of(Tech::DG);
    dg.initial_kw = 0.0;
    dg.remaining_life = 0;
    dg.capex_by_year = {20.0, 2.0};
    for (int i = 0; i < 2; ++i) base.demand_kw[i] = Tensor3(1, 1, 24, 0.0);
    base.households[kNonPvOwner].count_by_year = {1.0};
    base.households[kPvOwner].count_by_year = {0.0};
    base.households[kPvOwner].pv_kw = 0.0;
    base.solar_cf = Tensor3(1, 1, 24, 0.0);
    base.demand_kw[kNonPvOwner].at(0, 0, 0) = 100.0;
    base.demand_kw[kNonPvOwner].at(0, 0, 1) = 100.0;

    DgcModel open_model = build_dgc_model(base, {0.4, 0.0}, 0);
    MipSolution open_sol = solve_model(open_model);
    DgcPlan open_plan = decode_model(open_model, open_sol);
    check_plan_invariants(open_model, open_sol, open_plan);
    CHECK(open_plan.additions[(int)Tech::DG][0] >= 100.0 - 1e-6);

    ScenarioConfig tight = base;
    tight.budget = 1000.0;
    DgcModel tight_model = build_dgc_model(tight, {0.4, 0.0}, 0);
    MipSolution tight_sol = solve_model(tight_model);
    DgcPlan tight_plan = decode_model(tight_model, tight_sol);
    check_plan_invariants(tight_model, tight_sol, tight_plan);

    CHECK(tight_plan.capex_cost[0] <= 1000.0 * (1.0 + 1e-6));
    CHECK(tight_plan.additions[(int)Tech::DG][0] <= 50.0 + 1e-4);
    CHECK(tight_plan.npv <= open_plan.npv + 1e-6 * std::fabs(open_plan.npv));
}

TEST_CASE("unmet-demand caps bind and zero caps force full service") {
    ScenarioConfig s = tiny_scenario();
    DgcModel m = build_dgc_model(s, {0.01, 0.0}, 0);
    REQUIRE(m.ok());

    MipProgram same = add_unmet_cap(m, kInf);
    CHECK(same == m.program);

    MipSolution loose_sol = solve_model(m);
    DgcPlan loose = decode_model(m, loose_sol);
    check_plan_invariants(m, loose_sol, loose);
    double loose_unmet = 0.0;
    for (int h = 0; h < 24; ++h) loose_unmet += 365.0 * loose.unmet.at(0, 0, h);
    // At a 0.01 price serving costs more than it earns, so everything goes
    // unserved.
    CHECK(loose_unmet == Approx(365.0 * 2040.0).epsilon(1e-6));

    SolverConfig cfg;
    std::string err;

    MipProgram forced = add_unmet_cap(m, 0.0);
    CHECK(forced.num_rows() == m.program.num_rows() + 1);
    MipSolution fsol;
    REQUIRE(solve_mip(forced, cfg, &fsol, &err));
    REQUIRE(fsol.status == SolveStatus::Optimal);
    DgcPlan fplan = decode_model(m, fsol);
    double funmet = 0.0;
    for (int h = 0; h < 24; ++h) funmet += 365.0 * fplan.unmet.at(0, 0, h);
    CHECK(funmet <= 1e-3);
    CHECK(fplan.npv <= loose.npv + 1e-6);

    MipProgram capped = add_unmet_cap(m, 5000.0);
    MipSolution csol;
    REQUIRE(solve_mip(capped, cfg, &csol, &err));
    REQUIRE(csol.status == SolveStatus::Optimal);
    DgcPlan cplan = decode_model(m, csol);
    double cunmet = 0.0;
    for (int h = 0; h < 24; ++h) cunmet += 365.0 * cplan.unmet.at(0, 0, h);
    CHECK(cunmet == Approx(5000.0).epsilon(1e-6));
    CHECK(cplan.npv <= loose.npv + 1e-6);
    CHECK(fplan.npv <= cplan.npv + 1e-6);
}

TEST_CASE("a handcrafted single-panel plan decodes to the worked salvage value") {
    ScenarioConfig s = tiny_scenario();
    s.tech_of(Tech::DG).initial_kw = 0.0;
    s.tech_of(Tech::DG).remaining_life = 0;
    for (int i = 0; i < 2; ++i) s.demand_kw[i] = Tensor3(1, 1, 24, 0.0);
    s.households[kPvOwner].pv_kw = 0.0;
    Technology& pv = s.tech_of(Tech::PV);
    pv.capex_by_year = {500.0, 964.0};
    pv.lifetime = 20;
    pv.opex_fixed = 0.0;
    pv.opex_var = 0.0;

    DgcModel m = build_dgc_model(s, {0.4, 0.1}, 1);
    REQUIRE(m.ok());
    const VariableLayout& L = m.layout;

    std::vector<double> x(m.program.num_vars(), 0.0);
    x[L.a(Tech::PV, 0)] = 1.0;
    x[L.c(Tech::PV, 0)] = 1.0;
    for (int h = 0; h < 24; ++h) x[L.b1(0, 0, h)] = 1.0;
    VerifyReport rep = verify(m.program, x);
    CAPTURE(rep.issues.empty() ? std::string() : rep.issues.front().name);
    REQUIRE(rep.ok);

    double salvage = 964.0 * (1.0 - 1.0 / 20.0);
    double npv = -500.0 + salvage / 1.1;
    MipSolution sol;
    sol.status = SolveStatus::Optimal;
    sol.objective = npv;
    sol.x = x;

    DgcPlan plan = decode_model(m, sol);
    CHECK(plan.salvage[(int)Tech::PV] == Approx(salvage));
    CHECK(plan.npv == Approx(npv));
    CHECK(plan.objective == Approx(npv));
    CHECK(plan.capex_cost[0] == Approx(500.0));
    CHECK(plan.fixed_cost[0] == Approx(0.0).scale(1.0));
}

TEST_CASE("decode rejects corrupted solutions") {
    ScenarioConfig s = tiny_scenario();
    DgcModel m = build_dgc_model(s, {0.4, 0.1}, 0);
    MipSolution sol = solve_model(m);

    DgcPlan plan;
    std::string err;

    MipSolution bad = sol;
    bad.objective += 1000.0;
    CHECK_FALSE(decode_plan(m, bad, &plan, &err));
    CHECK(err.find("disagrees") != std::string::npos);

    bad = sol;
    bad.x[m.layout.u(0, 0, 0)] = -1.0;
    CHECK_FALSE(decode_plan(m, bad, &plan, &err));
    CHECK(err.find("negative") != std::string::npos);

    bad = sol;
    bad.x.pop_back();
    CHECK_FALSE(decode_plan(m, bad, &plan, &err));
    CHECK(err.find("cover") != std::string::npos);

    bad = sol;
    bad.status = SolveStatus::Infeasible;
    CHECK_FALSE(decode_plan(m, bad, &plan, &err));
    CHECK(err.find("status") != std::string::npos);

    DgcModel broken = build_dgc_model(s, {0.2, 0.3}, 1);
    CHECK_FALSE(decode_plan(broken, sol, &plan, &err));
    CHECK(err.find("not built") != std::string::npos);
}

TEST_CASE("random scenarios build into structurally sound programs") {
    for (uint64_t seed : {3u, 17u, 40u}) {
        ScenarioConfig s = test::random_scenario(seed);
        DgcModel m = build_dgc_model(s, {0.5, 0.2}, 1);
        REQUIRE(m.ok());
        CHECK(m.program.validate().empty());
        CHECK((int)m.program.num_vars() == m.layout.total);
        CHECK(m.program.num_integer() == 2 * 2 * 2 * 24);
        MipProgram capped = add_unmet_cap(m, 123.0);
        CHECK(capped.num_rows() == m.program.num_rows() + 1);
        CHECK(capped.validate().empty());
    }
}
