#include "mgp/dgc_program.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mgp {

namespace {

std::string nm(const char* head, const std::string& tail) {
    return std::string(head) + "(" + tail + ")";
}

std::string gy(Tech g, int y) {
    return std::string(tech_name(g)) + "," + std::to_string(y);
}

std::string ydh(int y, int d, int h) {
    return std::to_string(y) + "," + std::to_string(d) + "," + std::to_string(h);
}

std::string yd(int y, int d) {
    return std::to_string(y) + "," + std::to_string(d);
}

// Strict-inequality offset for the utilization thresholds, kW.
constexpr double kSegmentEps = 1e-6;

} // namespace

VariableLayout make_layout(const TimeGrid& time) {
    VariableLayout L;
    L.years = time.years;
    L.days = time.days();
    L.hours = time.hours;
    int Y = L.years;
    int YDH = Y * L.days * L.hours;
    int YD = Y * L.days;
    int at = kNumTech * Y; // A
    L.base_c = at;
    at += kNumTech * Y;
    L.base_ret = at;
    at += kNumTech * Y;
    L.base_d = at;
    at += 2 * YDH;
    L.base_bp = at;
    at += YDH;
    L.base_bm = at;
    at += YDH;
    L.base_soc = at;
    at += YDH;
    L.base_soc0 = at;
    at += YD;
    L.base_fi = at;
    at += 2 * YDH;
    L.base_u = at;
    at += YDH;
    L.base_r = at;
    at += YDH;
    L.base_b1 = at;
    at += YDH;
    L.base_b2 = at;
    at += YDH;
    L.total = at;
    return L;
}

std::pair<int, int> salvage_window(int years, int lifetime) {
    return {std::max(0, years - lifetime), years - 1};
}

DgcModel build_dgc_model(const ScenarioConfig& s, PolicyTuple policy, int beta) {
    DgcModel m;
    m.scenario = s;
    m.policy = policy;
    m.beta = beta;
    if (beta != 0 && beta != 1) {
        m.error = "beta must be 0 or 1";
        return m;
    }
    if (!(policy.price >= 0.0) || !(policy.fit >= 0.0) || policy.fit > policy.price) {
        m.error = "policy needs 0 <= fit <= price";
        return m;
    }
    auto violations = validate(s);
    if (!violations.empty()) {
        m.error = "invalid scenario: " + violations.front().field + ": " +
                  violations.front().message;
        return m;
    }

    const TimeGrid& t = s.time;
    const int Y = t.years, Dd = t.days(), H = t.hours;
    m.layout = make_layout(t);
    const VariableLayout& L = m.layout;
    MipProgram& p = m.program;
    p.maximize = true;

    const double gamma = s.discount_dgc;
    std::vector<double> disc(Y);
    for (int y = 0; y < Y; ++y) disc[y] = std::pow(1.0 + gamma, -y);
    const double disc_end = std::pow(1.0 + gamma, -Y);
    const double price = policy.price, fit = policy.fit;
    const double eps_u = s.unmet_penalty;
    const double eta = s.battery.efficiency;
    const double alpha = s.battery.min_soc_fraction;
    const double dur = BatteryParams::duration_hours;
    const double rho[3] = {s.heat_rate.rho1, s.heat_rate.rho2, s.heat_rate.rho3};
    const double rho_min = std::min({rho[0], rho[1], rho[2]});
    const double big_m = heat_rate_big_m(s);

    // Variables, in layout order.
    for (int g = 0; g < kNumTech; ++g)
        for (int y = 0; y < Y; ++y)
            p.add_var(nm("A", gy((Tech)g, y)), 0.0,
                      (beta == 0 && (Tech)g != Tech::DG) ? 0.0 : kInf);
    for (int g = 0; g < kNumTech; ++g)
        for (int y = 0; y < Y; ++y)
            p.add_var(nm("C", gy((Tech)g, y)), 0.0,
                      (beta == 0 && (Tech)g != Tech::DG) ? 0.0 : kInf);
    for (int g = 0; g < kNumTech; ++g)
        for (int y = 0; y < Y; ++y) p.add_var(nm("Ret", gy((Tech)g, y)), 0.0, kInf);
    for (Tech g : kGenTech)
        for (int y = 0; y < Y; ++y)
            for (int d = 0; d < Dd; ++d)
                for (int h = 0; h < H; ++h)
                    p.add_var(nm("D", gy(g, y) + "," + std::to_string(d) + "," +
                                          std::to_string(h)),
                              0.0, kInf);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h) p.add_var(nm("Bp", ydh(y, d, h)), 0.0, kInf);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h) p.add_var(nm("Bm", ydh(y, d, h)), 0.0, kInf);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h) p.add_var(nm("SoC", ydh(y, d, h)), 0.0, kInf);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d) p.add_var(nm("SoC0", yd(y, d)), 0.0, kInf);
    for (int i = 0; i < 2; ++i)
        for (int y = 0; y < Y; ++y)
            for (int d = 0; d < Dd; ++d)
                for (int h = 0; h < H; ++h)
                    p.add_var(nm("Fi", std::to_string(i) + "," + ydh(y, d, h)), 0.0,
                              beta == 0 ? 0.0 : feed_in_cap(s, i, y, d, h));
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h)
                p.add_var(nm("U", ydh(y, d, h)), 0.0, total_demand(s, y, d, h));
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h) p.add_var(nm("R", ydh(y, d, h)), 0.0, kInf);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h)
                p.add_var(nm("b1", ydh(y, d, h)), 0.0, 1.0, true);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h)
                p.add_var(nm("b2", ydh(y, d, h)), 0.0, 1.0, true);

    // Objective: discounted profit, end-of-horizon salvage, and a tiny
    // penalty that breaks NPV ties toward serving more demand.
    for (int g = 0; g < kNumTech; ++g) {
        const Technology& tg = s.tech[g];
        auto [w0, w1] = salvage_window(Y, tg.lifetime);
        for (int y = 0; y < Y; ++y) {
            p.add_obj(L.a((Tech)g, y), -tg.capex_by_year[y] * disc[y]);
            if (y >= w0 && y <= w1) {
                double keep = 1.0 - (double)(Y - y) / tg.lifetime;
                if (keep > 0.0)
                    p.add_obj(L.a((Tech)g, y), tg.capex_by_year[Y] * keep * disc_end);
            }
            p.add_obj(L.c((Tech)g, y), -tg.opex_fixed * disc[y]);
        }
    }
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d) {
            double w = t.day_weights[d] * disc[y];
            for (int h = 0; h < H; ++h) {
                for (Tech g : kGenTech)
                    p.add_obj(L.d(g, y, d, h), (price - s.tech_of(g).opex_var) * w);
                p.add_obj(L.bm(y, d, h), price * w);
                p.add_obj(L.bp(y, d, h),
                          (-price - s.tech_of(Tech::Battery).opex_var) * w);
                for (int i = 0; i < 2; ++i)
                    p.add_obj(L.fi(i, y, d, h), (price - fit) * w);
                p.add_obj(L.r(y, d, h), -s.diesel_price * w);
                p.add_obj(L.u(y, d, h), -eps_u * w);
            }
        }

    // Capacity bookkeeping and retirement echoes.
    for (int g = 0; g < kNumTech; ++g) {
        const Technology& tg = s.tech[g];
        for (int y = 0; y < Y; ++y) {
            std::vector<MipTerm> terms = {{L.c((Tech)g, y), 1.0},
                                          {L.a((Tech)g, y), -1.0},
                                          {L.ret((Tech)g, y), 1.0}};
            if (y > 0) terms.push_back({L.c((Tech)g, y - 1), -1.0});
            p.add_row(nm("cap", gy((Tech)g, y)), std::move(terms), Rel::EQ,
                      y == 0 ? tg.initial_kw : 0.0);

            std::vector<MipTerm> rt = {{L.ret((Tech)g, y), 1.0}};
            if (y >= tg.lifetime) rt.push_back({L.a((Tech)g, y - tg.lifetime), -1.0});
            p.add_row(nm("ret", gy((Tech)g, y)), std::move(rt), Rel::EQ,
                      y == tg.remaining_life ? tg.initial_kw : 0.0);
        }
    }

    if (s.budget != kInf) {
        std::vector<MipTerm> terms;
        for (int g = 0; g < kNumTech; ++g)
            for (int y = 0; y < Y; ++y)
                terms.push_back({L.a((Tech)g, y), s.tech[g].capex_by_year[y] * disc[y]});
        p.add_row("budget", std::move(terms), Rel::LE, s.budget);
    }

    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            for (int h = 0; h < H; ++h) {
                int vd = L.d(Tech::DG, y, d, h), vp = L.d(Tech::PV, y, d, h);
                int vbp = L.bp(y, d, h), vbm = L.bm(y, d, h);
                int vu = L.u(y, d, h), vr = L.r(y, d, h);
                int vb1 = L.b1(y, d, h), vb2 = L.b2(y, d, h);
                int cdg = L.c(Tech::DG, y), cpv = L.c(Tech::PV, y);
                int cb = L.c(Tech::Battery, y);
                std::string at = ydh(y, d, h);

                p.add_row(nm("balance", at),
                          {{vu, 1.0},
                           {vbm, 1.0},
                           {vd, 1.0},
                           {vp, 1.0},
                           {L.fi(0, y, d, h), 1.0},
                           {L.fi(1, y, d, h), 1.0},
                           {vbp, -1.0}},
                          Rel::EQ, total_demand(s, y, d, h));

                p.add_row(nm("dgcap", at), {{vd, 1.0}, {cdg, -1.0}}, Rel::LE, 0.0);
                p.add_row(nm("pvcap", at),
                          {{vp, 1.0}, {cpv, -s.solar_cf.at(y, d, h)}}, Rel::LE, 0.0);
                p.add_row(nm("bout", at), {{vbm, 1.0}, {cb, -1.0}}, Rel::LE, 0.0);
                p.add_row(nm("bin", at), {{vbp, 1.0}, {cb, -1.0}}, Rel::LE, 0.0);

                int prev = h == 0 ? L.soc0(y, d) : L.soc(y, d, h - 1);
                p.add_row(nm("soc", at),
                          {{L.soc(y, d, h), 1.0},
                           {prev, -1.0},
                           {vbp, -eta},
                           {vbm, 1.0 / eta}},
                          Rel::EQ, 0.0);
                p.add_row(nm("socmax", at), {{L.soc(y, d, h), 1.0}, {cb, -dur}},
                          Rel::LE, 0.0);
                p.add_row(nm("socmin", at),
                          {{L.soc(y, d, h), 1.0}, {cb, -alpha * dur}}, Rel::GE, 0.0);

                // Utilization segments: b1 selects the low band, b2 the middle
                // band, and both zero selects the high band. On the active band
                // the fuel rate is pinned from both sides.
                p.add_row(nm("hr1d", at), {{vd, 1.0}, {cdg, -0.30}, {vb1, big_m}},
                          Rel::LE, big_m);
                p.add_row(nm("hr1lo", at),
                          {{vr, 1.0}, {vd, -rho[0]}, {vb1, -big_m}}, Rel::GE, -big_m);
                p.add_row(nm("hr1hi", at),
                          {{vr, 1.0}, {vd, -rho[0]}, {vb1, big_m}}, Rel::LE, big_m);
                p.add_row(nm("hr2dlo", at),
                          {{vd, 1.0}, {cdg, -0.30}, {vb2, -big_m}}, Rel::GE,
                          kSegmentEps - big_m);
                p.add_row(nm("hr2dhi", at), {{vd, 1.0}, {cdg, -0.60}, {vb2, big_m}},
                          Rel::LE, big_m);
                p.add_row(nm("hr2lo", at),
                          {{vr, 1.0}, {vd, -rho[1]}, {vb2, -big_m}}, Rel::GE, -big_m);
                p.add_row(nm("hr2hi", at),
                          {{vr, 1.0}, {vd, -rho[1]}, {vb2, big_m}}, Rel::LE, big_m);
                p.add_row(nm("hr3d", at),
                          {{vd, 1.0}, {cdg, -0.60}, {vb1, big_m}, {vb2, big_m}},
                          Rel::GE, kSegmentEps);
                p.add_row(nm("hr3lo", at),
                          {{vr, 1.0}, {vd, -rho[2]}, {vb1, big_m}, {vb2, big_m}},
                          Rel::GE, 0.0);
                p.add_row(nm("hr3hi", at),
                          {{vr, 1.0}, {vd, -rho[2]}, {vb1, -big_m}, {vb2, -big_m}},
                          Rel::LE, 0.0);
                p.add_row(nm("hrsum", at), {{vb1, 1.0}, {vb2, 1.0}}, Rel::LE, 1.0);
                // Valid for every segment since rho_min is the global floor;
                // keeps the relaxation's fuel cost honest.
                p.add_row(nm("hrenv", at), {{vr, 1.0}, {vd, -rho_min}}, Rel::GE, 0.0);
                // Convex lower envelope of the full fuel curve: touches it at
                // 60% and at 100% load, so fractional segment binaries cannot
                // price a heavily loaded engine at the mid-band rate. Only
                // valid for the usual bathtub ordering of the rates.
                if (rho[0] >= rho[1] && rho[2] >= rho[1]) {
                    double a = (rho[2] - 0.60 * rho[1]) / 0.40;
                    p.add_row(nm("hrhull", at),
                              {{vr, 1.0}, {vd, -a}, {cdg, 0.60 * (a - rho[1])}},
                              Rel::GE, 0.0);
                }
            }

    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d)
            p.add_row(nm("socwrap", yd(y, d)),
                      {{L.soc0(y, d), 1.0}, {L.soc(y, d, H - 1), -1.0}}, Rel::EQ,
                      0.0);

    return m;
}

MipProgram add_unmet_cap(const DgcModel& model, double cap_kwh) {
    MipProgram p = model.program;
    if (cap_kwh == kInf) return p;
    const VariableLayout& L = model.layout;
    std::vector<MipTerm> terms;
    for (int y = 0; y < L.years; ++y)
        for (int d = 0; d < L.days; ++d)
            for (int h = 0; h < L.hours; ++h)
                terms.push_back({L.u(y, d, h), model.scenario.time.day_weights[d]});
    p.add_row("ucap", std::move(terms), Rel::LE, cap_kwh);
    return p;
}

bool decode_plan(const DgcModel& model, const MipSolution& sol, DgcPlan* out,
                 std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    if (!model.ok()) return fail("model was not built: " + model.error);
    if (sol.status == SolveStatus::Infeasible || sol.status == SolveStatus::Unbounded)
        return fail(std::string("solution status ") + to_string(sol.status));
    if (sol.x.size() != model.program.vars.size())
        return fail("solution does not cover the program's variables");

    std::vector<double> x = sol.x;
    for (size_t j = 0; j < x.size(); ++j) {
        if (x[j] < -1e-5)
            return fail("negative value for " + model.program.vars[j].name);
        if (x[j] < 0.0) x[j] = 0.0;
    }

    const ScenarioConfig& s = model.scenario;
    const VariableLayout& L = model.layout;
    const int Y = L.years, Dd = L.days, H = L.hours;

    DgcPlan plan;
    for (int g = 0; g < kNumTech; ++g) {
        plan.additions[g].resize(Y);
        plan.capacity[g].resize(Y);
        plan.retired[g].resize(Y);
        for (int y = 0; y < Y; ++y) {
            plan.additions[g][y] = x[L.a((Tech)g, y)];
            plan.capacity[g][y] = x[L.c((Tech)g, y)];
            plan.retired[g][y] = x[L.ret((Tech)g, y)];
        }
    }
    for (int g = 0; g < 2; ++g) plan.dispatch[g] = Tensor3(Y, Dd, H);
    for (int i = 0; i < 2; ++i) plan.feed_in[i] = Tensor3(Y, Dd, H);
    plan.charge = Tensor3(Y, Dd, H);
    plan.discharge = Tensor3(Y, Dd, H);
    plan.soc = Tensor3(Y, Dd, H);
    plan.unmet = Tensor3(Y, Dd, H);
    plan.fuel = Tensor3(Y, Dd, H);
    plan.soc_start.resize((size_t)Y * Dd);
    for (int y = 0; y < Y; ++y)
        for (int d = 0; d < Dd; ++d) {
            plan.soc_start[(size_t)y * Dd + d] = x[L.soc0(y, d)];
            for (int h = 0; h < H; ++h) {
                for (int g = 0; g < 2; ++g)
                    plan.dispatch[g].at(y, d, h) = x[L.d((Tech)g, y, d, h)];
                for (int i = 0; i < 2; ++i)
                    plan.feed_in[i].at(y, d, h) = x[L.fi(i, y, d, h)];
                plan.charge.at(y, d, h) = x[L.bp(y, d, h)];
                plan.discharge.at(y, d, h) = x[L.bm(y, d, h)];
                plan.soc.at(y, d, h) = x[L.soc(y, d, h)];
                plan.unmet.at(y, d, h) = x[L.u(y, d, h)];
                plan.fuel.at(y, d, h) = x[L.r(y, d, h)];
            }
        }

    const double gamma = s.discount_dgc;
    plan.revenue.assign(Y, 0.0);
    plan.capex_cost.assign(Y, 0.0);
    plan.var_cost.assign(Y, 0.0);
    plan.fixed_cost.assign(Y, 0.0);
    plan.unmet_cost.assign(Y, 0.0);
    plan.served.assign(Y, 0.0);
    double penalty = 0.0;
    for (int y = 0; y < Y; ++y) {
        for (int g = 0; g < kNumTech; ++g) {
            plan.capex_cost[y] += s.tech[g].capex_by_year[y] * plan.additions[g][y];
            plan.fixed_cost[y] += s.tech[g].opex_fixed * plan.capacity[g][y];
        }
        for (int d = 0; d < Dd; ++d) {
            double w = s.time.day_weights[d];
            for (int h = 0; h < H; ++h) {
                double feed = plan.feed_in[0].at(y, d, h) + plan.feed_in[1].at(y, d, h);
                double net = plan.discharge.at(y, d, h) - plan.charge.at(y, d, h) +
                             plan.dispatch[0].at(y, d, h) +
                             plan.dispatch[1].at(y, d, h) + feed;
                plan.revenue[y] += model.policy.price * w * net;
                plan.var_cost[y] +=
                    w * (s.tech_of(Tech::Battery).opex_var * plan.charge.at(y, d, h) +
                         s.tech_of(Tech::DG).opex_var * plan.dispatch[0].at(y, d, h) +
                         s.tech_of(Tech::PV).opex_var * plan.dispatch[1].at(y, d, h) +
                         s.diesel_price * plan.fuel.at(y, d, h) +
                         model.policy.fit * feed);
                plan.unmet_cost[y] += s.unmet_penalty * w * plan.unmet.at(y, d, h);
                plan.served[y] +=
                    w * (total_demand(s, y, d, h) - plan.unmet.at(y, d, h));
            }
        }
        double disc = std::pow(1.0 + gamma, -y);
        plan.npv += disc * (plan.revenue[y] - plan.capex_cost[y] - plan.var_cost[y] -
                            plan.fixed_cost[y]);
        penalty += disc * plan.unmet_cost[y];
    }
    for (int g = 0; g < kNumTech; ++g) {
        const Technology& tg = s.tech[g];
        auto [w0, w1] = salvage_window(Y, tg.lifetime);
        for (int y = w0; y <= w1; ++y) {
            double keep = 1.0 - (double)(Y - y) / tg.lifetime;
            if (keep > 0.0)
                plan.salvage[g] += plan.additions[g][y] * tg.capex_by_year[Y] * keep;
        }
        plan.npv += plan.salvage[g] * std::pow(1.0 + gamma, -Y);
    }
    plan.objective = plan.npv - penalty;

    double tol = 1e-5 * std::max(1.0, std::fabs(plan.objective));
    if (std::fabs(plan.objective - sol.objective) > tol)
        return fail("recomputed objective " + std::to_string(plan.objective) +
                    " disagrees with solver objective " +
                    std::to_string(sol.objective));

    *out = std::move(plan);
    return true;
}

} // namespace mgp
