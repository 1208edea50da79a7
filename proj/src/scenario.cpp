#include "mgp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace mgp {

const char* tech_name(Tech g) {
    switch (g) {
        case Tech::DG: return "DG";
        case Tech::PV: return "PV";
        case Tech::Battery: return "B";
    }
    return "?";
}

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_tensor(const Tensor3& t, const TimeGrid& tg, const char* field,
                  bool unit_interval, std::vector<Violation>& out) {
    if (t.years() != tg.years || t.days() != tg.days() || t.hours() != tg.hours) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "shape (%d,%d,%d) does not match time grid (%d,%d,%d)",
                      t.years(), t.days(), t.hours(), tg.years, tg.days(), tg.hours);
        out.push_back({field, buf});
        return;
    }
    for (double v : t.data()) {
        if (!std::isfinite(v) || v < 0.0 || (unit_interval && v > 1.0)) {
            out.push_back({field, unit_interval ? "values must lie in [0,1]"
                                                : "values must be finite and >= 0"});
            return;
        }
    }
}

} // namespace

std::vector<Violation> validate(const ScenarioConfig& s) {
    std::vector<Violation> v;
    const TimeGrid& tg = s.time;

    if (tg.years < 1) v.push_back({"time.years", "must be >= 1"});
    if (tg.hours != 24) v.push_back({"time.hours", "must be 24"});
    if (tg.day_weights.empty()) {
        v.push_back({"time.day_weights", "must be non-empty"});
    } else {
        bool pos = true;
        for (double w : tg.day_weights) pos = pos && std::isfinite(w) && w > 0.0;
        if (!pos) v.push_back({"time.day_weights", "weights must be finite and > 0"});
        if (pos && std::fabs(tg.weight_sum() - 365.0) > 1e-6)
            v.push_back({"time.day_weights", "weights must sum to 365"});
    }

    static const char* tech_field[kNumTech] = {"tech.dg", "tech.pv", "tech.battery"};
    for (int g = 0; g < kNumTech; ++g) {
        const Technology& t = s.tech[g];
        std::string f = tech_field[g];
        if ((int)t.capex_by_year.size() != tg.years + 1)
            v.push_back({f + ".capex_by_year", "needs years+1 entries (last one prices salvage)"});
        for (double c : t.capex_by_year)
            if (!finite_nonneg(c)) { v.push_back({f + ".capex_by_year", "entries must be finite and >= 0"}); break; }
        if (!finite_nonneg(t.opex_fixed)) v.push_back({f + ".opex_fixed", "must be finite and >= 0"});
        if (!finite_nonneg(t.opex_var)) v.push_back({f + ".opex_var", "must be finite and >= 0"});
        if (t.lifetime < 1) v.push_back({f + ".lifetime", "must be >= 1"});
        if (t.remaining_life < 0 || t.remaining_life > t.lifetime)
            v.push_back({f + ".remaining_life", "must lie in [0, lifetime]"});
        if (!finite_nonneg(t.initial_kw)) v.push_back({f + ".initial_kw", "must be finite and >= 0"});
        if (t.initial_kw > 0.0 && t.remaining_life == 0)
            v.push_back({f + ".remaining_life", "initial capacity needs remaining_life >= 1"});
    }

    static const char* hh_field[2] = {"households.non_pv", "households.pv"};
    for (int i = 0; i < 2; ++i) {
        const HouseholdClass& hc = s.households[i];
        std::string f = hh_field[i];
        if ((int)hc.count_by_year.size() != tg.years)
            v.push_back({f + ".count_by_year", "needs one entry per year"});
        for (double c : hc.count_by_year)
            if (!finite_nonneg(c)) { v.push_back({f + ".count_by_year", "entries must be finite and >= 0"}); break; }
        if (!finite_nonneg(hc.pv_kw)) v.push_back({f + ".pv_kw", "must be finite and >= 0"});
        check_tensor(s.demand_kw[i], tg, i == 0 ? "demand_kw.non_pv" : "demand_kw.pv", false, v);
    }
    if (s.households[kNonPvOwner].pv_kw != 0.0)
        v.push_back({"households.non_pv.pv_kw", "non-owners must have pv_kw = 0"});

    check_tensor(s.solar_cf, tg, "solar_cf", true, v);

    if (!(std::isfinite(s.diesel_price) && s.diesel_price > 0.0))
        v.push_back({"market.diesel_price", "must be finite and > 0"});
    if (!(std::isfinite(s.heat_rate.rho1) && s.heat_rate.rho1 > 0.0) ||
        !(std::isfinite(s.heat_rate.rho2) && s.heat_rate.rho2 > 0.0) ||
        !(std::isfinite(s.heat_rate.rho3) && s.heat_rate.rho3 > 0.0))
        v.push_back({"heat_rate", "all segment rates must be finite and > 0"});
    if (!(std::isfinite(s.battery.efficiency) && s.battery.efficiency > 0.0 &&
          s.battery.efficiency <= 1.0))
        v.push_back({"battery.efficiency", "must lie in (0,1]"});
    if (!(std::isfinite(s.battery.min_soc_fraction) && s.battery.min_soc_fraction >= 0.0 &&
          s.battery.min_soc_fraction < 1.0))
        v.push_back({"battery.min_soc_fraction", "must lie in [0,1)"});

    if (!(std::isfinite(s.discount_dgc) && s.discount_dgc >= 0.0))
        v.push_back({"market.discount_dgc", "must be finite and >= 0"});
    if (!(std::isfinite(s.discount_re) && s.discount_re >= 0.0))
        v.push_back({"market.discount_re", "must be finite and >= 0"});
    if (!(std::isfinite(s.voll) && s.voll > 0.0))
        v.push_back({"market.voll", "must be finite and > 0"});
    if (!(s.budget == kInf || finite_nonneg(s.budget)))
        v.push_back({"market.budget", "must be >= 0 or +inf"});
    if (!(std::isfinite(s.status_quo_price) && s.status_quo_price > 0.0))
        v.push_back({"market.status_quo_price", "must be finite and > 0"});
    if (!(std::isfinite(s.unmet_penalty) && s.unmet_penalty > 0.0))
        v.push_back({"market.unmet_penalty", "must be finite and > 0"});
    else if (s.unmet_penalty > 0.01 * s.status_quo_price && s.status_quo_price > 0.0)
        v.push_back({"market.unmet_penalty",
                     "must stay below 1% of the retail price or it distorts the objective"});
    if (!(s.big_m == 0.0 || (std::isfinite(s.big_m) && s.big_m > 0.0)))
        v.push_back({"market.big_m", "must be 0 (auto) or > 0"});

    return v;
}

double surplus(const ScenarioConfig& s, int i, int y, int d, int h) {
    double mu = s.demand_kw[i].at(y, d, h);
    if (i == kPvOwner)
        return s.households[i].pv_kw * s.solar_cf.at(y, d, h) - mu;
    return -mu;
}

double total_demand(const ScenarioConfig& s, int y, int d, int h) {
    double q = 0.0;
    for (int i = 0; i < 2; ++i) {
        double omega = s.households[i].count_by_year[y];
        q -= std::min(0.0, omega * surplus(s, i, y, d, h));
    }
    return q;
}

double feed_in_cap(const ScenarioConfig& s, int i, int y, int d, int h) {
    if (!s.allow_renewables) return 0.0;
    double omega = s.households[i].count_by_year[y];
    return std::max(0.0, omega * surplus(s, i, y, d, h));
}

double peak_total_demand(const ScenarioConfig& s) {
    double peak = 0.0;
    for (int y = 0; y < s.time.years; ++y)
        for (int d = 0; d < s.time.days(); ++d)
            for (int h = 0; h < s.time.hours; ++h)
                peak = std::max(peak, total_demand(s, y, d, h));
    return peak;
}

double max_daily_demand(const ScenarioConfig& s) {
    double worst = 0.0;
    for (int y = 0; y < s.time.years; ++y)
        for (int d = 0; d < s.time.days(); ++d) {
            double e = 0.0;
            for (int h = 0; h < s.time.hours; ++h) e += total_demand(s, y, d, h);
            worst = std::max(worst, e);
        }
    return worst;
}

double dg_dispatch_bound(const ScenarioConfig& s) {
    // DG output never usefully exceeds peak demand plus the battery's maximum
    // charging draw; the battery in turn never needs more power than it takes
    // to shift a full day of demand.
    double peak = peak_total_demand(s);
    double battery_draw = std::max(peak, max_daily_demand(s) / BatteryParams::duration_hours);
    double d = peak + battery_draw;
    return d > 0.0 ? d : 1.0;
}

double heat_rate_big_m(const ScenarioConfig& s) {
    if (s.big_m > 0.0) return s.big_m;
    // Largest DG capacity any feasible plan can hold: initial units plus what
    // the budget can buy at the cheapest discounted unit cost.
    double cap = s.tech_of(Tech::DG).initial_kw;
    if (s.budget == kInf) {
        cap += dg_dispatch_bound(s);
    } else {
        const Technology& t = s.tech_of(Tech::DG);
        double best = kInf;
        for (int y = 0; y < s.time.years && y < (int)t.capex_by_year.size(); ++y) {
            double c = t.capex_by_year[y] / std::pow(1.0 + s.discount_dgc, y);
            if (c > 0.0) best = std::min(best, c);
        }
        if (std::isfinite(best)) cap += s.budget / best;
    }
    double m = 2.0 * std::max({cap, peak_total_demand(s), 1.0}) *
               std::max({s.heat_rate.rho1, s.heat_rate.rho2, s.heat_rate.rho3, 1.0});
    return m;
}

namespace {

struct Fnv1a {
    uint64_t h = 1469598103934665603ull;
    void bytes(const void* p, size_t n) {
        const unsigned char* c = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 1099511628211ull;
        }
    }
    void f64(double v) {
        // Normalize zero sign so -0.0 and 0.0 hash alike.
        if (v == 0.0) v = 0.0;
        uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        bytes(&bits, sizeof bits);
    }
    void i64(int64_t v) { bytes(&v, sizeof v); }
    void vec(const std::vector<double>& xs) {
        i64((int64_t)xs.size());
        for (double x : xs) f64(x);
    }
};

} // namespace

uint64_t scenario_hash(const ScenarioConfig& s) {
    Fnv1a f;
    f.i64(s.time.years);
    f.i64(s.time.hours);
    f.vec(s.time.day_weights);
    for (const Technology& t : s.tech) {
        f.vec(t.capex_by_year);
        f.f64(t.opex_fixed);
        f.f64(t.opex_var);
        f.i64(t.lifetime);
        f.i64(t.remaining_life);
        f.f64(t.initial_kw);
    }
    for (const HouseholdClass& hc : s.households) {
        f.vec(hc.count_by_year);
        f.f64(hc.pv_kw);
    }
    for (const Tensor3& t : s.demand_kw) f.vec(t.data());
    f.vec(s.solar_cf.data());
    f.f64(s.diesel_price);
    f.f64(s.heat_rate.rho1);
    f.f64(s.heat_rate.rho2);
    f.f64(s.heat_rate.rho3);
    f.f64(s.battery.efficiency);
    f.f64(s.battery.min_soc_fraction);
    f.f64(s.discount_dgc);
    f.f64(s.discount_re);
    f.f64(s.voll);
    f.f64(s.budget == kInf ? -1.0 : s.budget);
    f.i64(s.allow_renewables ? 1 : 0);
    f.f64(s.unmet_penalty);
    f.f64(s.big_m);
    f.f64(s.status_quo_price);
    return f.h;
}

} // namespace mgp
