#pragma once

#include <random>

#include "mgp/scenario.hpp"

namespace mgp::test {

// Minimal structurally valid scenario: constant demand, flat day weights,
// default market parameters. Tests mutate what they care about.
inline ScenarioConfig tiny_scenario(int years = 1, int days = 1) {
    ScenarioConfig s;
    s.time.years = years;
    s.time.hours = 24;
    s.time.day_weights.assign(days, 365.0 / days);

    for (int g = 0; g < kNumTech; ++g) {
        Technology& t = s.tech[g];
        t.capex_by_year.assign(years + 1, 500.0);
        t.opex_fixed = 20.0;
        t.opex_var = 0.01;
        t.lifetime = 5;
        t.remaining_life = 0;
        t.initial_kw = 0.0;
    }
    s.tech_of(Tech::DG).initial_kw = 100.0;
    s.tech_of(Tech::DG).remaining_life = 3;

    for (int i = 0; i < 2; ++i) {
        s.households[i].count_by_year.assign(years, i == kPvOwner ? 40.0 : 60.0);
        s.demand_kw[i] = Tensor3(years, days, 24, 1.0);
    }
    s.households[kPvOwner].pv_kw = 2.0;
    s.solar_cf = Tensor3(years, days, 24, 0.0);
    for (int y = 0; y < years; ++y)
        for (int d = 0; d < days; ++d)
            for (int h = 8; h < 17; ++h) s.solar_cf.at(y, d, h) = 0.5;
    return s;
}

inline ScenarioConfig random_scenario(uint64_t seed, int years = 2, int days = 2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    ScenarioConfig s = tiny_scenario(years, days);
    for (int i = 0; i < 2; ++i) {
        for (double& c : s.households[i].count_by_year) c = 10.0 + 200.0 * u01(rng);
        for (double& v : s.demand_kw[i].data()) v = 2.0 * u01(rng);
    }
    s.households[kPvOwner].pv_kw = 4.0 * u01(rng);
    for (double& v : s.solar_cf.data()) v = u01(rng);
    return s;
}

inline bool has_violation(const std::vector<Violation>& vs, const std::string& field) {
    for (const auto& v : vs)
        if (v.field.find(field) != std::string::npos) return true;
    return false;
}

} // namespace mgp::test
