#include "mgp/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

extern char** environ;

namespace mgp {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

} // namespace

RawConfig parse_config_text(const std::string& text, const std::string& name) {
    RawConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Comments start at '#' or ';' when at the start or after whitespace.
        for (size_t i = 0; i < line.size(); ++i) {
            if ((line[i] == '#' || line[i] == ';') &&
                (i == 0 || std::isspace((unsigned char)line[i - 1]))) {
                line.erase(i);
                break;
            }
        }
        std::string t = trim(line);
        if (t.empty()) continue;
        std::string at = name + ":" + std::to_string(lineno);
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                cfg.errors.push_back({at, "malformed section header: " + t});
                continue;
            }
            section = lower(trim(t.substr(1, t.size() - 2)));
            if (section.empty())
                cfg.errors.push_back({at, "empty section name"});
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            cfg.errors.push_back({at, "expected key = value, got: " + t});
            continue;
        }
        std::string key = lower(trim(t.substr(0, eq)));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) {
            cfg.errors.push_back({at, "empty key"});
            continue;
        }
        std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values.count(full))
            cfg.errors.push_back({at, "duplicate key: " + full});
        cfg.values[full] = val;
        cfg.origin[full] = at;
    }
    return cfg;
}

RawConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        RawConfig cfg;
        cfg.errors.push_back({path, "cannot open config file"});
        return cfg;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void apply_env_overrides(RawConfig& cfg, const std::string& prefix) {
    for (char** e = environ; e && *e; ++e) {
        std::string entry(*e);
        size_t eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string var = entry.substr(0, eq);
        if (var.size() <= prefix.size() || var.compare(0, prefix.size(), prefix) != 0)
            continue;
        std::string tail = lower(var.substr(prefix.size()));
        // Double underscore separates nesting levels; single ones are kept.
        std::string key;
        for (size_t i = 0; i < tail.size(); ++i) {
            if (tail[i] == '_' && i + 1 < tail.size() && tail[i + 1] == '_') {
                key += '.';
                ++i;
            } else {
                key += tail[i];
            }
        }
        cfg.values[key] = entry.substr(eq + 1);
        cfg.origin[key] = "env:" + var;
    }
}

namespace {

// Tracks which keys were consumed so leftovers can be flagged as typos.
class Reader {
public:
    Reader(const RawConfig& raw, std::vector<ConfigError>& errors)
        : raw_(raw), errors_(errors) {}

    std::optional<std::string> str(const std::string& key) {
        auto it = raw_.values.find(key);
        if (it == raw_.values.end()) return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    std::optional<double> num(const std::string& key) {
        auto v = str(key);
        if (!v) return std::nullopt;
        std::string t = lower(trim(*v));
        if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
        char* end = nullptr;
        double d = std::strtod(t.c_str(), &end);
        if (!end || *end != '\0' || t.empty()) {
            fail(key, "not a number: " + *v);
            return std::nullopt;
        }
        return d;
    }

    double num_or(const std::string& key, double dflt) {
        auto v = num(key);
        return v ? *v : dflt;
    }

    std::optional<long long> integer(const std::string& key) {
        auto v = num(key);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::fabs(*v) > 9e18) {
            fail(key, "not an integer");
            return std::nullopt;
        }
        return (long long)*v;
    }

    long long int_or(const std::string& key, long long dflt) {
        auto v = integer(key);
        return v ? *v : dflt;
    }

    bool bool_or(const std::string& key, bool dflt) {
        auto v = str(key);
        if (!v) return dflt;
        std::string t = lower(trim(*v));
        if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
        if (t == "false" || t == "0" || t == "no" || t == "off") return false;
        fail(key, "not a boolean: " + *v);
        return dflt;
    }

    std::optional<std::vector<double>> list(const std::string& key) {
        auto v = str(key);
        if (!v) return std::nullopt;
        std::vector<double> out;
        std::istringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::string t = trim(item);
            char* end = nullptr;
            double d = std::strtod(t.c_str(), &end);
            if (t.empty() || !end || *end != '\0') {
                fail(key, "list entry is not a number: " + item);
                return std::nullopt;
            }
            out.push_back(d);
        }
        if (out.empty()) {
            fail(key, "empty list");
            return std::nullopt;
        }
        return out;
    }

    void fail(const std::string& key, const std::string& msg) {
        auto it = raw_.origin.find(key);
        errors_.push_back({it == raw_.origin.end() ? key : it->second, key + ": " + msg});
    }

    void report_unused() {
        for (const auto& [k, v] : raw_.values) {
            (void)v;
            if (!used_.count(k)) fail(k, "unknown key");
        }
    }

private:
    const RawConfig& raw_;
    std::vector<ConfigError>& errors_;
    std::set<std::string> used_;
};

void read_tech(Reader& r, const std::string& sec, Technology& t, int years,
               double default_decline) {
    auto explicit_capex = r.list(sec + ".capex_by_year");
    double capex0 = r.num_or(sec + ".capex", -1.0);
    double decline = r.num_or(sec + ".capex_decline", default_decline);
    if (explicit_capex) {
        t.capex_by_year = *explicit_capex;
    } else if (capex0 >= 0.0) {
        t.capex_by_year.resize(years + 1);
        for (int y = 0; y <= years; ++y)
            t.capex_by_year[y] = capex0 * std::pow(1.0 - decline, y);
    }
    t.opex_fixed = r.num_or(sec + ".opex_fixed", t.opex_fixed);
    t.opex_var = r.num_or(sec + ".opex_var", t.opex_var);
    t.lifetime = (int)r.int_or(sec + ".lifetime", t.lifetime);
    t.remaining_life = (int)r.int_or(sec + ".remaining_life", t.remaining_life);
    t.initial_kw = r.num_or(sec + ".initial_kw", t.initial_kw);
}

void read_households(Reader& r, const std::string& sec, HouseholdClass& hc, int years) {
    auto by_year = r.list(sec + ".count_by_year");
    if (by_year) {
        hc.count_by_year = *by_year;
    } else {
        auto c = r.num(sec + ".count");
        if (c) hc.count_by_year.assign(years, *c);
    }
    hc.pv_kw = r.num_or(sec + ".pv_kw", hc.pv_kw);
}

} // namespace

void apply_synthetic_profile(ScenarioConfig& s, const DataSpec& d) {
    int years = s.time.years;
    int days = d.synthetic_days;
    if (s.time.day_weights.empty())
        s.time.day_weights.assign(days, 365.0 / days);
    days = s.time.days();
    s.demand_kw[kNonPvOwner] = Tensor3(years, days, s.time.hours, 0.0);
    s.demand_kw[kPvOwner] = Tensor3(years, days, s.time.hours, 0.0);
    s.solar_cf = Tensor3(years, days, s.time.hours, 0.0);
    for (int y = 0; y < years; ++y) {
        double g = d.load_scale * std::pow(1.0 + d.demand_growth, y);
        for (int dd = 0; dd < days; ++dd)
            for (int h = 0; h < s.time.hours; ++h) {
                s.demand_kw[kNonPvOwner].at(y, dd, h) = d.constant_load_non_pv * g;
                s.demand_kw[kPvOwner].at(y, dd, h) = d.constant_load_pv * g;
                s.solar_cf.at(y, dd, h) = d.constant_cf;
            }
    }
}

RunConfig build_run_config(const RawConfig& raw) {
    RunConfig rc;
    rc.errors = raw.errors;
    Reader r(raw, rc.errors);
    ScenarioConfig& s = rc.scenario;

    int years = (int)r.int_or("time.years", 15);
    s.time.years = years;
    s.time.hours = (int)r.int_or("time.hours", 24);
    if (auto w = r.list("time.day_weights")) s.time.day_weights = *w;

    s.diesel_price = r.num_or("market.diesel_price", s.diesel_price);
    s.discount_dgc = r.num_or("market.discount_dgc", s.discount_dgc);
    s.discount_re = r.num_or("market.discount_re", s.discount_re);
    s.voll = r.num_or("market.voll", s.voll);
    s.budget = r.num_or("market.budget", s.budget);
    s.allow_renewables = r.bool_or("market.allow_renewables", s.allow_renewables);
    s.unmet_penalty = r.num_or("market.unmet_penalty", s.unmet_penalty);
    s.big_m = r.num_or("market.big_m", s.big_m);
    s.status_quo_price = r.num_or("market.status_quo_price", s.status_quo_price);

    // Fuel curve defaults follow the configured diesel price so the
    // mid-segment fuel cost stays at 0.21 USD/kWh unless overridden.
    double rho2 = r.num_or("heat_rate.rho2", 0.21 / s.diesel_price);
    s.heat_rate.rho2 = rho2;
    s.heat_rate.rho1 = r.num_or("heat_rate.rho1", 1.3 * rho2);
    s.heat_rate.rho3 = r.num_or("heat_rate.rho3", 1.1 * rho2);

    s.battery.efficiency = r.num_or("battery.efficiency", s.battery.efficiency);
    s.battery.min_soc_fraction =
        r.num_or("battery.min_soc_fraction", s.battery.min_soc_fraction);

    // Empty defaults force configs to speak up; validate() catches omissions.
    for (int g = 0; g < kNumTech; ++g) s.tech[g].capex_by_year.clear();
    read_tech(r, "tech.dg", s.tech_of(Tech::DG), years, 0.0);
    read_tech(r, "tech.pv", s.tech_of(Tech::PV), years, 0.02);
    read_tech(r, "tech.battery", s.tech_of(Tech::Battery), years, 0.02);

    read_households(r, "households.non_pv", s.households[kNonPvOwner], years);
    read_households(r, "households.pv", s.households[kPvOwner], years);

    rc.data.rep_days_csv = r.str("data.rep_days_csv").value_or("");
    rc.data.load_scale = r.num_or("data.load_scale", rc.data.load_scale);
    rc.data.demand_growth = r.num_or("data.demand_growth", rc.data.demand_growth);
    rc.data.synthetic_days = (int)r.int_or("data.synthetic_days", rc.data.synthetic_days);
    rc.data.constant_load_non_pv =
        r.num_or("data.constant_load_non_pv", rc.data.constant_load_non_pv);
    rc.data.constant_load_pv = r.num_or("data.constant_load_pv", rc.data.constant_load_pv);
    rc.data.constant_cf = r.num_or("data.constant_cf", rc.data.constant_cf);

    rc.grid.step = r.num_or("grid.step", rc.grid.step);
    rc.grid.p_min = r.num_or("grid.p_min", rc.grid.p_min);
    rc.grid.p_max = r.num_or("grid.p_max", rc.grid.p_max);
    rc.grid.fit_min = r.num_or("grid.fit_min", rc.grid.fit_min);

    rc.solver.backend = r.str("solver.backend").value_or(rc.solver.backend);
    rc.solver.command = r.str("solver.command").value_or(rc.solver.command);
    rc.solver.rel_gap = r.num_or("solver.rel_gap", rc.solver.rel_gap);
    rc.solver.time_limit_s = r.num_or("solver.time_limit_s", rc.solver.time_limit_s);
    rc.solver.node_limit = r.int_or("solver.node_limit", rc.solver.node_limit);

    r.report_unused();

    if (rc.solver.backend != "reference" && rc.solver.backend != "external")
        rc.errors.push_back({"solver.backend", "must be 'reference' or 'external'"});
    if (rc.solver.backend == "external" && rc.solver.command.empty())
        rc.errors.push_back({"solver.command", "external backend needs a command template"});
    if (rc.grid.step <= 0.0)
        rc.errors.push_back({"grid.step", "must be > 0"});
    return rc;
}

RunConfig load_run_config(const std::string& path, bool use_env) {
    RawConfig raw = parse_config_file(path);
    if (use_env) apply_env_overrides(raw);
    RunConfig rc = build_run_config(raw);
    size_t slash = path.find_last_of('/');
    rc.base_dir = slash == std::string::npos ? std::string(".") : path.substr(0, slash);
    if (rc.data.rep_days_csv.empty()) apply_synthetic_profile(rc.scenario, rc.data);
    return rc;
}

} // namespace mgp
