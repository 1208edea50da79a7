#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgp/scenario.hpp"

namespace mgp {

struct ConfigError {
    std::string where; // "file:line" or "env" or key name
    std::string message;
};

// Flat key-value view of an INI-style file. Section headers dot-qualify the
// keys that follow: `[tech.pv]` + `opex_fixed = 22` yields tech.pv.opex_fixed.
struct RawConfig {
    std::map<std::string, std::string> values;
    std::map<std::string, std::string> origin; // key -> "file:line" / "env:VAR"
    std::vector<ConfigError> errors;

    bool has(const std::string& key) const { return values.count(key) > 0; }
};

RawConfig parse_config_text(const std::string& text, const std::string& name);
RawConfig parse_config_file(const std::string& path);

// Overlays process environment variables of the form MGP_SECTION__KEY (double
// underscore per nesting level, case-insensitive) onto the parsed file.
void apply_env_overrides(RawConfig& cfg, const std::string& prefix = "MGP_");

// How scenario tensors get filled in: either a representative-day CSV on disk
// or a flat synthetic profile for small test runs.
struct DataSpec {
    std::string rep_days_csv;     // resolved against the config file directory
    double load_scale = 1.0;      // multiplies both classes' per-household load
    double demand_growth = 0.0;   // per-year multiplicative growth
    int synthetic_days = 1;       // used only when rep_days_csv is empty
    double constant_load_non_pv = 1.0;
    double constant_load_pv = 1.0;
    double constant_cf = 0.2;
};

struct GridSettings {
    double step = 0.01;
    double p_min = 0.0;
    double p_max = -1.0; // < 0 means "use the status-quo retail price"
    double fit_min = 0.0;
};

struct SolverSettings {
    std::string backend = "reference"; // or "external"
    std::string command;               // template with {lp} and {sol}
    double rel_gap = 1e-6;
    double time_limit_s = 0.0; // 0 = none
    long long node_limit = 0;  // 0 = none
};

struct RunConfig {
    ScenarioConfig scenario; // tensors filled from DataSpec by the caller
    DataSpec data;
    GridSettings grid;
    SolverSettings solver;
    std::string base_dir; // directory of the config file
    std::vector<ConfigError> errors;

    bool ok() const { return errors.empty(); }
};

// Typed extraction. Unknown keys are reported as errors so typos do not
// silently fall back to defaults. Does not touch scenario tensors.
RunConfig build_run_config(const RawConfig& raw);

// parse + env overlay + build, with tensors synthesized or left for the data
// pipeline depending on DataSpec.
RunConfig load_run_config(const std::string& path, bool use_env = true);

// Fills scenario tensors from DataSpec when no CSV is referenced. (CSV-backed
// configs go through the data pipeline instead.)
void apply_synthetic_profile(ScenarioConfig& s, const DataSpec& d);

} // namespace mgp
