#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mgp/config_file.hpp"
#include "mgp/scenario.hpp"

namespace mgp {

enum class SeriesKind { Load, CapacityFactor };

// A maximal run of missing samples. Every gap is linearly interpolated so the
// series stays contiguous; `short_gap` marks runs under 3 hours, longer runs
// additionally show up in the warnings list for a data-quality review.
struct SeriesGap {
    int64_t hour = 0; // absolute hour of the first missing sample
    int length = 0;
    bool short_gap = false;
};

// Contiguous hourly samples. `start` counts hours since 1970-01-01T00:00
// (timezone-naive civil time). Values are kW for load series and a factor in
// [0,1] for capacity factors; out-of-range inputs are clamped with a warning.
struct HourlySeries {
    std::string source;
    SeriesKind kind = SeriesKind::Load;
    int64_t start = 0;
    std::vector<double> values;
    std::vector<SeriesGap> gaps;
    std::vector<std::string> warnings;
    std::string error;

    bool ok() const { return error.empty(); }
    int64_t end_hour() const { return start + static_cast<int64_t>(values.size()); }
};

// CSV with a `timestamp,value` header, ISO-8601 hour timestamps
// (YYYY-MM-DDTHH:MM, space accepted for T, optional :SS; minutes and seconds
// must be zero). Blank or NaN values become gaps. Malformed rows, a bad
// header, an empty file, or non-increasing timestamps set `error`.
HourlySeries ingest_csv(const std::string& path, SeriesKind kind);
HourlySeries ingest_csv_text(const std::string& text, const std::string& name,
                             SeriesKind kind);

// Timestamp codec used by the ingester, exposed for tests and tooling.
bool parse_hour_stamp(const std::string& text, int64_t* hour);
std::string format_hour_stamp(int64_t hour);

// Plain k-means with k-means++ seeding, Euclidean metric, ties to the lowest
// index, empty clusters reseeded from the farthest point. Deterministic for a
// fixed seed. wcss_trace holds the objective after each assignment step and
// never increases.
struct KMeansResult {
    std::vector<std::vector<double>> centroids; // k x dim
    std::vector<int> assignment;                // point -> cluster
    std::vector<double> wcss_trace;
    double wcss = 0.0;
    int iterations = 0;
};

KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    uint64_t seed);

// Cluster sizes rescaled to whole days-per-year summing to exactly 365
// (largest-remainder rounding, ties to the lower index).
std::vector<double> annualize_weights(const std::vector<int>& sizes);

// Weighted representative days from one series: complete midnight-aligned
// days become 24-dim points, k-means picks the profiles, weights come from
// cluster sizes via annualize_weights.
struct RepresentativeDays {
    std::vector<std::vector<double>> profiles; // k x 24, cluster means
    std::vector<double> weights;               // k, sums to 365
    std::vector<int> assignment;               // source day -> cluster
    std::vector<double> wcss_trace;
    double wcss = 0.0;
    std::string error;

    bool ok() const { return error.empty(); }
};

RepresentativeDays cluster_days(const HourlySeries& series, int k, uint64_t seed);

// One representative day of the joint pipeline output.
struct RepDay {
    double weight = 0.0;
    std::array<double, 24> load_pv{};     // kW per PV-owning household
    std::array<double, 24> load_non_pv{}; // kW per non-owning household
    std::array<double, 24> cf{};          // solar capacity factor
};

struct RepDayTable {
    std::vector<RepDay> days;
    std::string error;

    bool ok() const { return error.empty(); }
};

struct RepDaySpec {
    int k = 3;
    uint64_t seed = 1;
    // Logged load is a village-average shape; classes scale it. The split
    // into owner classes is an assumption, not something the logs carry.
    double scale_pv_owner = 1.0;
    double scale_non_pv = 1.0;
};

// Joint reduction: overlapping complete days of load and capacity factor are
// concatenated into 48-dim vectors so every representative day keeps a
// consistent solar profile, then clustered and weighted as in cluster_days.
RepDayTable build_rep_days(const HourlySeries& load, const HourlySeries& cf,
                           const RepDaySpec& spec);

// Interchange CSV: header day,weight,hour,load_pv_owner,load_non_pv,
// capacity_factor; 24 rows per day, weight repeated on each. Write returns an
// error message or empty; read mirrors ingest error handling.
std::string write_rep_days_csv(const RepDayTable& t, const std::string& path);
RepDayTable read_rep_days_csv(const std::string& path);
RepDayTable read_rep_days_text(const std::string& text, const std::string& name);

// Fill scenario tensors from a table: day weights copied, per-class demand
// replicated across s.time.years (times year_scale[y] when provided), solar
// capacity factor replicated unscaled.
std::vector<Violation> apply_rep_days(ScenarioConfig& s, const RepDayTable& t,
                                      const std::vector<double>& year_scale = {});

// DataSpec dispatch: synthetic profile when no CSV is named, otherwise read
// the CSV (relative paths resolved against base_dir) and apply it with
// year_scale[y] = load_scale * (1 + demand_growth)^y.
std::vector<Violation> load_scenario_data(ScenarioConfig& s, const DataSpec& d,
                                          const std::string& base_dir);

} // namespace mgp
