#include "mgp/data_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace mgp {
namespace {

// Civil-date <-> day-number conversion (proleptic Gregorian, day 0 =
// 1970-01-01).
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    int64_t era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                   static_cast<unsigned>(d) - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int* yy, int* mm, int* dd) {
    z += 719468;
    int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    int64_t y = static_cast<int64_t>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    *dd = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    *mm = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    *yy = static_cast<int>(y + (*mm <= 2));
}

int days_in_month(int y, int m) {
    static const int n[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && (y % 4 == 0 && (y % 100 != 0 || y % 400 == 0))) return 29;
    return n[m - 1];
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_int_field(const std::string& s, size_t pos, size_t len, int* out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    *out = v;
    return true;
}

bool parse_number(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return false;
    *out = v;
    return true;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

int hour_of_day(int64_t hour) {
    return static_cast<int>(((hour % 24) + 24) % 24);
}

double u01(std::mt19937_64& rng) {
    // 53 uniform mantissa bits; identical on every platform, unlike
    // std::uniform_real_distribution.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Midnight-aligned complete days as flat vectors of `streams` concatenated
// 24-hour blocks. Streams must share start and length.
std::vector<std::vector<double>> day_vectors(
    const std::vector<const std::vector<double>*>& streams, int64_t start) {
    std::vector<std::vector<double>> out;
    size_t n = streams[0]->size();
    size_t off = static_cast<size_t>((24 - hour_of_day(start)) % 24);
    if (n < off) return out;
    size_t days = (n - off) / 24;
    out.reserve(days);
    for (size_t d = 0; d < days; ++d) {
        std::vector<double> v;
        v.reserve(24 * streams.size());
        for (const std::vector<double>* s : streams)
            for (int h = 0; h < 24; ++h) v.push_back((*s)[off + d * 24 + h]);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

bool parse_hour_stamp(const std::string& text, int64_t* hour) {
    std::string s = trim(text);
    if (s.size() < 16) return false;
    int y, mo, d, hh, mi, se = 0;
    if (!parse_int_field(s, 0, 4, &y) || s[4] != '-' ||
        !parse_int_field(s, 5, 2, &mo) || s[7] != '-' ||
        !parse_int_field(s, 8, 2, &d) || (s[10] != 'T' && s[10] != ' ') ||
        !parse_int_field(s, 11, 2, &hh) || s[13] != ':' ||
        !parse_int_field(s, 14, 2, &mi))
        return false;
    if (s.size() == 19) {
        if (s[16] != ':' || !parse_int_field(s, 17, 2, &se)) return false;
    } else if (s.size() != 16) {
        return false;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo)) return false;
    if (hh > 23 || mi != 0 || se != 0) return false;
    *hour = days_from_civil(y, mo, d) * 24 + hh;
    return true;
}

std::string format_hour_stamp(int64_t hour) {
    int64_t day = hour >= 0 ? hour / 24 : (hour - 23) / 24;
    int y, m, d;
    civil_from_days(day, &y, &m, &d);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00", y, m, d,
                  static_cast<int>(hour - day * 24));
    return buf;
}

HourlySeries ingest_csv_text(const std::string& text, const std::string& name,
                             SeriesKind kind) {
    HourlySeries out;
    out.source = name;
    out.kind = kind;
    char msg[160];

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    // (hour, value); value NaN marks a present-but-unusable sample.
    std::vector<std::pair<int64_t, double>> rows;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!saw_header) {
            if (lower(t) != "timestamp,value") {
                std::snprintf(msg, sizeof msg,
                              "%s:%d: expected header 'timestamp,value'",
                              name.c_str(), lineno);
                out.error = msg;
                return out;
            }
            saw_header = true;
            continue;
        }
        size_t comma = t.find(',');
        if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
            std::snprintf(msg, sizeof msg, "%s:%d: expected 2 fields", name.c_str(),
                          lineno);
            out.error = msg;
            return out;
        }
        int64_t hour;
        if (!parse_hour_stamp(t.substr(0, comma), &hour)) {
            std::snprintf(msg, sizeof msg, "%s:%d: bad timestamp '%s'", name.c_str(),
                          lineno, trim(t.substr(0, comma)).c_str());
            out.error = msg;
            return out;
        }
        if (!rows.empty() && hour <= rows.back().first) {
            std::snprintf(msg, sizeof msg, "%s:%d: timestamps must increase",
                          name.c_str(), lineno);
            out.error = msg;
            return out;
        }
        std::string vs = trim(t.substr(comma + 1));
        double v;
        if (vs.empty() || lower(vs) == "nan") {
            v = std::numeric_limits<double>::quiet_NaN();
        } else if (!parse_number(vs, &v) || std::isinf(v)) {
            std::snprintf(msg, sizeof msg, "%s:%d: bad value '%s'", name.c_str(),
                          lineno, vs.c_str());
            out.error = msg;
            return out;
        } else if (kind == SeriesKind::CapacityFactor && (v < 0.0 || v > 1.0)) {
            double c = std::clamp(v, 0.0, 1.0);
            std::snprintf(msg, sizeof msg, "%s:%d: capacity factor %g clamped to %g",
                          name.c_str(), lineno, v, c);
            out.warnings.push_back(msg);
            v = c;
        } else if (kind == SeriesKind::Load && v < 0.0) {
            std::snprintf(msg, sizeof msg, "%s:%d: negative load %g clamped to 0",
                          name.c_str(), lineno, v);
            out.warnings.push_back(msg);
            v = 0.0;
        }
        rows.emplace_back(hour, v);
    }

    // Unreadable leading/trailing samples have no anchor to interpolate from.
    size_t lo = 0, hi = rows.size();
    while (lo < hi && std::isnan(rows[lo].second)) ++lo;
    while (hi > lo && std::isnan(rows[hi - 1].second)) --hi;
    if (lo == hi) {
        out.error = name + ": no data rows";
        return out;
    }
    if (lo > 0 || hi < rows.size()) {
        std::snprintf(msg, sizeof msg, "%zu unusable edge sample(s) dropped",
                      lo + rows.size() - hi);
        out.warnings.push_back(msg);
    }

    out.start = rows[lo].first;
    out.values.assign(static_cast<size_t>(rows[hi - 1].first - out.start + 1), 0.0);
    std::vector<bool> known(out.values.size(), false);
    for (size_t i = lo; i < hi; ++i) {
        if (std::isnan(rows[i].second)) continue;
        out.values[static_cast<size_t>(rows[i].first - out.start)] = rows[i].second;
        known[static_cast<size_t>(rows[i].first - out.start)] = true;
    }

    // Linear fill between the nearest known neighbours; endpoints untouched.
    size_t i = 0;
    while (i < known.size()) {
        if (known[i]) {
            ++i;
            continue;
        }
        size_t a = i - 1; // known by construction (edges trimmed above)
        size_t b = i;
        while (!known[b]) ++b;
        for (size_t t = i; t < b; ++t) {
            double f = static_cast<double>(t - a) / static_cast<double>(b - a);
            out.values[t] = out.values[a] + f * (out.values[b] - out.values[a]);
        }
        SeriesGap g;
        g.hour = out.start + static_cast<int64_t>(i);
        g.length = static_cast<int>(b - i);
        g.short_gap = g.length < 3;
        if (!g.short_gap) {
            std::snprintf(msg, sizeof msg, "gap of %d hours at %s interpolated",
                          g.length, format_hour_stamp(g.hour).c_str());
            out.warnings.push_back(msg);
        }
        out.gaps.push_back(g);
        i = b;
    }
    return out;
}

HourlySeries ingest_csv(const std::string& path, SeriesKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        HourlySeries out;
        out.source = path;
        out.kind = kind;
        out.error = path + ": cannot open";
        return out;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_csv_text(buf.str(), path, kind);
}

KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    uint64_t seed) {
    KMeansResult res;
    size_t n = points.size();
    if (n == 0 || k < 1 || static_cast<size_t>(k) > n) return res;
    std::mt19937_64 rng(seed);

    // k-means++: each next centre drawn with probability proportional to the
    // squared distance from the chosen set.
    res.centroids.push_back(points[std::min(
        static_cast<size_t>(u01(rng) * static_cast<double>(n)), n - 1)]);
    std::vector<double> d2(n);
    for (size_t i = 0; i < n; ++i) d2[i] = dist2(points[i], res.centroids[0]);
    while (static_cast<int>(res.centroids.size()) < k) {
        double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        size_t pick = 0;
        if (total > 0.0) {
            double r = u01(rng) * total, acc = 0.0;
            for (pick = 0; pick + 1 < n; ++pick) {
                acc += d2[pick];
                if (acc > r) break;
            }
        } else {
            // Every point already coincides with a centre; any choice is as
            // good as any other, so stay deterministic.
            pick = res.centroids.size() % n;
        }
        res.centroids.push_back(points[pick]);
        for (size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], dist2(points[i], res.centroids.back()));
    }

    res.assignment.assign(n, -1);
    std::vector<int> prev(n, -2);
    std::vector<size_t> size(static_cast<size_t>(k));
    for (int iter = 0; iter < 500; ++iter) {
        double wcss = 0.0;
        std::fill(size.begin(), size.end(), 0u);
        for (size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = dist2(points[i], res.centroids[0]);
            for (int c = 1; c < k; ++c) {
                double dd = dist2(points[i], res.centroids[c]);
                if (dd < bd) {
                    bd = dd;
                    best = c;
                }
            }
            res.assignment[i] = best;
            d2[i] = bd;
            wcss += bd;
            ++size[static_cast<size_t>(best)];
        }
        res.wcss_trace.push_back(wcss);
        res.iterations = iter + 1;

        // An empty cluster adopts the point that fits its current cluster
        // worst; strictly lowers the objective.
        for (int c = 0; c < k; ++c) {
            if (size[static_cast<size_t>(c)] > 0) continue;
            size_t far = n;
            double fd = 0.0;
            for (size_t i = 0; i < n; ++i)
                if (size[static_cast<size_t>(res.assignment[i])] > 1 && d2[i] > fd) {
                    fd = d2[i];
                    far = i;
                }
            if (far == n) continue; // all points coincide with their centres
            --size[static_cast<size_t>(res.assignment[far])];
            res.assignment[far] = c;
            ++size[static_cast<size_t>(c)];
            d2[far] = 0.0;
        }

        if (res.assignment == prev) break;
        prev = res.assignment;

        for (int c = 0; c < k; ++c)
            if (size[static_cast<size_t>(c)] > 0)
                std::fill(res.centroids[c].begin(), res.centroids[c].end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            std::vector<double>& ctr = res.centroids[static_cast<size_t>(res.assignment[i])];
            for (size_t j = 0; j < ctr.size(); ++j) ctr[j] += points[i][j];
        }
        for (int c = 0; c < k; ++c) {
            size_t sz = size[static_cast<size_t>(c)];
            if (sz == 0) continue;
            for (double& v : res.centroids[c]) v /= static_cast<double>(sz);
        }
    }

    res.wcss = 0.0;
    for (size_t i = 0; i < n; ++i)
        res.wcss += dist2(points[i], res.centroids[static_cast<size_t>(res.assignment[i])]);
    return res;
}

std::vector<double> annualize_weights(const std::vector<int>& sizes) {
    int64_t n = 0;
    for (int s : sizes) n += s;
    std::vector<double> w(sizes.size(), 0.0);
    if (n == 0) return w;
    // All integer arithmetic: floor of size*365/n plus largest remainders.
    int64_t assigned = 0;
    std::vector<std::pair<int64_t, size_t>> rem; // (-remainder, index)
    for (size_t c = 0; c < sizes.size(); ++c) {
        int64_t num = static_cast<int64_t>(sizes[c]) * 365;
        w[c] = static_cast<double>(num / n);
        assigned += num / n;
        rem.emplace_back(-(num % n), c);
    }
    std::sort(rem.begin(), rem.end());
    for (int64_t i = 0; i < 365 - assigned; ++i) w[rem[static_cast<size_t>(i)].second] += 1.0;
    return w;
}

namespace {

RepresentativeDays reduce_days(const std::vector<std::vector<double>>& days, int k,
                               uint64_t seed) {
    RepresentativeDays out;
    if (k < 1) {
        out.error = "k must be >= 1";
        return out;
    }
    if (days.size() < static_cast<size_t>(k)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "fewer complete days (%zu) than k (%d)",
                      days.size(), k);
        out.error = msg;
        return out;
    }
    KMeansResult km = kmeans(days, k, seed);
    out.profiles = std::move(km.centroids);
    out.assignment = std::move(km.assignment);
    out.wcss_trace = std::move(km.wcss_trace);
    out.wcss = km.wcss;
    std::vector<int> sizes(static_cast<size_t>(k), 0);
    for (int a : out.assignment) ++sizes[static_cast<size_t>(a)];
    out.weights = annualize_weights(sizes);
    return out;
}

} // namespace

RepresentativeDays cluster_days(const HourlySeries& series, int k, uint64_t seed) {
    if (!series.ok()) {
        RepresentativeDays out;
        out.error = series.error;
        return out;
    }
    return reduce_days(day_vectors({&series.values}, series.start), k, seed);
}

RepDayTable build_rep_days(const HourlySeries& load, const HourlySeries& cf,
                           const RepDaySpec& spec) {
    RepDayTable out;
    if (!load.ok()) {
        out.error = load.error;
        return out;
    }
    if (!cf.ok()) {
        out.error = cf.error;
        return out;
    }
    if (load.kind != SeriesKind::Load || cf.kind != SeriesKind::CapacityFactor) {
        out.error = "series kinds swapped";
        return out;
    }

    int64_t lo = std::max(load.start, cf.start);
    int64_t hi = std::min(load.end_hour(), cf.end_hour());
    if (hi <= lo) {
        out.error = "load and capacity factor series do not overlap";
        return out;
    }
    std::vector<double> lv(load.values.begin() + (lo - load.start),
                           load.values.begin() + (hi - load.start));
    std::vector<double> cv(cf.values.begin() + (lo - cf.start),
                           cf.values.begin() + (hi - cf.start));

    // Joint day vectors, load hours then cf hours, so one clustering decides
    // both shapes.
    RepresentativeDays rd = reduce_days(day_vectors({&lv, &cv}, lo), spec.k, spec.seed);
    if (!rd.ok()) {
        out.error = rd.error;
        return out;
    }
    for (size_t c = 0; c < rd.profiles.size(); ++c) {
        RepDay day;
        day.weight = rd.weights[c];
        for (int h = 0; h < 24; ++h) {
            day.load_pv[h] = spec.scale_pv_owner * rd.profiles[c][h];
            day.load_non_pv[h] = spec.scale_non_pv * rd.profiles[c][h];
            day.cf[h] = rd.profiles[c][24 + h];
        }
        out.days.push_back(day);
    }
    return out;
}

std::string write_rep_days_csv(const RepDayTable& t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) return path + ": cannot open for writing";
    os << "day,weight,hour,load_pv_owner,load_non_pv,capacity_factor\n";
    char buf[192];
    for (size_t d = 0; d < t.days.size(); ++d)
        for (int h = 0; h < 24; ++h) {
            std::snprintf(buf, sizeof buf, "%zu,%.12g,%d,%.12g,%.12g,%.12g\n", d,
                          t.days[d].weight, h, t.days[d].load_pv[h],
                          t.days[d].load_non_pv[h], t.days[d].cf[h]);
            os << buf;
        }
    os.flush();
    return os ? "" : path + ": write failed";
}

RepDayTable read_rep_days_text(const std::string& text, const std::string& name) {
    RepDayTable out;
    char msg[160];
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    size_t row = 0; // data rows seen; day = row / 24, hour = row % 24
    bool saw_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!saw_header) {
            if (lower(t) != "day,weight,hour,load_pv_owner,load_non_pv,capacity_factor") {
                std::snprintf(msg, sizeof msg, "%s:%d: unexpected header", name.c_str(),
                              lineno);
                out.error = msg;
                return out;
            }
            saw_header = true;
            continue;
        }
        double f[6];
        std::istringstream cells(t);
        std::string cell;
        int got = 0;
        bool extra = false;
        while (std::getline(cells, cell, ',')) {
            if (got == 6 || !parse_number(trim(cell), &f[got])) {
                extra = true;
                break;
            }
            ++got;
        }
        if (got != 6 || extra) {
            std::snprintf(msg, sizeof msg, "%s:%d: expected 6 numeric fields",
                          name.c_str(), lineno);
            out.error = msg;
            return out;
        }
        size_t day = row / 24;
        int hour = static_cast<int>(row % 24);
        if (f[0] != static_cast<double>(day) || f[2] != static_cast<double>(hour)) {
            std::snprintf(msg, sizeof msg,
                          "%s:%d: expected day %zu hour %d, got %g/%g", name.c_str(),
                          lineno, day, hour, f[0], f[2]);
            out.error = msg;
            return out;
        }
        if (hour == 0) {
            RepDay rd;
            rd.weight = f[1];
            out.days.push_back(rd);
        } else if (f[1] != out.days.back().weight) {
            std::snprintf(msg, sizeof msg, "%s:%d: weight differs within day %zu",
                          name.c_str(), lineno, day);
            out.error = msg;
            return out;
        }
        if (!(f[1] > 0.0) || f[3] < 0.0 || f[4] < 0.0 || f[5] < 0.0 || f[5] > 1.0 ||
            !std::isfinite(f[3] + f[4] + f[5])) {
            std::snprintf(msg, sizeof msg, "%s:%d: value out of range", name.c_str(),
                          lineno);
            out.error = msg;
            return out;
        }
        RepDay& rd = out.days.back();
        rd.load_pv[static_cast<size_t>(hour)] = f[3];
        rd.load_non_pv[static_cast<size_t>(hour)] = f[4];
        rd.cf[static_cast<size_t>(hour)] = f[5];
        ++row;
    }

    if (row == 0) {
        out.error = name + ": no data rows";
        return out;
    }
    if (row % 24 != 0) {
        std::snprintf(msg, sizeof msg, "%s: day %zu is incomplete", name.c_str(),
                      out.days.size() - 1);
        out.error = msg;
        return out;
    }
    double sum = 0.0;
    for (const RepDay& rd : out.days) sum += rd.weight;
    if (std::fabs(sum - 365.0) > 1e-6) {
        std::snprintf(msg, sizeof msg, "%s: weights sum to %.9g, want 365",
                      name.c_str(), sum);
        out.error = msg;
        return out;
    }
    return out;
}

RepDayTable read_rep_days_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        RepDayTable out;
        out.error = path + ": cannot open";
        return out;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_rep_days_text(buf.str(), path);
}

std::vector<Violation> apply_rep_days(ScenarioConfig& s, const RepDayTable& t,
                                      const std::vector<double>& year_scale) {
    std::vector<Violation> v;
    if (!t.ok()) {
        v.push_back({"rep_days", t.error});
        return v;
    }
    if (t.days.empty()) {
        v.push_back({"rep_days", "table has no days"});
        return v;
    }
    int years = s.time.years;
    if (years < 1) {
        v.push_back({"time.years", "must be >= 1"});
        return v;
    }
    if (!year_scale.empty() && static_cast<int>(year_scale.size()) != years) {
        v.push_back({"year_scale", "need one factor per year"});
        return v;
    }
    int days = static_cast<int>(t.days.size());
    s.time.hours = 24;
    s.time.day_weights.resize(static_cast<size_t>(days));
    for (int d = 0; d < days; ++d) s.time.day_weights[static_cast<size_t>(d)] = t.days[static_cast<size_t>(d)].weight;
    s.demand_kw[kNonPvOwner] = Tensor3(years, days, 24, 0.0);
    s.demand_kw[kPvOwner] = Tensor3(years, days, 24, 0.0);
    s.solar_cf = Tensor3(years, days, 24, 0.0);
    for (int y = 0; y < years; ++y) {
        double g = year_scale.empty() ? 1.0 : year_scale[static_cast<size_t>(y)];
        for (int d = 0; d < days; ++d) {
            const RepDay& rd = t.days[static_cast<size_t>(d)];
            for (int h = 0; h < 24; ++h) {
                s.demand_kw[kPvOwner].at(y, d, h) = g * rd.load_pv[static_cast<size_t>(h)];
                s.demand_kw[kNonPvOwner].at(y, d, h) =
                    g * rd.load_non_pv[static_cast<size_t>(h)];
                s.solar_cf.at(y, d, h) = rd.cf[static_cast<size_t>(h)];
            }
        }
    }
    return v;
}

std::vector<Violation> load_scenario_data(ScenarioConfig& s, const DataSpec& d,
                                          const std::string& base_dir) {
    if (d.rep_days_csv.empty()) {
        apply_synthetic_profile(s, d);
        return {};
    }
    std::string path = d.rep_days_csv;
    if (path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    RepDayTable t = read_rep_days_csv(path);
    std::vector<double> scale(static_cast<size_t>(std::max(1, s.time.years)));
    for (size_t y = 0; y < scale.size(); ++y)
        scale[y] = d.load_scale * std::pow(1.0 + d.demand_growth, static_cast<double>(y));
    return apply_rep_days(s, t, scale);
}

} // namespace mgp
