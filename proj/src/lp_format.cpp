#include "mgp/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mgp {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_bound(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return fmt(v);
}

void emit_expr(std::ostringstream& out, const MipProgram& p,
               const std::vector<MipTerm>& terms, double constant) {
    bool first = true;
    for (const MipTerm& t : terms) {
        double c = t.coef;
        if (first) {
            out << ' ' << (c < 0 ? "- " : "") << fmt(std::fabs(c)) << ' '
                << p.vars[t.var].name;
            first = false;
        } else {
            out << ' ' << (c < 0 ? '-' : '+') << ' ' << fmt(std::fabs(c)) << ' '
                << p.vars[t.var].name;
        }
    }
    if (constant != 0.0) {
        out << (first ? " " : " ") << (constant < 0 ? "- " : (first ? "" : "+ "))
            << fmt(std::fabs(constant));
    }
}

} // namespace

std::string emit_interchange(const MipProgram& p) {
    std::ostringstream out;
    out << (p.maximize ? "Maximize" : "Minimize") << '\n';
    out << " obj:";
    std::vector<MipTerm> oterms;
    for (int j = 0; j < (int)p.vars.size(); ++j)
        if (p.obj[j] != 0.0) oterms.push_back({j, p.obj[j]});
    emit_expr(out, p, oterms, p.obj_constant);
    out << '\n';
    out << "Subject To\n";
    for (const MipRow& r : p.rows) {
        out << ' ' << r.name << ':';
        emit_expr(out, p, r.terms, 0.0);
        out << ' ' << (r.rel == Rel::LE ? "<=" : r.rel == Rel::EQ ? "=" : ">=") << ' '
            << fmt(r.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const MipVar& v : p.vars) {
        if (v.lb == -kInf && v.ub == kInf)
            out << ' ' << v.name << " free\n";
        else if (v.lb == v.ub)
            out << ' ' << v.name << " = " << fmt(v.lb) << '\n';
        else
            out << ' ' << fmt_bound(v.lb) << " <= " << v.name << " <= " << fmt_bound(v.ub)
                << '\n';
    }
    bool any_gen = false, any_bin = false;
    for (const MipVar& v : p.vars) {
        bool binary = v.integer && v.lb == 0.0 && v.ub == 1.0;
        any_bin = any_bin || binary;
        any_gen = any_gen || (v.integer && !binary);
    }
    if (any_gen) {
        out << "Generals\n";
        for (const MipVar& v : p.vars)
            if (v.integer && !(v.lb == 0.0 && v.ub == 1.0)) out << ' ' << v.name << '\n';
    }
    if (any_bin) {
        out << "Binaries\n";
        for (const MipVar& v : p.vars)
            if (v.integer && v.lb == 0.0 && v.ub == 1.0) out << ' ' << v.name << '\n';
    }
    out << "End\n";
    return out.str();
}

namespace {

enum class Section { None, Objective, Rows, Bounds, Generals, Binaries, Done };

std::string lower(std::string s) {
    for (char& c : s) c = (char)std::tolower((unsigned char)c);
    return s;
}

bool is_number_token(const std::string& t) {
    if (t.empty()) return false;
    char c = t[0];
    if (std::isdigit((unsigned char)c) || c == '.') return true;
    if ((c == '+' || c == '-') && t.size() > 1 &&
        (std::isdigit((unsigned char)t[1]) || t[1] == '.'))
        return true;
    return lower(t) == "inf" || lower(t) == "-inf" || lower(t) == "+inf" ||
           lower(t) == "infinity" || lower(t) == "-infinity";
}

bool to_number(const std::string& t, double* out) {
    std::string s = lower(t);
    if (s == "inf" || s == "+inf" || s == "infinity") { *out = kInf; return true; }
    if (s == "-inf" || s == "-infinity") { *out = -kInf; return true; }
    char* end = nullptr;
    *out = std::strtod(t.c_str(), &end);
    return end && *end == '\0';
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

struct Parser {
    MipProgram p;
    std::string error;
    // Explicit-bounds flags keep a later Binaries mention from clobbering a
    // Bounds line.
    std::vector<bool> bounded;
    bool has_objective = false;

    int var_of(const std::string& name) {
        int idx = p.var_index(name);
        if (idx >= 0) return idx;
        idx = p.add_var(name, 0.0, kInf, false);
        bounded.push_back(false);
        return idx;
    }

    bool fail(int lineno, const std::string& msg) {
        error = "line " + std::to_string(lineno) + ": " + msg;
        return false;
    }

    // expr := (sign? coef? name | sign? number)*  with tokens pre-split.
    bool parse_expr(const std::vector<std::string>& toks, size_t begin, size_t end,
                    std::vector<MipTerm>* terms, double* constant, int lineno) {
        double sign = 1.0;
        bool have_coef = false;
        double coef = 1.0;
        for (size_t i = begin; i < end; ++i) {
            const std::string& t = toks[i];
            if (t == "+" || t == "-") {
                if (have_coef) return fail(lineno, "dangling coefficient before '" + t + "'");
                sign = (t == "-") ? -sign : sign;
            } else if (is_number_token(t)) {
                double v;
                if (!to_number(t, &v)) return fail(lineno, "bad number: " + t);
                if (have_coef) {
                    // Two numbers in a row: the first was a constant term.
                    *constant += sign * coef;
                    coef = v;
                } else {
                    coef = v;
                    have_coef = true;
                }
            } else {
                terms->push_back({var_of(t), sign * (have_coef ? coef : 1.0)});
                sign = 1.0;
                coef = 1.0;
                have_coef = false;
            }
        }
        if (have_coef) *constant += sign * coef;
        return true;
    }
};

} // namespace

bool parse_interchange(const std::string& text, MipProgram* out, std::string* error) {
    Parser ps;
    // Gather raw lines per section first so Bounds can define declaration
    // order before the objective and rows are processed.
    struct Line { int no; std::vector<std::string> toks; };
    std::vector<Line> obj_lines, row_lines, bound_lines, gen_lines, bin_lines;
    Section sec = Section::None;
    bool saw_end = false, saw_rows = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        size_t cmt = raw.find('\\');
        if (cmt != std::string::npos) raw.erase(cmt);
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        std::string head = lower(toks[0]);
        if (toks.size() == 1 || head == "subject") {
            if (head == "maximize" || head == "minimize" || head == "max" || head == "min") {
                ps.p.maximize = (head == "maximize" || head == "max");
                sec = Section::Objective;
                continue;
            }
            if ((head == "subject" && toks.size() == 2 && lower(toks[1]) == "to") ||
                head == "st" || head == "s.t.") {
                sec = Section::Rows;
                saw_rows = true;
                continue;
            }
            if (head == "bounds") { sec = Section::Bounds; continue; }
            if (head == "generals" || head == "general" || head == "gen") {
                sec = Section::Generals;
                continue;
            }
            if (head == "binaries" || head == "binary" || head == "bin") {
                sec = Section::Binaries;
                continue;
            }
            if (head == "end") { sec = Section::Done; saw_end = true; continue; }
        }
        Line L{lineno, std::move(toks)};
        switch (sec) {
            case Section::Objective: obj_lines.push_back(std::move(L)); break;
            case Section::Rows: row_lines.push_back(std::move(L)); break;
            case Section::Bounds: bound_lines.push_back(std::move(L)); break;
            case Section::Generals: gen_lines.push_back(std::move(L)); break;
            case Section::Binaries: bin_lines.push_back(std::move(L)); break;
            case Section::None:
                if (error) *error = "line " + std::to_string(lineno) + ": content before objective section";
                return false;
            case Section::Done:
                if (error) *error = "line " + std::to_string(lineno) + ": content after End";
                return false;
        }
    }
    if (!saw_end) {
        if (error) *error = "missing End line";
        return false;
    }
    if (!saw_rows) {
        if (error) *error = "missing Subject To section";
        return false;
    }

    // Bounds first: declaration order.
    for (const Line& L : bound_lines) {
        const auto& t = L.toks;
        bool ok = true;
        if (t.size() == 2 && lower(t[1]) == "free") {
            int j = ps.var_of(t[0]);
            ps.p.vars[j].lb = -kInf;
            ps.p.vars[j].ub = kInf;
            ps.bounded[j] = true;
        } else if (t.size() == 3 && t[1] == "=") {
            double v;
            ok = to_number(t[2], &v);
            if (ok) {
                int j = ps.var_of(t[0]);
                ps.p.vars[j].lb = ps.p.vars[j].ub = v;
                ps.bounded[j] = true;
            }
        } else if (t.size() == 3 && (t[1] == "<=" || t[1] == ">=")) {
            double v;
            ok = to_number(t[2], &v);
            if (ok) {
                int j = ps.var_of(t[0]);
                (t[1] == "<=" ? ps.p.vars[j].ub : ps.p.vars[j].lb) = v;
                ps.bounded[j] = true;
            }
        } else if (t.size() == 5 && t[1] == "<=" && t[3] == "<=") {
            double lo, hi;
            ok = to_number(t[0], &lo) && to_number(t[4], &hi);
            if (ok) {
                int j = ps.var_of(t[2]);
                ps.p.vars[j].lb = lo;
                ps.p.vars[j].ub = hi;
                ps.bounded[j] = true;
            }
        } else {
            ok = false;
        }
        if (!ok) {
            if (error) *error = "line " + std::to_string(L.no) + ": malformed bounds line";
            return false;
        }
    }
    for (const Line& L : gen_lines)
        for (const std::string& name : L.toks) ps.p.vars[ps.var_of(name)].integer = true;
    for (const Line& L : bin_lines)
        for (const std::string& name : L.toks) {
            int j = ps.var_of(name);
            ps.p.vars[j].integer = true;
            if (!ps.bounded[j]) {
                ps.p.vars[j].lb = 0.0;
                ps.p.vars[j].ub = 1.0;
            }
        }

    // Objective: first token of the first line must be "obj:" or carry it.
    {
        std::vector<std::string> toks;
        int first_line = 0;
        for (const Line& L : obj_lines) {
            if (first_line == 0) first_line = L.no;
            for (const std::string& t : L.toks) toks.push_back(t);
        }
        size_t begin = 0;
        if (!toks.empty()) {
            if (toks[0].back() == ':') {
                begin = 1;
            } else if (toks.size() > 1 && toks[1] == ":") {
                begin = 2;
            }
        }
        std::vector<MipTerm> terms;
        double constant = 0.0;
        if (!ps.parse_expr(toks, begin, toks.size(), &terms, &constant, first_line)) {
            if (error) *error = ps.error;
            return false;
        }
        for (const MipTerm& t : terms) ps.p.add_obj(t.var, t.coef);
        ps.p.obj_constant = constant;
    }

    for (const Line& L : row_lines) {
        const auto& t = L.toks;
        size_t begin = 0;
        std::string name;
        if (!t.empty() && t[0].size() > 1 && t[0].back() == ':') {
            name = t[0].substr(0, t[0].size() - 1);
            begin = 1;
        } else if (t.size() > 1 && t[1] == ":") {
            name = t[0];
            begin = 2;
        } else {
            name = "r" + std::to_string(ps.p.rows.size());
        }
        size_t rel_at = std::string::npos;
        Rel rel = Rel::LE;
        for (size_t i = begin; i < t.size(); ++i) {
            if (t[i] == "<=" || t[i] == "<") { rel = Rel::LE; rel_at = i; break; }
            if (t[i] == ">=" || t[i] == ">") { rel = Rel::GE; rel_at = i; break; }
            if (t[i] == "=") { rel = Rel::EQ; rel_at = i; break; }
        }
        if (rel_at == std::string::npos || rel_at + 1 >= t.size()) {
            if (error) *error = "line " + std::to_string(L.no) + ": row needs relation and rhs";
            return false;
        }
        double rhs;
        if (!to_number(t[rel_at + 1], &rhs) || rel_at + 2 != t.size()) {
            if (error) *error = "line " + std::to_string(L.no) + ": bad rhs";
            return false;
        }
        std::vector<MipTerm> terms;
        double constant = 0.0;
        if (!ps.parse_expr(t, begin, rel_at, &terms, &constant, L.no)) {
            if (error) *error = ps.error;
            return false;
        }
        ps.p.add_row(name, std::move(terms), rel, rhs - constant);
    }

    *out = std::move(ps.p);
    return true;
}

std::string write_solution(const MipProgram& p, const MipSolution& s) {
    std::ostringstream out;
    out << "STATUS " << to_string(s.status) << '\n';
    out << "OBJ " << fmt(s.objective) << '\n';
    if (s.gap != 0.0) out << "GAP " << fmt(s.gap) << '\n';
    if (!s.x.empty())
        for (size_t j = 0; j < p.vars.size(); ++j)
            out << p.vars[j].name << ' ' << fmt(s.x[j]) << '\n';
    return out.str();
}

bool import_solution(const MipProgram& p, const std::string& text, MipSolution* out,
                     std::string* error) {
    MipSolution s;
    s.x.assign(p.vars.size(), 0.0);
    bool have_status = false, have_obj = false, have_values = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens_of(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "STATUS") {
            if (toks.size() != 2 || !solve_status_from_string(toks[1], &s.status)) {
                if (error) *error = "line " + std::to_string(lineno) + ": bad STATUS";
                return false;
            }
            have_status = true;
        } else if (toks[0] == "OBJ") {
            if (toks.size() != 2 || !to_number(toks[1], &s.objective)) {
                if (error) *error = "line " + std::to_string(lineno) + ": bad OBJ";
                return false;
            }
            have_obj = true;
        } else if (toks[0] == "GAP") {
            if (toks.size() != 2 || !to_number(toks[1], &s.gap)) {
                if (error) *error = "line " + std::to_string(lineno) + ": bad GAP";
                return false;
            }
        } else {
            if (toks.size() != 2) {
                if (error) *error = "line " + std::to_string(lineno) + ": expected <name> <value>";
                return false;
            }
            int j = p.var_index(toks[0]);
            if (j < 0) {
                if (error) *error = "line " + std::to_string(lineno) + ": unknown variable " + toks[0];
                return false;
            }
            if (!to_number(toks[1], &s.x[j])) {
                if (error) *error = "line " + std::to_string(lineno) + ": bad value for " + toks[0];
                return false;
            }
            have_values = true;
        }
    }
    if (!have_status) {
        if (error) *error = "missing STATUS line";
        return false;
    }
    if (!have_obj && (s.status == SolveStatus::Optimal || have_values)) {
        if (error) *error = "missing OBJ line";
        return false;
    }
    if (s.status != SolveStatus::Optimal && !have_values) s.x.clear();
    *out = std::move(s);
    return true;
}

} // namespace mgp
