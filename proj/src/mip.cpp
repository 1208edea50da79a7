#include "mgp/mip.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace mgp {

int MipProgram::add_var(const std::string& name, double lb, double ub, bool integer) {
    int idx = (int)vars.size();
    vars.push_back({name, lb, ub, integer});
    obj.push_back(0.0);
    name_to_var_.emplace(name, idx);
    return idx;
}

int MipProgram::var_index(const std::string& name) const {
    auto it = name_to_var_.find(name);
    return it == name_to_var_.end() ? -1 : it->second;
}

void MipProgram::set_obj(int var, double coef) { obj[var] = coef; }
void MipProgram::add_obj(int var, double coef) { obj[var] += coef; }

int MipProgram::add_row(const std::string& name, std::vector<MipTerm> terms, Rel rel,
                        double rhs) {
    std::sort(terms.begin(), terms.end(),
              [](const MipTerm& a, const MipTerm& b) { return a.var < b.var; });
    std::vector<MipTerm> merged;
    merged.reserve(terms.size());
    for (const MipTerm& t : terms) {
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coef += t.coef;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const MipTerm& t) { return t.coef == 0.0; }),
                 merged.end());
    rows.push_back({name, std::move(merged), rel, rhs});
    return (int)rows.size() - 1;
}

int MipProgram::num_integer() const {
    int n = 0;
    for (const MipVar& v : vars) n += v.integer ? 1 : 0;
    return n;
}

std::vector<std::string> MipProgram::validate() const {
    std::vector<std::string> errs;
    std::unordered_map<std::string, int> seen;
    for (int j = 0; j < (int)vars.size(); ++j) {
        const MipVar& v = vars[j];
        if (v.name.empty()) errs.push_back("variable " + std::to_string(j) + " has no name");
        auto [it, fresh] = seen.emplace(v.name, j);
        (void)it;
        if (!fresh) errs.push_back("duplicate variable name: " + v.name);
        if (std::isnan(v.lb) || std::isnan(v.ub) || v.lb > v.ub)
            errs.push_back("bad bounds on " + v.name);
        if (v.integer && (v.lb == -kInf || v.ub == kInf))
            errs.push_back("integer variable " + v.name + " needs finite bounds");
    }
    if (obj.size() != vars.size()) errs.push_back("objective size mismatch");
    for (double c : obj)
        if (!std::isfinite(c)) { errs.push_back("non-finite objective coefficient"); break; }
    std::unordered_map<std::string, int> rseen;
    for (const MipRow& r : rows) {
        if (r.name.empty()) errs.push_back("row without a name");
        auto [it, fresh] = rseen.emplace(r.name, 0);
        (void)it;
        if (!fresh) errs.push_back("duplicate row name: " + r.name);
        if (r.terms.empty()) errs.push_back("row " + r.name + " has no terms");
        if (!std::isfinite(r.rhs)) errs.push_back("row " + r.name + " has non-finite rhs");
        int prev = -1;
        for (const MipTerm& t : r.terms) {
            if (t.var < 0 || t.var >= (int)vars.size())
                errs.push_back("row " + r.name + " references undeclared variable");
            else if (t.var <= prev)
                errs.push_back("row " + r.name + " terms not sorted/unique");
            if (!std::isfinite(t.coef) || t.coef == 0.0)
                errs.push_back("row " + r.name + " has a bad coefficient");
            prev = t.var;
        }
    }
    return errs;
}

bool MipProgram::operator==(const MipProgram& o) const {
    if (vars.size() != o.vars.size() || rows.size() != o.rows.size()) return false;
    for (size_t j = 0; j < vars.size(); ++j) {
        const MipVar &a = vars[j], &b = o.vars[j];
        if (a.name != b.name || a.lb != b.lb || a.ub != b.ub || a.integer != b.integer)
            return false;
    }
    if (obj != o.obj || obj_constant != o.obj_constant || maximize != o.maximize)
        return false;
    for (size_t i = 0; i < rows.size(); ++i) {
        const MipRow &a = rows[i], &b = o.rows[i];
        if (a.name != b.name || a.rel != b.rel || a.rhs != b.rhs ||
            a.terms.size() != b.terms.size())
            return false;
        for (size_t k = 0; k < a.terms.size(); ++k)
            if (a.terms[k].var != b.terms[k].var || a.terms[k].coef != b.terms[k].coef)
                return false;
    }
    return true;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Limit: return "limit";
    }
    return "limit";
}

bool solve_status_from_string(const std::string& s, SolveStatus* out) {
    std::string v;
    v.reserve(s.size());
    for (char c : s) v.push_back((char)std::tolower((unsigned char)c));
    if (v == "optimal") *out = SolveStatus::Optimal;
    else if (v == "infeasible") *out = SolveStatus::Infeasible;
    else if (v == "unbounded") *out = SolveStatus::Unbounded;
    else if (v == "limit") *out = SolveStatus::Limit;
    else return false;
    return true;
}

namespace {

std::string family_of(const std::string& row_name) {
    size_t p = row_name.find('(');
    return p == std::string::npos ? row_name : row_name.substr(0, p);
}

} // namespace

VerifyReport verify(const MipProgram& p, const std::vector<double>& x, double tol) {
    VerifyReport rep;
    if (x.size() != p.vars.size()) {
        rep.issues.push_back({"coverage", "assignment",
                              std::fabs((double)x.size() - (double)p.vars.size())});
        rep.ok = false;
        return rep;
    }
    for (size_t j = 0; j < p.vars.size(); ++j) {
        const MipVar& v = p.vars[j];
        double lo = x[j] < v.lb ? (v.lb - x[j]) / std::max(1.0, std::fabs(v.lb)) : 0.0;
        double hi = x[j] > v.ub ? (x[j] - v.ub) / std::max(1.0, std::fabs(v.ub)) : 0.0;
        double r = std::max(lo, hi);
        if (r > tol) rep.issues.push_back({"bound", v.name, r});
        if (v.integer) {
            double frac = std::fabs(x[j] - std::round(x[j]));
            if (frac > tol) rep.issues.push_back({"integrality", v.name, frac});
        }
    }
    for (const MipRow& row : p.rows) {
        double lhs = 0.0, norm = 0.0;
        for (const MipTerm& t : row.terms) {
            lhs += t.coef * x[t.var];
            norm = std::max(norm, std::fabs(t.coef));
        }
        double raw = 0.0;
        switch (row.rel) {
            case Rel::LE: raw = std::max(0.0, lhs - row.rhs); break;
            case Rel::GE: raw = std::max(0.0, row.rhs - lhs); break;
            case Rel::EQ: raw = std::fabs(lhs - row.rhs); break;
        }
        double scaled = raw / std::max(1.0, norm);
        std::string fam = family_of(row.name);
        auto [it, fresh] = rep.worst_by_family.emplace(fam, scaled);
        if (!fresh) it->second = std::max(it->second, scaled);
        if (scaled > tol) rep.issues.push_back({"row", row.name, scaled});
    }
    double objective = p.obj_constant;
    for (size_t j = 0; j < p.vars.size(); ++j) objective += p.obj[j] * x[j];
    rep.objective = objective;
    rep.ok = rep.issues.empty();
    return rep;
}

} // namespace mgp
