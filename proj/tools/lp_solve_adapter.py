#!/usr/bin/env python3
"""Solve an LP/MILP interchange file with scipy's HiGHS backend.

Usage: lp_solve_adapter.py IN.lp OUT.sol [--rel-gap G] [--time-limit S]

Reads the documented interchange format (see docs/lp-format.md), solves it,
and writes a solution file (STATUS/OBJ/GAP plus one name-value line per
variable). Exits nonzero on parse or solver errors so callers keep the
temp files for inspection.
"""

import argparse
import math
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

INF = math.inf


def tokens(line):
    cut = line.find("\\")
    if cut >= 0:
        line = line[:cut]
    return line.split()


def to_number(tok):
    t = tok.lower()
    if t in ("inf", "+inf", "infinity"):
        return INF
    if t in ("-inf", "-infinity"):
        return -INF
    return float(tok)


def is_number(tok):
    try:
        to_number(tok)
        return True
    except ValueError:
        return False


class Program:
    def __init__(self):
        self.maximize = True
        self.names = []
        self.index = {}
        self.lb = []
        self.ub = []
        self.integer = []
        self.bounded = []
        self.obj = {}
        self.obj_constant = 0.0
        self.rows = []  # (name, {var: coef}, rel, rhs)

    def var(self, name):
        if name in self.index:
            return self.index[name]
        j = len(self.names)
        self.index[name] = j
        self.names.append(name)
        self.lb.append(0.0)
        self.ub.append(INF)
        self.integer.append(False)
        self.bounded.append(False)
        return j


def parse_expr(p, toks):
    terms = {}
    constant = 0.0
    sign = 1.0
    coef = 1.0
    have_coef = False
    for t in toks:
        if t in ("+", "-"):
            if have_coef:
                raise ValueError(f"dangling coefficient before '{t}'")
            if t == "-":
                sign = -sign
        elif is_number(t):
            v = to_number(t)
            if have_coef:
                constant += sign * coef
                coef = v
            else:
                coef = v
                have_coef = True
        else:
            j = p.var(t)
            terms[j] = terms.get(j, 0.0) + sign * (coef if have_coef else 1.0)
            sign = 1.0
            coef = 1.0
            have_coef = False
    if have_coef:
        constant += sign * coef
    return terms, constant


def parse(text):
    p = Program()
    section = None
    obj_toks = []
    row_lines = []
    bound_lines = []
    gen_lines = []
    bin_lines = []
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = tokens(raw)
        if not toks:
            continue
        head = toks[0].lower()
        if len(toks) == 1 or head == "subject":
            if head in ("maximize", "max", "minimize", "min"):
                p.maximize = head in ("maximize", "max")
                section = "obj"
                continue
            if (head == "subject" and len(toks) == 2 and toks[1].lower() == "to") or head in ("st", "s.t."):
                section = "rows"
                continue
            if head == "bounds":
                section = "bounds"
                continue
            if head in ("generals", "general", "gen"):
                section = "gen"
                continue
            if head in ("binaries", "binary", "bin"):
                section = "bin"
                continue
            if head == "end":
                saw_end = True
                section = "done"
                continue
        if section == "obj":
            obj_toks.extend(toks)
        elif section == "rows":
            row_lines.append((lineno, toks))
        elif section == "bounds":
            bound_lines.append((lineno, toks))
        elif section == "gen":
            gen_lines.append(toks)
        elif section == "bin":
            bin_lines.append(toks)
        else:
            raise ValueError(f"line {lineno}: content outside sections")
    if not saw_end:
        raise ValueError("missing End line")

    # Bounds first so variable order matches the emitter's declaration order.
    for lineno, t in bound_lines:
        if len(t) == 2 and t[1].lower() == "free":
            j = p.var(t[0])
            p.lb[j], p.ub[j] = -INF, INF
            p.bounded[j] = True
        elif len(t) == 3 and t[1] == "=":
            j = p.var(t[0])
            p.lb[j] = p.ub[j] = to_number(t[2])
            p.bounded[j] = True
        elif len(t) == 3 and t[1] in ("<=", ">="):
            j = p.var(t[0])
            if t[1] == "<=":
                p.ub[j] = to_number(t[2])
            else:
                p.lb[j] = to_number(t[2])
            p.bounded[j] = True
        elif len(t) == 5 and t[1] == "<=" and t[3] == "<=":
            j = p.var(t[2])
            p.lb[j] = to_number(t[0])
            p.ub[j] = to_number(t[4])
            p.bounded[j] = True
        else:
            raise ValueError(f"line {lineno}: malformed bounds line")
    for toks in gen_lines:
        for name in toks:
            p.integer[p.var(name)] = True
    for toks in bin_lines:
        for name in toks:
            j = p.var(name)
            p.integer[j] = True
            if not p.bounded[j]:
                p.lb[j], p.ub[j] = 0.0, 1.0

    if obj_toks:
        if obj_toks[0].endswith(":"):
            obj_toks = obj_toks[1:]
        elif len(obj_toks) > 1 and obj_toks[1] == ":":
            obj_toks = obj_toks[2:]
    p.obj, p.obj_constant = parse_expr(p, obj_toks)

    for lineno, t in row_lines:
        if t and t[0].endswith(":") and len(t[0]) > 1:
            name, t = t[0][:-1], t[1:]
        elif len(t) > 1 and t[1] == ":":
            name, t = t[0], t[2:]
        else:
            name = f"r{len(p.rows)}"
        rel_at = next((i for i, tok in enumerate(t) if tok in ("<=", "<", ">=", ">", "=")), None)
        if rel_at is None or rel_at + 2 != len(t):
            raise ValueError(f"line {lineno}: row needs 'expr REL rhs'")
        rel = {"<": "<=", ">": ">="}.get(t[rel_at], t[rel_at])
        rhs = to_number(t[rel_at + 1])
        terms, constant = parse_expr(p, t[:rel_at])
        p.rows.append((name, terms, rel, rhs - constant))
    return p


def fmt(v):
    return format(float(v), ".17g")


def solve(p, rel_gap, time_limit):
    n = len(p.names)
    c = np.zeros(n)
    for j, v in p.obj.items():
        c[j] = v
    sense = -1.0 if p.maximize else 1.0
    constraints = []
    if p.rows:
        a = np.zeros((len(p.rows), n))
        lo = np.full(len(p.rows), -INF)
        hi = np.full(len(p.rows), INF)
        for i, (_, terms, rel, rhs) in enumerate(p.rows):
            for j, v in terms.items():
                a[i, j] = v
            if rel in ("<=", "="):
                hi[i] = rhs
            if rel in (">=", "="):
                lo[i] = rhs
        constraints.append(LinearConstraint(a, lo, hi))
    options = {"mip_rel_gap": rel_gap}
    if time_limit > 0:
        options["time_limit"] = time_limit
    res = milp(
        c=sense * c,
        constraints=constraints,
        integrality=np.array([1 if f else 0 for f in p.integer]),
        bounds=Bounds(np.array(p.lb), np.array(p.ub)),
        options=options,
    )
    status = {0: "optimal", 1: "limit", 2: "infeasible", 3: "unbounded"}.get(res.status, "limit")
    lines = [f"STATUS {status}"]
    if res.x is not None:
        obj = float(c @ res.x) + p.obj_constant
        lines.append(f"OBJ {fmt(obj)}")
        gap = getattr(res, "mip_gap", None)
        if gap is not None and gap > 0:
            lines.append(f"GAP {fmt(gap)}")
        for j, name in enumerate(p.names):
            lines.append(f"{name} {fmt(res.x[j])}")
    elif status == "optimal":
        raise RuntimeError("solver reported optimal without a solution vector")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lp")
    ap.add_argument("sol")
    ap.add_argument("--rel-gap", type=float, default=1e-6)
    ap.add_argument("--time-limit", type=float, default=0.0)
    args = ap.parse_args()
    with open(args.lp) as f:
        text = f.read()
    try:
        program = parse(text)
        out = solve(program, args.rel_gap, args.time_limit)
    except (ValueError, RuntimeError) as e:
        print(f"lp_solve_adapter: {e}", file=sys.stderr)
        return 1
    with open(args.sol, "w") as f:
        f.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
