#!/usr/bin/env python3
"""Solve an exported follower model with scipy's MILP solver and compare it
with brute-force propagation on the instance.

    impd export-lp -i data/figure1.impd --seed-set 0,3 -o figure1.lp
    python3 tools/check_lp_export.py figure1.lp data/figure1.impd --expect 1.0

Thresholds are read back from the model (theta = epsilon - rhs), so the
brute force uses exactly the realizations written to the file.
"""
import argparse
import itertools
import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

TERM = re.compile(r"([+-])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def parse_expr(text):
    coeffs = {}
    for sign, num, var in TERM.findall(text):
        c = float(num) if num else 1.0
        if sign == "-":
            c = -c
        coeffs[var] = coeffs.get(var, 0.0) + c
    return coeffs


def parse_lp(path):
    objective, rows, binaries, section = {}, [], [], None
    for raw in open(path):
        line = raw.split("\\", 1)[0].strip()
        if not line:
            continue
        key = line.lower()
        if key in ("minimize", "subject to", "binaries", "end"):
            section = key
            continue
        if section == "minimize":
            objective = parse_expr(line.split(":", 1)[1])
        elif section == "subject to":
            name, body = line.split(":", 1)
            lhs, op, rhs = re.split(r"\s*(<=|>=|=)\s*", body.strip())
            rows.append((name.strip(), parse_expr(lhs), op, float(rhs)))
        elif section == "binaries":
            binaries.extend(line.split())
    return objective, rows, binaries


def solve_lp(objective, rows, binaries):
    names = sorted(set(binaries) | set(objective) | {v for _, c, _, _ in rows for v in c})
    index = {v: k for k, v in enumerate(names)}
    c = np.zeros(len(names))
    for v, w in objective.items():
        c[index[v]] = w
    a = np.zeros((len(rows), len(names)))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (_, coeffs, op, rhs) in enumerate(rows):
        for v, w in coeffs.items():
            a[r, index[v]] = w
        if op in ("<=", "="):
            hi[r] = rhs
        if op in (">=", "="):
            lo[r] = rhs
    integrality = np.array([1 if v in binaries else 0 for v in names])
    res = milp(c, constraints=LinearConstraint(a, lo, hi), integrality=integrality, bounds=Bounds(0, 1))
    if not res.success:
        sys.exit(f"MILP solve failed: {res.message}")
    return res.fun, {v: res.x[index[v]] for v in names}


def load_instance(path):
    lines = [l.split() for l in open(path) if l.strip()]
    head = {l[0]: l[1:] for l in lines}
    n = int(head["nodes"][0])
    follower_budget = float(head["follower_budget"][0])
    k = next(i for i, l in enumerate(lines) if l[0] == "arcs")
    arcs = [(int(t), int(h), float(w)) for t, h, w in lines[k + 1 : k + 1 + int(lines[k][1])]]
    k = next(i for i, l in enumerate(lines) if l[0] == "costs")
    deact = [float(l[2]) for l in lines[k + 1 : k + 1 + n]]
    return n, arcs, deact, follower_budget


def propagate(n, arcs, seed, blocked, theta):
    active = [v in seed and v not in blocked for v in range(n)]
    changed = True
    while changed:
        changed = False
        incoming = [0.0] * n
        for t, h, w in arcs:
            if active[t]:
                incoming[h] += w
        for v in range(n):
            if not active[v] and v not in blocked and incoming[v] >= theta[v]:
                active[v] = changed = True
    return sum(active)


def brute_force(n, arcs, deact, budget, seed, thetas):
    best = None
    for k in range(len(seed) + 1):
        for ys in itertools.combinations(sorted(seed), k):
            if sum(deact[v] for v in ys) > budget + 1e-9:
                continue
            z = sum(propagate(n, arcs, seed, set(ys), th) for th in thetas) / len(thetas)
            best = z if best is None else min(best, z)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("lp")
    ap.add_argument("instance")
    ap.add_argument("--epsilon", type=float, default=1e-6)
    ap.add_argument("--expect", type=float)
    args = ap.parse_args()

    objective, rows, binaries = parse_lp(args.lp)
    value, _ = solve_lp(objective, rows, binaries)

    n, arcs, deact, budget = load_instance(args.instance)
    seed = {int(v[2:]) for v in binaries if v.startswith("y_")}
    realizations = sorted({int(name.rsplit("_", 1)[1]) for name, *_ in rows if name.startswith("thr_")})
    thetas = [[0.0] * n for _ in realizations]
    for name, _, _, rhs in rows:
        if name.startswith("thr_"):
            _, i, r = name.split("_")
            thetas[int(r)][int(i)] = args.epsilon - rhs
    oracle = brute_force(n, arcs, deact, budget, seed, thetas)

    print(f"milp objective {value:.6f}, brute force {oracle:.6f}")
    ok = abs(value - oracle) <= 1e-6
    if args.expect is not None:
        ok = ok and abs(value - args.expect) <= 1e-6
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
