#!/usr/bin/env python3
"""Regenerates the frozen oracle fixtures under tests/fixtures.

Every value here comes from code that shares nothing with the C++ library:
the Karate graph is taken from networkx, the SDP is solved by cvxpy
(CLARABEL), LPs by HiGHS (scipy.optimize.linprog and highspy).

Usage: python3 tools/make_fixtures.py BUILD_DIR
The build directory must contain the `divmax` binary (used only to export
the model files that the external engines then read back).
"""

import subprocess
import sys
from pathlib import Path

import cvxpy as cp
import highspy
import networkx as nx
import numpy as np
from scipy.optimize import linprog

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "tests" / "fixtures"


def karate_instance():
    g = nx.karate_club_graph()
    n = g.number_of_nodes()
    s = np.array([1 if g.nodes[v]["club"] == "Mr. Hi" else -1 for v in range(n)])
    s[8], s[9] = -1, 1
    L = np.zeros((n, n))
    for u, v in g.edges():
        L[u, u] += 1
        L[v, v] += 1
        L[u, v] -= 1
        L[v, u] -= 1
    return L, s


def objective(L, s):
    D = np.diag(s)
    Q = D @ L @ D
    return Q - np.diag(Q.sum(axis=1))


def sdp_value(P, b, k):
    n = P.shape[0]
    Y = cp.Variable((n + 1, n + 1), symmetric=True)
    X = Y[:n, :n]
    x = Y[:n, n]
    cons = [Y >> 0, Y[n, n] == 1, cp.diag(X) == x, cp.trace(np.outer(b, b) @ X) <= k * k]
    prob = cp.Problem(cp.Maximize(cp.trace(P @ X)), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    return prob.value


def glover_value(P, b, k):
    n = P.shape[0]
    U = np.maximum(P, 0).sum(axis=1)
    Lo = np.minimum(P, 0).sum(axis=1)
    c = np.concatenate([np.zeros(n), -np.ones(n)])
    A, rhs = [np.concatenate([b, np.zeros(n)])], [k]
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1
        row = np.zeros(2 * n)
        row[i], row[n + i] = Lo[i], -1
        A.append(row); rhs.append(0)
        row = np.zeros(2 * n)
        row[i], row[n + i] = -U[i], 1
        A.append(row); rhs.append(0)
        row = np.concatenate([-P[i] - Lo[i] * e, e])
        A.append(row); rhs.append(-Lo[i])
        row = np.concatenate([P[i] + U[i] * e, -e])
        A.append(row); rhs.append(U[i])
    bounds = [(0, 1)] * n + [(None, None)] * n
    res = linprog(c, A_ub=np.array(A), b_ub=np.array(rhs), bounds=bounds, method="highs")
    assert res.status == 0
    return -res.fun


def parse_sdpa(path):
    tokens = [ln.split() for ln in path.read_text().splitlines() if ln.strip()]
    m = int(tokens[0][0])
    sizes = [int(t) for t in tokens[2]]
    c = [float(t) for t in tokens[3]]
    F = [[np.zeros((abs(sz), abs(sz))) for sz in sizes] for _ in range(m + 1)]
    for t in tokens[4:]:
        mat, blk, i, j, v = int(t[0]), int(t[1]) - 1, int(t[2]) - 1, int(t[3]) - 1, float(t[4])
        F[mat][blk][i, j] = v
        F[mat][blk][j, i] = v
    return sizes, c, F


def solve_sdpa(path):
    sizes, c, F = parse_sdpa(path)
    blocks = []
    cons = []
    for sz in sizes:
        if sz > 0:
            Y = cp.Variable((sz, sz), symmetric=True)
            cons.append(Y >> 0)
            blocks.append(Y)
        else:
            d = cp.Variable(-sz, nonneg=True)
            blocks.append(cp.diag(d))

    def inner(Fm):
        return sum(cp.sum(cp.multiply(Fm[b], blocks[b])) for b in range(len(sizes)))

    for i in range(1, len(c) + 1):
        cons.append(inner(F[i]) == c[i - 1])
    prob = cp.Problem(cp.Maximize(inner(F[0])), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    return prob.value


def solve_lp_file(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(str(path))
    h.run()
    assert h.getModelStatus() == highspy.HighsModelStatus.kOptimal
    return h.getInfo().objective_function_value


def random_lps(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        n = int(rng.integers(2, 51))
        m = int(rng.integers(1, 41))
        c = np.round(rng.normal(size=n), 3)
        A = np.round(rng.normal(size=(m, n)), 3)
        A[rng.random((m, n)) < 0.3] = 0.0
        x0 = rng.random(n) * 2
        senses = rng.choice(["L", "G", "E"], size=m, p=[0.6, 0.25, 0.15])
        rhs = A @ x0
        slack = np.round(rng.random(m) * 2, 3)
        rhs = np.where(senses == "L", rhs + slack, np.where(senses == "G", rhs - slack, rhs))
        rhs = np.round(rhs, 6)
        if t % 10 == 7:
            # contradictory pair of rows
            A = np.vstack([A, A[0], A[0]])
            rhs = np.concatenate([rhs, [rhs[0] + 5, rhs[0] + 6]])
            senses = np.concatenate([senses, ["L", "G"]])
            m += 2
        lo = np.zeros(n)
        hi = np.where(rng.random(n) < 0.92, np.round(1 + 3 * rng.random(n), 3), np.inf)
        free = rng.random(n) < 0.04
        lo[free] = -np.inf
        hi[free] = np.inf
        if t % 10 == 3:
            hi[:] = np.inf
            lo[:] = 0.0
            c = np.abs(c) + 0.1
            A = -np.abs(A)
            senses[:] = "L"
            rhs = np.abs(rhs) + 1.0
        A_ub, b_ub, A_eq, b_eq = [], [], [], []
        for r in range(m):
            if senses[r] == "L":
                A_ub.append(A[r]); b_ub.append(rhs[r])
            elif senses[r] == "G":
                A_ub.append(-A[r]); b_ub.append(-rhs[r])
            else:
                A_eq.append(A[r]); b_eq.append(rhs[r])
        res = linprog(-c, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                      A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None,
                      bounds=list(zip([None if np.isinf(v) else v for v in lo],
                                      [None if np.isinf(v) else v for v in hi])),
                      method="highs", options={"primal_feasibility_tolerance": 1e-10,
                                               "dual_feasibility_tolerance": 1e-10})
        status = {0: "optimal", 2: "infeasible", 3: "unbounded"}[res.status]
        value = -res.fun if res.status == 0 else 0.0
        out.append((n, m, c, lo, hi, A, senses, rhs, status, value))
    return out


def fmt(v):
    if np.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def main():
    build = Path(sys.argv[1]).resolve()
    divmax = build / "divmax"

    tri_args = ["--edges", str(FIX / "triangle.edges"), "--exposure", str(FIX / "triangle.exposure"), "--k", "3"]
    subprocess.run([divmax, "export", "sdpa", *tri_args, "-o", FIX / "triangle.dat-s"], check=True)
    for k in (3, 4):
        subprocess.run([divmax, "export", "lp", "--dataset", "karate", "--k", str(k), "-o",
                        FIX / f"karate_k{k}.lp"], check=True)

    L, s = karate_instance()
    P = objective(L, s)
    n = len(s)
    b = np.ones(n)
    lines = ["# external relaxation values, gain units (normalized value = 10 + gain)"]
    lines.append(f"karate_eta_norm {float(s @ L @ s / 4)!r}")
    lines.append(f"triangle_sdpa_clarabel {float(solve_sdpa(FIX / 'triangle.dat-s'))!r}")
    for k in (3, 4, 34):
        lines.append(f"karate_sdp_k{k} {sdp_value(P, b, k)!r}")
    for k in (3, 4, 34):
        lines.append(f"karate_glover_k{k} {glover_value(P, b, k)!r}")
    for k in (3, 4):
        lines.append(f"karate_lpfile_highs_k{k} {solve_lp_file(FIX / f'karate_k{k}.lp')!r}")
    (FIX / "relaxations.txt").write_text("\n".join(lines) + "\n")

    lps = random_lps(100, 20240611)
    out = ["# n m / c / lower / upper / rows (sense rhs a_1..a_n) / status value"]
    for n, m, c, lo, hi, A, senses, rhs, status, value in lps:
        out.append(f"lp {n} {m}")
        out.append(" ".join(fmt(v) for v in c))
        out.append(" ".join(fmt(v) for v in lo))
        out.append(" ".join(fmt(v) for v in hi))
        for r in range(m):
            out.append(f"{senses[r]} {fmt(rhs[r])} " + " ".join(fmt(v) for v in A[r]))
        out.append(f"{status} {fmt(value)}")
    (FIX / "random_lps.txt").write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
