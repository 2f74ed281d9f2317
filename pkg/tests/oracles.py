"""Independent reference computations.

Nothing here calls the package's own limit, LP, or conversion code. The
brute-force routines enumerate everything; floating-point checks use
numpy/scipy directly.
"""

import itertools
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog


def brute_limit(diagram):
    """Every full tuple in the product of all spaces that satisfies every map."""
    idx = list(diagram.indices)
    pos = {i: k for k, i in enumerate(idx)}
    out = []
    for t in itertools.product(*(diagram.spaces[i].points for i in idx)):
        if all(f(t[pos[i]]) == t[pos[j]] for (i, j), f in diagram.maps.items()):
            out.append(t)
    return set(out)


def marginals(diagram, weights):
    """``weights``: limit tuple -> Fraction. Returns index -> {point: mass} with zeros kept."""
    idx = list(diagram.indices)
    out = {i: {p: Fraction(0) for p in diagram.spaces[i].points} for i in idx}
    for t, w in weights.items():
        for k, i in enumerate(idx):
            out[i][t[k]] += w
    return out


def solve_exact(A, b):
    """Unique solution of a square rational system, or None if singular (plain Gaussian elimination)."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[r][n] / M[r][r] for r in range(n))


def brute_vertices(A_ub, b_ub, A_eq=(), b_eq=()):
    """Vertices by trying every basis: dim-subsets of rows (all equations included) solved exactly."""
    rows = [(list(a), b) for a, b in zip(A_ub, b_ub)]
    eqs = [(list(a), b) for a, b in zip(A_eq, b_eq)]
    dim = len((rows + eqs)[0][0])
    found = set()
    for subset in itertools.combinations(range(len(rows)), max(0, dim - len(eqs))):
        chosen = eqs + [rows[k] for k in subset]
        if len(chosen) != dim:
            continue
        x = solve_exact([a for a, _ in chosen], [b for _, b in chosen])
        if x is None:
            continue
        if all(sum(ai * xi for ai, xi in zip(a, x)) <= b for a, b in rows) and all(
            sum(ai * xi for ai, xi in zip(a, x)) == b for a, b in eqs
        ):
            found.add(x)
    return found


def float_feasible(A_ub, b_ub, A_eq=(), b_eq=(), dim=None):
    """HiGHS feasibility with free variables."""
    dim = dim if dim is not None else len((list(A_ub) + list(A_eq))[0])
    kw = {}
    if len(A_ub):
        kw["A_ub"] = np.array([[float(v) for v in r] for r in A_ub])
        kw["b_ub"] = np.array([float(v) for v in b_ub])
    if len(A_eq):
        kw["A_eq"] = np.array([[float(v) for v in r] for r in A_eq])
        kw["b_eq"] = np.array([float(v) for v in b_eq])
    res = linprog(np.zeros(dim), bounds=[(None, None)] * dim, method="highs", **kw)
    return res.status == 0


def float_in_hull(point, points):
    pts = np.array([[float(v) for v in p] for p in points]).T
    n = pts.shape[1]
    A_eq = np.vstack([pts, np.ones((1, n))])
    b_eq = np.r_[[float(v) for v in point], 1.0]
    res = linprog(np.zeros(n), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
    return res.status == 0
