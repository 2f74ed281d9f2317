"""Exact rational linear programming.

A two-phase tableau simplex with Bland's rule over Fractions. Phase I doubles
as the feasibility oracle: its final simplex multipliers are a Farkas
certificate whenever the artificial objective stays positive.

Feasible instances are first offered to HiGHS; the floating-point solution
only proposes a support, which is then solved and checked in exact
arithmetic. If that check fails for any reason the exact simplex runs from
scratch, so floats never decide an answer.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .linalg import ONE, ZERO, dot, solve_affine
from .sets import FeasibilityCertificate, HPolytope


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    x: tuple = None
    value: object = None
    certificate: FeasibilityCertificate = None


class _StandardForm:
    """``{z >= 0 : A z = b}`` with ``b >= 0`` plus the bookkeeping to go back."""

    def __init__(self, system):
        self.system = system
        n = system.dim
        sign_row = {}
        other = []
        for r, (a, b) in enumerate(zip(system.A_ub, system.b_ub)):
            nz = [(k, v) for k, v in enumerate(a) if v]
            if b == 0 and len(nz) == 1 and nz[0][1] < 0 and nz[0][0] not in sign_row:
                sign_row[nz[0][0]] = r
            else:
                other.append(r)
        self.sign_row = sign_row
        self.other = other

        # column layout: original variables (split when free), then slacks
        self.columns = []  # (var, sign) or ("slack", row)
        for k in range(n):
            self.columns.append((k, 1))
            if k not in sign_row:
                self.columns.append((k, -1))
        for r in other:
            self.columns.append(("slack", r))

        rows, rhs = [], []
        for r in other:
            a = system.A_ub[r]
            rows.append([self._coef(a, col, r) for col in self.columns])
            rhs.append(system.b_ub[r])
        for a, b in zip(system.A_eq, system.b_eq):
            rows.append([self._coef(a, col, None) for col in self.columns])
            rhs.append(b)
        self.flip = [-1 if b < 0 else 1 for b in rhs]
        self.A = [[v * s for v in row] if s < 0 else row for row, s in zip(rows, self.flip)]
        self.b = [b * s for b, s in zip(rhs, self.flip)]

    @staticmethod
    def _coef(a, col, slack_row):
        if col[0] == "slack":
            return ONE if col[1] == slack_row else ZERO
        k, s = col
        return a[k] if s > 0 else -a[k]

    @property
    def m(self):
        return len(self.A)

    @property
    def N(self):
        return len(self.columns)

    def point(self, z):
        x = [ZERO] * self.system.dim
        for (var, s), v in zip(self.columns, z):
            if var != "slack" and v:
                x[var] += v if s > 0 else -v
        return tuple(x)

    def farkas(self, y_prime):
        """Turn Phase I multipliers into a certificate for the original rows."""
        system = self.system
        w = [y * s for y, s in zip(y_prime, self.flip)]
        y = [-v for v in w]
        y_ub = [ZERO] * system.n_ub
        for r, v in zip(self.other, y):
            y_ub[r] = v
        y_eq = y[len(self.other):]
        for k, r in self.sign_row.items():
            total = ZERO
            for rr, v in zip(self.other, y):
                if v:
                    total += v * system.A_ub[rr][k]
            for v, row in zip(y_eq, system.A_eq):
                if v:
                    total += v * row[k]
            y_ub[r] = total / -system.A_ub[r][k]
        return tuple(y_ub), tuple(y_eq)


class _Tableau:
    def __init__(self, A, b):
        m, N = len(A), len(A[0]) if A else 0
        self.m, self.N = m, N
        # artificial columns N .. N+m-1, rhs last
        self.T = [list(A[i]) + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
        self.basis = [N + i for i in range(m)]

    def pivot(self, r, c):
        T = self.T
        row = T[r]
        pv = row[c]
        if pv != 1:
            row = [v / pv if v else v for v in row]
            T[r] = row
        nz = [j for j, v in enumerate(row) if v]
        for i in range(len(T)):
            if i != r:
                f = T[i][c]
                if f:
                    Ti = T[i]
                    for j in nz:
                        Ti[j] -= f * row[j]
        self.basis[r] = c

    def reduced_costs(self, cost, ncols):
        red = list(cost[:ncols]) + [ZERO] * (ncols - len(cost))
        for i, bv in enumerate(self.basis):
            cb = cost[bv] if bv < len(cost) else ZERO
            if cb:
                for j, v in enumerate(self.T[i][:ncols]):
                    if v:
                        red[j] -= cb * v
        return red

    def run(self, cost, allowed, ncols):
        """Bland's rule minimization over columns ``< allowed``. Returns status."""
        red = self.reduced_costs(cost, ncols)
        T = self.T
        while True:
            enter = next((j for j in range(allowed) if red[j] < 0), None)
            if enter is None:
                return "optimal", red
            best = None
            for i in range(len(T)):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded", red
            r = best[1]
            f = red[enter]
            self.pivot(r, enter)
            row = T[r]
            for j, v in enumerate(row[:-1]):
                if v:
                    red[j] -= f * v

    def values(self, ncols):
        z = [ZERO] * ncols
        for i, bv in enumerate(self.basis):
            if bv < ncols:
                z[bv] = self.T[i][-1]
        return z


def _phase_one(sf):
    tab = _Tableau(sf.A, sf.b)
    cost = [ZERO] * sf.N + [ONE] * sf.m
    _, red = tab.run(cost, sf.N, sf.N + sf.m)
    infeasibility = sum((tab.T[i][-1] for i, bv in enumerate(tab.basis) if bv >= sf.N), ZERO)
    return tab, red, infeasibility


def _guided_witness(sf):
    """Float-proposed support solved exactly; ``None`` unless it checks out."""
    if sf.m == 0:
        return [ZERO] * sf.N
    A = np.array([[float(v) for v in row] for row in sf.A])
    b = np.array([float(v) for v in sf.b])
    try:
        res = linprog(np.zeros(sf.N), A_eq=A, b_eq=b, bounds=(0, None), method="highs-ds")
    except ValueError:
        return None
    if res.status != 0 or res.x is None:
        return None
    scale = max(1.0, float(np.max(np.abs(res.x)))) if res.x.size else 1.0
    support = [j for j, v in enumerate(res.x) if v > 1e-9 * scale]
    sub = [[row[j] for j in support] for row in sf.A]
    solved = solve_affine(sub, sf.b, len(support))
    if solved is None:
        return None
    z_s = solved[0]
    if any(v < 0 for v in z_s):
        return None
    z = [ZERO] * sf.N
    for j, v in zip(support, z_s):
        z[j] = v
    if any(dot(row, z) != rhs for row, rhs in zip(sf.A, sf.b)):
        return None
    return z


def lp_feasible(system, guided=True):
    """Decide ``{x : A_ub x <= b_ub, A_eq x = b_eq}`` exactly.

    Returns a :class:`FeasibilityCertificate` carrying either a witness point
    or a Farkas multiplier vector; both re-verify with ``cert.verify(system)``.
    """
    sf = _StandardForm(system)
    if guided:
        z = _guided_witness(sf)
        if z is not None:
            x = sf.point(z)
            if system.contains(x):
                return FeasibilityCertificate(witness=x)
    if sf.m == 0:
        return FeasibilityCertificate(witness=(ZERO,) * system.dim)
    tab, red, infeasibility = _phase_one(sf)
    if infeasibility == 0:
        return FeasibilityCertificate(witness=sf.point(tab.values(sf.N)))
    y_prime = [ONE - red[sf.N + i] for i in range(sf.m)]
    return FeasibilityCertificate(farkas=sf.farkas(y_prime))


def lp_optimize(system, objective, maximize=False):
    """Exact ``min`` (or ``max``) of ``objective . x`` over the system."""
    c = list(objective)
    if len(c) != system.dim:
        raise ValueError("objective has the wrong length")
    sf = _StandardForm(system)
    sign = -1 if maximize else 1
    cost = []
    for col in sf.columns:
        if col[0] == "slack":
            cost.append(ZERO)
        else:
            k, s = col
            cost.append(sign * s * c[k])
    if sf.m == 0:
        if any(cost):
            return LPResult("unbounded")
        return LPResult("optimal", (ZERO,) * system.dim, ZERO)
    tab, red, infeasibility = _phase_one(sf)
    if infeasibility != 0:
        y_prime = [ONE - red[sf.N + i] for i in range(sf.m)]
        return LPResult("infeasible", certificate=FeasibilityCertificate(farkas=sf.farkas(y_prime)))
    # drive remaining artificials out of the basis, dropping redundant rows
    N = sf.N
    r = 0
    while r < len(tab.T):
        if tab.basis[r] >= N:
            c_in = next((j for j in range(N) if tab.T[r][j] != 0), None)
            if c_in is None:
                del tab.T[r]
                del tab.basis[r]
                continue
            tab.pivot(r, c_in)
        r += 1
    tab.T = [row[:N] + [row[-1]] for row in tab.T]
    status, _ = tab.run(cost, N, N)
    if status == "unbounded":
        return LPResult("unbounded")
    z = tab.values(N)
    x = sf.point(z)
    return LPResult("optimal", x, dot(c, x))


def lp_maximize(system, objective):
    return lp_optimize(system, objective, maximize=True)


def is_bounded(system):
    """Boundedness by optimizing every coordinate direction both ways."""
    for k in range(system.dim):
        e = [ONE if j == k else ZERO for j in range(system.dim)]
        for maximize in (True, False):
            res = lp_optimize(system, e, maximize)
            if res.status == "infeasible":
                return True
            if res.status == "unbounded":
                return False
    return True


def is_empty(system):
    return not lp_feasible(system).feasible


def contains_polytope(outer, inner):
    """``inner`` subset of ``outer``, decided by one LP per row of ``outer``."""
    if is_empty(inner):
        return True
    for a, b in zip(outer.A_ub, outer.b_ub):
        res = lp_maximize(inner, a)
        if res.status == "unbounded" or res.value > b:
            return False
    for a, b in zip(outer.A_eq, outer.b_eq):
        hi = lp_maximize(inner, a)
        lo = lp_optimize(inner, a)
        if hi.status == "unbounded" or lo.status == "unbounded" or hi.value != b or lo.value != b:
            return False
    return True


def same_set(P, Q):
    return contains_polytope(P, Q) and contains_polytope(Q, P)


def in_convex_hull(point, points):
    """Membership of ``point`` in conv(``points``) as an exact LP."""
    points = list(points)
    if not points:
        raise ValueError("convex hull of no points")
    n = len(points)
    d = len(point)
    A_eq = [[p[k] for p in points] for k in range(d)] + [[ONE] * n]
    b_eq = list(point) + [ONE]
    A_ub = [[-ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    system = HPolytope(n, A_ub, [ZERO] * n, A_eq, b_eq)
    return lp_feasible(system)
