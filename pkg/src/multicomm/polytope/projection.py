"""Fourier-Motzkin elimination with exact LP redundancy pruning."""

from .linalg import ONE, ZERO, primitive
from .lp import lp_feasible, lp_maximize
from .sets import HPolytope


def _normalize(a, b):
    ints = primitive(list(a) + [b])
    return tuple(ints[:-1]), ints[-1]


def remove_redundant(P):
    """Drop inequality rows implied by the remaining ones (one LP per row)."""
    seen = set()
    rows = []
    for a, b in zip(P.A_ub, P.b_ub):
        if not any(a):
            if b < 0:
                return HPolytope(P.dim, [[ZERO] * P.dim], [-ONE])
            continue
        key = _normalize(a, b)
        if key not in seen:
            seen.add(key)
            rows.append((a, b))
    eqs = list(zip(P.A_eq, P.b_eq))
    if not lp_feasible(HPolytope.from_rows(P.dim, rows, eqs)).feasible:
        return HPolytope(P.dim, [[ZERO] * P.dim], [-ONE])
    i = 0
    while i < len(rows):
        a, b = rows[i]
        others = rows[:i] + rows[i + 1:]
        res = lp_maximize(HPolytope.from_rows(P.dim, others, eqs), a)
        if res.status == "optimal" and res.value <= b:
            rows = others
        else:
            i += 1
    return HPolytope.from_rows(P.dim, rows, eqs)


def _substitute(rows, k, pivot_row):
    """Eliminate x_k from ``rows`` using the equation ``pivot_row``."""
    pa, pb = pivot_row
    out = []
    for a, b in rows:
        if a[k] == 0:
            out.append((a, b))
            continue
        f = a[k] / pa[k]
        out.append((tuple(x - f * y for x, y in zip(a, pa)), b - f * pb))
    return out


def _fm_step(rows, k):
    pos = [(a, b) for a, b in rows if a[k] > 0]
    neg = [(a, b) for a, b in rows if a[k] < 0]
    out = [(a, b) for a, b in rows if a[k] == 0]
    for ap, bp in pos:
        for an, bn in neg:
            cp, cn = -an[k], ap[k]
            out.append((tuple(cp * x + cn * y for x, y in zip(ap, an)), cp * bp + cn * bn))
    return out


def fm_project(P, keep):
    """Projection of ``P`` onto the coordinates ``keep`` (in that order).

    Equations are used for substitution whenever they involve the variable
    being eliminated; remaining variables go through Fourier-Motzkin pairing.
    """
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= k < P.dim for k in keep):
        raise ValueError("keep must list distinct coordinates of the polytope")
    ub = list(zip(P.A_ub, P.b_ub))
    eq = list(zip(P.A_eq, P.b_eq))
    for k in (j for j in range(P.dim) if j not in keep):
        pivot = next((r for r in eq if r[0][k] != 0), None)
        if pivot is not None:
            eq.remove(pivot)
            ub = _substitute(ub, k, pivot)
            eq = _substitute(eq, k, pivot)
        else:
            ub = _fm_step(ub, k)
        bad_eq = [(a, b) for a, b in eq if not any(a) and b != 0]
        eq = [(a, b) for a, b in eq if any(a)]
        if bad_eq:
            ub = [((ZERO,) * P.dim, -ONE)]
        current = remove_redundant(HPolytope.from_rows(P.dim, ub, eq))
        ub = list(zip(current.A_ub, current.b_ub))
        eq = list(zip(current.A_eq, current.b_eq))
    return HPolytope.from_rows(
        len(keep),
        [(tuple(a[j] for j in keep), b) for a, b in ub],
        [(tuple(a[j] for j in keep), b) for a, b in eq],
    )
