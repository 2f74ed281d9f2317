"""H- and V-representation conversions by the double description method.

Both directions reduce to one routine, :func:`extreme_rays`, which lists the
extreme rays of a pointed cone ``{z : G z <= 0}`` given by integer rows.
Equations are eliminated first by parametrizing the affine hull with its free
coordinates, so the cones handed to the routine are always full-dimensional.
"""

from fractions import Fraction

from ..errors import UnboundedInput
from .linalg import ONE, ZERO, dot, inverse, nullspace, primitive, rank, rref, solve_affine
from .lp import in_convex_hull, lp_feasible
from .sets import HPolytope, VPolytope


def _independent_rows(G, n):
    chosen, reduced = [], []
    for i, row in enumerate(G):
        if rank(reduced + [row], n) > len(reduced):
            chosen.append(i)
            reduced.append(row)
            if len(chosen) == n:
                break
    return chosen


def extreme_rays(G):
    """Extreme rays of ``{z : G z <= 0}`` for a full-column-rank integer ``G``.

    Rays come back as coprime integer tuples. Adjacency of a positive and a
    negative ray is decided combinatorially: their common zero set must have
    at least ``n - 2`` rows and must not be contained in the zero set of any
    third ray.
    """
    G = [list(map(int, row)) for row in G]
    if not G:
        raise ValueError("empty constraint matrix")
    n = len(G[0])
    basis = _independent_rows(G, n)
    if len(basis) < n:
        raise ValueError("cone is not pointed")
    inv = inverse([[Fraction(v) for v in G[i]] for i in basis])
    rays, zeros = [], []
    full = 0
    for i in basis:
        full |= 1 << i
    for j in range(n):
        rays.append(tuple(primitive([-inv[r][j] for r in range(n)])))
        zeros.append(full & ~(1 << basis[j]))

    in_basis = set(basis)
    for i, row in enumerate(G):
        if i in in_basis:
            continue
        vals = [sum(a * b for a, b in zip(row, r)) for r in rays]
        plus = [k for k, v in enumerate(vals) if v > 0]
        if not plus:
            # row is redundant for the current cone; rays tight on it record that
            zeros = [z | (1 << i) if v == 0 else z for z, v in zip(zeros, vals)]
            continue
        minus = [k for k, v in enumerate(vals) if v < 0]
        new_rays, new_zeros = [], []
        for p in plus:
            for m in minus:
                common = zeros[p] & zeros[m]
                if common.bit_count() < n - 2:
                    continue
                if any(
                    q != p and q != m and (zeros[q] & common) == common for q in range(len(rays))
                ):
                    continue
                vp, vm = vals[p], vals[m]
                combo = [vp * a - vm * b for a, b in zip(rays[m], rays[p])]
                new_rays.append(tuple(primitive(combo)))
                new_zeros.append(common | (1 << i))
        kept = [k for k, v in enumerate(vals) if v <= 0]
        rays = [rays[k] for k in kept] + new_rays
        zeros = [zeros[k] | (1 << i) if vals[k] == 0 else zeros[k] for k in kept] + new_zeros

    seen, out = set(), []
    for r in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _affine_parametrization(A_eq, b_eq, dim):
    """``x = x0 + sum_f y_f col_f`` over the free coordinates, or ``None`` if inconsistent."""
    solved = solve_affine(A_eq, b_eq, dim)
    if solved is None:
        return None
    x0, free, R, pivots = solved
    cols = []
    for f in free:
        col = [ZERO] * dim
        col[f] = ONE
        for row, p in zip(R, pivots):
            col[p] = -row[f]
        cols.append(tuple(col))
    return x0, free, cols


def vertex_enumeration(P):
    """Vertices of a bounded H-polytope, lexicographically sorted."""
    param = _affine_parametrization(P.A_eq, P.b_eq, P.dim)
    if param is None:
        return VPolytope(P.dim, ())
    x0, free, cols = param
    k = len(free)
    A_y = [[dot(a, c) for c in cols] for a in P.A_ub]
    b_y = [b - dot(a, x0) for a, b in zip(P.A_ub, P.b_ub)]
    if k == 0:
        return VPolytope(P.dim, (x0,) if all(v >= 0 for v in b_y) else ())
    reduced = HPolytope(k, A_y, b_y)
    if not lp_feasible(reduced).feasible:
        return VPolytope(P.dim, ())
    if rank(A_y, k) < k:
        raise UnboundedInput("the polytope contains a line")
    G = [primitive(list(a) + [-b]) for a, b in zip(A_y, b_y)]
    G = [row for row in G if any(row)]
    G.append([0] * k + [-1])
    vertices = []
    for ray in extreme_rays(G):
        t = ray[-1]
        if t == 0:
            raise UnboundedInput("the polytope has a recession direction")
        y = [Fraction(v, t) for v in ray[:-1]]
        x = tuple(x0[j] + sum((yy * c[j] for yy, c in zip(y, cols) if yy), ZERO) for j in range(P.dim))
        vertices.append(x)
    return VPolytope(P.dim, sorted(set(vertices)))


def affine_hull_equations(points, dim):
    """Equations ``(E, f)`` in reduced echelon form cutting out aff(points)."""
    points = [tuple(p) for p in points]
    v0 = points[0]
    diffs = [[a - b for a, b in zip(p, v0)] for p in points[1:]]
    normals = nullspace(diffs, dim) if diffs else [
        tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)
    ]
    if not normals:
        return [], [], []
    R, pivots = rref(normals, dim)
    rhs = [dot(row, v0) for row in R]
    return R, rhs, pivots


def hull(V):
    """Irredundant H-representation of conv(V): facets plus affine-hull equations."""
    points = sorted(set(V.vertices))
    dim = V.dim
    if not points:
        return HPolytope(dim, [[ZERO] * dim], [-ONE])
    E, f, pivots = affine_hull_equations(points, dim)
    free = [c for c in range(dim) if c not in pivots]
    k = len(free)
    if k == 0:
        return HPolytope(dim, (), (), E, f)
    ys = [[p[c] for c in free] for p in points]
    G = [primitive(y + [ONE]) for y in ys]
    A_ub, b_ub = [], []
    for ray in extreme_rays(G):
        a, beta = ray[:-1], ray[-1]
        if not any(a):
            continue
        row = [ZERO] * dim
        for c, v in zip(free, a):
            row[c] = Fraction(v)
        A_ub.append(row)
        b_ub.append(Fraction(-beta))
    order = sorted(range(len(A_ub)), key=lambda r: (A_ub[r], b_ub[r]))
    return HPolytope(dim, [A_ub[r] for r in order], [b_ub[r] for r in order], E, f)


def irredundant_points(points, dim):
    """Drop duplicates and points lying in the hull of the others."""
    pts = sorted(set(tuple(p) for p in points))
    i = 0
    while i < len(pts) and len(pts) > 1:
        others = pts[:i] + pts[i + 1:]
        if in_convex_hull(pts[i], others).feasible:
            pts = others
        else:
            i += 1
    return VPolytope(dim, pts)


def image_polytope(f, P):
    """Image of a V-polytope under an affine map, irredundant."""
    if isinstance(P, HPolytope):
        P = vertex_enumeration(P)
    return irredundant_points([f(v) for v in P.vertices], f.target_dim)
