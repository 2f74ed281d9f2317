"""Openness of affine surjections between polytopes.

The exact certifier works face by face. At a relative-interior point ``x`` of
a face of ``P`` it checks that the linear part of ``f`` maps the tangent cone
of ``P`` at ``x`` onto a cone containing the tangent cone of ``Q`` at
``f(x)``. The tangent cone of ``Q`` is generated by ``v - f(x)`` over the
vertices ``v`` of ``Q``, so each face needs one membership test per vertex.
A vertex preimage ``u`` of ``v`` gives the candidate direction ``u - x``,
whose image is ``v - f(x)`` because ``f`` is affine; it is kept when an exact
test puts it in the tangent cone of ``P``, otherwise an LP decides.

:func:`sampled_metric_openness` is an independent floating-point estimate of
the openness modulus in the sup-norm.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.linalg import null_space
from scipy.optimize import linprog

from ..errors import FaceBudgetExceeded, NotSurjectiveOntoQ, PointOutside
from .convert import hull, image_polytope, vertex_enumeration
from .linalg import ZERO, dot, format_fraction, vec
from .lp import in_convex_hull, lp_feasible
from .sets import FeasibilityCertificate, HPolytope, PolyhedralCone, VPolytope

DEFAULT_FACE_BUDGET = 10_000


def tangent_cone(P, x):
    """Cone of feasible directions of ``P`` at ``x``."""
    x = vec(x)
    if not P.contains(x):
        raise PointOutside(f"{[format_fraction(v) for v in x]} is not in the polytope")
    rows = [P.A_ub[r] for r in P.tight(x)]
    return PolyhedralCone(P.dim, rows, P.A_eq)


def enumerate_faces(V, H, budget=DEFAULT_FACE_BUDGET):
    """Nonempty faces of ``V`` as sorted tuples of vertex indices.

    ``H`` must list the facets of conv(V) irredundantly (as :func:`hull`
    returns them). Faces are intersections of facet vertex sets; the polytope
    itself comes first, then faces by decreasing size.
    """
    n = len(V.vertices)
    if n == 0:
        return []
    facets = []
    for a, b in zip(H.A_ub, H.b_ub):
        facets.append(frozenset(i for i, v in enumerate(V.vertices) if dot(a, v) == b))
    top = frozenset(range(n))
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for face in frontier:
            for fs in facets:
                sub = face & fs
                if sub and sub != face and sub not in seen:
                    seen.add(sub)
                    if len(seen) > budget:
                        raise FaceBudgetExceeded(budget)
                    nxt.append(sub)
        frontier = nxt
    return sorted((tuple(sorted(f)) for f in seen), key=lambda f: (-len(f), f))


@dataclass(frozen=True)
class FaceCertificate:
    face: tuple  # indices into the domain vertex list
    point: tuple  # barycenter of the face
    directions: tuple  # pairs (codomain tangent generator g, domain direction d with f(d) = g)

    def to_json(self):
        return {
            "face": list(self.face),
            "point": [format_fraction(v) for v in self.point],
            "directions": [
                {"target": [format_fraction(v) for v in g], "source": [format_fraction(v) for v in d]}
                for g, d in self.directions
            ],
        }


@dataclass
class OpennessVerdict:
    open: bool
    domain_vertices: tuple
    codomain_vertices: tuple
    faces: list = field(default_factory=list)
    failure: dict = None

    @property
    def label(self):
        return "OPEN" if self.open else "NOT_OPEN"

    def verify(self, f, P_h):
        """Re-check every stored certificate by substitution."""
        if not self.open:
            x = self.failure["point"]
            cone = tangent_cone(P_h, x)
            system = _preimage_system(f, cone, self.failure["direction"])
            return self.failure["certificate"].verify(system) and not self.failure["certificate"].feasible
        for cert in self.faces:
            cone = tangent_cone(P_h, cert.point)
            y = f(cert.point)
            expected = {tuple(v - w for v, w in zip(q, y)) for q in self.codomain_vertices if q != y}
            if {g for g, _ in cert.directions} != expected:
                return False
            for g, d in cert.directions:
                if not cone.contains(d) or f.linear_part(d) != g:
                    return False
        return True

    def to_json(self):
        doc = {"verdict": self.label, "face_count": len(self.faces)}
        if self.open:
            doc["faces"] = [c.to_json() for c in self.faces]
        else:
            doc["failure"] = {
                "face": list(self.failure["face"]),
                "point": [format_fraction(v) for v in self.failure["point"]],
                "direction": [format_fraction(v) for v in self.failure["direction"]],
                "certificate": self.failure["certificate"].to_json(),
            }
        return doc

    @classmethod
    def from_json(cls, doc, domain_vertices, codomain_vertices):
        """Inverse of :meth:`to_json`; the vertex lists are not stored in the document."""
        verdict = cls(doc["verdict"] == "OPEN", tuple(domain_vertices), tuple(codomain_vertices))
        if verdict.open:
            for f in doc["faces"]:
                dirs = tuple((vec(d["target"]), vec(d["source"])) for d in f["directions"])
                verdict.faces.append(FaceCertificate(tuple(f["face"]), vec(f["point"]), dirs))
        else:
            fail = doc["failure"]
            verdict.failure = {
                "face": tuple(fail["face"]),
                "point": vec(fail["point"]),
                "direction": vec(fail["direction"]),
                "certificate": FeasibilityCertificate.from_json(fail["certificate"]),
            }
        return verdict


def _preimage_system(f, cone, g):
    """``{d : d in cone, linear part of f at d = g}``."""
    n = cone.dim
    zeros = [ZERO] * len(cone.A_ub)
    return HPolytope(n, cone.A_ub, zeros, list(cone.A_eq) + list(f.matrix), [ZERO] * len(cone.A_eq) + list(g))


def _vertices(P):
    return P if isinstance(P, VPolytope) else vertex_enumeration(P)


def affine_map_is_open(f, P, Q, face_budget=DEFAULT_FACE_BUDGET):
    """Certify that ``f`` restricted to ``P`` is an open map onto ``Q``.

    ``P`` and ``Q`` may be given in either representation; openness is
    relative to their affine hulls.
    """
    Pv = _vertices(P)
    Qv = _vertices(Q)
    P_h = hull(Pv)
    image = image_polytope(f, Pv)
    if image.vertex_set() != Qv.vertex_set():
        for v in Qv.vertices:
            if not in_convex_hull(v, image.vertices).feasible:
                raise NotSurjectiveOntoQ(tuple(format_fraction(c) for c in v))
        for v in image.vertices:
            if not in_convex_hull(v, Qv.vertices).feasible:
                raise PointOutside(f"image point {[format_fraction(c) for c in v]} lies outside Q")
    preimage = {}
    for u in Pv.vertices:
        preimage.setdefault(f(u), u)
    # row values at the candidate vertices, so u - x is tested with subtractions only
    at_u = {u: ([dot(a, u) for a in P_h.A_ub], [dot(e, u) for e in P_h.A_eq]) for u in preimage.values()}

    verdict = OpennessVerdict(True, Pv.vertices, Qv.vertices)
    for face in enumerate_faces(Pv, P_h, face_budget):
        x = Pv.barycenter(face)
        y = f(x)
        ax = [dot(a, x) for a in P_h.A_ub]
        ex = [dot(e, x) for e in P_h.A_eq]
        tight = [r for r, (v, b) in enumerate(zip(ax, P_h.b_ub)) if v == b]
        cone = PolyhedralCone(P_h.dim, [P_h.A_ub[r] for r in tight], P_h.A_eq)
        directions = []
        for v in Qv.vertices:
            if v == y:
                continue
            g = tuple(a - b for a, b in zip(v, y))
            d = None
            u = preimage.get(v)
            if u is not None:
                au, eu = at_u[u]
                # f(u - x) = v - y = g holds because f is affine
                if all(au[r] <= ax[r] for r in tight) and eu == ex:
                    d = tuple(a - b for a, b in zip(u, x))
            if d is None:
                cert = lp_feasible(_preimage_system(f, cone, g))
                if not cert.feasible:
                    verdict.open = False
                    verdict.failure = {"face": face, "point": x, "direction": g, "certificate": cert}
                    return verdict
                d = cert.witness
            directions.append((g, d))
        verdict.faces.append(FaceCertificate(face, x, tuple(directions)))
    return verdict


# floating-point corroboration

@dataclass(frozen=True)
class SampledOpenness:
    modulus: float
    radius: float
    samples: int
    directions: int
    constrained: int  # (sample, direction) pairs that bounded the modulus


def _as_float_system(P):
    A = np.array([[float(v) for v in row] for row in P.A_ub]).reshape(len(P.A_ub), P.dim)
    b = np.array([float(v) for v in P.b_ub])
    E = np.array([[float(v) for v in row] for row in P.A_eq]).reshape(len(P.A_eq), P.dim)
    return A, b, E


def sampled_metric_openness(f, P, Q, sample_count=100, radius=1e-3, extra_directions=8, seed=0):
    """Estimate the openness modulus of ``f: P -> Q`` in the sup-norm.

    For each sampled ``x`` and each direction ``u`` (sup-norm 1) in the
    tangent space of aff(Q), an LP finds the largest ``s`` such that
    ``f(x) + s u`` is the image of a point of ``P`` within distance
    ``radius`` of ``x``. Directions where ``Q`` itself ends first impose no
    bound. The modulus is the smallest ``s / radius`` seen; ``inf`` if no
    direction was binding.
    """
    Pv = _vertices(P)
    P_h = hull(Pv)
    Q_h = hull(_vertices(Q))
    rng = np.random.default_rng(seed)
    M = np.array([[float(v) for v in row] for row in f.matrix]).reshape(f.target_dim, f.source_dim)
    c = np.array([float(v) for v in f.offset])
    A_P, b_P, E_P = _as_float_system(P_h)
    A_Q, b_Q, E_Q = _as_float_system(Q_h)
    n, m = f.source_dim, f.target_dim

    V = np.array([[float(v) for v in p] for p in Pv.vertices])
    k_vert = min(len(V), sample_count // 4)
    xs = [V[i] for i in range(k_vert)]
    while len(xs) < sample_count:
        w = rng.dirichlet(np.ones(len(V)))
        xs.append(w @ V)
    xs = np.array(xs[:sample_count])

    T = null_space(E_Q) if E_Q.shape[0] else np.eye(m)
    dirs = []
    for j in range(T.shape[1]):
        dirs.extend([T[:, j], -T[:, j]])
    for _ in range(extra_directions):
        dirs.append(T @ rng.standard_normal(T.shape[1]))
    dirs = [u / np.max(np.abs(u)) for u in dirs if np.max(np.abs(u)) > 1e-12]
    if T.shape[1] == 0 or not dirs or len(xs) == 0:
        return SampledOpenness(float("inf"), radius, len(xs), 0, 0)

    # one LP per sample, blocks (d, s) per direction; the objective is separable
    nd = len(dirs)
    modulus = float("inf")
    constrained = 0
    for x in xs:
        y = M @ x + c
        A_ub_blocks, b_ub, A_eq_blocks, b_eq = [], [], [], []
        for u in dirs:
            A_ub_blocks.append(np.hstack([A_P, np.zeros((A_P.shape[0], 1))]))
            b_ub.append(b_P - A_P @ x)
            eq = np.vstack([
                np.hstack([E_P, np.zeros((E_P.shape[0], 1))]),
                np.hstack([M, -u.reshape(m, 1)]),
            ])
            A_eq_blocks.append(eq)
            b_eq.append(np.zeros(eq.shape[0]))
        A_ub = sparse.block_diag(A_ub_blocks, format="csr") if A_P.shape[0] else None
        A_eq = sparse.block_diag(A_eq_blocks, format="csr")
        obj = np.tile(np.r_[np.zeros(n), -1.0], nd)
        bounds = [(-radius, radius)] * n + [(0, None)]
        res = linprog(
            obj,
            A_ub=A_ub,
            b_ub=np.concatenate(b_ub) if A_ub is not None else None,
            A_eq=A_eq,
            b_eq=np.concatenate(b_eq),
            bounds=bounds * nd,
            method="highs",
        )
        if res.status != 0:
            continue
        s_max = res.x[n :: n + 1]
        for u, s in zip(dirs, s_max):
            Au = A_Q @ u
            slack = b_Q - A_Q @ y
            steps = [sl / au for sl, au in zip(slack, Au) if au > 1e-12]
            t_q = max(0.0, min(steps)) if steps else float("inf")
            if s < t_q - 1e-9:
                constrained += 1
                modulus = min(modulus, s / radius)
    return SampledOpenness(float(modulus), radius, len(xs), nd, constrained)
