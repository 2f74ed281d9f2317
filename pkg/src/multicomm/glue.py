"""Constructive gluing of consistent families and lifting along diagram morphisms.

:func:`glue_family` builds a joint measure on lim D coordinate by coordinate.
Maximal indices are attached with :func:`gluing_coupling` over the coordinates
they share with what has been built so far; the coordinates below a new
maximal index are deterministic functions of it and are attached with
:func:`graph_pushforward`. When the shared coordinates do not carry matching
marginals the construction gives up and the exact LP takes over, so an answer
is never wrong, only less constructive.
"""

from dataclasses import dataclass
from enum import Enum

from .chi import build_chi, chi_apply, preimage_witness
from .diagram import FiniteSpace, SpaceMap, compute_limit
from .errors import (
    EmptyLimit,
    InconsistentFamily,
    InvalidMap,
    MarginalMismatch,
    NaturalityViolation,
    PreconditionMismatch,
    SpaceMismatch,
)
from .measures import (
    FamilyViolation,
    MarginalFamily,
    Measure,
    check_consistent_family,
    gluing_coupling,
    graph_pushforward,
    pushforward,
)
from .polytope.linalg import ONE, ZERO
from .polytope.lp import lp_feasible
from .polytope.sets import HPolytope


@dataclass(frozen=True)
class GammaPartition:
    maximal_order: tuple
    blocks: dict  # maximal index -> tuple of non-maximal indices

    def block(self, m):
        return self.blocks[m]


def gamma_partition(poset):
    """Non-maximal indices grouped under the first maximal index above them."""
    maximal = poset.maximal
    claimed = set()
    blocks = {}
    for m in maximal:
        block = tuple(j for j in poset.elements if j not in maximal and j not in claimed and poset.gt(m, j))
        claimed.update(block)
        blocks[m] = block
    return GammaPartition(maximal, blocks)


class DiagramClass(str, Enum):
    CHAIN = "CHAIN"
    FOREST = "FOREST"
    SINGLE_QUOTIENT = "SINGLE_QUOTIENT"
    GENERAL = "GENERAL"


def _principal(poset, subset):
    """The element generating ``subset`` as a down-set, if there is one."""
    for s in subset:
        if all(poset.geq(s, j) for j in subset):
            return s
    return None


def classify_diagram(poset):
    if poset.is_chain():
        return DiagramClass.CHAIN
    maximal = poset.maximal
    rest = [j for j in poset.elements if j not in maximal]
    if all(sum(poset.gt(m, j) for m in maximal) == 1 for j in rest):
        return DiagramClass.FOREST
    for x, a in enumerate(maximal):
        for b in maximal[x + 1:]:
            common = [j for j in poset.elements if poset.geq(a, j) and poset.geq(b, j)]
            if common and _principal(poset, common) is None:
                return DiagramClass.GENERAL
    return DiagramClass.SINGLE_QUOTIENT


class Method(str, Enum):
    CONSTRUCTIVE = "CONSTRUCTIVE"
    LP = "LP"
    INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class GlueResult:
    method: Method
    measure: Measure = None
    certificate: object = None  # FeasibilityCertificate from the LP route
    order: tuple = ()  # maximal indices in attachment order (constructive route)
    diagram_class: DiagramClass = None

    @property
    def feasible(self):
        return self.measure is not None


def _running_intersection_order(poset):
    """Prefer, at each step, a maximal index whose overlap with the processed part is principal."""
    remaining = list(poset.maximal)
    order = [remaining.pop(0)]
    processed = set(poset.down(order[0]))
    while remaining:
        pick = None
        for m in remaining:
            shared = [j for j in poset.down(m) if j in processed]
            if shared and _principal(poset, shared) is not None:
                pick = m
                break
        if pick is None:
            pick = next((m for m in remaining if not any(j in processed for j in poset.down(m))), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        processed.update(poset.down(pick))
    return tuple(order)


def _tuple_space(points):
    return FiniteSpace("partial", tuple(points))


def _glue_in_order(diagram, family, order):
    poset = diagram.poset
    coords = []
    tau = None
    for m in order:
        X_m = diagram.spaces[m]
        mu_m = family[m]
        if tau is None:
            space = _tuple_space((x,) for x in X_m.points)
            tau = Measure(space, {(x,): w for x, w in mu_m.weights.items()})
        else:
            shared = [j for j in poset.down(m) if j in coords]
            pos = [coords.index(j) for j in shared]
            maps = [diagram.phi(m, j) for j in shared]
            left = {t: tuple(t[p] for p in pos) for t in tau.space.points}
            right = {x: tuple(f(x) for f in maps) for x in X_m.points}
            S = FiniteSpace("shared", tuple(dict.fromkeys(list(left.values()) + list(right.values()))))
            coupling = gluing_coupling(tau, mu_m, SpaceMap(tau.space, S, left), SpaceMap(X_m, S, right))
            pts = {(t, x): t + (x,) for t, x in coupling.weights}
            tau = Measure(_tuple_space(pts.values()), {pts[k]: w for k, w in coupling.weights.items()})
        coords.append(m)
        k = len(coords) - 1
        for j in poset.down(m):
            if j in coords:
                continue
            f = diagram.phi(m, j)
            g = SpaceMap(tau.space, diagram.spaces[j], {t: f(t[k]) for t in tau.space.points})
            graph = graph_pushforward(tau, g)
            pts = {(t, y): t + (y,) for t, y in graph.weights}
            tau = Measure(_tuple_space(pts.values()), {pts[key]: w for key, w in graph.weights.items()})
            coords.append(j)
    return coords, tau


def _to_limit(diagram, limit, coords, tau):
    where = [coords.index(i) for i in diagram.indices]
    members = set(limit.elements)
    weights = {}
    for t, w in tau.weights.items():
        full = tuple(t[p] for p in where)
        if full not in members:
            return None
        weights[full] = weights.get(full, ZERO) + w
    return Measure(limit.space, weights)


def glue_family(diagram, family, chi=None):
    """A measure on lim D whose marginals are ``family``, tagged with how it was found."""
    comps = family.components if isinstance(family, MarginalFamily) else dict(family)
    checked = check_consistent_family(diagram, comps)
    if isinstance(checked, FamilyViolation):
        raise InconsistentFamily(checked)
    limit = compute_limit(diagram) if chi is None else chi.limit
    if limit.is_empty():
        raise EmptyLimit()
    klass = classify_diagram(diagram.poset)
    if klass is not DiagramClass.GENERAL:
        canonical = diagram.poset.maximal
        orders = [canonical]
        alt = _running_intersection_order(diagram.poset)
        if alt != canonical:
            orders.append(alt)
        for order in orders:
            try:
                coords, tau = _glue_in_order(diagram, checked, order)
            except MarginalMismatch:
                continue
            measure = _to_limit(diagram, limit, coords, tau)
            if measure is None:
                continue
            chi = build_chi(diagram, limit) if chi is None else chi
            if chi_apply(chi, measure).components != checked.components:
                raise AssertionError("constructive gluing produced wrong marginals")
            return GlueResult(Method.CONSTRUCTIVE, measure, order=order, diagram_class=klass)
    chi = build_chi(diagram, limit) if chi is None else chi
    pre = preimage_witness(chi, checked)
    if pre.feasible:
        return GlueResult(Method.LP, pre.measure, pre.certificate, diagram_class=klass)
    return GlueResult(Method.INFEASIBLE, None, pre.certificate, diagram_class=klass)


# diagram morphisms

@dataclass(frozen=True, eq=False)
class DiagramMorphism:
    source: object  # Diagram D
    target: object  # Diagram D'
    maps: dict  # index -> SpaceMap X_i -> X'_i


def validate_morphism(source, target, maps):
    if source.poset.elements != target.poset.elements or source.poset.order != target.poset.order:
        raise InvalidMap("source and target diagrams must share their index poset")
    maps = dict(maps)
    for i in source.indices:
        if i not in maps:
            raise InvalidMap(f"no component map for index {i!r}")
        f = maps[i]
        if f.source != source.spaces[i] or f.target != target.spaces[i]:
            raise InvalidMap(f"component {i!r} must run from X_{i} to X'_{i}")
    for i, j in source.poset.strict_pairs:
        phi, phi_t = source.maps[(i, j)], target.maps[(i, j)]
        for x in source.spaces[i].points:
            if phi_t(maps[i](x)) != maps[j](phi(x)):
                raise NaturalityViolation(i, j, x)
    return DiagramMorphism(source, target, maps)


def induced_limit_map(morphism, limit=None, target_limit=None):
    """lim D -> lim D', applying the component maps coordinatewise."""
    limit = compute_limit(morphism.source) if limit is None else limit
    target_limit = compute_limit(morphism.target) if target_limit is None else target_limit
    idx = morphism.source.indices
    assignment = {e: tuple(morphism.maps[i](x) for i, x in zip(idx, e)) for e in limit.elements}
    return SpaceMap(limit.space, target_limit.space, assignment)


@dataclass(frozen=True)
class LiftResult:
    measure: Measure = None
    certificate: object = None
    system: HPolytope = None

    @property
    def feasible(self):
        return self.measure is not None


def lift_system(chi, induced, family, tau0):
    """``{tau >= 0 : sum tau = 1, chi(tau) = family, P(induced)(tau) = tau0}``."""
    n = len(chi.limit)
    A_ub = [[-ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    A_eq = [[ONE] * n] + [list(row) for row in chi.matrix]
    b_eq = [ONE] + list(family.vector())
    for e2 in induced.target.points:
        A_eq.append([ONE if induced(e) == e2 else ZERO for e in chi.limit.elements])
        b_eq.append(tau0(e2))
    return HPolytope(n, A_ub, [ZERO] * n, A_eq, b_eq)


def lift_diagram_morphism(morphism, tau0, family):
    """Find tau on lim D with chi(tau) = family and P(f)(tau) = tau0, or certify that none exists."""
    D, D2 = morphism.source, morphism.target
    comps = family.components if isinstance(family, MarginalFamily) else dict(family)
    checked = check_consistent_family(D, comps)
    if isinstance(checked, FamilyViolation):
        raise InconsistentFamily(checked)
    target_limit = compute_limit(D2)
    if tau0.space != target_limit.space:
        raise SpaceMismatch("tau0 must live on the limit of the target diagram")
    chi2 = build_chi(D2, target_limit)
    image_family = chi_apply(chi2, tau0)
    for i in D.indices:
        pushed = pushforward(morphism.maps[i], checked[i])
        if pushed != image_family[i]:
            point = next(p for p in D2.spaces[i].points if pushed(p) != image_family[i](p))
            raise PreconditionMismatch(
                f"chi'(tau0) and P(f)(mu) differ at index {i!r}, point {point!r}", where=(i, point)
            )
    limit = compute_limit(D)
    if limit.is_empty():
        raise EmptyLimit()
    chi = build_chi(D, limit)
    induced = induced_limit_map(morphism, limit, target_limit)
    system = lift_system(chi, induced, checked, tau0)
    cert = lp_feasible(system)
    if cert.feasible:
        return LiftResult(chi.measure_from_vector(cert.witness), cert, system)
    return LiftResult(None, cert, system)
