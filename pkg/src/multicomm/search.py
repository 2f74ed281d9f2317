"""Seeded random instances and the instance-search harness.

Diagrams are generated bottom-up. Every point of ``X_i`` is tagged with a
compatible tuple over the indices strictly below ``i``, and the maps read
coordinates off that tag, so coherence holds by construction. Two times in
three ``X_i`` is the whole lower limit (when it fits), which makes
pullback-like shapes such as two maximal indices over a shared pair frequent.
"""

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .chi import build_chi, check_chi_open, check_chi_surjective, codomain_polytope
from .diagram import Cone, FiniteSpace, SpaceMap, compute_limit, diagram_from_data, validate_poset
from .errors import FaceBudgetExceeded
from .glue import DiagramMorphism, classify_diagram
from .measures import MarginalFamily, Measure, pushforward
from .polytope.lp import is_empty, lp_optimize
from .polytope.openness import DEFAULT_FACE_BUDGET

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _lower_tuples(elements, below, spaces, maps):
    """Compatible tuples over ``below`` (a down-closed list of built indices)."""
    if not below:
        return [()]
    pairs = [(a, b) for a in below for b in below if (a, b) in maps]
    out = []
    for combo in itertools.product(*(spaces[j] for j in below)):
        t = dict(zip(below, combo))
        if all(maps[(a, b)][t[a]] == t[b] for a, b in pairs):
            out.append(combo)
    return out


def random_poset(rng, max_elements):
    """Either a random forward-edge order or, half the time, a dense two-layer one."""
    if max_elements >= 3 and rng.random() < 0.5:
        n = max_elements
        top = rng.randint(1, n - 1)
        elements = list(LETTERS[:n])
        covers = [(a, b) for a in elements[:top] for b in elements[top:] if rng.random() < 0.85]
        return validate_poset(elements, covers)
    n = rng.randint(1, max_elements)
    elements = list(LETTERS[:n])
    # edges only point forward in the list, so the relation is acyclic
    covers = [(elements[k], elements[l]) for k in range(n) for l in range(k + 1, n) if rng.random() < 0.5]
    return validate_poset(elements, covers)


def random_diagram(rng, max_elements=4, max_points=3, poset=None):
    """A coherent diagram with at most ``max_points`` points per space."""
    while True:
        P = random_poset(rng, max_elements) if poset is None else poset
        spaces, maps = {}, {}
        ok = True
        for i in reversed(P.elements):
            below = [j for j in P.elements if P.gt(i, j)]
            lower = _lower_tuples(P.elements, below, spaces, maps)
            if not lower:
                ok = False
                break
            if below and len(lower) <= max_points and rng.random() < 2 / 3:
                tags = list(lower)
            else:
                size = rng.randint(1, max_points)
                if not below:  # small minimal spaces make shared quotients overlap
                    size = min(size, rng.randint(1, max_points))
                tags = rng.sample(lower, size) if size <= len(lower) else [rng.choice(lower) for _ in range(size)]
            labels = [str(k) for k in range(len(tags))]
            spaces[i] = labels
            for pos, j in enumerate(below):
                maps[(i, j)] = {lab: t[pos] for lab, t in zip(labels, tags)}
        if ok:
            return diagram_from_data(P.elements, P.covers, {i: spaces[i] for i in P.elements}, maps)


def random_rational_weights(rng, n, denominator=12, sparse=True):
    """Exact nonnegative weights summing to 1, possibly with zeros."""
    raw = [rng.randint(0 if sparse else 1, denominator) for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


def random_measure(rng, space, denominator=12):
    return Measure.from_vector(space, random_rational_weights(rng, len(space), denominator))


def random_cone(rng, diagram, limit=None, max_apex=5):
    """Apex points sent to random limit elements; legs are the coordinates."""
    limit = compute_limit(diagram) if limit is None else limit
    apex = FiniteSpace("T", tuple(f"t{k}" for k in range(rng.randint(1, max_apex))))
    chosen = {t: rng.choice(limit.elements) for t in apex.points}
    legs = {}
    for k, i in enumerate(diagram.indices):
        legs[i] = SpaceMap(apex, diagram.spaces[i], {t: e[k] for t, e in chosen.items()})
    return Cone(apex, legs)


def random_family(rng, diagram, vertices=3, denominator=12):
    """A random point of lim P(D): a rational mixture of LP vertices under random objectives.

    Drawn from the codomain polytope itself, independently of chi.
    """
    rows, system = codomain_polytope(diagram)
    picked = []
    for _ in range(vertices):
        c = [Fraction(rng.randint(-9, 9)) for _ in range(system.dim)]
        res = lp_optimize(system, c)
        picked.append(res.x)
    weights = random_rational_weights(rng, len(picked), denominator, sparse=False)
    point = [sum(w * v[k] for w, v in zip(weights, picked)) for k in range(system.dim)]
    comps = {}
    for i in diagram.indices:
        comps[i] = Measure(diagram.spaces[i], {p: point[k] for k, (j, p) in enumerate(rows) if j == i})
    return MarginalFamily(diagram, comps)


# morphism instances

def random_refinement(rng, target, max_extra=2):
    """A diagram D with a natural map to ``target``.

    Points of ``X_i`` are pairs (image in ``X'_i``, compatible lower tuple of
    D) whose lower tuple maps onto the image's lower coordinates.
    """
    P = target.poset
    while True:
        spaces, maps, proj = {}, {}, {}
        ok = True
        for i in reversed(P.elements):
            below = [j for j in P.elements if P.gt(i, j)]
            lower = _lower_tuples(P.elements, below, spaces, maps)
            cands = [
                (x, t)
                for x in target.spaces[i].points
                for t in lower
                if all(proj[j][t[pos]] == target.maps[(i, j)](x) for pos, j in enumerate(below))
            ]
            if not cands:
                ok = False
                break
            rng.shuffle(cands)
            chosen = cands[: rng.randint(1, min(len(cands), len(target.spaces[i]) + max_extra))]
            labels = [str(k) for k in range(len(chosen))]
            spaces[i] = labels
            proj[i] = {lab: x for lab, (x, _) in zip(labels, chosen)}
            for pos, j in enumerate(below):
                maps[(i, j)] = {lab: t[pos] for lab, (_, t) in zip(labels, chosen)}
        if ok:
            source = diagram_from_data(P.elements, P.covers, {i: spaces[i] for i in P.elements}, maps)
            comp = {i: SpaceMap(source.spaces[i], target.spaces[i], proj[i]) for i in P.elements}
            return DiagramMorphism(source, target, comp)


def random_lift_instance(rng, max_elements=3, max_points=3):
    """(morphism, tau0, family) meeting the lifting precondition by construction."""
    while True:
        target = random_diagram(rng, max_elements, max_points)
        morphism = random_refinement(rng, target)
        limit = compute_limit(morphism.source)
        if limit.is_empty():
            continue
        tau = random_measure(rng, limit.space)
        chi = build_chi(morphism.source, limit)
        family = chi.family_from_vector(chi.map(tau.vector()))
        target_limit = compute_limit(target)
        induced = SpaceMap(
            limit.space,
            target_limit.space,
            {e: tuple(morphism.maps[i](x) for i, x in zip(target.indices, e)) for e in limit.elements},
        )
        return morphism, pushforward(induced, tau), family


# harness

@dataclass
class InstanceResult:
    index: int
    diagram: object
    diagram_class: str
    limit_size: int
    total_points: int
    surjective: str  # SURJECTIVE | NOT_SURJECTIVE | NOT_SURJECTIVE (EMPTY_LIMIT)
    openness: str  # OPEN | NOT_OPEN | BUDGET_EXCEEDED | N/A


def evaluate_instance(index, diagram, face_budget=DEFAULT_FACE_BUDGET, sample_count=0):
    klass = classify_diagram(diagram.poset).value
    limit = compute_limit(diagram)
    total = sum(len(diagram.spaces[i]) for i in diagram.indices)
    if limit.is_empty():
        _, codomain = codomain_polytope(diagram)
        verdict = "SURJECTIVE" if is_empty(codomain) else "NOT_SURJECTIVE (EMPTY_LIMIT)"
        return InstanceResult(index, diagram, klass, 0, total, verdict, "N/A")
    chi = build_chi(diagram, limit)
    surj = check_chi_surjective(chi)
    try:
        openness = check_chi_open(chi, surj, face_budget=face_budget, sample_count=sample_count).label
    except FaceBudgetExceeded:
        openness = "BUDGET_EXCEEDED"
    return InstanceResult(index, diagram, klass, len(limit), total, surj.label, openness)


def run_search(max_elements=4, max_points=3, seed=0, count=50, face_budget=DEFAULT_FACE_BUDGET):
    """Evaluate ``count`` seeded random diagrams; deterministic for fixed arguments."""
    if max_elements < 1 or max_points < 1:
        raise ValueError("bounds must be at least 1")
    rng = random.Random(seed)
    results = []
    for k in range(count):
        diagram = random_diagram(rng, max_elements, max_points)
        results.append(evaluate_instance(k, diagram, face_budget))
    return results


def summarize(results):
    """Counts of (class, surjectivity verdict) and the smallest non-surjective instance."""
    table = Counter((r.diagram_class, r.surjective) for r in results)
    failing = [r for r in results if r.surjective != "SURJECTIVE"]
    smallest = min(failing, key=lambda r: (r.total_points, r.index)) if failing else None
    return table, smallest
