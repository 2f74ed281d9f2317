"""Finite posets, diagrams of finite sets over them, limits and cones.

Indices and point labels are arbitrary hashables; documents use strings.
Canonical orders are always the orders in which things were listed: poset
elements, then the points of each space. Limit elements are full tuples
(one point per index, in element order) sorted lexicographically by point
position.
"""

import itertools
from dataclasses import dataclass, field

from .errors import (
    CoherenceViolation,
    CycleDetected,
    InvalidMap,
    LegIncoherent,
    MissingMap,
    MulticommError,
    SquareNotCommutative,
    UnknownElement,
    UnknownIndex,
)


@dataclass(frozen=True)
class Poset:
    elements: tuple
    covers: tuple
    order: frozenset  # pairs (i, j) with i >= j, reflexive

    def geq(self, i, j):
        return (i, j) in self.order

    def gt(self, i, j):
        return i != j and (i, j) in self.order

    @property
    def maximal(self):
        return tuple(i for i in self.elements if not any(self.gt(k, i) for k in self.elements))

    @property
    def strict_pairs(self):
        return tuple((i, j) for i in self.elements for j in self.elements if self.gt(i, j))

    def down(self, i):
        """Indices ``j <= i`` in canonical order, ``i`` included."""
        return tuple(j for j in self.elements if self.geq(i, j))

    def comparable(self, i, j):
        return self.geq(i, j) or self.geq(j, i)

    def is_chain(self):
        return all(self.comparable(i, j) for i in self.elements for j in self.elements)


def validate_poset(elements, covers):
    """Build a poset from generating relations ``(i, j)`` meaning ``i >= j``."""
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise MulticommError("poset elements must be distinct")
    known = set(elements)
    covers = tuple((i, j) for i, j in covers)
    for i, j in covers:
        for e in (i, j):
            if e not in known:
                raise UnknownElement(e)
        if i == j:
            raise CycleDetected([i, i])
    below = {e: set() for e in elements}
    for i, j in covers:
        below[i].add(j)
    # transitive closure; a path back to the start is a cycle
    reach = {}
    for e in elements:
        seen, stack = set(), [e]
        while stack:
            u = stack.pop()
            for v in below[u]:
                if v == e:
                    raise CycleDetected(_cycle_through(below, e))
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        reach[e] = seen
    order = {(e, e) for e in elements}
    order |= {(e, d) for e in elements for d in reach[e]}
    return Poset(elements, covers, frozenset(order))


def _cycle_through(below, start):
    path, seen = [start], {start}

    def walk(u):
        for v in below[u]:
            if v == start:
                return True
            if v not in seen:
                seen.add(v)
                path.append(v)
                if walk(v):
                    return True
                path.pop()
        return False

    walk(start)
    return path + [start]


@dataclass(frozen=True)
class FiniteSpace:
    id: object
    points: tuple
    _pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        pos = {p: k for k, p in enumerate(pts)}
        if len(pos) != len(pts):
            raise InvalidMap(f"space {self.id!r} has repeated point labels")
        object.__setattr__(self, "_pos", pos)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return p in self._pos

    def position(self, p):
        return self._pos[p]


@dataclass(frozen=True, eq=False)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: dict

    def __post_init__(self):
        a = dict(self.assignment)
        for x in self.source.points:
            if x not in a:
                raise InvalidMap(f"map {self.source.id!r}->{self.target.id!r} undefined at {x!r}")
            if a[x] not in self.target:
                raise InvalidMap(f"map {self.source.id!r}->{self.target.id!r} sends {x!r} outside the target")
        extra = set(a) - set(self.source.points)
        if extra:
            raise InvalidMap(f"map {self.source.id!r}->{self.target.id!r} defined off its source: {sorted(map(repr, extra))}")
        object.__setattr__(self, "assignment", a)

    def __call__(self, x):
        return self.assignment[x]

    def __eq__(self, other):
        return (
            isinstance(other, SpaceMap)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash((self.source, self.target))

    def compose(self, inner):
        """``self o inner``."""
        if inner.target != self.source:
            raise InvalidMap("maps are not composable")
        return SpaceMap(inner.source, self.target, {x: self(inner(x)) for x in inner.source.points})

    def is_surjective(self):
        return set(self.assignment.values()) == set(self.target.points)

    @classmethod
    def identity(cls, space):
        return cls(space, space, {x: x for x in space.points})


@dataclass(frozen=True, eq=False)
class Diagram:
    poset: Poset
    spaces: dict  # index -> FiniteSpace
    maps: dict  # (i, j) with i > j -> SpaceMap

    def phi(self, i, j):
        if i == j:
            return SpaceMap.identity(self.spaces[i])
        try:
            return self.maps[(i, j)]
        except KeyError:
            raise MissingMap(i, j) from None

    @property
    def indices(self):
        return self.poset.elements


def validate_diagram(poset, spaces, maps):
    """Check the diagram data and return a :class:`Diagram`.

    ``spaces`` maps each index to a :class:`FiniteSpace`; ``maps`` maps every
    strict comparable pair ``(i, j)`` to a :class:`SpaceMap` from ``X_i`` to
    ``X_j``. Coherence is checked on every chain ``i > j > k``.
    """
    spaces = dict(spaces)
    for i in spaces:
        if i not in poset.elements:
            raise UnknownIndex(i)
    for i in poset.elements:
        if i not in spaces:
            raise MulticommError(f"no space supplied for index {i!r}")
    maps = dict(maps)
    for (i, j), f in maps.items():
        if not poset.gt(i, j):
            raise InvalidMap(f"map supplied for {i!r}->{j!r}, which is not a strict comparable pair")
        if f.source != spaces[i] or f.target != spaces[j]:
            raise InvalidMap(f"map {i!r}->{j!r} does not run from X_{i} to X_{j}")
    for pair in poset.strict_pairs:
        if pair not in maps:
            raise MissingMap(*pair)
    els = poset.elements
    for i in els:
        for j in els:
            if not poset.gt(i, j):
                continue
            for k in els:
                if not poset.gt(j, k):
                    continue
                f_ij, f_jk, f_ik = maps[(i, j)], maps[(j, k)], maps[(i, k)]
                for x in spaces[i].points:
                    if f_jk(f_ij(x)) != f_ik(x):
                        raise CoherenceViolation(i, j, k, x)
    return Diagram(poset, spaces, maps)


def diagram_from_data(elements, covers, spaces, maps):
    """Convenience builder from plain data.

    ``spaces``: index -> list of labels; ``maps``: (i, j) -> {source label: target label}.
    """
    poset = validate_poset(elements, covers)
    fs = {i: FiniteSpace(i, tuple(pts)) for i, pts in spaces.items()}
    for i in fs:
        if i not in poset.elements:
            raise UnknownIndex(i)
    sm = {}
    for (i, j), assignment in maps.items():
        if i not in fs or j not in fs:
            raise UnknownIndex(i if i not in fs else j)
        sm[(i, j)] = SpaceMap(fs[i], fs[j], assignment)
    return validate_diagram(poset, fs, sm)


@dataclass(frozen=True, eq=False)
class LimitSpace:
    diagram: Diagram
    elements: tuple  # full tuples in element order
    maximal_coordinates: tuple  # restriction of each element to the maximal indices

    @property
    def space(self):
        sp = self.__dict__.get("_space")
        if sp is None:
            sp = FiniteSpace("lim", self.elements)
            object.__setattr__(self, "_space", sp)
        return sp

    def __len__(self):
        return len(self.elements)

    def coordinate(self, i):
        return self.diagram.indices.index(i)

    def is_empty(self):
        return not self.elements


def compute_limit(diagram):
    """All compatible tuples, enumerated through the maximal coordinates."""
    poset = diagram.poset
    els = poset.elements
    maximal = poset.maximal
    anchor = {}
    for j in els:
        anchor[j] = j if j in maximal else next(m for m in maximal if poset.gt(m, j))
    pairs = [(poset.elements.index(i), poset.elements.index(j), diagram.maps[(i, j)]) for i, j in poset.strict_pairs]
    found = []
    for combo in itertools.product(*(diagram.spaces[m].points for m in maximal)):
        chosen = dict(zip(maximal, combo))
        full = tuple(chosen[j] if j in chosen else diagram.maps[(anchor[j], j)](chosen[anchor[j]]) for j in els)
        if all(f(full[a]) == full[b] for a, b, f in pairs):
            found.append(full)
    key = lambda t: tuple(diagram.spaces[i].position(x) for i, x in zip(els, t))  # noqa: E731
    found.sort(key=key)
    pos = [els.index(m) for m in maximal]
    max_coords = tuple(tuple(t[p] for p in pos) for t in found)
    return LimitSpace(diagram, tuple(found), max_coords)


@dataclass(frozen=True)
class LimitEmbedding:
    """``h``: limit element -> tuple over the maximal indices, with its inverse on the image."""

    maximal: tuple
    forward: dict
    inverse: dict

    def __call__(self, element):
        return self.forward[element]

    @property
    def image(self):
        return tuple(self.forward[e] for e in self.forward)


def limit_embedding(limit):
    forward = dict(zip(limit.elements, limit.maximal_coordinates))
    inverse = {v: k for k, v in forward.items()}
    if len(inverse) != len(forward):
        raise MulticommError("maximal-coordinate restriction is not injective")  # cannot happen for a valid poset
    return LimitEmbedding(limit.diagram.poset.maximal, forward, inverse)


def projection(limit, i):
    """``pi_i``: lim D -> X_i."""
    if i not in limit.diagram.indices:
        raise UnknownIndex(i)
    k = limit.coordinate(i)
    return SpaceMap(limit.space, limit.diagram.spaces[i], {e: e[k] for e in limit.elements})


@dataclass(frozen=True, eq=False)
class Cone:
    apex: FiniteSpace
    legs: dict  # index -> SpaceMap from the apex


def check_cone(cone, diagram):
    """Raise :class:`LegIncoherent` unless ``phi_ij o h_i = h_j`` everywhere."""
    for i in diagram.indices:
        if i not in cone.legs:
            raise MissingMap("apex", i)
        leg = cone.legs[i]
        if leg.source != cone.apex or leg.target != diagram.spaces[i]:
            raise InvalidMap(f"leg {i!r} does not run from the apex to X_{i}")
    for i, j in diagram.poset.strict_pairs:
        f = diagram.maps[(i, j)]
        for t in cone.apex.points:
            if f(cone.legs[i](t)) != cone.legs[j](t):
                raise LegIncoherent(i, j, t)


def limit_cone(limit):
    """The limit itself with its projections."""
    return Cone(limit.space, {i: projection(limit, i) for i in limit.diagram.indices})


def cone_characteristic_map(cone, diagram, limit=None):
    """``chi_C``: apex -> lim D, ``t -> (h_i(t))_i``."""
    check_cone(cone, diagram)
    limit = compute_limit(diagram) if limit is None else limit
    members = set(limit.elements)
    assignment = {}
    for t in cone.apex.points:
        image = tuple(cone.legs[i](t) for i in diagram.indices)
        if image not in members:  # unreachable once the legs are coherent
            raise LegIncoherent(None, None, t)
        assignment[t] = image
    return SpaceMap(cone.apex, limit.space, assignment)


@dataclass(frozen=True)
class ConeVerdict:
    surjective: bool
    missed: tuple  # limit elements outside the image
    open: bool = True  # every map between finite discrete spaces is open

    @property
    def open_multicommutative(self):
        return self.surjective and self.open

    @property
    def label(self):
        return "OPEN_MULTICOMMUTATIVE" if self.open_multicommutative else "NOT_OPEN_MULTICOMMUTATIVE"


def check_cone_open_multicommutative(cone, diagram, limit=None):
    """For finite discrete spaces openness is automatic, so this decides surjectivity of chi_C."""
    limit = compute_limit(diagram) if limit is None else limit
    chi = cone_characteristic_map(cone, diagram, limit)
    hit = set(chi.assignment.values())
    missed = tuple(e for e in limit.elements if e not in hit)
    return ConeVerdict(not missed, missed)


def pullback_square(p, q):
    """``Y x_T Z`` for ``p: Y -> T`` and ``q: Z -> T``."""
    if p.target != q.target:
        raise InvalidMap("pullback legs must share their target")
    pts = tuple((y, z) for y in p.source.points for z in q.source.points if p(y) == q(z))
    return FiniteSpace((p.source.id, p.target.id, q.source.id), pts)


@dataclass(frozen=True)
class BicommutativityVerdict:
    bicommutative: bool
    missed: tuple

    @property
    def label(self):
        return "BICOMMUTATIVE" if self.bicommutative else "NOT_BICOMMUTATIVE"


def check_bicommutative(f, g, p, q):
    """Square ``f: X -> Y``, ``g: X -> Z``, ``p: Y -> T``, ``q: Z -> T``.

    Bicommutative iff ``(f, g): X -> Y x_T Z`` is onto.
    """
    if f.source != g.source or f.target != p.source or g.target != q.source or p.target != q.target:
        raise InvalidMap("maps do not form a square")
    for x in f.source.points:
        if p(f(x)) != q(g(x)):
            raise SquareNotCommutative(x)
    pb = pullback_square(p, q)
    hit = {(f(x), g(x)) for x in f.source.points}
    missed = tuple(pt for pt in pb.points if pt not in hit)
    return BicommutativityVerdict(not missed, missed)
