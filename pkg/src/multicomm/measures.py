"""Exact-rational probability measures on finite spaces.

Weights are :class:`fractions.Fraction`; a measure stores only its positive
weights. Everything is exact, so every identity below is checked with ``==``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .diagram import FiniteSpace, SpaceMap, pullback_square
from .errors import InconsistentFamily, InvalidMeasure, MarginalMismatch, SpaceMismatch
from .polytope.linalg import ZERO, format_fraction, frac


@dataclass(frozen=True, eq=False)
class Measure:
    space: FiniteSpace
    weights: dict  # point -> positive Fraction

    def __post_init__(self):
        clean = {}
        total = ZERO
        for p, w in self.weights.items():
            w = frac(w)
            if p not in self.space:
                raise InvalidMeasure(f"{p!r} is not a point of {self.space.id!r}")
            if w < 0:
                raise InvalidMeasure(f"negative weight {w} at {p!r}")
            total += w
            if w:
                clean[p] = w
        if total != 1:
            raise InvalidMeasure(f"weights sum to {total}, not 1")
        ordered = {p: clean[p] for p in self.space.points if p in clean}
        object.__setattr__(self, "weights", ordered)

    def __call__(self, p):
        return self.weights.get(p, ZERO)

    def __eq__(self, other):
        return isinstance(other, Measure) and self.space == other.space and self.weights == other.weights

    def __hash__(self):
        return hash((self.space, tuple(self.weights.items())))

    def __repr__(self):
        body = ", ".join(f"{p!r}: {format_fraction(w)}" for p, w in self.weights.items())
        return f"Measure({self.space.id!r}, {{{body}}})"

    @property
    def support(self):
        return tuple(self.weights)

    def vector(self):
        return tuple(self(p) for p in self.space.points)

    @classmethod
    def from_vector(cls, space, values):
        values = list(values)
        if len(values) != len(space):
            raise InvalidMeasure("vector length differs from the number of points")
        return cls(space, dict(zip(space.points, values)))

    @classmethod
    def point_mass(cls, space, p):
        return cls(space, {p: Fraction(1)})

    @classmethod
    def uniform(cls, space):
        n = len(space)
        return cls(space, {p: Fraction(1, n) for p in space.points})


def mix(t, mu, nu):
    """``t * mu + (1 - t) * nu`` for rational ``t`` in [0, 1]."""
    if mu.space != nu.space:
        raise SpaceMismatch("cannot mix measures on different spaces")
    t = frac(t)
    return Measure(mu.space, {p: t * mu(p) + (1 - t) * nu(p) for p in mu.space.points})


def pushforward(f, mu):
    """Image measure: ``nu(y) = sum of mu(x) over f(x) = y``."""
    if mu.space != f.source:
        raise SpaceMismatch(f"measure lives on {mu.space.id!r}, map starts at {f.source.id!r}")
    out = {}
    for x, w in mu.weights.items():
        y = f(x)
        out[y] = out.get(y, ZERO) + w
    return Measure(f.target, out)


def product_space(X, Y):
    return FiniteSpace((X.id, Y.id), tuple((x, y) for x in X.points for y in Y.points))


def product_measure(mu, nu):
    space = product_space(mu.space, nu.space)
    return Measure(space, {(x, y): a * b for x, a in mu.weights.items() for y, b in nu.weights.items()})


def graph_pushforward(mu, f):
    """The measure on ``X x Y`` putting ``mu(x)`` at ``(x, f(x))``."""
    if mu.space != f.source:
        raise SpaceMismatch(f"measure lives on {mu.space.id!r}, map starts at {f.source.id!r}")
    space = product_space(f.source, f.target)
    return Measure(space, {(x, f(x)): w for x, w in mu.weights.items()})


def gluing_coupling(mu_a, mu_b, q_a, q_b):
    """Conditionally independent coupling over a shared quotient.

    With ``nu`` the common image of ``mu_a`` and ``mu_b`` in ``S``, the
    result weighs ``(a, b)`` by ``mu_a(a) mu_b(b) / nu(s)`` when both lie over
    ``s``. Fibres of zero mass get nothing. The measure lives on the fibre
    product ``A x_S B``.
    """
    nu_a = pushforward(q_a, mu_a)
    nu_b = pushforward(q_b, mu_b)
    if q_a.target != q_b.target:
        raise SpaceMismatch("quotient maps must share their target")
    for s in q_a.target.points:
        if nu_a(s) != nu_b(s):
            raise MarginalMismatch(s, nu_a(s), nu_b(s))
    space = pullback_square(q_a, q_b)
    weights = {}
    for a, wa in mu_a.weights.items():
        s = q_a(a)
        for b, wb in mu_b.weights.items():
            if q_b(b) == s:
                weights[(a, b)] = wa * wb / nu_a(s)
    return Measure(space, weights)


def marginal(tau, k):
    """Pushforward of a measure on pairs to its ``k``-th factor (0 or 1)."""
    if k not in (0, 1):
        raise ValueError("pairs have two factors")
    factors = {}
    for pair in tau.space.points:
        factors.setdefault(pair[k], None)
    target = FiniteSpace(f"{tau.space.id}[{k}]", tuple(factors))
    return pushforward(SpaceMap(tau.space, target, {pair: pair[k] for pair in tau.space.points}), tau)


@dataclass(frozen=True, eq=False)
class MarginalFamily:
    """One measure per index of a diagram, consistent with every connecting map."""

    diagram: object
    components: dict  # index -> Measure

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return (
            isinstance(other, MarginalFamily)
            and self.diagram is other.diagram
            and self.components == other.components
        )

    def __hash__(self):
        return id(self.diagram)

    def vector(self):
        """Concatenated weight vectors in index order (the coordinates of lim P(D))."""
        out = []
        for i in self.diagram.indices:
            out.extend(self.components[i].vector())
        return tuple(out)

    def maximal_view(self):
        return {i: self.components[i] for i in self.diagram.poset.maximal}


@dataclass(frozen=True)
class FamilyViolation:
    i: object
    j: object
    point: object
    expected: Fraction  # mu_j(point)
    actual: Fraction  # pushforward of mu_i along phi_ij at point

    def __str__(self):
        return (
            f"phi_{self.i}{self.j} pushes mu_{self.i} to weight {format_fraction(self.actual)} at "
            f"{self.point!r}, but mu_{self.j} has {format_fraction(self.expected)}"
        )

    def __bool__(self):
        return False


def _check_components(diagram, components):
    for i in diagram.indices:
        if i not in components:
            raise SpaceMismatch(f"no component for index {i!r}")
        if components[i].space != diagram.spaces[i]:
            raise SpaceMismatch(f"component {i!r} does not live on X_{i}")
    extra = set(components) - set(diagram.indices)
    if extra:
        raise SpaceMismatch(f"components for unknown indices {sorted(map(repr, extra))}")


def check_consistent_family(diagram, components):
    """A :class:`MarginalFamily`, or the first :class:`FamilyViolation` (which is falsy)."""
    components = dict(components)
    _check_components(diagram, components)
    for i, j in diagram.poset.strict_pairs:
        pushed = pushforward(diagram.maps[(i, j)], components[i])
        target = components[j]
        for q in diagram.spaces[j].points:
            if pushed(q) != target(q):
                return FamilyViolation(i, j, q, target(q), pushed(q))
    return MarginalFamily(diagram, components)


def make_family(diagram, components):
    """Like :func:`check_consistent_family` but raises :class:`InconsistentFamily`."""
    result = check_consistent_family(diagram, components)
    if isinstance(result, FamilyViolation):
        raise InconsistentFamily(result)
    return result
