"""Exact-rational polyhedral data types."""

from dataclasses import dataclass, field

from .linalg import ONE, ZERO, dot, format_fraction, frac, mat, matvec, vec


@dataclass(frozen=True)
class HPolytope:
    """``{x : A_ub x <= b_ub, A_eq x = b_eq}`` with rational data.

    Also serves as a general H-system for :func:`lp_feasible`; boundedness is
    only assumed by operations that say so.
    """

    dim: int
    A_ub: tuple = ()
    b_ub: tuple = ()
    A_eq: tuple = ()
    b_eq: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "A_ub", mat(self.A_ub))
        object.__setattr__(self, "b_ub", vec(self.b_ub))
        object.__setattr__(self, "A_eq", mat(self.A_eq))
        object.__setattr__(self, "b_eq", vec(self.b_eq))
        if len(self.A_ub) != len(self.b_ub) or len(self.A_eq) != len(self.b_eq):
            raise ValueError("row count and right-hand side length differ")
        for row in self.A_ub + self.A_eq:
            if len(row) != self.dim:
                raise ValueError(f"row of length {len(row)} in a {self.dim}-dimensional system")

    @classmethod
    def from_rows(cls, dim, inequalities=(), equations=()):
        ineq = list(inequalities)
        eq = list(equations)
        return cls(dim, [a for a, _ in ineq], [b for _, b in ineq], [a for a, _ in eq], [b for _, b in eq])

    @classmethod
    def simplex(cls, n):
        """Probability simplex on ``n`` coordinates."""
        eye = [[-ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        return cls(n, eye, [ZERO] * n, [[ONE] * n], [ONE])

    @classmethod
    def box(cls, lower, upper):
        n = len(lower)
        A, b = [], []
        for k in range(n):
            A.append([ONE if j == k else ZERO for j in range(n)])
            b.append(upper[k])
            A.append([-ONE if j == k else ZERO for j in range(n)])
            b.append(-frac(lower[k]))
        return cls(n, A, b)

    @property
    def n_ub(self):
        return len(self.A_ub)

    @property
    def n_eq(self):
        return len(self.A_eq)

    def contains(self, x):
        x = vec(x)
        return all(dot(a, x) <= b for a, b in zip(self.A_ub, self.b_ub)) and all(
            dot(a, x) == b for a, b in zip(self.A_eq, self.b_eq)
        )

    def tight(self, x):
        """Indices of inequality rows holding with equality at ``x``."""
        x = vec(x)
        return [r for r, (a, b) in enumerate(zip(self.A_ub, self.b_ub)) if dot(a, x) == b]

    def intersect(self, other):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return HPolytope(
            self.dim,
            self.A_ub + other.A_ub,
            self.b_ub + other.b_ub,
            self.A_eq + other.A_eq,
            self.b_eq + other.b_eq,
        )

    def to_json(self):
        return {
            "dim": self.dim,
            "A_ub": [[format_fraction(v) for v in row] for row in self.A_ub],
            "b_ub": [format_fraction(v) for v in self.b_ub],
            "A_eq": [[format_fraction(v) for v in row] for row in self.A_eq],
            "b_eq": [format_fraction(v) for v in self.b_eq],
        }

    @classmethod
    def from_json(cls, doc):
        return cls(doc["dim"], doc["A_ub"], doc["b_ub"], doc["A_eq"], doc["b_eq"])


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of finitely many rational points, stored irredundantly."""

    dim: int
    vertices: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(vec(v) for v in self.vertices))
        for v in self.vertices:
            if len(v) != self.dim:
                raise ValueError("vertex of the wrong length")

    def vertex_set(self):
        return frozenset(self.vertices)

    def barycenter(self, indices=None):
        pts = self.vertices if indices is None else [self.vertices[i] for i in indices]
        k = len(pts)
        return tuple(sum(col, ZERO) / k for col in zip(*pts))


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + offset``."""

    matrix: tuple
    offset: tuple = None
    source_dim: int = None

    def __post_init__(self):
        M = mat(self.matrix)
        object.__setattr__(self, "matrix", M)
        target = len(M)
        if self.source_dim is None:
            if not M:
                raise ValueError("source_dim is required for an empty matrix")
            object.__setattr__(self, "source_dim", len(M[0]))
        for row in M:
            if len(row) != self.source_dim:
                raise ValueError("ragged matrix")
        off = (ZERO,) * target if self.offset is None else vec(self.offset)
        if len(off) != target:
            raise ValueError("offset length differs from the number of rows")
        object.__setattr__(self, "offset", off)

    @property
    def target_dim(self):
        return len(self.matrix)

    @property
    def is_linear(self):
        return all(v == 0 for v in self.offset)

    def __call__(self, x):
        return tuple(y + c for y, c in zip(matvec(self.matrix, vec(x)), self.offset))

    def linear_part(self, d):
        return matvec(self.matrix, vec(d))

    def compose(self, inner):
        """``self o inner``."""
        from .linalg import matmul

        M = matmul(self.matrix, inner.matrix) if self.matrix else ()
        off = tuple(a + b for a, b in zip(matvec(self.matrix, inner.offset), self.offset))
        return AffineMap(M, off, source_dim=inner.source_dim)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], source_dim=n)


@dataclass(frozen=True)
class PolyhedralCone:
    """``{d : A_ub d <= 0, A_eq d = 0}``; optionally carries known generators."""

    dim: int
    A_ub: tuple = ()
    A_eq: tuple = ()
    generators: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "A_ub", mat(self.A_ub))
        object.__setattr__(self, "A_eq", mat(self.A_eq))
        object.__setattr__(self, "generators", tuple(vec(g) for g in self.generators))

    def contains(self, d):
        d = vec(d)
        return all(dot(a, d) <= 0 for a in self.A_ub) and all(dot(a, d) == 0 for a in self.A_eq)

    def as_system(self):
        return HPolytope(self.dim, self.A_ub, [ZERO] * len(self.A_ub), self.A_eq, [ZERO] * len(self.A_eq))


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Exact answer of :func:`lp_feasible`.

    Exactly one of ``witness`` (a point of the system) or ``farkas`` (a pair
    ``(y_ub, y_eq)`` with ``y_ub >= 0``, ``y_ub A_ub + y_eq A_eq = 0`` and
    ``y_ub b_ub + y_eq b_eq < 0``) is set.
    """

    witness: tuple = None
    farkas: tuple = None

    @property
    def feasible(self):
        return self.witness is not None

    def verify(self, system):
        if (self.witness is None) == (self.farkas is None):
            return False
        if self.witness is not None:
            return len(self.witness) == system.dim and system.contains(self.witness)
        y_ub, y_eq = self.farkas
        if len(y_ub) != system.n_ub or len(y_eq) != system.n_eq:
            return False
        if any(y < 0 for y in y_ub):
            return False
        combo = [ZERO] * system.dim
        for y, row in zip(tuple(y_ub) + tuple(y_eq), system.A_ub + system.A_eq):
            if y:
                for k, a in enumerate(row):
                    if a:
                        combo[k] += y * a
        if any(combo):
            return False
        return dot(y_ub, system.b_ub) + dot(y_eq, system.b_eq) < 0

    def to_json(self):
        if self.witness is not None:
            return {"witness": [format_fraction(v) for v in self.witness]}
        y_ub, y_eq = self.farkas
        return {"farkas": {"ub": [format_fraction(v) for v in y_ub], "eq": [format_fraction(v) for v in y_eq]}}

    @classmethod
    def from_json(cls, doc):
        if "witness" in doc:
            return cls(witness=vec(doc["witness"]))
        return cls(farkas=(vec(doc["farkas"]["ub"]), vec(doc["farkas"]["eq"])))

