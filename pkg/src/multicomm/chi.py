"""The characteristic map chi: P(lim D) -> lim P(D) as an exact linear map.

Coordinates of the codomain are ``(i, p)`` for every index ``i`` and point
``p`` of ``X_i``, blocks in index order. The matrix entry at row ``(i, p)``
and column ``e`` (a limit element) is 1 exactly when ``pi_i(e) = p``.
"""

from dataclasses import dataclass, field

from .diagram import check_cone_open_multicommutative, compute_limit, cone_characteristic_map
from .errors import ConeNotOpenMulticommutative, EmptyLimit, InconsistentFamily, SpaceMismatch
from .measures import FamilyViolation, MarginalFamily, Measure, check_consistent_family
from .polytope.convert import image_polytope, vertex_enumeration
from .polytope.linalg import ONE, ZERO, matmul
from .polytope.lp import lp_feasible
from .polytope.openness import DEFAULT_FACE_BUDGET, affine_map_is_open, sampled_metric_openness
from .polytope.sets import AffineMap, HPolytope, VPolytope


@dataclass(frozen=True, eq=False)
class ChiMap:
    diagram: object
    limit: object
    rows: tuple  # (index, point) per codomain coordinate
    domain: HPolytope  # simplex over the limit elements
    codomain: HPolytope  # consistent families inside the product of simplices
    map: AffineMap

    @property
    def matrix(self):
        return self.map.matrix

    def block(self, i):
        """Row slice of index ``i``."""
        start = next(k for k, (j, _) in enumerate(self.rows) if j == i)
        return slice(start, start + len(self.diagram.spaces[i]))

    def domain_vertices(self):
        n = len(self.limit)
        return VPolytope(n, [[ONE if r == c else ZERO for c in range(n)] for r in range(n)])

    def family_from_vector(self, y):
        comps = {}
        for i in self.diagram.indices:
            comps[i] = Measure.from_vector(self.diagram.spaces[i], y[self.block(i)])
        return MarginalFamily(self.diagram, comps)

    def measure_from_vector(self, tau):
        return Measure.from_vector(self.limit.space, tau)

    def maximal_rows(self):
        maximal = set(self.diagram.poset.maximal)
        return [k for k, (i, _) in enumerate(self.rows) if i in maximal]


def codomain_polytope(diagram):
    """lim P(D): simplex constraints per index plus one pushforward equation per (i > j, q in X_j)."""
    rows = [(i, p) for i in diagram.indices for p in diagram.spaces[i].points]
    pos = {r: k for k, r in enumerate(rows)}
    n = len(rows)
    A_ub = [[-ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    A_eq, b_eq = [], []
    for i in diagram.indices:
        A_eq.append([ONE if rows[c][0] == i else ZERO for c in range(n)])
        b_eq.append(ONE)
    for i, j in diagram.poset.strict_pairs:
        f = diagram.maps[(i, j)]
        for q in diagram.spaces[j].points:
            row = [ZERO] * n
            for p in diagram.spaces[i].points:
                if f(p) == q:
                    row[pos[(i, p)]] = ONE
            row[pos[(j, q)]] -= ONE
            A_eq.append(row)
            b_eq.append(ZERO)
    return tuple(rows), HPolytope(n, A_ub, [ZERO] * n, A_eq, b_eq)


def build_chi(diagram, limit=None):
    limit = compute_limit(diagram) if limit is None else limit
    if limit.is_empty():
        raise EmptyLimit()
    rows, codomain = codomain_polytope(diagram)
    coords = [limit.coordinate(i) for i, _ in rows]
    matrix = [
        [ONE if e[k] == p else ZERO for e in limit.elements]
        for (i, p), k in zip(rows, coords)
    ]
    n = len(limit)
    return ChiMap(diagram, limit, rows, HPolytope.simplex(n), codomain, AffineMap(matrix, source_dim=n))


def chi_apply(chi, tau):
    """The family of marginals ``(P pi_i (tau))_i``."""
    if tau.space != chi.limit.space:
        raise SpaceMismatch("measure does not live on the limit of this diagram")
    return chi.family_from_vector(chi.map(tau.vector()))


def preimage_system(chi, target):
    """``{tau >= 0 : sum tau = 1, M tau = target}``."""
    n = len(chi.limit)
    A_ub = [[-ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    A_eq = [[ONE] * n] + [list(row) for row in chi.matrix]
    b_eq = [ONE] + list(target)
    return HPolytope(n, A_ub, [ZERO] * n, A_eq, b_eq)


@dataclass(frozen=True)
class Preimage:
    measure: Measure = None
    certificate: object = None  # FeasibilityCertificate

    @property
    def feasible(self):
        return self.measure is not None


def preimage_witness(chi, family):
    """Exact tau with chi(tau) = family, or a Farkas certificate that none exists."""
    comps = family.components if isinstance(family, MarginalFamily) else dict(family)
    checked = check_consistent_family(chi.diagram, comps)
    if isinstance(checked, FamilyViolation):
        raise InconsistentFamily(checked)
    system = preimage_system(chi, checked.vector())
    cert = lp_feasible(system)
    if cert.feasible:
        return Preimage(chi.measure_from_vector(cert.witness), cert)
    return Preimage(None, cert)


@dataclass
class SurjectivityVerdict:
    surjective: bool
    vertices: list  # codomain vertices (coordinate vectors)
    witnesses: list  # Measure per vertex, None where unreached
    unreached: list = field(default_factory=list)  # (vertex, FeasibilityCertificate)

    @property
    def label(self):
        return "SURJECTIVE" if self.surjective else "NOT_SURJECTIVE"


def check_chi_surjective(chi):
    """Vertex coverage: chi is onto iff every vertex of lim P(D) has a preimage."""
    vertices = list(vertex_enumeration(chi.codomain).vertices)
    witnesses, unreached = [], []
    for v in vertices:
        cert = lp_feasible(preimage_system(chi, v))
        if cert.feasible:
            witnesses.append(chi.measure_from_vector(cert.witness))
        else:
            witnesses.append(None)
            unreached.append((v, cert))
    return SurjectivityVerdict(not unreached, vertices, witnesses, unreached)


@dataclass
class ChiOpennessReport:
    onto: str  # "codomain" or "image"
    exact: object  # OpennessVerdict
    sampled: object = None  # SampledOpenness

    @property
    def label(self):
        return self.exact.label


def check_chi_open(chi, surjectivity=None, face_budget=DEFAULT_FACE_BUDGET, sample_count=100, radius=1e-3):
    """Exact openness certificate for chi onto lim P(D), or onto its image when chi is not onto."""
    if surjectivity is None:
        surjectivity = check_chi_surjective(chi)
    P = chi.domain_vertices()
    if surjectivity.surjective:
        Q = VPolytope(chi.codomain.dim, surjectivity.vertices)
        onto = "codomain"
    else:
        Q = image_polytope(chi.map, P)
        onto = "image"
    exact = affine_map_is_open(chi.map, P, Q, face_budget=face_budget)
    sampled = None
    if sample_count:
        sampled = sampled_metric_openness(chi.map, P, Q, sample_count=sample_count, radius=radius)
    return ChiOpennessReport(onto, exact, sampled)


def check_chi_affine(chi):
    """The matrix form: zero offset, 0/1 entries, one 1 per column in every index block."""
    if not chi.map.is_linear:
        return False
    if any(v not in (ZERO, ONE) for row in chi.matrix for v in row):
        return False
    for i in chi.diagram.indices:
        block = chi.matrix[chi.block(i)]
        for c in range(len(chi.limit)):
            if sum(row[c] for row in block) != 1:
                return False
    return True


def pushforward_matrix(f):
    """Matrix of P(f): Delta(source) -> Delta(target)."""
    return AffineMap(
        [[ONE if f(x) == y else ZERO for x in f.source.points] for y in f.target.points],
        source_dim=len(f.source),
    )


def cone_matrix(cone, diagram, rows):
    """Marginalization matrix of chi_{P(T), P(D)} read straight off the legs."""
    return tuple(
        tuple(ONE if cone.legs[i](t) == p else ZERO for t in cone.apex.points)
        for i, p in rows
    )


@dataclass
class CompositionVerdict:
    equal: bool
    lhs: tuple  # chi . P(chi_{T,D})
    rhs: tuple  # chi_{P(T), P(D)}

    @property
    def label(self):
        return "EQUAL" if self.equal else "DIFFERENT"


def verify_composition_identity(cone, diagram, chi=None):
    limit = compute_limit(diagram) if chi is None else chi.limit
    char = cone_characteristic_map(cone, diagram, limit)
    chi = build_chi(diagram, limit) if chi is None else chi
    P_char = pushforward_matrix(char)
    lhs = matmul(chi.matrix, P_char.matrix)
    rhs = cone_matrix(cone, diagram, chi.rows)
    return CompositionVerdict(lhs == rhs, lhs, rhs)


@dataclass
class FunctorReport:
    cone: object  # ConeVerdict
    pushforward_surjective: bool
    pushforward_open: object  # OpennessVerdict
    chi_surjective: object  # SurjectivityVerdict
    chi_open: object  # ChiOpennessReport
    composition: object  # CompositionVerdict

    @property
    def preserved(self):
        return (
            self.pushforward_surjective
            and self.pushforward_open.open
            and self.chi_surjective.surjective
            and self.chi_open.exact.open
            and self.composition.equal
        )

    @property
    def label(self):
        return "PRESERVED" if self.preserved else "NOT_PRESERVED"


def simplex_vertices(n):
    return VPolytope(n, [[ONE if r == c else ZERO for c in range(n)] for r in range(n)])


def check_functor_preserves(cone, diagram, face_budget=DEFAULT_FACE_BUDGET, sample_count=0):
    """Is the image cone (P(T), P h_i) open-multicommutative? Reported factor by factor."""
    limit = compute_limit(diagram)
    verdict = check_cone_open_multicommutative(cone, diagram, limit)
    if not verdict.open_multicommutative:
        raise ConeNotOpenMulticommutative(
            f"chi_(T,D) misses {len(verdict.missed)} limit element(s), e.g. {verdict.missed[0]!r}"
        )
    char = cone_characteristic_map(cone, diagram, limit)
    P_char = pushforward_matrix(char)
    dom = simplex_vertices(len(cone.apex))
    cod = simplex_vertices(len(limit))
    onto = image_polytope(P_char, dom).vertex_set() == cod.vertex_set()
    p_open = affine_map_is_open(P_char, dom, cod, face_budget=face_budget)
    chi = build_chi(diagram, limit)
    surj = check_chi_surjective(chi)
    chi_open = check_chi_open(chi, surj, face_budget=face_budget, sample_count=sample_count)
    comp = verify_composition_identity(cone, diagram, chi)
    return FunctorReport(verdict, onto, p_open, surj, chi_open, comp)

