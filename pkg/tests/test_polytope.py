import random
from fractions import Fraction as F

import numpy as np
import pytest
from oracles import brute_vertices, float_feasible, float_in_hull
from scipy.optimize import linprog

from multicomm.errors import FaceBudgetExceeded, NotSurjectiveOntoQ, PointOutside, UnboundedInput
from multicomm.polytope import (
    AffineMap,
    FeasibilityCertificate,
    HPolytope,
    OpennessVerdict,
    VPolytope,
    affine_map_is_open,
    enumerate_faces,
    fm_project,
    hull,
    image_polytope,
    in_convex_hull,
    irredundant_points,
    is_bounded,
    lp_feasible,
    lp_optimize,
    remove_redundant,
    same_set,
    sampled_metric_openness,
    tangent_cone,
    vertex_enumeration,
)


def random_system(rng, dim, rows, eqs=0, lo=-3, hi=3):
    A = [[F(rng.randint(lo, hi)) for _ in range(dim)] for _ in range(rows)]
    b = [F(rng.randint(lo, hi)) for _ in range(rows)]
    E = [[F(rng.randint(lo, hi)) for _ in range(dim)] for _ in range(eqs)]
    f = [F(rng.randint(lo, hi)) for _ in range(eqs)]
    return HPolytope(dim, A, b, E, f)


def random_points(rng, dim, count, scale=4):
    return [tuple(F(rng.randint(-scale, scale), rng.randint(1, 2)) for _ in range(dim)) for _ in range(count)]


def boxed(rng, dim, cuts):
    """A box with a few random cuts that keep the origin inside (so it is nonempty and bounded)."""
    box = HPolytope.box([F(-2)] * dim, [F(2)] * dim)
    A = [[F(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(cuts)]
    b = [F(rng.randint(0, 3)) for _ in range(cuts)]
    return box.intersect(HPolytope(dim, A, b))


class TestLP:
    def test_agrees_with_highs(self):
        rng = random.Random(0)
        feasible = infeasible = 0
        for _ in range(150):
            dim = rng.randint(1, 4)
            P = random_system(rng, dim, rng.randint(1, 7), rng.randint(0, 2))
            cert = lp_feasible(P)
            assert cert.verify(P)
            assert cert.feasible == float_feasible(P.A_ub, P.b_ub, P.A_eq, P.b_eq, dim)
            feasible += cert.feasible
            infeasible += not cert.feasible
        assert feasible > 10 and infeasible > 10

    def test_unguided_path_also_certifies(self):
        rng = random.Random(1)
        for _ in range(60):
            P = random_system(rng, 3, 5, 1)
            a, b = lp_feasible(P, guided=False), lp_feasible(P)
            assert a.verify(P) and a.feasible == b.feasible

    def test_farkas_by_hand(self):
        # x <= 0 and x >= 1
        P = HPolytope(1, [[1], [-1]], [0, -1])
        cert = lp_feasible(P)
        assert not cert.feasible and cert.verify(P)
        y_ub, _ = cert.farkas
        assert y_ub[0] == y_ub[1] > 0

    def test_bad_certificates_rejected(self):
        P = HPolytope(1, [[1], [-1]], [0, -1])
        assert not FeasibilityCertificate(witness=(F(1, 2),)).verify(P)
        assert not FeasibilityCertificate(farkas=((F(1), F(2)), ())).verify(P)
        assert not FeasibilityCertificate().verify(P)

    def test_certificate_json_round_trip(self):
        rng = random.Random(2)
        for _ in range(20):
            P = random_system(rng, 2, 4)
            c = lp_feasible(P)
            assert FeasibilityCertificate.from_json(c.to_json()) == c

    def test_optimum_matches_highs(self):
        rng = random.Random(3)
        for _ in range(60):
            dim = rng.randint(1, 4)
            P = boxed(rng, dim, 3)
            c = [F(rng.randint(-3, 3)) for _ in range(dim)]
            res = lp_optimize(P, c)
            ref = linprog(
                [float(v) for v in c],
                A_ub=np.array(P.A_ub, dtype=float),
                b_ub=np.array(P.b_ub, dtype=float),
                bounds=[(None, None)] * dim,
                method="highs",
            )
            assert res.status == "optimal" and P.contains(res.x)
            assert abs(float(res.value) - ref.fun) < 1e-9

    def test_unbounded_and_bounded(self):
        half_line = HPolytope(1, [[-1]], [0])
        assert lp_optimize(half_line, [1], maximize=True).status == "unbounded"
        assert not is_bounded(half_line)
        assert is_bounded(HPolytope.simplex(3))


class TestVertices:
    def test_simplex(self):
        V = vertex_enumeration(HPolytope.simplex(3))
        assert set(V.vertices) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    def test_against_brute_force(self):
        rng = random.Random(4)
        for _ in range(60):
            dim = rng.randint(1, 3)
            P = boxed(rng, dim, rng.randint(0, 3))
            assert set(vertex_enumeration(P).vertices) == brute_vertices(P.A_ub, P.b_ub)

    def test_with_equations_against_brute_force(self):
        rng = random.Random(5)
        for _ in range(40):
            dim = rng.randint(2, 4)
            P = boxed(rng, dim, 2)
            E = [[F(rng.randint(-1, 2)) for _ in range(dim)]]
            E[0][rng.randrange(dim)] = F(1)
            P = P.intersect(HPolytope(dim, (), (), E, [F(0)]))
            assert set(vertex_enumeration(P).vertices) == brute_vertices(P.A_ub, P.b_ub, P.A_eq, P.b_eq)

    def test_empty(self):
        assert vertex_enumeration(HPolytope(1, [[1], [-1]], [0, -1])).vertices == ()

    def test_unbounded_raises(self):
        with pytest.raises(UnboundedInput):
            vertex_enumeration(HPolytope(2, [[-1, 0], [0, -1]], [0, 0]))


class TestHull:
    def test_square(self):
        V = VPolytope(2, [(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
        H = hull(V)
        assert H.n_ub == 4 and H.n_eq == 0

    def test_flat_segment_in_plane(self):
        H = hull(VPolytope(2, [(0, 0), (2, 2)]))
        assert H.n_eq == 1 and H.n_ub == 2
        assert H.contains((1, 1)) and not H.contains((1, 0))

    def test_round_trip_random(self):
        rng = random.Random(6)
        for _ in range(40):
            dim = rng.randint(1, 3)
            pts = random_points(rng, dim, rng.randint(1, 7))
            V = irredundant_points(pts, dim)
            H = hull(V)
            assert set(vertex_enumeration(H).vertices) == set(V.vertices)
            # every input point is inside; every kept vertex is outside the hull of the others (float oracle)
            assert all(H.contains(p) for p in pts)
            for v in V.vertices:
                others = [w for w in V.vertices if w != v]
                if others:
                    assert not float_in_hull(v, others)

    def test_in_convex_hull(self):
        pts = [(0, 0), (2, 0), (0, 2)]
        assert in_convex_hull((F(1, 2), F(1, 2)), pts).feasible
        assert not in_convex_hull((2, 2), pts).feasible


class TestProjection:
    def test_cube_shadow(self):
        cube = HPolytope.box([0, 0, 0], [1, 1, 1])
        assert same_set(fm_project(cube, [0, 1]), HPolytope.box([0, 0], [1, 1]))

    def test_against_projected_vertices(self):
        rng = random.Random(7)
        for _ in range(30):
            dim = rng.randint(2, 4)
            P = boxed(rng, dim, rng.randint(1, 3))
            keep = sorted(rng.sample(range(dim), rng.randint(1, dim - 1)))
            shadow = fm_project(P, keep)
            expected = irredundant_points([tuple(v[k] for k in keep) for v in vertex_enumeration(P).vertices], len(keep))
            assert set(vertex_enumeration(shadow).vertices) == set(expected.vertices)

    def test_equation_substitution(self):
        # simplex in 3 coordinates, projected to the first two: the triangle x, y >= 0, x + y <= 1
        shadow = fm_project(HPolytope.simplex(3), [0, 1])
        tri = HPolytope(2, [[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
        assert same_set(shadow, tri)

    def test_remove_redundant(self):
        P = HPolytope(1, [[1], [2], [-1]], [1, 5, 0])
        assert remove_redundant(P).n_ub == 2

    def test_bad_keep(self):
        with pytest.raises(ValueError):
            fm_project(HPolytope.simplex(2), [0, 0])


class TestFaces:
    def test_cube_face_count(self):
        V = vertex_enumeration(HPolytope.box([0, 0, 0], [1, 1, 1]))
        assert len(enumerate_faces(V, hull(V))) == 8 + 12 + 6 + 1

    def test_simplex_face_count(self):
        V = vertex_enumeration(HPolytope.simplex(4))
        assert len(enumerate_faces(V, hull(V))) == 2**4 - 1

    def test_budget(self):
        V = vertex_enumeration(HPolytope.box([0, 0, 0], [1, 1, 1]))
        with pytest.raises(FaceBudgetExceeded):
            enumerate_faces(V, hull(V), budget=5)

    def test_tangent_cone(self):
        P = HPolytope.simplex(3)
        cone = tangent_cone(P, (1, 0, 0))
        assert cone.contains((-1, 1, 0)) and not cone.contains((1, -1, 0))
        with pytest.raises(PointOutside):
            tangent_cone(P, (1, 1, 0))


def float_direction_feasible(f, P_h, x, g):
    """Is there d in the tangent cone of P at x with linear part of f at d equal to g? (HiGHS)"""
    tight = P_h.tight(x)
    A_ub = [P_h.A_ub[r] for r in tight]
    A_eq = list(P_h.A_eq) + list(f.matrix)
    b_eq = [0] * len(P_h.A_eq) + list(g)
    return float_feasible(A_ub, [0] * len(A_ub), A_eq, b_eq, P_h.dim)


class TestOpenness:
    def test_square_chi(self):
        # 3-simplex -> product of two 1-simplices, the joint-to-marginals map
        f = AffineMap([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
        P = HPolytope.simplex(4)
        Q = image_polytope(f, vertex_enumeration(P))
        verdict = affine_map_is_open(f, P, Q)
        assert verdict.open and len(verdict.faces) == 15
        assert verdict.verify(f, hull(vertex_enumeration(P)))
        assert sampled_metric_openness(f, P, Q, sample_count=20).modulus >= 1e-6

    def test_random_maps_certified_and_cross_checked(self):
        rng = random.Random(8)
        for _ in range(25):
            dim = rng.randint(1, 3)
            V = irredundant_points(random_points(rng, dim, rng.randint(2, 6), 2), dim)
            tdim = rng.randint(1, 2)
            f = AffineMap([[F(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(tdim)],
                          [F(rng.randint(-1, 1)) for _ in range(tdim)])
            Q = image_polytope(f, V)
            verdict = affine_map_is_open(f, V, Q)
            P_h = hull(V)
            assert verdict.open and verdict.verify(f, P_h)
            for cert in verdict.faces:
                for g, _ in cert.directions:
                    assert float_direction_feasible(f, P_h, cert.point, g)

    def test_json_round_trip(self):
        f = AffineMap([[1, 0], [0, 1], [1, 1]])
        V = vertex_enumeration(HPolytope.box([0, 0], [1, 1]))
        Q = image_polytope(f, V)
        verdict = affine_map_is_open(f, V, Q)
        again = OpennessVerdict.from_json(verdict.to_json(), V.vertices, Q.vertices)
        assert again.verify(f, hull(V)) and again.to_json() == verdict.to_json()

    def test_tampered_certificate_fails(self):
        f = AffineMap([[1, 1]])
        V = vertex_enumeration(HPolytope.box([0, 0], [1, 1]))
        verdict = affine_map_is_open(f, V, image_polytope(f, V))
        cert = verdict.faces[-1]
        g, d = cert.directions[0]
        verdict.faces[-1] = type(cert)(cert.face, cert.point, ((g, tuple(2 * v for v in d)),) + cert.directions[1:])
        assert not verdict.verify(f, hull(V))

    def test_codomain_too_large(self):
        f = AffineMap([[1, 0]])
        V = vertex_enumeration(HPolytope.box([0, 0], [1, 1]))
        with pytest.raises(NotSurjectiveOntoQ):
            affine_map_is_open(f, V, VPolytope(1, [(0,), (2,)]))

    def test_image_outside_codomain(self):
        f = AffineMap([[2, 0]])
        V = vertex_enumeration(HPolytope.box([0, 0], [1, 1]))
        with pytest.raises(PointOutside):
            affine_map_is_open(f, V, VPolytope(1, [(0,), (1,)]))

    def test_sampled_identity_modulus_near_one(self):
        f = AffineMap.identity(2)
        V = vertex_enumeration(HPolytope.box([0, 0], [1, 1]))
        s = sampled_metric_openness(f, V, V, sample_count=10)
        assert 0.99 <= s.modulus <= 1.01 or s.modulus == float("inf")
