import random
from fractions import Fraction as F

import pytest

from multicomm import (
    FiniteSpace,
    Measure,
    SpaceMap,
    check_consistent_family,
    compute_limit,
    gluing_coupling,
    graph_pushforward,
    make_family,
    marginal,
    mix,
    pushforward,
)
from multicomm.errors import InconsistentFamily, InvalidMeasure, MarginalMismatch, SpaceMismatch
from multicomm.search import random_diagram, random_measure


def random_map(rng, A, B):
    return SpaceMap(A, B, {a: rng.choice(B.points) for a in A.points})


X = FiniteSpace("X", ("a", "b", "c"))
Y = FiniteSpace("Y", ("u", "v"))
S = FiniteSpace("S", ("0", "1"))


class TestMeasure:
    def test_zero_weights_dropped(self):
        mu = Measure(X, {"a": F(1, 2), "b": 0, "c": F(1, 2)})
        assert mu.support == ("a", "c")
        assert mu.vector() == (F(1, 2), 0, F(1, 2))

    def test_rejections(self):
        with pytest.raises(InvalidMeasure):
            Measure(X, {"a": F(1, 2)})
        with pytest.raises(InvalidMeasure):
            Measure(X, {"a": F(3, 2), "b": F(-1, 2)})
        with pytest.raises(InvalidMeasure):
            Measure(X, {"z": 1})

    def test_constructors(self):
        assert Measure.uniform(X).vector() == (F(1, 3),) * 3
        assert Measure.point_mass(X, "b").vector() == (0, 1, 0)
        v = (F(1, 6), F(1, 3), F(1, 2))
        assert Measure.from_vector(X, v).vector() == v

    def test_equality_ignores_insertion_order(self):
        assert Measure(X, {"c": F(1, 2), "a": F(1, 2)}) == Measure(X, {"a": F(1, 2), "c": F(1, 2)})

    def test_mix_endpoints(self):
        mu, nu = Measure.point_mass(X, "a"), Measure.uniform(X)
        assert mix(1, mu, nu) == mu and mix(0, mu, nu) == nu
        assert mix(F(1, 2), mu, nu)("a") == F(2, 3)
        with pytest.raises(SpaceMismatch):
            mix(F(1, 2), mu, Measure.uniform(Y))


class TestPushforward:
    f = SpaceMap(X, Y, {"a": "u", "b": "u", "c": "v"})

    def test_hand_computed(self):
        mu = Measure(X, {"a": F(1, 6), "b": F(1, 3), "c": F(1, 2)})
        assert pushforward(self.f, mu).vector() == (F(1, 2), F(1, 2))

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            pushforward(self.f, Measure.uniform(Y))

    def test_functoriality_random(self):
        rng = random.Random(1)
        for _ in range(50):
            A = FiniteSpace("A", tuple(range(rng.randint(1, 5))))
            B = FiniteSpace("B", tuple(range(rng.randint(1, 4))))
            C = FiniteSpace("C", tuple(range(rng.randint(1, 3))))
            f, g = random_map(rng, A, B), random_map(rng, B, C)
            mu = random_measure(rng, A)
            assert pushforward(g, pushforward(f, mu)) == pushforward(g.compose(f), mu)
            assert pushforward(SpaceMap.identity(A), mu) == mu

    def test_affine_in_measure(self):
        rng = random.Random(2)
        for _ in range(30):
            f = random_map(rng, X, Y)
            mu, nu = random_measure(rng, X), random_measure(rng, X)
            t = F(rng.randint(0, 6), 6)
            assert pushforward(f, mix(t, mu, nu)) == mix(t, pushforward(f, mu), pushforward(f, nu))


class TestGraphAndCoupling:
    def test_graph_marginals(self):
        f = SpaceMap(X, Y, {"a": "u", "b": "v", "c": "v"})
        mu = Measure(X, {"a": F(1, 4), "b": F(1, 4), "c": F(1, 2)})
        g = graph_pushforward(mu, f)
        assert marginal(g, 0).vector() == mu.vector()
        assert marginal(g, 1).vector() == pushforward(f, mu).vector()
        assert all(p[1] == f(p[0]) for p in g.support)

    def test_coupling_hand_example(self):
        qa = SpaceMap(X, S, {"a": "0", "b": "0", "c": "1"})
        qb = SpaceMap(Y, S, {"u": "0", "v": "1"})
        mu_a = Measure(X, {"a": F(1, 4), "b": F(1, 4), "c": F(1, 2)})
        mu_b = Measure(Y, {"u": F(1, 2), "v": F(1, 2)})
        tau = gluing_coupling(mu_a, mu_b, qa, qb)
        assert tau.weights == {("a", "u"): F(1, 4), ("b", "u"): F(1, 4), ("c", "v"): F(1, 2)}

    def test_coupling_mismatch(self):
        qa = SpaceMap(X, S, {"a": "0", "b": "0", "c": "1"})
        qb = SpaceMap(Y, S, {"u": "0", "v": "1"})
        with pytest.raises(MarginalMismatch):
            gluing_coupling(Measure.uniform(X), Measure.uniform(Y), qa, qb)

    def test_coupling_marginals_random(self):
        rng = random.Random(4)
        for _ in range(60):
            A = FiniteSpace("A", tuple(range(rng.randint(1, 4))))
            B = FiniteSpace("B", tuple(range(rng.randint(1, 4))))
            T = FiniteSpace("T", tuple(range(rng.randint(1, 3))))
            qa = random_map(rng, A, T)
            qb_assign = {b: rng.choice(T.points) for b in B.points}
            # make the images of both agree: the common image measure is pushed from mu_a
            mu_a = random_measure(rng, A)
            nu = pushforward(qa, mu_a)
            if not set(nu.support) <= set(qb_assign.values()):
                continue
            qb = SpaceMap(B, T, qb_assign)
            weights = {}
            for s in nu.support:
                fibre = [b for b in B.points if qb(b) == s]
                for b in fibre:
                    weights[b] = nu(s) / len(fibre)
            mu_b = Measure(B, weights)
            tau = gluing_coupling(mu_a, mu_b, qa, qb)
            assert marginal(tau, 0).weights == mu_a.weights
            assert marginal(tau, 1).weights == mu_b.weights
            assert all(qa(a) == qb(b) for a, b in tau.support)


class TestFamilies:
    def test_square_any_tops_consistent(self, square):
        comps = {"a": Measure.point_mass(square.spaces["a"], "0"), "b": Measure.uniform(square.spaces["b"]),
                 "c": Measure.uniform(square.spaces["c"])}
        assert check_consistent_family(square, comps)

    def test_chain_violation_reported(self, chain):
        comps = {
            "a": Measure.point_mass(chain.spaces["a"], "2"),
            "b": Measure.point_mass(chain.spaces["b"], "x"),
            "c": Measure.uniform(chain.spaces["c"]),
        }
        v = check_consistent_family(chain, comps)
        assert not v
        assert (v.i, v.j, v.point) == ("a", "b", "x")
        assert v.expected == 1 and v.actual == 0
        with pytest.raises(InconsistentFamily):
            make_family(chain, comps)

    def test_missing_component(self, chain):
        with pytest.raises(SpaceMismatch):
            check_consistent_family(chain, {"a": Measure.uniform(chain.spaces["a"])})

    def test_family_from_limit_measure_is_consistent(self):
        rng = random.Random(7)
        for _ in range(40):
            D = random_diagram(rng, 5, 3)
            L = compute_limit(D)
            if L.is_empty():
                continue
            tau = random_measure(rng, L.space)
            comps = {}
            for k, i in enumerate(D.indices):
                w = {}
                for e, m in tau.weights.items():
                    w[e[k]] = w.get(e[k], 0) + m
                comps[i] = Measure(D.spaces[i], w)
            fam = check_consistent_family(D, comps)
            assert fam
            assert len(fam.vector()) == sum(len(D.spaces[i]) for i in D.indices)
            assert set(fam.maximal_view()) == set(D.poset.maximal)
