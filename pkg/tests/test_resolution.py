import random
from fractions import Fraction
from math import gcd

import pytest

from divisor_series.errors import InvalidInputError, MalformedGraphError
from divisor_series.newton import diagram_of, translated_facet_min
from divisor_series.resolution import (ResolutionGraph, Vertex, insert_mediant,
                                       multiplicity_matrix, ray_id, resolve_diagram,
                                       subdivide_fan, toric_chain, validate_graph)

from conftest import F_A, F_B, POLY_CORPUS, X, Y


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def path(self_ints, marks=None, ids=None):
    ids = ids or [f"E{i + 1}" for i in range(len(self_ints))]
    marks = marks or [0] * len(self_ints)
    vs = [Vertex(i, c, s) for i, c, s in zip(ids, self_ints, marks)]
    return ResolutionGraph(vs, {frozenset(p) for p in zip(ids, ids[1:])})


def random_targets(rng, k):
    out = set()
    while len(out) < k:
        a, b = rng.randint(1, 9), rng.randint(1, 9)
        if gcd(a, b) == 1:
            out.add((a, b))
    return out


def toric_oracle(s, d):
    """Multiplicity of the curvette at ray s along the divisor of ray d."""
    return min(s[0] * d[1], s[1] * d[0])


class TestSubdivide:
    def test_examples(self):
        assert subdivide_fan(set()) == [(1, 0), (0, 1)]
        assert subdivide_fan({(2, 3)}) == [(1, 0), (1, 1), (2, 3), (1, 2), (0, 1)]
        assert subdivide_fan({(1, 1), (1, 2)}) == [(1, 0), (1, 1), (1, 2), (0, 1)]

    def test_rejects_non_primitive(self):
        with pytest.raises(InvalidInputError):
            subdivide_fan({(2, 4)})
        with pytest.raises(InvalidInputError):
            subdivide_fan({(0, 1)})

    def test_unimodular_random(self):
        rng = random.Random(5)
        for _ in range(100):
            targets = random_targets(rng, rng.randint(1, 4))
            rays = subdivide_fan(targets)
            assert rays[0] == (1, 0) and rays[-1] == (0, 1)
            assert targets <= set(rays)
            assert all(det(u, v) == 1 for u, v in zip(rays, rays[1:]))


class TestChain:
    def test_cusp(self):
        rays, g = resolve_diagram(diagram_of(F_B))
        assert g.rays() == [(1, 1), (2, 3), (1, 2)]
        assert [v.self_intersection for v in g.vertices] == [-3, -1, -2]
        assert [v.marked_s for v in g.vertices] == [0, 1, 0]
        assert [g.chi(i) for i in g.ids] == [1, 0, 1]

    def test_example1(self):
        _, g = resolve_diagram(diagram_of(F_A))
        assert [v.self_intersection for v in g.vertices] == [-2, -1]
        assert [v.marked_s for v in g.vertices] == [1, 2]

    def test_single_blowup(self):
        f = Y**2 - X**2
        _, g = resolve_diagram(diagram_of(f))
        assert [(v.ray, v.self_intersection, v.marked_s) for v in g.vertices] == [((1, 1), -1, 2)]
        assert g.chi(ray_id((1, 1))) == 2

    def test_malformed(self):
        with pytest.raises(MalformedGraphError):
            toric_chain([(1, 0), (1, 2), (0, 1)])
        with pytest.raises(MalformedGraphError):
            toric_chain([(1, 0), (1, 1), (0, 1)], {(2, 3): 1})


class TestMultiplicity:
    def test_examples(self):
        assert multiplicity_matrix(path([-2, -1], [1, 2])).as_lists() == [[1, 1], [1, 2]]
        assert multiplicity_matrix(path([-3, -1, -2])).as_lists() == [[1, 2, 1], [2, 6, 3], [1, 3, 2]]
        assert multiplicity_matrix(path([-1])).as_lists() == [[1]]

    def test_marked_vectors(self):
        m = multiplicity_matrix(path([-2, -1], [1, 2]))
        assert m.marked == ("E1", "E2")
        assert m.vector("E2") == (1, 2)

    def test_singular(self):
        with pytest.raises(MalformedGraphError):
            multiplicity_matrix(path([-2, -2, -1, -2]))

    def test_non_integral(self):
        with pytest.raises(MalformedGraphError):
            multiplicity_matrix(path([-2]))

    def test_random_chains(self):
        rng = random.Random(11)
        for _ in range(50):
            rays = subdivide_fan(random_targets(rng, rng.randint(1, 3)))
            g = toric_chain(rays)
            m = multiplicity_matrix(g)
            inner = rays[1:-1]
            for i, s in enumerate(inner):
                for j, d in enumerate(inner):
                    assert m.m[i][j] == toric_oracle(s, d)
            M = g.intersection_matrix()
            n = len(inner)
            for i in range(n):
                for j in range(n):
                    assert -sum(M[i][k] * m.m[k][j] for k in range(n)) == (i == j)


class TestValidate:
    def star(self, c=(-3, -1, -1), marks=(0, 1, 1)):
        vs = [Vertex(f"E{i + 1}", ci, si) for i, (ci, si) in enumerate(zip(c, marks))]
        return ResolutionGraph(vs, {frozenset(("E1", "E2")), frozenset(("E1", "E3"))})

    def test_two_lines(self):
        g = validate_graph(self.star())
        assert multiplicity_matrix(g).as_lists() == [[1, 1, 1], [1, 2, 1], [1, 1, 2]]
        assert [g.chi(i) for i in g.ids] == [0, 1, 1]

    def test_rejects(self):
        with pytest.raises(MalformedGraphError):
            validate_graph(ResolutionGraph([Vertex("a", -1), Vertex("b", -1)], set()))
        with pytest.raises(MalformedGraphError):
            validate_graph(self.star(c=(-1, -1, -1)))
        with pytest.raises(MalformedGraphError):
            validate_graph(path([-1, 0]))
        with pytest.raises(MalformedGraphError):
            validate_graph(path([-2]))
        with pytest.raises(MalformedGraphError):
            ResolutionGraph([Vertex("a", -1)], {frozenset(("a", "z"))})
        cyc = path([-3, -3, -3])
        with pytest.raises(MalformedGraphError):
            validate_graph(ResolutionGraph(cyc.vertices, cyc.edges | {frozenset(("E1", "E3"))}))


@pytest.mark.parametrize("name", sorted(POLY_CORPUS))
def test_translated_facet_cross_check(name):
    d = diagram_of(POLY_CORPUS[name])
    _, g = resolve_diagram(d)
    m = multiplicity_matrix(g)
    for fi in d.facets:
        for fj in d.facets:
            mij = m.entry(ray_id(fi.normal), ray_id(fj.normal))
            assert fi.integer_length * mij == translated_facet_min(fi, fj)


@pytest.mark.parametrize("name", sorted(POLY_CORPUS))
def test_coordinate_curvettes(name):
    d = diagram_of(POLY_CORPUS[name])
    _, g = resolve_diagram(d)
    m = multiplicity_matrix(g)
    first, last = g.ids[0], g.ids[-1]
    assert m.vector(first) == tuple(fc.normal[0] for fc in d.facets)
    assert m.vector(last) == tuple(fc.normal[1] for fc in d.facets)


def test_refinement_invariance():
    rng = random.Random(3)
    for _ in range(20):
        targets = random_targets(rng, rng.randint(1, 3))
        rays = subdivide_fan(targets)
        marks = {t: rng.randint(1, 3) for t in targets}
        g0 = toric_chain(rays, marks)
        m0 = multiplicity_matrix(g0)
        refined = rays
        for _ in range(rng.randint(1, 5)):
            refined = insert_mediant(refined, rng.randrange(len(refined) - 1))
        g1 = toric_chain(refined, marks)
        m1 = multiplicity_matrix(g1)
        for a in m0.marked:
            assert m0.vector(a) == m1.vector(a)
        new = set(g1.ids) - set(g0.ids)
        assert all(g1.chi(v) == 0 for v in new if v not in (g1.ids[0], g1.ids[-1]))
        # nonzero chi data expressed through marked vectors is unchanged
        def chi_data(g, m):
            acc = {}
            for v in g.ids:
                if g.chi(v):
                    acc[m.vector(v)] = acc.get(m.vector(v), 0) + g.chi(v)
            return {k: e for k, e in acc.items() if e}
        assert chi_data(g0, m0) == chi_data(g1, m1)
