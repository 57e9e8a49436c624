from itertools import product

import pytest

from divisor_series.errors import InvalidInputError, TruncationError
from divisor_series.newton import diagram_of
from divisor_series.orders import Branch, BranchGroup, PowerSeries1
from divisor_series.pipeline import polynomial_groups, toric_data
from divisor_series.poincare import (FiltrationBox, JetSpace, compare, corollary_series,
                                     ijm_series, jet_codim, jet_dim, oracle_series,
                                     theorem1_series)
from divisor_series.resolution import MultiplicityMatrix, ResolutionGraph, Vertex, multiplicity_matrix
from divisor_series.series import ProductForm, TruncatedSeries, expand

from conftest import F_A, F_B, F_C, F_D, F_E

N_TRUNC = 14


def groups_of(f, T=N_TRUNC):
    return polynomial_groups(toric_data(f), T)


def forms_of(f):
    d = toric_data(f)
    return d, theorem1_series(d.graph, d.mult), corollary_series(d.diagram, d.graph, d.mult)


def two_lines():
    vs = [Vertex("E1", -3, 0), Vertex("E2", -1, 1), Vertex("E3", -1, 1)]
    g = ResolutionGraph(vs, {frozenset(("E1", "E2")), frozenset(("E1", "E3"))})
    T = 10
    groups = [BranchGroup(1, (Branch(PowerSeries1({1: 1}, T), PowerSeries1({}, T)),)),
              BranchGroup(2, (Branch(PowerSeries1({}, T), PowerSeries1({1: 1}, T)),))]
    return g, groups


def semigroup_series(gens, N):
    """Count the numerical semigroup generated by ``gens`` directly."""
    reach = {0}
    for v in range(1, N + 1):
        if any(v - g in reach for g in gens if v >= g):
            reach.add(v)
    return TruncatedSeries(1, N, {(v,): 1 for v in reach})


class TestFormulas:
    def test_cusp(self):
        _, t1, cor = forms_of(F_B)
        expected = ProductForm(1, [((2,), -1), ((3,), -1), ((6,), 1)])
        assert t1 == expected and cor == expected

    def test_example1(self):
        _, t1, cor = forms_of(F_A)
        assert t1 == ProductForm(2, [((1, 1), -1), ((1, 2), -1), ((1, 1), 1), ((2, 4), 1)])
        assert cor == ProductForm(2, [((1, 1), 1), ((2, 4), 1), ((1, 1), -1), ((1, 2), -1)])
        assert expand(t1, 6) == TruncatedSeries(2, 6, {(0, 0): 1, (1, 2): 1})

    def test_tacnode(self):
        _, t1, cor = forms_of(F_C)
        assert t1 == cor == ProductForm(1, [((1,), -1), ((2,), -1), ((4,), 1)])

    def test_ijm(self):
        d, t1, _ = forms_of(F_B)
        assert ijm_series(d.graph, d.mult) == t1
        g, _ = two_lines()
        assert ijm_series(g, multiplicity_matrix(g)) == ProductForm(2)
        d = toric_data(F_C)
        with pytest.raises(InvalidInputError):
            ijm_series(d.graph, d.mult)

    def test_no_marked(self):
        g = ResolutionGraph([Vertex("E", -1)], set())
        with pytest.raises(InvalidInputError):
            theorem1_series(g, multiplicity_matrix(g))


class TestJets:
    def setup_method(self):
        self.box = FiltrationBox.from_groups(groups_of(F_C), 6)

    def test_examples(self):
        jets = JetSpace(3)
        assert jets.dimension == 10
        assert jet_dim(self.box, (3,), jets) == 6
        assert jet_dim(self.box, (2,), jets) == 8
        assert jet_dim(self.box, (0,), jets) == 10

    def test_monotone(self):
        box = FiltrationBox.from_groups(groups_of(F_A), 5)
        jets = JetSpace(5)
        for v in product(range(6), repeat=2):
            d = jet_dim(box, v, jets)
            for i in range(2):
                w = list(v)
                w[i] += 1
                assert jet_dim(box, w, jets) <= d

    def test_codim_stable_in_M(self):
        box = FiltrationBox.from_groups(groups_of(F_A), 5)
        for v in product(range(6), repeat=2):
            M = max(v)
            assert jet_codim(box, v, JetSpace(M)) == jet_codim(box, v, JetSpace(M + 1))

    def test_insufficient_truncation(self):
        with pytest.raises(TruncationError) as err:
            FiltrationBox.from_groups(groups_of(F_C, T=3), 6)
        assert err.value.required == 6

    def test_group_indices(self):
        g1, g2 = groups_of(F_A)
        with pytest.raises(InvalidInputError):
            FiltrationBox(2, 4, (g2, g1))

    def test_two_lines_codim(self):
        _, groups = two_lines()
        box = FiltrationBox.from_groups(groups, 5)
        jets = JetSpace(5)
        for v1, v2 in product(range(7), repeat=2):
            assert jet_codim(box, (v1, v2), jets) == v1 + v2 - (v1 > 0 and v2 > 0)


class TestOracle:
    def test_cusp(self):
        s = oracle_series(FiltrationBox.from_groups(groups_of(F_B), 8))
        assert s == semigroup_series((2, 3), 8)

    def test_tacnode(self):
        s = oracle_series(FiltrationBox.from_groups(groups_of(F_C), 6))
        assert s == TruncatedSeries(1, 6, {(0,): 1, (1,): 1, **{(k,): 2 for k in range(2, 7)}})

    def test_e6_semigroup(self):
        s = oracle_series(FiltrationBox.from_groups(groups_of(F_E), 12))
        assert s == semigroup_series((3, 4), 12)

    def test_two_lines(self):
        _, groups = two_lines()
        assert oracle_series(FiltrationBox.from_groups(groups, 5)) == TruncatedSeries.one(2, 5)

    def test_r1_difference(self):
        box = FiltrationBox.from_groups(groups_of(F_C), 8)
        s = oracle_series(box)
        jets = JetSpace(8)
        for v in range(9):
            diff = jet_dim(box, (v,), jets) - jet_dim(box, (v + 1,), jets)
            assert diff >= 0 and s[(v,)] == diff

    def test_parallel_matches_serial(self):
        box = FiltrationBox.from_groups(groups_of(F_A), 4)
        assert oracle_series(box, workers=2) == oracle_series(box, workers=1)

    @pytest.mark.parametrize("f", [F_A, F_B, F_C, F_D, F_E])
    def test_constant_term(self, f):
        box = FiltrationBox.from_groups(groups_of(f), 3)
        assert oracle_series(box)[(0,) * box.r] == 1


class TestCompare:
    def test_agree(self):
        _, t1, _ = forms_of(F_A)
        rep = compare(t1, oracle_series(FiltrationBox.from_groups(groups_of(F_A), 6)))
        assert rep.agree and rep.bound == 6

    def test_cusp_through_20(self):
        _, _, cor = forms_of(F_B)
        oracle = oracle_series(FiltrationBox.from_groups(groups_of(F_B, T=20), 20))
        assert compare(cor, oracle).agree

    def test_corrupted_m(self):
        d = toric_data(F_B)
        m = [list(r) for r in d.mult.m]
        m[0][1] = m[1][0] = 3
        bad = MultiplicityMatrix(d.mult.ids, tuple(map(tuple, m)), d.mult.marked)
        oracle = oracle_series(FiltrationBox.from_groups(groups_of(F_B), 8))
        rep = compare(theorem1_series(d.graph, bad), oracle)
        assert not rep.agree
        assert rep.first_mismatch == (2,)
        assert (rep.formula_coefficient, rep.oracle_coefficient) == (0, 1)

    def test_arity_mismatch(self):
        with pytest.raises(InvalidInputError):
            compare(ProductForm(1), TruncatedSeries.one(2, 3))
