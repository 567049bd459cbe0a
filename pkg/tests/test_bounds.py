import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardcore.bounds import (
    BoundId,
    NotRegularError,
    Verdict,
    biweighted_extremal,
    check_biweighted_eq4,
    check_biweighted_termwise,
    check_chain_eq5,
    check_corollary1,
    check_edge_weighted_eq3,
    check_hom_bounds,
    check_termwise_eq6,
    check_theorem1,
    orientations,
    reports_to_csv,
    scan,
    verdict_of,
)
from hardcore.graph_core import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle,
    disjoint_union,
    double_cover,
    enumerate_regular,
    path,
    petersen,
    read_graph6,
)
from hardcore.homomorphism import TargetGraph, independent_set_target

K3_TARGET = TargetGraph.from_graph(complete_graph(3))
rationals = st.fractions(min_value=0, max_value=20, max_denominator=6)


def test_bound_id_parse():
    assert BoundId.parse("eq3") is BoundId.EQ3_EDGE
    assert BoundId.parse("COR1") is BoundId.COR1
    with pytest.raises(ValueError):
        BoundId.parse("EQ9")


def test_verdict_of():
    assert verdict_of(1, 2) is Verdict.STRICT
    assert verdict_of(2, 2) is Verdict.EQUALITY
    assert verdict_of(3, 2) is Verdict.VIOLATION


def test_theorem1_examples():
    r = check_theorem1(complete_bipartite(3, 3), 1)
    assert r.verdict is Verdict.EQUALITY and r.lhs == r.rhs == 15 ** 6
    r = check_theorem1(cycle(5), 1)
    assert r.verdict is Verdict.STRICT
    assert (r.lhs, r.rhs) == (14641, 16807)
    for g in (cycle(5), petersen(), complete_graph(4)):
        r = check_theorem1(g, 0)
        assert r.verdict is Verdict.EQUALITY and r.lhs == r.rhs == 1


def test_corollary1_examples():
    assert check_corollary1(disjoint_union([complete_bipartite(2, 2)] * 2)).verdict is Verdict.EQUALITY
    r = check_corollary1(complete_graph(4))
    assert (r.verdict, r.lhs, r.rhs) == (Verdict.STRICT, 15625, 50625)
    r = check_corollary1(petersen())
    assert (r.verdict, r.lhs, r.rhs) == (Verdict.STRICT, 76 ** 6, 15 ** 10)
    assert r.bound_id is BoundId.COR1


def test_theorem1_rejects_bad_input():
    with pytest.raises(NotRegularError):
        check_theorem1(path(3), 1)
    with pytest.raises(NotRegularError):
        check_theorem1(Graph.empty(3), 1)
    with pytest.raises(ValueError):
        check_theorem1(cycle(4), -1)
    with pytest.raises(TypeError):
        check_theorem1(cycle(4), 0.5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(4, 2), (5, 2), (6, 3), (8, 3), (7, 4)]), rationals)
def test_theorem1_sound_and_equality_only_on_extremal(nd, lam):
    n, d = nd
    for g in enumerate_regular(n, d):
        r = check_theorem1(g, lam)
        assert r.verdict is not Verdict.VIOLATION
        if lam > 0:
            assert (r.verdict is Verdict.EQUALITY) == r.details["extremal"]


def test_one_regular_graphs_are_equality_cases():
    for k in range(1, 6):
        g = disjoint_union([complete_graph(2)] * k)
        for lam in (Fraction(1, 2), 1, 2):
            assert check_theorem1(g, lam).verdict is Verdict.EQUALITY


def test_chain_examples():
    r = check_chain_eq5(complete_graph(3), 1)
    assert (r.lhs, r.rhs) == (16, 18)
    assert r.details == {"i_G": 4, "i_cover": 18}
    assert all(r.side_checks.values())
    r = check_chain_eq5(complete_graph(2), Fraction(3, 7))
    assert r.verdict is Verdict.EQUALITY
    r = check_chain_eq5(Graph.empty(4), 5)
    assert r.verdict is Verdict.EQUALITY
    # non-regular inputs are fine
    paw = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    r = check_chain_eq5(paw, 2)
    assert r.verdict is Verdict.STRICT and all(r.side_checks.values())
    # a bipartite graph's double cover is two copies of it
    assert check_chain_eq5(path(4), 2).verdict is Verdict.EQUALITY
    assert "pair_correspondence" not in check_chain_eq5(path(4), 1, structural=False).side_checks


def test_edge_weighted_examples():
    r = check_edge_weighted_eq3(path(3))
    assert (r.verdict, r.lhs, r.rhs) == (Verdict.EQUALITY, 25, 25)
    r = check_edge_weighted_eq3(complete_graph(2))
    assert (r.verdict, r.lhs, r.rhs) == (Verdict.EQUALITY, 3, 3)
    r = check_edge_weighted_eq3(complete_graph(3))
    assert (r.verdict, r.lhs, r.rhs) == (Verdict.STRICT, 256, 343)
    assert r.proved
    assert not check_edge_weighted_eq3(complete_graph(7)).proved
    with pytest.raises(ValueError):
        check_edge_weighted_eq3(disjoint_union([complete_graph(2), Graph.empty(1)]))


def test_biweighted_examples():
    for d in range(1, 5):
        g = complete_bipartite(d, d)
        for mu, lam in ((1, 1), (Fraction(1, 2), 3), (0, 2)):
            assert check_biweighted_eq4(g, None, mu, lam).verdict is Verdict.EQUALITY
    r = check_biweighted_eq4(cycle(6), None, 1, 1)
    assert (r.verdict, r.lhs, r.rhs) == (Verdict.STRICT, 104976, 117649)
    with pytest.raises(ValueError):
        check_biweighted_eq4(cycle(5))
    assert biweighted_extremal(2).evaluate(1, 1) == 7


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([cycle(6), cycle(8), double_cover(petersen()), complete_bipartite(3, 3)]), rationals)
def test_biweighted_diagonal_matches_theorem1(g, lam):
    a = check_biweighted_eq4(g, None, lam, lam)
    b = check_theorem1(g, lam)
    assert a.verdict is b.verdict
    assert (a.lhs, a.rhs) == (b.lhs, b.rhs)


def test_orientations():
    g = disjoint_union([cycle(4), cycle(6), complete_bipartite(1, 1)])
    ors = orientations(g)
    assert len(ors) == 4
    assert len({bp.left for bp in ors}) == 4
    first = g.vertex_mask & 0b1111
    assert all(bp.left & first == ors[0].left & first for bp in ors)
    many = disjoint_union([complete_graph(2)] * 12)
    assert len(orientations(many)) <= 101
    assert orientations(many, seed=4) == orientations(many, seed=4)


def test_termwise_examples():
    for d in range(1, 5):
        assert check_termwise_eq6(complete_bipartite(d, d)).verdict is Verdict.EQUALITY
    for g in (cycle(5), complete_graph(4)):
        r = check_termwise_eq6(g)
        assert r.verdict is Verdict.STRICT
        assert not r.proved and not r.is_finding
        assert sum(int(s) for s in r.details["slack"]) == r.rhs - r.lhs


def test_biweighted_termwise_fails_on_hexagon():
    # two hexagons against three copies of K_{2,2}
    r = check_biweighted_termwise(cycle(6))
    assert r.verdict is Verdict.VIOLATION
    assert r.is_finding and not r.is_bug
    assert {"class": [3, 3], "lhs": "2", "rhs": "0"} in r.details["violations"]
    assert check_biweighted_termwise(complete_bipartite(3, 3)).verdict is Verdict.EQUALITY


def test_hom_examples():
    r = check_hom_bounds(cycle(6), K3_TARGET)
    assert r.bound_id is BoundId.EQ7_HOM
    assert (r.lhs, r.rhs) == (66 ** 4, 18 ** 6)
    assert r.verdict is Verdict.STRICT and r.proved
    loop = TargetGraph.build(1, loops=[0])
    r = check_hom_bounds(petersen(), loop)
    assert r.verdict is Verdict.EQUALITY and r.lhs == r.rhs == 1
    r = check_hom_bounds(complete_graph(3), K3_TARGET)
    assert not r.proved
    assert (r.lhs, r.rhs) == (6 ** 4, 18 ** 3)


def test_hom_with_independent_set_target_agrees_with_theorem1():
    graphs = list(enumerate_regular(6, 2)) + list(enumerate_regular(8, 3)) + [petersen()]
    for g in graphs:
        for lam in (Fraction(1, 2), 1, 2, 10):
            a = check_hom_bounds(g, independent_set_target(lam), BoundId.EQ8_HOM_WEIGHTED)
            b = check_theorem1(g, lam)
            assert a.verdict is b.verdict
    assert check_hom_bounds(cycle(4), independent_set_target(2)).bound_id is BoundId.EQ8_HOM_WEIGHTED


def test_scan_cubic_six():
    rep = scan(enumerate_regular(6, 3), [BoundId.COR1])
    assert rep.graphs == 2
    verdicts = sorted(r.verdict.value for r in rep.reports)
    assert verdicts == ["equality", "strict"]
    eq = rep.equality_cases[0]
    assert read_graph6(eq.graph6) == complete_bipartite(3, 3)
    assert rep.violations == [] and rep.findings == []


def test_scan_two_regular_theorem():
    graphs = [g for n in range(3, 11) for g in enumerate_regular(n, 2)]
    rep = scan(graphs, [BoundId.THM1], lambdas=[Fraction(1, 2), 1, 2])
    assert rep.violations == []
    assert rep.summary()["THM1"]["violation"] == 0


def test_scan_empty_and_skips():
    rep = scan([], [BoundId.THM1, BoundId.EQ4_BIWEIGHTED])
    assert rep.graphs == 0 and rep.reports == [] and rep.skipped == []
    rep = scan([path(3), cycle(5)], [BoundId.THM1, BoundId.EQ4_BIWEIGHTED])
    reasons = {(s.graph6, s.bound_id) for s in rep.skipped}
    assert len(reasons) == 3
    assert reports_to_csv([]).strip() == "bound_id,graph6,params,verdict,lhs,rhs"


def test_scan_deterministic_across_jobs():
    graphs = list(enumerate_regular(8, 3)) + list(enumerate_regular(7, 2))
    random.Random(1).shuffle(graphs)
    bounds = [BoundId.THM1, BoundId.EQ5_CHAIN, BoundId.EQ6_TERMWISE, BoundId.EQ7_HOM]
    a = scan(graphs, bounds, lambdas=[1, 2])
    b = scan(list(reversed(graphs)), bounds, lambdas=[1, 2], jobs=3)
    assert a.to_csv() == b.to_csv()
    assert a.to_json() == b.to_json()
