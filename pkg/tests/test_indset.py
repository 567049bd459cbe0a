import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from hardcore.exact_arith import IntPolynomial, binomial_power
from hardcore.graph_core import (
    Bipartition,
    Graph,
    all_labelled_graphs,
    canonical_bipartition,
    complete_bipartite,
    complete_graph,
    cycle,
    disjoint_union,
    double_cover,
    random_graph,
)
from hardcore.indset import (
    SizeError,
    bipartite_profile,
    brute_force_polynomial,
    brute_force_profile,
    count_independent_sets,
    independence_polynomial,
)

from test_graph_core import graphs


def naive_counts(g):
    """Size histogram from itertools.combinations; used to pin small examples."""
    out = [0] * (g.n + 1)
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if not any(g.has_edge(u, v) for u, v in itertools.combinations(s, 2)):
                out[k] += 1
    return IntPolynomial(out)


@pytest.mark.parametrize("d", range(1, 9))
def test_complete_bipartite_polynomial(d):
    p = independence_polynomial(complete_bipartite(d, d))
    assert p == binomial_power(d) * 2 - 1
    assert sum(p.coeffs) == 2 ** (d + 1) - 1


def test_small_examples():
    assert naive_counts(cycle(5)) == IntPolynomial([1, 5, 5])
    assert independence_polynomial(cycle(5)) == IntPolynomial([1, 5, 5])
    assert count_independent_sets(cycle(5)) == 11
    assert sum(naive_counts(cycle(6)).coeffs) == 18
    assert count_independent_sets(cycle(6)) == 18
    assert independence_polynomial(complete_graph(3)) == IntPolynomial([1, 3])
    assert independence_polynomial(Graph.empty(5)) == binomial_power(5)
    assert independence_polynomial(Graph.empty(0)) == IntPolynomial([1])


def test_brute_force_examples():
    k2 = complete_bipartite(1, 1)
    assert brute_force_polynomial(k2) == IntPolynomial([1, 2])
    assert brute_force_polynomial(disjoint_union([k2, k2])) == IntPolynomial([1, 2]) ** 2
    for g in all_labelled_graphs(5):
        assert brute_force_polynomial(g) == naive_counts(g)


def test_brute_force_size_guard(monkeypatch):
    with pytest.raises(SizeError):
        brute_force_polynomial(Graph.empty(27))
    monkeypatch.setenv("HARDCORE_MAX_N", "4")
    with pytest.raises(SizeError):
        brute_force_polynomial(Graph.empty(5))


def test_brute_force_uses_high_block():
    # n > 16 exercises the split between the vectorised low block and the loop
    rng = random.Random(11)
    for n in (17, 19, 22):
        g = random_graph(n, 0.35, rng)
        assert brute_force_polynomial(g) == independence_polynomial(g)


def test_oracle_equivalence_random_7_to_12():
    rng = random.Random(5)
    for _ in range(10_000):
        g = random_graph(rng.randint(7, 12), rng.random(), rng)
        assert independence_polynomial(g) == brute_force_polynomial(g)


@given(graphs(max_n=9), graphs(max_n=9))
def test_multiplicative_over_union(g, h):
    assert independence_polynomial(disjoint_union([g, h])) == (
        independence_polynomial(g) * independence_polynomial(h)
    )


def delete(g, removed):
    keep = g.vertex_mask & ~removed
    return Graph(g.n, tuple(a & keep if not removed >> v & 1 else 0 for v, a in enumerate(g.adj)))


@settings(max_examples=50)
@given(graphs(max_n=10))
def test_deletion_recurrence_at_every_vertex(g):
    p = independence_polynomial(g)
    x = IntPolynomial.x()
    for v in range(g.n):
        # removed vertices stay as isolated points; divide their (1+x) factors out
        # by comparing against the same graph with them kept isolated
        g_minus = delete(g, 1 << v)
        g_closed = delete(g, g.adj[v] | 1 << v)
        iso_minus = binomial_power(1)
        iso_closed = binomial_power((g.adj[v] | 1 << v).bit_count())
        lhs = p * iso_minus * iso_closed
        rhs = independence_polynomial(g_minus) * iso_closed + x * independence_polynomial(g_closed) * iso_minus
        assert lhs == rhs


@given(graphs(max_n=12))
def test_coefficients_nonnegative_and_leading_terms(g):
    p = independence_polynomial(g)
    assert all(c >= 0 for c in p.coeffs)
    assert p.coeff(0) == 1
    assert p.coeff(1) == g.n
    if g.n >= 1:
        assert sum(p.coeffs) >= g.n + 1


def test_degree_is_independence_number():
    assert independence_polynomial(cycle(5)).degree == 2
    assert independence_polynomial(cycle(6)).degree == 3


def test_profile_examples():
    prof = bipartite_profile(complete_bipartite(2, 2)).bivar
    assert prof.coeffs == {(0, 0): 1, (1, 0): 2, (0, 1): 2, (2, 0): 1, (0, 2): 1}
    assert prof == brute_force_profile(complete_bipartite(2, 2), canonical_bipartition(complete_bipartite(2, 2), 15))
    c6 = bipartite_profile(cycle(6)).bivar
    assert c6.coeff(3, 0) == 1 and c6.coeff(0, 3) == 1


def test_profile_balanced_coefficient_of_unions():
    c6 = double_cover(complete_graph(3))
    two = disjoint_union([c6, c6])
    three = disjoint_union([complete_bipartite(2, 2)] * 3)
    assert bipartite_profile(two).bivar.coeff(3, 3) == 2
    assert bipartite_profile(three).bivar.coeff(3, 3) == 0
    assert brute_force_profile(two, canonical_bipartition(two, two.vertex_mask)).coeff(3, 3) == 2


def test_profile_rejects_invalid_bipartition():
    g = cycle(4)
    with pytest.raises(ValueError):
        bipartite_profile(g, Bipartition(0b0011, 0b1100, 0b1111))
    with pytest.raises(ValueError):
        bipartite_profile(g, Bipartition(0b0101, 0b0010, 0b0111))
    with pytest.raises(ValueError):
        bipartite_profile(complete_graph(3))


@settings(max_examples=60)
@given(graphs(max_n=10))
def test_profile_diagonal_and_oracle(g):
    dc = double_cover(g)
    bp = canonical_bipartition(dc, dc.vertex_mask)
    prof = bipartite_profile(dc, bp).bivar
    assert prof.diagonal() == independence_polynomial(dc)
    if dc.n <= 12:
        assert prof == brute_force_profile(dc, bp)


def test_profile_orientation_swaps_variables():
    g = disjoint_union([complete_bipartite(1, 2), complete_bipartite(1, 1)])
    bp = canonical_bipartition(g, g.vertex_mask)
    assert bipartite_profile(g, bp.swapped()).bivar == bipartite_profile(g, bp).bivar.swap()
    assert bipartite_profile(g).bivar.evaluate(Fraction(1, 2), 3) == brute_force_profile(g, bp).evaluate(Fraction(1, 2), 3)
