"""Exact independence polynomials, the pair involution behind the
double-cover reduction, homomorphism partition functions, and exact
checks of the regular-graph hard-core bounds."""

from .bijection import FamilyKind, VertexPair, enumerate_family, involution, is_independent_from, verify_lemma
from .bounds import (
    BoundId,
    BoundReport,
    Verdict,
    check_biweighted_eq4,
    check_biweighted_termwise,
    check_chain_eq5,
    check_corollary1,
    check_edge_weighted_eq3,
    check_hom_bounds,
    check_termwise_eq6,
    check_theorem1,
    scan,
)
from .exact_arith import BivariatePolynomial, IntPolynomial, coeffwise_leq, compare_powered, eval_rational
from .graph_core import (
    Bipartition,
    Graph,
    canonical_bipartition,
    complete_bipartite,
    cycle,
    disjoint_union,
    double_cover,
    enumerate_regular,
    read_graph6,
    write_graph6,
)
from .homomorphism import (
    TargetGraph,
    WeightClassDistribution,
    distribution_convolve,
    distribution_power,
    hom_distribution,
    injection_domination,
    partition_function,
)
from .indset import bipartite_profile, brute_force_polynomial, independence_polynomial

__version__ = "0.1.0"
