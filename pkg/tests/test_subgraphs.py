from itertools import combinations

import pytest
from hypothesis import given

from structctrl.catalog import repeated_rows_pair
from structctrl.model import SCGraph, SizeLimitExceeded, build_pair, graph_of_pair
from structctrl.subgraphs import (
    EnumerationLimits,
    MultiColoredSubgraph,
    Parity,
    all_matrimonial_partitions,
    canonical_matrimonial_partition,
    class_of,
    count_classes,
    enumerate_mcs,
    first_mcs,
    has_unbalanced_class,
    is_multicolored_arc_set,
    parity,
    parity_via_permutation_sign,
    quotient_cycle_count,
    similarity_classes,
)

from .conftest import binary_pairs

E1_FIRST = ((3, 4, 4), (4, 3, 3), (5, 2, 2), (6, 1, 1))
E1_SECOND = ((3, 3, 3), (4, 1, 1), (5, 4, 4), (6, 2, 2))
E2_MEMBER = ((1, 2, 5), (3, 3, 3), (4, 1, 1), (5, 4, 4))


def sub(arcs, n=4, m=2):
    return MultiColoredSubgraph(n, m, tuple(sorted(arcs)))


def test_fig2_enumeration(eq4_graph):
    subs = enumerate_mcs(eq4_graph)
    assert len(subs) == 6
    classes = similarity_classes(subs)
    assert sorted((len(c.members) for c in classes), reverse=True) == [2, 1, 1, 1, 1]
    by_key = {c.key: c for c in classes}
    e1 = by_key[((1, 2), (1, 2, 3, 4))]
    assert {s.arcs for s in e1.members} == {E1_FIRST, E1_SECOND}
    assert e1.balanced
    e2 = by_key[((2, 6), (1, 3, 4, 5))]
    assert [s.arcs for s in e2.members] == [E2_MEMBER]
    assert not e2.balanced


def test_enumeration_trivial_cases():
    scg = graph_of_pair(build_pair(1, 1, [([1], [0, 1])]))
    assert [s.arcs for s in enumerate_mcs(scg)] == [((2, 1, 1),)]
    few_colors = graph_of_pair(build_pair(3, 1, [([1, 1, 1], [1, 1, 1, 1]), ([1, 0, 0], [0, 0, 0, 1])]))
    assert enumerate_mcs(few_colors) == []
    assert similarity_classes([]) == []


@given(binary_pairs(max_n=3, max_m=2, max_q=5))
def test_enumeration_matches_naive_filter(pair):
    scg = graph_of_pair(pair)
    naive = sorted(c for c in combinations(scg.arcs, pair.n) if is_multicolored_arc_set(c, pair.n))
    assert [s.arcs for s in enumerate_mcs(scg)] == naive


@given(binary_pairs(max_n=4, max_m=2, max_q=7))
def test_structure_of_subgraphs(pair):
    for s in enumerate_mcs(graph_of_pair(pair)):
        assert s.source_set == frozenset(range(pair.n + 1, pair.n + pair.m + 1))
        covered = [v for p in s.paths() for v in p] + [v for c in s.cycles() for v in c]
        assert sorted(covered) == list(range(1, pair.n + pair.m + 1))


@given(binary_pairs(max_n=4, max_m=2, max_q=8))
def test_counts_match_enumeration(pair):
    scg = graph_of_pair(pair)
    listed = [(c.key, c.even_count, c.odd_count) for c in similarity_classes(enumerate_mcs(scg))]
    assert [(c.key, c.even_count, c.odd_count) for c in count_classes(scg)] == listed


def test_class_of_and_first(eq4_graph):
    cls = class_of(eq4_graph, ((1, 2), (1, 2, 3, 4)))
    assert len(cls.members) == 2
    with pytest.raises(ValueError):
        class_of(eq4_graph, ((3, 4), (1, 2, 3, 4)))
    assert first_mcs(eq4_graph).arcs == E2_MEMBER
    assert first_mcs(SCGraph(2, 1, ())) is None


def test_canonical_partitions(eq4_graph):
    p = canonical_matrimonial_partition(eq4_graph, (1, 2))
    assert set(p.cells) == {frozenset({1, 5}), frozenset({2, 6}), frozenset({3}), frozenset({4})}
    p = canonical_matrimonial_partition(eq4_graph, (2, 6))
    assert set(p.cells) == {frozenset({2, 5}), frozenset({1}), frozenset({3}), frozenset({4}), frozenset({6})}
    p = canonical_matrimonial_partition(SCGraph(2, 1), (3,))
    assert all(len(c) == 1 for c in p.cells)
    assert len(list(all_matrimonial_partitions(eq4_graph, (1, 2)))) == 2
    with pytest.raises(ValueError):
        canonical_matrimonial_partition(eq4_graph, (1, 2, 3))


def test_parity_examples(eq4_graph):
    part = canonical_matrimonial_partition(eq4_graph, (1, 2))
    a, b = sub(E1_FIRST), sub(E1_SECOND)
    assert quotient_cycle_count(a, part) == 2 and parity(a, part) is Parity.EVEN
    assert quotient_cycle_count(b, part) == 3 and parity(b, part) is Parity.ODD
    assert parity_via_permutation_sign(a) is Parity.EVEN
    assert parity_via_permutation_sign(b) is Parity.ODD
    assert parity_via_permutation_sign(sub(E2_MEMBER)) in (Parity.EVEN, Parity.ODD)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_self_loops_parity(n):
    s = MultiColoredSubgraph(n, 1, tuple((i, i, i) for i in range(1, n + 1)))
    part = canonical_matrimonial_partition(SCGraph(n, 1), s.sink_set)
    assert quotient_cycle_count(s, part) == n
    assert parity(s, part) is Parity.of(n)
    assert parity_via_permutation_sign(s) is Parity.of(n)


def test_parity_rejects_foreign_partition(eq4_graph):
    part = canonical_matrimonial_partition(eq4_graph, (2, 6))
    with pytest.raises(ValueError):
        parity(sub(E1_FIRST), part)


@given(binary_pairs(max_n=4, max_m=2, max_q=7))
def test_parity_routes_agree(pair):
    for cls in similarity_classes(enumerate_mcs(graph_of_pair(pair))):
        assert list(cls.parities) == [parity_via_permutation_sign(s) for s in cls.members]


def test_has_unbalanced_class(eq4_graph):
    w = has_unbalanced_class(eq4_graph)
    assert w.key == ((2, 6), (1, 3, 4, 5))
    assert has_unbalanced_class(graph_of_pair(repeated_rows_pair())) is None
    assert has_unbalanced_class(SCGraph(2, 1, ((1, 1, 1), (1, 2, 1)))) is None


def test_limits():
    scg = graph_of_pair(build_pair(3, 1, [([1, 1, 1], [1, 1, 1, 1])]))
    with pytest.raises(SizeLimitExceeded):
        enumerate_mcs(scg, EnumerationLimits(max_n=2))
    dense = graph_of_pair(build_pair(3, 1, [(k, [1 if i == k % 3 else 0 for i in range(3)], [1, 1, 1, 1]) for k in range(3)]))
    assert len(enumerate_mcs(dense)) > 1
    with pytest.raises(SizeLimitExceeded):
        enumerate_mcs(dense, EnumerationLimits(max_subgraphs=1))
