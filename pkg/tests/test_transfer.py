from hypothesis import given

from structctrl.model import SCGraph, build_pair, graph_of_pair
from structctrl.reach import irreducible_bruteforce
from structctrl.transfer import (
    build_transfer_graph,
    check_line_quotient_isomorphism,
    color_quotient,
    corfmat_test,
    line_graph,
    transfer_spanning_tree,
    transfer_tree_rooted_at_zero,
)

from .conftest import binary_pairs


def test_eq4_transfer_graph(eq4):
    tg = build_transfer_graph(eq4)
    assert {b for a, b in tg.arcs if a == 0} == {1, 2, 4}
    assert (1, 5) in tg.arcs
    assert transfer_tree_rooted_at_zero(tg)
    assert transfer_spanning_tree(tg) == {1: 0, 2: 0, 3: 4, 4: 0, 5: 1}
    assert corfmat_test(eq4)


def test_single_term_transfer():
    with_loop = build_pair(1, 1, [([1], [1, 1])])
    assert build_transfer_graph(with_loop).arcs == {(0, 1), (1, 1)}
    no_loop = build_pair(2, 1, [([0, 1], [1, 0, 1])])
    assert build_transfer_graph(no_loop).arcs == {(0, 1)}
    assert transfer_tree_rooted_at_zero(build_transfer_graph(no_loop))


def test_zero_input_block():
    pair = build_pair(2, 1, [([1, 1], [1, 1, 0])])
    tg = build_transfer_graph(pair)
    assert not any(0 in a for a in tg.arcs)
    assert not transfer_tree_rooted_at_zero(tg)


def test_corfmat_examples(repeated):
    assert not corfmat_test(repeated)
    assert corfmat_test(build_pair(1, 1, [([1], [1, 0]), ([1], [0, 1])]))


def test_line_graph_examples(eq4):
    chain = line_graph(SCGraph(2, 1, ((3, 1, 1), (1, 2, 2))))
    assert len(chain.vertices) == 2
    assert chain.arcs == {((3, 1, 1), (1, 2, 2))}
    lg = line_graph(graph_of_pair(eq4))
    assert ((4, 1, 1), (1, 2, 5)) in lg.arcs
    flat = line_graph(SCGraph(2, 1, ((3, 1, 1), (3, 2, 2))))
    assert not flat.arcs
    assert color_quotient(chain) == {(1, 2)}


def test_line_quotient_examples(eq4):
    assert check_line_quotient_isomorphism(eq4)
    assert check_line_quotient_isomorphism(build_pair(2, 1, [([1, 0], [0, 0, 1])]))


@given(binary_pairs(max_n=5, max_m=2, max_q=9))
def test_transfer_properties(pair):
    assert check_line_quotient_isomorphism(pair)
    if irreducible_bruteforce(pair):
        assert transfer_tree_rooted_at_zero(build_transfer_graph(pair))
