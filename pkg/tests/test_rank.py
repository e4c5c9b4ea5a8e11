import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from structctrl.checks import check_coates, check_product_bound
from structctrl.linalg import matmul, rational_rank, transpose
from structctrl.model import build_pair
from structctrl.oracle import instantiate, random_parameters
from structctrl.rank import (
    DetTerm,
    MultilinearPoly,
    coates_sign,
    det_from_terms,
    expand_det_terms,
    generic_rank_full,
    generic_rank_matroid,
    generic_rank_minform,
    joint_independence_bound,
    max_jointly_independent,
    spanning_cycle_count,
    symbolic_det,
    symbolic_det_square,
)

from .conftest import binary_pairs


def test_generic_rank_examples(eq4, repeated):
    assert generic_rank_matroid(eq4) == generic_rank_minform(eq4) == generic_rank_full(eq4) == 4
    assert generic_rank_matroid(repeated) == generic_rank_minform(repeated) == generic_rank_full(repeated) == 2
    single = build_pair(2, 1, [([1, 0], [0, 1, 1])])
    assert generic_rank_matroid(single) == generic_rank_minform(single) == 1
    assert generic_rank_minform([]) == 0
    shared_g = build_pair(3, 1, [([1, 1, 0], [1, 0, 0, 0]), ([1, 1, 0], [0, 1, 0, 0]), ([1, 1, 0], [0, 0, 0, 1])])
    assert generic_rank_full(shared_g) == 1


def test_jointly_independent_set(eq4):
    idx = max_jointly_independent(eq4.gs, eq4.hs)
    assert len(idx) == 4
    assert rational_rank([eq4.gs[k] for k in idx]) == 4
    assert rational_rank([eq4.hs[k] for k in idx]) == 4


@given(binary_pairs(max_n=4, max_m=2, max_q=8), st.integers(0, 1000))
def test_rank_routes_agree_with_numeric_rank(pair, seed):
    rng = random.Random(seed)
    numeric = 0
    for _ in range(3):
        inst = instantiate(pair, random_parameters(pair.q, rng))
        numeric = max(numeric, rational_rank([list(a) + list(b) for a, b in zip(inst.A, inst.B)]))
    assert generic_rank_matroid(pair) == generic_rank_minform(pair) == numeric


def test_joint_independence_bound_examples():
    G = transpose([[1, 0], [1, 0], [0, 1]])
    H = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert joint_independence_bound(G, H) == 2
    eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert joint_independence_bound(eye, eye) == 4
    with pytest.raises(ValueError):
        joint_independence_bound([[1, 0]], [[1, 0, 0]])


@given(st.integers(0, 10**6))
def test_product_bound_random(seed):
    rng = random.Random(seed)
    G = [[rng.randint(0, 1) for _ in range(6)] for _ in range(4)]
    H = [[rng.randint(0, 1) for _ in range(4)] for _ in range(6)]
    assert check_product_bound(G, H) == []
    assert rational_rank(matmul(G, H)) <= joint_independence_bound(G, H)


def test_symbolic_det_eq4(eq4):
    d26 = symbolic_det(eq4, {2, 6})
    assert d26.monomials() == [((1, 3, 4, 5), 1)]
    assert str(d26) == "p1*p3*p4*p5"
    assert symbolic_det(eq4, {1, 2}).coefficient({1, 2, 3, 4}) == 0
    assert symbolic_det(eq4, {5, 6}).is_zero
    with pytest.raises(ValueError):
        symbolic_det(eq4, {1})


def test_poly_formatting():
    p = MultilinearPoly({frozenset({1, 2}): -2, frozenset({3}): 1})
    assert str(p) == "-2*p1*p2 + p3"
    assert str(MultilinearPoly()) == "0"


def brute_det(entries):
    """Leibniz expansion with explicit monomial bookkeeping."""
    n = len(entries)
    out = {}
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        sign = -1 if inv % 2 else 1
        partial = {(): sign}
        for i in range(n):
            nxt = {}
            for mono, c in partial.items():
                for k, a in entries[i][perm[i]].items():
                    if k in mono:
                        key = None
                    else:
                        key = tuple(sorted(mono + (k,)))
                    if key is not None:
                        nxt[key] = nxt.get(key, 0) + c * a
            partial = nxt
        for mono, c in partial.items():
            out[frozenset(mono)] = out.get(frozenset(mono), 0) + c
    return {k: v for k, v in out.items() if v}


@st.composite
def square_binary_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    q = draw(st.integers(1, n + 3))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    terms = []
    for _ in range(q):
        g = [1 if rng.random() < 0.4 else 0 for _ in range(n)]
        h = [1 if rng.random() < 0.4 else 0 for _ in range(n)]
        terms.append((g, h))
    return [[{k + 1: 1 for k, (g, h) in enumerate(terms) if g[i] and h[j]} for j in range(n)] for i in range(n)]


@given(square_binary_matrices())
def test_symbolic_det_matches_leibniz(entries):
    assert dict(symbolic_det_square(entries).coeffs) == brute_det(entries)


@given(square_binary_matrices())
def test_coates_rule(entries):
    assert check_coates(entries) == []


def test_coates_sign_examples():
    assert spanning_cycle_count([(0, 0), (1, 1)]) == 2
    assert spanning_cycle_count([(0, 1), (1, 0)]) == 1
    t = DetTerm((1, 0), (1, 2), 1)
    assert t.sign == -1 == coates_sign(t)
    terms = expand_det_terms([[{1: 1}, {2: 1}], [{3: 1}, {4: 1}]])
    assert det_from_terms(terms).monomials() == [((1, 4), 1), ((2, 3), -1)]
