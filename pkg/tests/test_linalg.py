from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from structctrl.linalg import EchelonBasis, is_independent, matmul, rational_rank, solve_combination, subset_ranks, transpose


def naive_rank(rows):
    """Plain Fraction Gauss-Jordan, used as an independent reference."""
    M = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


entries = st.one_of(st.integers(-3, 3), st.fractions(min_value=-2, max_value=2, max_denominator=5))
matrices = st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=5))


def test_rank_examples():
    assert rational_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rational_rank([[1, 1], [1, 1]]) == 1
    # columns e1, e2, e3, e4, e2
    G = transpose([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]])
    assert rational_rank(G) == 4
    assert rational_rank([]) == 0
    assert rational_rank([[0, 0], [0, 0]]) == 0


@given(matrices)
def test_rank_matches_reference(M):
    assert rational_rank(M) == naive_rank(M)
    assert rational_rank(transpose(M)) == rational_rank(M)


def test_fractional_entries():
    assert rational_rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
    assert rational_rank([[Fraction(1, 2), Fraction(1, 3)], [3, 1]]) == 2


def test_matmul_and_independence():
    assert matmul([[1, 2]], [[3], [4]]) == [[11]]
    assert is_independent([[1, 0], [0, 1]])
    assert not is_independent([[1, 1], [2, 2]])


def test_echelon_basis():
    b = EchelonBasis()
    b1 = b.extend([1, 1, 0])
    assert b1 is not None
    assert b1.extend([2, 2, 0]) is None
    b2 = b1.extend([0, 1, 1])
    assert b2.contains([1, 2, 1])
    assert not b2.contains([0, 0, 1])


@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=0, max_size=5))
def test_subset_ranks(vectors):
    ranks = subset_ranks(vectors)
    assert len(ranks) == 2 ** len(vectors)
    for mask, r in enumerate(ranks):
        chosen = [v for i, v in enumerate(vectors) if mask >> i & 1]
        assert r == naive_rank(chosen) if chosen else r == 0


def test_solve_combination():
    coeffs = solve_combination([[1, 0, 0], [0, 1, 0]], [1, 1, 0])
    assert coeffs == [1, 1]
    assert solve_combination([[1, 0, 0]], [0, 1, 0]) is None
