"""Exact linear algebra over the rationals.

Everything here works on plain nested sequences of ``int`` / ``Fraction``.
No floating point is ever introduced.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence


def _integer_rows(matrix: Iterable[Sequence]) -> list[list[int]]:
    # Scaling a row by a nonzero constant keeps the rank.
    rows = []
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return rows


def rational_rank(matrix: Iterable[Sequence]) -> int:
    """Rank over Q via fraction-free (Bareiss) elimination."""
    rows = [r for r in _integer_rows(matrix) if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv_row = rows[rank]
        p = piv_row[col]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            f = row[col]
            rows[r] = [(p * row[c] - f * piv_row[c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def is_independent(vectors: Sequence[Sequence]) -> bool:
    return rational_rank(vectors) == len(vectors)


class EchelonBasis:
    """Row-reduced basis supporting cheap incremental independence tests.

    Instances are immutable; :meth:`extend` returns a new basis.
    """

    __slots__ = ("rows", "pivots")

    def __init__(self, rows: tuple = (), pivots: tuple = ()):
        self.rows = rows
        self.pivots = pivots

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            f = v[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def extend(self, vec: Sequence) -> Optional["EchelonBasis"]:
        """Basis with ``vec`` added, or ``None`` if ``vec`` is in the span."""
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return None
        f = v[piv]
        v = [x / f for x in v]
        # keep existing rows reduced in the new pivot column
        rows = []
        for row in self.rows:
            g = row[piv]
            rows.append(tuple(a - g * b for a, b in zip(row, v)) if g else row)
        return EchelonBasis(tuple(rows) + (tuple(v),), self.pivots + (piv,))


def subset_ranks(vectors: Sequence[Sequence]) -> list[int]:
    """Rank of every subset of ``vectors``, indexed by bitmask.

    Built by dynamic programming over the highest set bit, carrying an
    echelon basis for each subset. Memory is O(2^k) bases.
    """
    k = len(vectors)
    ranks = [0] * (1 << k)
    bases: list[EchelonBasis] = [EchelonBasis()] * (1 << k)
    for mask in range(1, 1 << k):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        ext = bases[rest].extend(vectors[top])
        if ext is None:
            bases[mask] = bases[rest]
            ranks[mask] = ranks[rest]
        else:
            bases[mask] = ext
            ranks[mask] = ranks[rest] + 1
    return ranks


def solve_combination(vectors: Sequence[Sequence], target: Sequence) -> Optional[list[Fraction]]:
    """Coefficients c with sum(c_i * vectors[i]) == target, or None."""
    k = len(vectors)
    dim = len(target)
    # augmented system: columns are the vectors, rhs is target
    aug = [[Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(dim)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, dim) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] for i in range(r, dim)):
        return None
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        coeffs[c] = aug[i][k]
    return coeffs
