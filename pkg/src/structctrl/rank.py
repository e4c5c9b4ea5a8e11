"""Generic rank of linearly parameterized matrices and symbolic determinants.

For ``M(p) = sum_k g_k p_k h_k`` the generic rank equals the size of a
largest index set whose g-vectors and h-vectors are both linearly
independent, i.e. a maximum common independent set of two linear
matroids on the term indices.  That set is found by matroid
intersection; an exponential min-formula is kept as an oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import rational_rank, subset_ranks, transpose
from .model import ParamPair, SizeLimitExceeded
from .subgraphs import permutation_sign

TermVectors = tuple[list[Sequence], list[Sequence]]


def _split_terms(source) -> TermVectors:
    if isinstance(source, ParamPair):
        return source.gs, source.hs
    terms = list(source)
    return [t[0] for t in terms], [t[1] for t in terms]


def _independent(vectors: Sequence[Sequence], idx: Iterable[int]) -> bool:
    idx = list(idx)
    return rational_rank([vectors[i] for i in idx]) == len(idx)


def max_jointly_independent(gs: Sequence[Sequence], hs: Sequence[Sequence]) -> list[int]:
    """Largest index set I with {g_i} and {h_i}, i in I, both independent.

    Exchange-graph augmentation: from the current common independent set
    I, arcs y -> x exist when I - y + x is independent in the g-matroid
    and x -> y when I - y + x is independent in the h-matroid; a shortest
    path from a g-free element to an h-free element augments I by one.
    """
    k = len(gs)
    if len(hs) != k:
        raise ValueError("need the same number of g and h vectors")
    current: list[int] = []
    while True:
        inside = set(current)
        outside = [x for x in range(k) if x not in inside]
        src = {x for x in outside if _independent(gs, current + [x])}
        dst = {x for x in outside if _independent(hs, current + [x])}
        if not src or not dst:
            return sorted(current)
        direct = sorted(src & dst)
        if direct:
            current.append(direct[0])
            continue
        succ: dict[int, list[int]] = {v: [] for v in range(k)}
        for y in current:
            without = [v for v in current if v != y]
            for x in outside:
                if _independent(gs, without + [x]):
                    succ[y].append(x)
                if _independent(hs, without + [x]):
                    succ[x].append(y)
        parent: dict[int, Optional[int]] = {x: None for x in sorted(src)}
        queue = deque(sorted(src))
        end = None
        while queue:
            v = queue.popleft()
            if v in dst:
                end = v
                break
            for w in succ[v]:
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
        if end is None:
            return sorted(current)
        path = []
        v: Optional[int] = end
        while v is not None:
            path.append(v)
            v = parent[v]
        current = sorted(inside.symmetric_difference(path))


def generic_rank_matroid(source) -> int:
    """Generic rank of ``sum_k g_k p_k h_k`` by matroid intersection.

    ``source`` is a :class:`ParamPair` or an iterable of ``(g, h)`` pairs.
    """
    gs, hs = _split_terms(source)
    return len(max_jointly_independent(gs, hs))


def generic_rank_minform(source, *, max_q: int = 20) -> int:
    """min over S of rank G_S + rank H_(complement of S), by exhaustion."""
    gs, hs = _split_terms(source)
    q = len(gs)
    if q > max_q:
        raise SizeLimitExceeded(f"q={q} exceeds the subset-enumeration limit {max_q}")
    rg = subset_ranks(gs)
    rh = subset_ranks(hs)
    full = (1 << q) - 1
    return min(rg[s] + rh[full ^ s] for s in range(1 << q))


def joint_independence_bound(G: Sequence[Sequence], H: Sequence[Sequence]) -> int:
    """Largest jointly independent index set of (columns of G, rows of H).

    This bounds rank(G H) from above and never exceeds min(rank G, rank H).
    """
    k = len(G[0]) if G else 0
    if len(H) != k:
        raise ValueError(f"G has {k} columns but H has {len(H)} rows")
    return len(max_jointly_independent(transpose(G) if k else [], list(H)))


# -- symbolic determinants -----------------------------------------------------

Entry = Mapping[int, Union[int, Fraction]]


@dataclass(frozen=True)
class MultilinearPoly:
    """Sum of a_C * prod_{k in C} p_k with integer (or rational) a_C."""

    coeffs: Mapping[frozenset, Union[int, Fraction]] = field(default_factory=dict)

    def coefficient(self, colors: Iterable[int]) -> Union[int, Fraction]:
        return self.coeffs.get(frozenset(colors), 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def monomials(self) -> list[tuple[tuple[int, ...], Union[int, Fraction]]]:
        return sorted((tuple(sorted(c)), a) for c, a in self.coeffs.items())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for mono, a in self.monomials():
            name = "*".join(f"p{k}" for k in mono) or "1"
            body = name if abs(a) == 1 else f"{abs(a)}*{name}"
            parts.append(("+ " if a > 0 else "- ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+") else "-" + text[2:]


def symbolic_det_square(entries: Sequence[Sequence[Entry]]) -> MultilinearPoly:
    """Determinant of a square matrix of linear forms in distinct parameters.

    Laplace expansion along rows, memoized on the set of columns left,
    dropping any product that repeats a parameter.  That pruning is sound
    because the determinant of a linearly parameterized matrix is
    multilinear, so repeated-parameter products cancel in total.
    """
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise ValueError("matrix must be square")

    @lru_cache(maxsize=None)
    def expand(row: int, cols: tuple[int, ...]) -> tuple:
        if row == n:
            return ((frozenset(), 1),)
        acc: dict[frozenset, object] = {}
        for pos, c in enumerate(cols):
            entry = entries[row][c]
            if not entry:
                continue
            sign = -1 if pos % 2 else 1
            for mono, a in expand(row + 1, cols[:pos] + cols[pos + 1:]):
                for k, b in entry.items():
                    if k in mono:
                        continue
                    key = mono | {k}
                    acc[key] = acc.get(key, 0) + sign * a * b
        return tuple((k, v) for k, v in acc.items() if v)

    return MultilinearPoly(dict(expand(0, tuple(range(n)))))


def _pair_submatrix(pair: ParamPair, deleted_columns: Iterable[int], max_n: int) -> list[list[dict]]:
    deleted = set(deleted_columns)
    if pair.n > max_n:
        raise SizeLimitExceeded(f"n={pair.n} exceeds the determinant-expansion limit {max_n}")
    if len(deleted) != pair.m or not deleted <= set(range(1, pair.n + pair.m + 1)):
        raise ValueError(f"need exactly m={pair.m} distinct column indices in 1..{pair.n + pair.m}")
    keep = [j for j in range(pair.n + pair.m) if j + 1 not in deleted]
    full = pair.entry_colors()
    return [[full[i][j] for j in keep] for i in range(pair.n)]


def symbolic_det(pair: ParamPair, deleted_columns: Iterable[int], *, max_n: int = 8) -> MultilinearPoly:
    """Determinant of the n x n submatrix of [A B] left after deleting m columns (1-based)."""
    return symbolic_det_square(_pair_submatrix(pair, deleted_columns, max_n))


@dataclass(frozen=True)
class DetTerm:
    """One valid expansion term: row i takes parameter colors[i] from column perm[i]."""

    perm: tuple[int, ...]
    colors: tuple[int, ...]
    coefficient: Union[int, Fraction]

    @property
    def sign(self) -> int:
        return permutation_sign(self.perm)


def expand_det_terms(entries: Sequence[Sequence[Entry]]) -> list[DetTerm]:
    """Every valid term (n distinct parameters) before cancellation."""
    n = len(entries)
    out: list[DetTerm] = []
    perm: list[int] = []
    colors: list[int] = []

    def rec(row: int, coef) -> None:
        if row == n:
            out.append(DetTerm(tuple(perm), tuple(colors), coef))
            return
        for c in range(n):
            if c in perm:
                continue
            for k, b in sorted(entries[row][c].items()):
                if k in colors:
                    continue
                perm.append(c)
                colors.append(k)
                rec(row + 1, coef * b)
                perm.pop()
                colors.pop()

    rec(0, 1)
    return out


def det_from_terms(terms: Iterable[DetTerm]) -> MultilinearPoly:
    acc: dict[frozenset, object] = {}
    for t in terms:
        key = frozenset(t.colors)
        acc[key] = acc.get(key, 0) + t.sign * t.coefficient
    return MultilinearPoly({k: v for k, v in acc.items() if v})


def spanning_cycle_count(arcs: Iterable[tuple[int, int]]) -> int:
    """Cycle graphs in a spanning subgraph where every vertex has in- and out-degree one."""
    nxt = dict(arcs)
    seen: set[int] = set()
    count = 0
    for v in nxt:
        if v in seen:
            continue
        count += 1
        while v not in seen:
            seen.add(v)
            v = nxt[v]
    return count


def coates_sign(term: DetTerm) -> int:
    """Sign predicted from the graph: (-1)^(n - c), c = cycles of the term's subgraph.

    The parameter in row i, column perm[i] is an arc perm[i] -> i.
    """
    n = len(term.perm)
    c = spanning_cycle_count((col, row) for row, col in enumerate(term.perm))
    return -1 if (n - c) % 2 else 1


def generic_rank_full(pair: ParamPair) -> int:
    """Generic rank of [A B]."""
    return generic_rank_matroid(pair)
