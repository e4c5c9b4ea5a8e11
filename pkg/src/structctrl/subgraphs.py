"""Multi-colored subgraphs, similarity classes and their parity.

A multi-colored subgraph is a set of n arcs with pairwise distinct
colors, start vertices and end vertices.  Because no arc enters an
input vertex, the end vertices are exactly the states 1..n and the arc
set splits into m paths (one per input) plus cycles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Optional, Sequence

from .model import Arc, SCGraph, SizeLimitExceeded


class Parity(str, enum.Enum):
    ODD = "odd"
    EVEN = "even"

    @classmethod
    def of(cls, count: int) -> "Parity":
        return cls.ODD if count % 2 else cls.EVEN


@dataclass(frozen=True)
class EnumerationLimits:
    max_n: int = 8
    max_q: int = 14
    max_subgraphs: int = 10**6


DEFAULT_LIMITS = EnumerationLimits()


@dataclass(frozen=True)
class MultiColoredSubgraph:
    n: int
    m: int
    arcs: tuple[Arc, ...]

    @property
    def starts(self) -> frozenset[int]:
        return frozenset(j for j, _, _ in self.arcs)

    @property
    def sink_set(self) -> frozenset[int]:
        return frozenset(range(1, self.n + self.m + 1)) - self.starts

    @property
    def source_set(self) -> frozenset[int]:
        ends = {i for _, i, _ in self.arcs}
        return frozenset(range(1, self.n + self.m + 1)) - ends

    @property
    def color_set(self) -> frozenset[int]:
        return frozenset(k for _, _, k in self.arcs)

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.sink_set)), tuple(sorted(self.color_set))

    def paths(self) -> list[list[int]]:
        """Vertex sequences of the m path graphs, one per input vertex."""
        nxt = {j: i for j, i, _ in self.arcs}
        out = []
        for s in range(self.n + 1, self.n + self.m + 1):
            seq = [s]
            while seq[-1] in nxt:
                seq.append(nxt[seq[-1]])
            out.append(seq)
        return out

    def cycles(self) -> list[list[int]]:
        """Vertex sequences of the cycle graphs, each starting at its smallest vertex."""
        nxt = {j: i for j, i, _ in self.arcs}
        on_path = {v for p in self.paths() for v in p}
        seen: set[int] = set()
        out = []
        for v in sorted(nxt):
            if v in on_path or v in seen:
                continue
            cyc = [v]
            seen.add(v)
            w = nxt[v]
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = nxt[w]
            out.append(cyc)
        return out


def is_multicolored_arc_set(arcs: Sequence[Arc], n: int) -> bool:
    return (
        len(arcs) == n
        and len({a[0] for a in arcs}) == n
        and len({a[1] for a in arcs}) == n
        and len({a[2] for a in arcs}) == n
    )


def _check_limits(scg: SCGraph, limits: EnumerationLimits) -> None:
    if scg.n > limits.max_n:
        raise SizeLimitExceeded(f"n={scg.n} exceeds enumeration limit {limits.max_n}")
    if len(scg.colors) > limits.max_q:
        raise SizeLimitExceeded(f"q={len(scg.colors)} exceeds enumeration limit {limits.max_q}")


def _incoming(scg: SCGraph, sink_set=None, color_set=None) -> list[list[Arc]]:
    sinks = set(sink_set or ())
    colors = None if color_set is None else set(color_set)
    return [
        sorted(a for a in scg.arcs if a[1] == i and a[0] not in sinks and (colors is None or a[2] in colors))
        for i in range(1, scg.n + 1)
    ]


def enumerate_mcs(
    scg: SCGraph,
    limits: EnumerationLimits = DEFAULT_LIMITS,
    *,
    sink_set: Optional[Iterable[int]] = None,
    color_set: Optional[Iterable[int]] = None,
) -> list[MultiColoredSubgraph]:
    """All multi-colored subgraphs of ``scg``, sorted by their arc tuples.

    Backtracks over end vertices 1..n, choosing one incoming arc each and
    pruning on repeated colors or start vertices.  ``sink_set`` and
    ``color_set`` restrict the search to a single similarity class.
    """
    _check_limits(scg, limits)
    n = scg.n
    incoming = _incoming(scg, sink_set, color_set)
    if len({k for _, _, k in scg.arcs}) < n or any(not arcs for arcs in incoming):
        return []
    found: list[tuple[Arc, ...]] = []
    chosen: list[Arc] = []
    used_starts: set[int] = set()
    used_colors: set[int] = set()

    def search(idx: int) -> None:
        if idx == n:
            found.append(tuple(sorted(chosen)))
            if len(found) > limits.max_subgraphs:
                raise SizeLimitExceeded(f"more than {limits.max_subgraphs} multi-colored subgraphs")
            return
        for arc in incoming[idx]:
            j, _, k = arc
            if j in used_starts or k in used_colors:
                continue
            used_starts.add(j)
            used_colors.add(k)
            chosen.append(arc)
            search(idx + 1)
            chosen.pop()
            used_starts.discard(j)
            used_colors.discard(k)

    search(0)
    found.sort()
    return [MultiColoredSubgraph(n, scg.m, arcs) for arcs in found]


def first_mcs(scg: SCGraph, limits: EnumerationLimits = DEFAULT_LIMITS) -> Optional[MultiColoredSubgraph]:
    """The first multi-colored subgraph met by the backtracking search, or None."""
    _check_limits(scg, limits)
    n = scg.n
    incoming = _incoming(scg)
    chosen: list[Arc] = []

    def search(idx: int, starts: int, colors: int) -> bool:
        if idx == n:
            return True
        for arc in incoming[idx]:
            j, _, k = arc
            if starts >> j & 1 or colors >> k & 1:
                continue
            chosen.append(arc)
            if search(idx + 1, starts | 1 << j, colors | 1 << k):
                return True
            chosen.pop()
        return False

    return MultiColoredSubgraph(n, scg.m, tuple(sorted(chosen))) if search(0, 0, 0) else None


@dataclass(frozen=True)
class MatrimonialPartition:
    cells: tuple[frozenset[int], ...]

    def cell_index(self) -> dict[int, int]:
        return {v: idx for idx, cell in enumerate(self.cells) for v in cell}

    def pairs(self) -> dict[int, int]:
        """Map each paired input vertex to its partner sink."""
        out = {}
        for cell in self.cells:
            if len(cell) == 2:
                a, b = sorted(cell)
                out[b] = a
        return out


def _unmatched(n: int, m: int, sink_set: Iterable[int]) -> tuple[list[int], list[int]]:
    sinks = set(sink_set)
    sources = set(range(n + 1, n + m + 1))
    return sorted(sources - sinks), sorted(sinks - sources)


def _partition_from_pairing(n: int, m: int, pairing: dict[int, int]) -> MatrimonialPartition:
    cells = [frozenset((s, t)) for s, t in pairing.items()]
    paired = set(pairing) | set(pairing.values())
    cells += [frozenset((v,)) for v in range(1, n + m + 1) if v not in paired]
    return MatrimonialPartition(tuple(sorted(cells, key=min)))


def canonical_matrimonial_partition(scg: SCGraph, sink_set: Iterable[int]) -> MatrimonialPartition:
    """Pair ascending sources-not-sinks with ascending sinks-not-sources."""
    sink_set = sorted(sink_set)
    free_sources, free_sinks = _unmatched(scg.n, scg.m, sink_set)
    if len(free_sources) != len(free_sinks):
        raise ValueError(f"sink set {sink_set} cannot belong to a multi-colored subgraph")
    return _partition_from_pairing(scg.n, scg.m, dict(zip(free_sources, free_sinks)))


def all_matrimonial_partitions(scg: SCGraph, sink_set: Iterable[int]) -> Iterator[MatrimonialPartition]:
    sink_set = sorted(sink_set)
    free_sources, free_sinks = _unmatched(scg.n, scg.m, sink_set)
    if len(free_sources) != len(free_sinks):
        raise ValueError(f"sink set {sink_set} cannot belong to a multi-colored subgraph")
    for perm in permutations(free_sinks):
        yield _partition_from_pairing(scg.n, scg.m, dict(zip(free_sources, perm)))


def _is_matrimonial(sub: MultiColoredSubgraph, partition: MatrimonialPartition) -> bool:
    free_sources, free_sinks = _unmatched(sub.n, sub.m, sub.sink_set)
    covered = sorted(v for cell in partition.cells for v in cell)
    if covered != list(range(1, sub.n + sub.m + 1)):
        return False
    pairs = partition.pairs()
    return sorted(pairs) == free_sources and sorted(pairs.values()) == free_sinks


def quotient_cycle_count(sub: MultiColoredSubgraph, partition: MatrimonialPartition) -> int:
    """Number of cycle graphs in the quotient of ``sub`` by ``partition``."""
    if not _is_matrimonial(sub, partition):
        raise ValueError("partition is not matrimonial for this subgraph")
    cell = partition.cell_index()
    nxt = {cell[j]: cell[i] for j, i, _ in sub.arcs}
    seen: set[int] = set()
    cycles = 0
    for start in nxt:
        if start in seen:
            continue
        v = start
        while v not in seen:
            seen.add(v)
            v = nxt[v]
        if v == start:
            cycles += 1
    return cycles


def parity(sub: MultiColoredSubgraph, partition: MatrimonialPartition) -> Parity:
    return Parity.of(quotient_cycle_count(sub, partition))


def permutation_sign(perm: Sequence[int]) -> int:
    """Signature of a permutation of 0..k-1, by inversion count."""
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def parity_via_permutation_sign(sub: MultiColoredSubgraph, sink_set: Optional[Iterable[int]] = None) -> Parity:
    """Parity from determinant signs instead of cycle counting.

    The arc into state i occupies row i and column j of the n x n
    submatrix M that keeps the non-sink columns L of [A B] in ascending
    order; sigma sends row i to the position of j in L.  Relabeling
    columns with the canonical matrimonial bijection (input -> partner
    sink, state -> itself) multiplies the sign by sgn(f), and the
    subgraph is even exactly when sgn(f) * sgn(sigma) = (-1)^n.
    """
    n, m = sub.n, sub.m
    sinks = set(sub.sink_set if sink_set is None else sink_set)
    L = [v for v in range(1, n + m + 1) if v not in sinks]
    pos = {v: idx for idx, v in enumerate(L)}
    into = {i: j for j, i, _ in sub.arcs}
    sigma = [pos[into[i]] for i in range(1, n + 1)]
    free_sources, free_sinks = _unmatched(n, m, sinks)
    partner = dict(zip(free_sources, free_sinks))
    relabel = [partner.get(v, v) - 1 for v in L]
    s = permutation_sign(relabel) * permutation_sign(sigma)
    return Parity.EVEN if s == (-1) ** n else Parity.ODD


@dataclass(frozen=True)
class SimilarityClass:
    sink_set: tuple[int, ...]
    color_set: tuple[int, ...]
    members: tuple[MultiColoredSubgraph, ...]
    parities: tuple[Parity, ...]
    partition: MatrimonialPartition

    @property
    def odd_count(self) -> int:
        return sum(p is Parity.ODD for p in self.parities)

    @property
    def even_count(self) -> int:
        return sum(p is Parity.EVEN for p in self.parities)

    @property
    def balanced(self) -> bool:
        return self.odd_count == self.even_count

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.sink_set, self.color_set


def similarity_classes(subgraphs: Sequence[MultiColoredSubgraph]) -> list[SimilarityClass]:
    """Group subgraphs by (sink set, color set); parities use the canonical partition."""
    groups: dict[tuple, list[MultiColoredSubgraph]] = {}
    for s in subgraphs:
        groups.setdefault(s.key, []).append(s)
    out = []
    for key in sorted(groups):
        members = tuple(groups[key])
        first = members[0]
        part = canonical_matrimonial_partition(SCGraph(first.n, first.m), key[0])
        out.append(SimilarityClass(key[0], key[1], members, tuple(parity(s, part) for s in members), part))
    return out


def unbalanced_classes(scg: SCGraph, limits: EnumerationLimits = DEFAULT_LIMITS) -> list[SimilarityClass]:
    return [c for c in similarity_classes(enumerate_mcs(scg, limits)) if not c.balanced]


def first_unbalanced(subgraphs: Sequence[MultiColoredSubgraph]) -> Optional[SimilarityClass]:
    """The unbalanced class holding the earliest subgraph of ``subgraphs``, or None."""
    bad = {c.key: c for c in similarity_classes(subgraphs) if not c.balanced}
    for s in subgraphs:
        if s.key in bad:
            return bad[s.key]
    return None


def has_unbalanced_class(scg: SCGraph, limits: EnumerationLimits = DEFAULT_LIMITS) -> Optional[SimilarityClass]:
    """Witness for an unbalanced similarity class, first in enumeration order, or None."""
    return first_unbalanced(enumerate_mcs(scg, limits))


@dataclass(frozen=True)
class ClassCount:
    """Member counts of one similarity class, without the members."""

    sink_set: tuple[int, ...]
    color_set: tuple[int, ...]
    even_count: int
    odd_count: int

    @property
    def total(self) -> int:
        return self.even_count + self.odd_count

    @property
    def balanced(self) -> bool:
        return self.even_count == self.odd_count

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.sink_set, self.color_set


def count_classes(scg: SCGraph, limits: EnumerationLimits = DEFAULT_LIMITS) -> list[ClassCount]:
    """Even and odd member counts of every similarity class, sorted by key.

    Dynamic program over end vertices 1..n keyed by (used starts, used
    colors, inversion parity of the start sequence).  The inversion
    parity is the sign of sigma in :func:`parity_via_permutation_sign`,
    so the counts match enumeration plus the canonical partition while
    the work grows with the number of classes rather than members.
    """
    _check_limits(scg, limits)
    n, m = scg.n, scg.m
    incoming = _incoming(scg)
    layer: dict[tuple[int, int, int], int] = {(0, 0, 0): 1}
    for arcs in incoming:
        nxt: dict[tuple[int, int, int], int] = {}
        for (starts, colors, inv), cnt in layer.items():
            for j, _, k in arcs:
                if starts >> j & 1 or colors >> k & 1:
                    continue
                key = (starts | 1 << j, colors | 1 << k, inv ^ (bin(starts >> j).count("1") & 1))
                nxt[key] = nxt.get(key, 0) + cnt
        layer = nxt
    even_sign = (-1) ** n
    tally: dict[tuple, list[int]] = {}
    for (starts, colors, inv), cnt in layer.items():
        sinks = tuple(v for v in range(1, n + m + 1) if not starts >> v & 1)
        cset = tuple(k for k in range(colors.bit_length()) if colors >> k & 1)
        L = [v for v in range(1, n + m + 1) if v not in sinks]
        free_sources, free_sinks = _unmatched(n, m, sinks)
        partner = dict(zip(free_sources, free_sinks))
        sign = permutation_sign([partner.get(v, v) - 1 for v in L]) * (-1 if inv else 1)
        slot = tally.setdefault((sinks, cset), [0, 0])
        slot[0 if sign == even_sign else 1] += cnt
    return [ClassCount(k[0], k[1], e, o) for k, (e, o) in sorted(tally.items())]


def class_of(scg: SCGraph, key, limits: EnumerationLimits = DEFAULT_LIMITS) -> SimilarityClass:
    """Enumerate the members of the single class with the given (sink set, color set)."""
    sink_set, color_set = key
    subs = enumerate_mcs(scg, limits, sink_set=sink_set, color_set=color_set)
    if not subs:
        raise ValueError(f"no multi-colored subgraph with sinks {list(sink_set)} and colors {list(color_set)}")
    (cls,) = similarity_classes(subs)
    return cls
