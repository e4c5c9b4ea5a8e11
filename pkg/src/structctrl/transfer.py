"""Transfer graph of the term vectors and the line graph of an SC graph.

Vertex 0 of the transfer graph stands for the inputs; vertex i >= 1 for
parameter p_i.  There is an arc 0 -> i when p_i appears in B and an arc
i -> j when h_j1 . g_i is nonzero, i.e. p_i feeds a state that p_j reads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .model import Arc, ParamPair, SCGraph, graph_of_pair
from .rank import generic_rank_minform


@dataclass(frozen=True)
class TransferGraph:
    q: int
    arcs: frozenset[tuple[int, int]]

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {v: [] for v in range(self.q + 1)}
        for a, b in sorted(self.arcs):
            succ[a].append(b)
        return succ

    def induced_on_parameters(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for a, b in self.arcs if a and b)


def build_transfer_graph(pair: ParamPair) -> TransferGraph:
    n = pair.n
    arcs = set()
    for t in pair.terms:
        if any(t.h2(n)):
            arcs.add((0, t.color))
    for src in pair.terms:
        for dst in pair.terms:
            # block T[dst, src] = h_{dst,1} . g_src
            if sum(a * b for a, b in zip(dst.h1(n), src.g)) != 0:
                arcs.add((src.color, dst.color))
    return TransferGraph(pair.q, frozenset(arcs))


def transfer_spanning_tree(tg: TransferGraph) -> Optional[dict[int, int]]:
    """Breadth-first parent map of a spanning tree rooted at 0, or None."""
    succ = tg.successors()
    parent = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    if len(parent) != tg.q + 1:
        return None
    del parent[0]
    return parent


def transfer_tree_rooted_at_zero(tg: TransferGraph) -> bool:
    return transfer_spanning_tree(tg) is not None


def corfmat_test(pair: ParamPair, *, max_q: int = 20) -> bool:
    """Subset-minimum rank condition plus the root-0 spanning tree.

    Works without the binary assumption.
    """
    if generic_rank_minform(pair, max_q=max_q) != pair.n:
        return False
    return transfer_tree_rooted_at_zero(build_transfer_graph(pair))


@dataclass(frozen=True)
class LineGraph:
    vertices: tuple[Arc, ...]
    arcs: frozenset[tuple[Arc, Arc]]


def line_graph(scg: SCGraph) -> LineGraph:
    """One vertex per arc; an arc for each length-two walk."""
    by_tail: dict[int, list[Arc]] = {}
    for a in scg.arcs:
        by_tail.setdefault(a[0], []).append(a)
    arcs = {(a, b) for a in scg.arcs for b in by_tail.get(a[1], ())}
    return LineGraph(scg.arcs, frozenset(arcs))


def color_quotient(lg: LineGraph) -> frozenset[tuple[int, int]]:
    """Arcs of the line graph after merging all vertices of one color."""
    return frozenset((a[2], b[2]) for a, b in lg.arcs)


def check_line_quotient_isomorphism(pair: ParamPair) -> bool:
    """Color quotient of the line graph equals the transfer graph on 1..q."""
    lg = line_graph(graph_of_pair(pair))
    cells = {v[2] for v in lg.vertices}
    if cells != set(range(1, pair.q + 1)):
        return False
    return color_quotient(lg) == build_transfer_graph(pair).induced_on_parameters()
