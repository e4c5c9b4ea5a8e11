"""Reachability structure: rooted forests, irreducibility, cacti, matchings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx

from .model import Arc, ParamPair, SCGraph, SizeLimitExceeded, graph_of_pair
from .subgraphs import DEFAULT_LIMITS, EnumerationLimits, MultiColoredSubgraph, first_mcs


def reachable_from(scg: SCGraph, roots: Iterable[int]) -> set[int]:
    """Vertices reachable from any root, by simultaneous breadth-first search."""
    succ = scg.successors()
    seen = set(roots)
    queue = deque(sorted(seen))
    while queue:
        v = queue.popleft()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def unreachable_states(scg: SCGraph, roots: Optional[Iterable[int]] = None) -> list[int]:
    roots = scg.inputs if roots is None else roots
    seen = reachable_from(scg, roots)
    return [v for v in range(1, scg.num_vertices + 1) if v not in seen]


def spanning_forest_rooted(scg: SCGraph, roots: Optional[Iterable[int]] = None) -> bool:
    """True iff every vertex outside ``roots`` is reachable from some root."""
    return not unreachable_states(scg, roots)


def reducing_subset(pair: ParamPair, *, max_n: int = 10) -> Optional[tuple[int, ...]]:
    """A set S of states receiving nothing from outside S, or None.

    "Receiving nothing" means no parameter of A couples a state outside S
    into S, and no parameter of B reaches S.  Subsets are tried by size.
    """
    n = pair.n
    if n > max_n:
        raise SizeLimitExceeded(f"n={n} exceeds the brute-force irreducibility limit {max_n}")
    M = pair.entry_colors()
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            inside = set(S)
            closed = all(
                not M[i][j]
                for i in S
                for j in range(n + pair.m)
                if j not in inside
            )
            if closed:
                return tuple(i + 1 for i in S)
    return None


def irreducible_bruteforce(pair: ParamPair, *, max_n: int = 10) -> bool:
    """True iff no permutation brings (A, B) into the reducible block form."""
    return reducing_subset(pair, max_n=max_n) is None


# -- cactus unions ---------------------------------------------------------------


@dataclass(frozen=True)
class Bud:
    cycle: tuple[int, ...]
    cycle_arcs: tuple[Arc, ...]
    stem: Arc


@dataclass(frozen=True)
class Cactus:
    root: int
    trunk: tuple[int, ...]
    trunk_arcs: tuple[Arc, ...]
    buds: tuple[Bud, ...] = ()

    @property
    def vertices(self) -> list[int]:
        return list(self.trunk) + [v for b in self.buds for v in b.cycle]

    @property
    def arcs(self) -> list[Arc]:
        out = list(self.trunk_arcs)
        for b in self.buds:
            out.extend(b.cycle_arcs)
            out.append(b.stem)
        return out


@dataclass(frozen=True)
class CactusDecomposition:
    cacti: tuple[Cactus, ...]

    @property
    def roots(self) -> list[int]:
        return [c.root for c in self.cacti]

    @property
    def arcs(self) -> list[Arc]:
        return [a for c in self.cacti for a in c.arcs]

    @property
    def stems(self) -> list[Arc]:
        return [b.stem for c in self.cacti for b in c.buds]


def cactus_union_from(scg: SCGraph, sub: MultiColoredSubgraph) -> Optional[CactusDecomposition]:
    """Attach every cycle of ``sub`` to the growing path forest by one stem each.

    At each step the lexicographically smallest arc of ``scg`` from the
    connected-so-far vertex set into a not-yet-absorbed cycle is taken.
    Returns None if some cycle can never be reached.
    """
    into = {i: (j, i, k) for j, i, k in sub.arcs}
    owner: dict[int, int] = {}
    trunks = []
    for path in sub.paths():
        root = path[0]
        for v in path:
            owner[v] = root
        trunks.append((root, tuple(path), tuple(into[v] for v in path[1:])))
    pending = {idx: cyc for idx, cyc in enumerate(sub.cycles())}
    cycle_of = {v: idx for idx, cyc in pending.items() for v in cyc}
    buds: dict[int, list[Bud]] = {root: [] for root, _, _ in trunks}
    while pending:
        stem = next(
            (a for a in scg.arcs if a[0] in owner and cycle_of.get(a[1]) in pending),
            None,
        )
        if stem is None:
            return None
        idx = cycle_of[stem[1]]
        cyc = pending.pop(idx)
        root = owner[stem[0]]
        for v in cyc:
            owner[v] = root
        buds[root].append(Bud(tuple(cyc), tuple(into[v] for v in cyc), stem))
    return CactusDecomposition(
        tuple(Cactus(root, trunk, tarcs, tuple(buds[root])) for root, trunk, tarcs in trunks)
    )


def build_cactus_union(
    scg: SCGraph,
    initial: Optional[MultiColoredSubgraph] = None,
    limits: EnumerationLimits = DEFAULT_LIMITS,
) -> Optional[CactusDecomposition]:
    """Disjoint union of m cacti rooted at the inputs, or None.

    Needs a multi-colored subgraph (by default the first one met by the
    backtracking search) and a spanning forest rooted at the inputs.
    """
    if not spanning_forest_rooted(scg):
        return None
    if initial is None:
        initial = first_mcs(scg, limits)
        if initial is None:
            return None
    return cactus_union_from(scg, initial)


def validate_cactus_union(decomp: CactusDecomposition, scg: SCGraph) -> bool:
    return not cactus_union_problems(decomp, scg)


def cactus_union_problems(decomp: CactusDecomposition, scg: SCGraph) -> list[str]:
    """Every way ``decomp`` fails to be a spanning union of input-rooted cacti."""
    problems: list[str] = []
    arcset = set(scg.arcs)
    all_vertices = [v for c in decomp.cacti for v in c.vertices]
    if sorted(all_vertices) != list(range(1, scg.num_vertices + 1)):
        problems.append("cacti are not vertex-disjoint or do not span all vertices")
    if sorted(decomp.roots) != list(scg.inputs):
        problems.append(f"roots {sorted(decomp.roots)} are not the input vertices")
    for a in decomp.arcs:
        if a not in arcset:
            problems.append(f"arc {a} is not in the graph")
    for c in decomp.cacti:
        if not c.trunk or c.trunk[0] != c.root:
            problems.append(f"cactus {c.root}: trunk must start at its root")
        expected = list(zip(c.trunk, c.trunk[1:]))
        if [(a[0], a[1]) for a in c.trunk_arcs] != expected:
            problems.append(f"cactus {c.root}: trunk arcs do not form the trunk path")
        own = set(c.vertices)
        attached = set(c.trunk)
        remaining = list(c.buds)
        for b in c.buds:
            if not b.cycle:
                problems.append(f"cactus {c.root}: empty bud")
                continue
            ring = list(zip(b.cycle, b.cycle[1:] + b.cycle[:1]))
            if sorted((a[0], a[1]) for a in b.cycle_arcs) != sorted(ring):
                problems.append(f"cactus {c.root}: bud {b.cycle} arcs are not its cycle")
            if b.stem[1] not in b.cycle:
                problems.append(f"cactus {c.root}: stem {b.stem} does not enter its bud")
            if b.stem[0] not in own or b.stem[0] in b.cycle:
                problems.append(f"cactus {c.root}: stem {b.stem} leaves the structure")
        # condensing cycles must give a tree rooted at the trunk
        progress = True
        while remaining and progress:
            progress = False
            for b in list(remaining):
                if b.stem[0] in attached:
                    attached.update(b.cycle)
                    remaining.remove(b)
                    progress = True
        if remaining:
            problems.append(f"cactus {c.root}: buds {[b.cycle for b in remaining]} hang off no trunk")
    return problems


# -- nonstandard matching ----------------------------------------------------------


def nonstandard_matching(scg: SCGraph) -> list[tuple[int, int]]:
    """Maximum arc set with distinct starts and distinct ends (colors ignored).

    Each vertex v is split into an out-copy and an in-copy; arcs become
    out-to-in edges of a bipartite graph matched by Hopcroft-Karp.
    """
    B = nx.Graph()
    left = [("out", v) for v in range(1, scg.num_vertices + 1)]
    B.add_nodes_from(left, bipartite=0)
    B.add_nodes_from((("in", v) for v in range(1, scg.num_vertices + 1)), bipartite=1)
    B.add_edges_from((("out", j), ("in", i)) for j, i, _ in scg.arcs)
    mate = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left)
    return sorted((u[1], w[1]) for u, w in mate.items() if u[0] == "out")


def nonstandard_max_matching(scg: SCGraph) -> int:
    return len(nonstandard_matching(scg))


def lin_verdict(pair: ParamPair) -> bool:
    """Classical verdict for unitary pairs: rooted forest plus a matching of size n."""
    scg = graph_of_pair(pair)
    return spanning_forest_rooted(scg) and nonstandard_max_matching(scg) == pair.n
