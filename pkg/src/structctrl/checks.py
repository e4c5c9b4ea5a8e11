"""Cross-module consistency checks on a single pair.

Each ``check_*`` function returns a list of failure messages; an empty
list means the property held.  They are used by the ``crosscheck``
command and by the test suite.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable, Optional

from .analysis import AnalysisReport, analyze
from .linalg import matmul, rational_rank, transpose
from .model import ParamPair, graph_of_pair
from .oracle import instantiate, random_parameters
from .rank import (
    coates_sign,
    det_from_terms,
    expand_det_terms,
    generic_rank_full,
    generic_rank_matroid,
    generic_rank_minform,
    joint_independence_bound,
    symbolic_det,
    symbolic_det_square,
)
from .reach import (
    build_cactus_union,
    cactus_union_problems,
    irreducible_bruteforce,
    lin_verdict,
    nonstandard_max_matching,
    spanning_forest_rooted,
)
from .subgraphs import (
    Parity,
    all_matrimonial_partitions,
    class_of,
    count_classes,
    enumerate_mcs,
    first_mcs,
    parity,
    parity_via_permutation_sign,
    similarity_classes,
)
from .transfer import build_transfer_graph, check_line_quotient_isomorphism, transfer_tree_rooted_at_zero


def check_verdicts(pair: ParamPair, report: Optional[AnalysisReport] = None) -> list[str]:
    rep = report or analyze(pair)
    if rep.limit_flags:
        return [f"limits hit: {rep.limit_flags}"]
    if not rep.consistent or rep.verdict is None:
        return [f"verdicts disagree: {rep.verdicts}"]
    return []


def check_generic_rank_routes(pair: ParamPair, *, trials: int = 3, seed: int = 0) -> list[str]:
    """Matroid intersection, subset minimum and numeric rank all agree."""
    a = generic_rank_matroid(pair)
    b = generic_rank_minform(pair)
    rng = random.Random(seed)
    c = 0
    for _ in range(trials):
        inst = instantiate(pair, random_parameters(pair.q, rng))
        c = max(c, rational_rank([list(ra) + list(rb) for ra, rb in zip(inst.A, inst.B)]))
    if a == b == c:
        return []
    return [f"generic rank: matroid={a} subset-minimum={b} numeric={c}"]


def check_parity_invariance(pair: ParamPair) -> list[str]:
    """Relative parity and balance do not depend on the matrimonial partition."""
    scg = graph_of_pair(pair)
    out = []
    for cc in count_classes(scg):
        if cc.total < 2:
            continue
        parts = list(all_matrimonial_partitions(scg, cc.sink_set))
        if len(parts) < 2:
            continue
        cls = class_of(scg, cc.key)
        rel = balance = None
        for part in parts:
            pars = [parity(s, part) for s in cls.members]
            this = tuple(p == pars[0] for p in pars)
            bal = sum(p is Parity.ODD for p in pars) * 2 == len(pars)
            if rel is None:
                rel, balance = this, bal
            elif this != rel or bal != balance:
                out.append(f"class {cls.key}: relative parities change with the partition")
                break
    return out


def check_parity_routes(pair: ParamPair, *, max_members: int = 20000) -> list[str]:
    """Quotient cycle counting and determinant signs give the same parity.

    Classes are enumerated one at a time until ``max_members`` subgraphs
    have been checked.
    """
    scg = graph_of_pair(pair)
    out = []
    budget = max_members
    for cc in count_classes(scg):
        if cc.total > budget:
            break
        budget -= cc.total
        cls = class_of(scg, cc.key)
        for s, p in zip(cls.members, cls.parities):
            if parity_via_permutation_sign(s) != p:
                out.append(f"class {cls.key}: parity routes disagree on {s.arcs}")
    return out


def check_class_counts(pair: ParamPair, *, max_subgraphs: int = 200000) -> list[str]:
    """Per-class counting agrees with enumeration followed by grouping."""
    scg = graph_of_pair(pair)
    counts = count_classes(scg)
    if sum(c.total for c in counts) > max_subgraphs:
        return []
    listed = [(c.key, c.even_count, c.odd_count) for c in similarity_classes(enumerate_mcs(scg))]
    counted = [(c.key, c.even_count, c.odd_count) for c in counts]
    return [] if listed == counted else [f"class counts {counted} but enumeration gives {listed}"]


def check_determinant_bridge(pair: ParamPair) -> list[str]:
    """|a_C| of the minor deleting sink columns T equals |even - odd| of class (T, C)."""
    scg = graph_of_pair(pair)
    imbalance = {c.key: abs(c.even_count - c.odd_count) for c in count_classes(scg)}
    out = []
    for T in combinations(range(1, pair.n + pair.m + 1), pair.m):
        poly = symbolic_det(pair, T)
        colors = {tuple(sorted(c)) for c in poly.coeffs}
        colors |= {key[1] for key in imbalance if key[0] == T}
        for C in colors:
            a = abs(poly.coefficient(C))
            d = imbalance.get((T, C), 0)
            if a != d:
                out.append(f"sinks {T} colors {C}: |a_C|={a} but |even-odd|={d}")
    return out


def check_coates(entries) -> list[str]:
    """Every valid expansion term has sign (-1)^(n-c); the expansion matches the memoized determinant."""
    out = []
    terms = expand_det_terms(entries)
    for t in terms:
        if t.sign != coates_sign(t):
            out.append(f"term {t.colors} at {t.perm}: signature {t.sign} vs cycle rule {coates_sign(t)}")
    if det_from_terms(terms) != symbolic_det_square(entries):
        out.append("term-by-term expansion disagrees with the memoized determinant")
    return out


def check_forest_irreducible(pair: ParamPair) -> list[str]:
    a = irreducible_bruteforce(pair)
    b = spanning_forest_rooted(graph_of_pair(pair))
    return [] if a == b else [f"irreducible={a} but rooted forest={b}"]


def check_cactus(pair: ParamPair) -> list[str]:
    scg = graph_of_pair(pair)
    forest = spanning_forest_rooted(scg)
    has_mcs = first_mcs(scg) is not None
    decomp = build_cactus_union(scg)
    if forest and has_mcs:
        if decomp is None:
            return ["forest and a multi-colored subgraph exist but no cactus union was built"]
        problems = cactus_union_problems(decomp, scg)
        return [f"invalid cactus union: {p}" for p in problems]
    if decomp is not None:
        return ["cactus union built although forest or multi-colored subgraph is missing"]
    return []


def check_transfer(pair: ParamPair) -> list[str]:
    out = []
    if irreducible_bruteforce(pair) and not transfer_tree_rooted_at_zero(build_transfer_graph(pair)):
        out.append("irreducible pair without a transfer tree rooted at 0")
    if not check_line_quotient_isomorphism(pair):
        out.append("line-graph color quotient is not the transfer graph on 1..q")
    return out


def check_product_bound(G, H) -> list[str]:
    r = rational_rank(matmul(G, H))
    b = joint_independence_bound(G, H)
    top = min(rational_rank(G), rational_rank(H))
    return [] if r <= b <= top else [f"rank(GH)={r}, bound={b}, min(rank G, rank H)={top}"]


def check_pair_product_bound(pair: ParamPair) -> list[str]:
    return check_product_bound(transpose(pair.gs), pair.hs)


def check_unitary(pair: ParamPair, report: Optional[AnalysisReport] = None) -> list[str]:
    """Matching size n, generic rank n and existence of a multi-colored subgraph coincide."""
    scg = graph_of_pair(pair)
    a = nonstandard_max_matching(scg) == pair.n
    b = generic_rank_full(pair) == pair.n
    c = bool(enumerate_mcs(scg))
    out = []
    if not a == b == c:
        out.append(f"matching={a} generic-rank={b} subgraph={c}")
    rep = report or analyze(pair)
    if rep.verdict != lin_verdict(pair):
        out.append(f"graph-condition verdict {rep.verdict} but classical verdict {lin_verdict(pair)}")
    return out


def check_state_matrix_coates(pair: ParamPair) -> list[str]:
    return check_coates([row[: pair.n] for row in pair.entry_colors()])


BINARY_SUITE: dict[str, Callable[[ParamPair], list[str]]] = {
    "generic-rank routes": check_generic_rank_routes,
    "parity invariance": check_parity_invariance,
    "parity routes": check_parity_routes,
    "class counts": check_class_counts,
    "determinant bridge": check_determinant_bridge,
    "coates signs": check_state_matrix_coates,
    "forest vs irreducible": check_forest_irreducible,
    "cactus construction": check_cactus,
    "transfer graph": check_transfer,
    "product bound": check_pair_product_bound,
}
