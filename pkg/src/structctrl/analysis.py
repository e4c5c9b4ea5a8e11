"""Run every controllability check on one pair and collect witnesses."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .model import ParamPair, SizeLimitExceeded, graph_of_pair
from .oracle import structurally_controllable_randomized
from .rank import generic_rank_minform, max_jointly_independent
from .reach import (
    CactusDecomposition,
    build_cactus_union,
    reducing_subset,
    spanning_forest_rooted,
    unreachable_states,
)
from .subgraphs import (
    DEFAULT_LIMITS,
    EnumerationLimits,
    SimilarityClass,
    class_of,
    count_classes,
    enumerate_mcs,
    first_unbalanced,
)
from .transfer import build_transfer_graph, transfer_spanning_tree

log = logging.getLogger(__name__)

CONDITIONS = ("i", "ii", "iii", "iv", "corfmat")
CONDITION_TITLES = {
    "i": "randomized Kalman rank",
    "ii": "generic rank n and irreducible",
    "iii": "unbalanced class and cactus union",
    "iv": "unbalanced class and rooted forest",
    "corfmat": "subset-minimum rank and transfer tree",
}
EXTRA_TRIALS = 10


@dataclass
class AnalysisReport:
    n: int
    m: int
    q: int
    binary: bool
    verdicts: dict[str, Optional[bool]] = field(default_factory=dict)
    limit_flags: dict[str, str] = field(default_factory=dict)
    generic_rank: Optional[int] = None
    jointly_independent: Optional[list[int]] = None
    minform_rank: Optional[int] = None
    reducing_subset: Optional[tuple[int, ...]] = None
    unreachable: Optional[list[int]] = None
    num_subgraphs: Optional[int] = None
    num_classes: Optional[int] = None
    unbalanced_class: Optional[SimilarityClass] = None
    cactus: Optional[CactusDecomposition] = None
    transfer_tree: Optional[dict[int, int]] = None
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def decided(self) -> dict[str, bool]:
        return {k: v for k, v in self.verdicts.items() if v is not None}

    @property
    def consistent(self) -> bool:
        return len(set(self.decided.values())) <= 1

    @property
    def verdict(self) -> Optional[bool]:
        """Common verdict of the decided checks; None if none decided or they disagree."""
        values = set(self.decided.values())
        return values.pop() if len(values) == 1 else None

    def to_dict(self) -> dict:
        cls = self.unbalanced_class
        return {
            "n": self.n,
            "m": self.m,
            "q": self.q,
            "binary": self.binary,
            "structurally_controllable": self.verdict,
            "consistent": self.consistent,
            "verdicts": dict(self.verdicts),
            "limit_flags": dict(self.limit_flags),
            "generic_rank": self.generic_rank,
            "subset_minimum_rank": self.minform_rank,
            "jointly_independent": None if self.jointly_independent is None else [k + 1 for k in self.jointly_independent],
            "reducing_subset": None if self.reducing_subset is None else list(self.reducing_subset),
            "unreachable_vertices": self.unreachable,
            "num_multicolored_subgraphs": self.num_subgraphs,
            "num_similarity_classes": self.num_classes,
            "unbalanced_class": None
            if cls is None
            else {
                "sinks": list(cls.sink_set),
                "colors": list(cls.color_set),
                "odd": cls.odd_count,
                "even": cls.even_count,
                "members": [[list(a) for a in s.arcs] for s in cls.members],
            },
            "cactus": None
            if self.cactus is None
            else [
                {
                    "root": c.root,
                    "trunk": list(c.trunk),
                    "buds": [{"cycle": list(b.cycle), "stem": list(b.stem)} for b in c.buds],
                }
                for c in self.cactus.cacti
            ],
            "transfer_tree": None if self.transfer_tree is None else {str(k): v for k, v in sorted(self.transfer_tree.items())},
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "notes": list(self.notes),
        }


def _selected(conditions: Union[str, Iterable[str], None]) -> list[str]:
    if conditions is None or conditions == "all":
        return list(CONDITIONS)
    if isinstance(conditions, str):
        conditions = [conditions]
    chosen = list(conditions)
    bad = [c for c in chosen if c not in CONDITIONS]
    if bad:
        raise ValueError(f"unknown condition(s) {bad}; choose from {CONDITIONS}")
    return chosen


def analyze(
    pair: ParamPair,
    conditions: Union[str, Iterable[str], None] = "all",
    *,
    trials: int = 3,
    seed: Optional[int] = 0,
    limits: EnumerationLimits = DEFAULT_LIMITS,
) -> AnalysisReport:
    """Decide structural controllability by each requested route.

    Checks that hit a size limit are flagged and left undecided.  Pairs
    outside the binary class only get the randomized and subset-minimum
    checks, since the graph conditions need binary terms.
    """
    wanted = _selected(conditions)
    rep = AnalysisReport(pair.n, pair.m, pair.q, pair.is_binary)
    scg = graph_of_pair(pair)
    if not pair.is_binary:
        for c in ("ii", "iii", "iv"):
            if c in wanted:
                rep.verdicts[c] = None
                rep.notes.append(f"condition {c} skipped: pair is outside the binary class")
        wanted = [c for c in wanted if c in ("i", "corfmat")]

    def timed(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            rep.timings[name] = rep.timings.get(name, 0.0) + time.perf_counter() - t0

    if "ii" in wanted:
        idx = timed("generic_rank", lambda: max_jointly_independent(pair.gs, pair.hs))
        rep.jointly_independent = idx
        rep.generic_rank = len(idx)
        try:
            rep.reducing_subset = timed("irreducible", lambda: reducing_subset(pair))
            rep.verdicts["ii"] = rep.generic_rank == pair.n and rep.reducing_subset is None
        except SizeLimitExceeded as exc:
            rep.limit_flags["ii"] = str(exc)
            rep.verdicts["ii"] = None

    if "iii" in wanted or "iv" in wanted:
        forest = timed("forest", lambda: spanning_forest_rooted(scg))
        rep.unreachable = unreachable_states(scg)
        try:
            counts = timed("count", lambda: count_classes(scg, limits))
            rep.num_subgraphs = sum(c.total for c in counts)
            rep.num_classes = len(counts)
            if rep.num_subgraphs <= limits.max_subgraphs:
                subs = timed("enumerate", lambda: enumerate_mcs(scg, limits))
                witness = timed("balance", lambda: first_unbalanced(subs))
            else:
                rep.notes.append(
                    f"{rep.num_subgraphs} multi-colored subgraphs exceed the enumeration limit; "
                    "class balance taken from per-class counts"
                )
                bad = [c for c in counts if not c.balanced]
                witness = timed("balance", lambda: class_of(scg, bad[0].key, limits) if bad else None)
            rep.unbalanced_class = witness
            if "iv" in wanted:
                rep.verdicts["iv"] = witness is not None and forest
            if "iii" in wanted:
                rep.cactus = timed("cactus", lambda: build_cactus_union(scg, None, limits) if counts else None)
                rep.verdicts["iii"] = witness is not None and rep.cactus is not None
        except SizeLimitExceeded as exc:
            for c in ("iii", "iv"):
                if c in wanted:
                    rep.limit_flags[c] = str(exc)
                    rep.verdicts[c] = None

    if "corfmat" in wanted:
        try:
            rep.minform_rank = timed("subset_minimum", lambda: generic_rank_minform(pair))
            rep.transfer_tree = timed("transfer", lambda: transfer_spanning_tree(build_transfer_graph(pair)))
            rep.verdicts["corfmat"] = rep.minform_rank == pair.n and rep.transfer_tree is not None
        except SizeLimitExceeded as exc:
            rep.limit_flags["corfmat"] = str(exc)
            rep.verdicts["corfmat"] = None

    if "i" in wanted:
        ok = timed("kalman", lambda: structurally_controllable_randomized(pair, trials, seed))
        if not ok and any(rep.decided.values()):
            log.warning("random instantiations uncontrollable although another check certifies the pair; redrawing")
            rep.notes.append("randomized check redrawn after disagreeing with a structural certificate")
            redraw_seed = None if seed is None else seed + 1
            ok = timed("kalman", lambda: structurally_controllable_randomized(pair, EXTRA_TRIALS, redraw_seed))
        rep.verdicts["i"] = ok

    rep.verdicts = {c: rep.verdicts[c] for c in CONDITIONS if c in rep.verdicts}
    if not rep.consistent:
        rep.notes.append("checks disagree: " + ", ".join(f"{k}={v}" for k, v in rep.decided.items()))
    return rep


def format_report(rep: AnalysisReport, *, witness: bool = False, color: bool = False) -> str:
    def paint(text: str, ok: Optional[bool]) -> str:
        if not color or ok is None:
            return text
        return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"

    lines = [f"pair: n={rep.n} m={rep.m} q={rep.q}{'' if rep.binary else ' (outside binary class)'}"]
    for c, v in rep.verdicts.items():
        state = "undecided" if v is None else ("yes" if v else "no")
        lines.append(f"  {'(' + c + ')':<10}{CONDITION_TITLES[c]:<38} {paint(state, v)}")
    for c, why in rep.limit_flags.items():
        lines.append(f"  limit hit in ({c}): {why}")
    v = rep.verdict
    summary = "undecided" if v is None else ("structurally controllable" if v else "not structurally controllable")
    lines.append(f"verdict: {paint(summary, v)}")
    if rep.generic_rank is not None:
        lines.append(f"generic rank of [A B]: {rep.generic_rank}")
    if rep.minform_rank is not None and rep.minform_rank != rep.generic_rank:
        lines.append(f"subset-minimum rank: {rep.minform_rank}")
    if rep.reducing_subset:
        lines.append(f"states closed to the inputs: {list(rep.reducing_subset)}")
    if rep.unreachable:
        lines.append(f"vertices unreachable from inputs: {rep.unreachable}")
    if witness:
        cls = rep.unbalanced_class
        if rep.num_subgraphs is not None:
            lines.append(f"multi-colored subgraphs: {rep.num_subgraphs} in {rep.num_classes} similarity classes")
        if cls is None and rep.num_subgraphs is not None:
            lines.append("every similarity class is balanced" if rep.num_subgraphs else "no multi-colored subgraph")
        if cls is not None:
            lines.append(
                f"unbalanced class: sinks {list(cls.sink_set)} colors {list(cls.color_set)} "
                f"(odd {cls.odd_count}, even {cls.even_count})"
            )
            for s in cls.members:
                lines.append("    " + " ".join(f"({j},{i})_{k}" for j, i, k in s.arcs))
        if rep.cactus is not None:
            for c in rep.cactus.cacti:
                buds = "; ".join(f"cycle {list(b.cycle)} via ({b.stem[0]},{b.stem[1]})_{b.stem[2]}" for b in c.buds)
                lines.append(f"cactus at {c.root}: trunk {list(c.trunk)}" + (f", buds: {buds}" if buds else ""))
        if rep.transfer_tree is not None:
            lines.append("transfer tree parents: " + ", ".join(f"{k}<-{v}" for k, v in sorted(rep.transfer_tree.items())))
    for note in rep.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
