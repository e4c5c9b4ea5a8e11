"""Seeded random corpora run through every check and property suite."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .analysis import analyze
from .catalog import eq4_pair, repeated_rows_pair
from .checks import BINARY_SUITE, check_verdicts, check_unitary
from .instances import generate_random, serialize_instance
from .model import ParamPair


@dataclass(frozen=True)
class CorpusEntry:
    n: int
    m: int
    q: int
    density: float
    seed: int
    mode: str

    def pair(self) -> ParamPair:
        return generate_random(self.n, self.m, self.q, self.density, self.seed, self.mode)


def corpus(count: int, max_n: int = 6, max_m: int = 2, max_q: int = 10, seed: int = 0, mode: str = "binary") -> list[CorpusEntry]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(1, max_m) if max_m >= 1 else 0
        q = rng.randint(1, max_q)
        density = round(rng.uniform(0.15, 0.6), 3)
        out.append(CorpusEntry(n, m, q, density, rng.randrange(2**32), mode))
    return out


@dataclass
class InstanceResult:
    entry: Optional[CorpusEntry]
    instance: str
    verdict: Optional[bool]
    failures: dict[str, list[str]]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.failures


def run_instance(entry: CorpusEntry, properties: bool = True) -> InstanceResult:
    t0 = time.perf_counter()
    pair = entry.pair()
    rep = analyze(pair)
    failures: dict[str, list[str]] = {}
    bad = check_verdicts(pair, rep)
    if bad:
        failures["verdicts"] = bad
    if entry.mode == "unitary":
        bad = check_unitary(pair, rep)
        if bad:
            failures["unitary reduction"] = bad
    if properties:
        for name, fn in BINARY_SUITE.items():
            bad = fn(pair)
            if bad:
                failures[name] = bad
    return InstanceResult(entry, serialize_instance(pair), rep.verdict, failures, time.perf_counter() - t0)


@dataclass
class CrosscheckSummary:
    results: list[InstanceResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.ok]

    @property
    def controllable(self) -> int:
        return sum(r.verdict is True for r in self.results)

    def lines(self) -> list[str]:
        out = [
            f"instances: {len(self.results)}  controllable: {self.controllable}  "
            f"not: {len(self.results) - self.controllable}  failures: {len(self.failures)}  "
            f"time: {self.elapsed:.1f}s"
        ]
        for r in self.failures:
            out.append(f"FAIL {r.entry}")
            for name, msgs in r.failures.items():
                out.extend(f"  [{name}] {msg}" for msg in msgs)
            out.append("  instance: " + r.instance.replace("\n", "\n  "))
        return out


def _run(args) -> InstanceResult:
    return run_instance(*args)


def crosscheck(
    count: int = 500,
    max_n: int = 6,
    max_m: int = 2,
    max_q: int = 10,
    seed: int = 0,
    mode: str = "binary",
    jobs: int = 1,
    properties: bool = True,
) -> CrosscheckSummary:
    """Analyze a seeded corpus and run the property suites on every instance."""
    t0 = time.perf_counter()
    entries = corpus(count, max_n, max_m, max_q, seed, mode)
    work = [(e, properties) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, work, chunksize=8))
    else:
        results = [_run(w) for w in work]
    return CrosscheckSummary(results, time.perf_counter() - t0)


def worked_examples() -> list[tuple[str, ParamPair, bool]]:
    return [
        ("four-state example", eq4_pair(), True),
        ("repeated-rows example", repeated_rows_pair(), False),
    ]
