"""Numeric ground truth: instantiate parameters and test the Kalman rank."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .linalg import matmul, rational_rank
from .model import ParamPair

log = logging.getLogger(__name__)

PARAM_RANGE = 10**6


@dataclass(frozen=True)
class Instantiation:
    p: tuple
    A: tuple[tuple, ...]
    B: tuple[tuple, ...]


def instantiate(pair: ParamPair, p: Sequence[Union[int, Fraction]]) -> Instantiation:
    if len(p) != pair.q:
        raise ValueError(f"need {pair.q} parameter values, got {len(p)}")
    n, w = pair.n, pair.n + pair.m
    M = [[0] * w for _ in range(n)]
    for t, pk in zip(pair.terms, p):
        if not pk:
            continue
        for i, a in enumerate(t.g):
            if a:
                row = M[i]
                for j, b in enumerate(t.h):
                    if b:
                        row[j] += a * pk * b
    A = tuple(tuple(r[:n]) for r in M)
    B = tuple(tuple(r[n:]) for r in M)
    return Instantiation(tuple(p), A, B)


def controllability_matrix(inst: Instantiation) -> list[list]:
    n = len(inst.A)
    blocks = [list(map(list, inst.B))]
    for _ in range(1, n):
        blocks.append(matmul(inst.A, blocks[-1]))
    return [sum((blk[i] for blk in blocks), []) for i in range(n)]


def kalman_rank(inst: Instantiation) -> int:
    """Rank of [B, AB, ..., A^(n-1) B] over the rationals."""
    if not inst.B or not inst.B[0]:
        return 0
    return rational_rank(controllability_matrix(inst))


def random_parameters(q: int, rng: random.Random) -> list[int]:
    return [rng.randint(-PARAM_RANGE, PARAM_RANGE) for _ in range(q)]


def structurally_controllable_randomized(
    pair: ParamPair, trials: int = 3, seed: Optional[int] = None
) -> bool:
    """True once some random integer instantiation is controllable.

    A ``False`` answer can be wrong only if every trial hit the proper
    algebraic set of uncontrollable parameter values.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for trial in range(trials):
        inst = instantiate(pair, random_parameters(pair.q, rng))
        if kalman_rank(inst) == pair.n:
            return True
        log.debug("trial %d: Kalman rank below n=%d", trial, pair.n)
    return False
