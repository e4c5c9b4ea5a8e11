"""Instance files and random instance generation.

Term form::

    {"n": 4, "m": 2, "terms": [{"p": 1, "g": [1,0,0,0], "h": [0,0,0,1,0,1]}, ...]}

Entry form, each entry listing the parameters it contains::

    {"A": [[[1], [1]], [[], []]], "B": [[[1]], [[2]]]}
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path
from typing import Union

from .model import InstanceError, ParamPair, build_pair, terms_from_entries

MODES = ("binary", "unitary")


def _number(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InstanceError(f"{where}: expected an integer or a fraction string, got {x!r}")
    try:
        return Fraction(x)
    except ValueError:
        raise InstanceError(f"{where}: cannot read {x!r} as a rational number") from None


def _int_field(doc: dict, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceError(f'"{key}" must be an integer, got {v!r}')
    return v


def pair_from_document(doc, *, allow_nonbinary: bool = False) -> ParamPair:
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    if "terms" in doc:
        n, m = _int_field(doc, "n"), _int_field(doc, "m")
        terms = doc["terms"]
        if not isinstance(terms, list):
            raise InstanceError('"terms" must be a list')
        raw = []
        for pos, t in enumerate(terms):
            if not isinstance(t, dict) or "g" not in t or "h" not in t:
                raise InstanceError(f'term {pos + 1}: need an object with "g" and "h"')
            label = t.get("p", pos + 1)
            g = [_number(x, f"term {pos + 1} g") for x in t["g"]]
            h = [_number(x, f"term {pos + 1} h") for x in t["h"]]
            raw.append((label, g, h))
        return build_pair(n, m, raw, allow_nonbinary=allow_nonbinary)
    if "A" in doc:
        A = doc["A"]
        B = doc.get("B", [])
        terms = terms_from_entries(A, B)
        m = len(B[0]) if B else 0
        if "m" in doc and doc["m"] != m:
            raise InstanceError(f'"m"={doc["m"]} does not match B with {m} columns')
        return build_pair(len(A), m, terms)
    raise InstanceError('instance needs either "terms" or "A"/"B"')


def parse_instance(data: Union[bytes, str], *, allow_nonbinary: bool = False) -> ParamPair:
    """Parse a JSON instance document into a validated pair."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return pair_from_document(doc, allow_nonbinary=allow_nonbinary)


def load_instance(path: Union[str, Path], *, allow_nonbinary: bool = False) -> ParamPair:
    return parse_instance(Path(path).read_bytes(), allow_nonbinary=allow_nonbinary)


def _plain(x):
    return x if isinstance(x, int) else str(x)


def pair_to_document(pair: ParamPair) -> dict:
    labels = pair.labels or tuple(range(1, pair.q + 1))
    return {
        "n": pair.n,
        "m": pair.m,
        "terms": [
            {"p": label, "g": [_plain(x) for x in t.g], "h": [_plain(x) for x in t.h]}
            for label, t in zip(labels, pair.terms)
        ],
    }


def serialize_instance(pair: ParamPair) -> str:
    doc = pair_to_document(pair)
    lines = [f'{{"n": {doc["n"]}, "m": {doc["m"]}, "terms": [']
    rows = [json.dumps(t) for t in doc["terms"]]
    lines.append(",\n".join("  " + r for r in rows))
    lines.append("]}")
    return "\n".join(lines) + "\n"


def generate_random(
    n: int,
    m: int,
    q: int,
    density: float = 0.3,
    seed: int = 0,
    mode: str = "binary",
) -> ParamPair:
    """Reproducible random pair; dependent terms are reduced away by :func:`build_pair`."""
    if not 1 <= n <= 8:
        raise ValueError(f"n must be in 1..8, got {n}")
    if not 0 <= m <= 3:
        raise ValueError(f"m must be in 0..3, got {m}")
    if not 1 <= q <= 14:
        raise ValueError(f"q must be in 1..14, got {q}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "binary" and not 0 < density <= 1:
        raise ValueError(f"density must be in (0, 1], got {density}")
    rng = random.Random(seed)
    w = n + m

    def bits(size: int) -> list[int]:
        while True:
            v = [1 if rng.random() < density else 0 for _ in range(size)]
            if any(v):
                return v

    def unit(size: int) -> list[int]:
        v = [0] * size
        v[rng.randrange(size)] = 1
        return v

    raw = []
    for k in range(1, q + 1):
        if mode == "unitary":
            raw.append((k, unit(n), unit(w)))
        else:
            raw.append((k, bits(n), bits(w)))
    return build_pair(n, m, raw)
