"""Parameterized matrix pairs and their structural controllability graphs.

A pair ``[A B] = sum_k g_k p_k h_k`` is stored as a tuple of rank-one
terms.  Vertices of the graph are numbered 1..n (states) and
n+1..n+m (inputs); an arc is a triple ``(from, to, color)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import EchelonBasis, solve_combination

Arc = tuple[int, int, int]


class InstanceError(ValueError):
    """Raised for malformed or inadmissible parameterizations."""


class SizeLimitExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured limit."""


def _normalize(x) -> Union[int, Fraction]:
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, float):
        raise InstanceError(f"floating point entry {x!r} not allowed; use int or Fraction")
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class ParamTerm:
    """One rank-one term ``g p_color h``; ``h`` covers the n+m columns of [A B]."""

    color: int
    g: tuple
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(_normalize(x) for x in self.g))
        object.__setattr__(self, "h", tuple(_normalize(x) for x in self.h))

    @property
    def is_binary(self) -> bool:
        return all(x in (0, 1) for x in self.g + self.h)

    @property
    def is_unitary(self) -> bool:
        return all(sorted(v) == [0] * (len(v) - 1) + [1] for v in (self.g, self.h))

    def h1(self, n: int) -> tuple:
        return self.h[:n]

    def h2(self, n: int) -> tuple:
        return self.h[n:]

    def outer(self) -> list[list]:
        return [[a * b for b in self.h] for a in self.g]


@dataclass(frozen=True)
class Elimination:
    """A dropped term and its expression in the retained ones (original labels)."""

    label: int
    combination: Mapping[int, Fraction]


@dataclass(frozen=True)
class ParamPair:
    n: int
    m: int
    terms: tuple[ParamTerm, ...]
    labels: tuple[int, ...] = ()
    eliminated: tuple[Elimination, ...] = ()

    @property
    def q(self) -> int:
        return len(self.terms)

    @property
    def is_binary(self) -> bool:
        return all(t.is_binary for t in self.terms)

    @property
    def outside_binary_class(self) -> bool:
        return not self.is_binary

    @property
    def is_unitary(self) -> bool:
        return all(t.is_unitary for t in self.terms)

    @property
    def gs(self) -> list[tuple]:
        return [t.g for t in self.terms]

    @property
    def hs(self) -> list[tuple]:
        return [t.h for t in self.terms]

    def term(self, color: int) -> ParamTerm:
        return self.terms[color - 1]

    def entry_colors(self) -> list[list[dict[int, Union[int, Fraction]]]]:
        """``[A B]`` in symbolic form: entry (i, j) maps color -> coefficient."""
        n, w = self.n, self.n + self.m
        M = [[{} for _ in range(w)] for _ in range(n)]
        for t in self.terms:
            for i, a in enumerate(t.g):
                if not a:
                    continue
                for j, b in enumerate(t.h):
                    if b:
                        M[i][j][t.color] = a * b
        return M


def _coerce_raw(raw, position: int) -> tuple[int, Sequence, Sequence]:
    if isinstance(raw, ParamTerm):
        return raw.color, raw.g, raw.h
    if isinstance(raw, Mapping):
        return raw.get("p", position + 1), raw["g"], raw["h"]
    if len(raw) == 3:
        return raw[0], raw[1], raw[2]
    g, h = raw
    return position + 1, g, h


def build_pair(n: int, m: int, raw_terms: Iterable, *, allow_nonbinary: bool = False) -> ParamPair:
    """Validate terms and drop those whose outer products are dependent.

    Terms are scanned in input order and a term is kept when ``g h`` is
    independent of the outer products already kept; a dropped term is
    absorbed into the others by reparameterization, so the retained
    terms span the same matrix space.  Retained colors become 1..q,
    ordered by their original labels.

    ``raw_terms`` items may be :class:`ParamTerm`, ``(g, h)``,
    ``(label, g, h)`` or ``{"p": label, "g": ..., "h": ...}``.
    """
    if n < 1 or m < 0:
        raise InstanceError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    raw = list(raw_terms)
    if not raw:
        raise InstanceError("empty term list")
    seen: set[int] = set()
    parsed: list[ParamTerm] = []
    for pos, r in enumerate(raw):
        label, g, h = _coerce_raw(r, pos)
        if not isinstance(label, int) or isinstance(label, bool):
            raise InstanceError(f"term {pos + 1}: parameter label must be an integer, got {label!r}")
        if label in seen:
            raise InstanceError(f"duplicate parameter label p{label}")
        seen.add(label)
        if len(g) != n:
            raise InstanceError(f"p{label}: g has length {len(g)}, expected n={n}")
        if len(h) != n + m:
            raise InstanceError(f"p{label}: h has length {len(h)}, expected n+m={n + m}")
        t = ParamTerm(label, g, h)
        if not any(t.g):
            raise InstanceError(f"p{label}: g is the zero vector")
        if not any(t.h):
            raise InstanceError(f"p{label}: h is the zero vector")
        if not allow_nonbinary and not t.is_binary:
            raise InstanceError(f"p{label}: non-binary term (entries must be 0 or 1)")
        parsed.append(t)

    basis = EchelonBasis()
    kept: list[ParamTerm] = []
    dropped: list[ParamTerm] = []
    for t in parsed:
        ext = basis.extend([x for row in t.outer() for x in row])
        if ext is None:
            dropped.append(t)
        else:
            basis = ext
            kept.append(t)

    flat = [[x for row in t.outer() for x in row] for t in kept]
    eliminated = []
    for t in dropped:
        coeffs = solve_combination(flat, [x for row in t.outer() for x in row])
        assert coeffs is not None
        eliminated.append(Elimination(t.color, {k.color: c for k, c in zip(kept, coeffs) if c}))

    kept.sort(key=lambda t: t.color)
    terms = tuple(ParamTerm(i + 1, t.g, t.h) for i, t in enumerate(kept))
    return ParamPair(n, m, terms, tuple(t.color for t in kept), tuple(eliminated))


@dataclass(frozen=True)
class SCGraph:
    """Colored digraph on n+m vertices; arcs are sorted ``(from, to, color)``."""

    n: int
    m: int
    arcs: tuple[Arc, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(tuple(a) for a in self.arcs)))

    @property
    def num_vertices(self) -> int:
        return self.n + self.m

    @property
    def states(self) -> range:
        return range(1, self.n + 1)

    @property
    def inputs(self) -> range:
        return range(self.n + 1, self.n + self.m + 1)

    @property
    def colors(self) -> list[int]:
        return sorted({k for _, _, k in self.arcs})

    def arcs_into(self, v: int) -> list[Arc]:
        return [a for a in self.arcs if a[1] == v]

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {v: [] for v in range(1, self.num_vertices + 1)}
        for j, i, _ in self.arcs:
            if i not in succ[j]:
                succ[j].append(i)
        return succ


def graph_of_pair(pair: ParamPair) -> SCGraph:
    """Arc ``(j, i, k)`` iff entry (i, j) of ``g_k h_k`` is nonzero."""
    arcs = []
    for t in pair.terms:
        for i, a in enumerate(t.g, 1):
            if a:
                arcs.extend((j, i, t.color) for j, b in enumerate(t.h, 1) if b)
    return SCGraph(pair.n, pair.m, arcs)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def validate_scg(scg: SCGraph) -> ValidationReport:
    """Check vertex ranges and closure properties (i)-(iii)."""
    out: list[str] = []
    n, w = scg.n, scg.num_vertices
    for j, i, k in scg.arcs:
        if not (1 <= j <= w and 1 <= i <= w):
            out.append(f"arc ({j},{i})_{k}: vertex out of range 1..{w}")
        elif i > n:
            out.append(f"property (i): arc ({j},{i})_{k} enters input vertex {i}")
        if not isinstance(k, int) or k < 1:
            out.append(f"arc ({j},{i})_{k}: color must be a positive integer")
    seen: set[Arc] = set()
    for a in scg.arcs:
        if a in seen:
            out.append(f"property (ii): duplicate arc ({a[0]},{a[1]})_{a[2]}")
        seen.add(a)
    for k in scg.colors:
        tails = sorted({j for j, _, c in scg.arcs if c == k})
        heads = sorted({i for _, i, c in scg.arcs if c == k})
        for j in tails:
            for i in heads:
                if (j, i, k) not in seen:
                    out.append(f"property (iii): color {k} leaves {j} and enters {i} but ({j},{i})_{k} is missing")
    return ValidationReport(tuple(out))


def pair_of_graph(scg: SCGraph, *, reduce: bool = True) -> ParamPair:
    """Recover the binary terms determined by a structural controllability graph."""
    report = validate_scg(scg)
    if not report.valid:
        raise InstanceError("invalid structural controllability graph: " + "; ".join(report.violations))
    if not scg.arcs:
        raise InstanceError("graph has no arcs, so there are no parameters")
    w = scg.num_vertices
    raw = []
    for k in scg.colors:
        g = [0] * scg.n
        h = [0] * w
        for j, i, c in scg.arcs:
            if c == k:
                g[i - 1] = 1
                h[j - 1] = 1
        raw.append((k, g, h))
    if not reduce:
        return ParamPair(scg.n, scg.m, tuple(ParamTerm(k, g, h) for k, g, h in raw), tuple(k for k, _, _ in raw))
    return build_pair(scg.n, scg.m, raw)


def terms_from_entries(A: Sequence[Sequence[Iterable[int]]], B: Sequence[Sequence[Iterable[int]]]) -> list[tuple[int, list[int], list[int]]]:
    """Factor per-entry parameter sets into binary rank-one terms.

    Each entry of ``A`` (n x n) and ``B`` (n x m) lists the parameter
    labels appearing there with coefficient one.  A parameter whose
    support is not a full rows x columns rectangle cannot enter
    ``[A B]`` as a rank-one term, so some minor is non-multilinear in it.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise InstanceError("A must be square")
    m = len(B[0]) if B else 0
    if len(B) not in (0, n) or any(len(row) != m for row in B):
        raise InstanceError("B must have n rows of equal length")
    rows = [list(A[i]) + (list(B[i]) if B else []) for i in range(n)]
    support: dict[int, set[tuple[int, int]]] = {}
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            labels = list(entry)
            if len(set(labels)) != len(labels):
                raise InstanceError(f"entry ({i + 1},{j + 1}) repeats a parameter")
            for k in labels:
                support.setdefault(k, set()).add((i, j))
    terms = []
    for k in sorted(support):
        cells = support[k]
        rs = sorted({i for i, _ in cells})
        cs = sorted({j for _, j in cells})
        if len(cells) != len(rs) * len(cs):
            missing = sorted((i + 1, j + 1) for i in rs for j in cs if (i, j) not in cells)
            raise InstanceError(
                f"p{k} is not a rank-one term: it occupies rows {[r + 1 for r in rs]} and "
                f"columns {[c + 1 for c in cs]} but is absent from {missing}, so some minor "
                f"of [A B] contains p{k}^2 and the pair is not linearly parameterized"
            )
        g = [1 if i in rs else 0 for i in range(n)]
        h = [1 if j in cs else 0 for j in range(n + m)]
        terms.append((k, g, h))
    return terms


# -- multilinearity of minors ------------------------------------------------

Poly = dict  # monomial (sorted tuple of labels, with repeats) -> Fraction


def _poly_mul_entry(entry: Mapping[int, object], poly: Poly) -> Poly:
    out: Poly = {}
    for k, a in entry.items():
        for mono, c in poly.items():
            key = tuple(sorted(mono + (k,)))
            out[key] = out.get(key, 0) + a * c
    return {k: v for k, v in out.items() if v}


def _poly_add(p: Poly, q: Poly, sign: int) -> Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _entry_matrix(source) -> list[list[Mapping[int, object]]]:
    if isinstance(source, ParamPair):
        return source.entry_colors()
    return [[{k: v for k, v in dict(e).items() if v} for e in row] for row in source]


def verify_multilinear_minors(source, max_minor_size: Optional[int] = None, *, max_rows: int = 5) -> bool:
    """True iff every minor of ``[A B]`` has degree <= 1 in each parameter.

    ``source`` is a :class:`ParamPair` or a raw entry matrix whose entries
    map parameter labels to coefficients.  Minors are expanded
    symbolically, without any multilinear pruning.
    """
    M = _entry_matrix(source)
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    if nrows > max_rows:
        raise SizeLimitExceeded(f"{nrows} rows exceeds the minor-enumeration limit {max_rows}")
    top = min(nrows, ncols) if max_minor_size is None else min(max_minor_size, nrows, ncols)

    @lru_cache(maxsize=None)
    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> tuple:
        if not rows:
            return (((), Fraction(1)),)
        r0, rest = rows[0], rows[1:]
        acc: Poly = {}
        for pos, c in enumerate(cols):
            entry = M[r0][c]
            if not entry:
                continue
            sub = dict(det(rest, cols[:pos] + cols[pos + 1:]))
            if sub:
                acc = _poly_add(acc, _poly_mul_entry(entry, sub), -1 if pos % 2 else 1)
        return tuple(acc.items())

    for size in range(1, top + 1):
        for rows in combinations(range(nrows), size):
            for cols in combinations(range(ncols), size):
                for mono, _ in det(rows, cols):
                    if len(set(mono)) != len(mono):
                        return False
    return True
