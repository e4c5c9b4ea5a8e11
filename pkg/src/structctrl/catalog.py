"""Worked instances used in documentation, tests and the CLI."""

from __future__ import annotations

from .model import ParamPair, build_pair


def _unit(n: int, i: int) -> list[int]:
    return [1 if k == i else 0 for k in range(1, n + 1)]


EQ4_TERMS = [
    (1, _unit(4, 1), [0, 0, 0, 1, 0, 1]),
    (2, _unit(4, 2), [0, 0, 0, 0, 1, 1]),
    (3, _unit(4, 3), [0, 0, 1, 1, 0, 0]),
    (4, _unit(4, 4), [0, 0, 1, 0, 1, 0]),
    (5, _unit(4, 2), [1, 0, 0, 0, 0, 0]),
]


def eq4_pair() -> ParamPair:
    """Four states, two inputs, five parameters; structurally controllable."""
    return build_pair(4, 2, EQ4_TERMS)


# A = [[p1, p1, p2], [p1, p1, p2], [0, 0, 0]], b = [0, 0, p3]^T
REPEATED_ROWS_TERMS = [
    (1, [1, 1, 0], [1, 1, 0, 0]),
    (2, [1, 1, 0], [0, 0, 1, 0]),
    (3, [0, 0, 1], [0, 0, 0, 1]),
]

# same graph, but p2 enters the second row with weight 2
WEIGHTED_ROWS_TERMS = [
    (1, [1, 1, 0], [1, 1, 0, 0]),
    (2, [1, 2, 0], [0, 0, 1, 0]),
    (3, [0, 0, 1], [0, 0, 0, 1]),
]


def repeated_rows_pair() -> ParamPair:
    """Binary pair whose first two rows coincide; not structurally controllable."""
    return build_pair(3, 1, REPEATED_ROWS_TERMS)


def weighted_rows_pair() -> ParamPair:
    """Non-binary pair with the same graph as :func:`repeated_rows_pair`; controllable."""
    return build_pair(3, 1, WEIGHTED_ROWS_TERMS, allow_nonbinary=True)


# A = [[p1, p1], [0, 0]], b = [p1, p2]^T as an entry matrix [A b]
LINEAR_ENTRY_MATRIX = [
    [{1: 1}, {1: 1}, {1: 1}],
    [{}, {}, {2: 1}],
]

# A = [[p1, p1], [0, p1]], b = [0, p2]^T; not a linear parameterization
NONLINEAR_ENTRY_MATRIX = [
    [{1: 1}, {1: 1}, {}],
    [{}, {1: 1}, {2: 1}],
]
