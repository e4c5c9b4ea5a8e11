"""Graphviz DOT text for graphs, subgraphs, cactus unions and transfer graphs."""

from __future__ import annotations

from typing import Iterable, Optional, Union

from .model import Arc, SCGraph
from .reach import CactusDecomposition
from .subgraphs import MultiColoredSubgraph
from .transfer import TransferGraph

Exportable = Union[SCGraph, MultiColoredSubgraph, CactusDecomposition, TransferGraph]


def _vertex_lines(n: int, m: int) -> list[str]:
    lines = [f'  {v} [shape=circle label="{v}"];' for v in range(1, n + 1)]
    lines += [f'  {v} [shape=box style=filled fillcolor=lightgray label="{v}"];' for v in range(n + 1, n + m + 1)]
    return lines


def _arc_lines(arcs: Iterable[Arc], style: Optional[str] = None) -> list[str]:
    extra = f" style={style}" if style else ""
    return [f'  {j} -> {i} [label="{k}"{extra}];' for j, i, k in arcs]


def _wrap(name: str, body: list[str]) -> str:
    return "\n".join([f"digraph {name} {{", "  rankdir=LR;", *body, "}"]) + "\n"


def export_dot(obj: Exportable, *, n: Optional[int] = None, m: Optional[int] = None, name: str = "G") -> str:
    """DOT text for ``obj``; arcs are labeled by color and inputs drawn as boxes.

    A cactus decomposition carries no vertex count, so pass ``n`` and
    ``m`` for it (otherwise only the vertices it covers are declared).
    """
    if isinstance(obj, SCGraph):
        return _wrap(name, _vertex_lines(obj.n, obj.m) + _arc_lines(obj.arcs))
    if isinstance(obj, MultiColoredSubgraph):
        return _wrap(name, _vertex_lines(obj.n, obj.m) + _arc_lines(obj.arcs))
    if isinstance(obj, CactusDecomposition):
        if n is None or m is None:
            roots = obj.roots
            m = len(roots) if m is None else m
            n = (min(roots) - 1 if roots else 0) if n is None else n
        stems = set(obj.stems)
        body = _vertex_lines(n, m)
        body += _arc_lines(a for a in obj.arcs if a not in stems)
        body += _arc_lines(sorted(stems), style="dashed")
        return _wrap(name, body)
    if isinstance(obj, TransferGraph):
        body = ['  0 [shape=box style=filled fillcolor=lightgray label="0"];']
        body += [f'  {v} [shape=circle label="{v}"];' for v in range(1, obj.q + 1)]
        body += [f"  {a} -> {b};" for a, b in sorted(obj.arcs)]
        return _wrap(name, body)
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")
