"""
Bruhat order, lower intervals and their Bruhat graphs.

``bruhat_leq`` compares two elements through the lifting recursion: for
``s`` a left descent of ``w``, ``u <= w`` iff ``su <= sw`` when ``s`` is also a
descent of ``u``, and iff ``u <= sw`` otherwise. ``lower_interval`` runs the
same recursion for every ``u`` at once, as a boolean mask over the enumerated
group; peeling the letters of a reduced word of ``w`` gives
``[e, sw'] = [e, w'] | s[e, w']``.

>>> from bruhatsmooth.coxeter import build_system
>>> W = build_system("A2")
>>> g = bruhat_graph(W.element([1, 2, 1]))
>>> len(g), g.edge_count, sorted(set(g.degrees.tolist()))
(6, 9, [3])
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .coxeter import GroupElement, _check_same

__all__ = [
    "BruhatInterval", "BruhatGraph",
    "bruhat_leq", "lower_interval", "bruhat_graph", "degree",
    "to_dot", "graph_to_json", "dot_document",
]


def bruhat_leq(u: GroupElement, w: GroupElement) -> bool:
    """Bruhat comparison ``u <= w``, memoized per system."""
    _check_same(u, w)
    cache = w.system.leq_cache
    stack = []
    result = None
    while True:
        key = (u.images, w.images)
        hit = cache.get(key)
        if hit is not None:
            result = hit
            break
        if u.length == 0:
            result = True
            break
        if u.length >= w.length:
            result = u == w
            break
        stack.append(key)
        s = min(w.left_descents)
        if s in u.left_descents:
            u = u.left_multiply(s)
        w = w.left_multiply(s)
    # every pending query along the chain has the same answer
    for key in stack:
        cache[key] = result
    cache[(u.images, w.images)] = result
    return result


@dataclass(frozen=True, eq=False)
class BruhatInterval:
    """The lower interval ``[e, top]``, as a mask over the group table."""

    top: GroupElement
    mask: np.ndarray

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask).astype(np.int32)

    @property
    def system(self):
        return self.top.system

    @cached_property
    def elements(self) -> list[GroupElement]:
        at = self.system.element_at
        return [at(int(i)) for i in self.indices]

    @cached_property
    def rank_partition(self) -> dict[int, list[GroupElement]]:
        out: dict[int, list[GroupElement]] = {}
        lengths = self.system.table.length
        for i, el in zip(self.indices, self.elements):
            out.setdefault(int(lengths[i]), []).append(el)
        return out

    def __contains__(self, z: GroupElement) -> bool:
        _check_same(z, self.top)
        return bool(self.mask[z.index])

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self):
        return iter(self.elements)


def lower_interval(w: GroupElement) -> BruhatInterval:
    table = w.system.table
    mask = np.zeros(table.size, dtype=bool)
    mask[0] = True
    for s in reversed(table.words[w.index]):
        mask |= mask[table.left[:, s - 1]]
    mask.setflags(write=False)
    return BruhatInterval(w, mask)


@dataclass(frozen=True, eq=False)
class BruhatGraph:
    """Directed graph on ``[e, w]`` with an edge ``u -> ut`` whenever ``t`` is a
    reflection, ``ut <= w`` and ``l(u) < l(ut)``.

    ``sources``/``targets`` hold table indices; ``degrees`` is aligned with
    ``interval.indices``.
    """

    interval: BruhatInterval
    sources: np.ndarray
    targets: np.ndarray
    degrees: np.ndarray

    @property
    def top(self) -> GroupElement:
        return self.interval.top

    @property
    def edge_count(self) -> int:
        return len(self.sources)

    @cached_property
    def edges(self) -> set[tuple[GroupElement, GroupElement]]:
        at = self.top.system.element_at
        return {(at(int(a)), at(int(b))) for a, b in zip(self.sources, self.targets)}

    @cached_property
    def _position(self) -> dict[int, int]:
        return {int(i): k for k, i in enumerate(self.interval.indices)}

    def degree_at(self, index: int) -> int:
        return int(self.degrees[self._position[index]])

    def __len__(self) -> int:
        return len(self.interval)


def bruhat_graph(w: GroupElement) -> BruhatGraph:
    interval = lower_interval(w)
    table = w.system.table
    idx = interval.indices
    nbrs = table.right_refl[idx]  # (n, |T|)
    inside = interval.mask[nbrs]
    up = inside & (table.length[nbrs] > table.length[idx][:, None])
    rows, cols = np.nonzero(up)
    # every reflection neighbour inside the interval is incident by exactly
    # one edge, since lengths of u and ut always differ
    degrees = inside.sum(axis=1).astype(np.int32)
    return BruhatGraph(interval, idx[rows], nbrs[rows, cols], degrees)


def degree(g: BruhatGraph, z: GroupElement) -> int:
    """Number of edges of ``g`` incident to ``z``, directions ignored."""
    _check_same(z, g.top)
    if z not in g.interval:
        raise ValueError(f"{z.label} is not below {g.top.label}")
    return g.degree_at(z.index)


# -- export ---------------------------------------------------------------


def dot_document(name: str, table, vertices, sources, targets, comments=()) -> str:
    """Deterministic DOT text for a graph on table indices."""
    vertices = sorted(int(v) for v in vertices)
    label = table.label_of
    lines = [f'digraph "{name}" {{']
    for c in comments:
        lines.append(f"  // {c}")
    lines.append("  rankdir=BT;")
    lines.append("  node [shape=plaintext];")
    by_len: dict[int, list[int]] = {}
    for v in vertices:
        by_len.setdefault(int(table.length[v]), []).append(v)
    for ell in sorted(by_len):
        names = " ".join(f'"{label(v)}";' for v in by_len[ell])
        lines.append(f"  {{ rank=same; {names} }}")
    edges = sorted((label(int(a)), label(int(b))) for a, b in zip(sources, targets))
    for a, b in edges:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(g: BruhatGraph) -> str:
    top = g.top
    return dot_document(
        f"{top.system.label} {top.system.table.label_of(top.index)}",
        top.system.table,
        g.interval.indices,
        g.sources,
        g.targets,
    )


def graph_to_json(g: BruhatGraph) -> str:
    table = g.top.system.table
    label = table.label_of
    doc = {
        "schema": 1,
        "system": g.top.system.label,
        "word": label(g.top.index),
        "length": int(table.length[g.top.index]),
        "vertices": [label(int(v)) for v in g.interval.indices],
        "edges": sorted([label(int(a)), label(int(b))] for a, b in zip(g.sources, g.targets)),
        "degrees": {label(int(v)): int(d) for v, d in zip(g.interval.indices, g.degrees)},
    }
    return json.dumps(doc, indent=2) + "\n"
