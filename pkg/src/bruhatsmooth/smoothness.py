"""
Rational smoothness of Schubert varieties from the Bruhat graph of ``[e, w]``.

Two independent criteria are implemented:

* regularity: every vertex of the Bruhat graph of ``[e, w]`` has degree
  ``l(w)``;
* broken rhombi: triples ``x <- u -> v`` inside ``[e, w]`` whose common
  upper neighbours ``x -> y <- v`` exist but all lie outside ``[e, w]``.

Each returns a :class:`SmoothnessCertificate` carrying evidence that can be
re-checked from scratch. In simply laced types smoothness and rational
smoothness coincide, so ``smooth`` is filled in there and left ``None``
elsewhere.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .bruhat import BruhatGraph, bruhat_graph, bruhat_leq, lower_interval
from .coxeter import (
    CoxeterSystem, GroupElement, as_reflection, build_system,
    inverse, multiply, reflections,
)

__all__ = [
    "RegularGraph", "DegreeDefect", "BrokenRhombus", "SmoothnessCertificate",
    "CrossValidationReport", "is_regular", "rationally_smooth_cp",
    "find_broken_rhombi", "rationally_smooth_br", "validate_rhombus",
    "cross_validate", "certificate_to_dict",
]


@dataclass(frozen=True)
class RegularGraph:
    common_degree: int


@dataclass(frozen=True)
class DegreeDefect:
    vertex: GroupElement
    degree: int
    length: int


@dataclass(frozen=True)
class BrokenRhombus:
    x: GroupElement
    u: GroupElement
    v: GroupElement
    # every y with x -> y <- v, in (length, shortlex) order
    witnesses_y: tuple[GroupElement, ...]

    def labels(self) -> dict:
        return {
            "x": self.x.label,
            "u": self.u.label,
            "v": self.v.label,
            "witnesses": [y.label for y in self.witnesses_y],
        }


Evidence = Union[RegularGraph, DegreeDefect, BrokenRhombus]


@dataclass(frozen=True)
class SmoothnessCertificate:
    element: GroupElement
    rationally_smooth: bool
    smooth: bool | None
    evidence: Evidence
    interval_size: int


def _smooth_field(w: GroupElement, rationally_smooth: bool) -> bool | None:
    return rationally_smooth if w.system.simply_laced else None


def is_regular(g: BruhatGraph) -> tuple[bool, DegreeDefect | None]:
    """Regularity test; on failure the first vertex of maximal degree is the witness."""
    ell = int(g.top.length)
    if np.all(g.degrees == ell):
        return True, None
    k = int(np.argmax(g.degrees))
    z = g.top.system.element_at(int(g.interval.indices[k]))
    return False, DegreeDefect(z, int(g.degrees[k]), ell)


def rationally_smooth_cp(w: GroupElement) -> SmoothnessCertificate:
    g = bruhat_graph(w)
    regular, defect = is_regular(g)
    evidence = RegularGraph(int(w.length)) if regular else defect
    return SmoothnessCertificate(w, regular, _smooth_field(w, regular), evidence, len(g))


def _rhombus_scan(w: GroupElement, first: bool, equal_length: bool):
    """Yield broken rhombi of ``[e, w]`` as index triples with their witnesses.

    Order: ``u`` in (length, shortlex) order, then the tip ``x``, then the
    tip ``v < x``.
    """
    table = w.system.table
    interval = lower_interval(w)
    mask = interval.mask
    lengths = table.length
    up = table.up_set
    verdict: dict[tuple[int, int], tuple[int, ...] | None] = {}
    for u in interval.indices:
        tips = sorted(z for z in up(int(u)) if mask[z])
        for a, x in enumerate(tips):
            for v in tips[:a]:
                if equal_length and lengths[x] != lengths[v]:
                    continue
                key = (x, v)
                if key not in verdict:
                    ys = up(x) & up(v)
                    verdict[key] = None if not ys or any(mask[c] for c in ys) else tuple(sorted(ys))
                ys = verdict[key]
                if ys is not None:
                    yield x, int(u), v, ys
                    if first:
                        return


def find_broken_rhombi(
    w: GroupElement,
    mode: Literal["first", "all"] = "first",
    equal_length: bool = True,
) -> list[BrokenRhombus]:
    """Broken rhombi ``(x, u, v)`` of ``[e, w]``.

    The tips are interchangeable, so each rhombus is reported once, with
    ``x`` the later tip in (length, shortlex) order. With ``equal_length``
    (the default) the tips must have equal length; without it the criterion
    misjudges multiply laced types, e.g. ``[e, s1s2s1]`` in C2 would contain
    ``(s1s2s1, e, s1)`` although its Bruhat graph is regular.
    """
    at = w.system.element_at
    scan = _rhombus_scan(w, first=(mode == "first"), equal_length=equal_length)
    return [BrokenRhombus(at(x), at(u), at(v), tuple(at(y) for y in ys)) for x, u, v, ys in scan]


def rationally_smooth_br(w: GroupElement, equal_length: bool = True) -> SmoothnessCertificate:
    found = find_broken_rhombi(w, "first", equal_length)
    size = len(lower_interval(w))
    if found:
        return SmoothnessCertificate(w, False, _smooth_field(w, False), found[0], size)
    return SmoothnessCertificate(w, True, _smooth_field(w, True), RegularGraph(int(w.length)), size)


def _edge(a: GroupElement, b: GroupElement) -> bool:
    """``a -> b`` in the full Bruhat graph, decided from the group law alone."""
    return as_reflection(multiply(inverse(a), b)) is not None and a.length < b.length


def validate_rhombus(r: BrokenRhombus, w: GroupElement, equal_length: bool = True) -> bool:
    """Re-check all three defining conditions using only multiplication and ``bruhat_leq``.

    Also checks that ``witnesses_y`` lists exactly the completing vertices.
    """
    x, u, v = r.x, r.u, r.v
    if x == v or not all(bruhat_leq(z, w) for z in (x, u, v)):
        return False
    if equal_length and x.length != v.length:
        return False
    if not (_edge(u, x) and _edge(u, v)):
        return False
    ys = set()
    for t in reflections(w.system):
        y = multiply(x, t.element)
        if y.length > x.length and _edge(v, y):
            ys.add(y)
    if not ys or ys != set(r.witnesses_y):
        return False
    return not any(bruhat_leq(y, w) for y in ys)


# -- cross validation -----------------------------------------------------


@dataclass
class CrossValidationReport:
    system: str
    checked: int
    rationally_smooth: int
    disagreements: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "system": self.system,
            "checked": self.checked,
            "rationally_smooth": self.rationally_smooth,
            "disagreements": self.disagreements,
        }


def _crossval_chunk(system: CoxeterSystem, indices: list[int]) -> list[tuple[int, bool, bool]]:
    out = []
    for i in indices:
        w = system.element_at(i)
        cp = rationally_smooth_cp(w).rationally_smooth
        br = rationally_smooth_br(w).rationally_smooth
        out.append((i, cp, br))
    return out


def cross_validate(system, jobs: int = 1) -> CrossValidationReport:
    """Compare the regularity and broken-rhombus verdicts on every element."""
    system = build_system(system)
    n = system.table.size
    if jobs <= 1:
        rows = _crossval_chunk(system, list(range(n)))
    else:
        chunks = [list(range(k, n, jobs)) for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = pool.map(_crossval_chunk, [system] * jobs, chunks)
        rows = sorted(r for part in parts for r in part)
    label = system.table.label_of
    return CrossValidationReport(
        system.label,
        len(rows),
        sum(cp for _, cp, _ in rows),
        [label(i) for i, cp, br in rows if cp != br],
    )


# -- serialization --------------------------------------------------------


def certificate_to_dict(
    cp: SmoothnessCertificate,
    rhombi: list[BrokenRhombus] | None = None,
) -> dict:
    """Render a certificate, optionally merged with broken-rhombus evidence."""
    w = cp.element
    doc = {
        "schema": 1,
        "system": w.system.label,
        "word": w.label,
        "length": int(w.length),
        "interval_size": cp.interval_size,
        "regular": isinstance(cp.evidence, RegularGraph),
    }
    if isinstance(cp.evidence, RegularGraph):
        doc["common_degree"] = cp.evidence.common_degree
    elif isinstance(cp.evidence, DegreeDefect):
        doc["defect"] = {"vertex": cp.evidence.vertex.label, "degree": cp.evidence.degree}
    if isinstance(cp.evidence, BrokenRhombus):
        rhombi = [cp.evidence]
    if rhombi:
        doc["rhombus"] = rhombi[0].labels()
        if len(rhombi) > 1:
            doc["rhombi"] = [r.labels() for r in rhombi]
    doc["rationally_smooth"] = cp.rationally_smooth
    if cp.smooth is not None:
        doc["smooth"] = cp.smooth
    return doc


def certificate_to_json(cp: SmoothnessCertificate, rhombi=None) -> str:
    return json.dumps(certificate_to_dict(cp, rhombi), indent=2) + "\n"
