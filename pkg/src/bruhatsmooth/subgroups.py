"""
Reflection subgroups of a finite Weyl group.

A reflection subgroup is kept as a set of ambient elements. Its canonical
Coxeter generators are the reflections ``t`` of the subgroup whose inversion
set meets the subgroup only in ``t`` itself.

>>> from bruhatsmooth.coxeter import build_system, reflections
>>> W = build_system("A3")
>>> s1, s2s3s2 = (t for t in reflections(W) if t.label in ("1", "232"))
>>> H = reflection_closure([s1, s2s3s2])
>>> len(H), sorted(t.label for t in H.canonical_gens), dihedral_type(H)
(6, ['1', '232'], 3)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .bruhat import dot_document
from .coxeter import (
    CoxeterSystem, GroupElement, Reflection, as_reflection, multiply, reflections,
)
from .errors import NonFiniteType, PreconditionViolated, SystemMismatch, TheoremViolation

__all__ = [
    "ReflectionSubgroup", "reflection_closure", "canonical_generators",
    "dihedral_from_quadruple", "dihedral_type", "compare_bruhat_graphs",
    "is_coxeter_system", "internal_length", "x_word_lengths", "subgroup_dot",
]


def _root_position(system: CoxeterSystem) -> dict:
    return {r: k for k, r in enumerate(system.positive_roots)}


@dataclass(frozen=True, eq=False)
class ReflectionSubgroup:
    ambient: CoxeterSystem
    indices: frozenset[int]

    @cached_property
    def elements(self) -> frozenset[GroupElement]:
        return frozenset(self.ambient.element_at(i) for i in self.indices)

    @cached_property
    def reflections_in(self) -> frozenset[Reflection]:
        return frozenset(t for t in reflections(self.ambient) if t.element.index in self.indices)

    @cached_property
    def canonical_gens(self) -> frozenset[Reflection]:
        inside = {t.root for t in self.reflections_in}
        return frozenset(
            t for t in self.reflections_in
            if t.element.inversion_roots & inside == {t.root}
        )

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, w: GroupElement) -> bool:
        return w.system == self.ambient and w.index in self.indices


def _closure(system: CoxeterSystem, roots) -> frozenset[int]:
    table = system.table
    pos = _root_position(system)
    cols = sorted({pos[r] for r in roots})
    seen = {0}
    queue = deque([0])
    while queue:
        w = queue.popleft()
        for k in cols:
            y = int(table.right_refl[w, k])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def reflection_closure(gens: list[Reflection]) -> ReflectionSubgroup:
    """The subgroup generated by ``gens``; must be non-empty or carry a system."""
    if not gens:
        raise PreconditionViolated("need at least one reflection")
    system = gens[0].element.system
    for t in gens:
        if t.element.system != system:
            raise SystemMismatch("reflections from different systems")
    return ReflectionSubgroup(system, _closure(system, [t.root for t in gens]))


def canonical_generators(H: ReflectionSubgroup) -> frozenset[Reflection]:
    return H.canonical_gens


def _order(w: GroupElement) -> int:
    e = w.system.identity
    p, k = w, 1
    while p != e:
        p = multiply(p, w)
        k += 1
    return k


def _cartan_from_coxeter(m) -> list[list[int]]:
    n = len(m)
    product = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] not in product:
                raise NonFiniteType(f"order {m[i][j]} is not crystallographic")
            a[i][j], a[j][i] = product[m[i][j]]
    return a


def is_coxeter_system(H: ReflectionSubgroup) -> bool:
    """Check that ``(H, X)`` is a Coxeter system.

    ``X`` must generate ``H``, and the Coxeter group presented by the orders
    of the products ``x x'`` must have exactly ``|H|`` elements. The second
    condition rules out extra relations.
    """
    X = sorted(H.canonical_gens, key=lambda t: t.element.index)
    if not X or _closure(H.ambient, [t.root for t in X]) != H.indices:
        return False
    m = [[_order(multiply(a.element, b.element)) for b in X] for a in X]
    try:
        presented = CoxeterSystem(_cartan_from_coxeter(m), cap=len(H))
    except NonFiniteType:
        return False
    return presented.order == len(H)


def dihedral_from_quadruple(t1: Reflection, t2: Reflection, t3: Reflection, t4: Reflection) -> ReflectionSubgroup:
    p, q = multiply(t1.element, t2.element), multiply(t3.element, t4.element)
    if p != q:
        raise PreconditionViolated("t1 t2 != t3 t4")
    if p == p.system.identity:
        raise PreconditionViolated("t1 t2 = e")
    H = reflection_closure([t1, t2, t3, t4])
    if len(H.canonical_gens) != 2:
        raise TheoremViolation(f"<t1,t2,t3,t4> has {len(H.canonical_gens)} canonical generators, not 2")
    return H


def dihedral_type(H: ReflectionSubgroup) -> int:
    """Order of the product of the two canonical generators."""
    X = sorted(H.canonical_gens, key=lambda t: t.element.index)
    if len(X) != 2:
        raise PreconditionViolated(f"subgroup has {len(X)} canonical generators, not 2")
    return _order(multiply(X[0].element, X[1].element))


def internal_length(H: ReflectionSubgroup, u: GroupElement) -> int:
    """Length of ``u`` in ``(H, X)``, computed as ``|N(u) & H|``."""
    inside = {t.root for t in H.reflections_in}
    return len(u.inversion_roots & inside)


def x_word_lengths(H: ReflectionSubgroup) -> dict[int, int]:
    """Word length over ``X`` of every element, by breadth-first search."""
    table = H.ambient.table
    pos = _root_position(H.ambient)
    cols = [pos[t.root] for t in H.canonical_gens]
    dist = {0: 0}
    queue = deque([0])
    while queue:
        w = queue.popleft()
        for k in cols:
            y = int(table.right_refl[w, k])
            if y not in dist:
                dist[y] = dist[w] + 1
                queue.append(y)
    return dist


def induced_edges(H: ReflectionSubgroup) -> set[tuple[int, int]]:
    """Edges of the ambient Bruhat graph between elements of ``H``."""
    table = H.ambient.table
    out = set()
    for u in H.indices:
        for y in table.right_refl[u]:
            y = int(y)
            if y in H.indices and table.length[y] > table.length[u]:
                out.add((u, y))
    return out


def internal_edges(H: ReflectionSubgroup) -> set[tuple[int, int]]:
    """Edges ``u -> ut`` of the Bruhat graph of ``(H, X)``, directed by internal length."""
    at = H.ambient.element_at
    ell = {u: internal_length(H, at(u)) for u in H.indices}
    out = set()
    for u in H.indices:
        for t in H.reflections_in:
            y = multiply(at(u), t.element).index
            if ell[y] > ell[u]:
                out.add((u, y))
    return out


def compare_bruhat_graphs(H: ReflectionSubgroup) -> bool:
    return induced_edges(H) == internal_edges(H)


def subgroup_dot(H: ReflectionSubgroup) -> str:
    table = H.ambient.table
    edges = sorted(induced_edges(H))
    xs = sorted(H.canonical_gens, key=lambda t: t.element.index)
    return dot_document(
        f"{H.ambient.label} subgroup",
        table,
        H.indices,
        [a for a, _ in edges],
        [b for _, b in edges],
        comments=["X = {" + ", ".join(t.label for t in xs) + "}"],
    )


def parse_reflection(w: GroupElement) -> Reflection:
    t = as_reflection(w)
    if t is None:
        raise PreconditionViolated(f"{w.label} is not a reflection")
    return t
