"""
Finite crystallographic Coxeter systems realized on their root lattice.

An element is stored as the tuple of images of the simple roots, which is a
faithful and canonical representation. Everything element-level (products,
lengths, descents, inversion sets) is plain integer arithmetic on those
images.

Whole-group work goes through :class:`GroupTable`, which enumerates ``W`` once
and records every element as a permutation of the root set, so that products
become array lookups. The two paths never share code, which lets the tests
use one to check the other.

Generator indices are 1-based throughout the public API, as in ``s1, s2``.

>>> W = build_system("A2")
>>> w = W.element([1, 2, 1])
>>> w.length, w.word
(3, (1, 2, 1))
>>> W.element([2, 1, 2]) == w
True
>>> multiply(W.element([1, 2]), W.element([1, 2])).word
(2, 1)
"""

from __future__ import annotations

import math
import os
import threading
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import cartan as _cartan
from .errors import CapExceeded, MalformedCartan, NonFiniteType, SystemMismatch, WordParseError

# integer coefficients over the simple roots
Root = tuple[int, ...]

DEFAULT_CAP = 10**6
ROOT_CAP = 20_000


def default_cap() -> int:
    env = os.environ.get("BRUHATSMOOTH_CAP")
    return int(env) if env else DEFAULT_CAP


def _is_positive(root: Root) -> bool:
    return all(c >= 0 for c in root)


def _neg(root: Root) -> Root:
    return tuple(-c for c in root)


class CoxeterSystem:
    """A finite Weyl group together with its root system.

    Two systems compare equal when their Cartan matrices agree; the label is
    cosmetic.
    """

    def __init__(self, cartan, label: str | None = None, cap: int | None = None):
        self.cartan = _cartan.validate_cartan(cartan)
        self.rank = len(self.cartan)
        self.label = label or "cartan" + "".join(
            "/" + ",".join(str(x) for x in row) for row in self.cartan
        )
        self.cap = default_cap() if cap is None else cap
        self.coxeter_matrix = _cartan.coxeter_matrix(self.cartan)
        self.simply_laced = all(
            self.coxeter_matrix[i][j] <= 3
            for i in range(self.rank)
            for j in range(self.rank)
            if i != j
        )
        self._generate_roots()
        self._table = None
        self._table_lock = threading.Lock()
        self._elements_by_index: dict[int, GroupElement] = {}
        # memo for the lifting recursion in bruhat.bruhat_leq
        self.leq_cache: dict[tuple, bool] = {}

    # -- roots -------------------------------------------------------------

    def reflect(self, i: int, root: Root) -> Root:
        """Apply the 0-based simple reflection ``i`` to ``root``."""
        row = self.cartan[i]
        c = sum(row[j] * root[j] for j in range(self.rank))
        if c == 0:
            return root
        out = list(root)
        out[i] -= c
        return tuple(out)

    def _generate_roots(self) -> None:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        # positive root -> (generator, parent root) it was first reached from
        origin: dict[Root, tuple[int, Root] | None] = {a: None for a in simple}
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for i in range(n):
                gamma = self.reflect(i, beta)
                if gamma == beta or gamma in origin:
                    continue
                if _is_positive(gamma):
                    origin[gamma] = (i, beta)
                    queue.append(gamma)
                    if len(origin) > ROOT_CAP:
                        raise NonFiniteType(
                            f"more than {ROOT_CAP} positive roots; the Cartan matrix is not of finite type"
                        )
                elif any(c > 0 for c in gamma):
                    raise MalformedCartan(f"mixed-sign root {gamma} produced")
        self.positive_roots: list[Root] = sorted(origin, key=lambda r: (sum(r), tuple(-c for c in r)))
        self.nroots = len(self.positive_roots)
        self.roots: list[Root] = self.positive_roots + [_neg(r) for r in self.positive_roots]
        self.root_index: dict[Root, int] = {r: k for k, r in enumerate(self.roots)}
        self._root_origin = origin

    def root_conjugator(self, root: Root) -> tuple[tuple[int, ...], int]:
        """Return ``(word, i)`` with ``root = u(a_i)`` where ``u`` has the given word.

        The word and ``i`` are 1-based generator indices.
        """
        word = []
        while self._root_origin[root] is not None:
            i, parent = self._root_origin[root]
            word.append(i + 1)
            root = parent
        return tuple(word), root.index(1) + 1

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        """Exponents read off from the heights of the positive roots."""
        counts: dict[int, int] = {}
        for r in self.positive_roots:
            h = sum(r)
            counts[h] = counts.get(h, 0) + 1
        top = max(counts)
        out = []
        for k in range(1, top + 1):
            out += [k] * (counts.get(k, 0) - counts.get(k + 1, 0))
        return tuple(out)

    @cached_property
    def order(self) -> int:
        """|W| as the product of the degrees, without enumerating the group."""
        return math.prod(m + 1 for m in self.exponents)

    # -- elements ----------------------------------------------------------

    @cached_property
    def identity(self) -> GroupElement:
        return GroupElement(self, tuple(r for r in self.roots[: self.rank]))

    def generator(self, i: int) -> GroupElement:
        """The simple reflection ``s_i`` (1-based)."""
        if not 1 <= i <= self.rank:
            raise WordParseError(f"generator index {i} out of range 1..{self.rank}")
        simple = self.roots[: self.rank]
        return GroupElement(self, tuple(self.reflect(i - 1, a) for a in simple))

    @cached_property
    def generators(self) -> tuple[GroupElement, ...]:
        return tuple(self.generator(i) for i in range(1, self.rank + 1))

    def element(self, word: Iterable[int]) -> GroupElement:
        """Multiply out a (not necessarily reduced) word of 1-based indices."""
        w = self.identity
        gens = self.generators
        for i in word:
            if not 1 <= i <= self.rank:
                raise WordParseError(f"generator index {i} out of range 1..{self.rank}")
            w = multiply(w, gens[i - 1])
        return w

    def parse_word(self, text: str) -> GroupElement:
        return self.element(parse_word(text, self.rank))

    def longest(self) -> GroupElement:
        return longest_element(self, range(1, self.rank + 1))

    # -- table -------------------------------------------------------------

    @property
    def table(self) -> GroupTable:
        if self._table is None:
            with self._table_lock:
                if self._table is None:
                    if self.order > self.cap:
                        raise CapExceeded(
                            f"{self.label} has {self.order} elements, above the cap of {self.cap}"
                        )
                    self._table = GroupTable(self)
        return self._table

    def element_at(self, index: int) -> GroupElement:
        el = self._elements_by_index.get(index)
        if el is None:
            perm = self.table.perm[index]
            el = GroupElement(self, tuple(self.roots[k] for k in perm[: self.rank]))
            el._index = index
            self._elements_by_index[index] = el
        return el

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)

    def __repr__(self):
        return f"CoxeterSystem({self.label!r}, rank={self.rank})"

    def __getstate__(self):
        # workers rebuild tables themselves
        return {"cartan": self.cartan, "label": self.label, "cap": self.cap}

    def __setstate__(self, state):
        self.__init__(state["cartan"], state["label"], state["cap"])


def build_system(spec, cap: int | None = None) -> CoxeterSystem:
    """Build a system from a catalog label (``"D4"``), a Cartan file path or a matrix."""
    if isinstance(spec, CoxeterSystem):
        return spec
    if isinstance(spec, str):
        if os.path.isfile(spec):
            return CoxeterSystem(_cartan.read_cartan_file(spec), label=os.path.basename(spec), cap=cap)
        label = spec.strip().upper()
        return CoxeterSystem(_cartan.cartan_matrix(label), label=label, cap=cap)
    return CoxeterSystem(spec, cap=cap)


def parse_word(text: str, rank: int) -> tuple[int, ...]:
    """Parse whitespace- or comma-separated 1-based generator indices.

    An empty string or ``"e"`` is the empty word. A run of digits with no
    separators is read one digit per letter when ``rank < 10``.
    """
    text = text.strip()
    if text in ("", "e"):
        return ()
    tokens = [tok for tok in text.replace(",", " ").split() if tok]
    if len(tokens) == 1 and rank < 10 and len(tokens[0]) > 1:
        tokens = list(tokens[0])
    word = []
    for tok in tokens:
        if not tok.isdigit():
            raise WordParseError(f"invalid generator token {tok!r}")
        i = int(tok)
        if not 1 <= i <= rank:
            raise WordParseError(f"generator index {i} out of range 1..{rank}")
        word.append(i)
    return tuple(word)


def word_label(word: Sequence[int], rank: int | None = None) -> str:
    """Render a word as a digit string, ``"e"`` for the empty word."""
    if not word:
        return "e"
    if rank is not None and rank >= 10:
        return ".".join(str(i) for i in word)
    return "".join(str(i) for i in word)


class GroupElement:
    """An element of a finite Weyl group, given by its images of the simple roots.

    Length, descents and the inversion set are computed together on first
    use and cached.
    """

    __slots__ = ("system", "images", "_index", "_inv_roots", "_hash", "__weakref__")

    def __init__(self, system: CoxeterSystem, images: tuple[Root, ...]):
        self.system = system
        self.images = images
        self._index = None
        self._inv_roots = None
        self._hash = hash(images)

    def apply(self, root: Root) -> Root:
        """Image of an arbitrary root (or lattice vector) under the element."""
        n = len(root)
        out = [0] * n
        for j, c in enumerate(root):
            if c:
                img = self.images[j]
                for k in range(n):
                    out[k] += c * img[k]
        return tuple(out)

    @property
    def inversion_roots(self) -> frozenset[Root]:
        """Positive roots ``g`` with ``w^{-1}(g) < 0``, i.e. those whose reflection ``t`` has l(tw) < l(w)."""
        if self._inv_roots is None:
            out = set()
            for beta in self.system.positive_roots:
                img = self.apply(beta)
                if not _is_positive(img):
                    out.add(_neg(img))
            self._inv_roots = frozenset(out)
        return self._inv_roots

    @property
    def length(self) -> int:
        return len(self.inversion_roots)

    @property
    def left_descents(self) -> frozenset[int]:
        inv = self.inversion_roots
        return frozenset(i + 1 for i, a in enumerate(self.system.roots[: self.system.rank]) if a in inv)

    @property
    def right_descents(self) -> frozenset[int]:
        return frozenset(i + 1 for i, img in enumerate(self.images) if not _is_positive(img))

    def left_multiply(self, i: int) -> GroupElement:
        """``s_i * self`` computed directly on the images."""
        return GroupElement(self.system, tuple(self.system.reflect(i - 1, img) for img in self.images))

    @property
    def word(self) -> tuple[int, ...]:
        """Lexicographically first reduced word: peel off the smallest left descent."""
        out = []
        w = self
        while True:
            d = w.left_descents
            if not d:
                return tuple(out)
            s = min(d)
            out.append(s)
            w = w.left_multiply(s)

    def right_word(self) -> tuple[int, ...]:
        """A reduced word built by peeling right descents, largest first.

        Computed independently of :attr:`word`; used to check that the
        support does not depend on the chosen reduced word.
        """
        out = []
        w = self
        while True:
            d = w.right_descents
            if not d:
                return tuple(reversed(out))
            s = max(d)
            out.append(s)
            w = multiply(w, self.system.generator(s))

    @property
    def label(self) -> str:
        return word_label(self.word, self.system.rank)

    @property
    def index(self) -> int:
        """Position in the (length, shortlex) enumeration of the group."""
        if self._index is None:
            self._index = self.system.table.index_of_images(self.images)
        return self._index

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.images == other.images
            and self.system == other.system
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self.system.label} {self.label}>"


def _check_same(u: GroupElement, v: GroupElement) -> None:
    if u.system is not v.system and u.system != v.system:
        raise SystemMismatch(f"elements of {u.system.label} and {v.system.label} cannot be combined")


def multiply(u: GroupElement, v: GroupElement) -> GroupElement:
    _check_same(u, v)
    return GroupElement(u.system, tuple(u.apply(img) for img in v.images))


def inverse(w: GroupElement) -> GroupElement:
    out = w.system.identity
    for s in w.word:
        out = out.left_multiply(s)
    return out


def length(w: GroupElement) -> int:
    return w.length


def left_descents(w: GroupElement) -> frozenset[int]:
    return w.left_descents


def support(w: GroupElement) -> frozenset[int]:
    return frozenset(w.word)


def is_involution(w: GroupElement) -> bool:
    """True when ``w * w = e``; the identity counts, being the longest element of the empty parabolic."""
    return multiply(w, w) == w.system.identity


def longest_element(system: CoxeterSystem, J: Iterable[int]) -> GroupElement:
    """Longest element of the parabolic subgroup generated by ``J``, by greedy ascent."""
    J = sorted(set(J))
    for i in J:
        if not 1 <= i <= system.rank:
            raise WordParseError(f"generator index {i} out of range 1..{system.rank}")
    w = system.identity
    while True:
        for i in J:
            if i not in w.left_descents:
                w = w.left_multiply(i)
                break
        else:
            return w


@dataclass(frozen=True)
class Reflection:
    element: GroupElement
    root: Root

    @property
    def label(self) -> str:
        return self.element.label

    def __repr__(self):
        return f"Reflection({self.element.label}, root={self.root})"


def reflection_of_root(system: CoxeterSystem, root: Root) -> Reflection:
    """The reflection through a positive root, as ``u s_i u^{-1}`` with ``root = u(a_i)``."""
    word, i = system.root_conjugator(root)
    u = system.element(word)
    t = multiply(multiply(u, system.generator(i)), inverse(u))
    return Reflection(t, root)


def reflections(system: CoxeterSystem) -> list[Reflection]:
    """All reflections, ordered like the positive roots (height first)."""
    cached = system.__dict__.get("_reflections")
    if cached is None:
        cached = [reflection_of_root(system, r) for r in system.positive_roots]
        system.__dict__["_reflections"] = cached
    return list(cached)


def reflection_lookup(system: CoxeterSystem) -> dict[GroupElement, Reflection]:
    cached = system.__dict__.get("_reflection_lookup")
    if cached is None:
        cached = {t.element: t for t in reflections(system)}
        system.__dict__["_reflection_lookup"] = cached
    return cached


def as_reflection(w: GroupElement) -> Reflection | None:
    return reflection_lookup(w.system).get(w)


def inversion_set(w: GroupElement) -> set[Reflection]:
    """``N(w) = {t : l(tw) < l(w)}``."""
    lookup = {t.root: t for t in reflections(w.system)}
    return {lookup[r] for r in w.inversion_roots}


def enumerate_group(system: CoxeterSystem) -> list[GroupElement]:
    """All elements in (length, shortlex) order."""
    return [system.element_at(i) for i in range(system.table.size)]


def parabolic_subsets(system: CoxeterSystem):
    gens = range(1, system.rank + 1)
    for k in range(system.rank + 1):
        yield from (frozenset(c) for c in combinations(gens, k))


class GroupTable:
    """The enumerated group with array-backed multiplication.

    Rows are indexed by position in (length, shortlex) order. ``perm[w]`` is
    the permutation of root indices induced by ``w``; positive roots occupy
    ``0..N-1`` and ``-roots[k]`` sits at ``k + N``.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        n, N = system.rank, system.nroots
        self.rank, self.nroots = n, N
        self.radix = 2 * N
        self._int_keys = self.radix**n < 2**62

        sigma = np.empty((n, 2 * N), dtype=np.int32)
        for i in range(n):
            for k, r in enumerate(system.roots):
                sigma[i, k] = system.root_index[system.reflect(i, r)]
        self.sigma = sigma

        layers = [np.arange(2 * N, dtype=np.int32)[None, :]]
        words: list[tuple[int, ...]] = [()]
        lengths = [0]
        prev_words = [()]
        depth = 0
        while True:
            layer = layers[-1]
            cand = sigma[:, layer]  # (n, L, 2N): s_i applied after w
            cand_len = (cand[:, :, :N] >= N).sum(axis=2)
            sel_s, sel_w = np.nonzero(cand_len == depth + 1)
            if sel_s.size == 0:
                break
            # (s, parent) pairs come out sorted, so the first hit per element
            # is its smallest left descent with the shortlex-first parent
            rows = cand[sel_s, sel_w]
            _, first = self._unique_first(rows[:, :n])
            first.sort()
            layers.append(rows[first])
            new_words = [(int(sel_s[f]) + 1,) + prev_words[sel_w[f]] for f in first]
            words += new_words
            lengths += [depth + 1] * len(first)
            prev_words = new_words
            depth += 1
            if len(words) > system.cap:
                raise CapExceeded(f"enumeration of {system.label} passed the cap of {system.cap}")

        self.perm = np.concatenate(layers)
        self.size = len(self.perm)
        if self.size != system.order:
            raise NonFiniteType(f"enumerated {self.size} elements but degrees predict {system.order}")
        self.length = np.asarray(lengths, dtype=np.int32)
        self.words = words
        self._build_index()

        self.left = np.stack([self.lookup(sigma[i][self.perm[:, :n]]) for i in range(n)], axis=1)
        self.right = np.stack([self.lookup(self.perm[:, sigma[i][:n]]) for i in range(n)], axis=1)
        inv_perm = np.argsort(self.perm, axis=1).astype(np.int32)
        self.inverse = self.lookup(inv_perm[:, :n])
        self._right_refl = None
        self._up_sets = None

    # keys -----------------------------------------------------------------

    def _keys(self, rows: np.ndarray):
        if self._int_keys:
            weights = self.radix ** np.arange(self.rank, dtype=np.int64)
            return rows.astype(np.int64) @ weights
        return [r.tobytes() for r in np.ascontiguousarray(rows, dtype=np.int32)]

    def _unique_first(self, rows):
        keys = self._keys(rows)
        if self._int_keys:
            return np.unique(keys, return_index=True)
        seen: dict[bytes, int] = {}
        for pos, k in enumerate(keys):
            seen.setdefault(k, pos)
        return None, np.fromiter(seen.values(), dtype=np.int64)

    def _build_index(self):
        keys = self._keys(self.perm[:, : self.rank])
        if self._int_keys:
            self._order = np.argsort(keys)
            self._sorted = keys[self._order]
        else:
            self._dict = {k: i for i, k in enumerate(keys)}

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Element indices for an array of simple-root image rows (root indices)."""
        shape = rows.shape[:-1]
        flat = rows.reshape(-1, self.rank)
        keys = self._keys(flat)
        if self._int_keys:
            pos = np.searchsorted(self._sorted, keys)
            out = self._order[np.minimum(pos, self.size - 1)]
            if np.any(self._sorted[np.minimum(pos, self.size - 1)] != keys):
                raise KeyError("row does not encode a group element")
        else:
            out = np.fromiter((self._dict[k] for k in keys), dtype=np.int64, count=len(keys))
        return out.astype(np.int32).reshape(shape)

    def index_of_images(self, images: Sequence[Root]) -> int:
        ri = self.system.root_index
        row = np.array([[ri[img] for img in images]], dtype=np.int32)
        return int(self.lookup(row)[0])

    # derived tables -------------------------------------------------------

    @property
    def reflection_indices(self) -> np.ndarray:
        """Element index of the reflection through each positive root, in root order."""
        return np.array([t.element.index for t in reflections(self.system)], dtype=np.int32)

    @property
    def right_refl(self) -> np.ndarray:
        """``right_refl[w, k]`` is the index of ``w * t_k``."""
        if self._right_refl is None:
            n = self.rank
            cols = [self.lookup(self.perm[:, self.perm[t][:n]]) for t in self.reflection_indices]
            self._right_refl = np.stack(cols, axis=1)
        return self._right_refl

    def up_set(self, w: int) -> frozenset[int]:
        """Indices ``y = w t`` with ``l(y) > l(w)``: the out-neighbours in the full Bruhat graph."""
        if self._up_sets is None:
            self._up_sets = {}
        s = self._up_sets.get(w)
        if s is None:
            row = self.right_refl[w]
            s = frozenset(int(y) for y in row[self.length[row] > self.length[w]])
            self._up_sets[w] = s
        return s

    def word_of(self, w: int) -> tuple[int, ...]:
        return self.words[w]

    def label_of(self, w: int) -> str:
        return word_label(self.words[w], self.rank)
