"""Brute-force reference computations, deliberately naive and table-free."""

from collections import deque
from itertools import permutations, product

from bruhatsmooth.coxeter import multiply


def bfs_closure(gens, identity):
    """All products of ``gens``, by breadth-first search with element arithmetic."""
    seen = {identity}
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for g in gens:
            y = multiply(w, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def word_length_bfs(W):
    """Length of every element as its BFS distance from e in the Cayley graph."""
    dist = {W.identity: 0}
    queue = deque([W.identity])
    while queue:
        w = queue.popleft()
        for g in W.generators:
            y = multiply(w, g)
            if y not in dist:
                dist[y] = dist[w] + 1
                queue.append(y)
    return dist


def subword_products(W, word):
    """Products of all subwords of ``word``: the lower interval when ``word`` is reduced."""
    out = set()
    for mask in product((0, 1), repeat=len(word)):
        out.add(W.element([s for s, keep in zip(word, mask) if keep]))
    return out


def perm_of_word(word, n):
    """Permutation of 1..n+1 (one-line, tuple) for a word in adjacent transpositions."""
    p = list(range(1, n + 2))
    for s in word:
        p[s - 1], p[s] = p[s], p[s - 1]
    return tuple(p)


def perm_bruhat_leq(u, w):
    """Tableau criterion for the Bruhat order on permutations."""
    n = len(u)
    for i in range(1, n + 1):
        a, b = sorted(u[:i]), sorted(w[:i])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def perm_involution_count(n):
    return sum(1 for p in permutations(range(n)) if all(p[p[i]] == i for i in range(n)))


def reachable_up(W, start, refl_elements):
    """Everything reachable from ``start`` by length-increasing reflection steps."""
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for t in refl_elements:
            y = multiply(w, t)
            if y.length > w.length and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
