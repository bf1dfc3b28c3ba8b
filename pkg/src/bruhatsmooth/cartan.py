"""
Cartan matrices of the finite crystallographic types, and their validation.

Convention: ``cartan[i][j] = 2 (a_i, a_j) / (a_i, a_i)`` so that the simple
reflection ``s_i`` acts on simple roots by ``s_i(a_j) = a_j - cartan[i][j] a_i``.
Node numbering follows Bourbaki's plates; in particular node 2 is the branch
node of D4 and node 4 is the branch node of E6.

>>> cartan_matrix("A3")
((2, -1, 0), (-1, 2, -1), (0, -1, 2))
>>> coxeter_matrix(cartan_matrix("C2"))
((1, 4), (4, 1))
"""

import re
from pathlib import Path

from .errors import MalformedCartan, NonFiniteType, UnknownType

Matrix = tuple[tuple[int, ...], ...]

# label -> allowed ranks
CATALOG_RANKS = {
    "A": range(1, 8),
    "B": range(2, 5),
    "C": range(2, 5),
    "D": range(4, 7),
    "E": (6,),
    "F": (4,),
    "G": (2,),
}

# product a_ij * a_ji -> order of s_i s_j
_PRODUCT_TO_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}

_LABEL_RE = re.compile(r"^([A-Ga-g])(\d+)$")


def catalog_labels() -> list[str]:
    return [f"{letter}{n}" for letter, ranks in CATALOG_RANKS.items() for n in ranks]


def _chain(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _freeze(m) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def type_cartan(letter: str, n: int) -> Matrix:
    """Cartan matrix of type ``letter`` and rank ``n``, any rank the type admits.

    Catalog limits are not enforced here; see :func:`cartan_matrix`.
    """
    letter = letter.upper()
    if letter == "A" and n >= 1:
        return _freeze(_chain(n))
    if letter in "BC" and n >= 2:
        m = _chain(n)
        if letter == "B":
            # a_n short
            m[n - 1][n - 2] = -2
        else:
            # a_n long
            m[n - 2][n - 1] = -2
        return _freeze(m)
    if letter == "D" and n >= 4:
        m = _chain(n - 1) + [[0] * n]
        for row in m[:-1]:
            row.append(0)
        m[n - 1][n - 1] = 2
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
        return _freeze(m)
    if letter == "E" and n in (6, 7, 8):
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 2
        bonds = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        for i, j in bonds:
            m[i][j] = m[j][i] = -1
        return _freeze(m)
    if letter == "F" and n == 4:
        m = _chain(4)
        # a_1, a_2 long; a_3, a_4 short
        m[2][1] = -2
        return _freeze(m)
    if letter == "G" and n == 2:
        # a_1 short, a_2 long
        return ((2, -3), (-1, 2))
    raise UnknownType(f"no finite crystallographic type {letter}{n}")


def cartan_matrix(label: str) -> Matrix:
    """Look up a catalog type such as ``"D4"``."""
    match = _LABEL_RE.match(label.strip())
    if not match:
        raise UnknownType(f"cannot parse type label {label!r}")
    letter, n = match.group(1).upper(), int(match.group(2))
    if n not in CATALOG_RANKS[letter]:
        raise UnknownType(f"{letter}{n} is not in the catalog ({', '.join(catalog_labels())})")
    return type_cartan(letter, n)


def validate_cartan(m) -> Matrix:
    """Check the local axioms of a crystallographic Cartan matrix.

    Global finiteness is only detected later, when root generation fails to
    terminate within its cap.
    """
    try:
        rows = [list(row) for row in m]
    except TypeError as exc:
        raise MalformedCartan("Cartan matrix must be a sequence of rows") from exc
    n = len(rows)
    if n == 0:
        raise MalformedCartan("Cartan matrix must have positive rank")
    for row in rows:
        if len(row) != n:
            raise MalformedCartan("Cartan matrix must be square")
        for x in row:
            if isinstance(x, bool) or int(x) != x:
                raise MalformedCartan(f"non-integer entry {x!r}")
    for i in range(n):
        if rows[i][i] != 2:
            raise MalformedCartan(f"diagonal entry ({i + 1},{i + 1}) must be 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise MalformedCartan(f"off-diagonal entry ({i + 1},{j + 1}) must be <= 0")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise MalformedCartan(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together")
            if rows[i][j] * rows[j][i] > 3:
                raise NonFiniteType(
                    f"s{i + 1}s{j + 1} has infinite order (a_ij * a_ji = {rows[i][j] * rows[j][i]})"
                )
    return _freeze(rows)


def coxeter_matrix(cartan: Matrix) -> Matrix:
    n = len(cartan)
    return tuple(
        tuple(1 if i == j else _PRODUCT_TO_ORDER[cartan[i][j] * cartan[j][i]] for j in range(n))
        for i in range(n)
    )


def parse_cartan_text(text: str) -> Matrix:
    """Parse the text format: first line the rank, then one row per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MalformedCartan("empty Cartan file")
    try:
        rank = int(lines[0])
        rows = [[int(tok) for tok in re.split(r"[\s,]+", ln) if tok] for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedCartan(f"non-integer token in Cartan file: {exc}") from exc
    if len(rows) != rank:
        raise MalformedCartan(f"declared rank {rank} but found {len(rows)} rows")
    return validate_cartan(rows)


def read_cartan_file(path) -> Matrix:
    return parse_cartan_text(Path(path).read_text())
