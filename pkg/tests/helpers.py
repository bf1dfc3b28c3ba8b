from functools import lru_cache
from pathlib import Path

from bruhatsmooth.coxeter import build_system

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def system(label):
    return build_system(label)


def element(W, label):
    """Element named by a digit string such as "21342", or "e"."""
    return W.identity if label == "e" else W.element([int(c) for c in label])

# one verdict line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []
