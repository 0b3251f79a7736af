"""Worked-example objects stored verbatim as data.

Fixtures are not regenerated from the constructions, so conformance tests
compare independent sources.
"""

from __future__ import annotations

from ..core import Code, CodeParams
from ..errors import UnknownFixture
from .cac import Cac, cac_from_generators
from .designs import DifferenceMatrix, Gbrd

_EXAMPLE1 = (
    ((0, 0), (0, 1), (0, 2)),
    ((1, 0), (1, 1), (1, 2)),
    ((2, 0), (2, 1), (2, 2)),
    ((0, 0), (1, 0), (2, 0)),
    ((0, 0), (1, 1), (2, 2)),
    ((0, 0), (1, 2), (2, 4)),
    ((0, 0), (1, 3), (2, 1)),
    ((0, 0), (1, 4), (2, 3)),
)

_EXAMPLE3 = (
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12),
    (0, 2, 4, 6, 8, 10, 12, 1, 3, 5, 7, 9, 11),
)

_ = None
_EXAMPLE4 = (
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, _, _, _, _, _),
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, _, _, _, _, _, 0, 0, 0, 0, 0),
    (0, 2, 4, 6, 8, _, _, _, _, _, 1, 3, 5, 7, 9, 5, 6, 7, 8, 9),
    (_, _, _, _, _, 5, 4, 3, 2, 1, 6, 7, 8, 9, 0, 1, 3, 5, 7, 9),
)

_EXAMPLE6_COLUMNS = (
    ((0, 0), (1, 0), (2, 0)),
    ((0, 0), (1, 1), (2, 2)),
    ((0, 0), (1, 2), (2, 4)),
    ((0, 0), (1, 3), (2, 6)),
    ((0, 0), (1, 4), (2, 8)),
    ((0, 0), (1, 5), (3, 5)),
    ((0, 0), (1, 6), (3, 4)),
    ((0, 0), (1, 7), (3, 3)),
    ((0, 0), (1, 8), (3, 2)),
    ((0, 0), (1, 9), (3, 1)),
    ((0, 0), (2, 1), (3, 6)),
    ((0, 0), (2, 3), (3, 7)),
    ((0, 0), (2, 5), (3, 8)),
    ((0, 0), (2, 7), (3, 9)),
    ((0, 0), (2, 9), (3, 0)),
    ((1, 0), (2, 5), (3, 1)),
    ((1, 0), (2, 6), (3, 3)),
    ((1, 0), (2, 7), (3, 5)),
    ((1, 0), (2, 8), (3, 7)),
    ((1, 0), (2, 9), (3, 9)),
)


def _example6() -> Code:
    pats = list(_EXAMPLE6_COLUMNS)
    for i in range(4):
        pats.append(((i, 0), (i, 1), (i, 2)))
        pats.append(((i, 0), (i, 3), (i, 6)))
    return Code(CodeParams(4, 10, 3), tuple(pats))


_FIXTURES = {
    "example1": lambda: Code(CodeParams(3, 5, 3), _EXAMPLE1),
    "example2": lambda: cac_from_generators(13, 3, (1, 3, 4)),
    "example3": lambda: DifferenceMatrix(13, _EXAMPLE3),
    "example4": lambda: Gbrd.from_rows(10, 3, _EXAMPLE4),
    "example6": _example6,
}

NAMES = tuple(_FIXTURES)


def catalog(name: str) -> Code | Cac | DifferenceMatrix | Gbrd:
    try:
        return _FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(NAMES)}") from None


def example1_patterns() -> tuple:
    """Patterns of fixture example1 in listing order (``S1`` .. ``S8``), not canonicalized."""
    return _EXAMPLE1
