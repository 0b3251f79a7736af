"""Closed-form upper bounds on A(M, L, w) for weights 3 and 4.

Each bound is computed twice: once from the residue-class table and once
from the indicator-function expression that closes the counting argument.
The two are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import BoundNotApplicable


@dataclass(frozen=True)
class BoundResult:
    value: int
    formula_case: str
    w: int
    min_channels: int
    restricted: bool = False
    # Alternative evaluations worth printing next to the headline value.
    notes: dict[str, int] = field(default_factory=dict)


def _ind(cond: bool) -> int:
    return 1 if cond else 0


def _residues(*vals: int, mod: int) -> frozenset:
    out = set()
    for v in vals:
        out.add(v % mod)
        out.add(-v % mod)
    return frozenset(out)


# (residues of L mod 12, additive constant, label)
_W3_TABLE = (
    (frozenset({0, 6}), 6, "L = 0, 6 mod 12"),
    (_residues(3, mod=12), 3, "L = +-3 mod 12"),
    (_residues(2, 4, mod=12), 0, "L = +-2, +-4 mod 12"),
    (_residues(1, 5, mod=12), -3, "L = +-1, +-5 mod 12"),
)


def _floor_frac(M: int, x: int) -> int:
    """``floor(M * x / 12)`` in exact integer arithmetic."""
    return (M * x) // 12


def bound_weight3(M: int, L: int) -> BoundResult:
    """Table form of the weight-3 bound, cross-checked against the indicator form.

    For ``L = +-2 mod 12`` the result also carries ``notes["minus6"]``, the
    value obtained with constant ``-6`` in place of ``0``.  That variant is the
    one evaluated for the even-length optimal families; it is not what the
    table states, so it is only reported, never returned as ``value``.
    """
    if M < 3:
        raise BoundNotApplicable(f"weight-3 bound needs M >= 3, got M={M}")
    if L < 1:
        raise ValueError("L must be positive")
    r = L % 12
    for residues, c, label in _W3_TABLE:
        if r in residues:
            break
    value = _floor_frac(M, 2 * M * L + L + c)
    check = bound_weight3_indicator(M, L)
    if value != check:
        raise AssertionError(f"weight-3 bound paths disagree at M={M}, L={L}")
    notes = {}
    if r in (2, 10):
        notes["minus6"] = _floor_frac(M, 2 * M * L + L - 6)
    return BoundResult(value, label, 3, 3, False, notes)


def bound_weight3_indicator(M: int, L: int) -> int:
    """``floor(M/12 (2ML + L - 3 + 3[2|L] + 6[3|L]))``."""
    c = -3 + 3 * _ind(L % 2 == 0) + 6 * _ind(L % 3 == 0)
    return _floor_frac(M, 2 * M * L + L + c)


def j_indicator(L: int) -> int:
    """``[2|L] + 2[3|L] + 2[4|L] + 2[5|L]``."""
    if L < 1:
        raise ValueError("L must be positive")
    return (
        _ind(L % 2 == 0)
        + 2 * _ind(L % 3 == 0)
        + 2 * _ind(L % 4 == 0)
        + 2 * _ind(L % 5 == 0)
    )


_W4_TABLE = (
    (_residues(12, 20, 24, 30, mod=60), 8, "L = +-12, +-20, +-24, 30 mod 60"),
    (_residues(15, mod=60), 6, "L = +-15 mod 60"),
    (
        _residues(4, 6, 8, 10, 16, 18, 28, mod=60),
        4,
        "L = +-4, +-6, +-8, +-10, +-16, +-18, +-28 mod 60",
    ),
    (_residues(3, 5, 9, 21, 25, 27, mod=60), 2, "L = +-3, +-5, +-9, +-21, +-25, +-27 mod 60"),
    (_residues(2, 14, 22, 26, mod=60), 0, "L = +-2, +-14, +-22, +-26 mod 60"),
)


def bound_weight4(M: int, L: int) -> BoundResult:
    """Table form of the weight-4 bound, keyed on ``L mod 60``."""
    if M < 4:
        raise BoundNotApplicable(f"weight-4 bound needs M >= 4, got M={M}")
    if L < 1:
        raise ValueError("L must be positive")
    r = L % 60
    if r == 0:
        value = _floor_frac(M, M * L + L) + 1
        derived = bound_weight4_derived(M, L).value
        return BoundResult(value, "L = 0 mod 60", 4, 4, False, {"derived": derived})
    for residues, c, label in _W4_TABLE:
        if r in residues:
            return BoundResult(_floor_frac(M, M * L + L + c), label, 4, 4)
    assert gcd(L, 60) == 1, f"residue {r} mod 60 not covered"
    return BoundResult(_floor_frac(M, M * L + L - 2), "gcd(L, 60) = 1", 4, 4)


def bound_weight4_derived(M: int, L: int) -> BoundResult:
    """``floor(M/12 (ML + L - 2 + 2J))`` with ``J`` from :func:`j_indicator`."""
    if M < 4:
        raise BoundNotApplicable(f"weight-4 bound needs M >= 4, got M={M}")
    J = j_indicator(L)
    return BoundResult(_floor_frac(M, M * L + L - 2 + 2 * J), f"J = {J}", 4, 4)


def bound_restricted(M: int, L: int, w: int) -> BoundResult:
    """Bound when a node may send at most one packet per slot."""
    if w not in (3, 4):
        raise BoundNotApplicable(f"restricted bound needs w in (3, 4), got w={w}")
    if M < w:
        raise BoundNotApplicable(f"restricted bound needs M >= w, got M={M}, w={w}")
    if w == 3:
        c = 3 * _ind(L % 2 == 0) + 6 * _ind(L % 3 == 0)
        value = _floor_frac(M, (2 * M + 1) * (L - 1) + c)
        return BoundResult(value, f"(2M+1)(L-1) + {c}", 3, 3, True)
    J = j_indicator(L)
    value = _floor_frac(M, (M + 1) * (L - 1) + 2 * J)
    return BoundResult(value, f"(M+1)(L-1) + 2J, J = {J}", 4, 4, True)


def bound(M: int, L: int, w: int, restricted: bool = False) -> BoundResult:
    """Dispatch on weight; raises :class:`BoundNotApplicable` outside w in {3, 4}."""
    if restricted:
        return bound_restricted(M, L, w)
    if w == 3:
        return bound_weight3(M, L)
    if w == 4:
        return bound_weight4(M, L)
    raise BoundNotApplicable(f"no bound is known for w={w}")
