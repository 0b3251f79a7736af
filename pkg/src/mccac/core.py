"""Scheduling patterns, arrays of differences and the two code verifiers.

A codeword of a multichannel conflict-avoiding code is an ``M x L`` zero-one
array.  It is stored here as a *scheduling pattern*: the set of
``(channel, time)`` positions holding a 1.  Time is cyclic (``Z_L``) and a
codeword is only defined up to a cyclic time shift, so every pattern held by
a :class:`Code` is kept in a canonical shift representative.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (
    ClassificationUnsupported,
    InvalidPairError,
    InvalidPatternError,
)

Entry = tuple[int, int]


@dataclass(frozen=True)
class CodeParams:
    """Number of channels ``M``, period ``L`` and weight ``w``."""

    M: int
    L: int
    w: int

    def __post_init__(self):
        for name in ("M", "L", "w"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.w > self.M * self.L:
            raise ValueError(f"weight {self.w} exceeds M*L = {self.M * self.L}")


@dataclass(frozen=True, order=True)
class SchedulingPattern:
    """Sorted tuple of distinct ``(channel, time)`` entries."""

    entries: tuple[Entry, ...]

    def __post_init__(self):
        entries = tuple(sorted((int(m), int(t)) for m, t in self.entries))
        if len(set(entries)) != len(entries):
            raise InvalidPatternError(f"duplicate entries in pattern {entries}")
        if any(m < 0 or t < 0 for m, t in entries):
            raise InvalidPatternError(f"negative index in pattern {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, entries: Iterable[Iterable[int]]) -> "SchedulingPattern":
        return cls(tuple(tuple(e) for e in entries))

    @property
    def weight(self) -> int:
        return len(self.entries)

    def channels(self) -> Counter:
        """Multiplicity of each occupied channel."""
        return Counter(m for m, _ in self.entries)

    def times(self, channel: int) -> list[int]:
        return [t for m, t in self.entries if m == channel]

    def shift(self, tau: int, L: int) -> "SchedulingPattern":
        return SchedulingPattern(tuple((m, (t + tau) % L) for m, t in self.entries))

    def to_array(self, M: int, L: int) -> np.ndarray:
        X = np.zeros((M, L), dtype=np.int64)
        for m, t in self.entries:
            X[m, t] = 1
        return X

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "{" + ", ".join(f"({m},{t})" for m, t in self.entries) + "}"


def as_pattern(obj) -> SchedulingPattern:
    if isinstance(obj, SchedulingPattern):
        return obj
    return SchedulingPattern.of(obj)


def canonicalize(S, L: int) -> SchedulingPattern:
    """Lexicographically least of the ``L`` cyclic time shifts of ``S``."""
    S = as_pattern(S)
    if not S.entries:
        raise InvalidPatternError("cannot canonicalize an empty pattern")
    best = None
    for tau in range(L):
        cand = tuple(sorted((m, (t + tau) % L) for m, t in S.entries))
        if best is None or cand < best:
            best = cand
    return SchedulingPattern(best)


def orbit_size(S, L: int) -> int:
    """Number of distinct time shifts of ``S``."""
    S = as_pattern(S)
    base = set(S.entries)
    for period in range(1, L + 1):
        if L % period == 0 and {(m, (t + period) % L) for m, t in base} == base:
            return period
    return L


def _check_channel(i: int, M: int | None):
    if i < 0 or (M is not None and i >= M):
        raise IndexError(f"channel index {i} out of range for M={M}")


def difference_set(S, i1: int, i2: int, L: int, M: int | None = None) -> frozenset:
    """``{t1 - t2 mod L : (i1,t1), (i2,t2) in S}``, without 0 when ``i1 == i2``."""
    _check_channel(i1, M)
    _check_channel(i2, M)
    S = as_pattern(S)
    first = [t for m, t in S.entries if m == i1]
    second = [t for m, t in S.entries if m == i2]
    out = {(t1 - t2) % L for t1 in first for t2 in second}
    if i1 == i2:
        out.discard(0)
    return frozenset(out)


@dataclass(frozen=True)
class DifferenceArray:
    """``M x M`` grid of subsets of ``Z_L``."""

    M: int
    L: int
    cells: tuple[tuple[frozenset, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> frozenset:
        i1, i2 = key
        return self.cells[i1][i2]

    def nonempty(self) -> dict[tuple[int, int], frozenset]:
        return {
            (i1, i2): cell
            for i1, row in enumerate(self.cells)
            for i2, cell in enumerate(row)
            if cell
        }

    def total_size(self) -> int:
        return sum(len(cell) for row in self.cells for cell in row)

    def intersection(self, other: "DifferenceArray") -> "DifferenceArray":
        return DifferenceArray(
            self.M,
            self.L,
            tuple(
                tuple(a & b for a, b in zip(ra, rb))
                for ra, rb in zip(self.cells, other.cells)
            ),
        )

    def is_disjoint(self, other: "DifferenceArray") -> bool:
        return all(
            not (a & b)
            for ra, rb in zip(self.cells, other.cells)
            for a, b in zip(ra, rb)
        )


def difference_array(S, params: CodeParams) -> DifferenceArray:
    S = as_pattern(S)
    M, L = params.M, params.L
    for m, t in S.entries:
        _check_channel(m, M)
        if t >= L:
            raise InvalidPatternError(f"time index {t} out of range for L={L}")
    cells = [[set() for _ in range(M)] for _ in range(M)]
    for (m1, t1), (m2, t2) in _ordered_pairs(S.entries):
        cells[m1][m2].add((t1 - t2) % L)
    return DifferenceArray(M, L, tuple(tuple(frozenset(c) for c in row) for row in cells))


def _ordered_pairs(entries):
    for a in entries:
        for b in entries:
            if a != b:
                yield a, b


def difference_profile(S, params: CodeParams) -> dict[tuple[int, int], int]:
    D = difference_array(S, params)
    return {
        (i1, i2): len(D[i1, i2]) for i1 in range(params.M) for i2 in range(params.M)
    }


def difference_elements(S, L: int) -> set[tuple[int, int, int]]:
    """Flat form of the array of differences: ``{(i1, i2, d)}``.

    Two patterns may share a code iff their flat forms are disjoint.
    """
    S = as_pattern(S)
    return {(m1, m2, (t1 - t2) % L) for (m1, t1), (m2, t2) in _ordered_pairs(S.entries)}


# --- pattern types ---------------------------------------------------------

_TYPE_TAGS = {
    3: {(3,): "W3-I", (1, 1, 1): "W3-II", (2, 1): "W3-III"},
    4: {
        (4,): "W4-I",
        (1, 1, 1, 1): "W4-II",
        (3, 1): "W4-III",
        (2, 2): "W4-IV",
        (2, 1, 1): "W4-V",
    },
}


@dataclass(frozen=True)
class PatternType:
    tag: str
    partition: tuple[int, ...]


def classify(S) -> PatternType:
    """Type of a weight-3 or weight-4 pattern from its channel occupancy."""
    S = as_pattern(S)
    w = S.weight
    if w not in _TYPE_TAGS:
        raise ClassificationUnsupported(f"classification needs w in (3, 4), got w={w}")
    partition = tuple(sorted(S.channels().values(), reverse=True))
    return PatternType(_TYPE_TAGS[w][partition], partition)


def _shift_equal(times, target, L):
    times = {t % L for t in times}
    target = {t % L for t in target}
    return any({(t + tau) % L for t in target} == times for tau in range(L))


def is_equi_difference(times, L: int) -> bool:
    """True if the time set is ``{x, x+a, ..., x+(k-1)a}`` for some ``x, a``."""
    times = sorted({t % L for t in times})
    k = len(times)
    if k < 2:
        return False
    x = times[0]
    for y in times[1:]:
        a = (y - x) % L
        for start in times:
            if {(start + j * a) % L for j in range(k)} == set(times):
                return True
    return False


def same_channel_size_w3(times, L: int) -> int:
    """Size of ``D_S(m,m)`` for three packets on one channel, from the case table.

    Computed by pattern matching rather than by forming differences, so it can
    be cross-checked against :func:`difference_set`.
    """
    times = [t % L for t in times]
    if len(set(times)) != 3:
        raise InvalidPatternError("need three distinct time indices")
    if L % 3 == 0 and _shift_equal(times, (0, L // 3, 2 * L // 3), L):
        return 2
    if L % 4 == 0 and _shift_equal(times, (0, L // 4, L // 2), L):
        return 3
    has_half = L % 2 == 0 and any((a - b) % L == L // 2 for a in times for b in times)
    if has_half:
        return 5
    if not is_equi_difference(times, L):
        return 6
    return 4


def type3_diagonal_size(t1: int, t2: int, L: int) -> int:
    """``|D_S(m1,m1)|`` for a weight-3 pattern with two packets on ``m1``."""
    return 1 if L % 2 == 0 and (t1 - t2) % L == L // 2 else 2


def w4_small_family(times, L: int) -> str | None:
    """Which reduced-difference family a 4-packet single-channel set belongs to.

    Returns ``"a"`` (quarter points, 3 differences), ``"b"`` (four of the fifth
    points, 4 differences), ``"c"`` (invariant under a half-period shift,
    5 differences), ``"f"`` (a shift of ``{0, L/6, L/3, L/2}`` or
    ``{0, L/6, L/3, 2L/3}``, 5 differences) or ``None`` when the set has at
    least 6 differences.
    """
    times = {t % L for t in times}
    if len(times) != 4:
        raise InvalidPatternError("need four distinct time indices")
    if L % 4 == 0 and _shift_equal(times, (0, L // 4, L // 2, 3 * L // 4), L):
        return "a"
    if L % 5 == 0:
        x = min(times)
        if all((t - x) % (L // 5) == 0 for t in times):
            return "b"
    if L % 2 == 0 and {(t + L // 2) % L for t in times} == times:
        return "c"
    if L % 6 == 0:
        s = L // 6
        if _shift_equal(times, (0, s, 2 * s, 3 * s), L) or _shift_equal(
            times, (0, s, 2 * s, 4 * s), L
        ):
            return "f"
    return None


W4_FAMILY_SIZES = {"a": 3, "b": 4, "c": 5, "f": 5}


# --- codes -----------------------------------------------------------------


@dataclass(frozen=True)
class Code:
    """An MC-CAC candidate: parameters plus canonical scheduling patterns.

    Index ranges are enforced here.  Weight mismatches and duplicated
    codewords are accepted so that :func:`verify_code` can report them.
    """

    params: CodeParams
    patterns: tuple[SchedulingPattern, ...] = ()

    def __post_init__(self):
        M, L = self.params.M, self.params.L
        canon = []
        for p in self.patterns:
            p = as_pattern(p)
            for m, t in p.entries:
                if m >= M or t >= L:
                    raise InvalidPatternError(
                        f"entry ({m},{t}) out of range for M={M}, L={L}"
                    )
            canon.append(canonicalize(p, L))
        object.__setattr__(self, "patterns", tuple(canon))

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def index_of(self, S) -> int:
        """Position of the codeword equivalent to ``S``; ``ValueError`` if absent."""
        return self.patterns.index(canonicalize(S, self.params.L))

    def arrays(self) -> np.ndarray:
        """Stack of 0-1 arrays, shape ``(K, M, L)``."""
        M, L = self.params.M, self.params.L
        out = np.zeros((len(self.patterns), M, L), dtype=np.int64)
        for k, p in enumerate(self.patterns):
            for m, t in p.entries:
                out[k, m, t] = 1
        return out


class Conflict(NamedTuple):
    k: int
    l: int
    channels: tuple[int, int] | None
    difference: int


@dataclass
class VerificationReport:
    valid: bool
    weight_violations: list[int] = field(default_factory=list)
    conflicts: list[Conflict] = field(default_factory=list)
    slot_violations: list[int] = field(default_factory=list)
    method: str = "differences"


def _slot_violations(code: Code) -> list[int]:
    return [
        k
        for k, p in enumerate(code.patterns)
        if len({t for _, t in p.entries}) != len(p.entries)
    ]


def verify_code(code: Code, restricted: bool = False) -> VerificationReport:
    """Check constant weight and entry-wise disjointness of difference arrays.

    Conflicts are listed for channel pairs ``i1 <= i2`` only; the mirrored
    pair carries the negated difference and adds no information.
    """
    w, L = code.params.w, code.params.L
    weight_violations = [k for k, p in enumerate(code.patterns) if p.weight != w]
    owners = defaultdict(list)
    for k, p in enumerate(code.patterns):
        for i1, i2, d in difference_elements(p, L):
            if i1 <= i2:
                owners[(i1, i2, d)].append(k)
    conflicts = []
    for (i1, i2, d), ks in sorted(owners.items()):
        for k, l in combinations(ks, 2):
            conflicts.append(Conflict(k, l, (i1, i2), d))
    conflicts.sort()
    slots = _slot_violations(code) if restricted else []
    valid = not (weight_violations or conflicts or slots)
    return VerificationReport(valid, weight_violations, conflicts, slots, "differences")


def cross_correlation(code: Code, k: int, l: int, tau: int) -> int:
    """``sum_{i,j} X_k(i,j) X_l(i, j + tau mod L)``."""
    if k == l:
        raise InvalidPairError("cross-correlation needs two distinct codewords")
    M, L = code.params.M, code.params.L
    Xk = code.patterns[k].to_array(M, L)
    Xl = code.patterns[l].to_array(M, L)
    return int((Xk * np.roll(Xl, -tau, axis=1)).sum())


def verify_definitional(code: Code, restricted: bool = False) -> VerificationReport:
    """Verifier working directly on 0-1 arrays and all cyclic shifts.

    Conflicts carry ``channels=None`` and the offending shift ``tau`` in
    ``difference``.
    """
    M, L, w = code.params.M, code.params.L, code.params.w
    X = code.arrays()
    weight_violations = [k for k in range(len(X)) if int(X[k].sum()) != w]
    # rolled[l, tau] = X_l shifted so that entry (i, j) holds X_l(i, j + tau)
    idx = (np.arange(L)[:, None] + np.arange(L)[None, :]) % L
    rolled = X[:, :, idx].transpose(0, 2, 1, 3)  # (K, tau, M, L)
    conflicts = []
    for k in range(len(X)):
        for l in range(k + 1, len(X)):
            corr = (X[k][None] * rolled[l]).sum(axis=(1, 2))
            for tau in np.nonzero(corr > 1)[0]:
                conflicts.append(Conflict(k, l, None, int(tau)))
    slots = []
    if restricted:
        slots = [k for k in range(len(X)) if int(X[k].sum(axis=0).max()) > 1]
    valid = not (weight_violations or conflicts or slots)
    return VerificationReport(valid, weight_violations, conflicts, slots, "cross-correlation")


# --- census ----------------------------------------------------------------


def census_key(S) -> tuple[str, tuple]:
    """Census bucket of a pattern, with the channel tuple ordered as in the bound proofs.

    W3-III: ``(doubled, single)``.  W4-III: ``(single, tripled)``.
    W4-V: ``(doubled, other, other)`` with the last two ascending.
    Every other type lists its channels ascending.
    """
    S = as_pattern(S)
    ptype = classify(S)
    counts = S.channels()
    if ptype.tag == "W3-III":
        doubled = next(m for m, c in counts.items() if c == 2)
        single = next(m for m, c in counts.items() if c == 1)
        return ptype.tag, (doubled, single)
    if ptype.tag == "W4-III":
        single = next(m for m, c in counts.items() if c == 1)
        tripled = next(m for m, c in counts.items() if c == 3)
        return ptype.tag, (single, tripled)
    if ptype.tag == "W4-V":
        doubled = next(m for m, c in counts.items() if c == 2)
        rest = tuple(sorted(m for m, c in counts.items() if c == 1))
        return ptype.tag, (doubled,) + rest
    return ptype.tag, tuple(sorted(counts))


def census_keys(M: int, w: int) -> list[tuple[str, tuple]]:
    chans = range(M)
    keys = []
    if w == 3:
        keys += [("W3-I", (i,)) for i in chans]
        keys += [("W3-III", (i, j)) for i in chans for j in chans if i != j]
        keys += [("W3-II", A) for A in combinations(chans, 3)]
    elif w == 4:
        keys += [("W4-I", (i,)) for i in chans]
        keys += [("W4-II", B) for B in combinations(chans, 4)]
        keys += [("W4-III", (i, j)) for i in chans for j in chans if i != j]
        keys += [("W4-IV", A) for A in combinations(chans, 2)]
        keys += [
            ("W4-V", (i,) + A)
            for i in chans
            for A in combinations([c for c in chans if c != i], 2)
        ]
    else:
        raise ClassificationUnsupported(f"census needs w in (3, 4), got w={w}")
    return keys


def census_label(key: tuple[str, tuple]) -> str:
    """Subscript notation used by the counting arguments, e.g. ``N_{0,1,2}``."""
    tag, ch = key
    if tag in ("W3-I", "W4-I"):
        return f"N_{ch[0]}"
    if tag in ("W3-III", "W4-III"):
        return f"N_{ch[0]},{ch[1]}"
    if tag in ("W3-II", "W4-II", "W4-IV"):
        return "N_{" + ",".join(map(str, ch)) + "}"
    return f"N_{ch[0]},{{{ch[1]},{ch[2]}}}"


def type_census(code: Code) -> dict[tuple[str, tuple], int]:
    """Codeword counts per type and channel set; every possible key is present."""
    counts = dict.fromkeys(census_keys(code.params.M, code.params.w), 0)
    for p in code.patterns:
        counts[census_key(p)] += 1
    return counts


def census_totals(census: dict) -> dict[str, int]:
    """Sum the census over channels, per type tag."""
    out: dict[str, int] = defaultdict(int)
    for (tag, _), n in census.items():
        out[tag] += n
    return dict(out)
