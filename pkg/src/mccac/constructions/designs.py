"""Difference matrices and generalized Bhaskar Rao designs over Z_L."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from ..errors import NotPrimeError, ShapeInfeasible
from ..exact_cover import ExactCover
from .cac import is_prime, prime_factors


@dataclass(frozen=True)
class DifferenceMatrix:
    L: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)


def difference_matrix_prime(k: int, p: int) -> DifferenceMatrix:
    """The first ``k`` rows of the multiplication table mod ``p``."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if not 1 <= k <= p:
        raise ValueError(f"need 1 <= k <= p, got k={k}, p={p}")
    return difference_matrix_cyclic(k, p)


def difference_matrix_cyclic(k: int, L: int) -> DifferenceMatrix:
    """Rows ``i*j mod L`` for ``i < k``.

    Row ``i`` minus row ``i'`` is ``(i - i') * j``, a permutation of ``Z_L``
    whenever ``i - i'`` is a unit, i.e. when every prime factor of ``L`` is at
    least ``k``.
    """
    if k < 1 or L < 1:
        raise ValueError("k and L must be positive")
    if k > 1 and L > 1 and min(prime_factors(L)) < k:
        raise ValueError(f"some prime factor of {L} is below {k}")
    return DifferenceMatrix(L, tuple(tuple((i * j) % L for j in range(L)) for i in range(k)))


def verify_difference_matrix(X: DifferenceMatrix) -> bool:
    L = X.L
    if any(len(r) != L for r in X.rows):
        return False
    for r1, r2 in combinations(X.rows, 2):
        if sorted((a - b) % L for a, b in zip(r1, r2)) != list(range(L)):
            return False
    return True


Cell = Optional[int]


@dataclass(frozen=True)
class Gbrd:
    """``M x b`` array over ``Z_L`` stored column by column; ``None`` is an empty cell."""

    M: int
    L: int
    w: int
    columns: tuple[tuple[Cell, ...], ...]

    @property
    def b(self) -> int:
        return len(self.columns)

    @classmethod
    def from_rows(cls, L: int, w: int, rows: Sequence[Sequence[Cell]]) -> "Gbrd":
        M = len(rows)
        cols = tuple(tuple(rows[i][j] for i in range(M)) for j in range(len(rows[0])))
        return cls(M, L, w, cols)

    def rows(self) -> tuple[tuple[Cell, ...], ...]:
        return tuple(tuple(c[i] for c in self.columns) for i in range(self.M))

    def column_patterns(self) -> list[list[tuple[int, int]]]:
        """Each column read as a scheduling pattern ``{(row, value)}``."""
        return [[(i, v) for i, v in enumerate(col) if v is not None] for col in self.columns]

    def format(self) -> str:
        width = len(str(self.L - 1))
        return "\n".join(
            " ".join("." * width if v is None else str(v).rjust(width) for v in row)
            for row in self.rows()
        )


def gbrd_column_count(M: int, L: int, w: int) -> int:
    num = L * M * (M - 1)
    den = w * (w - 1)
    if num % den:
        raise ShapeInfeasible(f"L*M*(M-1) = {num} is not divisible by w(w-1) = {den}")
    return num // den


def support_counts_feasible(M: int, L: int, w: int) -> bool:
    """Can column supports be counted so that every row pair is covered ``L`` times?

    Necessary for a GBRD: solves for nonnegative integers ``x_T``, one per
    ``w``-subset ``T`` of rows, with ``sum_{T > {i, j}} x_T = L`` for all pairs.
    """
    if not 2 <= w <= M:
        return False
    if (L * M * (M - 1)) % (w * (w - 1)) or ((M - 1) * L) % (w - 1):
        return False
    supports = list(combinations(range(M), w))
    pairs = list(combinations(range(M), 2))
    A = np.array([[1.0 if set(p) <= set(T) else 0.0 for T in supports] for p in pairs])
    res = milp(
        c=np.zeros(len(supports)),
        constraints=LinearConstraint(A, L, L),
        integrality=np.ones(len(supports)),
        bounds=Bounds(0, L),
    )
    return res.status == 0


def verify_gbrd(G: Gbrd, L: int | None = None, w: int | None = None) -> bool:
    L = G.L if L is None else L
    w = G.w if w is None else w
    try:
        b = gbrd_column_count(G.M, L, w)
    except ShapeInfeasible:
        return False
    if G.b != b or w > G.M:
        return False
    for col in G.columns:
        if len(col) != G.M or sum(v is not None for v in col) != w:
            return False
        if any(v is not None and not 0 <= v < L for v in col):
            return False
    for i1, i2 in combinations(range(G.M), 2):
        diffs = sorted(
            (c[i1] - c[i2]) % L for c in G.columns if c[i1] is not None and c[i2] is not None
        )
        if diffs != list(range(L)):
            return False
    return True


def gbrd_from_difference_matrix(X: DifferenceMatrix) -> Gbrd:
    """A difference matrix is the full (``M = w``) case of a GBRD."""
    return Gbrd.from_rows(X.L, X.k, X.rows)


def gbrd_4x4t(t: int) -> Gbrd:
    """Explicit ``4 x 4t`` GBRD over ``Z_{2t}`` with three filled cells per column."""
    if t < 1:
        raise ValueError("t must be positive")
    L = 2 * t
    cols = []
    for j in range(t):
        cols.append((0, j % L, (2 * j) % L, None))
    for j in range(t):
        cols.append((0, (t + j) % L, None, (t - j) % L))
    for j in range(t):
        cols.append((0, None, (2 * j + 1) % L, (t + j + 1) % L))
    for j in range(t):
        cols.append((None, 0, (t + j) % L, (2 * j + 1) % L))
    return Gbrd(4, L, 3, tuple(cols))


def search_gbrd(
    M: int, L: int, w: int, budget: int | None = None, time_limit: float | None = None
) -> Gbrd | None:
    """GBRD by exact cover over (row pair, difference) items.

    Each column is normalized so its first filled cell is 0, which loses
    nothing because adding a constant to a column keeps its differences.
    Returns ``None`` when no GBRD exists (either the support counts are
    infeasible or the cover search is exhausted); raises ``BudgetExhausted``
    when the budget runs out first.
    """
    if not 2 <= w <= M:
        raise ShapeInfeasible(f"need 2 <= w <= M, got w={w}, M={M}")
    gbrd_column_count(M, L, w)
    if not support_counts_feasible(M, L, w):
        return None
    items = [(i1, i2, d) for i1, i2 in combinations(range(M), 2) for d in range(L)]
    rows = {}
    for support in combinations(range(M), w):
        for tail in product(range(L), repeat=w - 1):
            vals = (0,) + tail
            covered = [
                (support[a], support[b], (vals[a] - vals[b]) % L)
                for a, b in combinations(range(w), 2)
            ]
            rows[(support, vals)] = covered
    ec = ExactCover(items, rows, branching="mrv")
    chosen = ec.solve(node_budget=budget, time_limit=time_limit)
    if chosen is None:
        return None
    cols = []
    for support, vals in sorted(chosen):
        col: list[Cell] = [None] * M
        for r, v in zip(support, vals):
            col[r] = v
        cols.append(tuple(col))
    return Gbrd(M, L, w, tuple(cols))
