"""Single-channel conflict-avoiding codes.

A CAC(L, w) is the ``M = 1`` case: each codeword is a ``w``-subset of
``Z_L`` and the difference sets of distinct codewords must be disjoint.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from ..errors import BudgetExhausted, HypothesisNotMet, NotPrimeError
from ..exact_cover import ExactCover


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def quadratic_residue(a: int, p: int) -> bool:
    """Euler's criterion: is ``a mod p`` a nonzero square mod the odd prime ``p``?"""
    if p == 2 or not is_prime(p):
        raise NotPrimeError(f"{p} is not an odd prime")
    a %= p
    return a != 0 and pow(a, (p - 1) // 2, p) == 1


def quadratic_nonresidue(a: int, p: int) -> bool:
    return a % p != 0 and not quadratic_residue(a, p)


def multiplicative_order(a: int, n: int) -> int:
    """Smallest ``e >= 1`` with ``a**e = 1 mod n``; needs ``gcd(a, n) = 1``."""
    if n < 2 or gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    e, x = 1, a % n
    while x != 1:
        x = (x * a) % n
        e += 1
    return e


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def tight_length_condition(L: int) -> bool:
    """Every prime factor ``p`` of ``L`` has ``p = 5 mod 8``, or ``p = 1 mod 8``
    with the order of 2 mod ``p`` divisible by 4."""
    if L < 2:
        return False
    for p in prime_factors(L):
        if p % 8 == 5:
            continue
        if p % 8 == 1 and multiplicative_order(2, p) % 4 == 0:
            continue
        return False
    return True


def cac_differences(pattern, L: int) -> frozenset:
    return frozenset((a - b) % L for a in pattern for b in pattern if a != b)


def canonical_times(pattern, L: int) -> tuple[int, ...]:
    return min(tuple(sorted((t + s) % L for t in pattern)) for s in range(L))


def equi_pattern(a: int, L: int, w: int) -> tuple[int, ...]:
    return tuple(sorted({(j * a) % L for j in range(w)}))


@dataclass(frozen=True)
class Cac:
    L: int
    w: int
    patterns: tuple[tuple[int, ...], ...]
    equi_difference: bool = False
    generators: tuple[int, ...] | None = None

    def __len__(self):
        return len(self.patterns)

    def difference_sets(self) -> list[frozenset]:
        return [cac_differences(p, self.L) for p in self.patterns]


def cac_from_generators(L: int, w: int, generators) -> Cac:
    gens = tuple(sorted(min(a % L, -a % L) for a in generators))
    pats = tuple(equi_pattern(a, L, w) for a in gens)
    return Cac(L, w, pats, True, gens)


def verify_cac(cac: Cac) -> bool:
    """Weight, distinctness and pairwise disjoint difference sets."""
    seen: set = set()
    for p in cac.patterns:
        if len(set(x % cac.L for x in p)) != cac.w or len(p) != cac.w:
            return False
        d = cac_differences(p, cac.L)
        if d & seen:
            return False
        seen |= d
    if cac.equi_difference:
        if cac.generators is None or len(cac.generators) != len(cac.patterns):
            return False
        for a, p in zip(cac.generators, cac.patterns):
            if canonical_times(p, cac.L) != canonical_times(equi_pattern(a, cac.L, cac.w), cac.L):
                return False
    return True


def is_tight(cac: Cac) -> bool:
    if not cac.equi_difference:
        return False
    union: set = set()
    for d in cac.difference_sets():
        union |= d
    return union == set(range(1, cac.L))


def search_equi_diff_tight_cac(
    L: int, w: int, budget: int | None = None, time_limit: float | None = None
) -> Cac | None:
    """Equi-difference CAC whose difference sets partition ``Z_L \\ {0}``.

    Returns ``None`` when the search tree is exhausted without a solution
    (non-existence is proven).  Raises :class:`BudgetExhausted` otherwise.
    Generators are tried in ascending order, always branching on the
    smallest difference not yet covered.
    """
    if w not in (3, 4):
        raise ValueError(f"tight CAC search supports w in (3, 4), got w={w}")
    if L < w:
        raise ValueError(f"need L >= w, got L={L}, w={w}")
    rows = {}
    for a in range(1, L // 2 + 1):
        pat = equi_pattern(a, L, w)
        if len(pat) == w:
            rows[a] = sorted(cac_differences(pat, L))
    ec = ExactCover(list(range(1, L)), rows, branching="first")
    gens = ec.solve(node_budget=budget, time_limit=time_limit)
    if gens is None:
        return None
    return cac_from_generators(L, w, gens)


def search_cac(
    L: int, w: int, k: int, budget: int | None = None, time_limit: float | None = None
) -> Cac | None:
    """Any CAC(L, w) with ``k`` codewords, by backtracking over difference packings.

    Returns ``None`` when no such code exists; raises :class:`BudgetExhausted`
    if the budget runs out first.
    """
    cands = sorted({canonical_times(c, L) for c in combinations(range(L), w)})
    diffs = [cac_differences(c, L) for c in cands]
    min_size = min((len(d) for d in diffs), default=0)
    by_elem: dict[int, list[int]] = {d: [] for d in range(1, L)}
    for n, d in enumerate(diffs):
        for x in d:
            by_elem[x].append(n)
    deadline = None if time_limit is None else time.monotonic() + time_limit
    nodes = 0
    chosen: list[int] = []

    def rec(uncovered: frozenset, need: int) -> bool:
        nonlocal nodes
        if need == 0:
            return True
        if need * min_size > len(uncovered):
            return False
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted("CAC search node budget exhausted", nodes)
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted("CAC search time limit reached", nodes)
        x = min(uncovered)
        for n in by_elem[x]:
            if diffs[n] <= uncovered:
                chosen.append(n)
                if rec(uncovered - diffs[n], need - 1):
                    return True
                chosen.pop()
        return rec(uncovered - {x}, need)

    if k == 0:
        return Cac(L, w, ())
    if not rec(frozenset(range(1, L)), k):
        return None
    pats = tuple(cands[n] for n in chosen)
    gens = []
    for p in pats:
        g = next(
            (a for a in range(1, L // 2 + 1) if canonical_times(equi_pattern(a, L, w), L) == p),
            None,
        )
        gens.append(g)
    if all(g is not None for g in gens):
        return cac_from_generators(L, w, gens)
    return Cac(L, w, pats)


def momihara_hypothesis(t: int) -> bool:
    """``t`` an odd prime with ``-1`` and ``-3`` both quadratic non-residues."""
    if t < 3 or not is_prime(t):
        return False
    return quadratic_nonresidue(-1, t) and quadratic_nonresidue(-3, t)


def momihara_cac(t: int, budget: int | None = None) -> Cac:
    """A CAC(2t, 3) with ``(t - 1)/2`` codewords, found by exact search."""
    if not momihara_hypothesis(t):
        raise HypothesisNotMet(
            f"t={t}: need an odd prime with -1 and -3 quadratic non-residues"
        )
    assert t % 12 == 11
    cac = search_cac(2 * t, 3, (t - 1) // 2, budget=budget)
    if cac is None or not verify_cac(cac):
        raise RuntimeError(f"no CAC(2*{t}, 3) of size {(t - 1) // 2} found; expected one to exist")
    return cac
