"""Exact search for the largest code on small instances.

A code is an independent set in the conflict graph whose vertices are the
canonical scheduling patterns and whose edges join patterns with a common
element in some cell of their difference arrays.  The solver is a bitset
branch and bound in the style of the MCQ/BBMC maximum-clique algorithms,
run on the compatibility (complement) graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .bounds import bound
from .core import (
    Code,
    CodeParams,
    SchedulingPattern,
    canonicalize,
    difference_elements,
    verify_code,
    verify_definitional,
)
from .errors import BoundNotApplicable, CorruptedOutcome, InstanceTooLarge, MccacError

DEFAULT_MAX_CELLS = 64
DEFAULT_MAX_WEIGHT = 4


def _is_canonical(entries: tuple, L: int) -> bool:
    # The least shift puts some entry of the lowest channel at time 0, so only
    # those shifts need comparing.
    m0 = entries[0][0]
    for m, t in entries:
        if m != m0:
            break
        cand = tuple(sorted((c, (s - t) % L) for c, s in entries))
        if cand < entries:
            return False
    return True


def enumerate_patterns(
    params: CodeParams,
    restricted: bool = False,
    max_cells: int = DEFAULT_MAX_CELLS,
    max_weight: int = DEFAULT_MAX_WEIGHT,
) -> list[SchedulingPattern]:
    """Canonical representatives of every weight-``w`` pattern, in sorted order."""
    M, L, w = params.M, params.L, params.w
    if M * L > max_cells or w > max_weight:
        raise InstanceTooLarge(
            f"M*L = {M * L} and w = {w} exceed the caps {max_cells} and {max_weight}"
        )
    out = []
    for m0 in range(M):
        rest = [(m0, t) for t in range(1, L)] + [(m, t) for m in range(m0 + 1, M) for t in range(L)]
        for tail in combinations(rest, w - 1):
            entries = ((m0, 0),) + tail
            if restricted and len({t for _, t in entries}) < w:
                continue
            if _is_canonical(entries, L):
                out.append(SchedulingPattern(entries))
    return out


@dataclass
class ConflictGraph:
    vertices: list[SchedulingPattern]
    adjacency: list[int]  # bitset of neighbours per vertex

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(len(self.vertices))
            for v in range(u + 1, len(self.vertices))
            if self.has_edge(u, v)
        ]

    def is_independent(self, idx) -> bool:
        idx = list(idx)
        return not any(self.has_edge(u, v) for u, v in combinations(idx, 2))


def build_conflict_graph(patterns, L: int) -> ConflictGraph:
    """Edge ``(u, v)`` iff the difference arrays of ``u`` and ``v`` share an element."""
    verts = [canonicalize(p, L) for p in patterns]
    if len(set(verts)) != len(verts):
        raise ValueError("patterns are not distinct up to time shift")
    owners: dict = {}
    for n, p in enumerate(verts):
        for elem in difference_elements(p, L):
            owners.setdefault(elem, []).append(n)
    adj = [0] * len(verts)
    for ns in owners.values():
        mask = 0
        for n in ns:
            mask |= 1 << n
        for n in ns:
            adj[n] |= mask
    for n in range(len(verts)):
        adj[n] &= ~(1 << n)
    return ConflictGraph(verts, adj)


@dataclass
class SearchOutcome:
    best_code: Code
    size: int
    status: str  # "optimal" or "lower-bound-only"
    nodes_explored: int
    elapsed: float
    proof: str = ""  # "exhaustive" or "bound" when optimal
    notes: dict = field(default_factory=dict)


def _color_sort(P: int, adj: list[int]) -> list[tuple[int, int]]:
    """Greedy partition of ``P`` into conflict cliques; returns (vertex, colour)
    pairs ordered by colour.  A colour class is a clique of the conflict graph,
    so an independent set meets each class at most once."""
    out = []
    U = P
    k = 0
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            out.append((v, k))
            U &= ~low
            Q &= adj[v]
            Q &= ~low
    return out


class _BudgetHit(Exception):
    pass


class _Done(Exception):
    pass


def max_code(
    params: CodeParams,
    restricted: bool = False,
    budget: int | None = None,
    time_limit: float | None = None,
    use_bounds: bool = True,
    seed_code: Code | None = None,
    use_construction: bool = True,
    max_cells: int = DEFAULT_MAX_CELLS,
    max_weight: int = DEFAULT_MAX_WEIGHT,
) -> SearchOutcome:
    """Largest code by branch and bound over the conflict graph.

    The incumbent starts from a greedy packing, improved by ``seed_code`` or
    by the composed construction when one is available.  With
    ``use_bounds`` the closed-form bound stops the search as soon as the
    incumbent reaches it; otherwise optimality needs full exhaustion.
    """
    start = time.monotonic()
    M, L, w = params.M, params.L, params.w
    pats = enumerate_patterns(params, restricted, max_cells, max_weight)
    graph = build_conflict_graph(pats, L)
    n = len(pats)
    # bit position order: descending conflict degree, ties by pattern order
    order = sorted(range(n), key=lambda v: (-graph.adjacency[v].bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * n
    for v in range(n):
        a = graph.adjacency[v]
        bits = 0
        while a:
            low = a & -a
            bits |= 1 << pos[low.bit_length() - 1]
            a &= ~low
        adj[pos[v]] = bits
    full = (1 << n) - 1
    compat = [full & ~adj[i] & ~(1 << i) for i in range(n)]

    # greedy incumbent: fewest conflicts first
    best: list[int] = []
    avail = full
    for i in reversed(range(n)):
        if avail >> i & 1:
            best.append(i)
            avail &= compat[i]
    seeds = []
    if seed_code is not None:
        seeds.append(seed_code)
    if use_construction and not restricted and w in (3, 4):
        try:
            from .constructions.compose import compose_optimal

            seeds.append(compose_optimal(M, L, w, budget=20_000)[0])
        except MccacError:
            pass
    index = {p: pos[k] for k, p in enumerate(graph.vertices)}
    for code in seeds:
        if code.params != params or not verify_code(code, restricted).valid:
            continue
        chosen = [index[p] for p in code.patterns if p in index]
        if len(chosen) == len(code) and len(chosen) > len(best):
            best = chosen

    upper = None
    if use_bounds:
        try:
            upper = bound(M, L, w, restricted).value
        except BoundNotApplicable:
            upper = None

    nodes = 0
    deadline = None if time_limit is None else start + time_limit
    state = {"best": list(best)}

    def expand(current: list[int], P: int):
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _BudgetHit
        if deadline is not None and nodes % 512 == 0 and time.monotonic() > deadline:
            raise _BudgetHit
        colored = _color_sort(P, adj)
        for v, k in reversed(colored):
            if len(current) + k <= len(state["best"]):
                return
            current.append(v)
            Pn = P & compat[v]
            if Pn:
                expand(current, Pn)
            elif len(current) > len(state["best"]):
                state["best"] = list(current)
                if upper is not None and len(current) >= upper:
                    raise _Done
            current.pop()
            P &= ~(1 << v)

    status, proof = "optimal", "exhaustive"
    if upper is not None and len(best) >= upper:
        proof = "bound"
    else:
        try:
            if n:
                expand([], full)
        except _Done:
            proof = "bound"
        except _BudgetHit:
            status, proof = "lower-bound-only", ""
    chosen = sorted(order[i] for i in state["best"])
    code = Code(params, tuple(graph.vertices[v] for v in chosen))
    return SearchOutcome(
        code,
        len(code),
        status,
        nodes,
        time.monotonic() - start,
        proof,
        {"vertices": n, "upper_bound": upper},
    )


@dataclass
class CertificateReport:
    size: int
    status: str
    valid_differences: bool
    valid_definitional: bool
    bound: int | None
    gap: int | None
    statement: str


def certify(outcome: SearchOutcome, restricted: bool = False) -> CertificateReport:
    """Re-verify the best code on both paths and relate its size to the bound."""
    code = outcome.best_code
    r1 = verify_code(code, restricted)
    r2 = verify_definitional(code, restricted)
    if not (r1.valid and r2.valid):
        raise CorruptedOutcome(f"search returned an invalid code of size {outcome.size}")
    M, L, w = code.params.M, code.params.L, code.params.w
    try:
        b = bound(M, L, w, restricted).value
    except BoundNotApplicable:
        b = None
    size = outcome.size
    if outcome.status == "optimal":
        gap = None if b is None else b - size
        statement = f"A = {size}"
        if b is not None:
            statement += f", bound {b}, gap {gap}"
    else:
        gap = None
        statement = f"A >= {size}" if b is None else f"{size} <= A <= {b}"
    return CertificateReport(size, outcome.status, r1.valid, r2.valid, b, gap, statement)
