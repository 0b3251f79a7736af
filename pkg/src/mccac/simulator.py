"""Slot-synchronous multichannel collision channel without feedback.

Each node repeats its scheduling pattern with period ``L`` from a private
offset.  A packet gets through only when it is alone in its (slot, channel);
otherwise every packet in that cell is lost.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import Code, SchedulingPattern, as_pattern, canonicalize, verify_code
from .errors import GuaranteeNotClaimed, UnknownCodeword


@dataclass(frozen=True)
class NodeConfig:
    pattern: SchedulingPattern
    offset: int = 0
    activation_slot: int = 0
    deactivation_slot: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "pattern", as_pattern(self.pattern))
        if self.activation_slot < 0:
            raise ValueError("activation_slot must be nonnegative")
        if self.deactivation_slot is not None and self.deactivation_slot <= self.activation_slot:
            raise ValueError("activation_slot must precede deactivation_slot")


@dataclass
class TransmissionLog:
    """Dense record: ``tx[n, s, i]`` is true when node ``n`` sends on channel ``i`` in slot ``s``."""

    horizon: int
    L: int
    nodes: list[NodeConfig]
    tx: np.ndarray  # (N, horizon, M) bool
    success: np.ndarray  # (N, horizon, M) bool

    @property
    def load(self) -> np.ndarray:
        """Number of transmitting nodes per (slot, channel)."""
        return self.tx.sum(axis=0)

    def active_interval(self, n: int) -> tuple[int, int]:
        node = self.nodes[n]
        end = self.horizon if node.deactivation_slot is None else min(node.deactivation_slot, self.horizon)
        return node.activation_slot, end

    def events(self) -> dict[tuple[int, int], frozenset]:
        out = {}
        for s, i in zip(*np.nonzero(self.tx.any(axis=0))):
            out[(int(s), int(i))] = frozenset(int(n) for n in np.nonzero(self.tx[:, s, i])[0])
        return out

    def outcomes(self) -> dict[tuple[int, int, int], str]:
        out = {}
        for n, s, i in zip(*np.nonzero(self.tx)):
            out[(int(s), int(i), int(n))] = "success" if self.success[n, s, i] else "collision"
        return out

    def collisions(self) -> int:
        """Number of (slot, channel) cells holding two or more packets."""
        return int((self.load >= 2).sum())

    def max_packets_per_slot(self) -> int:
        return int(self.tx.sum(axis=2).max()) if self.tx.size else 0


def simulate(code: Code, nodes: list[NodeConfig], horizon: int) -> TransmissionLog:
    M, L = code.params.M, code.params.L
    if horizon < L:
        raise ValueError(f"horizon {horizon} is shorter than the period {L}")
    known = set(code.patterns)
    tx = np.zeros((len(nodes), horizon, M), dtype=bool)
    slots = np.arange(horizon)
    for n, node in enumerate(nodes):
        if canonicalize(node.pattern, L) not in known:
            raise UnknownCodeword(f"node {n} uses a pattern outside the code: {node.pattern}")
        end = horizon if node.deactivation_slot is None else min(node.deactivation_slot, horizon)
        active = (slots >= node.activation_slot) & (slots < end)
        rel = (slots - node.offset) % L
        for i, t in node.pattern.entries:
            tx[n, :, i] |= active & (rel == t)
    load = tx.sum(axis=0)
    success = tx & (load == 1)[None]
    return TransmissionLog(horizon, L, list(nodes), tx, success)


@dataclass
class GuaranteeReport:
    verdict: str  # "PASS", "FAIL" or "NOT_CLAIMED"
    violations: list[tuple[int, int]] = field(default_factory=list)  # (node, window start)
    worst_delay: int | None = None
    delays: dict[int, int] = field(default_factory=dict)  # node -> worst delay
    window_count: int = 0
    delay_sum: int = 0


def _success_delays(ok: np.ndarray, start: int, end: int, L: int) -> np.ndarray:
    """Delay to the first success for each window start in ``[start, end - L]``."""
    H = len(ok)
    idx = np.where(ok, np.arange(H), 2 * H)
    nxt = np.minimum.accumulate(idx[::-1])[::-1]
    starts = np.arange(start, end - L + 1)
    return nxt[starts] - starts


def check_guarantee(log: TransmissionLog, code: Code, active_count_cap: int | None = None) -> GuaranteeReport:
    """Every active node succeeds at least once in every ``L``-slot window inside its activity."""
    L = code.params.L
    cap = code.params.w if active_count_cap is None else active_count_cap
    active = np.zeros(log.horizon, dtype=int)
    for n in range(len(log.nodes)):
        a, b = log.active_interval(n)
        active[a:b] += 1
    if len(log.nodes) and active.max() > cap:
        return GuaranteeReport("NOT_CLAIMED")
    report = GuaranteeReport("PASS")
    ok_slots = log.success.any(axis=2)
    for n in range(len(log.nodes)):
        a, b = log.active_interval(n)
        if b - a < L:
            continue
        delays = _success_delays(ok_slots[n], a, b, L)
        bad = np.nonzero(delays >= L)[0]
        report.violations.extend((n, int(a + k)) for k in bad)
        worst = int(delays.max())
        report.delays[n] = worst
        report.window_count += len(delays)
        report.delay_sum += int(delays.sum())
        if report.worst_delay is None or worst > report.worst_delay:
            report.worst_delay = worst
    if report.violations:
        report.verdict = "FAIL"
    return report


def pairwise_clashes(log: TransmissionLog) -> dict[tuple[int, int], int]:
    """Most cells any two nodes share within one ``L``-slot window of common activity."""
    L = log.L
    out = {}
    for u, v in combinations(range(len(log.nodes)), 2):
        a = max(log.active_interval(u)[0], log.active_interval(v)[0])
        b = min(log.active_interval(u)[1], log.active_interval(v)[1])
        if b - a < L:
            out[(u, v)] = 0
            continue
        both = (log.tx[u] & log.tx[v]).sum(axis=1)[a:b]
        csum = np.concatenate(([0], np.cumsum(both)))
        out[(u, v)] = int((csum[L:] - csum[:-L]).max())
    return out


@dataclass
class TrialSummary:
    seed: int
    trials: int
    active_count: int
    horizon: int
    passes: int = 0
    fails: int = 0
    failing_trials: list[int] = field(default_factory=list)
    worst_delay: int | None = None
    mean_delay: float | None = None
    restricted_breaches: int = 0


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def _run_trials(code: Code, seed: int, indices, active_count: int, horizon: int, restricted: bool):
    K, L = len(code), code.params.L
    rows = []
    for trial in indices:
        rng = _trial_rng(seed, trial)
        chosen = rng.choice(K, size=active_count, replace=False)
        offsets = rng.integers(0, L, size=active_count)
        nodes = [NodeConfig(code.patterns[k], int(o)) for k, o in zip(chosen, offsets)]
        log = simulate(code, nodes, horizon)
        rep = check_guarantee(log, code)
        breach = restricted and log.max_packets_per_slot() > 1
        rows.append((trial, rep.verdict, rep.worst_delay, rep.window_count, rep.delay_sum, breach))
    return rows


def random_trials(
    code: Code,
    trials: int,
    seed: int,
    active_count: int | None = None,
    restricted: bool = False,
    jobs: int = 1,
) -> TrialSummary:
    """Seeded random activity patterns over a horizon of ``10 L`` slots.

    Trial ``i`` draws from a Philox stream keyed by ``(seed, i)``, so results
    do not depend on ``jobs``.
    """
    w, L = code.params.w, code.params.L
    k = w if active_count is None else active_count
    if k > w:
        raise GuaranteeNotClaimed(f"{k} active nodes exceed the weight {w}")
    if k > len(code):
        raise ValueError(f"cannot activate {k} of {len(code)} codewords")
    if not verify_code(code, restricted).valid:
        raise ValueError("random trials need a valid code")
    horizon = 10 * L
    summary = TrialSummary(seed, trials, k, horizon)
    if trials <= 0 or k == 0:
        return summary
    if jobs > 1:
        chunks = [list(range(j, trials, jobs)) for j in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _run_trials, [code] * jobs, [seed] * jobs, chunks, [k] * jobs, [horizon] * jobs, [restricted] * jobs
            )
            rows = sorted(r for part in parts for r in part)
    else:
        rows = _run_trials(code, seed, range(trials), k, horizon, restricted)
    windows = delay_total = 0
    for trial, verdict, worst, count, dsum, breach in rows:
        if verdict == "PASS" and not breach:
            summary.passes += 1
        else:
            summary.fails += 1
            summary.failing_trials.append(trial)
        summary.restricted_breaches += int(breach)
        if worst is not None and (summary.worst_delay is None or worst > summary.worst_delay):
            summary.worst_delay = worst
        windows += count
        delay_total += dsum
    if windows:
        summary.mean_delay = delay_total / windows
    return summary
