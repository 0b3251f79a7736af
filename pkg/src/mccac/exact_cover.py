"""Algorithm X over a dict-of-sets matrix, with a node budget.

Used by the tight-CAC and GBRD searches, both of which are exact cover
problems: every item (a difference, or a row pair with a difference) must be
hit exactly once by the chosen candidates.
"""

from __future__ import annotations

import time
from typing import Hashable, Sequence

from .errors import BudgetExhausted


class ExactCover:
    """Exact cover instance.

    ``rows`` maps a candidate key to the items it covers.  Candidates are
    tried in the order of ``rows``; items are chosen by fewest remaining
    candidates (``branching="mrv"``) or smallest item (``branching="first"``),
    ties broken by item order.  Both rules are deterministic.
    """

    def __init__(self, items: Sequence[Hashable], rows: dict, branching: str = "mrv"):
        self.order = {item: n for n, item in enumerate(items)}
        self.rows = {key: list(covered) for key, covered in rows.items()}
        self.cols: dict = {item: set() for item in items}
        self.rank = {key: n for n, key in enumerate(rows)}
        for key, covered in self.rows.items():
            for item in covered:
                if item not in self.cols:
                    raise KeyError(f"row {key!r} covers unknown item {item!r}")
                self.cols[item].add(key)
        if branching not in ("mrv", "first"):
            raise ValueError(branching)
        self.branching = branching
        self.nodes = 0

    def solve(self, node_budget: int | None = None, time_limit: float | None = None):
        """First solution as a list of row keys, or ``None`` if none exists.

        Raises :class:`BudgetExhausted` if the budget runs out first.
        """
        self.nodes = 0
        deadline = None if time_limit is None else time.monotonic() + time_limit
        solution: list = []
        found = self._search(solution, node_budget, deadline)
        return list(found) if found is not None else None

    def _pick(self):
        if self.branching == "first":
            return min(self.cols, key=self.order.__getitem__)
        return min(self.cols, key=lambda c: (len(self.cols[c]), self.order[c]))

    def _search(self, solution, node_budget, deadline):
        if not self.cols:
            return solution
        self.nodes += 1
        if node_budget is not None and self.nodes > node_budget:
            raise BudgetExhausted("exact cover node budget exhausted", self.nodes)
        if deadline is not None and self.nodes % 256 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted("exact cover time limit reached", self.nodes)
        col = self._pick()
        for key in sorted(self.cols[col], key=self.rank.__getitem__):
            solution.append(key)
            removed = self._select(key)
            found = self._search(solution, node_budget, deadline)
            if found is not None:
                return found
            self._deselect(key, removed)
            solution.pop()
        return None

    def _select(self, key):
        removed = []
        for item in self.rows[key]:
            for other in self.cols[item]:
                for k in self.rows[other]:
                    if k != item:
                        self.cols[k].remove(other)
            removed.append(self.cols.pop(item))
        return removed

    def _deselect(self, key, removed):
        for item in reversed(self.rows[key]):
            self.cols[item] = removed.pop()
            for other in self.cols[item]:
                for k in self.rows[other]:
                    if k != item:
                        self.cols[k].add(other)
