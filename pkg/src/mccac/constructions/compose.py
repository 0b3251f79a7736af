"""Optimal multichannel codes from a GBRD plus a tight single-channel CAC.

Columns of the GBRD become codewords that touch ``w`` distinct channels; each
CAC codeword is copied onto every channel.  The exceptional CAC codewords
(fewer than ``2(w-1)`` differences) decide which count formula applies.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bounds import bound
from ..core import Code, CodeParams, verify_code
from ..errors import (
    BoundNotApplicable,
    BudgetExhausted,
    ConstructionUnavailable,
    CorruptedOutcome,
    HypothesisNotMet,
    ShapeInfeasible,
)
from .cac import (
    Cac,
    cac_differences,
    canonical_times,
    equi_pattern,
    is_tight,
    momihara_cac,
    momihara_hypothesis,
    prime_factors,
    search_cac,
    search_equi_diff_tight_cac,
)
from .designs import (
    Gbrd,
    difference_matrix_cyclic,
    gbrd_4x4t,
    gbrd_from_difference_matrix,
    search_gbrd,
    verify_gbrd,
)


def compose(gbrd: Gbrd, cac: Cac) -> Code:
    """GBRD columns followed by ``M`` per-channel copies of each CAC codeword."""
    if gbrd.L != cac.L or gbrd.w != cac.w:
        raise ValueError("GBRD and CAC disagree on length or weight")
    M, L, w = gbrd.M, gbrd.L, gbrd.w
    pats = [tuple(p) for p in gbrd.column_patterns()]
    for times in cac.patterns:
        for i in range(M):
            pats.append(tuple((i, t % L) for t in times))
    return Code(CodeParams(M, L, w), tuple(pats))


def exceptional_codewords(cac: Cac) -> list[str]:
    """Labels of the codewords with fewer than ``2(w-1)`` differences.

    Labels name the generator: ``"L/3"``, ``"L/4"`` for weight 3 and
    ``"L/4"``, ``"L/5"``, ``"L/6"`` for weight 4 (``2L/5`` counts as ``L/5``).
    """
    L, w = cac.L, cac.w
    shapes = {}
    for den in (3, 4, 5, 6):
        if L % den == 0:
            for mult in (1, 2):
                pat = equi_pattern(mult * L // den, L, w)
                if len(pat) == w:
                    shapes.setdefault(canonical_times(pat, L), f"L/{den}")
    out = []
    for times in cac.patterns:
        if len(cac_differences(times, L)) < 2 * (w - 1):
            out.append(shapes.get(canonical_times(times, L), "other"))
    return sorted(out)


# (weight, exceptional labels) -> (case, constant c in M/12 (a M L + L + c))
_CASES = {
    (3, ()): ("a", -3),
    (3, ("L/3",)): ("b", 3),
    (3, ("L/4",)): ("c", 0),
    (3, ("L/3", "L/4")): ("d", 6),
    (4, ()): ("a", -2),
    (4, ("L/4",)): ("b", 4),
    (4, ("L/5",)): ("c", 2),
    (4, ("L/4", "L/5")): ("d", 8),
}


@dataclass(frozen=True)
class Certificate:
    case: str
    formula: str
    expected_size: int | None
    size: int
    bound: int | None
    bound_case: str | None
    meets_bound: bool
    gbrd_source: str
    generators: tuple[int, ...] | None


def case_size(M: int, L: int, w: int, case: str) -> int:
    """Code size predicted by the composition count for the given case."""
    consts = {case_: const for (ww, _), (case_, const) in _CASES.items() if ww == w}
    if case not in consts:
        raise ValueError(f"unknown case {case!r} for w={w}")
    a = 2 if w == 3 else 1
    num = M * (a * M * L + L + consts[case])
    if num % 12:
        raise ValueError(f"case {case!r} count is not an integer for M={M}, L={L}, w={w}")
    return num // 12


def _acquire_gbrd(M, L, w, budget, time_limit) -> tuple[Gbrd, str]:
    if M == 4 and w == 3 and L % 2 == 0:
        return gbrd_4x4t(L // 2), "explicit 4x4t family"
    if M == w and L > 1 and min(prime_factors(L)) >= M:
        return gbrd_from_difference_matrix(difference_matrix_cyclic(M, L)), "multiplication table"
    try:
        G = search_gbrd(M, L, w, budget=budget, time_limit=time_limit)
    except ShapeInfeasible as exc:
        raise ConstructionUnavailable(str(exc), "gbrd") from exc
    except BudgetExhausted as exc:
        raise ConstructionUnavailable(
            f"GBRD search for M={M}, L={L}, w={w} ran out of budget", "gbrd"
        ) from exc
    if G is None:
        raise ConstructionUnavailable(f"no GBRD with M={M}, L={L}, w={w} exists", "gbrd")
    return G, "search"


def _acquire_cac(L, w, budget, time_limit) -> Cac:
    try:
        cac = search_equi_diff_tight_cac(L, w, budget=budget, time_limit=time_limit)
    except BudgetExhausted as exc:
        raise ConstructionUnavailable(
            f"tight CAC search for L={L}, w={w} ran out of budget", "tight_cac"
        ) from exc
    if cac is None:
        raise ConstructionUnavailable(
            f"no equi-difference tight CAC({L},{w}) exists", "tight_cac"
        )
    return cac


def compose_optimal(
    M: int, L: int, w: int, budget: int | None = None, time_limit: float | None = None
) -> tuple[Code, Certificate]:
    """Build the composed code and certify its size against the bound.

    Raises :class:`ConstructionUnavailable` naming the missing ingredient
    (``"tight_cac"`` or ``"gbrd"``); a budget exhaustion inside either search
    is chained as ``__cause__``.
    """
    if w not in (3, 4):
        raise ConstructionUnavailable(f"composition supports w in (3, 4), got w={w}", "weight")
    if M < w:
        raise ConstructionUnavailable(f"need M >= w, got M={M}, w={w}", "gbrd")
    if L < w:
        raise ConstructionUnavailable(f"need L >= w, got L={L}, w={w}", "tight_cac")
    cac = _acquire_cac(L, w, budget, time_limit)
    G, source = _acquire_gbrd(M, L, w, budget, time_limit)
    if not verify_gbrd(G):
        raise CorruptedOutcome(f"GBRD from {source} failed verification")
    code = compose(G, cac)
    report = verify_code(code)
    if not report.valid:
        raise CorruptedOutcome(f"composed code is invalid: {report.conflicts[:3]}")
    return code, certify_composition(code, cac, source)


def certify_composition(code: Code, cac: Cac, gbrd_source: str = "given") -> Certificate:
    M, L, w = code.params.M, code.params.L, code.params.w
    if is_tight(cac):
        case, const = _CASES.get((w, tuple(exceptional_codewords(cac))), ("unclassified", None))
    else:
        case, const = "non-tight", None
    if const is None:
        expected, formula = None, "n/a"
    else:
        expected = case_size(M, L, w, case)
        lead = "2ML" if w == 3 else "ML"
        formula = f"M/12 ({lead} + L {'+' if const >= 0 else '-'} {abs(const)})"
        if len(code) != expected:
            raise CorruptedOutcome(
                f"composed size {len(code)} differs from case ({case}) count {expected}"
            )
    try:
        b = bound(M, L, w)
        bval, bcase = b.value, b.formula_case
    except BoundNotApplicable:
        bval, bcase = None, None
    return Certificate(
        case=case,
        formula=formula,
        expected_size=expected,
        size=len(code),
        bound=bval,
        bound_case=bcase,
        meets_bound=bval is not None and len(code) == bval,
        gbrd_source=gbrd_source,
        generators=cac.generators,
    )


def family_4_2t(t: int, budget: int | None = None) -> Code:
    """``6t - 2`` codewords over 4 channels and length ``2t``."""
    if not momihara_hypothesis(t):
        raise HypothesisNotMet(
            f"t={t}: need an odd prime with -1 and -3 quadratic non-residues"
        )
    cac = momihara_cac(t, budget=budget)
    code = compose(gbrd_4x4t(t), cac)
    report = verify_code(code)
    if not report.valid or len(code) != 6 * t - 2:
        raise CorruptedOutcome(f"family code for t={t} failed verification")
    return code


def largest_cac(L: int, w: int, budget: int | None = None) -> Cac:
    """A maximum CAC(L, w), by searching sizes downwards from a counting ceiling.

    Each codeword uses at least ``w - 1`` nonzero differences, which caps the
    size at ``(L - 1) // (w - 1)``.  The first size found is optimal because
    every larger size was proven impossible.
    """
    for k in range((L - 1) // (w - 1), 0, -1):
        cac = search_cac(L, w, k, budget=budget)
        if cac is not None:
            return cac
    return Cac(L, w, ())


def compose_4x4t(t: int, budget: int | None = None) -> tuple[Code, Certificate]:
    """Explicit 4-row GBRD over ``Z_{2t}`` plus a maximum CAC(2t, 3) on each channel."""
    cac = largest_cac(2 * t, 3, budget=budget)
    code = compose(gbrd_4x4t(t), cac)
    report = verify_code(code)
    if not report.valid:
        raise CorruptedOutcome(f"4x4t composition for t={t} is invalid")
    return code, certify_composition(code, cac, "explicit 4x4t family")
