"""End-to-end acceptance checks, one test per criterion.

The conftest hook prints a ``criterion N: PASS|FAIL`` line for each of them
at the end of the run.
"""

import random
from itertools import combinations, product

from mccac.bounds import bound_restricted, bound_weight3, bound_weight3_indicator, bound_weight4, bound_weight4_derived
from mccac.constructions import (
    Cac,
    catalog,
    compose,
    compose_4x4t,
    compose_optimal,
    family_4_2t,
    search_equi_diff_tight_cac,
    verify_gbrd,
)
from mccac.constructions.catalog import example1_patterns
from mccac.core import Code, CodeParams, SchedulingPattern, difference_array, verify_code, verify_definitional
from mccac.search import max_code
from mccac.simulator import NodeConfig, check_guarantee, random_trials, simulate

from . import oracle

# non-empty cells of the difference array of each example1 pattern, indexed (row, column)
_E = {1, 2, 3, 4}
EXAMPLE1_DIFFERENCES = [
    {(0, 0): _E},
    {(1, 1): _E},
    {(2, 2): _E},
    {(0, 1): {0}, (0, 2): {0}, (1, 0): {0}, (1, 2): {0}, (2, 0): {0}, (2, 1): {0}},
    {(0, 1): {4}, (0, 2): {3}, (1, 0): {1}, (1, 2): {4}, (2, 0): {2}, (2, 1): {1}},
    {(0, 1): {3}, (0, 2): {1}, (1, 0): {2}, (1, 2): {3}, (2, 0): {4}, (2, 1): {2}},
    {(0, 1): {2}, (0, 2): {4}, (1, 0): {3}, (1, 2): {2}, (2, 0): {1}, (2, 1): {3}},
    {(0, 1): {1}, (0, 2): {2}, (1, 0): {4}, (1, 2): {1}, (2, 0): {3}, (2, 1): {4}},
]

TIGHT_LENGTHS = (5, 13, 17, 29, 37, 41, 53, 61, 65, 85, 97, 101)


def test_criterion_1_fixtures():
    assert verify_code(catalog("example1")).valid
    assert verify_code(catalog("example6")).valid
    assert verify_gbrd(catalog("example4"))
    for pats, expect in zip(example1_patterns(), EXAMPLE1_DIFFERENCES):
        D = difference_array(SchedulingPattern.of(pats), CodeParams(3, 5, 3))
        for i1, i2 in product(range(3), repeat=2):
            assert D[i1, i2] == frozenset(expect.get((i1, i2), set())), (pats, i1, i2)


def test_criterion_2_optimal_353():
    assert bound_weight3(3, 5).value == 8
    code, _ = compose_optimal(3, 5, 3)
    assert len(code) == 8 and verify_code(code).valid
    out = max_code(CodeParams(3, 5, 3), use_bounds=False, use_construction=False)
    assert out.size == 8 and out.status == "optimal" and out.proof == "exhaustive"


def test_criterion_3_example5():
    code, cert = compose_optimal(3, 13, 3)
    assert len(code) == 22 and verify_code(code).valid
    assert bound_weight3(3, 13).value == 22 == cert.bound


def test_criterion_4_example6():
    cac = Cac(10, 3, ((0, 1, 2), (0, 3, 6)))
    code = compose(catalog("example4"), cac)
    assert len(code) == 28 and verify_code(code).valid
    assert set(code.patterns) == set(catalog("example6").patterns)
    b = bound_weight3(4, 10)
    assert b.value == 30 and b.notes["minus6"] == 28
    # the same pair comes out of the packaged route
    _, cert = compose_4x4t(5)
    assert cert.bound == 30 and cert.size == 28


def test_criterion_5_family_t11():
    code = family_4_2t(11)
    assert len(code) == 6 * 11 - 2 == 64 and verify_code(code).valid
    assert bound_weight3(4, 22).value == 64


def test_criterion_6_tight_cacs():
    for L in TIGHT_LENGTHS:
        cac = search_equi_diff_tight_cac(L, 3)
        assert cac is not None and len(cac) == (L - 1) // 4, L
    assert search_equi_diff_tight_cac(7, 3) is None


def test_criterion_7_bound_paths():
    for M in range(3, 9):
        for L in range(1, 241):
            assert bound_weight3(M, L).value == bound_weight3_indicator(M, L), (M, L)
    for M in range(4, 9):
        for L in range(1, 601):
            if L % 60:
                assert bound_weight4(M, L).value == bound_weight4_derived(M, L).value, (M, L)


def _random_code(rng):
    M, L = rng.randint(1, 4), rng.randint(1, 12)
    cells = [(m, t) for m in range(M) for t in range(L)]
    w = rng.randint(1, min(4, len(cells)))
    pats = []
    for _ in range(rng.randint(1, 6)):
        p = tuple(rng.sample(cells, w))
        if all(oracle.compatible(p, q, L) for q in pats) or rng.random() < 0.3:
            pats.append(p)
    if pats and rng.random() < 0.3:
        # corrupt one entry, keeping entries distinct
        k = rng.randrange(len(pats))
        free = [c for c in cells if c not in pats[k]]
        if free:
            p = list(pats[k])
            p[rng.randrange(w)] = rng.choice(free)
            pats[k] = tuple(p)
    return Code(CodeParams(M, L, w), tuple(SchedulingPattern(p) for p in pats)), pats, L, w


def test_criterion_8_verifier_equivalence():
    rng = random.Random(20240601)
    seen = {True: 0, False: 0}
    for _ in range(10_000):
        code, pats, L, w = _random_code(rng)
        fast = verify_code(code).valid
        assert fast == verify_definitional(code).valid
        assert fast == oracle.code_is_valid(pats, L, w)
        seen[fast] += 1
    assert min(seen.values()) > 1000


def test_criterion_9_hard_guarantee():
    ex1 = catalog("example1")
    for trio in combinations(range(8), 3):
        for offs in product(range(5), repeat=3):
            nodes = [NodeConfig(ex1.patterns[k], o) for k, o in zip(trio, offs)]
            assert check_guarantee(simulate(ex1, nodes, 15), ex1).verdict == "PASS"
    constructed = [
        catalog("example6"),
        compose_optimal(3, 13, 3)[0],
        compose_optimal(3, 17, 3)[0],
        compose_optimal(7, 3, 3)[0],
        compose_optimal(4, 7, 4)[0],
        family_4_2t(11),
        compose_4x4t(2)[0],
    ]
    for code in constructed:
        L, w = code.params.L, code.params.w
        for k in range(1, w + 1):
            trials = 10_000 if k == w else 500
            s = random_trials(code, trials, seed=2024 + k, active_count=k)
            assert s.fails == 0 and s.worst_delay <= L - 1, (code.params, k)


def test_criterion_10_restricted():
    assert bound_restricted(3, 5, 3).value == 7
    assert bound_restricted(4, 10, 3).value == 28
    assert bound_restricted(4, 7, 4).value == 10
    ex1 = catalog("example1")
    rep = verify_code(ex1, restricted=True)
    s4 = SchedulingPattern.of([(0, 0), (1, 0), (2, 0)])
    assert not rep.valid and [ex1.patterns[k] for k in rep.slot_violations] == [s4]
    rest = Code(ex1.params, tuple(p for p in ex1.patterns if p != s4))
    assert len(rest) == 7 and verify_code(rest, restricted=True).valid
