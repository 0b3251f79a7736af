"""Command-line entry point.

Reports go to stdout as tab-separated ``key<TAB>value`` lines; timings and
diagnostics go to stderr.  Exit codes: 0 success or valid, 1 invalid code or
guarantee failure, 2 usage error or unavailable construction, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import codefile
from .bounds import bound
from .constructions import (
    CATALOG_NAMES,
    Cac,
    DifferenceMatrix,
    Gbrd,
    catalog,
    compose_4x4t,
    compose_optimal,
    family_4_2t,
    momihara_hypothesis,
)
from .constructions.compose import certify_composition
from .core import Code, CodeParams, verify_code, verify_definitional
from .errors import (
    BoundNotApplicable,
    BudgetExhausted,
    CodeFileError,
    ConstructionUnavailable,
    GuaranteeNotClaimed,
    InstanceTooLarge,
    ValidationError,
)
from .search import DEFAULT_MAX_CELLS, certify, max_code
from .simulator import random_trials

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(out, key, value):
    if isinstance(value, bool):
        value = "true" if value else "false"
    out.write(f"{key}\t{value}\n")


def _err(msg):
    sys.stderr.write(f"error: {msg}\n")


def _cmd_bound(args, out):
    try:
        res = bound(args.channels, args.length, args.weight, args.restricted)
    except BoundNotApplicable as exc:
        _err(str(exc))
        return EXIT_USAGE
    _emit(out, "bound", res.value)
    _emit(out, "case", res.formula_case)
    _emit(out, "restricted", res.restricted)
    if "minus6" in res.notes:
        _emit(out, "value_with_constant_minus6", res.notes["minus6"])
        _emit(out, "note", "table constant 0 and the -6 evaluation disagree for this residue")
    if "derived" in res.notes:
        _emit(out, "derived_formula", res.notes["derived"])
    return EXIT_OK


def _construct(M, L, w, budget):
    if M == 4 and w == 3 and L % 2 == 0 and momihara_hypothesis(L // 2):
        code = family_4_2t(L // 2, budget=budget)
        return code, f"family_4_2t t={L // 2}", None
    try:
        code, cert = compose_optimal(M, L, w, budget=budget)
        return code, f"compose_optimal M={M} L={L} w={w}", cert
    except ConstructionUnavailable as exc:
        if M == 4 and w == 3 and L % 2 == 0 and exc.prerequisite == "tight_cac":
            code, cert = compose_4x4t(L // 2, budget=budget)
            return code, f"compose_4x4t t={L // 2}", cert
        raise


def _cmd_construct(args, out):
    try:
        code, provenance, cert = _construct(args.channels, args.length, args.weight, args.node_budget)
    except ConstructionUnavailable as exc:
        _err(f"{exc} (missing: {exc.prerequisite})")
        return EXIT_BUDGET if isinstance(exc.__cause__, BudgetExhausted) else EXIT_USAGE
    except BudgetExhausted as exc:
        _err(str(exc))
        return EXIT_BUDGET
    if not verify_code(code).valid:  # fail closed
        _err("constructed code failed verification")
        return EXIT_INVALID
    _emit(out, "construction", provenance)
    _emit(out, "codewords", len(code))
    if cert is not None:
        _emit(out, "case", cert.case)
        _emit(out, "gbrd_source", cert.gbrd_source)
    try:
        b = bound(args.channels, args.length, args.weight)
        _emit(out, "bound", b.value)
        _emit(out, "meets_bound", len(code) == b.value)
        if "minus6" in b.notes:
            _emit(out, "value_with_constant_minus6", b.notes["minus6"])
    except BoundNotApplicable:
        pass
    _emit(out, "valid", True)
    if args.out:
        codefile.save(code, args.out, provenance=provenance)
    return EXIT_OK


def _cmd_verify(args, out):
    try:
        cf = codefile.load_file(args.file)
    except ValidationError as exc:
        _emit(out, "valid", False)
        _emit(out, "error", str(exc))
        return EXIT_INVALID
    except CodeFileError as exc:
        _err(str(exc))
        return EXIT_USAGE
    restricted = args.restricted or cf.restricted
    code = cf.code
    rep = verify_code(code, restricted)
    if args.method in ("cross-correlation", "both"):
        rep2 = verify_definitional(code, restricted)
        if args.method == "both" and rep2.valid != rep.valid:
            _err("verifier paths disagree")
            return EXIT_INVALID
        if args.method == "cross-correlation":
            rep = rep2
    _emit(out, "valid", rep.valid)
    _emit(out, "codewords", len(code))
    _emit(out, "method", rep.method)
    _emit(out, "restricted", restricted)
    for k in rep.weight_violations:
        _emit(out, "weight_violation", f"{k}\t{code.patterns[k]}")
    for k in rep.slot_violations:
        _emit(out, "slot_violation", f"{k}\t{code.patterns[k]}")
    for c in rep.conflicts:
        where = "-" if c.channels is None else f"{c.channels[0]},{c.channels[1]}"
        label = "difference" if c.channels is not None else "shift"
        _emit(out, "conflict", f"{c.k}\t{c.l}\tchannels={where}\t{label}={c.difference}")
    return EXIT_OK if rep.valid else EXIT_INVALID


def _cmd_search(args, out):
    params = CodeParams(args.channels, args.length, args.weight)
    budget = args.node_budget if args.exact else 0
    try:
        outcome = max_code(
            params,
            restricted=args.restricted,
            budget=budget,
            time_limit=args.time_limit,
            use_bounds=not args.no_bounds,
            max_cells=args.max_cells,
        )
    except InstanceTooLarge as exc:
        _err(str(exc))
        return EXIT_USAGE
    rep = certify(outcome, args.restricted)
    _emit(out, "size", outcome.size)
    _emit(out, "status", outcome.status)
    _emit(out, "proof", outcome.proof or "-")
    _emit(out, "nodes", outcome.nodes_explored)
    _emit(out, "statement", rep.statement)
    if args.out:
        prov = f"max_code M={params.M} L={params.L} w={params.w} status={outcome.status}"
        codefile.save(outcome.best_code, args.out, args.restricted, prov)
    if args.exact and outcome.status != "optimal":
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_simulate(args, out):
    try:
        cf = codefile.load_file(args.file)
    except CodeFileError as exc:
        _err(str(exc))
        return EXIT_USAGE
    restricted = args.restricted or cf.restricted
    try:
        s = random_trials(cf.code, args.trials, args.seed, args.active, restricted, args.jobs)
    except GuaranteeNotClaimed as exc:
        _emit(out, "verdict", "NOT_CLAIMED")
        _emit(out, "reason", str(exc))
        return EXIT_OK
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INVALID
    _emit(out, "seed", s.seed)
    _emit(out, "trials", s.trials)
    _emit(out, "active", s.active_count)
    _emit(out, "horizon", s.horizon)
    _emit(out, "pass", s.passes)
    _emit(out, "fail", s.fails)
    _emit(out, "worst_delay", "-" if s.worst_delay is None else s.worst_delay)
    _emit(out, "mean_delay", "-" if s.mean_delay is None else f"{s.mean_delay:.6f}")
    _emit(out, "verdict", "PASS" if s.fails == 0 else "FAIL")
    return EXIT_OK if s.fails == 0 else EXIT_INVALID


def _fixture_code(obj) -> Code:
    if isinstance(obj, Code):
        return obj
    if isinstance(obj, Cac):
        return Code(CodeParams(1, obj.L, obj.w), tuple(tuple((0, t) for t in p) for p in obj.patterns))
    if isinstance(obj, DifferenceMatrix):
        cols = tuple(tuple((i, r[j]) for i, r in enumerate(obj.rows)) for j in range(obj.L))
        return Code(CodeParams(obj.k, obj.L, obj.k), cols)
    if isinstance(obj, Gbrd):
        return Code(CodeParams(obj.M, obj.L, obj.w), tuple(tuple(p) for p in obj.column_patterns()))
    raise TypeError(type(obj))


def _cmd_catalog(args, out):
    obj = catalog(args.name)
    code = _fixture_code(obj)
    _emit(out, "fixture", args.name)
    _emit(out, "kind", type(obj).__name__)
    _emit(out, "codewords", len(code))
    _emit(out, "valid", verify_code(code).valid)
    if isinstance(obj, (Gbrd, DifferenceMatrix)):
        rows = obj.format() if isinstance(obj, Gbrd) else "\n".join(" ".join(map(str, r)) for r in obj.rows)
        for line in rows.splitlines():
            _emit(out, "row", line)
    if args.out:
        codefile.save(code, args.out, provenance=f"catalog {args.name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mccac", description="Multichannel conflict-avoiding codes.")
    sub = p.add_subparsers(dest="command", required=True)

    def shape(sp, weight_choices=None):
        sp.add_argument("--channels", "-M", type=int, required=True)
        sp.add_argument("--length", "-L", type=int, required=True)
        sp.add_argument("--weight", "-w", type=int, required=True, choices=weight_choices)

    b = sub.add_parser("bound", help="closed-form upper bound")
    shape(b, [3, 4])
    b.add_argument("--restricted", action="store_true")

    c = sub.add_parser("construct", help="build an optimal code")
    shape(c)
    c.add_argument("--out")
    c.add_argument("--node-budget", type=int, default=2_000_000)

    v = sub.add_parser("verify", help="check a code file")
    v.add_argument("file")
    v.add_argument("--restricted", action="store_true")
    v.add_argument("--method", choices=["differences", "cross-correlation", "both"], default="differences")

    s = sub.add_parser("search", help="branch and bound for the largest code")
    shape(s)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--node-budget", type=int, default=None)
    s.add_argument("--time-limit", type=float, default=None)
    s.add_argument("--restricted", action="store_true")
    s.add_argument("--no-bounds", action="store_true")
    s.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    s.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; search is single-threaded")
    s.add_argument("--out")

    m = sub.add_parser("simulate", help="random activity trials on the collision channel")
    m.add_argument("file")
    m.add_argument("--active", type=int, required=True)
    m.add_argument("--trials", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--restricted", action="store_true")
    m.add_argument("--jobs", type=int, default=1)

    g = sub.add_parser("catalog", help="write a worked-example fixture")
    g.add_argument("name", choices=CATALOG_NAMES)
    g.add_argument("--out")
    return p


_COMMANDS = {
    "bound": _cmd_bound,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "simulate": _cmd_simulate,
    "catalog": _cmd_catalog,
}


def run_cli(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.monotonic()
    try:
        code = _COMMANDS[args.command](args, out)
    except ValueError as exc:
        _err(str(exc))
        code = EXIT_USAGE
    sys.stderr.write(f"elapsed\t{time.monotonic() - start:.3f}s\n")
    return code


def main() -> None:
    sys.exit(run_cli())
