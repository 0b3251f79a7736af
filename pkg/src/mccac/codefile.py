"""JSON code files with a fixed key order, one pattern per line."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import Code, CodeParams, SchedulingPattern
from .errors import InvalidPatternError, ParseError, ValidationError

SCHEMA_VERSION = 1
_KEYS = ("schema_version", "M", "L", "w", "restricted", "provenance", "patterns")


@dataclass(frozen=True)
class CodeFile:
    code: Code
    restricted: bool = False
    provenance: str = ""
    schema_version: int = SCHEMA_VERSION


def dumps(code: Code, restricted: bool = False, provenance: str = "") -> str:
    p = code.params
    lines = [
        "{",
        f'  "schema_version": {SCHEMA_VERSION},',
        f'  "M": {p.M},',
        f'  "L": {p.L},',
        f'  "w": {p.w},',
        f'  "restricted": {json.dumps(bool(restricted))},',
        f'  "provenance": {json.dumps(provenance)},',
    ]
    if code.patterns:
        lines.append('  "patterns": [')
        body = [
            "    [" + ", ".join(f"[{m}, {t}]" for m, t in pat.entries) + "]" for pat in code.patterns
        ]
        lines.append(",\n".join(body))
        lines.append("  ]")
    else:
        lines.append('  "patterns": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(code: Code, path, restricted: bool = False, provenance: str = "") -> None:
    Path(path).write_text(dumps(code, restricted, provenance))


def _int_field(obj: dict, key: str) -> int:
    if key not in obj:
        raise ParseError(f"missing field {key!r}")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ParseError(f"field {key!r}: expected an integer, got {val!r}")
    return val


def loads(text: str, strict: bool = True) -> CodeFile:
    """Parse a code file.

    Structural problems raise :class:`ParseError`.  Invariant breaches
    (indices out of range, and with ``strict`` also patterns of the wrong
    weight) raise :class:`ValidationError`.  Duplicated codewords load fine
    and are left for the verifier to report.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    version = _int_field(obj, "schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"field 'schema_version': unsupported version {version}")
    unknown = sorted(set(obj) - set(_KEYS))
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}")
    M, L, w = (_int_field(obj, k) for k in ("M", "L", "w"))
    restricted = obj.get("restricted", False)
    if not isinstance(restricted, bool):
        raise ParseError(f"field 'restricted': expected true or false, got {restricted!r}")
    provenance = obj.get("provenance", "")
    if not isinstance(provenance, str):
        raise ParseError("field 'provenance': expected a string")
    raw = obj.get("patterns")
    if not isinstance(raw, list):
        raise ParseError("field 'patterns': expected a list")
    try:
        params = CodeParams(M, L, w)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    pats = []
    for k, pat in enumerate(raw):
        if not isinstance(pat, list) or not pat:
            raise ParseError(f"field 'patterns[{k}]': expected a non-empty list of pairs")
        entries = []
        for j, e in enumerate(pat):
            ok = (
                isinstance(e, list)
                and len(e) == 2
                and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
            )
            if not ok:
                raise ParseError(f"field 'patterns[{k}][{j}]': expected [channel, time], got {e!r}")
            entries.append(tuple(e))
        if strict and len(entries) != w:
            raise ValidationError(f"patterns[{k}] has {len(entries)} entries, expected w={w}")
        try:
            pats.append(SchedulingPattern(tuple(entries)))
        except InvalidPatternError as exc:
            raise ValidationError(f"patterns[{k}]: {exc}") from None
    try:
        code = Code(params, tuple(pats))
    except InvalidPatternError as exc:
        raise ValidationError(str(exc)) from None
    return CodeFile(code, restricted, provenance, version)


def load_file(path, strict: bool = True) -> CodeFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return loads(text, strict)


def load(path, strict: bool = True) -> Code:
    return load_file(path, strict).code
