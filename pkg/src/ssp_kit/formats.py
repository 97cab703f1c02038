"""Text formats: system files, type specs, formula files, JSON, DOT.

A system file holds one ``initial <state>`` line followed by one
``<source> <event> <target>`` line per edge; ``#`` starts a comment and
blank lines are skipped.  Serialization sorts edges, so parse/serialize
round-trips are identities on the canonical form.
"""

from __future__ import annotations

import json
from typing import Mapping

from .core import (
    INTERACTION_BY_NAME,
    INTERACTION_ORDER,
    Interaction,
    Region,
    SspKitError,
    TransitionSystem,
    type_name,
    validate_ts,
)
from .engine import Decision, SeparationReport
from .reductions import CmFormula, cm_validate


class TsParseError(SspKitError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TypeSpecError(SspKitError):
    pass


class UnknownInteractionName(TypeSpecError):
    pass


class FormulaParseError(SspKitError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_ts_text(text: str) -> TransitionSystem:
    initial: str | None = None
    edges: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if initial is None:
            if len(tokens) != 2 or tokens[0] != "initial":
                raise TsParseError(lineno, "expected 'initial <state>' first")
            initial = tokens[1]
            continue
        if len(tokens) != 3:
            raise TsParseError(lineno, "expected '<source> <event> <target>'")
        edges.append((tokens[0], tokens[1], tokens[2]))
    if initial is None:
        raise TsParseError(0, "empty file: no 'initial <state>' line")
    return validate_ts(edges, initial)


def serialize_ts(ts: TransitionSystem) -> str:
    lines = [f"initial {ts.initial}"]
    lines += [f"{s} {e} {t}" for s, e, t in ts.edges]
    return "\n".join(lines) + "\n"


def parse_type_spec(spec: str) -> frozenset[Interaction]:
    """Comma-separated interaction names, case-insensitive; '' is empty."""
    text = spec.strip()
    if not text:
        return frozenset()
    out: set[Interaction] = set()
    for part in text.split(","):
        name = part.strip().lower()
        if name not in INTERACTION_BY_NAME:
            raise UnknownInteractionName(f"unknown interaction {part.strip()!r}")
        member = INTERACTION_BY_NAME[name]
        if member in out:
            raise TypeSpecError(f"interaction {name!r} listed twice")
        out.add(member)
    return frozenset(out)


def format_type_spec(tau: frozenset[Interaction]) -> str:
    return type_name(tau)


def parse_formula_text(text: str) -> CmFormula:
    clauses: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = tuple(line.split())
        if len(tokens) != 3:
            raise FormulaParseError(lineno, "expected three variable names")
        clauses.append(tokens)
    if not clauses:
        raise FormulaParseError(0, "empty formula file")
    return cm_validate(clauses)


def parse_atom(spec: str, ts: TransitionSystem) -> tuple[str, str]:
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != 2 or not all(parts):
        raise SspKitError(f"atom must be '<state>,<state>': {spec!r}")
    a, b = parts
    for name in (a, b):
        if name not in ts.states:
            raise SspKitError(f"atom names unknown state {name!r}")
    return (a, b)


def region_to_dict(region: Region) -> dict:
    return {
        "support": {s: v for s, v in sorted(region.support.items())},
        "signature": {
            e: i.value for e, i in sorted(region.signature.items())
        },
    }


def region_from_dict(payload: Mapping) -> Region:
    support = {str(s): int(v) for s, v in payload["support"].items()}
    signature = {}
    for e, name in payload["signature"].items():
        if name not in INTERACTION_BY_NAME:
            raise UnknownInteractionName(f"unknown interaction {name!r}")
        signature[str(e)] = INTERACTION_BY_NAME[name]
    return Region(support=support, signature=signature)


def report_to_dict(report: SeparationReport) -> dict:
    return {
        "decision": report.decision.value,
        "witness_atom": (
            list(report.witness_atom) if report.witness_atom else None
        ),
        "regions": [region_to_dict(r) for r in report.regions],
        "stats": {
            "atoms_checked": report.stats.atoms_checked,
            "nodes_expanded": report.stats.nodes_expanded,
            "wall_ms": round(report.stats.wall_ms, 3),
        },
    }


def report_to_json(report: SeparationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def ts_to_dot(ts: TransitionSystem) -> str:
    """Deterministic DOT rendering; the initial state is drawn doubled."""

    def q(name: str) -> str:
        return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["digraph ts {", "  rankdir=LR;"]
    lines.append(f"  {q(ts.initial)} [peripheries=2];")
    for s in ts.states:
        if s != ts.initial:
            lines.append(f"  {q(s)};")
    for s, e, t in ts.edges:
        lines.append(f"  {q(s)} -> {q(t)} [label={q(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
