"""JSON interchange for evolution reports and externally supplied count tables."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

from aoevolve.differ import TransitionDetail
from aoevolve.errors import UsageError
from aoevolve.metrics import CONVENTIONS, compute_report_from_counts
from aoevolve.model import KINDS, ChangeCounts, EntityKind, EvolutionReport, MetricsRow

SCHEMA_VERSION = 1


def report_to_dict(report: EvolutionReport, stamp: Optional[str] = None) -> Dict[str, Any]:
    transitions = []
    for i, (src, dst) in enumerate(report.transition_labels()):
        entry = {
            "from": src,
            "to": dst,
            "counts": {k.value: report.transitions[i][k].to_dict() for k in KINDS},
        }
        if report.details is not None:
            entry["details"] = {k.value: report.details[i][k].to_dict() for k in KINDS}
        transitions.append(entry)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "versions": list(report.versions),
        "inventories": {
            v: {k.value: inv[k] for k in KINDS} for v, inv in zip(report.versions, report.inventories)
        },
        "transitions": transitions,
        "metrics": {
            v: {k.value: rows[k].to_dict() for k in KINDS} for v, rows in zip(report.versions, report.metrics)
        },
        "details_available": report.details is not None,
        "conventions": dict(CONVENTIONS),
        "warnings": list(report.warnings),
    }
    if stamp is not None:
        doc["generated_at"] = stamp
    return doc


def report_to_json(report: EvolutionReport, stamp: Optional[str] = None) -> str:
    return json.dumps(report_to_dict(report, stamp), indent=2, ensure_ascii=False) + "\n"


def _kind(name: str) -> EntityKind:
    try:
        return EntityKind(str(name).lower())
    except ValueError:
        raise UsageError(f"unknown entity kind {name!r}") from None


def _count(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise UsageError(f"{where}: expected a non-negative integer count, got {value!r}")
    return value


def report_from_dict(doc: Dict[str, Any]) -> EvolutionReport:
    """Inverse of :func:`report_to_dict` (counts exact, metrics bit-exact)."""
    try:
        versions = list(doc["versions"])
        inventories = [
            {_kind(k): _count(n, f"inventories/{v}") for k, n in doc["inventories"][v].items()} for v in versions
        ]
        transitions, details = [], []
        has_details = bool(doc.get("details_available", False))
        for t in doc["transitions"]:
            transitions.append({
                _kind(k): ChangeCounts(_kind(k), **{f: _count(c[f], f"transitions/{t['to']}/{k}") for f in c})
                for k, c in t["counts"].items()
            })
            if has_details:
                details.append({
                    _kind(k): TransitionDetail(_kind(k), tuple(d["added"]), tuple(d["deleted"]), tuple(d["modified"]))
                    for k, d in t["details"].items()
                })
        metrics = [
            {_kind(k): MetricsRow(_kind(k), float(r["maturity"]), float(r["change"])) for k, r in doc["metrics"][v].items()}
            for v in versions
        ]
        return EvolutionReport(
            versions=tuple(versions),
            inventories=tuple(inventories),
            transitions=tuple(transitions),
            metrics=tuple(metrics),
            details=tuple(details) if has_details else None,
            warnings=tuple(doc.get("warnings", ())),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed report document: {exc!r}") from None


def report_from_json(text: str) -> EvolutionReport:
    try:
        return report_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def load_counts(doc: Dict[str, Any]) -> EvolutionReport:
    """Compute a report from a counts document.

    Reads ``versions`` plus ``inventory_counts`` and ``transition_counts``
    (or ``inventories`` and ``transitions``, so a previous ``report.json``
    can be replayed as-is). Transition entries may carry ``from``/``to``
    labels; when present they must name consecutive versions.
    """
    if not isinstance(doc, dict):
        raise UsageError("counts document must be a JSON object")
    schema = doc.get("schema_version", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise UsageError(f"unsupported schema_version {schema!r}")
    try:
        versions = [str(v) for v in doc["versions"]]
    except (KeyError, TypeError):
        raise UsageError("counts document needs a 'versions' list") from None
    if len(set(versions)) != len(versions):
        raise UsageError("version labels must be unique")

    inv_section = doc.get("inventory_counts", doc.get("inventories"))
    trans_section = doc.get("transition_counts", doc.get("transitions", []))
    if not isinstance(inv_section, dict):
        raise UsageError("counts document needs an 'inventory_counts' object keyed by version")
    if not isinstance(trans_section, list):
        raise UsageError("'transition_counts' must be a list")

    inventories = []
    for v in versions:
        if not isinstance(inv_section.get(v), dict):
            raise UsageError(f"inventory_counts lacks an object for version {v!r}")
        inventories.append({_kind(k): _count(n, f"inventory_counts/{v}/{k}") for k, n in inv_section[v].items()})

    transitions: List[Dict[EntityKind, Dict[str, int]]] = []
    for i, entry in enumerate(trans_section):
        if not isinstance(entry, dict) or not isinstance(entry.get("counts"), dict):
            raise UsageError(f"transition_counts[{i}] needs a 'counts' object")
        if i + 1 < len(versions):
            expected = (versions[i], versions[i + 1])
            got = (entry.get("from", expected[0]), entry.get("to", expected[1]))
            if tuple(map(str, got)) != expected:
                raise UsageError(f"transition_counts[{i}] is {got[0]}->{got[1]}, expected {expected[0]}->{expected[1]}")
        row = {}
        for k, cell in entry["counts"].items():
            if not isinstance(cell, dict):
                raise UsageError(f"transition_counts[{i}]/{k} must be an object")
            row[_kind(k)] = {f: _count(n, f"transition_counts[{i}]/{k}/{f}") for f, n in cell.items()}
        transitions.append(row)
    return compute_report_from_counts(versions, inventories, transitions)
