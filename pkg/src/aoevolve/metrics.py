"""Maturity indices and change metrics.

For every entity kind the maturity index of a release is

    (current - (added + modified)) / current

and the change metric is its complement. Deletions never enter either value.
When a kind has no entities in the current release the maturity is taken
as 1 and the change as 0; the first release of a series gets the same
(1, 0) row for every kind.
"""

from __future__ import annotations

import logging
from typing import Dict, Mapping, Optional, Sequence

from aoevolve.differ import diff_versions
from aoevolve.errors import UsageError
from aoevolve.model import KINDS, ChangeCounts, EntityKind, EvolutionReport, MetricsRow, VersionInventory

log = logging.getLogger(__name__)

ZERO_DENOMINATOR_MATURITY = 1.0
ZERO_DENOMINATOR_CHANGE = 0.0
FIRST_VERSION_MATURITY = 1.0
FIRST_VERSION_CHANGE = 0.0

CONVENTIONS = {
    "zero_denominator_maturity": ZERO_DENOMINATOR_MATURITY,
    "zero_denominator_change": ZERO_DENOMINATOR_CHANGE,
    "first_version_maturity": FIRST_VERSION_MATURITY,
    "first_version_change": FIRST_VERSION_CHANGE,
    "deletions_counted": False,
}


def _check_counts(**counts):
    for name, value in counts.items():
        if value < 0:
            raise ValueError(f"{name} must be >= 0, got {value}")


def maturity_index(current: int, added: int, modified: int) -> float:
    _check_counts(current=current, added=added, modified=modified)
    if current == 0:
        return ZERO_DENOMINATOR_MATURITY
    return (current - (added + modified)) / current


def change_metric(maturity: float, current: int) -> float:
    _check_counts(current=current)
    if current == 0:
        return ZERO_DENOMINATOR_CHANGE
    return 1 - maturity


def rmi(total: int, changed: int) -> float:
    """Requirements maturity index; ``changed`` includes deletions."""
    _check_counts(total=total, changed=changed)
    if total == 0:
        return 1.0
    return (total - changed) / total


def metrics_row(counts: ChangeCounts) -> MetricsRow:
    m = maturity_index(counts.current, counts.added, counts.modified)
    return MetricsRow(counts.kind, m, change_metric(m, counts.current))


def first_version_rows() -> Dict[EntityKind, MetricsRow]:
    return {k: MetricsRow(k, FIRST_VERSION_MATURITY, FIRST_VERSION_CHANGE) for k in KINDS}


def compute_report(inventories: Sequence[VersionInventory]) -> EvolutionReport:
    """Diff consecutive inventories and compute every metric row."""
    if not inventories:
        raise UsageError("at least one version is required")
    transitions, details = [], []
    for prev, curr in zip(inventories, inventories[1:]):
        diffed = diff_versions(prev, curr)
        transitions.append({k: counts for k, (counts, _) in diffed.items()})
        details.append({k: detail for k, (_, detail) in diffed.items()})
    return _assemble(
        [inv.label for inv in inventories],
        [inv.counts() for inv in inventories],
        transitions,
        details=details,
    )


def compute_report_from_counts(
    versions: Sequence[str],
    inventory_counts: Sequence[Mapping[EntityKind, int]],
    transition_counts: Sequence[Mapping[EntityKind, Mapping[str, int]]],
) -> EvolutionReport:
    """Compute metrics from externally supplied count tables.

    ``transition_counts[i][kind]`` holds ``added``/``deleted``/``modified``
    for the step into ``versions[i + 1]``; ``current`` is taken from
    ``inventory_counts`` and must agree with any value given there.
    Missing kinds or fields count as 0.
    """
    if not versions:
        raise UsageError("at least one version is required")
    if len(inventory_counts) != len(versions):
        raise UsageError(f"expected {len(versions)} inventory rows, got {len(inventory_counts)}")
    if len(transition_counts) != len(versions) - 1:
        raise UsageError(f"expected {len(versions) - 1} transition rows, got {len(transition_counts)}")

    inventories = [{k: row.get(k, 0) for k in KINDS} for row in inventory_counts]
    for version, row in zip(versions, inventories):
        for k, n in row.items():
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                raise UsageError(f"{version}/{k.value}: count must be a non-negative integer, got {n!r}")
    transitions = []
    for i, row in enumerate(transition_counts):
        target = inventories[i + 1]
        step = {}
        for k in KINDS:
            cell = row.get(k, {})
            current = target[k]
            if "current" in cell and cell["current"] != current:
                raise UsageError(
                    f"{versions[i + 1]}/{k.value}: transition current={cell['current']} "
                    f"disagrees with inventory count {current}"
                )
            try:
                step[k] = ChangeCounts(
                    kind=k,
                    current=current,
                    added=cell.get("added", 0),
                    deleted=cell.get("deleted", 0),
                    modified=cell.get("modified", 0),
                )
            except (TypeError, ValueError) as exc:
                raise UsageError(f"{versions[i + 1]}/{k.value}: {exc}") from None
        transitions.append(step)
    return _assemble(list(versions), inventories, transitions)


def _assemble(versions, inventories, transitions, details: Optional[list] = None) -> EvolutionReport:
    metrics = [first_version_rows()]
    warnings = []
    for i, step in enumerate(transitions):
        prev, label = inventories[i], versions[i + 1]
        for k, c in step.items():
            if c.added + c.modified > c.current:
                warnings.append(
                    f"{label}/{k.value}: added + modified ({c.added} + {c.modified}) exceeds current "
                    f"({c.current}); {k.maturity_name} will be negative"
                )
            if c.previous != prev[k]:
                warnings.append(
                    f"{label}/{k.value}: counts not conserved "
                    f"({prev[k]} - {c.deleted} + {c.added} != {c.current})"
                )
        metrics.append({k: metrics_row(step[k]) for k in KINDS})
    for w in warnings:
        log.warning(w)
    return EvolutionReport(
        versions=tuple(versions),
        inventories=tuple(dict(inv) for inv in inventories),
        transitions=tuple(transitions),
        metrics=tuple(metrics),
        details=tuple(details) if details is not None else None,
        warnings=tuple(warnings),
    )
