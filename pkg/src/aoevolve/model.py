"""Shared domain vocabulary: entity kinds, inventories, counts and metric rows."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Tuple


class EntityKind(str, Enum):
    """The five kinds of program entity tracked across releases.

    Declaration order is the canonical kind order used by every report.
    """

    CLASS = "class"
    METHOD = "method"
    ASPECT = "aspect"
    POINTCUT = "pointcut"
    ADVICE = "advice"

    @property
    def maturity_name(self) -> str:
        return _METRIC_NAMES[self][0]

    @property
    def change_name(self) -> str:
        return _METRIC_NAMES[self][1]

    @property
    def label(self) -> str:
        return self.value.capitalize()


_METRIC_NAMES = {
    EntityKind.CLASS: ("CMI", "CIC"),
    EntityKind.METHOD: ("MMI", "CIM"),
    EntityKind.ASPECT: ("AMI", "CIA"),
    EntityKind.POINTCUT: ("PMI", "CIP"),
    EntityKind.ADVICE: ("ADMI", "CIAD"),
}

KINDS: Tuple[EntityKind, ...] = tuple(EntityKind)


@dataclass(frozen=True)
class SourceLocation:
    file: str
    line: int

    def __post_init__(self):
        if self.line < 1:
            raise ValueError(f"line must be >= 1, got {self.line}")
        if "\\" in self.file:
            object.__setattr__(self, "file", self.file.replace("\\", "/"))

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"


@dataclass(frozen=True)
class Entity:
    """One extracted declaration.

    Equality and hashing use ``(kind, identity_key, fingerprint)`` only;
    where the declaration sits and how it is displayed do not participate.
    """

    kind: EntityKind
    identity_key: str
    display_name: str = field(compare=False)
    location: SourceLocation = field(compare=False)
    fingerprint: int = 0

    def __post_init__(self):
        if not self.identity_key:
            raise ValueError("identity_key must be non-empty")
        if not 0 <= self.fingerprint < 2**64:
            raise ValueError("fingerprint must be an unsigned 64-bit value")

    def with_key(self, key: str) -> "Entity":
        return Entity(self.kind, key, self.display_name, self.location, self.fingerprint)

    def to_dict(self) -> dict:
        return {
            "key": self.identity_key,
            "name": self.display_name,
            "file": self.location.file,
            "line": self.location.line,
            "fingerprint": f"{self.fingerprint:016x}",
        }


@dataclass(frozen=True)
class VersionInventory:
    """All entities of one release, grouped by kind and sorted by identity key."""

    label: str
    entities: Mapping[EntityKind, Tuple[Entity, ...]] = field(default_factory=dict)

    def __post_init__(self):
        grouped: Dict[EntityKind, Tuple[Entity, ...]] = {}
        for kind in KINDS:
            items = tuple(sorted(self.entities.get(kind, ()), key=lambda e: e.identity_key))
            for e in items:
                if e.kind is not kind:
                    raise ValueError(f"{e.identity_key} filed under {kind.value}, is {e.kind.value}")
            for a, b in zip(items, items[1:]):
                if a.identity_key == b.identity_key:
                    raise ValueError(f"duplicate identity key {a.identity_key!r}")
            grouped[kind] = items
        object.__setattr__(self, "entities", grouped)

    @classmethod
    def from_entities(cls, label: str, entities: Iterable[Entity]) -> "VersionInventory":
        grouped: Dict[EntityKind, list] = {k: [] for k in KINDS}
        for e in entities:
            grouped[e.kind].append(e)
        return cls(label, grouped)

    def keyed(self, kind: EntityKind) -> Dict[str, Entity]:
        return {e.identity_key: e for e in self.entities[kind]}

    def counts(self) -> Dict[EntityKind, int]:
        return {k: len(self.entities[k]) for k in KINDS}

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "entities": {k.value: [e.to_dict() for e in self.entities[k]] for k in KINDS},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def count_of(inv: VersionInventory, kind: EntityKind) -> int:
    """Number of entities of ``kind`` in ``inv``."""
    return len(inv.entities[kind])


@dataclass(frozen=True)
class ChangeCounts:
    """Per-kind counts for one version transition.

    ``current`` is the size of the newer inventory; ``added`` and
    ``modified`` are disjoint subsets of it.
    """

    kind: EntityKind
    current: int
    added: int = 0
    deleted: int = 0
    modified: int = 0

    def __post_init__(self):
        for name in ("current", "added", "deleted", "modified"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an int, got {value!r}")
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")

    @property
    def previous(self) -> int:
        """Size of the older inventory implied by conservation."""
        return self.current - self.added + self.deleted

    def to_dict(self) -> dict:
        return {
            "current": self.current,
            "added": self.added,
            "deleted": self.deleted,
            "modified": self.modified,
        }


@dataclass(frozen=True)
class MetricsRow:
    kind: EntityKind
    maturity: float
    change: float

    def to_dict(self) -> dict:
        return {"maturity": self.maturity, "change": self.change}


@dataclass(frozen=True)
class EvolutionReport:
    """Full multi-version result.

    ``transitions[i]`` (and ``details[i]`` when present) describe the step
    from ``versions[i]`` to ``versions[i + 1]``. ``details`` is only
    available when the report was computed from extracted inventories.
    """

    versions: Tuple[str, ...]
    inventories: Tuple[Dict[EntityKind, int], ...]
    transitions: Tuple[Dict[EntityKind, ChangeCounts], ...]
    metrics: Tuple[Dict[EntityKind, MetricsRow], ...]
    details: Optional[Tuple[dict, ...]] = None
    warnings: Tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.versions)
        if n == 0:
            raise ValueError("a report needs at least one version")
        if len(set(self.versions)) != n:
            raise ValueError("version labels must be unique")
        if len(self.inventories) != n or len(self.metrics) != n:
            raise ValueError("inventories and metrics need one entry per version")
        if len(self.transitions) != n - 1:
            raise ValueError("transitions need one entry per consecutive version pair")
        if self.details is not None and len(self.details) != n - 1:
            raise ValueError("details need one entry per consecutive version pair")

    def transition_labels(self) -> Tuple[Tuple[str, str], ...]:
        return tuple(zip(self.versions, self.versions[1:]))
