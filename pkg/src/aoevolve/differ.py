"""Cross-version comparison of inventories.

Entities are matched purely by identity key, so the diff is set algebra:
keys only in the newer inventory are added, keys only in the older one are
deleted, and shared keys whose fingerprints differ are modified. There is no
rename detection; a changed signature is a delete plus an add.

Identity key schemas::

    Class     C:<package>.<NestingPath>
    Aspect    A:<package>.<NestingPath>
    Method    M:<ownerKey>.<name>/<arity>
    Pointcut  P:<ownerKey>.<name>/<arity>
    Advice    D:<ownerKey>.<adviceKind>:<compacted pointcut expression>
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from aoevolve.model import KINDS, ChangeCounts, EntityKind, VersionInventory, count_of

# Placed between two adjacent word tokens when compacting an expression.
WORD_JOINER = "~"

_WORD = re.compile(r"[\w$]")
_SPACE = re.compile(r"\s")


def _qualified(package: str, path: Sequence[str]) -> str:
    return ".".join([package, *path] if package else list(path))


def class_key(package: str, path: Sequence[str]) -> str:
    return "C:" + _qualified(package, path)


def aspect_key(package: str, path: Sequence[str]) -> str:
    return "A:" + _qualified(package, path)


def method_key(owner: str, name: str, arity: int) -> str:
    return f"M:{owner}.{name}/{arity}"


def pointcut_key(owner: str, name: str, arity: int) -> str:
    return f"P:{owner}.{name}/{arity}"


def advice_key(owner: str, advice_kind: str, expression: Iterable[str]) -> str:
    return f"D:{owner}.{advice_kind}:{compact_expression(expression)}"


def compact_expression(tokens: Iterable[str]) -> str:
    """Join expression tokens without whitespace.

    Adjacent word tokens get :data:`WORD_JOINER` between them so that
    ``call(void Foo.bar())`` and ``call(voidFoo.bar())`` stay distinct.
    Whitespace inside literal tokens is escaped.
    """
    out = []
    prev_word = False
    for tok in tokens:
        if not tok:
            continue
        tok = _SPACE.sub(lambda m: f"\\u{ord(m.group()):04x}", tok)
        if prev_word and _WORD.match(tok[0]):
            out.append(WORD_JOINER)
        out.append(tok)
        prev_word = bool(_WORD.match(tok[-1]))
    return "".join(out)


def identity_key(kind: EntityKind, **ctx) -> str:
    """Build the identity key of an entity from its nesting context.

    Accepted context per kind: ``package`` and ``path`` for classes and
    aspects; ``owner``, ``name`` and ``arity`` for methods and pointcuts;
    ``owner``, ``advice_kind`` and ``expression`` (token texts) for advice.
    """
    kind = EntityKind(kind)
    if kind is EntityKind.CLASS:
        return class_key(ctx.get("package", ""), ctx["path"])
    if kind is EntityKind.ASPECT:
        return aspect_key(ctx.get("package", ""), ctx["path"])
    if kind is EntityKind.METHOD:
        return method_key(ctx["owner"], ctx["name"], ctx["arity"])
    if kind is EntityKind.POINTCUT:
        return pointcut_key(ctx["owner"], ctx["name"], ctx["arity"])
    return advice_key(ctx["owner"], ctx["advice_kind"], ctx["expression"])


@dataclass(frozen=True)
class TransitionDetail:
    kind: EntityKind
    added_keys: Tuple[str, ...] = ()
    deleted_keys: Tuple[str, ...] = ()
    modified_keys: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "added": list(self.added_keys),
            "deleted": list(self.deleted_keys),
            "modified": list(self.modified_keys),
        }


def diff_kind(prev: VersionInventory, curr: VersionInventory, kind: EntityKind):
    """Classify the entities of one kind between two releases.

    Returns ``(ChangeCounts, TransitionDetail)``.
    """
    old = prev.keyed(kind)
    new = curr.keyed(kind)
    added = sorted(new.keys() - old.keys())
    deleted = sorted(old.keys() - new.keys())
    modified = sorted(k for k in new.keys() & old.keys() if new[k].fingerprint != old[k].fingerprint)
    counts = ChangeCounts(
        kind=kind,
        current=count_of(curr, kind),
        added=len(added),
        deleted=len(deleted),
        modified=len(modified),
    )
    return counts, TransitionDetail(kind, tuple(added), tuple(deleted), tuple(modified))


def diff_versions(prev: VersionInventory, curr: VersionInventory) -> Dict[EntityKind, tuple]:
    """Apply :func:`diff_kind` to every kind, in canonical kind order."""
    return {kind: diff_kind(prev, curr, kind) for kind in KINDS}
