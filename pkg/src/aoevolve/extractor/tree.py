"""Source-tree traversal and per-version inventory assembly."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from aoevolve.errors import ConfigError, ParseError
from aoevolve.extractor.config import ScanConfig
from aoevolve.extractor.lexer import ParseDiagnostic
from aoevolve.extractor.parser import extract_entities
from aoevolve.model import Entity, VersionInventory


def scan_tree(root: Union[str, Path], cfg: Optional[ScanConfig] = None) -> List[str]:
    """Root-relative, forward-slash paths of selected files, sorted.

    Symlinked directories are not descended into.
    """
    cfg = cfg or ScanConfig()
    root = Path(root)
    if not root.is_dir():
        raise ConfigError(f"not a readable directory: {root}")
    if not os.access(root, os.R_OK | os.X_OK):
        raise ConfigError(f"directory not readable: {root}")

    def fail(err: OSError):
        raise ConfigError(f"cannot read {err.filename}: {err.strerror}")

    found = []
    for dirpath, dirnames, filenames in os.walk(root, onerror=fail, followlinks=False):
        rel_dir = Path(dirpath).relative_to(root).as_posix()
        for name in filenames:
            rel = name if rel_dir == "." else f"{rel_dir}/{name}"
            if cfg.wants(rel):
                found.append(rel)
    return sorted(found)


def read_source(path: Union[str, Path], rel: str) -> Tuple[str, List[ParseDiagnostic]]:
    """Decode a source file as UTF-8, replacing invalid bytes with a diagnostic."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return data.decode("utf-8-sig"), []
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        diag = ParseDiagnostic(rel, line, "invalid UTF-8 bytes replaced")
        return data.decode("utf-8-sig", errors="replace"), [diag]


def extract_file(root: Union[str, Path], rel: str, cfg: ScanConfig):
    """Extract one file tolerantly; returns ``(rel, entities, diagnostics)``."""
    text, diags = read_source(Path(root) / rel, rel)
    entities, more = extract_entities(text, rel, replace(cfg, strict=False))
    return rel, entities, diags + more


def build_inventory(
    label: str,
    per_file: Union[Mapping[str, Sequence[Entity]], Iterable[Sequence[Entity]]],
) -> VersionInventory:
    """Merge per-file entity lists into one inventory.

    Duplicate keys within a kind keep the first occurrence bare and get
    ``#2``, ``#3``, ... in file-then-line order, so the result does not
    depend on the order the files were parsed in.
    """
    lists = per_file.values() if isinstance(per_file, Mapping) else per_file
    by_file: Dict[str, List[Entity]] = {}
    for entities in lists:
        for e in entities:
            by_file.setdefault(e.location.file, []).append(e)

    used = set()
    final = []
    for file in sorted(by_file):
        for e in sorted(by_file[file], key=lambda e: e.location.line):
            key = e.identity_key
            if (e.kind, key) in used:
                n = 2
                while (e.kind, f"{key}#{n}") in used:
                    n += 1
                e = e.with_key(f"{key}#{n}")
            used.add((e.kind, e.identity_key))
            final.append(e)
    return VersionInventory.from_entities(label, final)


def extract_version(
    root: Union[str, Path],
    label: Optional[str] = None,
    cfg: Optional[ScanConfig] = None,
    jobs: int = 1,
) -> Tuple[VersionInventory, List[ParseDiagnostic]]:
    """Scan, parse and inventory one release directory.

    With ``jobs > 1`` files are parsed in a process pool; the result is
    identical to the sequential one. In strict mode a :class:`ParseError`
    carrying every diagnostic is raised after all files were read.
    """
    cfg = cfg or ScanConfig()
    root = Path(root)
    files = scan_tree(root, cfg)
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(extract_file, [root] * len(files), files, [cfg] * len(files)))
    else:
        results = [extract_file(root, rel, cfg) for rel in files]
    diags = [d for _, _, ds in results for d in ds]
    if cfg.strict and diags:
        raise ParseError(diags)
    inv = build_inventory(label if label is not None else root.name, {rel: ents for rel, ents, _ in results})
    return inv, diags

