from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

DEFAULT_INCLUDE = ("**/*.java", "**/*.aj")


@dataclass(frozen=True)
class ScanConfig:
    include_globs: Tuple[str, ...] = DEFAULT_INCLUDE
    exclude_globs: Tuple[str, ...] = ()
    count_constructors: bool = False
    count_interfaces: bool = False
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "include_globs", tuple(self.include_globs))
        object.__setattr__(self, "exclude_globs", tuple(self.exclude_globs))

    def wants(self, rel_path: str) -> bool:
        """Whether a root-relative, forward-slash path is selected."""
        return any(glob_match(g, rel_path) for g in self.include_globs) and not any(
            glob_match(g, rel_path) for g in self.exclude_globs
        )


@lru_cache(maxsize=None)
def _compile(pattern: str) -> "re.Pattern[str]":
    # '**/' spans zero or more directories; '*' and '?' never cross '/'.
    out = []
    i = 0
    while i < len(pattern):
        if pattern.startswith("**/", i):
            out.append("(?:.*/)?")
            i += 3
        elif pattern.startswith("**", i):
            out.append(".*")
            i += 2
        elif pattern[i] == "*":
            out.append("[^/]*")
            i += 1
        elif pattern[i] == "?":
            out.append("[^/]")
            i += 1
        else:
            out.append(re.escape(pattern[i]))
            i += 1
    return re.compile("".join(out) + r"\Z")


def glob_match(pattern: str, rel_path: str) -> bool:
    return _compile(pattern.replace("\\", "/")).match(rel_path) is not None
