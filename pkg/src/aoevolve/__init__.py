"""Evolution metrics for aspect-oriented code bases.

Extracts class, method, aspect, pointcut and advice inventories from
successive releases of a Java/AspectJ source tree, diffs consecutive
releases and computes maturity indices and change metrics per entity kind.
"""

from aoevolve.model import (
    ChangeCounts,
    Entity,
    EntityKind,
    EvolutionReport,
    MetricsRow,
    SourceLocation,
    VersionInventory,
    count_of,
)

__all__ = [
    "ChangeCounts",
    "Entity",
    "EntityKind",
    "EvolutionReport",
    "MetricsRow",
    "SourceLocation",
    "VersionInventory",
    "count_of",
]

__version__ = "0.1.0"
