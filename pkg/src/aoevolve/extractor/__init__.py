"""Traverse release trees and extract declaration inventories."""

from aoevolve.extractor.config import ScanConfig, glob_match
from aoevolve.extractor.lexer import ParseDiagnostic, Token, strip_noise
from aoevolve.extractor.parser import extract_entities, fingerprint, fnv1a_64
from aoevolve.extractor.tree import build_inventory, extract_file, extract_version, read_source, scan_tree

__all__ = [
    "ParseDiagnostic",
    "ScanConfig",
    "Token",
    "build_inventory",
    "extract_entities",
    "extract_file",
    "extract_version",
    "fingerprint",
    "fnv1a_64",
    "glob_match",
    "read_source",
    "scan_tree",
    "strip_noise",
]
