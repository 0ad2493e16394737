"""Command-line entry point.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 parse diagnostics
under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from aoevolve import __version__
from aoevolve.errors import ConfigError, OutputError, ParseError, UsageError
from aoevolve.extractor import ScanConfig, extract_version
from aoevolve.extractor.config import DEFAULT_INCLUDE
from aoevolve.metrics import compute_report
from aoevolve.report import FORMATS, RenderOptions, load_counts, write_outputs

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_STRICT = 3

DEFAULT_OUT = Path("ao-evolve-out")

log = logging.getLogger("aoevolve")


@dataclass(frozen=True)
class RunSpec:
    mode: str  # analyze | replay-counts
    version_paths: Tuple[Path, ...] = ()
    counts_file: Optional[Path] = None
    labels: Tuple[str, ...] = ()
    scan: ScanConfig = field(default_factory=ScanConfig)
    render: RenderOptions = field(default_factory=RenderOptions)
    jobs: int = 1


def _precision(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= value <= 10:
        raise argparse.ArgumentTypeError("precision must be between 1 and 10")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_argument_group("output")
    out.add_argument("--format", choices=FORMATS, default="md", help="table format (default: md)")
    out.add_argument("--charts", action="store_true", help="also write SVG charts")
    out.add_argument("--out", type=Path, default=DEFAULT_OUT, metavar="DIR",
                     help=f"output directory (default: ./{DEFAULT_OUT})")
    out.add_argument("--precision", type=_precision, default=4, metavar="N",
                     help="decimal places for metric tables, 1-10 (default: 4)")
    out.add_argument("--stamp", action="store_true", help="embed a UTC timestamp in report.json")
    out.add_argument("--labels", help="comma-separated version labels (default: directory names)")

    scan = argparse.ArgumentParser(add_help=False)
    g = scan.add_argument_group("scanning")
    g.add_argument("--include", action="append", metavar="GLOB",
                   help=f"file glob to scan, repeatable (default: {' '.join(DEFAULT_INCLUDE)})")
    g.add_argument("--exclude", action="append", default=[], metavar="GLOB", help="file glob to skip, repeatable")
    g.add_argument("--count-constructors", action="store_true", help="count constructors as methods")
    g.add_argument("--count-interfaces", action="store_true", help="count interfaces as classes")
    g.add_argument("--strict", action="store_true", help="fail (exit 3) on any parse diagnostic")
    g.add_argument("--jobs", type=_positive, default=1, metavar="N", help="parallel extraction workers")

    parser = argparse.ArgumentParser(
        prog="ao-evolve",
        description="Evolution metrics for aspect-oriented (Java/AspectJ) code across releases.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True, metavar="COMMAND")
    a = sub.add_parser("analyze", parents=[common, scan], help="extract, diff and measure release directories",
                       description="Versions are compared in argument order.")
    a.add_argument("dirs", nargs="+", type=Path, metavar="DIR", help="release source roots, oldest first")
    r = sub.add_parser("replay-counts", parents=[common], help="compute metrics from a counts JSON file")
    r.add_argument("counts_file", type=Path, metavar="FILE")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunSpec:
    """Parse command-line arguments; usage errors exit with status 2."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    labels: Tuple[str, ...] = ()
    if ns.labels is not None:
        labels = tuple(s.strip() for s in ns.labels.split(","))
        if any(not s for s in labels):
            parser.error("--labels must not contain empty names")
        if len(set(labels)) != len(labels):
            parser.error("--labels must be unique")

    render = RenderOptions(format=ns.format, charts=ns.charts, out_dir=ns.out, precision=ns.precision,
                           stamp=datetime.now(timezone.utc).isoformat(timespec="seconds") if ns.stamp else None)
    if ns.mode == "analyze":
        paths = tuple(ns.dirs)
        if labels and len(labels) != len(paths):
            parser.error(f"--labels names {len(labels)} versions but {len(paths)} directories were given")
        if not labels:
            labels = tuple(p.resolve().name or str(p) for p in paths)
            if len(set(labels)) != len(labels):
                parser.error("directory names are not unique; pass --labels")
        scan = ScanConfig(
            include_globs=tuple(ns.include) if ns.include else DEFAULT_INCLUDE,
            exclude_globs=tuple(ns.exclude),
            count_constructors=ns.count_constructors,
            count_interfaces=ns.count_interfaces,
            strict=ns.strict,
        )
        return RunSpec("analyze", version_paths=paths, labels=labels, scan=scan, render=render, jobs=ns.jobs)
    return RunSpec("replay-counts", counts_file=ns.counts_file, labels=labels, render=render)


def _analyze(spec: RunSpec):
    inventories = []
    strict_failures = []
    for path, label in zip(spec.version_paths, spec.labels):
        try:
            inv, diags = extract_version(path, label, spec.scan, jobs=spec.jobs)
        except ParseError as exc:
            strict_failures.extend((path, d) for d in exc.diagnostics)
            continue
        for d in diags:
            print(f"{path.as_posix()}/{d}", file=sys.stderr)
        inventories.append(inv)
    if strict_failures:
        for path, d in strict_failures:
            print(f"{path.as_posix()}/{d}", file=sys.stderr)
        raise ParseError([d for _, d in strict_failures])
    return compute_report(inventories)


def _replay(spec: RunSpec):
    try:
        text = spec.counts_file.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read counts file {spec.counts_file}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{spec.counts_file}: invalid JSON: {exc}") from None
    if spec.labels:
        if not isinstance(doc, dict) or len(spec.labels) != len(doc.get("versions", ())):
            raise UsageError("--labels must name every version in the counts file")
        doc = _relabel(doc, spec.labels)
    return load_counts(doc)


def _relabel(doc: dict, labels: Sequence[str]) -> dict:
    rename = dict(zip(map(str, doc["versions"]), labels))
    doc = dict(doc, versions=list(labels))
    for key in ("inventory_counts", "inventories"):
        if isinstance(doc.get(key), dict):
            doc[key] = {rename.get(k, k): v for k, v in doc[key].items()}
    for key in ("transition_counts", "transitions"):
        if isinstance(doc.get(key), list):
            doc[key] = [
                dict(t, **{end: rename.get(str(t[end]), t[end]) for end in ("from", "to") if end in t})
                if isinstance(t, dict) else t
                for t in doc[key]
            ]
    return doc


def run(spec: RunSpec) -> int:
    """Execute a parsed request and return the process exit code."""
    try:
        report = _analyze(spec) if spec.mode == "analyze" else _replay(spec)
        written = write_outputs(report, spec.render)
    except ParseError:
        return EXIT_STRICT
    except (ConfigError, OutputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for path in written:
        print(path.as_posix())
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    try:
        spec = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
