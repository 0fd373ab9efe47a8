"""Edge-list files and JSON configuration documents."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from netlang.errors import ConfigError, DataError
from netlang.graph import Graph

log = logging.getLogger(__name__)

NODES_HEADER = "# nodes:"
META_HEADER = "# meta:"


@dataclass
class EdgeListResult:
    graph: Graph
    labels: Optional[list[str]] = None
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0
    meta: dict = field(default_factory=dict)


def parse_edgelist(lines: Iterable[str], labels: bool = False) -> EdgeListResult:
    """Parse whitespace-separated ``u v`` lines.

    ``#`` lines are comments, except ``# nodes: N`` (fixes the node count,
    keeping isolated nodes) and ``# meta: {...}`` (generator provenance).
    With ``labels=True`` tokens are arbitrary strings, indexed densely in
    order of first appearance.
    """
    pairs = []
    declared_n = None
    meta = {}
    index: dict[str, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(NODES_HEADER):
                try:
                    declared_n = int(line[len(NODES_HEADER):])
                except ValueError:
                    raise DataError(f"line {lineno}: malformed node-count header {line!r}") from None
            elif line.startswith(META_HEADER):
                try:
                    meta = json.loads(line[len(META_HEADER):])
                except json.JSONDecodeError:
                    log.warning("line %d: unreadable meta header ignored", lineno)
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise DataError(f"line {lineno}: expected 2 fields, found {len(tokens)}")
        if labels:
            ids = []
            for tok in tokens:
                if tok not in index:
                    index[tok] = len(index)
                ids.append(index[tok])
            pairs.append((ids[0], ids[1]))
        else:
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise DataError(
                    f"line {lineno}: node ids must be non-negative integers (use labels for strings)"
                ) from None
            if u < 0 or v < 0:
                raise DataError(f"line {lineno}: negative node id")
            pairs.append((u, v))

    if labels:
        n = len(index)
    else:
        n = max((max(p) for p in pairs), default=-1) + 1
    if declared_n is not None:
        if declared_n < n:
            raise DataError(f"node-count header says {declared_n} but ids reach {n - 1}")
        if not labels:
            n = declared_n
    g = Graph(n)
    loops = dups = 0
    for u, v in pairs:
        if u == v:
            loops += 1
        elif not g.add_edge(u, v):
            dups += 1
    if loops or dups:
        log.warning("dropped %d self-loop and %d duplicate edge lines", loops, dups)
    g.meta = meta
    names = sorted(index, key=index.get) if labels else None
    return EdgeListResult(g, names, loops, dups, meta)


def read_edgelist(path, labels: bool = False) -> EdgeListResult:
    with open(path, encoding="utf-8") as fh:
        return parse_edgelist(fh, labels)


def format_edgelist(g: Graph, meta: Optional[dict] = None) -> str:
    out = [f"{NODES_HEADER} {g.n}", f"# edges: {g.m}"]
    if meta:
        out.append(f"{META_HEADER} {json.dumps(meta, sort_keys=True)}")
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def format_label_map(labels: list[str]) -> str:
    return "".join(f"{i}\t{name}\n" for i, name in enumerate(labels))


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def load_config(path, allowed: Iterable[str]) -> dict:
    """Read a JSON object whose keys must all be in ``allowed``."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be an object")
    allowed = set(allowed)
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}; allowed: {sorted(allowed)}")
    return doc
