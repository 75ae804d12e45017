"""Edge-list ingestion: SNAP-style directed lists -> partially directed graphs.

A raw directed edge list is cleaned in three fixed steps: self-arcs are
dropped, identical arcs are deduplicated, and every surviving reciprocal
pair (u, v)/(v, u) is classified as one undirected edge.  Deduplication
runs before reciprocal detection so a doubled (u, v) without its mirror
stays a single directed edge.

The text export format ("pdgraph") is deliberately rigid so golden-file
tests can compare bytes: a header line "# pdgraph n=<n>", a sorted block
of "D u v" directed lines, then a sorted block of "U u v" undirected lines
with u < v.  File ids are 1-based; in memory vertices are 0..n-1.
"""
from __future__ import annotations

import gzip
import json
import math
from array import array
from dataclasses import asdict, dataclass

import numpy as np

from .matching import VERTEX_DTYPE, MultiGraph
from .simplify import SimpleGraph


class ParseError(ValueError):
    """Malformed edge-list input; the message carries the line number."""


@dataclass(frozen=True, eq=False)
class RawArcList:
    """Arcs exactly as read (original sparse ids), plus the distinct ids."""

    arcs: np.ndarray  # (m, 2) int64, file order
    node_ids: np.ndarray  # sorted unique ids

    @property
    def num_arcs(self) -> int:
        return self.arcs.shape[0]

    @property
    def num_nodes(self) -> int:
        return self.node_ids.size


@dataclass(frozen=True)
class IngestStats:
    n: int
    directed: int
    undirected: int
    proportion_directed: float
    self_arcs_dropped: int
    duplicates_dropped: int

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @property
    def total_edges(self) -> int:
        return self.directed + self.undirected


def parse_edge_list(stream) -> RawArcList:
    """Read whitespace-separated integer pairs; '#' lines are comments.

    Streaming, one line at a time, into flat 64-bit buffers -- memory stays
    proportional to the edge count even for ~10^8-line inputs.
    """
    src = array("q")
    dst = array("q")
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(
                f"line {lineno}: expected two integers, got {line.rstrip()!r}"
            )
        try:
            src.append(int(parts[0]))
            dst.append(int(parts[1]))
        except ValueError:
            raise ParseError(
                f"line {lineno}: expected two integers, got {line.rstrip()!r}"
            ) from None
    arcs = np.empty((len(src), 2), dtype=np.int64)
    arcs[:, 0] = np.frombuffer(src, dtype=np.int64) if src else 0
    arcs[:, 1] = np.frombuffer(dst, dtype=np.int64) if dst else 0
    return RawArcList(arcs=arcs, node_ids=np.unique(arcs))


def _densify(arcs: np.ndarray) -> tuple[np.ndarray, int]:
    """Relabel sparse ids to 0..n-1 in order of first appearance."""
    flat = arcs.ravel()
    uniq, first = np.unique(flat, return_index=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size)
    dense = rank[np.searchsorted(uniq, flat)]
    return dense.reshape(-1, 2), uniq.size


def _classify(arcs: np.ndarray, n: int):
    """Self-drop, dedupe, split into directed / undirected; dense ids in."""
    if n > 2**31:
        raise ValueError("ordered-pair codes need n <= 2^31")
    t, h = arcs[:, 0], arcs[:, 1]
    keep = t != h
    self_dropped = int(arcs.shape[0] - keep.sum())
    codes = t[keep] * n + h[keep]
    uniq = np.unique(codes)
    dup_dropped = codes.size - uniq.size
    ut, uh = uniq // n, uniq % n
    recip = np.isin(uniq, uh * n + ut)
    und_codes = np.unique(
        np.minimum(ut[recip], uh[recip]) * n + np.maximum(ut[recip], uh[recip])
    )
    dir_codes = uniq[~recip]
    g = SimpleGraph(
        n=n,
        dir_tails=(dir_codes // n).astype(VERTEX_DTYPE),
        dir_heads=(dir_codes % n).astype(VERTEX_DTYPE),
        und_u=(und_codes // n).astype(VERTEX_DTYPE),
        und_v=(und_codes % n).astype(VERTEX_DTYPE),
    )
    return g, self_dropped, dup_dropped


def to_partially_directed(raw: RawArcList) -> tuple[SimpleGraph, IngestStats]:
    """Densify ids, clean the arc list, and classify reciprocal pairs."""
    dense, n = _densify(raw.arcs)
    g, self_dropped, dup_dropped = _classify(dense, n)
    total = g.num_directed + g.num_undirected
    stats = IngestStats(
        n=n,
        directed=g.num_directed,
        undirected=g.num_undirected,
        proportion_directed=g.num_directed / total if total else 0.0,
        self_arcs_dropped=self_dropped,
        duplicates_dropped=dup_dropped,
    )
    return g, stats


def ingest_path(path) -> tuple[SimpleGraph, IngestStats]:
    """Parse a (possibly gzip-compressed) edge-list file and classify it."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt") as fh:
        raw = parse_edge_list(fh)
    return to_partially_directed(raw)


# ---------------------------------------------------------------------------
# pdgraph text format
# ---------------------------------------------------------------------------

def write_pdgraph(g: SimpleGraph, path) -> None:
    """Canonical text export; byte-stable for identical graphs."""
    with open(path, "w") as fh:
        fh.write(f"# pdgraph n={g.n}\n")
        fh.writelines(
            f"D {t + 1} {h + 1}\n"
            for t, h in zip(g.dir_tails.tolist(), g.dir_heads.tolist())
        )
        fh.writelines(
            f"U {u + 1} {v + 1}\n"
            for u, v in zip(g.und_u.tolist(), g.und_v.tolist())
        )


def dump_multigraph(mg: MultiGraph, path) -> None:
    """Debug export of a raw matching, flagged so readers don't confuse it
    with a simple graph; duplicates and self-loops appear verbatim."""
    with open(path, "w") as fh:
        fh.write(f"# pdgraph multigraph n={mg.n}\n")
        fh.write(
            f"# leftover_und={mg.leftover_und} leftover_in={mg.leftover_in} "
            f"leftover_out={mg.leftover_out}\n"
        )
        fh.writelines(
            f"D {t + 1} {h + 1}\n"
            for t, h in zip(mg.arc_tails.tolist(), mg.arc_heads.tolist())
        )
        fh.writelines(
            f"U {u + 1} {v + 1}\n"
            for u, v in zip(mg.und_u.tolist(), mg.und_v.tolist())
        )


def read_pdgraph(path) -> SimpleGraph:
    """Read a pdgraph file back; exact inverse of write_pdgraph.

    Ids are taken literally (1-based in the file, minus one in memory) and
    the header fixes n, so isolated vertices survive the round trip.  U
    lines count as a reciprocal arc pair, D lines as a single arc, and the
    usual classification then reproduces the graph.
    """
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if header.startswith("# pdgraph multigraph"):
            raise ParseError("line 1: multigraph debug dump, not a simple graph")
        if not header.startswith("# pdgraph n="):
            raise ParseError("line 1: missing '# pdgraph n=<n>' header")
        try:
            n = int(header.split("=", 1)[1])
        except ValueError:
            raise ParseError("line 1: malformed vertex count") from None
        if n < 0:
            raise ParseError("line 1: negative vertex count")
        src = array("q")
        dst = array("q")
        for lineno, line in enumerate(fh, start=2):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 3 or parts[0] not in ("D", "U"):
                raise ParseError(
                    f"line {lineno}: expected 'D u v' or 'U u v', got {line.rstrip()!r}"
                )
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(
                    f"line {lineno}: expected integer ids, got {line.rstrip()!r}"
                ) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex id outside 1..{n}")
            src.append(u - 1)
            dst.append(v - 1)
            if parts[0] == "U":
                src.append(v - 1)
                dst.append(u - 1)
    arcs = np.empty((len(src), 2), dtype=np.int64)
    arcs[:, 0] = np.frombuffer(src, dtype=np.int64) if src else 0
    arcs[:, 1] = np.frombuffer(dst, dtype=np.int64) if dst else 0
    g, _, _ = _classify(arcs, n)
    return g


def stats_of(g: SimpleGraph, *, self_arcs=0, duplicates=0) -> IngestStats:
    """IngestStats view of an existing graph (drop counters optional)."""
    total = g.num_directed + g.num_undirected
    return IngestStats(
        n=g.n,
        directed=g.num_directed,
        undirected=g.num_undirected,
        proportion_directed=g.num_directed / total if total else 0.0,
        self_arcs_dropped=self_arcs,
        duplicates_dropped=duplicates,
    )
