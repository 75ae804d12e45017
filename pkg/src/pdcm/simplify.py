"""Erasure rules: raw multigraph -> simple partially directed graph.

The rules run in a fixed order and each records how much it erased:

  (a) unconnected stubs are dropped (they never formed an edge);
  (b) self-loops are erased, directed and undirected alike;
  (c) of parallel identical edges all but one are erased;
  (d) directed edges parallel to an undirected edge are erased;
  (e) each reciprocal pair of directed edges becomes one undirected edge.

The order matters: running (d) before (e) guarantees that an edge created
by (e) can never duplicate an existing undirected edge, because after (c)
each ordered pair appears at most once and after (d) no surviving arc is
parallel to an undirected edge.

Two implementations produce bit-identical results: a pure-Python path for
tiny graphs (cheaper than numpy's per-call overhead, which dominates at a
dozen edges) and a vectorized path for everything else.  A property test
drives both on the same inputs.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .matching import VERTEX_DTYPE, MultiGraph

_SMALL_EDGES = 128
_SMALL_N = 64


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """A simple partially directed graph in canonical array form.

    Directed edges are (tail, head) with tail != head; undirected edges are
    stored with u < v.  Both lists are lexicographically sorted and free of
    duplicates.  The constructor canonicalizes order; deeper invariants
    (no reciprocal arcs, no arc parallel to an undirected edge) are checked
    by validate_simple_graph.
    """

    n: int
    dir_tails: np.ndarray
    dir_heads: np.ndarray
    und_u: np.ndarray
    und_v: np.ndarray

    def __post_init__(self):
        try:
            m = len(self.dir_tails) + len(self.und_u)
        except TypeError:
            m = _SMALL_EDGES + 1
        if m <= _SMALL_EDGES:
            self._init_small()
        else:
            self._init_arrays()

    def _init_arrays(self):
        n = self.n
        t = np.ascontiguousarray(self.dir_tails, dtype=VERTEX_DTYPE)
        h = np.ascontiguousarray(self.dir_heads, dtype=VERTEX_DTYPE)
        u = np.ascontiguousarray(self.und_u, dtype=VERTEX_DTYPE)
        v = np.ascontiguousarray(self.und_v, dtype=VERTEX_DTYPE)
        if t.shape != h.shape or u.shape != v.shape:
            raise ValueError("edge arrays must align")
        if (t == h).any():
            raise ValueError("directed self-loop")
        if (u == v).any():
            raise ValueError("undirected self-loop")
        for arr in (t, h, u, v):
            if arr.size and int(arr.max()) >= n:
                raise ValueError("vertex id out of range")
        u, v = np.minimum(u, v), np.maximum(u, v)
        dcode = t.astype(np.int64) * n + h
        dorder = np.argsort(dcode)
        ucode = u.astype(np.int64) * n + v
        uorder = np.argsort(ucode)
        if np.any(np.diff(dcode[dorder]) == 0):
            raise ValueError("duplicate directed edge")
        if np.any(np.diff(ucode[uorder]) == 0):
            raise ValueError("duplicate undirected edge")
        object.__setattr__(self, "dir_tails", t[dorder])
        object.__setattr__(self, "dir_heads", h[dorder])
        object.__setattr__(self, "und_u", u[uorder])
        object.__setattr__(self, "und_v", v[uorder])

    def _init_small(self):
        # plain-Python twin of _init_arrays: same checks in the same order,
        # same canonical result, without per-call numpy overhead on graphs
        # of a few edges (notably the Monte Carlo replicate loop)
        n = self.n

        def aslist(x):
            return x.tolist() if isinstance(x, np.ndarray) else list(x)

        t, h, u, v = map(aslist, (self.dir_tails, self.dir_heads,
                                  self.und_u, self.und_v))
        if len(t) != len(h) or len(u) != len(v):
            raise ValueError("edge arrays must align")
        for a, b in zip(t, h):
            if a == b:
                raise ValueError("directed self-loop")
        for a, b in zip(u, v):
            if a == b:
                raise ValueError("undirected self-loop")
        for lst in (t, h, u, v):
            if lst and not 0 <= min(lst) <= max(lst) < n:
                raise ValueError("vertex id out of range")
        dir_pairs = sorted(zip(t, h))
        und_pairs = sorted((a, b) if a < b else (b, a) for a, b in zip(u, v))
        for i in range(1, len(dir_pairs)):
            if dir_pairs[i] == dir_pairs[i - 1]:
                raise ValueError("duplicate directed edge")
        for i in range(1, len(und_pairs)):
            if und_pairs[i] == und_pairs[i - 1]:
                raise ValueError("duplicate undirected edge")
        md, mu = len(dir_pairs), len(und_pairs)
        object.__setattr__(self, "dir_tails", np.fromiter(
            (p[0] for p in dir_pairs), dtype=VERTEX_DTYPE, count=md))
        object.__setattr__(self, "dir_heads", np.fromiter(
            (p[1] for p in dir_pairs), dtype=VERTEX_DTYPE, count=md))
        object.__setattr__(self, "und_u", np.fromiter(
            (p[0] for p in und_pairs), dtype=VERTEX_DTYPE, count=mu))
        object.__setattr__(self, "und_v", np.fromiter(
            (p[1] for p in und_pairs), dtype=VERTEX_DTYPE, count=mu))

    @property
    def num_directed(self) -> int:
        return self.dir_tails.shape[0]

    @property
    def num_undirected(self) -> int:
        return self.und_u.shape[0]

    def directed_pairs(self) -> np.ndarray:
        return np.stack([self.dir_tails, self.dir_heads], axis=1)

    def undirected_pairs(self) -> np.ndarray:
        return np.stack([self.und_u, self.und_v], axis=1)

    def as_sets(self) -> tuple[set, set]:
        """(directed, undirected) as sets of int tuples; small graphs only."""
        d = {(int(a), int(b)) for a, b in zip(self.dir_tails, self.dir_heads)}
        u = {(int(a), int(b)) for a, b in zip(self.und_u, self.und_v)}
        return d, u

    def degree_triples(self) -> np.ndarray:
        """(n, 3) int64 array of per-vertex (in, out, und) degrees.

        Computed once and cached; the returned array is marked read-only
        because every caller shares it.
        """
        deg = getattr(self, "_degree_triples", None)
        if deg is None:
            n = self.n
            deg = np.empty((n, 3), dtype=np.int64)
            deg[:, 0] = np.bincount(self.dir_heads, minlength=n)
            deg[:, 1] = np.bincount(self.dir_tails, minlength=n)
            deg[:, 2] = np.bincount(self.und_u, minlength=n) + np.bincount(
                self.und_v, minlength=n
            )
            deg.setflags(write=False)
            object.__setattr__(self, "_degree_triples", deg)
        return deg


def validate_simple_graph(g: SimpleGraph) -> None:
    """Raise ValueError if g breaks any simplicity invariant."""
    n = g.n
    dcode = g.dir_tails.astype(np.int64) * n + g.dir_heads
    ucode = g.und_u.astype(np.int64) * n + g.und_v
    if (g.dir_tails == g.dir_heads).any() or (g.und_u == g.und_v).any():
        raise ValueError("self-loop present")
    if dcode.size > 1 and np.any(np.diff(dcode) <= 0):
        raise ValueError("directed edges unsorted or duplicated")
    if ucode.size > 1 and np.any(np.diff(ucode) <= 0):
        raise ValueError("undirected edges unsorted or duplicated")
    if (g.und_u > g.und_v).any():
        raise ValueError("undirected pair not normalized")
    rev = g.dir_heads.astype(np.int64) * n + g.dir_tails
    if np.isin(dcode, rev).any():
        raise ValueError("reciprocal directed pair present")
    norm = (
        np.minimum(g.dir_tails, g.dir_heads).astype(np.int64) * n
        + np.maximum(g.dir_tails, g.dir_heads)
    )
    if np.isin(norm, ucode).any():
        raise ValueError("directed edge parallel to an undirected edge")


@dataclass(frozen=True)
class ErasureReport:
    """Per-rule erasure counts plus the number of degree-modified vertices."""

    unconnected_und: int
    unconnected_dir: int
    self_loops_dir: int
    self_loops_und: int
    parallel_dir: int
    parallel_und: int
    dir_parallel_to_und: int
    reciprocal_pairs_converted: int
    modified_vertices: int

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @property
    def total_erased_edges(self) -> int:
        return (
            self.self_loops_dir
            + self.self_loops_und
            + self.parallel_dir
            + self.parallel_und
            + self.dir_parallel_to_und
            + self.reciprocal_pairs_converted
        )


def _simplify_small(mg: MultiGraph):
    """Set-based rules for tiny graphs; mirrors _simplify_arrays exactly."""
    arcs = list(zip(mg.arc_tails.tolist(), mg.arc_heads.tolist()))
    unds = list(zip(mg.und_u.tolist(), mg.und_v.tolist()))

    kept_arcs = [(t, h) for t, h in arcs if t != h]
    self_dir = len(arcs) - len(kept_arcs)
    kept_unds = [(u, v) for u, v in unds if u != v]
    self_und = len(unds) - len(kept_unds)

    dir_set = set(kept_arcs)
    parallel_dir = len(kept_arcs) - len(dir_set)
    und_set = set(kept_unds)
    parallel_und = len(kept_unds) - len(und_set)

    survivors = {
        (t, h) for t, h in dir_set
        if ((t, h) if t < h else (h, t)) not in und_set
    }
    dir_parallel = len(dir_set) - len(survivors)

    recip = {(t, h) for t, h in survivors if (h, t) in survivors}
    converted = {(t, h) if t < h else (h, t) for t, h in recip}
    final_dir = sorted(survivors - recip)
    final_und = sorted(und_set | converted)

    return (
        self_dir, self_und, parallel_dir, parallel_und, dir_parallel,
        len(recip) // 2, final_dir, final_und,
    )


def _simplify_arrays(mg: MultiGraph):
    n = mg.n
    if n > 2**31:
        raise ValueError("array path encodes ordered pairs in 64 bits")
    t, h = mg.arc_tails, mg.arc_heads
    loop = t == h
    self_dir = int(loop.sum())
    dcode = t.astype(np.int64)[~loop] * n + h[~loop]

    u, v = mg.und_u, mg.und_v
    loop_u = u == v
    self_und = int(loop_u.sum())
    ucode = u.astype(np.int64)[~loop_u] * n + v[~loop_u]

    dcode_unique = np.unique(dcode)
    parallel_dir = dcode.size - dcode_unique.size
    ucode_unique = np.unique(ucode)
    parallel_und = ucode.size - ucode_unique.size

    dt = dcode_unique // n
    dh = dcode_unique % n
    norm = np.minimum(dt, dh) * n + np.maximum(dt, dh)
    parallel_mask = np.isin(norm, ucode_unique, assume_unique=False)
    dir_parallel = int(parallel_mask.sum())
    dcode_unique = dcode_unique[~parallel_mask]

    dt = dcode_unique // n
    dh = dcode_unique % n
    rev = dh * n + dt
    recip_mask = np.isin(dcode_unique, rev)
    pairs = int(recip_mask.sum()) // 2
    new_und = np.unique(
        np.minimum(dt[recip_mask], dh[recip_mask]) * n
        + np.maximum(dt[recip_mask], dh[recip_mask])
    )
    final_dcode = dcode_unique[~recip_mask]
    final_ucode = np.sort(np.concatenate([ucode_unique, new_und]))

    final_dir = list(zip((final_dcode // n).tolist(), (final_dcode % n).tolist()))
    final_und = list(zip((final_ucode // n).tolist(), (final_ucode % n).tolist()))
    return (
        self_dir, self_und, parallel_dir, parallel_und, dir_parallel,
        pairs, final_dir, final_und,
    )


def simplify(mg: MultiGraph) -> tuple[SimpleGraph, ErasureReport]:
    """Apply rules (a)-(e) in order; return the simple graph and the counts.

    modified_vertices compares each vertex's final degree triple against
    the drawn one, so a reciprocal conversion marks all involved vertices
    as modified even though their total stub count is unchanged.
    """
    small = mg.n <= _SMALL_N and (mg.n_arcs + mg.n_und_edges) <= _SMALL_EDGES
    impl = _simplify_small if small else _simplify_arrays
    (self_dir, self_und, parallel_dir, parallel_und, dir_parallel,
     pairs, final_dir, final_und) = impl(mg)

    if small:
        g = SimpleGraph(
            n=mg.n,
            dir_tails=[p[0] for p in final_dir],
            dir_heads=[p[1] for p in final_dir],
            und_u=[p[0] for p in final_und],
            und_v=[p[1] for p in final_und],
        )
    else:
        dir_arr = np.array(final_dir, dtype=VERTEX_DTYPE).reshape(-1, 2)
        und_arr = np.array(final_und, dtype=VERTEX_DTYPE).reshape(-1, 2)
        g = SimpleGraph(
            n=mg.n,
            dir_tails=dir_arr[:, 0],
            dir_heads=dir_arr[:, 1],
            und_u=und_arr[:, 0],
            und_v=und_arr[:, 1],
        )
    modified = int((g.degree_triples() != mg.source_degrees.triples).any(axis=1).sum())
    report = ErasureReport(
        unconnected_und=mg.leftover_und,
        unconnected_dir=mg.leftover_in + mg.leftover_out,
        self_loops_dir=self_dir,
        self_loops_und=self_und,
        parallel_dir=parallel_dir,
        parallel_und=parallel_und,
        dir_parallel_to_und=dir_parallel,
        reciprocal_pairs_converted=pairs,
        modified_vertices=modified,
    )
    return g, report
