"""Uniform stub matching: degree sequence -> raw partially directed multigraph.

Every vertex contributes in-stubs, out-stubs and undirected stubs according
to its degree triple.  Undirected stubs are paired uniformly at random with
each other; in-stubs are then paired uniformly with out-stubs.  The result
may contain self-loops and parallel edges (it is a multigraph) and is fed to
the simplifier afterwards.

Draw order is part of the determinism contract: a single generator seeded
with the given seed first permutes the undirected stub list, then permutes
one directed stub list.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degrees import DegreeSequence
from .rng import make_generator

VERTEX_DTYPE = np.uint32  # keeps ~4e7-edge graphs to a few hundred MB


@dataclass(frozen=True, eq=False)
class MultiGraph:
    """Raw matching output: arcs and undirected edges, duplicates included.

    ``unpaired_dir`` / ``unpaired_und`` record which vertices own the stubs
    that found no partner (all on the surplus side for directed stubs), so
    downstream accounting can attribute the erasures of rule (a) to the
    right vertices.
    """

    n: int
    arc_tails: np.ndarray
    arc_heads: np.ndarray
    und_u: np.ndarray
    und_v: np.ndarray
    leftover_und: int
    leftover_in: int
    leftover_out: int
    unpaired_und: np.ndarray
    unpaired_dir: np.ndarray
    source_degrees: DegreeSequence

    def __post_init__(self):
        for name in ("arc_tails", "arc_heads", "und_u", "und_v",
                     "unpaired_und", "unpaired_dir"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=VERTEX_DTYPE)
            object.__setattr__(self, name, arr)
        if self.arc_tails.shape != self.arc_heads.shape:
            raise ValueError("arc arrays must align")
        if self.und_u.shape != self.und_v.shape:
            raise ValueError("undirected arrays must align")
        if self.leftover_und not in (0, 1):
            raise ValueError("leftover_und must be 0 or 1")
        # unordered pairs are kept normalized so the simplifier can compare
        # them by a single integer code
        u = np.minimum(self.und_u, self.und_v)
        v = np.maximum(self.und_u, self.und_v)
        object.__setattr__(self, "und_u", u)
        object.__setattr__(self, "und_v", v)

    @classmethod
    def from_edges(cls, n, arcs, und_edges, *, unpaired_in=(), unpaired_out=(),
                   unpaired_und=(), source_degrees=None) -> "MultiGraph":
        """Build a MultiGraph from explicit edge lists (mostly for tests).

        When source_degrees is omitted it is derived from the edges and the
        unpaired-stub lists, i.e. the degree sequence that would have
        produced exactly this matching.
        """
        arcs = np.asarray(arcs, dtype=VERTEX_DTYPE).reshape(-1, 2)
        unds = np.asarray(und_edges, dtype=VERTEX_DTYPE).reshape(-1, 2)
        unpaired_in = np.asarray(unpaired_in, dtype=VERTEX_DTYPE)
        unpaired_out = np.asarray(unpaired_out, dtype=VERTEX_DTYPE)
        unpaired_und_arr = np.asarray(unpaired_und, dtype=VERTEX_DTYPE)
        if source_degrees is None:
            deg = np.zeros((n, 3), dtype=np.int64)
            deg[:, 0] = np.bincount(arcs[:, 1], minlength=n)
            deg[:, 0] += np.bincount(unpaired_in, minlength=n)
            deg[:, 1] = np.bincount(arcs[:, 0], minlength=n)
            deg[:, 1] += np.bincount(unpaired_out, minlength=n)
            deg[:, 2] = np.bincount(unds[:, 0], minlength=n)
            deg[:, 2] += np.bincount(unds[:, 1], minlength=n)
            deg[:, 2] += np.bincount(unpaired_und_arr, minlength=n)
            source_degrees = DegreeSequence(deg)
        return cls(
            n=n,
            arc_tails=arcs[:, 0],
            arc_heads=arcs[:, 1],
            und_u=unds[:, 0],
            und_v=unds[:, 1],
            leftover_und=int(unpaired_und_arr.size),
            leftover_in=int(unpaired_in.size),
            leftover_out=int(unpaired_out.size),
            unpaired_und=unpaired_und_arr,
            unpaired_dir=np.concatenate([unpaired_in, unpaired_out]),
            source_degrees=source_degrees,
        )

    @property
    def arcs(self) -> np.ndarray:
        """(m, 2) array of (tail, head) pairs."""
        return np.stack([self.arc_tails, self.arc_heads], axis=1)

    @property
    def und_edges(self) -> np.ndarray:
        """(m, 2) array of unordered pairs, stored with u <= v."""
        return np.stack([self.und_u, self.und_v], axis=1)

    @property
    def n_arcs(self) -> int:
        return self.arc_tails.shape[0]

    @property
    def n_und_edges(self) -> int:
        return self.und_u.shape[0]


def _stub_owners(seq: DegreeSequence):
    """Owner ids of every (in, out, und) stub, cached on the sequence.

    The repeat-expansion is the same for every matching of one sequence,
    so it is built once.  The cached arrays are never aliased by results:
    permutation copies, and the positionally-paired shorter list is
    copied explicitly in match_stubs.
    """
    cached = getattr(seq, "_stub_owner_arrays", None)
    if cached is None:
        ids = np.arange(seq.n, dtype=VERTEX_DTYPE)
        cached = (
            np.repeat(ids, seq.in_deg),
            np.repeat(ids, seq.out_deg),
            np.repeat(ids, seq.und_deg),
        )
        object.__setattr__(seq, "_stub_owner_arrays", cached)
    return cached


def match_stubs(seq: DegreeSequence, seed: int) -> MultiGraph:
    """Pair the stubs of ``seq`` uniformly at random.

    Undirected phase: the undirected stub list is expanded (one entry per
    stub, owner's id), uniformly permuted, and consecutive entries are
    paired; an odd trailing stub is left over.  Directed phase: in-stubs
    and out-stubs are expanded the same way and the *longer* list is
    permuted, then the two are paired positionally up to the shorter
    length.  Permuting the longer side makes the unpaired surplus a
    uniformly random subset of its stubs -- permuting the shorter side
    would always strand the lexicographically last stubs of the longer
    one.  Either way every perfect matching of the paired portion is
    equally likely.
    """
    n = seq.n
    if n > 2**32:
        raise ValueError("vertex ids are stored as 32-bit integers")
    rng = make_generator(seed)
    in_stubs, out_stubs, und_stubs = _stub_owners(seq)

    shuffled = rng.permutation(und_stubs)
    half = und_stubs.size // 2
    paired = shuffled[: 2 * half]
    # consecutive pairing; the MultiGraph constructor normalizes u <= v
    und_u = paired[0::2]
    und_v = paired[1::2]
    leftover_und = int(und_stubs.size % 2)
    unpaired_und = shuffled[2 * half :]

    if in_stubs.size >= out_stubs.size:
        shuffled_in = rng.permutation(in_stubs)
        k = out_stubs.size
        arc_tails, arc_heads = out_stubs.copy(), shuffled_in[:k]
        unpaired_dir = shuffled_in[k:]
    else:
        shuffled_out = rng.permutation(out_stubs)
        k = in_stubs.size
        arc_tails, arc_heads = shuffled_out[:k], in_stubs.copy()
        unpaired_dir = shuffled_out[k:]

    return MultiGraph(
        n=n,
        arc_tails=np.ascontiguousarray(arc_tails),
        arc_heads=np.ascontiguousarray(arc_heads),
        und_u=und_u,
        und_v=und_v,
        leftover_und=leftover_und,
        leftover_in=max(in_stubs.size - out_stubs.size, 0),
        leftover_out=max(out_stubs.size - in_stubs.size, 0),
        unpaired_und=unpaired_und,
        unpaired_dir=unpaired_dir,
        source_degrees=seq,
    )
