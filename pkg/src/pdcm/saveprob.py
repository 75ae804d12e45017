"""Exact save probability for a tagged vertex under stub matching.

Fix a degree sequence and tag vertex 1.  A *save attempt* is the event
that every stub of vertex 1 attaches to a matching stub of a distinct
other vertex -- the tagged vertex keeps its drawn degree triple through
simplification.  Conditional on the degrees, this probability has a
closed form: a sum, over all ordered tuples of mutually distinct
neighbour indices, of three chained attachment products (one chain per
stub type).  This module evaluates that sum exactly in rational
arithmetic and estimates the same quantity by running the actual
matching + simplification pipeline, so each route checks the other.

Conventions used throughout:

* stub totals ``s_in``, ``s_out``, ``s_und`` count all n vertices,
  the tagged one included;
* ``w = s_in - s_out`` is the surplus of in-stubs over out-stubs and
  ``v = s_und % 2`` flags the odd undirected stub; both act as pools
  that absorb stubs which cannot be paired, and enter the denominators
  like an extra pseudo-vertex;
* each denominator carries one more indicator that keeps it positive
  in the degenerate case where the tagged vertex has more stubs of a
  type than exist in total -- every numerator is zero there, so the
  guard never changes the sum, it only avoids 0/0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .degrees import DegreeSequence, DegreeTriple
from .matching import match_stubs
from .rng import derive_seed
from .simplify import simplify


@dataclass(frozen=True)
class SaveAttemptSpec:
    """Degree data for one save-attempt computation.

    ``target_degree`` is the triple of the tagged vertex; ``others``
    holds the remaining n - 1 triples, so n = 1 + len(others) >= 2.
    A nonzero probability additionally requires total(target_degree)
    <= n - 1, since each stub needs its own distinct neighbour.
    """

    target_degree: DegreeTriple
    others: tuple

    def __post_init__(self):
        tgt = DegreeTriple(*(int(x) for x in self.target_degree))
        oth = tuple(DegreeTriple(*(int(x) for x in o)) for o in self.others)
        if min(tgt) < 0 or any(min(o) < 0 for o in oth):
            raise ValueError("degrees must be non-negative")
        if not oth:
            raise ValueError("need at least one vertex besides the target (n >= 2)")
        object.__setattr__(self, "target_degree", tgt)
        object.__setattr__(self, "others", oth)

    @property
    def n(self) -> int:
        return 1 + len(self.others)

    def degree_sequence(self) -> DegreeSequence:
        """The full sequence with the tagged vertex at index 0."""
        rows = [tuple(self.target_degree)] + [tuple(o) for o in self.others]
        return DegreeSequence(np.asarray(rows, dtype=np.int64))


def _step_denominators(spec: SaveAttemptSpec):
    """Per-step denominators of the three attachment chains.

    Step r of a chain conditions on the previous r - 1 attachments, so
    the matching-stub count shrinks by one per step (two for undirected,
    which consume a stub at both ends).  The out-stub chain runs after
    the in-stub chain, hence its pool starts d_in lower.  The w / v pool
    terms and the final guards are described in the module docstring.
    """
    d_in, d_out, d_und = spec.target_degree
    s_in = d_in + sum(o.in_deg for o in spec.others)
    s_out = d_out + sum(o.out_deg for o in spec.others)
    s_und = d_und + sum(o.und_deg for o in spec.others)
    w = s_in - s_out
    v = s_und % 2

    guard_in = d_in if d_in > s_out else 0
    den_in = [s_out - r + 1 + max(w, 0) + guard_in
              for r in range(1, d_in + 1)]

    guard_out = (d_out + d_in) if d_out > s_in - d_in else 0
    den_out = [s_in - d_in - r + 1 + max(-w, 0) + guard_out
               for r in range(1, d_out + 1)]

    guard_und = 2 * d_und if 2 * d_und > s_und else 0
    den_und = [s_und - 2 * r + 1 + v + guard_und
               for r in range(1, d_und + 1)]
    return den_in, den_out, den_und


def exact_save_probability(spec: SaveAttemptSpec) -> Fraction:
    """Probability that every stub of the tagged vertex is saved.

    The summand for one index tuple is a product of per-step fractions
    whose denominators depend only on the step number, never on which
    vertex was chosen.  The sum over ordered tuples of distinct indices
    therefore factorizes:

        d_in! * d_out! * d_und! * C / (product of all step denominators)

    where C is the coefficient of a^d_in * b^d_out * c^d_und in

        prod over others  (1 + a*out_j + b*in_j + c*und_j),

    i.e. a sum over disjoint index subsets of the matching-degree
    products, with the factorials restoring the orderings.  C is built
    by a knapsack-style pass over the other vertices; everything stays
    in exact integer / rational arithmetic.

    Returns a Fraction in [0, 1].  Degenerate inputs (more target stubs
    than available vertices or matching stubs) yield Fraction(0) -- the
    guard indicators keep every denominator positive, so no input can
    divide by zero.
    """
    d_in, d_out, d_und = spec.target_degree
    if d_in + d_out + d_und > len(spec.others):
        return Fraction(0)

    # coef[x][y][z] = sum over disjoint subsets A, B, C of the others
    # (|A| = x, |B| = y, |C| = z) of prod(out_A) * prod(in_B) * prod(und_C).
    coef = [[[0] * (d_und + 1) for _ in range(d_out + 1)]
            for _ in range(d_in + 1)]
    coef[0][0][0] = 1
    for other in spec.others:
        for x in range(d_in, -1, -1):
            for y in range(d_out, -1, -1):
                for z in range(d_und, -1, -1):
                    base = coef[x][y][z]
                    if base == 0:
                        continue
                    # each vertex may serve at most one stub of vertex 1,
                    # so it extends exactly one of the three subsets
                    if x < d_in and other.out_deg:
                        coef[x + 1][y][z] += base * other.out_deg
                    if y < d_out and other.in_deg:
                        coef[x][y + 1][z] += base * other.in_deg
                    if z < d_und and other.und_deg:
                        coef[x][y][z + 1] += base * other.und_deg

    numerator = (math.factorial(d_in) * math.factorial(d_out)
                 * math.factorial(d_und) * coef[d_in][d_out][d_und])
    if numerator == 0:
        result = Fraction(0)
    else:
        den_in, den_out, den_und = _step_denominators(spec)
        denominator = (math.prod(den_in) * math.prod(den_out)
                       * math.prod(den_und))
        result = Fraction(numerator, denominator)

    if __debug__ and spec.n <= 6:
        # tiny instances are cheap enough to re-derive the long way
        assert result == _exact_by_enumeration(spec), \
            "factorized sum disagrees with direct tuple enumeration"
    return result


def _exact_by_enumeration(spec: SaveAttemptSpec) -> Fraction:
    """Direct sum over every ordered tuple of distinct neighbour indices.

    (n-1)(n-2)...(n-d) terms, so only usable for tiny instances; kept as
    an independent cross-check of the factorized route.  The first d_in
    positions of each tuple feed the in-stub chain, the next d_out the
    out-stub chain, the rest the undirected chain.
    """
    d_in, d_out, d_und = spec.target_degree
    d = d_in + d_out + d_und
    if d > len(spec.others):
        return Fraction(0)

    den_in, den_out, den_und = _step_denominators(spec)
    denominator = math.prod(den_in) * math.prod(den_out) * math.prod(den_und)
    outs = [o.out_deg for o in spec.others]
    ins = [o.in_deg for o in spec.others]
    unds = [o.und_deg for o in spec.others]

    total = 0
    for tup in permutations(range(len(spec.others)), d):
        term = 1
        for idx in tup[:d_in]:
            term *= outs[idx]
        for idx in tup[d_in:d_in + d_out]:
            term *= ins[idx]
        for idx in tup[d_in + d_out:]:
            term *= unds[idx]
        total += term
    return Fraction(total, denominator)


def monte_carlo_save_frequency(spec: SaveAttemptSpec, replicates: int,
                               seed: int):
    """Estimate the save probability by running the real pipeline.

    Each replicate matches stubs on the fixed degree sequence and
    simplifies the result; a success is recorded when the tagged
    vertex's final degree triple equals ``target_degree`` -- the same
    criterion the simplifier uses for its modified-vertex count.

    Returns ``(frequency, stderr)`` with the binomial standard error
    sqrt(f * (1 - f) / replicates).  Replicate r uses the derived seed
    ``derive_seed(seed, r)``, so replicates are independent streams and
    may be computed in any order.
    """
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    seq = spec.degree_sequence()
    d0, d1, d2 = spec.target_degree
    hits = 0
    for r in range(replicates):
        g, _ = simplify(match_stubs(seq, derive_seed(seed, r)))
        trip = g.degree_triples()
        if trip[0, 0] == d0 and trip[0, 1] == d1 and trip[0, 2] == d2:
            hits += 1
    freq = hits / replicates
    stderr = math.sqrt(freq * (1.0 - freq) / replicates)
    return freq, stderr


def parse_save_spec(path) -> SaveAttemptSpec:
    """Read a save-attempt file: one 'in out und' triple per line.

    The first non-comment line is the target triple, the rest are the
    other vertices.  '#' starts a comment; blank lines are skipped.
    """
    triples = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(
                    f"{path}: line {lineno}: expected three integers, "
                    f"got {raw.strip()!r}")
            try:
                vals = [int(p) for p in parts]
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: expected three integers, "
                    f"got {raw.strip()!r}") from None
            if min(vals) < 0:
                raise ValueError(
                    f"{path}: line {lineno}: degrees must be non-negative")
            triples.append(DegreeTriple(*vals))
    if len(triples) < 2:
        raise ValueError(f"{path}: need a target line plus at least one "
                         "other vertex")
    return SaveAttemptSpec(target_degree=triples[0], others=tuple(triples[1:]))
