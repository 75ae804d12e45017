import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdcm.degrees import DegreeSequence
from pdcm.matching import MultiGraph, match_stubs

triples_strategy = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
    min_size=1,
    max_size=12,
)


def seq_of(rows):
    return DegreeSequence(np.array(rows, dtype=np.int64))


class TestSmallExamples:
    def test_two_undirected_stubs_form_one_edge(self):
        mg = match_stubs(seq_of([(0, 0, 1), (0, 0, 1)]), seed=5)
        assert mg.n_arcs == 0
        assert mg.und_edges.tolist() == [[0, 1]]
        assert (mg.leftover_und, mg.leftover_in, mg.leftover_out) == (0, 0, 0)

    def test_odd_stub_count_leaves_one_unpaired(self):
        mg = match_stubs(seq_of([(0, 0, 3)]), seed=1)
        assert mg.und_edges.tolist() == [[0, 0]]  # forced self-pair
        assert mg.leftover_und == 1
        assert mg.unpaired_und.tolist() == [0]

    def test_surplus_out_stub_recorded(self):
        mg = match_stubs(seq_of([(1, 0, 0), (0, 1, 0), (0, 1, 0)]), seed=0)
        assert mg.n_arcs == 1
        assert int(mg.arc_heads[0]) == 0
        assert (mg.leftover_in, mg.leftover_out) == (0, 1)
        assert mg.unpaired_dir.size == 1

    def test_tail_choice_is_uniform(self):
        """With one in-stub and two competing out-stubs, each out-stub wins
        half the time (binomial 3-sigma band over 1e5 seeds)."""
        seq = seq_of([(1, 0, 0), (0, 1, 0), (0, 1, 0)])
        wins = 0
        trials = 100_000
        for s in range(trials):
            wins += int(match_stubs(seq, seed=s).arc_tails[0]) == 1
        assert abs(wins / trials - 0.5) <= 3 * np.sqrt(0.25 / trials)

    def test_unpaired_stub_is_a_uniform_choice(self):
        """Permuting the longer stub list means the stranded stub is a
        uniformly random one, not always the last vertex's."""
        seq = seq_of([(1, 0, 0), (0, 1, 0), (0, 1, 0)])
        owners = np.zeros(3, dtype=int)
        trials = 4000
        for s in range(trials):
            owners[int(match_stubs(seq, seed=s).unpaired_dir[0])] += 1
        assert owners[0] == 0
        assert abs(owners[1] / trials - 0.5) <= 4 * np.sqrt(0.25 / trials)


def test_deterministic_given_seed():
    seq = seq_of([(2, 1, 3), (0, 2, 1), (1, 0, 2), (1, 1, 0)])
    a = match_stubs(seq, seed=77)
    b = match_stubs(seq, seed=77)
    c = match_stubs(seq, seed=78)
    assert a.arcs.tolist() == b.arcs.tolist()
    assert a.und_edges.tolist() == b.und_edges.tolist()
    diff = a.arcs.tolist() != c.arcs.tolist() or (
        a.und_edges.tolist() != c.und_edges.tolist()
    )
    assert diff


def test_vertex_ids_are_32_bit():
    mg = match_stubs(seq_of([(1, 1, 1), (1, 1, 1)]), seed=3)
    assert mg.arc_tails.dtype == np.uint32
    assert mg.und_u.dtype == np.uint32


def test_bijection_uniformity_chi_square():
    """Three (1,1,0) vertices induce 6 possible in/out bijections; over
    6e4 seeds the empirical counts pass a chi-square test at alpha=0.001."""
    from scipy.stats import chi2

    seq = seq_of([(1, 1, 0)] * 3)
    counts = {}
    trials = 60_000
    for s in range(trials):
        mg = match_stubs(seq, seed=s)
        key = tuple(sorted(map(tuple, mg.arcs.tolist())))
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 6
    expected = trials / 6
    stat = sum((c - expected) ** 2 / expected for c in counts.values())
    assert stat < chi2.ppf(0.999, df=5)


@settings(max_examples=300, deadline=None)
@given(triples_strategy, st.integers(0, 2**32 - 1))
def test_stub_conservation(rows, seed):
    """Every stub ends up in an edge or in a leftover slot, per vertex."""
    seq = seq_of(rows)
    mg = match_stubs(seq, seed=seed)
    n = seq.n
    assert mg.n_arcs == min(seq.s_in, seq.s_out)
    assert mg.leftover_in == max(seq.s_in - seq.s_out, 0)
    assert mg.leftover_out == max(seq.s_out - seq.s_in, 0)
    assert 2 * mg.n_und_edges + mg.leftover_und == seq.s_und
    assert mg.unpaired_dir.size == mg.leftover_in + mg.leftover_out
    assert mg.unpaired_und.size == mg.leftover_und

    in_held = np.bincount(mg.arc_heads, minlength=n)
    out_held = np.bincount(mg.arc_tails, minlength=n)
    if seq.s_in >= seq.s_out:
        in_held += np.bincount(mg.unpaired_dir, minlength=n)
    else:
        out_held += np.bincount(mg.unpaired_dir, minlength=n)
    assert (in_held == seq.in_deg).all()
    assert (out_held == seq.out_deg).all()
    und_held = (
        np.bincount(mg.und_u, minlength=n)
        + np.bincount(mg.und_v, minlength=n)
        + np.bincount(mg.unpaired_und, minlength=n)
    )
    assert (und_held == seq.und_deg).all()


@settings(max_examples=100, deadline=None)
@given(triples_strategy, st.integers(0, 10**6))
def test_und_pairs_normalized(rows, seed):
    mg = match_stubs(seq_of(rows), seed=seed)
    assert (mg.und_u <= mg.und_v).all()


def test_exchangeability_spot_check():
    """Relabeling the degree sequence doesn't change the distribution of
    degree-labeled edge censuses (aggregated over many seeds)."""
    rows = [(1, 1, 2), (2, 0, 1), (0, 2, 1)]
    perm = [2, 0, 1]
    relabeled = [rows[p] for p in perm]

    def census(rows_, seeds):
        seq = seq_of(rows_)
        table = {}
        for s in seeds:
            mg = match_stubs(seq, seed=s)
            for t, h in mg.arcs.tolist():
                key = (tuple(rows_[t]), tuple(rows_[h]))
                table[key] = table.get(key, 0) + 1
        return table

    seeds = range(4000)
    ca, cb = census(rows, seeds), census(relabeled, seeds)
    keys = set(ca) | set(cb)
    total = sum(ca.values())
    tv = 0.5 * sum(
        abs(ca.get(k, 0) / total - cb.get(k, 0) / total) for k in keys
    )
    assert tv < 0.05


def test_from_edges_derives_matching_degrees():
    mg = MultiGraph.from_edges(
        3, [(0, 1), (1, 2)], [(0, 2)], unpaired_out=[1], unpaired_und=[2]
    )
    assert mg.source_degrees.triples.tolist() == [
        [0, 1, 1],
        [1, 2, 0],
        [1, 0, 2],
    ]
    assert (mg.leftover_in, mg.leftover_out, mg.leftover_und) == (0, 1, 1)
