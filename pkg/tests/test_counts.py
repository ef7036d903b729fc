import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m3mix.counts import Concentration, JointCounts, ShareWeights


class TestJointCounts:
    def test_single_cell_increment(self):
        jc = JointCounts(1, 1)
        jc.increment(0, 0)
        assert jc.counts[0, 0] == 1
        assert jc.total == 1
        assert jc.consistent()

    def test_growth_adds_column(self):
        jc = JointCounts(1, 1)
        jc.increment(0, 0)
        jc.increment(0, 0)
        jc.increment(0, 1)
        assert jc.counts.shape == (1, 2)
        assert jc.counts[0, 1] == 1
        assert list(jc.col_marginals) == [2, 1]
        assert jc.consistent()

    def test_growth_from_empty(self):
        jc = JointCounts()
        jc.increment(0, 0)
        assert jc.counts.shape == (1, 1)
        assert jc.total == 1

    def test_increment_decrement_roundtrip(self):
        jc = JointCounts(2, 2)
        for c, d in [(0, 0), (0, 1), (1, 0), (1, 1), (0, 0)]:
            jc.increment(c, d)
        before = jc.counts.copy()
        jc.increment(1, 1)
        jc.decrement(1, 1)
        assert np.array_equal(jc.counts, before)
        assert jc.consistent()

    def test_increment_out_of_bounds(self):
        jc = JointCounts(1, 1)
        with pytest.raises(IndexError):
            jc.increment(2, 0)
        with pytest.raises(IndexError):
            jc.increment(0, 3)

    def test_decrement_to_empty(self):
        jc = JointCounts()
        jc.increment(0, 0)
        relabel = jc.decrement(0, 0)
        assert jc.counts.shape == (0, 0)
        assert jc.total == 0
        assert relabel.removed_row == 0 and relabel.removed_col == 0

    def test_decrement_compacts_column(self):
        jc = JointCounts()
        jc.increment(0, 0)
        jc.increment(0, 1)
        jc.increment(0, 1)
        relabel = jc.decrement(0, 0)
        assert jc.counts.shape == (1, 1)
        assert jc.counts[0, 0] == 2
        assert relabel.col_map == {1: 0}
        assert relabel.removed_col == 0
        assert relabel.removed_row is None

    def test_decrement_zero_cell_raises(self):
        jc = JointCounts(1, 2)
        jc.increment(0, 0)
        with pytest.raises(ValueError):
            jc.decrement(0, 1)

    def test_no_col_compaction_when_disabled(self):
        jc = JointCounts(0, 3, compact_cols=False)
        jc.increment(0, 1)
        relabel = jc.decrement(0, 1)
        assert jc.k2 == 3
        assert jc.k1 == 0
        assert relabel.removed_col is None
        assert relabel.removed_row == 0

    def test_from_assignments_matches_loop(self):
        rng = np.random.default_rng(0)
        z1 = rng.integers(0, 4, size=50)
        z2 = rng.integers(0, 3, size=50)
        jc = JointCounts.from_assignments(z1, z2)
        loop = JointCounts(4, 3)
        for a, b in zip(z1, z2):
            loop.increment(int(a), int(b))
        assert np.array_equal(jc.counts, loop.counts)
        assert jc.consistent()


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.booleans()),
                min_size=1, max_size=60))
def test_consistency_holds_after_every_operation(ops):
    jc = JointCounts()
    occupied = []
    for c_pick, d_pick, want_increment in ops:
        if want_increment or not occupied:
            c = min(c_pick, jc.k1)
            d = min(d_pick, jc.k2)
            jc.increment(c, d)
            occupied.append((c, d))
        else:
            c, d = occupied.pop(c_pick % len(occupied))
            relabel = jc.decrement(c, d)
            remap = []
            for (a, b) in occupied:
                a = relabel.row_map.get(a, a)
                b = relabel.col_map.get(b, b)
                remap.append((a, b))
            occupied = remap
        assert jc.consistent()
        assert jc.total == len(occupied)


class TestShareWeights:
    def test_valid_triple(self):
        w = ShareWeights(0.5, 0.25, 0.25)
        assert w.omega == 0.5

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            ShareWeights(0.5, 0.25, 0.25 + 1e-9)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ShareWeights(1.5, -0.25, -0.25)

    def test_balanced(self):
        w = ShareWeights.balanced(0.4)
        assert w.omega1 == w.omega2 == pytest.approx(0.3)


def test_concentration_positive():
    assert Concentration(2.0).alpha == 2.0
    with pytest.raises(ValueError):
        Concentration(0.0)
