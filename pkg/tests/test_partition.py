import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pecc.instance import random_layout
from pecc.partition import PartitionStrategy, batch_sizes, make_partition

STRATEGIES = list(PartitionStrategy)


def ring(deg):
    a = np.radians(deg)
    return np.column_stack([3 * np.cos(a), 3 * np.sin(a)]).reshape(-1)


def test_sector_slices_by_angle():
    p = make_partition(ring([10, 100, 190, 280]), 2, "sector")
    # atan2 puts 190 and 280 at -170 and -80, ahead of 10 and 100
    assert [list(b) for b in p.batches] == [[2, 3], [0, 1]]


def test_sector_angle_at_pi_sorts_last():
    # atan2 gives -pi for the last circle; it must tie with the first at +pi
    x = np.array([-1.0, 0.0, 1.0, 0.0, -1.0, -1e-300])
    p = make_partition(x, 3, "sector")
    assert [list(b) for b in p.batches] == [[1], [0], [2]]


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_sizes_five_two(strategy):
    x = random_layout(5, 3.0, np.random.default_rng(0))
    assert make_partition(x, 2, strategy, np.random.default_rng(1)).sizes == [3, 2]


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_three_hundred_in_thirds(strategy):
    x = random_layout(300, 15.0, np.random.default_rng(0))
    assert make_partition(x, 3, strategy, np.random.default_rng(1)).sizes == [100, 100, 100]


def test_batch_sizes():
    assert batch_sizes(7, 3) == [3, 2, 2]
    assert sum(batch_sizes(1000, 7)) == 1000


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.data())
def test_disjoint_cover(n, data):
    k = data.draw(st.integers(1, n))
    strategy = data.draw(st.sampled_from(STRATEGIES))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    p = make_partition(random_layout(n, 4.0, rng), k, strategy, rng)
    allidx = np.concatenate(p.batches)
    assert np.array_equal(np.sort(allidx), np.arange(n))
    assert max(p.sizes) - min(p.sizes) <= 1
    assert all(np.all(np.diff(b) > 0) for b in p.batches)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_single_batch(strategy):
    x = random_layout(9, 3.0, np.random.default_rng(0))
    p = make_partition(x, 1, strategy, np.random.default_rng(0))
    assert p.k == 1 and np.array_equal(p.batches[0], np.arange(9))


def test_sector_rotation_covariant():
    # rotating moves the angular cut point, so batches are cyclic runs of
    # the same angular order
    x = random_layout(24, 5.0, np.random.default_rng(3)).reshape(-1, 2)
    th = 0.9
    rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    base = np.argsort(np.arctan2(x[:, 1], x[:, 0]))
    p = make_partition((x @ rot.T).reshape(-1), 4, "sector")
    pos_in_cycle = np.empty(24, dtype=int)
    pos_in_cycle[base] = np.arange(24)
    for b in p.batches:
        steps = np.sort(pos_in_cycle[b])
        gaps = np.diff(np.append(steps, steps[0] + 24))
        assert np.count_nonzero(gaps != 1) == 1  # a single contiguous arc


def test_random_deterministic_and_needs_rng():
    x = random_layout(30, 4.0, np.random.default_rng(0))
    a = make_partition(x, 4, "random", np.random.default_rng(8))
    b = make_partition(x, 4, "random", np.random.default_rng(8))
    assert all(np.array_equal(u, v) for u, v in zip(a.batches, b.batches))
    with pytest.raises(ValueError):
        make_partition(x, 4, "random")


def test_bad_arguments():
    x = random_layout(3, 2.0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        make_partition(x, 4)
    with pytest.raises(ValueError):
        make_partition(x, 0)
    with pytest.raises(ValueError):
        make_partition(x, 2, "spiral")
