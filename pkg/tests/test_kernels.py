import numpy as np
import pytest
from hypothesis import given, strategies as st

from semigroup_forge import kernels, valsgp
from semigroup_forge._accel import ENV_FLAG, jit_enabled, numba_available

needs_numba = pytest.mark.skipif(not numba_available(), reason="numba not installed")


def _box(gens, bound):
    bound = np.asarray(bound, dtype=np.int64)
    dims, strides = kernels.box_strides(bound)
    flags = np.zeros(int(np.prod(dims)), np.uint8)
    flags[0] = 1
    for g in gens:
        flags[int(np.dot(valsgp.GeneratorTuple.of(g).realize(tuple(bound)), strides))] = 1
    return bound, flags


def test_count_tree_numpy():
    assert list(kernels.count_tree(8, jit=False)) == [1, 1, 2, 4, 7, 12, 23, 39, 67]


def test_closed_gap_masks_numpy():
    masks = kernels.closed_gap_masks(3, jit=False)
    assert len(masks) == 4
    # <4,5,6,7> has gaps 1,2,3
    assert 0b111 in set(masks.tolist())


@needs_numba
@pytest.mark.parametrize("g", range(0, 12))
def test_count_and_masks_agree_across_builds(g):
    assert np.array_equal(kernels.count_tree(g, jit=True), kernels.count_tree(g, jit=False))
    assert np.array_equal(kernels.closed_gap_masks(g, jit=True), kernels.closed_gap_masks(g, jit=False))


coord = st.one_of(st.none(), st.integers(1, 4))
gen2 = st.tuples(coord, coord).filter(lambda t: t != (None, None))
gen3 = st.tuples(coord, coord, coord).filter(lambda t: t != (None, None, None))


@needs_numba
@given(st.one_of(st.lists(gen2, min_size=1, max_size=4).map(lambda g: (g, (5, 6))),
                 st.lists(gen3, min_size=1, max_size=3).map(lambda g: (g, (3, 4, 3)))))
def test_close_box_agrees_across_builds(case):
    gens, bound = case
    b, flags = _box(gens, bound)
    assert np.array_equal(kernels.close_box(b, flags, jit=True), kernels.close_box(b, flags, jit=False))


@given(st.lists(gen2, min_size=1, max_size=4))
def test_close_box_is_closed(gens):
    b, flags = _box(gens, (5, 5))
    out = kernels.close_box(b, flags, jit=False)
    assert np.array_equal(kernels.close_box(b, out, jit=False), out)
    pts = [tuple(p) for p in np.argwhere(out.reshape(6, 6))]
    for a in pts:
        for c in pts:
            assert out.reshape(6, 6)[tuple(min(x, y) for x, y in zip(a, c))]
            assert out.reshape(6, 6)[tuple(min(x + y, 5) for x, y in zip(a, c))]


def test_env_flag(monkeypatch):
    monkeypatch.setenv(ENV_FLAG, "0")
    assert not jit_enabled()
    monkeypatch.setenv(ENV_FLAG, "1")
    assert jit_enabled() == numba_available()


def test_numpy_path_gives_same_span(numpy_only):
    assert not jit_enabled()
    assert valsgp.span([(1, 1), (2, None)]) == valsgp.truncation([(0, 0), (1, 1), (2, 2)])
