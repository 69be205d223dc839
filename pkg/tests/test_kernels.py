"""Backend parity: the compiled core and the numpy fallback must agree
bit-for-bit on every function of the kernel surface."""

import numpy as np
import pytest

from boomtab import kernels
from conftest import random_luts

try:
    CY = kernels.get_backend("compiled")
    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False

PY = kernels.get_backend("fallback")

needs_compiled = pytest.mark.skipif(not HAVE_COMPILED,
                                    reason="compiled kernel core not built")


@needs_compiled
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_full_table_parity(n):
    for lut in random_luts(n, 4, seed=n):
        q = 1 << n
        assert np.array_equal(CY.ddt_full(lut), PY.ddt_full(lut))
        assert np.array_equal(CY.bct_full(lut), PY.bct_full(lut))
        assert np.array_equal(CY.fbct_full(lut), PY.fbct_full(lut))
        assert np.array_equal(CY.dd_full(lut), PY.dd_full(lut))
        assert np.array_equal(CY.lbct_full(lut), PY.lbct_full(lut))
        assert np.array_equal(CY.ubct_full(lut, 0, q), PY.ubct_full(lut, 0, q))
        assert np.array_equal(CY.ebct_full(lut, 0, q), PY.ebct_full(lut, 0, q))


@needs_compiled
@pytest.mark.parametrize("n", [4, 6])
def test_entry_parity(n):
    rng = np.random.default_rng(n)
    q = 1 << n
    for lut in random_luts(n, 2, seed=100 + n):
        inv = np.zeros(q, dtype=np.uint32)
        is_perm = np.unique(lut).size == q
        if is_perm:
            inv[lut] = np.arange(q, dtype=np.uint32)
        for _ in range(300):
            a, b, c, d = (int(v) for v in rng.integers(0, q, 4))
            assert CY.ddt_entry(lut, a, b) == PY.ddt_entry(lut, a, b)
            assert CY.bct_entry(lut, a, b) == PY.bct_entry(lut, a, b)
            assert CY.fbct_entry(lut, a, b) == PY.fbct_entry(lut, a, b)
            assert CY.dd_entry(lut, a, b, c) == PY.dd_entry(lut, a, b, c)
            assert CY.lbct_entry(lut, a, b, c) == PY.lbct_entry(lut, a, b, c)
            assert CY.ubct_entry(lut, a, b, c) == PY.ubct_entry(lut, a, b, c)
            assert CY.ubct_entry_pairs(lut, a, b, c) == \
                PY.ubct_entry_pairs(lut, a, b, c)
            assert CY.ebct_entry(lut, a, b, c, d) == \
                PY.ebct_entry(lut, a, b, c, d)
            if is_perm:
                assert CY.ubct_entry_invbased(lut, inv, a, b, c) == \
                    PY.ubct_entry_invbased(lut, inv, a, b, c)
                assert CY.lbct_entry_invbased(lut, inv, a, b, c) == \
                    PY.lbct_entry_invbased(lut, inv, a, b, c)
                assert CY.ebct_entry_invbased(lut, inv, a, b, c, d) == \
                    PY.ebct_entry_invbased(lut, inv, a, b, c, d)


@needs_compiled
def test_block_splits_concatenate():
    lut = random_luts(5, 1, seed=9)[0]
    q = 32
    whole = CY.ubct_full(lut, 0, q)
    pieces = np.concatenate([CY.ubct_full(lut, 0, 10),
                             CY.ubct_full(lut, 10, 25),
                             CY.ubct_full(lut, 25, q)])
    assert np.array_equal(whole, pieces)
    whole_e = PY.ebct_full(lut, 0, q)
    pieces_e = np.concatenate([PY.ebct_full(lut, 0, 7),
                               PY.ebct_full(lut, 7, q)])
    assert np.array_equal(whole_e, pieces_e)


def test_active_backend_exposes_surface():
    for fn in kernels._FUNCTIONS:
        assert callable(getattr(kernels, fn))
    assert kernels.BACKEND in ("compiled", "fallback")
