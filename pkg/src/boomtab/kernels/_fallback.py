"""Pure numpy table kernels; the portable fallback backend.

Same function surface and bit-identical results as the compiled core in
_core.pyx.  Entry kernels return plain ints; full-table kernels return
int64 arrays (uint16 for the 4-index EBCT block, to bound memory).
"""

from __future__ import annotations

import numpy as np


def _order(lut: np.ndarray) -> int:
    return lut.shape[0]


# ----------------------------------------------------------------------
# grouped-pairs machinery: all ordered pairs (X, X') sharing a key
# ----------------------------------------------------------------------

def _grouped_pairs(keys: np.ndarray):
    """Indices (left, right) of all ordered pairs with keys[left] == keys[right].

    Cost is sum of squared class sizes; classes are DDT-row entries here,
    so this stays near-linear for low-uniformity functions.
    """
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    boundaries = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
    sizes = np.diff(np.r_[boundaries, ks.shape[0]])
    offsets = boundaries
    pair_counts = sizes * sizes
    tot = int(pair_counts.sum())
    rep_sizes = np.repeat(sizes, pair_counts)
    rep_offsets = np.repeat(offsets, pair_counts)
    pair_starts = np.r_[0, np.cumsum(pair_counts)[:-1]]
    within = np.arange(tot, dtype=np.int64) - np.repeat(pair_starts, pair_counts)
    left = order[rep_offsets + within // rep_sizes]
    right = order[rep_offsets + within % rep_sizes]
    return left, right


# ----------------------------------------------------------------------
# DDT
# ----------------------------------------------------------------------

def ddt_entry(lut: np.ndarray, a: int, b: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    return int(np.count_nonzero((lut[xs ^ a] ^ lut) == b))


def ddt_row(lut: np.ndarray, a: int) -> np.ndarray:
    xs = np.arange(_order(lut), dtype=np.intp)
    return np.bincount(lut[xs ^ a] ^ lut, minlength=_order(lut)).astype(np.int64)


def ddt_full(lut: np.ndarray) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    diffs = lut[xs[None, :] ^ xs[:, None]] ^ lut[None, :]
    keys = (xs[:, None] * q + diffs).ravel()
    return np.bincount(keys, minlength=q * q).reshape(q, q).astype(np.int64)


# ----------------------------------------------------------------------
# BCT
# ----------------------------------------------------------------------

def bct_entry(lut: np.ndarray, a: int, b: int) -> int:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    m1 = (lut[:, None] ^ lut[None, :]) == b
    m2 = (lut[xs ^ a][:, None] ^ lut[xs ^ a][None, :]) == b
    return int(np.count_nonzero(m1 & m2))


def bct_full(lut: np.ndarray) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    acc = np.zeros(q * q, dtype=np.int64)
    for w in range(q):
        g = lut[xs ^ w] ^ lut
        left, right = _grouped_pairs(g)
        keys = (left ^ right) * q + g[left]
        acc += np.bincount(keys, minlength=q * q)
    return acc.reshape(q, q)


# ----------------------------------------------------------------------
# FBCT / DD
# ----------------------------------------------------------------------

def fbct_entry(lut: np.ndarray, a: int, b: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    vals = lut[xs ^ a ^ b] ^ lut[xs ^ b] ^ lut[xs ^ a] ^ lut
    return int(np.count_nonzero(vals == 0))


def fbct_full(lut: np.ndarray) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    out = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        g = lut[xs ^ a] ^ lut
        left, right = _grouped_pairs(g)
        out[a] = np.bincount(left ^ right, minlength=q)
    return out


def dd_entry(lut: np.ndarray, a: int, b: int, c: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    vals = lut[xs ^ a ^ b] ^ lut[xs ^ b] ^ lut[xs ^ a] ^ lut
    return int(np.count_nonzero(vals == c))


def dd_full(lut: np.ndarray) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    out = np.empty((q, q, q), dtype=np.int64)
    for a in range(q):
        # rows index b, columns index X
        vals = lut[xs[:, None] ^ a ^ xs[None, :]] ^ lut[xs[:, None] ^ xs[None, :]] \
            ^ lut[xs ^ a][None, :] ^ lut[None, :]
        keys = (np.broadcast_to(xs[:, None], (q, q)) * q + vals).ravel()
        out[a] = np.bincount(keys, minlength=q * q).reshape(q, q)
    return out


# ----------------------------------------------------------------------
# LBCT
# ----------------------------------------------------------------------

def lbct_entry(lut: np.ndarray, a: int, b: int, c: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    m = ((lut ^ lut[xs ^ b]) == c) & ((lut[xs ^ a] ^ lut[xs ^ a ^ b]) == c)
    return int(np.count_nonzero(m))


def lbct_full(lut: np.ndarray) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    out = np.empty((q, q, q), dtype=np.int64)
    c1 = lut[xs[:, None] ^ xs[None, :]] ^ lut[None, :]      # D_b F(X), rows b
    for a in range(q):
        lxa = lut[xs ^ a]
        c2 = lut[(xs[None, :] ^ a) ^ xs[:, None]] ^ lxa[None, :]
        hit = c1 == c2
        keys = np.broadcast_to(xs[:, None], (q, q)) * q + c1
        out[a] = np.bincount(keys[hit], minlength=q * q).reshape(q, q)
    return out


# ----------------------------------------------------------------------
# UBCT
# ----------------------------------------------------------------------

def ubct_entry(lut: np.ndarray, a: int, b: int, c: int) -> int:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    if a == 0:
        if b != 0:
            return 0
        img = np.zeros(q, dtype=bool)
        img[lut] = True
        return int(np.count_nonzero(img[lut ^ c]))
    sols = xs[(lut ^ lut[xs ^ a]) == b]
    if sols.size == 0:
        return 0
    fvals = lut[sols]
    hit = np.isin(fvals ^ c, fvals)
    return int(np.count_nonzero(hit))


def ubct_entry_pairs(lut: np.ndarray, a: int, b: int, c: int) -> int:
    """Pair-counting variant: number of (X, Y) solutions, not distinct X."""
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    da = lut ^ lut[xs ^ a]
    m = (da[:, None] == b) & ((lut[:, None] ^ lut[None, :]) == c) \
        & ((lut[xs ^ a][:, None] ^ lut[xs ^ a][None, :]) == c)
    return int(np.count_nonzero(m))


def ubct_full(lut: np.ndarray, a_lo: int, a_hi: int) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    out = np.zeros((a_hi - a_lo, q, q), dtype=np.int64)
    for a in range(a_lo, a_hi):
        cvals = lut[:, None] ^ lut[None, :]
        cond = (lut[xs ^ a][:, None] ^ lut[xs ^ a][None, :]) == cvals
        hit_x, hit_y = np.nonzero(cond)
        cs = cvals[hit_x, hit_y]
        # one Y suffices: distinct (X, c) pairs, then key by (b(X), c)
        uniq = np.unique(hit_x.astype(np.int64) * q + cs)
        ux = (uniq // q).astype(np.intp)
        uc = uniq % q
        bs = lut[ux] ^ lut[ux ^ a]
        keys = bs.astype(np.int64) * q + uc
        out[a - a_lo] = np.bincount(keys, minlength=q * q).reshape(q, q)
    return out


# ----------------------------------------------------------------------
# EBCT
# ----------------------------------------------------------------------

def ebct_entry(lut: np.ndarray, a: int, b: int, c: int, d: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    m = ((lut ^ lut[xs ^ a]) == b) & ((lut ^ lut[xs ^ c]) == d) \
        & ((lut[xs ^ a ^ c] ^ lut[xs ^ a]) == d)
    return int(np.count_nonzero(m))


def ebct_full(lut: np.ndarray, a_lo: int, a_hi: int) -> np.ndarray:
    q = _order(lut)
    xs = np.arange(q, dtype=np.intp)
    out = np.empty((a_hi - a_lo, q, q, q), dtype=np.uint16)
    cgrid = xs[:, None]
    xgrid = xs[None, :]
    for a in range(a_lo, a_hi):
        bvals = np.broadcast_to(lut ^ lut[xs ^ a], (q, q))
        dvals = lut[xgrid] ^ lut[xgrid ^ cgrid]
        cond = (lut[(xgrid ^ a) ^ cgrid] ^ lut[xgrid ^ a]) == dvals
        keys = (bvals.astype(np.int64) * q + cgrid) * q + dvals
        cnt = np.bincount(keys[cond], minlength=q * q * q)
        out[a - a_lo] = cnt.reshape(q, q, q).astype(np.uint16)
    return out


# ----------------------------------------------------------------------
# Inverse-based definitions (cross-check path for permutations)
# ----------------------------------------------------------------------

def ubct_entry_invbased(lut: np.ndarray, inv: np.ndarray, a: int, b: int, c: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    m = ((lut ^ lut[xs ^ a]) == b) \
        & ((inv[lut ^ c] ^ inv[lut[xs ^ a] ^ c]) == a)
    return int(np.count_nonzero(m))


def lbct_entry_invbased(lut: np.ndarray, inv: np.ndarray, a: int, b: int, c: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    m = ((lut ^ lut[xs ^ b]) == c) \
        & ((inv[lut ^ c] ^ inv[lut[xs ^ a] ^ c]) == a)
    return int(np.count_nonzero(m))


def ebct_entry_invbased(lut: np.ndarray, inv: np.ndarray,
                        a: int, b: int, c: int, d: int) -> int:
    xs = np.arange(_order(lut), dtype=np.intp)
    m = ((lut ^ lut[xs ^ a]) == b) & ((lut ^ lut[xs ^ c]) == d) \
        & ((inv[lut ^ d] ^ inv[lut[xs ^ a] ^ d]) == a)
    return int(np.count_nonzero(m))
