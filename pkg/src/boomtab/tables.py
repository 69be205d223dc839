"""Brute-force reference engines for the eight tables and their spectra.

All engines implement the generalized inverse-free definitions, so
non-permutations are first-class; the inverse-based definitions are
available as a cross-check for permutations (entry_invbased).  Full
sweeps are budget-gated; anything larger runs as seeded sampling with a
counter-based generator so results are reproducible and independent of
worker count.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .sampling import sample_tuples
from .vecfun import VecFun

ARITY = {"ddt": 2, "bct": 2, "fbct": 2, "dd": 3,
         "ubct": 3, "lbct": 3, "ebct": 4, "dbct": 2}

# Largest n for which a full sweep is accepted without sampling.
FULL_SWEEP_MAX_N = {"ddt": 12, "bct": 12, "fbct": 12, "dd": 8,
                    "ubct": 8, "lbct": 8, "ebct": 6, "dbct": 8}

KINDS = tuple(ARITY)


class BudgetError(RuntimeError):
    """Full sweep refused; carries the documented cost estimate."""

    def __init__(self, kind: str, n: int, estimated_ops: int):
        self.kind = kind
        self.n = n
        self.estimated_ops = estimated_ops
        super().__init__(
            f"full {kind} sweep at n={n} exceeds the budget "
            f"(~2^{estimated_ops.bit_length() - 1} = {estimated_ops} inner ops); "
            f"use sampling (--sample N --seed S)")


def estimate_ops(kind: str, n: int) -> int:
    """Documented cost model: index space times one 2^n inner scan."""
    return 1 << ((ARITY[kind] + 1) * n)


def check_kind(kind: str) -> str:
    kind = kind.lower()
    if kind not in ARITY:
        raise ValueError(f"unknown table kind {kind!r}; expected one of {KINDS}")
    return kind


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BOOMTAB_THREADS", "1")))
    except ValueError:
        return 1


# ----------------------------------------------------------------------
# Single entries
# ----------------------------------------------------------------------

def ddt_entry(f: VecFun, a: int, b: int) -> int:
    return kernels.ddt_entry(f.lut, a, b)


def ddt_row(f: VecFun, a: int) -> np.ndarray:
    return kernels.ddt_row(f.lut, a)


def bct_entry(f: VecFun, a: int, b: int) -> int:
    return kernels.bct_entry(f.lut, a, b)


def fbct_entry(f: VecFun, a: int, b: int) -> int:
    return kernels.fbct_entry(f.lut, a, b)


def dd_entry(f: VecFun, a: int, b: int, c: int) -> int:
    return kernels.dd_entry(f.lut, a, b, c)


def ubct_entry(f: VecFun, a: int, b: int, c: int,
               pair_counting: bool = False) -> int:
    if pair_counting:
        return kernels.ubct_entry_pairs(f.lut, a, b, c)
    return kernels.ubct_entry(f.lut, a, b, c)


def lbct_entry(f: VecFun, a: int, b: int, c: int) -> int:
    return kernels.lbct_entry(f.lut, a, b, c)


def ebct_entry(f: VecFun, a: int, b: int, c: int, d: int) -> int:
    return kernels.ebct_entry(f.lut, a, b, c, d)


def ubct_entry_invbased(f: VecFun, a: int, b: int, c: int) -> int:
    """Definitional cross-check via F^-1; permutations only."""
    return kernels.ubct_entry_invbased(f.lut, _inv(f), a, b, c)


def lbct_entry_invbased(f: VecFun, a: int, b: int, c: int) -> int:
    return kernels.lbct_entry_invbased(f.lut, _inv(f), a, b, c)


def ebct_entry_invbased(f: VecFun, a: int, b: int, c: int, d: int) -> int:
    return kernels.ebct_entry_invbased(f.lut, _inv(f), a, b, c, d)


def _inv(f: VecFun) -> np.ndarray:
    if f.inverse_lut is None:
        raise ValueError("inverse-based definitions require a permutation")
    return f.inverse_lut


def dbct_entry(f: VecFun, a: int, d: int) -> int:
    """Sum over (b, c) of UBCT(a,b,c) * LBCT(b,c,d), via two fixed-index planes."""
    ub_plane = kernels.ubct_full(f.lut, a, a + 1)[0]
    lb_plane = _lbct_plane_for_output(f.lut, d)
    return int((ub_plane * lb_plane).sum())


def _lbct_plane_for_output(lut: np.ndarray, d: int) -> np.ndarray:
    """LBCT(b, c, d) over all (b, c) for one fixed output difference d."""
    q = lut.shape[0]
    xs = np.arange(q, dtype=np.intp)
    plane = np.zeros((q, q), dtype=np.int64)
    for c in range(q):
        sols = xs[(lut ^ lut[xs ^ c]) == d]
        if sols.size:
            bs = (sols[:, None] ^ sols[None, :]).ravel()
            plane[:, c] = np.bincount(bs, minlength=q)
    return plane


def entry(f: VecFun, kind: str, indices, pair_counting: bool = False) -> int:
    kind = check_kind(kind)
    idx = [int(i) for i in indices]
    if len(idx) != ARITY[kind]:
        raise ValueError(f"{kind} takes {ARITY[kind]} indices, got {len(idx)}")
    if kind == "ubct":
        return ubct_entry(f, *idx, pair_counting=pair_counting)
    fn = {"ddt": ddt_entry, "bct": bct_entry, "fbct": fbct_entry,
          "dd": dd_entry, "lbct": lbct_entry, "ebct": ebct_entry,
          "dbct": dbct_entry}[kind]
    return fn(f, *idx)


# ----------------------------------------------------------------------
# Full tables
# ----------------------------------------------------------------------

def _blocked(kernel_fn, lut: np.ndarray, threads: int) -> np.ndarray:
    """Run a (lut, a_lo, a_hi) block kernel partitioned over the outer index.

    Partitioning is over disjoint leading-index slices, so the result is
    bit-identical for any worker count.
    """
    q = lut.shape[0]
    if threads <= 1 or q < 4 * threads:
        return kernel_fn(lut, 0, q)
    bounds = np.linspace(0, q, threads + 1, dtype=int)
    spans = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        blocks = list(pool.map(lambda s: kernel_fn(lut, s[0], s[1]), spans))
    return np.concatenate(blocks, axis=0)


def ddt_full(f: VecFun) -> np.ndarray:
    return kernels.ddt_full(f.lut)


def bct_full(f: VecFun) -> np.ndarray:
    return kernels.bct_full(f.lut)


def fbct_full(f: VecFun) -> np.ndarray:
    return kernels.fbct_full(f.lut)


def dd_full(f: VecFun) -> np.ndarray:
    return kernels.dd_full(f.lut)


def lbct_full(f: VecFun) -> np.ndarray:
    return kernels.lbct_full(f.lut)


def ubct_full(f: VecFun, threads: int | None = None) -> np.ndarray:
    return _blocked(kernels.ubct_full, f.lut,
                    _threads() if threads is None else threads)


def ebct_full(f: VecFun, threads: int | None = None) -> np.ndarray:
    return _blocked(kernels.ebct_full, f.lut,
                    _threads() if threads is None else threads)


def dbct_full(f: VecFun, ubct: np.ndarray | None = None,
              lbct: np.ndarray | None = None) -> np.ndarray:
    """DBCT(a, d) = sum_{b,c} UBCT(a,b,c) * LBCT(b,c,d) from materialized tables.

    The contraction runs in float64 (exact: every product sum is far
    below 2^53, asserted) and is returned as int64.
    """
    q = f.ctx.order
    if ubct is None:
        ubct = ubct_full(f)
    if lbct is None:
        lbct = lbct_full(f)
    prod = ubct.reshape(q, q * q).astype(np.float64) @ \
        lbct.reshape(q * q, q).astype(np.float64)
    assert prod.max() < 2.0 ** 53
    return prod.astype(np.int64)


def full_table(f: VecFun, kind: str, force: bool = False) -> np.ndarray:
    kind = check_kind(kind)
    n = f.ctx.n
    if not force and n > FULL_SWEEP_MAX_N[kind]:
        raise BudgetError(kind, n, estimate_ops(kind, n))
    fn = {"ddt": ddt_full, "bct": bct_full, "fbct": fbct_full, "dd": dd_full,
          "ubct": ubct_full, "lbct": lbct_full, "ebct": ebct_full,
          "dbct": dbct_full}[kind]
    return fn(f)


# ----------------------------------------------------------------------
# Spectra
# ----------------------------------------------------------------------

@dataclass
class Spectrum:
    kind: str
    n: int
    histogram: dict = field(default_factory=dict)
    swept_domain: str = "full"
    tuples_swept: int = 0
    max_nontrivial: int | None = None

    def count(self, value: int) -> int:
        return self.histogram.get(value, 0)


def _nontrivial_mask(kind: str, n: int) -> np.ndarray:
    """Index mask of the uniformity domain per kind (the 'nonzero' filter)."""
    q = 1 << n
    xs = np.arange(q)
    nz = xs != 0
    if kind == "ddt":
        return np.broadcast_to(nz[:, None], (q, q))
    if kind == "bct":
        return nz[:, None] & nz[None, :]
    if kind in ("fbct", "dd"):
        m = nz[:, None] & nz[None, :] & (xs[:, None] != xs[None, :])
        if kind == "dd":
            return np.broadcast_to(m[:, :, None], (q, q, q))
        return m
    if kind in ("ubct", "lbct"):
        return nz[:, None, None] & nz[None, :, None] & nz[None, None, :]
    if kind == "ebct":
        return (nz[:, None, None, None] & nz[None, :, None, None]
                & nz[None, None, :, None] & nz[None, None, None, :])
    if kind == "dbct":
        return nz[:, None] & nz[None, :]
    raise ValueError(kind)


def _nontrivial_tuple_mask(kind: str, tup: np.ndarray) -> np.ndarray:
    nz = tup != 0
    if kind == "ddt":
        return nz[:, 0]
    if kind in ("bct", "dbct"):
        return nz[:, 0] & nz[:, 1]
    if kind in ("fbct", "dd"):
        return nz[:, 0] & nz[:, 1] & (tup[:, 0] != tup[:, 1])
    return nz.all(axis=1)


def spectrum(f: VecFun, kind: str, domain_filter: str = "all",
             sample: int | None = None, seed: int = 0) -> Spectrum:
    """Histogram of table values over the full or sampled index space.

    domain_filter 'all' sweeps every index tuple; 'nonzero' restricts to
    the kind's uniformity domain (DDT: a != 0; BCT: a,b != 0; FBCT/DD:
    a,b != 0 and a != b; 3- and 4-index tables: every coordinate != 0;
    DBCT: a,d != 0).  Full sweeps beyond the documented budget raise
    BudgetError; pass sample=N for seeded deterministic sampling.
    """
    kind = check_kind(kind)
    if domain_filter not in ("all", "nonzero"):
        raise ValueError(f"unknown domain filter {domain_filter!r}")
    n = f.ctx.n
    if sample is None:
        table = full_table(f, kind)
        nt_mask = _nontrivial_mask(kind, n)
        nt_vals = table[nt_mask]
        vals = table[nt_mask] if domain_filter == "nonzero" else table.ravel()
        uniq, counts = np.unique(vals, return_counts=True)
        return Spectrum(
            kind=kind, n=n,
            histogram={int(v): int(c) for v, c in zip(uniq, counts)},
            swept_domain=f"full/{domain_filter}",
            tuples_swept=int(vals.size),
            max_nontrivial=int(nt_vals.max()) if nt_vals.size else None,
        )
    tup = sample_tuples(n, ARITY[kind], sample, seed)
    if domain_filter == "nonzero":
        tup = tup[_nontrivial_tuple_mask(kind, tup)]
    hist: dict[int, int] = {}
    max_nt = None
    for row in tup:
        v = entry(f, kind, row)
        hist[v] = hist.get(v, 0) + 1
        if _nontrivial_tuple_mask(kind, row[None, :])[0]:
            max_nt = v if max_nt is None else max(max_nt, v)
    return Spectrum(kind=kind, n=n, histogram=dict(sorted(hist.items())),
                    swept_domain=f"sampled:{sample}/seed:{seed}/{domain_filter}",
                    tuples_swept=int(tup.shape[0]), max_nontrivial=max_nt)


# ----------------------------------------------------------------------
# Exports (formats documented in docs/formats.md)
# ----------------------------------------------------------------------

_COORD_NAMES = "abcd"


def export_table_csv(path, kind: str, table: np.ndarray) -> None:
    kind = check_kind(kind)
    arity = table.ndim
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(_COORD_NAMES[:arity]) + ["value"])
        it = np.ndindex(*table.shape)
        for idx in it:
            w.writerow(list(idx) + [int(table[idx])])


def export_table_json(path, f: VecFun, kind: str, table: np.ndarray) -> None:
    kind = check_kind(kind)
    doc = {
        "kind": kind,
        "n": f.ctx.n,
        "modulus": f"{f.ctx.modulus:x}",
        "indices_order": list(_COORD_NAMES[:table.ndim]),
        "entries": table.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def export_spectrum_csv(path, spec: Spectrum) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["value", "count"])
        for v in sorted(spec.histogram):
            w.writerow([v, spec.histogram[v]])


def export_spectrum_json(path, f: VecFun, spec: Spectrum) -> None:
    doc = {
        "kind": spec.kind,
        "n": spec.n,
        "modulus": f"{f.ctx.modulus:x}",
        "indices_order": list(_COORD_NAMES[:ARITY[spec.kind]]),
        "swept_domain": spec.swept_domain,
        "histogram": {str(v): spec.histogram[v] for v in sorted(spec.histogram)},
        "max_nontrivial": spec.max_nontrivial,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")
