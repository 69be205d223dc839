"""Graph-level affine transforms and table-index invariance checks.

An affine permutation of GF(2^n) x GF(2^n) is held in block form
(A11, A12, A21, A22; C, D), each block an n x n bit-matrix stored as n
row-major integer rows; matrix action uses the same bit encoding as the
field module.  Applying it to the graph {(x, F(x))} yields another
function G exactly when x -> A11 x + A12 F(x) + C is a bijection
(automatic for the EA and affine shapes, rare for random general maps).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import tables
from .field import FieldCtx
from .sampling import sample_tuples
from .vecfun import VecFun

FORMS = ("general", "ea", "affine")


class MapFormError(ValueError):
    """Transform shape does not satisfy the requested theorem hypothesis."""


# ----------------------------------------------------------------------
# bit-matrix helpers (rows as integers)
# ----------------------------------------------------------------------

def matvec(rows: tuple, x: int) -> int:
    y = 0
    for i, row in enumerate(rows):
        y |= ((row & x).bit_count() & 1) << i
    return y


def apply_table(rows: tuple, n: int) -> np.ndarray:
    """Vectorize a bit-matrix to a full 2^n lookup via linearity."""
    out = np.zeros(1 << n, dtype=np.uint32)
    for j in range(n):
        step = 1 << j
        out[step: 2 * step] = out[:step] ^ np.uint32(matvec(rows, step))
    return out


def _block_invertible(blocks, n: int) -> bool:
    a11, a12, a21, a22 = blocks
    rows = [a11[i] | (a12[i] << n) for i in range(n)] + \
           [a21[i] | (a22[i] << n) for i in range(n)]
    rank = 0
    for col in range(2 * n):
        pivot = next((r for r in range(rank, 2 * n) if rows[r] >> col & 1), None)
        if pivot is None:
            return False
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(2 * n):
            if r != rank and rows[r] >> col & 1:
                rows[r] ^= rows[rank]
        rank += 1
    return True


@dataclass(frozen=True)
class AffineMap2n:
    """Affine permutation of GF(2^n)^2 in block form."""
    n: int
    a11: tuple
    a12: tuple
    a21: tuple
    a22: tuple
    c: int
    d: int

    @property
    def is_ea(self) -> bool:
        return all(r == 0 for r in self.a12)

    @property
    def is_affine(self) -> bool:
        return self.is_ea and all(r == 0 for r in self.a21)

    def tables(self):
        """(T11, T12, T21, T22) full-domain lookup arrays for the four blocks."""
        return tuple(apply_table(rows, self.n)
                     for rows in (self.a11, self.a12, self.a21, self.a22))

    def to_json(self) -> str:
        doc = {"n": self.n, "c": f"{self.c:x}", "d": f"{self.d:x}"}
        for name in ("a11", "a12", "a21", "a22"):
            doc[name] = [f"{r:x}" for r in getattr(self, name)]
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "AffineMap2n":
        doc = json.loads(text)
        return cls(n=doc["n"],
                   a11=tuple(int(r, 16) for r in doc["a11"]),
                   a12=tuple(int(r, 16) for r in doc["a12"]),
                   a21=tuple(int(r, 16) for r in doc["a21"]),
                   a22=tuple(int(r, 16) for r in doc["a22"]),
                   c=int(doc["c"], 16), d=int(doc["d"], 16))


def identity_map(n: int) -> AffineMap2n:
    eye = tuple(1 << i for i in range(n))
    zero = tuple(0 for _ in range(n))
    return AffineMap2n(n, eye, zero, zero, eye, 0, 0)


def random_affine(ctx: FieldCtx, form: str = "general", seed: int = 0,
                  max_attempts: int = 10_000) -> AffineMap2n:
    """Rejection-sample an invertible block map of the requested shape."""
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}")
    n = ctx.n
    rng = random.Random(seed)
    zero = tuple(0 for _ in range(n))
    for _ in range(max_attempts):
        a11 = tuple(rng.getrandbits(n) for _ in range(n))
        a12 = zero if form in ("ea", "affine") else \
            tuple(rng.getrandbits(n) for _ in range(n))
        a21 = zero if form == "affine" else \
            tuple(rng.getrandbits(n) for _ in range(n))
        a22 = tuple(rng.getrandbits(n) for _ in range(n))
        c = rng.getrandbits(n)
        d = rng.getrandbits(n)
        if _block_invertible((a11, a12, a21, a22), n):
            return AffineMap2n(n, a11, a12, a21, a22, c, d)
    raise RuntimeError(f"no invertible map found in {max_attempts} attempts")


# ----------------------------------------------------------------------
# graph transform
# ----------------------------------------------------------------------

def apply_graph_transform(f: VecFun, amap: AffineMap2n) -> Optional[VecFun]:
    """Transform the graph of f; None when the map is inadmissible for f."""
    if amap.n != f.ctx.n:
        raise ValueError("map and function sizes differ")
    t11, t12, t21, t22 = amap.tables()
    xs = np.arange(f.ctx.order, dtype=np.intp)
    u = t11[xs] ^ t12[f.lut] ^ np.uint32(amap.c)
    if np.unique(u).size != f.ctx.order:
        return None
    v = t21[xs] ^ t22[f.lut] ^ np.uint32(amap.d)
    lut = np.zeros(f.ctx.order, dtype=np.uint32)
    lut[u] = v
    return VecFun(f.ctx, lut, family="modified",
                  params={"base": f.describe(), "description": "graph-transform"})


# ----------------------------------------------------------------------
# predicted index maps per table kind
# ----------------------------------------------------------------------

def predicted_indices(amap: AffineMap2n, kind: str, indices) -> tuple:
    """Transformed table coordinates under the matching equivalence form.

    EBCT tolerates any invertible map (CCZ); LBCT needs A12 = 0 (EA);
    UBCT needs A12 = A21 = 0 (affine).  Mismatched shapes raise
    MapFormError rather than returning a wrong prediction.
    """
    kind = kind.lower()
    idx = [int(i) for i in indices]
    t11, t12, t21, t22 = amap.tables()
    if kind == "ebct":
        a, b, c, d = idx
        return (int(t12[b] ^ t11[a]), int(t22[b] ^ t21[a]),
                int(t12[d] ^ t11[c]), int(t22[d] ^ t21[c]))
    if kind == "lbct":
        if not amap.is_ea:
            raise MapFormError("LBCT index map is only constant for EA maps (A12 = 0)")
        a, b, c = idx
        return (int(t11[a]), int(t11[b]), int(t22[c] ^ t21[b]))
    if kind == "ubct":
        if not amap.is_affine:
            raise MapFormError("UBCT index map needs an affine map (A12 = A21 = 0)")
        a, b, c = idx
        return (int(t11[a]), int(t22[b]), int(t22[c]))
    raise ValueError(f"predicted_indices handles ebct/lbct/ubct, not {kind!r}")


def predicted_index_arrays(amap: AffineMap2n, kind: str, tup: np.ndarray) -> np.ndarray:
    kind = kind.lower()
    t11, t12, t21, t22 = amap.tables()
    tup = tup.astype(np.intp)
    if kind == "ebct":
        a, b, c, d = (tup[:, i] for i in range(4))
        return np.stack([t12[b] ^ t11[a], t22[b] ^ t21[a],
                         t12[d] ^ t11[c], t22[d] ^ t21[c]], axis=1)
    if kind == "lbct":
        if not amap.is_ea:
            raise MapFormError("LBCT index map is only constant for EA maps (A12 = 0)")
        a, b, c = (tup[:, i] for i in range(3))
        return np.stack([t11[a], t11[b], t22[c] ^ t21[b]], axis=1)
    if kind == "ubct":
        if not amap.is_affine:
            raise MapFormError("UBCT index map needs an affine map (A12 = A21 = 0)")
        a, b, c = (tup[:, i] for i in range(3))
        return np.stack([t11[a], t22[b], t22[c]], axis=1)
    raise ValueError(kind)


# ----------------------------------------------------------------------
# invariance verification
# ----------------------------------------------------------------------

@dataclass
class InvarianceReport:
    kind: str
    form: str
    tuples_checked: int
    counterexamples: list
    spectra_equal: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples and self.spectra_equal is not False


def invariance_check(f: VecFun, amap: AffineMap2n, kind: str,
                     sample_budget: int = 10_000, seed: int = 0,
                     check_spectra: bool = False) -> InvarianceReport:
    """Entrywise table_f(t) == table_g(predicted(t)) over sampled tuples."""
    kind = tables.check_kind(kind)
    g = apply_graph_transform(f, amap)
    if g is None:
        raise ValueError("map is not admissible for this function")
    n = f.ctx.n
    arity = tables.ARITY[kind]
    tup = sample_tuples(n, arity, sample_budget, seed)
    pred = predicted_index_arrays(amap, kind, tup)
    counterexamples = []
    if n <= tables.FULL_SWEEP_MAX_N[kind]:
        tf = tables.full_table(f, kind)
        tg = tables.full_table(g, kind)
        vf = tf[tuple(tup[:, i] for i in range(arity))]
        vg = tg[tuple(pred[:, i] for i in range(arity))]
        bad = np.flatnonzero(vf != vg)
        for i in bad[:10]:
            counterexamples.append((tuple(int(v) for v in tup[i]),
                                    int(vf[i]), int(vg[i])))
        spectra_equal = None
        if check_spectra:
            top = max(int(tf.max()), int(tg.max())) + 1
            spectra_equal = bool(np.array_equal(
                np.bincount(tf.ravel(), minlength=top),
                np.bincount(tg.ravel(), minlength=top)))
        return InvarianceReport(kind, _form_name(amap), int(tup.shape[0]),
                                counterexamples, spectra_equal)
    for row, prow in zip(tup, pred):
        vf = tables.entry(f, kind, row)
        vg = tables.entry(g, kind, prow)
        if vf != vg:
            counterexamples.append((tuple(int(v) for v in row), vf, vg))
            if len(counterexamples) >= 10:
                break
    return InvarianceReport(kind, _form_name(amap), int(tup.shape[0]),
                            counterexamples)


def _form_name(amap: AffineMap2n) -> str:
    if amap.is_affine:
        return "affine"
    if amap.is_ea:
        return "ea"
    return "general"
