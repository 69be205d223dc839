"""Vectorial Boolean functions F: GF(2^n) -> GF(2^n) as full lookup tables.

Every function is materialized as a 2^n-entry LUT at construction; the
table sweeps are LUT-bound, so nothing is evaluated on demand.  Named
families regenerate their LUT exactly from (family, params) metadata.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .field import FieldCtx, make_field


class VecFunError(ValueError):
    pass


class VecFun:
    """A function over GF(2^n): context, LUT, family tag, permutation cache."""

    __slots__ = ("ctx", "lut", "family", "params", "is_permutation", "inverse_lut")

    def __init__(self, ctx: FieldCtx, lut, family: str = "lut",
                 params: Optional[dict] = None):
        lut = np.asarray(lut, dtype=np.uint32)
        if lut.shape != (ctx.order,):
            raise VecFunError(f"lut must have {ctx.order} entries, got {lut.shape}")
        if lut.max(initial=0) >= ctx.order:
            raise VecFunError("lut value out of field range")
        self.ctx = ctx
        self.lut = lut
        self.family = family
        self.params = dict(params or {})
        counts = np.bincount(lut, minlength=ctx.order)
        self.is_permutation = bool((counts == 1).all())
        if self.is_permutation:
            inv = np.empty(ctx.order, dtype=np.uint32)
            inv[lut] = np.arange(ctx.order, dtype=np.uint32)
            self.inverse_lut = inv
        else:
            self.inverse_lut = None

    # -- evaluation ------------------------------------------------------

    def __call__(self, x: int) -> int:
        return int(self.lut[x])

    def eval(self, x: int) -> int:
        return int(self.lut[x])

    def derivative(self, x: int, a: int) -> int:
        """F(x+a) + F(x)."""
        return int(self.lut[x ^ a] ^ self.lut[x])

    def image(self) -> set[int]:
        return set(int(v) for v in np.unique(self.lut))

    def image_mask(self) -> np.ndarray:
        mask = np.zeros(self.ctx.order, dtype=bool)
        mask[self.lut] = True
        return mask

    def preimage_size(self, targets) -> int:
        """Number of x with F(x) in the target set."""
        mask = np.zeros(self.ctx.order, dtype=bool)
        for t in targets:
            mask[t] = True
        return int(mask[self.lut].sum())

    def preimage_size_of_shifted_image(self, c: int) -> int:
        """|F^{-1}(c + Im(F))|, the a=b=0 UBCT column for non-permutations."""
        return int(self.image_mask()[self.lut ^ np.uint32(c)].sum())

    def compose_inverse(self) -> "VecFun":
        if not self.is_permutation:
            raise VecFunError("compositional inverse requires a permutation")
        return VecFun(self.ctx, self.inverse_lut, family="modified",
                      params={"base": self.describe(), "description": "inverse"})

    def describe(self) -> str:
        if self.family == "power":
            return f"power:{self.params['d']}"
        if self.family in ("gold", "kasami", "bracken"):
            return f"{self.family}:{self.params['s']}"
        if self.family == "modified":
            return f"modified({self.params.get('description', '?')})"
        return self.family

    def __repr__(self) -> str:
        return f"VecFun(n={self.ctx.n}, {self.describe()}, perm={self.is_permutation})"


# ----------------------------------------------------------------------
# Named families
# ----------------------------------------------------------------------

def power_function(ctx: FieldCtx, d: int) -> VecFun:
    if d < 1:
        raise VecFunError("power exponent must be >= 1")
    return VecFun(ctx, ctx.pow_all(d), family="power", params={"d": d})


def gold_function(ctx: FieldCtx, s: int) -> VecFun:
    if not 1 <= s < ctx.n:
        raise VecFunError(f"gold parameter s must be in [1, n), got {s}")
    f = power_function(ctx, (1 << s) + 1)
    return VecFun(ctx, f.lut, family="gold", params={"s": s})


def kasami_function(ctx: FieldCtx, s: int) -> VecFun:
    if not 1 <= s < ctx.n:
        raise VecFunError(f"kasami parameter s must be in [1, n), got {s}")
    f = power_function(ctx, (1 << (2 * s)) - (1 << s) + 1)
    return VecFun(ctx, f.lut, family="kasami", params={"s": s})


def bracken_function(ctx: FieldCtx, s: int) -> VecFun:
    if ctx.n != 4 * s:
        raise VecFunError(f"bracken-leander needs n = 4s, got n={ctx.n}, s={s}")
    f = power_function(ctx, (1 << (2 * s)) + (1 << s) + 1)
    return VecFun(ctx, f.lut, family="bracken", params={"s": s})


def inverse_function(ctx: FieldCtx) -> VecFun:
    f = power_function(ctx, ctx.order - 2)
    return VecFun(ctx, f.lut, family="inverse")


def polynomial_function(ctx: FieldCtx, coeffs: Sequence[int]) -> VecFun:
    """Evaluate sum(coeffs[i] * X^i) by Horner, then freeze to a LUT."""
    xs = np.arange(ctx.order, dtype=np.uint32)
    acc = np.zeros(ctx.order, dtype=np.uint32)
    for c in reversed(list(coeffs)):
        acc = ctx.mul_vec(acc, xs) ^ np.uint32(c)
    return VecFun(ctx, acc, family="polynomial",
                  params={"coeffs": [int(c) for c in coeffs]})


def gold_ccz_partner(ctx: FieldCtx) -> VecFun:
    """X^9 + (X^8 + X) * Tr(X^9 + X) over GF(2^5).

    A non-power function CCZ-equivalent (but not EA-equivalent) to X^9;
    shipped as a fixture because admissible general graph transforms of a
    fixed function are rare under random sampling.
    """
    if ctx.n != 5:
        raise VecFunError("gold-ccz5 fixture is defined over n=5")
    x9 = ctx.pow_all(9)
    x8 = ctx.pow_all(8)
    xs = np.arange(ctx.order, dtype=np.uint32)
    tr = ctx.abs_trace_table()[x9 ^ xs]
    lut = x9 ^ np.where(tr == 1, x8 ^ xs, 0).astype(np.uint32)
    return VecFun(ctx, lut, family="modified",
                  params={"base": "power:9", "description": "ccz-partner"})


def from_family(ctx: FieldCtx, spec: str) -> VecFun:
    """Resolve an S-box spec string against a field context.

    Accepted forms: power:<d>, gold:<s>, kasami:<s>, bracken:<s>,
    inverse, poly:<c0,c1,...>, lut:@<path>, gold-ccz5.
    """
    spec = spec.strip()
    if spec == "inverse":
        return inverse_function(ctx)
    if spec == "gold-ccz5":
        return gold_ccz_partner(ctx)
    if spec.startswith("power:"):
        return power_function(ctx, int(spec.split(":", 1)[1]))
    if spec.startswith("gold:"):
        return gold_function(ctx, int(spec.split(":", 1)[1]))
    if spec.startswith("kasami:"):
        return kasami_function(ctx, int(spec.split(":", 1)[1]))
    if spec.startswith("bracken:"):
        return bracken_function(ctx, int(spec.split(":", 1)[1]))
    if spec.startswith("poly:"):
        coeffs = [int(c, 0) for c in spec.split(":", 1)[1].split(",")]
        return polynomial_function(ctx, coeffs)
    if spec.startswith("lut:@"):
        fun, _ = read_lut_file(spec[5:], ctx=ctx)
        return fun
    raise VecFunError(f"unrecognized sbox spec {spec!r}")


# ----------------------------------------------------------------------
# LUT file format: line 1 `n=<int>`, optional line `modulus=<hex>`,
# then 2^n whitespace-separated hex values in index order 0..2^n-1.
# ----------------------------------------------------------------------

def write_lut_file(path, fun: VecFun, include_modulus: bool = True) -> None:
    with open(path, "w") as fh:
        fh.write(f"n={fun.ctx.n}\n")
        if include_modulus:
            fh.write(f"modulus={fun.ctx.modulus:x}\n")
        fh.write(" ".join(f"{int(v):x}" for v in fun.lut))
        fh.write("\n")


def read_lut_file(path, ctx: Optional[FieldCtx] = None) -> tuple[VecFun, FieldCtx]:
    with open(path) as fh:
        text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise VecFunError("LUT file must start with 'n=<int>'")
    n = int(lines[0][2:])
    modulus = None
    rest = lines[1:]
    if rest and rest[0].startswith("modulus="):
        modulus = int(rest[0][len("modulus="):], 16)
        rest = rest[1:]
    vals = [int(tok, 16) for tok in " ".join(rest).split()]
    if len(vals) != (1 << n):
        raise VecFunError(f"LUT file holds {len(vals)} values, expected {1 << n}")
    if ctx is None:
        ctx = make_field(n, modulus)
    elif ctx.n != n:
        raise VecFunError(f"LUT file is for n={n}, context has n={ctx.n}")
    elif modulus is not None and modulus != ctx.modulus:
        raise VecFunError("LUT file modulus does not match the active context")
    return VecFun(ctx, vals, family="lut"), ctx


# ----------------------------------------------------------------------
# Seeded random functions (test corpus material)
# ----------------------------------------------------------------------

def random_function(ctx: FieldCtx, seed: int) -> VecFun:
    rng = np.random.default_rng(seed)
    lut = rng.integers(0, ctx.order, size=ctx.order, dtype=np.uint32)
    return VecFun(ctx, lut, family="lut", params={"seed": seed, "kind": "random"})


def random_permutation(ctx: FieldCtx, seed: int) -> VecFun:
    rng = np.random.default_rng(seed)
    lut = rng.permutation(ctx.order).astype(np.uint32)
    return VecFun(ctx, lut, family="lut", params={"seed": seed, "kind": "randperm"})
