"""Exact arithmetic in GF(2^n) for 2 <= n <= 20.

Field elements are integers whose bit i is the coefficient of x^i; this
encoding is the external contract for LUT files and JSON output.  A
polynomial over GF(2) is likewise an integer bitstring, so the modulus
x^3 + x + 1 is 0b1011 = 11.

Multiplication runs through discrete log / antilog tables built once at
construction time.  The shipped default modulus per degree (primitive,
low weight, x itself primitive):

    n=2  : x^2+x+1                  0x7
    n=3  : x^3+x+1                  0xb
    n=4  : x^4+x+1                  0x13
    n=5  : x^5+x^2+1                0x25
    n=6  : x^6+x+1                  0x43
    n=7  : x^7+x+1                  0x83
    n=8  : x^8+x^4+x^3+x^2+1        0x11d
    n=9  : x^9+x^4+1                0x211
    n=10 : x^10+x^3+1               0x409
    n=11 : x^11+x^2+1               0x805
    n=12 : x^12+x^6+x^4+x+1         0x1053
    n=13 : x^13+x^4+x^3+x+1         0x201b
    n=14 : x^14+x^10+x^6+x+1        0x4443
    n=15 : x^15+x+1                 0x8003
    n=16 : x^16+x^12+x^3+x+1        0x1100b
    n=17 : x^17+x^3+1               0x20009
    n=18 : x^18+x^7+1               0x40081
    n=19 : x^19+x^5+x^2+x+1         0x80027
    n=20 : x^20+x^3+1               0x100009
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

DEFAULT_MODULI = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
    17: 0x20009,
    18: 0x40081,
    19: 0x80027,
    20: 0x100009,
}

MIN_N = 2
MAX_N = 20


class FieldError(ValueError):
    """Invalid field construction or domain error (e.g. inv(0))."""


# ----------------------------------------------------------------------
# Polynomial arithmetic over GF(2), polynomials as integer bitstrings
# ----------------------------------------------------------------------

def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = poly_degree(m)
    da = poly_degree(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = poly_degree(a)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    q = 0
    db = poly_degree(b)
    da = poly_degree(a)
    while da >= db and a:
        shift = da - db
        q |= 1 << shift
        a ^= b << shift
        da = poly_degree(a)
    return q, a


def smallest_factor(p: int) -> Optional[int]:
    """Smallest nontrivial monic factor of p over GF(2), or None if irreducible.

    Trial division by all polynomials of degree 1..deg(p)//2; fine for
    the degrees this package supports.
    """
    d = poly_degree(p)
    for deg in range(1, d // 2 + 1):
        for cand in range(1 << deg, 1 << (deg + 1)):
            if poly_mod(p, cand) == 0:
                return cand
    return None


def is_irreducible(p: int) -> bool:
    return poly_degree(p) >= 1 and smallest_factor(p) is None


@lru_cache(maxsize=None)
def _prime_factors(v: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        out.append(v)
    return tuple(out)


def _poly_powmod(base: int, e: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = poly_mulmod(r, base, m)
        base = poly_mulmod(base, base, m)
        e >>= 1
    return r


def _x_is_primitive(modulus: int, n: int) -> bool:
    group = (1 << n) - 1
    for p in _prime_factors(group):
        if _poly_powmod(2, group // p, modulus) == 1:
            return False
    return True


# ----------------------------------------------------------------------
# Field context
# ----------------------------------------------------------------------

class FieldCtx:
    """A concrete representation of GF(2^n): modulus, generator, log tables.

    Immutable after construction; safe to share across workers.
    """

    __slots__ = (
        "n", "modulus", "generator", "order", "group_order",
        "antilog", "log", "_log_list", "_antilog_list",
    )

    def __init__(self, n: int, modulus: int, generator: int,
                 antilog: np.ndarray, log: np.ndarray):
        self.n = n
        self.modulus = modulus
        self.generator = generator
        self.order = 1 << n
        self.group_order = (1 << n) - 1
        self.antilog = antilog          # antilog[k] = g^k, k in [0, 2*(2^n-1))
        self.log = log                  # log[x] = k with g^k = x; log[0] = -1
        # Plain-int copies: scalar paths avoid numpy scalar overhead.
        self._antilog_list = antilog.tolist()
        self._log_list = log.tolist()

    # -- scalar arithmetic ---------------------------------------------

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._antilog_list[self._log_list[x] + self._log_list[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("0 has no multiplicative inverse")
        return self._antilog_list[self.group_order - self._log_list[x]]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise FieldError("0 cannot be raised to a negative power")
            return 0
        return self._antilog_list[(self._log_list[x] * e) % self.group_order]

    def sq(self, x: int) -> int:
        return self.mul(x, x)

    # -- traces ----------------------------------------------------------

    def abs_trace(self, x: int) -> int:
        """Absolute trace to GF(2), returned as an int in {0, 1}."""
        t = 0
        y = x
        for _ in range(self.n):
            t ^= y
            y = self.mul(y, y)
        assert t in (0, 1)
        return t

    def rel_trace(self, m: int, x: int) -> int:
        """Relative trace onto the subfield GF(2^m); requires m | n."""
        if self.n % m != 0:
            raise FieldError(f"relative trace needs m | n, got m={m}, n={self.n}")
        t = 0
        y = x
        for _ in range(self.n // m):
            t ^= y
            for _ in range(m):
                y = self.mul(y, y)
        return t

    def embedded_trace(self, s: int, x: int) -> int:
        """Sum of the Frobenius^s orbit of x, m = n/gcd(s,n) terms.

        Agrees with rel_trace(s, .) when s | n; in general the value lies
        in GF(2^gcd(s,n)) (asserted).
        """
        if s < 1:
            raise FieldError("embedded trace needs s >= 1")
        t_sub = math.gcd(s, self.n)
        m = self.n // t_sub
        t = 0
        y = x
        for _ in range(m):
            t ^= y
            for _ in range(s):
                y = self.mul(y, y)
        assert self.pow(t, 1 << t_sub) == t
        return t

    # -- vectorized helpers (used by table builders) ---------------------

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    def pow_all(self, e: int) -> np.ndarray:
        """Array p with p[x] = x^e for every field element x (e >= 1)."""
        if e < 1:
            raise FieldError("pow_all needs e >= 1")
        out = np.zeros(self.order, dtype=np.uint32)
        ks = (np.arange(self.group_order, dtype=np.int64) * (e % self.group_order)) \
            % self.group_order
        out[self.antilog[: self.group_order]] = self.antilog[ks]
        return out

    def mul_vec(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        res = self.antilog[(self.log[xs] + self.log[ys]) % self.group_order]
        return np.where((xs == 0) | (ys == 0), 0, res).astype(np.uint32)

    def inv_all(self) -> np.ndarray:
        """Array v with v[x] = x^{-1}, and v[0] = 0 by convention."""
        out = np.zeros(self.order, dtype=np.uint32)
        ks = (self.group_order - np.arange(self.group_order, dtype=np.int64)) \
            % self.group_order
        out[self.antilog[: self.group_order]] = self.antilog[ks]
        return out

    def abs_trace_table(self) -> np.ndarray:
        acc = np.arange(self.order, dtype=np.uint32)
        y = acc.copy()
        for _ in range(self.n - 1):
            y = self.mul_vec(y, y)
            acc ^= y
        return acc

    def embedded_trace_table(self, s: int) -> np.ndarray:
        m = self.n // math.gcd(s, self.n)
        y = np.arange(self.order, dtype=np.uint32)
        acc = y.copy()
        for _ in range(m - 1):
            for _ in range(s):
                y = self.mul_vec(y, y)
            acc ^= y
        return acc

    def subfield_mask(self, t: int) -> np.ndarray:
        """Boolean mask over all elements x of membership in GF(2^t)."""
        return self.pow_all(1 << t) == np.arange(self.order, dtype=np.uint32)

    def subfield_elements(self, t: int) -> list[int]:
        return [int(x) for x in np.nonzero(self.subfield_mask(t))[0]]

    # -- element formatting ----------------------------------------------

    def element_from_text(self, text: str) -> int:
        """Parse an element literal: decimal, 0x-hex, or g^k power notation."""
        text = text.strip()
        if text in ("g", "G"):
            return self.generator
        if text.startswith(("g^", "G^")):
            return self._antilog_list[int(text[2:]) % self.group_order]
        val = int(text, 16) if text.lower().startswith("0x") else int(text)
        if not 0 <= val < self.order:
            raise FieldError(f"element {text} out of range for n={self.n}")
        return val

    def element_to_power_text(self, x: int) -> str:
        if x == 0:
            return "0"
        return f"g^{self._log_list[x]}"

    def __repr__(self) -> str:
        return (f"FieldCtx(n={self.n}, modulus=0x{self.modulus:x}, "
                f"generator=0x{self.generator:x})")


def _build_x_antilog(n: int, modulus: int) -> np.ndarray:
    """Antilog table for generator x via shift-and-reduce; x must be primitive."""
    group = (1 << n) - 1
    high = 1 << n
    red = modulus & (high - 1)
    table = np.empty(2 * group, dtype=np.int64)
    v = 1
    for k in range(group):
        table[k] = v
        v <<= 1
        if v & high:
            v = (v ^ high) ^ red
    table[group:] = table[:group]
    return table


def _generic_element_order(n: int, modulus: int, e: int) -> int:
    group = (1 << n) - 1
    order = group
    for p in _prime_factors(group):
        while order % p == 0 and _poly_powmod(e, order // p, modulus) == 1:
            order //= p
    return order


@lru_cache(maxsize=64)
def _x_tables_cached(n: int, modulus: int) -> np.ndarray:
    return _build_x_antilog(n, modulus)


def make_field(n: int, modulus: Optional[int] = None,
               generator: Optional[int] = None) -> FieldCtx:
    """Build a GF(2^n) context with verified modulus and generator.

    modulus defaults to the shipped table; it must be irreducible of
    degree exactly n (a reducible input raises FieldError naming the
    factor found).  generator defaults to x when x is primitive for the
    modulus, else to the smallest primitive element; a supplied
    generator is verified to have order 2^n - 1.
    """
    if not MIN_N <= n <= MAX_N:
        raise FieldError(f"n={n} out of supported range [{MIN_N}, {MAX_N}]")
    if modulus is None:
        modulus = DEFAULT_MODULI[n]
    if poly_degree(modulus) != n:
        raise FieldError(f"modulus 0x{modulus:x} has degree {poly_degree(modulus)}, "
                         f"expected {n}")
    factor = smallest_factor(modulus)
    if factor is not None:
        raise FieldError(f"modulus 0x{modulus:x} is reducible: "
                         f"divisible by 0x{factor:x}")

    group = (1 << n) - 1
    x_primitive = _x_is_primitive(modulus, n)

    if generator is None and x_primitive:
        generator = 2
    elif generator is None:
        generator = next(e for e in range(2, 1 << n)
                         if _generic_element_order(n, modulus, e) == group)
    else:
        if not 2 <= generator < (1 << n):
            raise FieldError(f"generator 0x{generator:x} out of range")
        if _generic_element_order(n, modulus, generator) != group:
            raise FieldError(f"generator 0x{generator:x} does not have "
                             f"order {group}")

    if x_primitive:
        ax = _x_tables_cached(n, modulus)
        if generator == 2:
            antilog = ax
        else:
            # g = x^k: the g-indexed tables are a re-indexing of the x tables.
            logx = np.empty(1 << n, dtype=np.int64)
            logx[0] = -1
            logx[ax[:group]] = np.arange(group, dtype=np.int64)
            k = int(logx[generator])
            ks = (np.arange(group, dtype=np.int64) * k) % group
            antilog = np.empty(2 * group, dtype=np.int64)
            antilog[:group] = ax[ks]
            antilog[group:] = antilog[:group]
    else:
        antilog = np.empty(2 * group, dtype=np.int64)
        v = 1
        for k in range(group):
            antilog[k] = v
            v = poly_mulmod(v, generator, modulus)
        antilog[group:] = antilog[:group]

    log = np.empty(1 << n, dtype=np.int64)
    log[0] = -1
    log[antilog[:group]] = np.arange(group, dtype=np.int64)
    return FieldCtx(n, modulus, generator, antilog, log)


def enumerate_primitive_representations(n: int) -> Iterator[tuple[int, int]]:
    """Yield every (primitive modulus, primitive element) pair for degree n.

    Moduli ascend by integer value; generators ascend by element encoding
    within each modulus.  Capped at n <= 12 for enumeration cost.
    """
    if not MIN_N <= n <= 12:
        raise FieldError(f"representation enumeration supports 2 <= n <= 12, got {n}")
    group = (1 << n) - 1
    for modulus in range((1 << n) | 1, 1 << (n + 1), 2):
        if smallest_factor(modulus) is not None:
            continue
        if not _x_is_primitive(modulus, n):
            continue
        ax = _x_tables_cached(n, modulus)
        gens = sorted(int(ax[k]) for k in range(1, group)
                      if math.gcd(k, group) == 1)
        for g in gens:
            yield modulus, g
