import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boomtab.field import (DEFAULT_MODULI, FieldError,
                           enumerate_primitive_representations, is_irreducible,
                           make_field, poly_degree, poly_mulmod)

# ---------------------------------------------------------------------
# construction and defaults
# ---------------------------------------------------------------------

def test_default_moduli_are_irreducible_of_right_degree():
    for n, mod in DEFAULT_MODULI.items():
        assert poly_degree(mod) == n
        assert is_irreducible(mod)


def test_make_field_smallest(ctx3):
    # x^3 + x + 1, 8 elements, generator order 7
    assert ctx3.modulus == 0xB
    assert ctx3.order == 8
    assert ctx3.pow(ctx3.generator, 7) == 1
    assert all(ctx3.pow(ctx3.generator, k) != 1 for k in range(1, 7))


def test_generator_order_n6(ctx6):
    assert ctx6.pow(ctx6.generator, 63) == 1
    assert all(ctx6.pow(ctx6.generator, k) != 1 for k in range(1, 63))


def test_reducible_modulus_rejected_with_factor():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2
    with pytest.raises(FieldError, match="0x7"):
        make_field(4, 0b10101)


def test_n_out_of_range():
    with pytest.raises(FieldError):
        make_field(1)
    with pytest.raises(FieldError):
        make_field(21)


def test_wrong_degree_modulus():
    with pytest.raises(FieldError, match="degree"):
        make_field(4, 0xB)


def test_bad_generator_rejected(ctx4):
    # order of any element divides 15; element 1 has order 1
    with pytest.raises(FieldError):
        make_field(4, generator=1)


def test_irreducible_but_non_primitive_modulus():
    # x^4+x^3+x^2+x+1 is irreducible but x has order 5; a primitive
    # generator must be located by search
    ctx = make_field(4, 0x1F)
    assert ctx.pow(2, 5) == 1          # x is not primitive here
    assert ctx.pow(ctx.generator, 15) == 1
    assert all(ctx.pow(ctx.generator, k) != 1 for k in range(1, 15))
    for x in range(16):
        for y in range(16):
            assert ctx.mul(x, y) == poly_mulmod(x, y, 0x1F)


# ---------------------------------------------------------------------
# arithmetic vs schoolbook reduction (full domain for small n)
# ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8])
def test_mul_matches_schoolbook_full(n):
    ctx = make_field(n)
    for x in ctx.elements():
        for y in ctx.elements():
            assert ctx.mul(x, y) == poly_mulmod(x, y, ctx.modulus)


@pytest.mark.parametrize("n,pairs", [(10, 100_000), (14, 20_000), (20, 100_000)])
def test_mul_matches_schoolbook_sampled(n, pairs):
    ctx = make_field(n)
    rng = np.random.default_rng(n)
    for _ in range(pairs):
        x, y = (int(v) for v in rng.integers(0, ctx.order, 2))
        assert ctx.mul(x, y) == poly_mulmod(x, y, ctx.modulus)


def test_mul_absorbing_zero(ctx6):
    assert all(ctx6.mul(x, 0) == 0 for x in ctx6.elements())


def test_inv_and_pow(ctx6):
    g = ctx6.generator
    assert ctx6.inv(g) == ctx6.pow(g, ctx6.order - 2)
    for x in ctx6.nonzero_elements():
        assert ctx6.mul(x, ctx6.inv(x)) == 1
    with pytest.raises(FieldError):
        ctx6.inv(0)
    assert ctx6.pow(0, 0) == 1
    assert ctx6.pow(0, 5) == 0
    with pytest.raises(FieldError):
        ctx6.pow(0, -1)
    # repeated-squaring oracle, independent of log tables
    def slow_pow(x, e):
        r = 1
        for _ in range(e):
            r = poly_mulmod(r, x, ctx6.modulus)
        return r
    for x in (1, 2, g, 37):
        for e in (0, 1, 2, 63, 64, 100):
            assert ctx6.pow(x, e) == slow_pow(x, e)


def test_pow_huge_exponent(ctx6):
    g = ctx6.generator
    assert ctx6.pow(g, 63) == 1
    assert ctx6.pow(g, 2 ** 80) == ctx6.pow(g, (2 ** 80) % 63)
    assert ctx6.pow(g, -1) == ctx6.inv(g)


# ---------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------

def test_abs_trace_balanced(ctx6):
    assert ctx6.abs_trace(0) == 0
    assert sum(ctx6.abs_trace(x) for x in ctx6.elements()) == 32


def test_rel_trace_lands_in_subfield(ctx6):
    for m in (1, 2, 3, 6):
        for x in ctx6.elements():
            t = ctx6.rel_trace(m, x)
            assert ctx6.pow(t, 1 << m) == t or t == 0
    with pytest.raises(FieldError):
        ctx6.rel_trace(4, 1)


def test_trace_transitivity(ctx6):
    # absolute trace = abs trace over GF(2^m) of the relative trace
    for m in (2, 3):
        sub_elems = {x for x in ctx6.elements() if ctx6.pow(x, 1 << m) == x}
        for x in ctx6.elements():
            t = ctx6.rel_trace(m, x)
            assert t in sub_elems
            inner = 0
            y = t
            for _ in range(m):
                inner ^= y
                y = ctx6.mul(y, y)
            assert inner == ctx6.abs_trace(x)


def test_embedded_trace_in_subfield(ctx6):
    # s = 2 divides 6: embedded trace agrees with the relative trace
    for x in ctx6.elements():
        assert ctx6.embedded_trace(2, x) == ctx6.rel_trace(2, x)
    # s = 4 does not divide 6: gcd = 2, result in GF(4)
    for x in ctx6.elements():
        t = ctx6.embedded_trace(4, x)
        assert ctx6.pow(t, 4) == t or t == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10 ** 9), st.integers(0, 10 ** 9),
       st.integers(1, 7))
def test_frobenius_additivity(n, xv, yv, k):
    ctx = make_field(n)
    x, y = xv % ctx.order, yv % ctx.order
    e = 1 << k
    assert ctx.pow(x ^ y, e) == ctx.pow(x, e) ^ ctx.pow(y, e)


# ---------------------------------------------------------------------
# primitive representation enumeration
# ---------------------------------------------------------------------

def test_enumerate_n3():
    reps = list(enumerate_primitive_representations(3))
    assert len({m for m, g in reps}) == 2          # two primitive polynomials
    assert len(reps) == 12                          # each with phi(7)=6 elements
    for m, g in reps:
        ctx = make_field(3, m, g)
        assert ctx.pow(g, 7) == 1
        assert all(ctx.pow(g, k) != 1 for k in range(1, 7))


def test_enumerate_n4_two_polynomials():
    reps = list(enumerate_primitive_representations(4))
    assert sorted({m for m, g in reps}) == [0x13, 0x19]  # x^4+x+1 and reciprocal


def test_enumerate_range_cap():
    with pytest.raises(FieldError):
        list(enumerate_primitive_representations(13))


def test_enumerated_generators_have_full_order():
    for m, g in list(enumerate_primitive_representations(5))[:20]:
        order = 1
        acc = g
        while acc != 1:
            acc = poly_mulmod(acc, g, m)
            order += 1
        assert order == 31


# ---------------------------------------------------------------------
# vectorized helpers
# ---------------------------------------------------------------------

def test_vector_helpers_match_scalar(ctx6):
    pa = ctx6.pow_all(11)
    inv = ctx6.inv_all()
    att = ctx6.abs_trace_table()
    ett = ctx6.embedded_trace_table(4)
    for x in ctx6.elements():
        assert pa[x] == ctx6.pow(x, 11)
        assert att[x] == ctx6.abs_trace(x)
        assert ett[x] == ctx6.embedded_trace(4, x)
        if x:
            assert inv[x] == ctx6.inv(x)
    assert len(ctx6.subfield_elements(2)) == 4
    assert len(ctx6.subfield_elements(3)) == 8


def test_element_text_parsing(ctx6):
    g = ctx6.generator
    assert ctx6.element_from_text("g^44") == ctx6.pow(g, 44)
    assert ctx6.element_from_text("g") == g
    assert ctx6.element_from_text("0x2a") == 42
    assert ctx6.element_from_text("7") == 7
    with pytest.raises(FieldError):
        ctx6.element_from_text("64")
    assert ctx6.element_to_power_text(ctx6.pow(g, 13)) == "g^13"
    assert ctx6.element_to_power_text(0) == "0"
