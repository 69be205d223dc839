import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boomtab import closed_form as cf
from boomtab import tables
from boomtab.field import make_field
from boomtab.vecfun import (VecFun, bracken_function, gold_function,
                            inverse_function, kasami_function, power_function,
                            random_function, random_permutation)

# ---------------------------------------------------------------------
# solution sets and pair keys
# ---------------------------------------------------------------------

def test_solution_set_structure(ctx6):
    f = power_function(ctx6, 11)
    g = ctx6.generator
    s = cf.solve_derivative(f, g, ctx6.pow(g, 11))
    assert len(s.solutions) == 10 and s.k == 5
    for x in s.solutions:
        assert f.derivative(x, s.direction) == s.target
        assert (x ^ s.direction) in s
    ps = cf.pair_sets(f, s)
    assert len(ps.ebct_keys) == 10  # C(5,2) unordered pairs
    # the worked example: (g^55, g^38) sits in two disjoint pair keys
    key = (ctx6.pow(g, 55), ctx6.pow(g, 38))
    ell = cf.largest_disjoint_pairs(ps.ebct_keys, key)
    assert ell == 2
    assert cf.delta_uniform_ebct(f, key[0], key[1], g, ctx6.pow(g, 11)) == 4 * ell


def test_x11_worked_example_companions():
    ctx = make_field(6)
    f = power_function(ctx, 11)
    g = ctx.generator
    c, d = g, ctx.pow(g, 11)
    a2, b2 = ctx.pow(g, 19), ctx.pow(g, 20)
    assert tables.ebct_entry(f, a2, b2, c, d) == 8
    a, b = ctx.pow(g, 55), ctx.pow(g, 38)
    assert tables.lbct_entry(f, a, b, c) == 0   # DDT(b, c) = 2 and a != b
    assert tables.ubct_entry(f, a, b, c) == 0   # c not in any W pair key


# ---------------------------------------------------------------------
# the general engine vs brute force
# ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5])
def test_delta_engine_matches_brute_full(n):
    ctx = make_field(n)
    for seed in range(4):
        f = random_function(ctx, seed) if seed % 2 else random_permutation(ctx, seed)
        assert np.array_equal(cf.delta_uniform_ebct_full(f), tables.ebct_full(f))
        assert np.array_equal(cf.delta_uniform_lbct_full(f), tables.lbct_full(f))
        assert np.array_equal(cf.delta_uniform_ubct_full(f), tables.ubct_full(f))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10 ** 9), st.integers(0, 10 ** 9))
def test_delta_engine_fuzz(n, fseed, tseed):
    ctx = make_field(n)
    f = random_function(ctx, fseed % 100_000)
    rng = np.random.default_rng(tseed)
    for _ in range(15):
        a, b, c, d = (int(v) for v in rng.integers(0, ctx.order, 4))
        assert cf.delta_uniform_ebct(f, a, b, c, d) == \
            tables.ebct_entry(f, a, b, c, d)
        assert cf.delta_uniform_lbct(f, a, b, c) == tables.lbct_entry(f, a, b, c)
        assert cf.delta_uniform_ubct(f, a, b, c) == tables.ubct_entry(f, a, b, c)


def test_delta_engine_degenerate_functions(ctx4):
    # extreme differential uniformity: constant, identity, 2-valued, linear
    q = 16
    luts = [np.zeros(q, dtype=np.uint32),
            np.arange(q, dtype=np.uint32),
            np.array([0, 7] * 8, dtype=np.uint32),
            np.array([((x << 1) & 15) ^ (x >> 3) for x in range(q)],
                     dtype=np.uint32)]
    for lut in luts:
        f = VecFun(ctx4, lut)
        assert np.array_equal(cf.delta_uniform_ebct_full(f), tables.ebct_full(f))
        assert np.array_equal(cf.delta_uniform_lbct_full(f), tables.lbct_full(f))
        assert np.array_equal(cf.delta_uniform_ubct_full(f), tables.ubct_full(f))


def test_delta_scalar_matches_brute(ctx5):
    f = random_function(ctx5, 77)
    rng = np.random.default_rng(0)
    for _ in range(300):
        a, b, c, d = (int(v) for v in rng.integers(0, 32, 4))
        assert cf.delta_uniform_ebct(f, a, b, c, d) == \
            tables.ebct_entry(f, a, b, c, d)
        assert cf.delta_uniform_lbct(f, a, b, c) == tables.lbct_entry(f, a, b, c)
        assert cf.delta_uniform_ubct(f, a, b, c) == tables.ubct_entry(f, a, b, c)


def test_delta_zero_base_solutions(ctx5):
    f = random_function(ctx5, 3)
    ddt = tables.ddt_full(f)
    cs, ds = np.nonzero(ddt == 0)
    a = 5
    for c, d in list(zip(cs, ds))[:20]:
        if c == 0:
            continue
        assert cf.delta_uniform_ebct(f, a, 1, int(c), int(d)) == 0


def test_trivial_entry_cases(ctx5):
    f = power_function(ctx5, 11)  # permutation
    ddt = tables.ddt_full(f)
    for c in range(1, 32):
        for d in range(0, 32, 5):
            assert cf.trivial_entry(f, "ebct", (0, 0, c, d)) == ddt[c, d]
    assert cf.trivial_entry(f, "lbct", (3, 7, 0)) == 0
    assert cf.trivial_entry(f, "lbct", (3, 0, 0)) == 32
    assert cf.trivial_entry(f, "ubct", (0, 0, 9)) == 32
    assert cf.trivial_entry(f, "ebct", (1, 2, 3, 4)) is None
    g = random_function(make_field(4), 8)  # non-permutation delegation
    for c in range(16):
        assert cf.trivial_entry(g, "ubct", (0, 0, c)) == \
            g.preimage_size_of_shifted_image(c)
        assert cf.trivial_entry(g, "ubct", (3, 5, 0)) == \
            tables.ubct_entry(g, 3, 5, 0)


def test_ge2lu_correspondence(ctx6):
    f = gold_function(ctx6, 2)
    rng = np.random.default_rng(4)
    seen_solution = False
    tuples = [tuple(int(v) for v in rng.integers(0, 64, 4)) for _ in range(200)]
    # constructed positives: a = z1+z2, b = F(z1)+F(z2) for real solution pairs
    for c in range(1, 10):
        for d in range(64):
            s = cf.solve_derivative(f, c, d)
            if s.k >= 2:
                z1, z2 = s.representatives[:2]
                tuples.append((z1 ^ z2, int(f.lut[z1] ^ f.lut[z2]), c, d))
    for a, b, c, d in tuples:
        for rec in cf.ge2lu_check(f, a, b, c, d):
            assert rec.consistent
            seen_solution |= rec.solves_ebct
    assert seen_solution


# ---------------------------------------------------------------------
# APN and 4-uniform case tables
# ---------------------------------------------------------------------

def test_apn_tables_gold5(ctx5):
    f = gold_function(ctx5, 1)
    eb = tables.ebct_full(f)
    lb = tables.lbct_full(f)
    ub = tables.ubct_full(f)
    rng = np.random.default_rng(1)
    for _ in range(400):
        a, b, c, d = (int(v) for v in rng.integers(0, 32, 4))
        assert cf.apn_tables(f, "ebct", (a, b, c, d)) == eb[a, b, c, d]
        assert cf.apn_tables(f, "lbct", (a, b, c)) == lb[a, b, c]
        assert cf.apn_tables(f, "ubct", (a, b, c)) == ub[a, b, c]
    # all nonzero EBCT values of an APN function lie in {0, 2}
    assert set(np.unique(eb[1:, 1:, 1:, 1:])) <= {0, 2}


def test_apn_tables_rejects_non_apn(ctx6):
    f = gold_function(ctx6, 2)
    with pytest.raises(cf.HypothesisError):
        cf.apn_tables(f, "lbct", (1, 2, 3))


def test_fourdiff_tables(ctx6):
    f = gold_function(ctx6, 2)       # 4-uniform permutation
    eb = tables.ebct_full(f)
    lb = tables.lbct_full(f)
    ub = tables.ubct_full(f)
    rng = np.random.default_rng(2)
    for _ in range(250):
        a, b, c, d = (int(v) for v in rng.integers(0, 64, 4))
        assert cf.fourdiff_tables(f, "ebct", (a, b, c, d),
                                  assume_4uniform=True) == eb[a, b, c, d]
        assert cf.fourdiff_tables(f, "lbct", (a, b, c),
                                  assume_4uniform=True) == lb[a, b, c]
        assert cf.fourdiff_tables(f, "ubct", (a, b, c),
                                  assume_4uniform=True) == ub[a, b, c]
    with pytest.raises(cf.HypothesisError):
        cf.fourdiff_tables(random_function(make_field(4), 12), "lbct", (1, 2, 3))


# ---------------------------------------------------------------------
# gold closed forms
# ---------------------------------------------------------------------

@pytest.mark.parametrize("n,s", [(4, 1), (4, 2), (5, 2), (6, 1), (6, 2), (6, 3)])
def test_gold_closed_forms_full(n, s):
    ctx = make_field(n)
    f = gold_function(ctx, s)
    assert np.array_equal(cf.gold_ebct_full(ctx, s), tables.ebct_full(f))
    assert np.array_equal(cf.gold_lbct_full(ctx, s), tables.lbct_full(f))
    assert np.array_equal(cf.gold_ubct_full(ctx, s), tables.ubct_full(f))


def test_gold_scalar_consistency(ctx6):
    s = 2
    geb = cf.gold_ebct_full(ctx6, s)
    glb = cf.gold_lbct_full(ctx6, s)
    gub = cf.gold_ubct_full(ctx6, s)
    rng = np.random.default_rng(3)
    for _ in range(500):
        a, b, c, d = (int(v) for v in rng.integers(0, 64, 4))
        assert cf.gold_ebct(ctx6, s, a, b, c, d) == geb[a, b, c, d]
        assert cf.gold_lbct(ctx6, s, a, b, c) == glb[a, b, c]
        assert cf.gold_ubct(ctx6, s, a, b, c) == gub[a, b, c]


def test_gold_apn_degeneration(ctx5):
    # gcd(s, n) = 1 collapses the subfield-unit rows to the APN case list
    f = gold_function(ctx5, 1)
    for kind in ("lbct", "ubct"):
        for a in range(32):
            for b in range(32):
                for c in range(0, 32, 3):
                    want = cf.apn_tables(f, kind, (a, b, c))
                    got = cf.gold_lbct(ctx5, 1, a, b, c) if kind == "lbct" \
                        else cf.gold_ubct(ctx5, 1, a, b, c)
                    assert got == want


def test_gold_lbct_c_sum_is_fbct(ctx6):
    # summing the LBCT closed form over c reproduces the FBCT closed form
    s = 2
    glb = cf.gold_lbct_full(ctx6, s)
    sums = glb.sum(axis=2)
    for a in range(64):
        for b in range(64):
            assert sums[a, b] == cf.gold_fbct(ctx6, s, a, b)


def test_gold_extended_parameters_sampled():
    # larger subfields (t = 4) and larger fields than the full sweeps cover
    cases = [(8, 4), (12, 4), (12, 3), (10, 5)]
    for n, s in cases:
        ctx = make_field(n)
        f = gold_function(ctx, s)
        rng = np.random.default_rng(n * 100 + s)
        q = ctx.order
        for _ in range(400):
            a, b, c, d = (int(v) for v in rng.integers(0, q, 4))
            assert cf.gold_ebct(ctx, s, a, b, c, d) == \
                tables.ebct_entry(f, a, b, c, d), (n, s, a, b, c, d)
            assert cf.gold_lbct(ctx, s, a, b, c) == \
                tables.lbct_entry(f, a, b, c), (n, s, a, b, c)
            assert cf.gold_ubct(ctx, s, a, b, c) == \
                tables.ubct_entry(f, a, b, c), (n, s, a, b, c)
        # structured: subfield-line tuples that hit the 2^t rows
        units = [u for u in ctx.subfield_elements(math.gcd(s, n)) if u not in (0, 1)]
        p2 = ctx.pow_all((1 << s) + 1)
        for _ in range(200):
            c, d = (int(v) for v in rng.integers(1, q, 2))
            for u in units[:3]:
                a = ctx.mul(u, c)
                b = ctx.mul(u ^ ctx.mul(u, u), int(p2[c])) ^ ctx.mul(u, d)
                assert cf.gold_ebct(ctx, s, a, b, c, d) == \
                    tables.ebct_entry(f, a, b, c, d), (n, s, a, b, c, d)


def test_gold_dbct_full_n6_s4():
    ctx = make_field(6)
    f = gold_function(ctx, 4)  # gcd(4,6)=2, m=3 odd
    dbct = tables.dbct_full(f)
    for a in range(64):
        for d in range(64):
            assert cf.gold_dbct(ctx, 4, a, d) == dbct[a, d]


def test_gold_dbct_sampled_n10():
    ctx = make_field(10)
    f = gold_function(ctx, 2)
    rng = np.random.default_rng(17)
    for _ in range(60):
        a, d = (int(v) for v in rng.integers(0, 1024, 2))
        assert cf.gold_dbct(ctx, 2, a, d) == tables.dbct_entry(f, a, d)


def test_gold_dbct_requires_odd_m(ctx4):
    with pytest.raises(cf.HypothesisError):
        cf.gold_dbct(ctx4, 2, 1, 1)  # n=4, s=2: m=2 even


def test_gold_dbct_witness(ctx6):
    # table row style check: witness u exists iff the off-diagonal term fires
    got_witness = 0
    for a in range(1, 64, 5):
        for d in range(1, 64, 7):
            u = cf.gold_dbct_off_diagonal_witness(ctx6, 2, a, d)
            base = 16 * cf.gold_n_count(ctx6, 2, a, d)
            want = base + (16 if u is not None else 0)
            assert cf.gold_dbct(ctx6, 2, a, d) == want
            got_witness += u is not None
    assert got_witness > 0


# ---------------------------------------------------------------------
# kasami / bracken / inverse closed forms (spot checks; acceptance
# runs the large sampled sweeps)
# ---------------------------------------------------------------------

def test_kasami_hypothesis_gate():
    with pytest.raises(cf.HypothesisError):
        cf.kasami_tables(make_field(8), 2, "lbct", (1, 2, 3))  # gcd(2,8)=2 but t=4 even
    with pytest.raises(cf.HypothesisError):
        cf.kasami_tables(make_field(6), 2, "lbct", (1, 2, 3))  # t=3 divisible by 3
    with pytest.raises(cf.HypothesisError):
        cf.kasami_tables(make_field(10), 3, "lbct", (1, 2, 3))  # gcd(3,10)=1


def test_kasami_sampled_vs_brute():
    ctx = make_field(10)
    f = kasami_function(ctx, 2)
    rng = np.random.default_rng(5)
    for _ in range(120):
        a, b, c, d = (int(v) for v in rng.integers(0, 1024, 4))
        assert cf.kasami_tables(ctx, 2, "ebct", (a, b, c, d)) == \
            tables.ebct_entry(f, a, b, c, d)
        assert cf.kasami_tables(ctx, 2, "lbct", (a, b, c)) == \
            tables.lbct_entry(f, a, b, c)
        assert cf.kasami_tables(ctx, 2, "ubct", (a, b, c)) == \
            tables.ubct_entry(f, a, b, c)


def test_bracken_hypothesis_gate(ctx6):
    with pytest.raises(cf.HypothesisError):
        cf.bracken_tables(ctx6, 2, "lbct", (1, 2, 3))  # n != 4s


def test_bracken_sampled_vs_brute(ctx8):
    f = bracken_function(ctx8, 2)
    rng = np.random.default_rng(6)
    for _ in range(120):
        a, b, c, d = (int(v) for v in rng.integers(0, 256, 4))
        assert cf.bracken_tables(ctx8, 2, "ebct", (a, b, c, d)) == \
            tables.ebct_entry(f, a, b, c, d)
        assert cf.bracken_tables(ctx8, 2, "lbct", (a, b, c)) == \
            tables.lbct_entry(f, a, b, c)
        assert cf.bracken_tables(ctx8, 2, "ubct", (a, b, c)) == \
            tables.ubct_entry(f, a, b, c)


def test_inverse_closed_forms_n4(ctx4):
    f = inverse_function(ctx4)
    eb = tables.ebct_full(f)
    for a in range(16):
        for b in range(16):
            for c in range(16):
                assert cf.inverse_tables(ctx4, "lbct", (a, b, c)) == \
                    tables.lbct_entry(f, a, b, c)
                assert cf.inverse_tables(ctx4, "ubct", (a, b, c)) == \
                    tables.ubct_entry(f, a, b, c)
                assert cf.inverse_fbct(ctx4, a, b) == tables.fbct_entry(f, a, b)
                for d in range(0, 16, 3):
                    assert cf.inverse_tables(ctx4, "ebct", (a, b, c, d)) == \
                        eb[a, b, c, d]


def test_inverse_lbct_case_values(ctx6):
    # b = 1/c with ac a primitive cube root gives 4; a = b with zero trace gives 2
    omega = next(x for x in range(2, 64) if cf._cube_root_cond(ctx6, x))
    for c in range(1, 64):
        b = ctx6.inv(c)
        a = ctx6.mul(omega, ctx6.inv(c))
        assert cf.inverse_tables(ctx6, "lbct", (a, b, c)) == 4
    f = inverse_function(ctx6)
    hits = 0
    for b in range(1, 64):
        for c in range(1, 64):
            if b != ctx6.inv(c) and ctx6.abs_trace(ctx6.inv(ctx6.mul(b, c))) == 0:
                assert cf.inverse_tables(ctx6, "lbct", (b, b, c)) == 2
                hits += 1
    assert hits > 0


def test_inverse_odd_n_routes_to_apn(ctx5):
    with pytest.raises(cf.HypothesisError):
        cf.inverse_tables(ctx5, "lbct", (1, 2, 3))
    f = inverse_function(ctx5)
    lb = tables.lbct_full(f)
    for a in range(32):
        for b in range(0, 32, 3):
            for c in range(0, 32, 5):
                assert cf.apn_tables(f, "lbct", (a, b, c)) == lb[a, b, c]


def test_closed_entry_dispatch(ctx6):
    f = gold_function(ctx6, 2)
    assert cf.closed_entry(f, "lbct", (1, 1, 1)) == tables.lbct_entry(f, 1, 1, 1)
    assert cf.closed_entry(f, "dbct", (0, 5)) == 4096
    g = random_function(make_field(4), 2)
    assert cf.closed_entry(g, "ubct", (1, 2, 3)) == tables.ubct_entry(g, 1, 2, 3)
    with pytest.raises(cf.HypothesisError):
        cf.closed_entry(g, "bct", (1, 2))
    with pytest.raises(cf.HypothesisError):
        cf.closed_entry(g, "fbct", (1, 2))
