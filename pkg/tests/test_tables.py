import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boomtab import tables
from boomtab.field import make_field
from boomtab.vecfun import (gold_function, inverse_function,
                            power_function, random_function,
                            random_permutation)

# ---------------------------------------------------------------------
# entry semantics
# ---------------------------------------------------------------------

def test_ddt_zero_row(ctx5):
    f = gold_function(ctx5, 1)
    assert tables.ddt_entry(f, 0, 0) == 32
    assert all(tables.ddt_entry(f, 0, b) == 0 for b in range(1, 32))
    row = tables.ddt_row(f, 3)
    assert row.sum() == 32
    assert all(v % 2 == 0 for v in row)


def test_gold_n6_s2_is_4_uniform(ctx6):
    f = gold_function(ctx6, 2)
    assert int(tables.ddt_full(f)[1:, :].max()) == 4


def test_x11_ddt_value():
    # worked example: DDT(g, g^11) = 10 for X^11 over GF(2^6)
    ctx = make_field(6)
    f = power_function(ctx, 11)
    g = ctx.generator
    assert tables.ddt_entry(f, g, ctx.pow(g, 11)) == 10


def test_bct_identity_column(ctx6):
    f = gold_function(ctx6, 2)
    for a in range(0, 64, 7):
        assert tables.bct_entry(f, a, 0) == 64  # permutation forces X = Y


def test_fbct_trivial_rows(ctx5):
    f = power_function(ctx5, 11)
    for a in range(32):
        assert tables.fbct_entry(f, a, a) == 32
        assert tables.fbct_entry(f, 0, a) == 32
        assert tables.fbct_entry(f, a, 0) == 32


def test_gold_fbct_subfield_line(ctx6):
    f = gold_function(ctx6, 2)
    sub4 = {x for x in range(64) if ctx6.pow(x, 4) == x and x != 0}
    for a in range(1, 64):
        want = 64 if a in sub4 else 0
        assert tables.fbct_entry(f, a, 1) == want


def test_inverse_n6_boomerang_uniformity(ctx6):
    # frozen from the full 2^(2n) pair-sweep oracle
    f = inverse_function(ctx6)
    bct = tables.bct_full(f)
    assert int(bct[1:, 1:].max()) == 4


def test_gold_fbct_spectrum_values(ctx6):
    f = gold_function(ctx6, 2)
    fb = tables.fbct_full(f)
    mask = np.ones((64, 64), dtype=bool)
    mask[0, :] = mask[:, 0] = False
    np.fill_diagonal(mask, False)
    assert set(int(v) for v in np.unique(fb[mask])) <= {0, 64}


def test_dd_generalizes_fbct(ctx4):
    f = random_function(ctx4, 7)
    dd = tables.dd_full(f)
    fb = tables.fbct_full(f)
    assert np.array_equal(dd[:, :, 0], fb)
    for a in range(16):
        for b in range(16):
            assert dd[a, b].sum() == 16


def test_trivial_entries_lemma(ctx5):
    f = power_function(ctx5, 11)  # permutation
    q = 32
    assert tables.ebct_entry(f, 0, 0, 0, 0) == q
    for a in range(1, q):
        assert tables.lbct_entry(f, a, 0, 0) == q
        assert tables.ubct_entry(f, 0, 0, a) == q
        assert tables.ubct_entry(f, 0, a, 3) == 0
        assert tables.lbct_entry(f, a, 5, 0) == 0


def test_dbct_entry_matches_materialized(ctx5):
    f = power_function(ctx5, 11)
    ub = tables.ubct_full(f)
    lb = tables.lbct_full(f)
    full = tables.dbct_full(f, ub, lb)
    for a in range(0, 32, 5):
        for d in range(0, 32, 3):
            assert tables.dbct_entry(f, a, d) == full[a, d]
    assert (full[0, :] == 1024).all() and (full[:, 0] == 1024).all()


def test_entry_dispatch_arity(ctx4):
    f = random_function(ctx4, 1)
    with pytest.raises(ValueError, match="3 indices"):
        tables.entry(f, "ubct", (1, 2))
    with pytest.raises(ValueError, match="unknown table kind"):
        tables.entry(f, "nope", (1, 2))


# ---------------------------------------------------------------------
# cross-engine invariants
# ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5])
def test_inverse_based_engines_agree_full(n):
    ctx = make_field(n)
    q = ctx.order
    for seed in range(2):
        f = random_permutation(ctx, seed + 10 * n)
        eb = tables.ebct_full(f)
        lb = tables.lbct_full(f)
        ub = tables.ubct_full(f)
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    assert ub[a, b, c] == tables.ubct_entry_invbased(f, a, b, c)
                    assert lb[a, b, c] == tables.lbct_entry_invbased(f, a, b, c)
        rng = np.random.default_rng(seed)
        for _ in range(500):
            a, b, c, d = (int(v) for v in rng.integers(0, q, 4))
            assert eb[a, b, c, d] == tables.ebct_entry_invbased(f, a, b, c, d)


def test_inverse_based_engines_agree_sampled_n8(ctx8):
    f = random_permutation(ctx8, 99)
    rng = np.random.default_rng(0)
    for _ in range(100_000):
        a, b, c, d = (int(v) for v in rng.integers(0, 256, 4))
        assert tables.ubct_entry(f, a, b, c) == \
            tables.ubct_entry_invbased(f, a, b, c)
        assert tables.lbct_entry(f, a, b, c) == \
            tables.lbct_entry_invbased(f, a, b, c)
        assert tables.ebct_entry(f, a, b, c, d) == \
            tables.ebct_entry_invbased(f, a, b, c, d)


def test_invbased_requires_permutation(ctx4):
    f = random_function(ctx4, 3)
    assert not f.is_permutation
    with pytest.raises(ValueError):
        tables.ubct_entry_invbased(f, 1, 2, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10 ** 9))
def test_ebct_squared_bound_property(n, seed):
    # (EBCT(a,b,c,d))^2 <= LBCT(a,c,d) * UBCT(c,d,b) for every tuple
    ctx = make_field(n)
    f = random_function(ctx, seed % 5000)
    rng = np.random.default_rng(seed)
    for _ in range(40):
        a, b, c, d = (int(v) for v in rng.integers(0, ctx.order, 4))
        lhs = tables.ebct_entry(f, a, b, c, d) ** 2
        rhs = tables.lbct_entry(f, a, c, d) * tables.ubct_entry(f, c, d, b)
        assert lhs <= rhs


def test_pair_counting_variant(ctx4):
    # pair count >= distinct-X count, equality at permutation-friendly spots
    f = random_function(ctx4, 5)
    for a in range(16):
        for b in range(16):
            for c in range(16):
                assert tables.ubct_entry(f, a, b, c, pair_counting=True) >= \
                    tables.ubct_entry(f, a, b, c)


# ---------------------------------------------------------------------
# spectrum and budgets
# ---------------------------------------------------------------------

def test_spectrum_full_counts_and_uniformities(ctx6):
    f = gold_function(ctx6, 2)
    spec = tables.spectrum(f, "ddt", domain_filter="nonzero")
    assert sum(spec.histogram.values()) == 63 * 64
    assert spec.max_nontrivial == 4  # differential uniformity
    bct = tables.spectrum(f, "bct", domain_filter="nonzero")
    assert bct.max_nontrivial == int(tables.bct_full(f)[1:, 1:].max())
    spec_all = tables.spectrum(f, "ddt", domain_filter="all")
    assert sum(spec_all.histogram.values()) == 64 * 64
    assert spec_all.max_nontrivial == 4


def test_spectrum_ddt_row_partition(ctx5):
    f = power_function(ctx5, 11)
    full = tables.ddt_full(f)
    assert (full.sum(axis=1) == 32).all()


def test_spectrum_budget_refusal():
    ctx = make_field(8)
    f = inverse_function(ctx)
    with pytest.raises(tables.BudgetError, match="sampling"):
        tables.spectrum(f, "ebct")
    try:
        tables.spectrum(f, "ebct")
    except tables.BudgetError as e:
        assert e.estimated_ops == 1 << 40


def test_spectrum_sampled_deterministic(ctx8):
    f = inverse_function(ctx8)
    s1 = tables.spectrum(f, "ebct", sample=300, seed=11)
    s2 = tables.spectrum(f, "ebct", sample=300, seed=11)
    assert s1.histogram == s2.histogram
    assert s1.tuples_swept == 300
    s3 = tables.spectrum(f, "ebct", sample=300, seed=12)
    assert s1.histogram != s3.histogram or s1 is not s3


def test_spectrum_ccz_example_counts(ctx5):
    f = power_function(ctx5, 9)
    spec = tables.spectrum(f, "ubct", domain_filter="all")
    assert spec.count(2) == 992


def test_threaded_tables_bit_identical(ctx6, monkeypatch):
    f = gold_function(ctx6, 2)
    serial_u = tables.ubct_full(f, threads=1)
    serial_e = tables.ebct_full(f, threads=1)
    assert np.array_equal(serial_u, tables.ubct_full(f, threads=4))
    assert np.array_equal(serial_e, tables.ebct_full(f, threads=3))
    monkeypatch.setenv("BOOMTAB_THREADS", "2")
    assert np.array_equal(serial_u, tables.ubct_full(f))


# ---------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------

def test_csv_export_format(tmp_path, ctx3):
    f = power_function(ctx3, 5)
    table = tables.ddt_full(f)
    path = tmp_path / "ddt.csv"
    tables.export_table_csv(path, "ddt", table)
    lines = path.read_text().splitlines()
    assert lines[0] == "a,b,value"
    assert lines[1] == "0,0,8"
    assert len(lines) == 1 + 64


def test_json_export_format(tmp_path, ctx3):
    f = power_function(ctx3, 5)
    spec = tables.spectrum(f, "ubct", domain_filter="all")
    path = tmp_path / "spec.json"
    tables.export_spectrum_json(path, f, spec)
    doc = json.loads(path.read_text())
    assert doc["kind"] == "ubct"
    assert doc["n"] == 3
    assert doc["modulus"] == "b"
    assert doc["indices_order"] == ["a", "b", "c"]
    assert doc["histogram"]["2"] == 56
    tpath = tmp_path / "tab.json"
    tables.export_table_json(tpath, f, "ddt", tables.ddt_full(f))
    tdoc = json.loads(tpath.read_text())
    assert tdoc["entries"][0][0] == 8


def test_spectrum_csv(tmp_path, ctx3):
    f = power_function(ctx3, 5)
    spec = tables.spectrum(f, "ddt", domain_filter="all")
    path = tmp_path / "s.csv"
    tables.export_spectrum_csv(path, spec)
    lines = path.read_text().splitlines()
    assert lines[0] == "value,count"
    assert all(len(ln.split(",")) == 2 for ln in lines[1:])
