import math

import numpy as np
import pytest

from boomtab.field import make_field
from boomtab.tables import ddt_full
from boomtab.vecfun import (VecFun, VecFunError, bracken_function, from_family,
                            gold_function, inverse_function,
                            kasami_function, polynomial_function,
                            power_function, read_lut_file, write_lut_file)


def test_gold_apn_n5(ctx5):
    f = gold_function(ctx5, 1)
    assert f.is_permutation
    assert int(ddt_full(f)[1:, :].max()) == 2  # APN


def test_inverse_convention(ctx6):
    f = inverse_function(ctx6)
    assert f.is_permutation
    assert f(0) == 0
    for x in ctx6.nonzero_elements():
        assert f(x) == ctx6.inv(x)


def test_x5_plus_x_non_permutation(ctx3):
    g = polynomial_function(ctx3, [0, 1, 0, 0, 0, 1])
    assert not g.is_permutation
    assert len(g.image()) < 8


def test_permutation_conditions_named_families():
    # Gold: permutation iff m = n/gcd(s,n) odd; inverse: always;
    # Bracken (n=4s): permutation iff s odd; Kasami at gcd=2, t odd: permutation
    for n in range(3, 13):
        ctx = make_field(n)
        assert inverse_function(ctx).is_permutation
        for s in range(1, n):
            m = n // math.gcd(s, n)
            assert gold_function(ctx, s).is_permutation == (m % 2 == 1), (n, s)
    for n, s in ((8, 2), (12, 3)):
        ctx = make_field(n)
        assert bracken_function(ctx, s).is_permutation == (s % 2 == 1)
    ctx10 = make_field(10)
    assert kasami_function(ctx10, 2).is_permutation
    assert kasami_function(ctx10, 6).is_permutation


def test_derivative_and_preimage(ctx5):
    f = gold_function(ctx5, 1)
    for x in ctx5.elements():
        assert f.derivative(x, 0) == 0
    # permutation: preimage of any shifted image is the whole field
    for c in (0, 1, 17):
        assert f.preimage_size_of_shifted_image(c) == 32
    g = polynomial_function(make_field(3), [0, 1, 0, 0, 0, 1])
    assert g.preimage_size(g.image()) == 8
    assert g.preimage_size([t for t in range(8) if t not in g.image()]) == 0


def test_compose_inverse(ctx5):
    iden = VecFun(ctx5, np.arange(32, dtype=np.uint32))
    assert np.array_equal(iden.compose_inverse().lut, iden.lut)
    f = gold_function(ctx5, 1)
    fi = f.compose_inverse()
    assert np.array_equal(fi.compose_inverse().lut, f.lut)
    # gold exponent inverse: X^(2^s+1) inverse is power (2^s+1)^{-1} mod 2^n-1
    d = pow(3, -1, 31)
    assert np.array_equal(fi.lut, power_function(ctx5, d).lut)
    g = polynomial_function(make_field(3), [0, 1, 0, 0, 0, 1])
    with pytest.raises(VecFunError):
        g.compose_inverse()


def test_family_specs(ctx5):
    assert np.array_equal(from_family(ctx5, "gold:3").lut,
                          power_function(ctx5, 9).lut)
    assert np.array_equal(from_family(ctx5, "power:9").lut, ctx5.pow_all(9))
    assert from_family(ctx5, "inverse").family == "inverse"
    ccz = from_family(ctx5, "gold-ccz5")
    assert not np.array_equal(ccz.lut, power_function(ctx5, 9).lut)
    with pytest.raises(VecFunError):
        from_family(ctx5, "nonsense:1")
    with pytest.raises(VecFunError):
        bracken_function(ctx5, 2)  # needs n = 4s


def test_polynomial_horner(ctx4):
    # x^3 + g*x + 1 evaluated by Horner equals direct evaluation
    g = ctx4.generator
    f = polynomial_function(ctx4, [1, g, 0, 1])
    for x in ctx4.elements():
        want = ctx4.pow(x, 3) ^ ctx4.mul(g, x) ^ 1
        assert f(x) == want


def test_lut_roundtrip(tmp_path, ctx6):
    f = from_family(ctx6, "kasami:2") if ctx6.n == 10 else gold_function(ctx6, 2)
    path = tmp_path / "box.lut"
    write_lut_file(path, f)
    g, ctx = read_lut_file(path)
    assert ctx.n == 6 and ctx.modulus == ctx6.modulus
    assert np.array_equal(g.lut, f.lut)
    text = path.read_text().splitlines()
    assert text[0] == "n=6"
    assert text[1] == f"modulus={ctx6.modulus:x}"


def test_lut_file_errors(tmp_path):
    p = tmp_path / "bad.lut"
    p.write_text("n=3\n0 1 2\n")
    with pytest.raises(VecFunError, match="holds 3 values"):
        read_lut_file(p)
    p.write_text("nope\n")
    with pytest.raises(VecFunError):
        read_lut_file(p)


def test_lut_value_range_checked(ctx3):
    with pytest.raises(VecFunError):
        VecFun(ctx3, [9] * 8)
    with pytest.raises(VecFunError):
        VecFun(ctx3, [0] * 7)
