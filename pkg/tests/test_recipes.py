import io
import time

import numpy as np
import pytest

from mseqca.arrays import dumps_array, read_array, write_array
from mseqca.coverage import verify_ca
from mseqca.errors import BadInput, MalformedValue, MissingKey, PostVerificationFailed, UnknownKey
from mseqca.finite_field import GF, find_primitive_poly
from mseqca.recipes import (
    SYMBOLIC_BASE_POLY,
    SYMBOLIC_EXT_POLY,
    build_from_recipe,
    builtin_recipes,
    check_expect,
    construct_from_recipe,
    encode_poly_text,
    lookup_recipe,
    parse_recipe,
    render_recipe,
    with_expect,
)

CA511_TEXT = """
# CA(511; 4, 17, 4)
name = ca511
p = 2
e = 2
t = 4
base_poly = 1, 1, 1
ext_poly = 2, 0, 2, 3, 1
exps = 1, 31
columns = arith 0 5 17
expect.N = 511
expect.k = 17
expect.v = 4
expect.t = 4
"""

SMALL = ["ca511", "ca1249", "ca1873", "ca485", "ca161", "raoham:2:3", "raoham:3:3", "raoham:3:4",
         "raoham:4:3", "ovoid:3", "ovoid:4", "ovoid:5", "raaphorst:2", "raaphorst:3", "raaphorst:4",
         "raaphorst:5"]


def test_parse_ca511():
    r = parse_recipe(CA511_TEXT)
    assert r.exps == (1, 31)
    assert r.columns == tuple(5 * i for i in range(17))
    assert r.arith == (0, 5, 17)
    assert r.q == 4 and r.zero_row and r.v is None
    assert r.expect.N == 511 and r.expect.kind == "CA"
    assert r == builtin_recipes()["ca511"]


def test_parse_errors():
    with pytest.raises(MissingKey):
        parse_recipe(CA511_TEXT.replace("\nt = 4\n", "\n"))
    with pytest.raises(UnknownKey):
        parse_recipe(CA511_TEXT + "colour = red\n")
    with pytest.raises(UnknownKey):
        parse_recipe(CA511_TEXT + "expect.colour = red\n")
    with pytest.raises(MalformedValue):
        parse_recipe(CA511_TEXT.replace("exps = 1, 31", "exps = 1, x"))
    with pytest.raises(MalformedValue):
        parse_recipe(CA511_TEXT + "p = 3\n")
    with pytest.raises(MalformedValue):
        parse_recipe(CA511_TEXT.replace("arith 0 5 17", "arith 0 5"))
    with pytest.raises(MalformedValue):
        parse_recipe(CA511_TEXT + "no equals sign\n")
    with pytest.raises(MalformedValue):
        parse_recipe(CA511_TEXT.replace("columns = arith 0 5 17", "columns = 5-3"))


def test_ranges_expand_inclusively():
    r = parse_recipe(CA511_TEXT.replace("columns = arith 0 5 17", "columns = 0-3, 7, 9-10"))
    assert r.columns == (0, 1, 2, 3, 7, 9, 10) and r.arith is None


@pytest.mark.parametrize("name", sorted(builtin_recipes()))
def test_render_round_trip(name):
    r = builtin_recipes()[name]
    text = render_recipe(r)
    assert parse_recipe(text) == r
    assert text.isascii() and "\r" not in text


def test_encoder_examples():
    assert encode_poly_text("x^4 + (β + 1)x^3 + β x^2 + β", 2, 2) == [2, 0, 2, 3, 1]
    assert encode_poly_text("x^5 + 2x^4 + 1", 3) == [1, 0, 0, 0, 2, 1]
    assert encode_poly_text("x^2 - x - 1", 5) == [4, 4, 1]
    with pytest.raises(MalformedValue):
        encode_poly_text("x^2 + b^2", 2, 2)


@pytest.mark.parametrize("name", sorted(SYMBOLIC_EXT_POLY))
def test_builtin_polynomials_reencode(name):
    r = builtin_recipes()[name]
    assert tuple(encode_poly_text(SYMBOLIC_EXT_POLY[name], r.p, r.e)) == r.ext_poly
    if name in SYMBOLIC_BASE_POLY:
        assert tuple(encode_poly_text(SYMBOLIC_BASE_POLY[name], r.p)) == r.base_poly


def test_ca161_uses_the_default_primitive_polynomial():
    r = builtin_recipes()["ca161"]
    assert find_primitive_poly(GF.prime(3), 4).coeffs == r.ext_poly


def test_builtin_contents():
    b = builtin_recipes()
    assert b["ca1249"].exps == (1, 7)
    assert b["ca1249"].columns == (0, 6, 9, 15, 39, 45, 48, 54, 78, 84, 87, 93, 117, 123, 126, 132)
    assert b["ca485"].columns == tuple(11 * i for i in range(11)) and b["ca485"].t == 5
    r = lookup_recipe("raaphorst:7")
    assert r.exps == (1, 7**3 - 2) and r.columns == tuple(range(57))
    with pytest.raises(KeyError):
        lookup_recipe("nothing:1")


@pytest.mark.parametrize("name", SMALL)
def test_builtin_verifies(name):
    r = lookup_recipe(name)
    start = time.perf_counter()
    array, report = construct_from_recipe(r)
    assert report.verdict
    assert time.perf_counter() - start < 60
    assert (array.rows, array.cols, array.v) == (r.expect.N, r.expect.k, r.expect.v)


@pytest.mark.parametrize("name", ["ca511", "ca1249"])
def test_not_strength_five(name):
    r = builtin_recipes()[name]
    array = build_from_recipe(r)
    assert not verify_ca(array, 5, max_failures=1).verdict


def test_expect_mismatch_raises():
    r = builtin_recipes()["raaphorst:2"]
    array = build_from_recipe(r)
    with pytest.raises(PostVerificationFailed):
        check_expect(with_expect(r, N=14), array)
    with pytest.raises(PostVerificationFailed):
        check_expect(with_expect(r, t=4), array)
    with pytest.raises(PostVerificationFailed):
        check_expect(with_expect(lookup_recipe("raoham:3:3"), index=2), build_from_recipe(lookup_recipe("raoham:3:3")))


def test_modv_recipe():
    text = "p = 7\ne = 1\nt = 3\nexps = 1\ncolumns = 0-56\nv = 2\nexpect.N = 114\nexpect.v = 2\nexpect.t = 3\n"
    array, report = construct_from_recipe(parse_recipe(text))
    assert array.data.shape == (114, 57) and report.verdict


@pytest.mark.parametrize("name", ["ca511", "raoham:3:4", "ovoid:4"])
def test_array_file_round_trip(name):
    array = build_from_recipe(lookup_recipe(name))
    text = dumps_array(array)
    assert text.startswith(f"ca {array.rows} {array.cols} {array.v}\n")
    back = read_array(text)
    assert back == array
    buf = io.StringIO()
    write_array(back, buf)
    assert buf.getvalue() == text


def test_array_file_errors():
    with pytest.raises(BadInput):
        read_array("")
    with pytest.raises(BadInput):
        read_array("ca 2 2 2\n0 1\n")
    with pytest.raises(BadInput):
        read_array("ca 1 2 2\n0 2\n")
    with pytest.raises(BadInput):
        read_array("ca 1 2 2\n0 1 1\n")
    with pytest.raises(BadInput):
        read_array("xx 1 2 2\n0 1\n")


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ca16381", "ca19681"])
def test_large_builtins(name):
    array, report = construct_from_recipe(builtin_recipes()[name])
    assert report.verdict
