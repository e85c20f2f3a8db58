import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mseqca.errors import LogOfZero, NonPrime, NonPrimitivePolynomial, TableCapExceeded, ZeroInverse
from mseqca.finite_field import (
    GF,
    Polynomial,
    build_tower,
    dlog_omega,
    element_order,
    field_arith,
    find_primitive_poly,
    is_primitive_exponent,
    rank_over_subfield,
    trace,
)

from conftest import cached_tower

SMALL = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2), (5, 3), (7, 2), (8, 2), (9, 2)]


# brute-force helpers independent of the table machinery

def poly_mod_eval_order(p, coeffs):
    """Order of x modulo a monic polynomial over the prime field F_p, by repeated multiplication."""
    d = len(coeffs) - 1
    cur = [0] * d
    cur[0] = 1
    for k in range(1, p**d):
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * coeffs[i]) % p for i, c in enumerate(cur)]
        if cur == [1] + [0] * (d - 1):
            return k
    return None


def test_tower_q4_t2_beta5_is_alpha(t16):
    assert (t16.q, t16.Q, t16.w) == (4, 16, 5)
    assert t16.exp_table[5] == 2


def test_tower_q3_t3(t27):
    assert (t27.Q, t27.w) == (27, 13)


def test_irreducible_but_not_primitive_rejected():
    with pytest.raises(NonPrimitivePolynomial):
        build_tower(3, 1, 2, None, [1, 0, 1])


def test_bad_inputs():
    with pytest.raises(NonPrime):
        build_tower(4, 1, 2)
    with pytest.raises(TableCapExceeded):
        build_tower(2, 1, 20, table_cap=1000)


def test_find_primitive_poly_examples():
    assert find_primitive_poly(GF.prime(2), 2).coeffs == (1, 1, 1)
    assert find_primitive_poly(GF.prime(3), 2).coeffs == (2, 1, 1)
    assert find_primitive_poly(GF.prime(2), 1).coeffs == (1, 1)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_find_primitive_poly_is_smallest(p, d):
    got = find_primitive_poly(GF.prime(p), d).coeffs
    # oracle: monic candidates in ascending (c_0, ..., c_{d-1}) order, order of x by iteration
    first = None
    for tail in itertools.product(range(p), repeat=d):
        coeffs = list(tail) + [1]
        if coeffs[0] and poly_mod_eval_order(p, coeffs) == p**d - 1:
            first = tuple(coeffs)
            break
    assert got == first


def test_f4_arithmetic(t16):
    F4 = t16.base
    assert field_arith(F4, "mul", 2, 3) == 1
    for a in range(4):
        assert field_arith(F4, "add", a, a) == 0
    assert field_arith(t16.top, "pow", 4, 5) == 2
    with pytest.raises(ZeroInverse):
        field_arith(F4, "inv", 0)


def test_traces_of_alpha_beta(t16):
    ab = t16.top.mul(2, 4)
    assert trace(t16, ab) == 2
    assert trace(t16, ab, over="prime") == 1
    assert trace(t16, 0) == 0


def test_dlog_omega(t16, t49):
    assert dlog_omega(t16, 2) == 1
    assert dlog_omega(t16, 1) == 0
    assert int(t49.exp_table[8]) == 3
    assert dlog_omega(t49, 2) == 2
    with pytest.raises(LogOfZero):
        dlog_omega(t16, 0)


def test_rank_examples(t27):
    assert rank_over_subfield(t27, [6, 8, 12]) == 3
    assert rank_over_subfield(t27, [0, 13]) == 1
    assert rank_over_subfield(t27, [0, 1, 2]) == 3


def test_element_order(t27):
    assert is_primitive_exponent(t27, 5)
    assert element_order(t27, 0) == 1
    assert element_order(t27, 2) == 13


@pytest.mark.parametrize("q,t", SMALL)
def test_exp_log_bijection_and_order(q, t):
    T = cached_tower(q, t)
    n = T.Q - 1
    assert sorted(T.exp_table.tolist()) == list(range(1, T.Q))
    assert np.array_equal(T.log_table[T.exp_table], np.arange(n))
    alpha = int(T.exp_table[1])
    # order of alpha by repeated multiplication
    x, k = alpha, 1
    while x != 1:
        x, k = T.top.mul(x, alpha), k + 1
    assert k == n
    omega = int(T.exp_table[T.w % n])
    assert omega < T.q
    x, k = omega, 1
    while x != 1:
        x, k = T.base.mul(x, omega), k + 1
    assert k == T.q - 1


@pytest.mark.parametrize("q,t", SMALL)
def test_trace_table_matches_frobenius_sum(q, t):
    T = cached_tower(q, t)
    F = T.top
    for i in range(T.Q - 1):
        x = int(T.exp_table[i])
        acc, y = 0, x
        for _ in range(t):
            acc = F.add(acc, y)
            y = F.pow(y, q)
        assert acc == T.trace_table[i] < q


@pytest.mark.parametrize("q,t", SMALL)
def test_trace_value_distribution(q, t):
    T = cached_tower(q, t)
    counts = np.bincount(T.trace_table, minlength=q)
    assert counts[0] == q ** (t - 1) - 1
    assert all(c == q ** (t - 1) for c in counts[1:])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_trace_is_linear(qt, data):
    T = cached_tower(*qt)
    a = data.draw(st.integers(0, T.Q - 1))
    b = data.draw(st.integers(0, T.Q - 1))
    c = data.draw(st.integers(0, T.q - 1))
    F, K = T.top, T.base
    lhs = trace(T, F.add(a, F.mul(c, b)))
    assert lhs == K.add(trace(T, a), K.mul(c, trace(T, b)))


@pytest.mark.parametrize("q,t", [(2, 3), (2, 4), (3, 3), (3, 4), (4, 2), (4, 3)])
def test_scalar_multiples_iff_congruent_mod_w(q, t):
    T = cached_tower(q, t)
    n, w = T.Q - 1, T.w
    for i in range(0, n, max(1, n // 12)):
        for j in range(n):
            ratio = T.top.mul(int(T.exp_table[j]), T.top.inv(int(T.exp_table[i])))
            assert (ratio < q) == ((j - i) % w == 0)


def _rank_bruteforce(T, exps):
    """Rank via counting the span: |span| = q**rank."""
    F = T.top
    elems = [int(T.exp_table[e % (T.Q - 1)]) for e in exps]
    span = {0}
    for x in elems:
        span = {F.add(s, F.mul(c, x)) for s in span for c in range(T.q)}
    r = 0
    while T.q**r < len(span):
        r += 1
    return r


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(2, 3), (2, 4), (3, 3), (3, 4), (4, 3), (5, 3)]), st.data())
def test_rank_matches_span_size(qt, data):
    T = cached_tower(*qt)
    exps = data.draw(st.lists(st.integers(0, T.Q - 2), min_size=1, max_size=T.t))
    assert rank_over_subfield(T, exps) == _rank_bruteforce(T, exps)


def test_polynomial_str():
    assert str(Polynomial((2, 0, 1))) == "x^2 + 2"
