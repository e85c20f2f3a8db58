from decimal import Decimal, getcontext
from itertools import combinations

import pytest

from mseqca.coverage import verify_ca
from mseqca.errors import BadInput, BadModulus, NotTMinusOneSet
from mseqca.finite_field import prime_power, rank_over_subfield
from mseqca.modv import (
    construct_family,
    dependent_tsubsets,
    dependent_tsubsets_scan,
    existence_conditions,
    is_tminus1_set,
    smallest_admissible_q,
    verify_modv,
)
from mseqca.trace_arrays import build_mod_v_array

from conftest import cached_tower

getcontext().prec = 80


def decimal_conditions(q, t, v):
    """Unsquared forms evaluated with 80-digit decimals."""
    Q, V = Decimal(q), Decimal(v)
    half = Q.sqrt() ** t
    simple = Q.sqrt() ** (t - 4) * (Q - t * V) >= V ** (t - 1)
    K = Decimal((v - 1) ** t + (-1) ** t * (v - 1))
    sharp = Q**t - 1 - half * (Q - 1) * K / V >= t * V * Q ** (t - 1) - 1
    return simple, sharp


def admissible(limit):
    for q in range(3, limit + 1):
        if prime_power(q):
            for v in range(2, q):
                if (q - 1) % v == 0:
                    yield q, v


@pytest.mark.parametrize("t", [3, 4, 5])
def test_conditions_match_decimal_forms(t):
    for q, v in admissible(128):
        rep = existence_conditions(q, t, v)
        assert (rep.simple_ok, rep.sharp_ok) == decimal_conditions(q, t, v), (q, t, v)


@pytest.mark.parametrize("t", [3, 4])
def test_condition_chain(t):
    for q, v in admissible(64):
        rep = existence_conditions(q, t, v)
        if rep.corollary_ok:
            assert rep.simple_ok, (q, v)
        if rep.simple_ok:
            assert rep.sharp_ok, (q, v)


def test_smallest_admissible():
    assert smallest_admissible_q(3, 2) == 7
    assert smallest_admissible_q(4, 2) == 9
    assert smallest_admissible_q(3, 4) == 61
    assert smallest_admissible_q(3, 2, "simple_ok") == 27
    assert smallest_admissible_q(3, 2, "corollary_ok") == 101


def test_condition_errors():
    with pytest.raises(BadModulus):
        existence_conditions(7, 3, 4)
    with pytest.raises(BadInput):
        existence_conditions(6, 3, 5)
    with pytest.raises(BadInput):
        existence_conditions(7, 2, 2)
    assert existence_conditions(7, 5, 2).corollary_ok is None


def test_family_shapes():
    M = construct_family(cached_tower(7, 3), 2)
    assert M.data.shape == (114, 57)
    M4 = construct_family(cached_tower(5, 4), 2, "t4_ovoid")
    assert M4.data.shape == (312, 26)
    assert set(M4.data.ravel().tolist()) == {0, 1}


def test_custom_family_must_be_tminus1_set():
    T = cached_tower(5, 3)
    with pytest.raises(NotTMinusOneSet):
        construct_family(T, 2, [0, 1, T.w])
    with pytest.raises(BadInput):
        construct_family(T, 2, "t4_ovoid")


def test_dependent_count_q3():
    T = cached_tower(3, 3)
    C = list(range(13))
    fast = sorted(tuple(sorted(S)) for S in dependent_tsubsets(T, C))
    assert len(fast) == 13 * 4 == len(set(fast))
    assert fast == sorted(dependent_tsubsets_scan(T, C, 3))


@pytest.mark.parametrize("q", [4, 5, 7])
def test_line_walk_matches_scan(q):
    T = cached_tower(q, 3)
    C = list(range(T.w))
    fast = sorted(tuple(sorted(S)) for S in dependent_tsubsets(T, C))
    assert fast == sorted(dependent_tsubsets_scan(T, C, 3))
    assert len(fast) == T.w * (q + 1) * q * (q - 1) // 6


def test_dependent_ovoid_q3():
    T = cached_tower(3, 4)
    C = [4 * j for j in range(10)]
    got = sorted(dependent_tsubsets(T, C))
    assert got == [S for S in combinations(C, 4) if rank_over_subfield(T, S) < 4]
    assert list(dependent_tsubsets(cached_tower(5, 2), [0, 1, 2], 2)) == []


def test_is_tminus1():
    T = cached_tower(5, 3)
    assert is_tminus1_set(T, list(range(T.w)))
    assert not is_tminus1_set(T, [0, T.w])


CASES = [(3, 3, 2), (4, 3, 3), (5, 3, 2), (5, 3, 4), (7, 3, 2), (7, 3, 3), (7, 3, 6),
         (3, 4, 2), (4, 4, 3), (5, 4, 2), (5, 4, 4)]


@pytest.mark.parametrize("q,t,v", CASES)
def test_full_and_dependent_modes_agree(q, t, v):
    T = cached_tower(q, t)
    M = construct_family(T, v, "t3_full" if t == 3 else "t4_ovoid")
    assert M.rows == v * T.w
    assert verify_modv(M, t, "full").verdict == verify_modv(M, t, "dependent_only").verdict


@pytest.mark.parametrize("q,t,v,expected", [(7, 3, 2, True), (5, 3, 2, False), (5, 4, 2, True), (3, 4, 2, False)])
def test_known_outcomes(q, t, v, expected):
    T = cached_tower(q, t)
    M = construct_family(T, v, "t3_full" if t == 3 else "t4_ovoid")
    assert verify_modv(M, t).verdict is expected


@pytest.mark.parametrize("q", [4, 5, 7])
@pytest.mark.parametrize("t", [2, 3])
def test_independent_subsets_always_covered(q, t):
    T = cached_tower(q, t)
    C = list(range(T.w))
    for v in range(2, q):
        if (q - 1) % v:
            continue
        M = build_mod_v_array(T, 1, C, v)
        indep = [S for S in combinations(range(len(C)), t) if rank_over_subfield(T, S) == t]
        assert verify_ca(M, t, subsets=indep).verdict


def test_verify_modv_bad_mode():
    M = construct_family(cached_tower(7, 3), 2)
    with pytest.raises(BadInput):
        verify_modv(M, 3, "sampled")
