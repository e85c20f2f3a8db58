"""Mod-v covering-array families, their existence inequalities, and accelerated verification."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .coverage import CoverageReport, verify_ca
from .errors import BadInput, BadModulus, NotTMinusOneSet
from .finite_field import FieldTower, prime_power, rank_over_subfield
from .trace_arrays import ModVArray, build_mod_v_array

SAMPLE_CAP = 1000
SAMPLE_SEED = 20240101


@dataclass(frozen=True)
class ConditionReport:
    q: int
    t: int
    v: int
    simple_ok: bool
    sharp_ok: bool
    corollary_ok: bool | None  # None when no closed form exists for this t


def _ge_sqrt_form(lhs_coef: int, rhs_sq: int) -> bool:
    """lhs_coef >= sqrt(rhs_sq) for integers, rhs_sq >= 0."""
    return lhs_coef >= 0 and lhs_coef * lhs_coef >= rhs_sq


def existence_conditions(q: int, t: int, v: int) -> ConditionReport:
    """Evaluate the three sufficient conditions for M_v(alpha, C) to be a CA of strength t.

    Terms with q**(t/2) are compared after squaring, so every test is exact.
    """
    if prime_power(q) is None:
        raise BadInput(f"{q} is not a prime power")
    if t < 3:
        raise BadInput("t must be at least 3")
    if v < 2 or (q - 1) % v:
        raise BadModulus(f"v={v} must be at least 2 and divide q-1={q - 1}")

    # q^{t/2-2}(q-tv) >= v^{t-1}  <=>  q^{t/2}(q-tv) >= v^{t-1} q^2
    gap = q - t * v
    simple = gap >= 0 and q**t * gap * gap >= (v ** (t - 1) * q * q) ** 2

    # v q^{t-1}(q-tv) >= q^{t/2}(q-1)K  with K = (v-1)^t + (-1)^t (v-1)
    K = (v - 1) ** t + (-1) ** t * (v - 1)
    lhs = v * q ** (t - 1) * gap
    sharp = _ge_sqrt_form(lhs, q**t * ((q - 1) * K) ** 2)

    if t == 3:
        corollary = q >= v**4 + 6 * v**3 + 9 * v**2
    elif t == 4:
        corollary = q >= v**3 + 4 * v
    else:
        corollary = None
    return ConditionReport(q, t, v, simple, sharp, corollary)


def smallest_admissible_q(t: int, v: int, flag: str = "sharp_ok", limit: int = 10**4) -> int | None:
    """Smallest prime power q with v | q-1 for which the chosen condition holds."""
    for q in range(v + 1, limit):
        if prime_power(q) and (q - 1) % v == 0 and getattr(existence_conditions(q, t, v), flag):
            return q
    return None


# (k, t-1)-sets and their dependent t-subsets -----------------------------

def is_tminus1_set(tower: FieldTower, C: Sequence[int], t: int | None = None) -> bool:
    """Every t-1 of the points alpha**c are independent over F_q."""
    t = tower.t if t is None else t
    s = t - 1
    if s < 1 or len(C) < s:
        return False
    if s == 1:
        return True
    if s == 2:
        return len({c % tower.w for c in C}) == len(C)
    return all(rank_over_subfield(tower, S) == s for S in combinations(C, s))


def _require_tminus1(tower: FieldTower, C: Sequence[int], t: int) -> None:
    if not is_tminus1_set(tower, C, t):
        raise NotTMinusOneSet(f"columns are not a ({len(C)}, {t - 1})-set")


def dependent_tsubsets_scan(tower: FieldTower, C: Sequence[int], t: int) -> Iterator[tuple[int, ...]]:
    """Rank scan over all t-subsets; the reference enumeration."""
    C = [int(c) for c in C]
    _require_tminus1(tower, C, t)
    for S in combinations(C, t):
        if rank_over_subfield(tower, S) < t:
            yield S


def _line_walk(tower: FieldTower, C: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Collinear triples of C, grouped by the line through each pair."""
    w, F = tower.w, tower.top
    exp, log = tower.exp_table, tower.log_table
    where = {c % w: c for c in C}
    pos = {c: i for i, c in enumerate(C)}
    seen = set()
    for a, b in combinations(C, 2):
        if (a, b) in seen:
            continue
        xa, xb = int(exp[a % (tower.Q - 1)]), int(exp[b % (tower.Q - 1)])
        points = {a % w}
        for mu in range(tower.q):
            points.add(int(log[F.add(F.mul(mu, xa), xb)]) % w)
        on_line = sorted((where[p] for p in points if p in where), key=pos.__getitem__)
        seen.update(combinations(on_line, 2))
        yield from combinations(on_line, 3)


def dependent_tsubsets(tower: FieldTower, C: Sequence[int], t: int | None = None) -> Iterator[tuple[int, ...]]:
    """t-subsets of C (as column values, in C order) whose points span only a (t-1)-space."""
    t = tower.t if t is None else t
    C = [int(c) for c in C]
    _require_tminus1(tower, C, t)
    if t == 2:
        return iter(())
    if t == 3:
        return _line_walk(tower, C)
    return dependent_tsubsets_scan(tower, C, t)


# families and verification -------------------------------------------------

def family_columns(tower: FieldTower, family) -> list[int]:
    q, t = tower.q, tower.t
    if family == "t3_full":
        if t != 3:
            raise BadInput("t3_full needs t = 3")
        return list(range(q * q + q + 1))
    if family == "t4_ovoid":
        if t != 4:
            raise BadInput("t4_ovoid needs t = 4")
        return [j * (q + 1) for j in range(q * q + 1)]
    if isinstance(family, str):
        raise BadInput(f"unknown family {family!r}")
    return [int(c) for c in family]


def construct_family(tower: FieldTower, v: int, family="t3_full") -> ModVArray:
    """M_v(alpha, C) for a named family or an explicit column list C."""
    if v < 2 or (tower.q - 1) % v:
        raise BadModulus(f"v={v} must be at least 2 and divide q-1={tower.q - 1}")
    C = family_columns(tower, family)
    _require_tminus1(tower, C, tower.t)
    return build_mod_v_array(tower, 1, C, v)


def verify_modv(array: ModVArray, t: int, mode: str = "full",
                seed: int = SAMPLE_SEED) -> CoverageReport:
    """Covering check of a mod-v array.

    ``dependent_only`` checks the dependent t-subsets exhaustively and a random
    sample of independent ones (min(1000, 1%)).  If the columns are not a
    (k, t-1)-set there is no such split and the full check runs instead.
    """
    if mode == "full":
        return verify_ca(array, t)
    if mode != "dependent_only":
        raise BadInput(f"mode must be 'full' or 'dependent_only', not {mode!r}")
    tower = array.tower
    if tower is None:
        raise BadInput("dependent_only mode needs an array built from a field tower")
    C = list(array.columns)
    if len(set(C)) != len(C) or not is_tminus1_set(tower, C, t):
        return verify_ca(array, t)
    pos = {c: i for i, c in enumerate(C)}
    dep = {tuple(sorted(pos[c] for c in S)) for S in dependent_tsubsets(tower, C, t)}
    report = verify_ca(array, t, subsets=sorted(dep)) if dep else CoverageReport(t, 1, "CA", True, 0)

    n_indep = comb(len(C), t) - len(dep)
    want = min(SAMPLE_CAP, n_indep // 100)
    rng = np.random.default_rng(seed)
    sample = set()
    while len(sample) < want:
        S = tuple(sorted(rng.choice(len(C), size=t, replace=False).tolist()))
        if S not in dep:
            sample.add(S)
    if sample:
        extra = verify_ca(array, t, subsets=sorted(sample))
        report.failures.extend(extra.failures)
        report.subsets_checked += extra.subsets_checked
        report.verdict = report.verdict and extra.verdict
    return report
