"""Maximal sequences Tr(alpha**(a*i)) and their discrete-log reductions mod v."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import BadModulus, NonPrimitiveExponent
from .finite_field import FieldTower, is_primitive_exponent


@dataclass(frozen=True, eq=False)
class MaximalSequence:
    tower: FieldTower = field(repr=False)
    alpha_exp: int
    values: np.ndarray = field(repr=False)

    @property
    def period(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return int(self.values[i % len(self.values)])

    def __str__(self) -> str:
        return "".join(map(str, self.values.tolist()))


@dataclass(frozen=True, eq=False)
class SeqModV:
    v: int
    values: np.ndarray = field(repr=False)
    zero_mask: np.ndarray = field(repr=False)
    source: MaximalSequence = field(repr=False)

    @property
    def period(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return int(self.values[i % len(self.values)])


def max_seq(tower: FieldTower, a: int = 1) -> MaximalSequence:
    if not is_primitive_exponent(tower, a):
        raise NonPrimitiveExponent(f"alpha^{a} is not primitive in F_{tower.Q}")
    n = tower.Q - 1
    idx = (np.arange(n, dtype=np.int64) * a) % n
    return MaximalSequence(tower, a, tower.trace_table[idx])


def seq_mod_v(seq: MaximalSequence, v: int) -> SeqModV:
    """Reduce log_omega of each nonzero term mod v; zero terms stay 0 and are flagged."""
    tower = seq.tower
    if v < 2 or (tower.q - 1) % v:
        raise BadModulus(f"v={v} must be at least 2 and divide q-1={tower.q - 1}")
    length = v * tower.w
    tr = seq.values[:length]
    logs = tower.omega_log[tr]
    zero = tr == 0
    vals = np.where(zero, 0, logs % v)
    return SeqModV(v, vals.astype(np.int64), zero, seq)


@dataclass
class BalanceReport:
    symbol_counts: dict[int, int]
    pair_counts: dict[int, dict[tuple[int, int], int]]
    balance_ok: bool
    pair_ok: dict[int, bool]
    projective_ok: bool
    block_multipliers: list[int]
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.balance_ok and all(self.pair_ok.values()) and self.projective_ok


def balance_profile(seq: MaximalSequence, taus=(1,)) -> BalanceReport:
    """Check the balance, two-tuple balance and projective properties of ``seq``.

    Failures are reported (first one in ``first_failure``) rather than raised.
    """
    tower = seq.tower
    q, t, w = tower.q, tower.t, tower.w
    vals = seq.values
    n = len(vals)
    failure = None

    counts = Counter(vals.tolist())
    symbol_counts = {s: counts.get(s, 0) for s in range(q)}
    balance_ok = True
    for s in range(q):
        want = q ** (t - 1) - (1 if s == 0 else 0)
        if symbol_counts[s] != want:
            balance_ok = False
            failure = failure or f"symbol {s} occurs {symbol_counts[s]} times, expected {want}"

    pair_counts, pair_ok = {}, {}
    for tau in taus:
        shifted = np.roll(vals, -tau)
        pc = Counter(zip(vals.tolist(), shifted.tolist()))
        table = {(a, b): pc.get((a, b), 0) for a in range(q) for b in range(q)}
        pair_counts[tau] = table
        ok = True
        if tau % w:
            for (a, b), c in table.items():
                want = q ** (t - 2) - (1 if a == b == 0 else 0)
                if c != want:
                    ok = False
                    failure = failure or f"tau={tau}: pair {(a, b)} occurs {c} times, expected {want}"
                    break
        else:
            # s_{i+tau} = c * s_i for the constant c = Tr-scaling alpha**(a*tau)
            c = int(tower.top.exp[(seq.alpha_exp * tau) % n])
            for (a, b), cnt in table.items():
                want = 0
                if b == tower.base.mul(c, a):
                    want = q ** (t - 1) - (1 if a == 0 else 0)
                if cnt != want:
                    ok = False
                    failure = failure or f"tau={tau}: pair {(a, b)} occurs {cnt} times, expected {want}"
                    break
        pair_ok[tau] = ok

    # block k of length w equals omega**(a*k) times block 0
    projective_ok = True
    multipliers = []
    block0 = vals[:w]
    for k in range(q - 1):
        c = int(tower.top.exp[(seq.alpha_exp * k * w) % n])
        multipliers.append(c)
        blk = vals[k * w:(k + 1) * w]
        scaled = [tower.base.mul(c, int(x)) for x in block0]
        if blk.tolist() != scaled:
            projective_ok = False
            failure = failure or f"block {k} is not {c} times block 0"
    return BalanceReport(symbol_counts, pair_counts, balance_ok, pair_ok,
                         projective_ok, multipliers, failure)
