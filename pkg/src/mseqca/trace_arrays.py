"""Cyclic trace arrays, their mod-v variants, zero structure and the fusion transform."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .arrays import SymbolArray, as_symbol_array
from .errors import (
    AlphabetTooSmall,
    BadInput,
    BadModulus,
    EmptyColumnSet,
    NonPrimitiveExponent,
    NotACoveringArray,
    PostVerificationFailed,
    WrongColumnSet,
)
from .finite_field import FieldTower, is_primitive_exponent
from .sequences import max_seq, seq_mod_v


def column_set(C: Iterable[int], limit: int) -> tuple[int, ...]:
    """Validate a column list; order is kept so callers control column layout."""
    cols = tuple(int(c) for c in C)
    if not cols:
        raise EmptyColumnSet("column set is empty")
    if min(cols) < 0 or max(cols) >= limit:
        raise BadInput(f"columns must lie in [0, {limit - 1}]")
    return cols


@dataclass(eq=False)
class TraceArray(SymbolArray):
    alpha_exps: tuple[int, ...] = ()
    columns: tuple[int, ...] = ()
    zero_row: bool = False


@dataclass(eq=False)
class ModVArray(SymbolArray):
    alpha_exp: int = 1
    columns: tuple[int, ...] = ()
    tower: FieldTower | None = field(default=None, repr=False)


def _trace_block(tower: FieldTower, a: int, cols: Sequence[int]) -> np.ndarray:
    if not is_primitive_exponent(tower, a):
        raise NonPrimitiveExponent(f"alpha^{a} is not primitive in F_{tower.Q}")
    n = tower.Q - 1
    i = np.arange(n, dtype=np.int64)[:, None]
    c = np.asarray(cols, dtype=np.int64)[None, :]
    return tower.trace_table[(a * (i + c)) % n]


def build_concat_array(tower: FieldTower, P: Sequence[int], C: Iterable[int],
                       zero_row: bool = True) -> TraceArray:
    """Stack the blocks Tr(alpha**(m*(i+c_j))) for m in P, optionally followed by a zero row."""
    P = tuple(int(m) for m in P)
    if not P:
        raise BadInput("exponent list P is empty")
    if len(set(P)) != len(P):
        raise BadInput("exponents in P must be distinct")
    cols = column_set(C, tower.Q - 1)
    blocks = [_trace_block(tower, m, cols) for m in P]
    if zero_row:
        blocks.append(np.zeros((1, len(cols)), dtype=np.int64))
    return TraceArray(np.vstack(blocks), tower.q, P, cols, zero_row)


def build_trace_array(tower: FieldTower, a: int, C: Iterable[int],
                      zero_row: bool = False) -> TraceArray:
    return build_concat_array(tower, [a], C, zero_row)


def build_mod_v_array(tower: FieldTower, a: int, C: Iterable[int], v: int) -> ModVArray:
    if v < 2 or (tower.q - 1) % v:
        raise BadModulus(f"v={v} must be at least 2 and divide q-1={tower.q - 1}")
    cols = column_set(C, tower.Q - 1)
    sv = seq_mod_v(max_seq(tower, a), v)
    n = sv.period
    i = np.arange(n, dtype=np.int64)[:, None]
    c = np.asarray(cols, dtype=np.int64)[None, :]
    return ModVArray(sv.values[(i + c) % n], v, a, cols, tower)


@dataclass
class ZeroBlockProfile:
    zero_counts: list[int]
    expected_zeros: int
    blocks: list[frozenset[int]]
    bibd_params: tuple[int, int, int]
    bibd_ok: bool
    difference_set_ok: bool
    translates_ok: bool

    @property
    def ok(self) -> bool:
        return (self.bibd_ok and self.difference_set_ok and self.translates_ok
                and all(z == self.expected_zeros for z in self.zero_counts))


def zero_block_profile(array: TraceArray, tower: FieldTower) -> ZeroBlockProfile:
    """Zero positions of A(alpha, [0, w-1]): BIBD blocks, difference set, translates."""
    w, q, t = tower.w, tower.q, tower.t
    if len(array.alpha_exps) != 1 or array.columns != tuple(range(w)):
        raise WrongColumnSet("zero profile needs a single alpha and columns [0, w-1]")
    data = array.data[: tower.Q - 1]
    H = [frozenset(np.flatnonzero(row == 0).tolist()) for row in data]
    z = (q ** (t - 1) - 1) // (q - 1)
    lam = (q ** (t - 2) - 1) // (q - 1) if t >= 2 else 0
    blocks = sorted(set(H), key=sorted)

    pair_hits = Counter()
    for b in blocks:
        pair_hits.update(combinations(sorted(b), 2))
    bibd_ok = (len(blocks) == w and all(len(b) == z for b in blocks)
               and all(pair_hits.get(pr, 0) == lam for pr in combinations(range(w), 2)))

    h0 = sorted(H[0])
    diffs = Counter((x - y) % w for x in h0 for y in h0 if x != y)
    difference_set_ok = all(diffs.get(d, 0) == lam for d in range(1, w))

    translates_ok = all(H[i] == frozenset((h - i) % w for h in h0) for i in range(len(H)))
    return ZeroBlockProfile([len(h) for h in H], z, blocks, (w, z, lam),
                            bibd_ok, difference_set_ok, translates_ok)


def fusion(array, t: int, v: int | None = None, check_input: bool = True,
           check_output: bool = True) -> SymbolArray:
    """Turn a CA(N; t, k, v) into a CA(N-2; t, k, v-1).

    Row 0 is mapped to the all-(v-1) row by a per-column transposition and
    dropped; the last remaining row r then absorbs symbol v-1 (each v-1 in
    column j becomes r_j, or 0 when r_j itself is v-1) and is dropped too.
    """
    from .coverage import verify_ca

    arr = as_symbol_array(array, v)
    v = arr.v
    if v < 3:
        raise AlphabetTooSmall("fusion needs at least three symbols")
    if arr.rows < 2:
        raise NotACoveringArray("array has fewer than two rows")
    if check_input and not verify_ca(arr, t).verdict:
        raise NotACoveringArray(f"input is not a covering array of strength {t}")
    top = v - 1
    data = arr.data.astype(np.int64)
    row0 = data[0].copy()
    swapped = data.copy()
    swapped[data == row0] = top
    swapped[data == top] = np.broadcast_to(row0, data.shape)[data == top]
    body = swapped[1:]
    r = body[-1]
    repl = np.where(r != top, r, 0)
    body = body[:-1]
    out = np.where(body == top, np.broadcast_to(repl, body.shape), body)
    result = SymbolArray(out, v - 1)
    if check_output and not verify_ca(result, t).verdict:
        raise PostVerificationFailed("fused array failed verification")
    return result
