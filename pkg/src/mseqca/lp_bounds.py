"""Tuple-count (lambda) machinery for mod-v arrays: closed forms, bounds, LP emission, brute counts.

Counts here range over all q**t field elements x, i.e. the Q-1 array rows
x = alpha**i plus the all-zero row from x = 0, unless stated otherwise.
A tuple b is classified by r, its number of zero entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

import numpy as np

from .errors import BadInput, NotTMinusOneSet
from .finite_field import FieldTower, rank_over_subfield


def _check_qv(q: int, v: int) -> None:
    if v < 2 or q < 2 or (q - 1) % v:
        raise BadInput(f"v={v} must be at least 2 and divide q-1={q - 1}")


@dataclass(frozen=True)
class LambdaCoeffs:
    q: int
    v: int
    t: int
    r: int
    c_r: Fraction
    c_pen: Fraction   # c_{r,t-1}
    c_last: Fraction  # c_{r,t}
    d: tuple[Fraction, ...]  # d_{r,k} for k = 0..t-r


def lambda_coeffs(q: int, v: int, t: int, r: int) -> LambdaCoeffs:
    _check_qv(q, v)
    if t < 1 or not 0 <= r <= t:
        raise BadInput(f"need 0 <= r <= t, got r={r}, t={t}")
    iv = Fraction(1, v)
    c_r = iv**t * (q - 1) ** (t - r) * (v + q - 1) ** r
    c_pen = ((-1) ** (t - 1) * q * iv ** (t - 1)
             * Fraction((v - 1) * (q - 1)) ** (r - 1)
             * Fraction(q * v - q + 1) ** (t - r - 1)
             * (t * v * q - t * q - t * v + t + r * v))
    c_last = (-1) ** t * iv**t * (q - 1) ** r * (v - 1) ** r * (v + (q - 1) * (v - 1)) ** (t - r)
    d = tuple(Fraction((-1) ** t * comb(t - r, k) * (v - 1) ** r * (v - 2) ** (t - r - k))
              for k in range(t - r + 1))
    return LambdaCoeffs(q, v, t, r, c_r, c_pen, c_last, d)


def lambda_li(q: int, v: int, s: int, r: int) -> Fraction:
    """Count of a tuple with r zeros on s independent columns, over all q**s field elements."""
    if not 0 <= r <= s:
        raise BadInput(f"need 0 <= r <= s, got r={r}, s={s}")
    return Fraction(1, v) ** s * (q - 1) ** (s - r) * (q + v - 1) ** r


def truncation_bounds(q: int, v: int, t: int, r: int) -> tuple[Fraction, Fraction]:
    """Bounds on lambda_b for b with r zeros on a dependent (t, t-1)-set of columns."""
    if t < 2:
        raise BadInput("t must be at least 2")
    co = lambda_coeffs(q, v, t, r)
    base = co.c_r - co.c_last
    if t % 2 == 0:
        return base, min(base - co.c_pen, Fraction(q**t))
    return base - co.c_pen, base


# brute force ----------------------------------------------------------------

def _symbol_sequence(tower: FieldTower, v: int) -> np.ndarray:
    """sym[i] = log_omega(Tr(alpha**i)) mod v, with 0 where the trace vanishes."""
    _check_qv(tower.q, v)
    tr = tower.trace_table
    return np.where(tr == 0, 0, tower.omega_log[tr] % v).astype(np.int64)


def _columns_checked(tower: FieldTower, C: Sequence[int]) -> list[int]:
    C = [int(c) for c in C]
    s = len(C)
    if s < 1 or s > tower.t:
        raise BadInput(f"need between 1 and {tower.t} columns")
    if s >= 2 and any(rank_over_subfield(tower, [C[j] for j in range(s) if j != i]) != s - 1
                      for i in range(s)):
        raise NotTMinusOneSet(f"columns {C} are not a ({s}, {s - 1})-set")
    return C


def lambda_table(tower: FieldTower, C: Sequence[int], v: int,
                 include_zero_row: bool = False) -> dict[tuple[int, ...], int]:
    """Count of every v-ary tuple over the rows of the mod-v array restricted to C."""
    C = _columns_checked(tower, C)
    sym = _symbol_sequence(tower, v)
    n = tower.Q - 1
    i = np.arange(n, dtype=np.int64)
    code = np.zeros(n, dtype=np.int64)
    for j, c in enumerate(C):
        code += sym[(i + c) % n] * v**j
    counts = np.bincount(code, minlength=v ** len(C))
    if include_zero_row:
        counts[0] += 1
    return {b: int(counts[sum(x * v**j for j, x in enumerate(b))])
            for b in product(range(v), repeat=len(C))}


def brute_lambda(tower: FieldTower, C: Sequence[int], b: Sequence[int], v: int,
                 include_zero_row: bool = False) -> int:
    b = tuple(int(x) for x in b)
    if len(b) != len(C) or any(not 0 <= x < v for x in b):
        raise BadInput(f"tuple {b} must have {len(C)} entries in [0, {v - 1}]")
    return lambda_table(tower, C, v, include_zero_row)[b]


def antipodes(b: Sequence[int], v: int) -> list[tuple[int, ...]]:
    """All c in Z_v^t differing from b in every coordinate."""
    return list(product(*[[x for x in range(v) if x != y] for y in b]))


def exact_identity_residual(tower: FieldTower, C: Sequence[int], v: int,
                            b: Sequence[int]) -> Fraction:
    """lambda_b - (c_r - c_{r,t} + (-1)^t * sum of lambda_c over antipodes c), over all q^t elements."""
    table = lambda_table(tower, C, v, include_zero_row=True)
    b = tuple(b)
    t = len(b)
    co = lambda_coeffs(tower.q, v, t, b.count(0))
    rhs = co.c_r - co.c_last + (-1) ** t * sum(table[c] for c in antipodes(b, v))
    return table[b] - rhs


# linear program ---------------------------------------------------------------

def lp_variable_names(t: int) -> list[str]:
    """nlo<r> holds -lambda^-_r and hi<r> holds lambda^+_r."""
    return [f"nlo{r}" for r in range(t + 1)] + [f"hi{r}" for r in range(t + 1)]


@dataclass
class LPInstance:
    """Constraints B x >= C, every row scaled by v**t so all entries are integers."""

    t: int
    sense: str
    objective: str
    B: list[list[int]]
    C: list[int]
    q: int | None = field(default=None, compare=False)
    v: int | None = field(default=None, compare=False)

    @property
    def variables(self) -> list[str]:
        return lp_variable_names(self.t)

    @property
    def parity(self) -> int:
        return self.t % 2

    def emit(self) -> str:
        lines = [f"lp {2 * self.t + 2} {len(self.B)} {self.sense} {self.objective}"]
        lines += [" ".join(map(str, row)) + f" >= {rhs}" for row, rhs in zip(self.B, self.C)]
        return "\n".join(lines) + "\n"

    def satisfied_by(self, x: Sequence) -> bool:
        return all(sum(a * xi for a, xi in zip(row, x)) >= rhs for row, rhs in zip(self.B, self.C))


def parse_lp(text: str) -> LPInstance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    try:
        tag, nvars, ncons, sense, obj = lines[0].split(" ")
        nvars, ncons = int(nvars), int(ncons)
    except ValueError as exc:
        raise BadInput("bad LP header") from exc
    if tag != "lp" or sense not in ("max", "min") or nvars % 2 or nvars < 4:
        raise BadInput("bad LP header")
    t = nvars // 2 - 1
    if obj not in lp_variable_names(t):
        raise BadInput(f"unknown objective variable {obj!r}")
    if len(lines) != ncons + 1:
        raise BadInput(f"header declares {ncons} constraints, found {len(lines) - 1}")
    B, C = [], []
    for ln in lines[1:]:
        parts = ln.split(" ")
        if len(parts) != nvars + 2 or parts[-2] != ">=":
            raise BadInput(f"bad constraint line {ln!r}")
        try:
            B.append([int(x) for x in parts[:nvars]])
            C.append(int(parts[-1]))
        except ValueError as exc:
            raise BadInput(f"bad constraint line {ln!r}") from exc
    return LPInstance(t, sense, obj, B, C)


def lp_blocks(q: int, v: int, t: int) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Unscaled (B, C) for the parity of t."""
    n = t + 1
    coeffs = [lambda_coeffs(q, v, t, r) for r in range(n)]
    D = [[Fraction(comb(t - r, k) * (v - 1) ** r * (v - 2) ** (t - r - k)) if k <= t - r else Fraction(0)
          for k in range(n)] for r in range(n)]
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    Z = [[Fraction(0)] * n for _ in range(n)]
    neg = lambda M: [[-x for x in row] for row in M]
    DmI = [[D[i][j] - I[i][j] for j in range(n)] for i in range(n)]
    if t % 2 == 0:
        blocks = [(DmI, Z), (Z, DmI), (I, I), (neg(I), Z), (Z, neg(I))]
    else:
        blocks = [(neg(I), D), (D, neg(I)), (I, I), (neg(I), Z), (Z, neg(I))]
    B = [left[i] + right[i] for left, right in blocks for i in range(n)]
    diff = [co.c_r - co.c_last for co in coeffs]
    C = diff + [-x for x in diff] + [Fraction(0)] * (2 * n) + [-q * co.c_r for co in coeffs]
    return B, C


def build_lp(q: int, v: int, t: int, objective: str = "min_lo", r: int = 0) -> LPInstance:
    """objective 'min_lo' minimizes lambda^-_r; 'max_hi' maximizes lambda^+_r."""
    _check_qv(q, v)
    if t < 3:
        raise BadInput("t must be at least 3")
    if not 0 <= r <= t:
        raise BadInput(f"r must lie in [0, {t}]")
    if objective == "min_lo":
        var = f"nlo{r}"
    elif objective == "max_hi":
        var = f"hi{r}"
    else:
        raise BadInput(f"objective must be 'min_lo' or 'max_hi', not {objective!r}")
    B, C = lp_blocks(q, v, t)
    scale = v**t
    Bi = [[int(x * scale) for x in row] for row in B]
    Ci = [int(x * scale) for x in C]
    if any(Fraction(x) != y * scale for x, y in zip(Ci, C)):
        raise BadInput("right-hand side is not integral after scaling")
    return LPInstance(t, "max", var, Bi, Ci, q, v)


def build_and_emit_lp(q: int, v: int, t: int, objective: str = "min_lo",
                      r: int = 0) -> tuple[LPInstance, str]:
    lp = build_lp(q, v, t, objective, r)
    return lp, lp.emit()
