"""Coverage verification, lambda profiles and algebraic feasibility tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .arrays import SymbolArray, as_symbol_array
from .errors import BadInput, BadStrength, BadSubset, ZeroColumn
from .finite_field import FieldTower, rank_over_subfield
from .trace_arrays import build_trace_array

_BATCH_CELLS = 1 << 21


@dataclass
class CoverageReport:
    strength: int
    lambda_target: int
    kind: str
    verdict: bool
    subsets_checked: int
    failures: list[tuple[tuple[int, ...], tuple[int, ...], int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict

    def summary(self) -> str:
        head = (f"{self.kind} strength {self.strength} index {self.lambda_target}: "
                f"{'PASS' if self.verdict else 'FAIL'} ({self.subsets_checked} subsets)")
        if self.failures:
            cols, tup, cnt = self.failures[0]
            head += f"; first failure columns {list(cols)} tuple {list(tup)} count {cnt}"
        return head


@dataclass
class LambdaProfile:
    J: tuple[int, ...]
    counts: dict[tuple[int, ...], int]

    def __getitem__(self, b) -> int:
        return self.counts[tuple(b)]


def _decode(code: int, v: int, t: int) -> tuple[int, ...]:
    return tuple((code // v**j) % v for j in range(t))


def _subset_counts(data: np.ndarray, combos: np.ndarray, v: int) -> np.ndarray:
    """counts[b, code] for each subset b; code packs column j of the subset as digit j."""
    t = combos.shape[1]
    vt = v**t
    codes = np.zeros((data.shape[0], len(combos)), dtype=np.int64)
    for j in range(t):
        codes += data[:, combos[:, j]].astype(np.int64) * (v**j)
    codes += (np.arange(len(combos), dtype=np.int64) * vt)[None, :]
    return np.bincount(codes.ravel(), minlength=len(combos) * vt).reshape(len(combos), vt)


def colex_subsets(k: int, t: int) -> np.ndarray:
    combos = np.array(list(combinations(range(k), t)), dtype=np.int64).reshape(-1, t)
    if len(combos) > 1:
        combos = combos[np.lexsort(combos.T)]
    return combos


def lambda_counts(array, J: Sequence[int], v: int | None = None) -> LambdaProfile:
    arr = as_symbol_array(array, v)
    J = tuple(int(j) for j in J)
    if not J or len(set(J)) != len(J) or min(J) < 0 or max(J) >= arr.cols:
        raise BadSubset(f"bad column subset {J}")
    t = len(J)
    counts = _subset_counts(arr.data, np.array([J]), arr.v)[0]
    return LambdaProfile(J, {_decode(c, arr.v, t): int(n) for c, n in enumerate(counts)})


def _scan(arr: SymbolArray, t: int, kind: str, lam: int, max_failures: int,
          subsets: Iterable[Sequence[int]] | None) -> CoverageReport:
    if t < 1 or t > arr.cols:
        raise BadStrength(f"strength {t} invalid for {arr.cols} columns")
    if subsets is None:
        combos = colex_subsets(arr.cols, t)
    else:
        combos = np.array([sorted(s) for s in subsets], dtype=np.int64).reshape(-1, t)
    v, vt = arr.v, arr.v**t
    batch = max(1, _BATCH_CELLS // max(1, arr.rows))
    failures = []
    for start in range(0, len(combos), batch):
        part = combos[start:start + batch]
        counts = _subset_counts(arr.data, part, v)
        bad = (counts != lam) if kind == "OA" else (counts < lam)
        rows_bad = np.flatnonzero(bad.any(axis=1))
        for b in rows_bad:
            code = int(np.flatnonzero(bad[b])[0])
            failures.append((tuple(part[b].tolist()), _decode(code, v, t), int(counts[b, code])))
            if len(failures) >= max_failures:
                break
        if len(failures) >= max_failures:
            break
    return CoverageReport(t, lam, kind, not failures, len(combos), failures)


def verify_ca(array, t: int, lam: int = 1, v: int | None = None, max_failures: int = 100,
              subsets: Iterable[Sequence[int]] | None = None) -> CoverageReport:
    """Every t-subset of columns must contain every v-ary t-tuple at least ``lam`` times."""
    return _scan(as_symbol_array(array, v), t, "CA", lam, max_failures, subsets)


def verify_oa(array, t: int, v: int | None = None, max_failures: int = 100,
              subsets: Iterable[Sequence[int]] | None = None) -> CoverageReport:
    """Every t-subset must contain every t-tuple exactly rows / v**t times."""
    arr = as_symbol_array(array, v)
    if t < 1 or arr.rows % arr.v**t:
        raise BadStrength(f"v^t = {arr.v ** t} does not divide {arr.rows} rows")
    return _scan(arr, t, "OA", arr.rows // arr.v**t, max_failures, subsets)


# algebraic feasibility ---------------------------------------------------

class ZeroShiftIndex:
    """Zero positions of each Seq(alpha**m) as Python-int bitmasks.

    Because Tr(c*x) = c*Tr(x) for c in F_q, the zero pattern repeats with
    period w, so a row of A(alpha**m, I) is all zero iff some residue r mod w
    lies in every rotation Z_m - c.  Masks of length w suffice.
    """

    def __init__(self, tower: FieldTower, P: Iterable[int] = ()):
        self.tower = tower
        self.w = tower.w
        self._full = {}
        self._rot = {}
        for m in P:
            self.rotations(m)

    def full_mask(self, m: int) -> int:
        """Bit r set iff Tr(alpha**(m*r)) = 0, r in [0, Q-2]."""
        if m not in self._full:
            n = self.tower.Q - 1
            zeros = np.flatnonzero(self.tower.trace_table[(np.arange(n) * m) % n] == 0)
            self._full[m] = sum(1 << int(r) for r in zeros)
        return self._full[m]

    def rotations(self, m: int) -> list[int]:
        """rot[c] has bit r set iff Tr(alpha**(m*(r+c))) = 0, r in [0, w-1]."""
        rot = self._rot.get(m)
        if rot is None:
            w = self.w
            base = self.full_mask(m) & ((1 << w) - 1)
            zeros = [r for r in range(w) if base >> r & 1]
            rot = [sum(1 << ((r - c) % w) for r in zeros) for c in range(w)]
            self._rot[m] = rot
        return rot

    def zero_rows_mask(self, m: int, I: Iterable[int]) -> int:
        rot = self.rotations(m)
        acc = (1 << self.w) - 1
        for c in I:
            acc &= rot[c % self.w]
            if not acc:
                break
        return acc

    def feasible(self, P: Iterable[int], I: Sequence[int]) -> bool:
        return any(self.zero_rows_mask(m, I) == 0 for m in P)


def _check_subset(tower: FieldTower, I: Sequence[int]) -> tuple[int, ...]:
    I = tuple(int(i) for i in I)
    if len(I) != tower.t or len(set(I)) != len(I):
        raise BadSubset(f"need {tower.t} distinct columns, got {I}")
    if min(I) < 0 or max(I) > tower.Q - 2:
        raise BadSubset(f"columns must lie in [0, {tower.Q - 2}]")
    return I


def feasible_tset(tower: FieldTower, P: Iterable[int], I: Sequence[int],
                  method: str = "zero_row", index: ZeroShiftIndex | None = None) -> bool:
    """True iff A_0(alpha**m, I) is an OA(t, t, q) for some m in P."""
    I = _check_subset(tower, I)
    P = list(P)
    n = tower.Q - 1
    if method == "zero_row":
        index = index or ZeroShiftIndex(tower)
        return index.feasible(P, I)
    if method == "rank":
        return any(rank_over_subfield(tower, [(m * c) % n for c in I]) == tower.t for m in P)
    if method == "brute":
        return any(verify_oa(build_trace_array(tower, m, I, zero_row=True), tower.t).verdict
                   for m in P)
    raise BadInput(f"unknown method {method!r}")


def column_set_from_parity_check(tower: FieldTower, H: Sequence[Sequence[int]]) -> list[int]:
    """Exponents c_j with alpha**c_j = sum_i H[i][j] alpha**i, in column order."""
    H = [list(map(int, row)) for row in H]
    if len(H) != tower.t:
        raise BadInput(f"parity-check matrix needs {tower.t} rows")
    q = tower.q
    out = []
    for j in range(len(H[0])):
        col = [H[i][j] for i in range(tower.t)]
        if any(not 0 <= x < q for x in col):
            raise BadInput("matrix entries must be F_q codes")
        code = sum(x * q**i for i, x in enumerate(col))
        if code == 0:
            raise ZeroColumn(f"column {j} is zero")
        out.append(int(tower.log_table[code]))
    return out


def classify_pg_subset(tower: FieldTower, C: Sequence[int], mode: str) -> bool:
    """arc: every t points independent; cap: no three points collinear."""
    size = {"arc": tower.t, "cap": 3}.get(mode)
    if size is None:
        raise BadInput(f"mode must be 'arc' or 'cap', not {mode!r}")
    return all(rank_over_subfield(tower, S) == size for S in combinations(C, size))
