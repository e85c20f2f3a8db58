"""Backtracking search for a maximum column set whose t-subsets are all feasible.

Column sets are taken up to cyclic shift modulo w.  Each class is represented
by its canonical set: the member containing 0 whose binary representation is
a necklace.  Candidate sets are kept as Python-int bitmasks (bit j = column j).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Iterator, Sequence

from .coverage import ZeroShiftIndex
from .errors import BadCandidate, BadInput, BadSize, NonPrimitiveExponent
from .finite_field import FieldTower, is_primitive_exponent

# necklaces and canonical sets ------------------------------------------


def char_vector(S: Iterable[int], n: int) -> str:
    s = set(S)
    return "".join("1" if i in s else "0" for i in range(n))


def bin_rep(S: Iterable[int], n: int) -> str:
    """0^(n-max-1) b_0 ... b_max, or 0^n for the empty set."""
    S = set(S)
    if not S:
        return "0" * n
    m = max(S)
    return "0" * (n - m - 1) + char_vector(S, m + 1)


def get_set(bits: str) -> tuple[int, ...]:
    """Inverse of bin_rep on strings with at least one 1: strip the leading zeros."""
    body = bits.lstrip("0")
    return tuple(i for i, b in enumerate(body) if b == "1")


def is_necklace(s: str) -> bool:
    return all(s <= s[i:] + s[:i] for i in range(1, len(s)))


def neck(s: str) -> str:
    return min(s[i:] + s[:i] for i in range(len(s))) if s else s


@dataclass(frozen=True)
class CanonicalForms:
    char_vector: str
    bin_rep: str
    is_necklace: bool
    neck: str


def canonical_forms(S_or_bits, n: int | None = None) -> CanonicalForms:
    """Forms of a set (needs n) or of a bit string (taken as a binary representation)."""
    if isinstance(S_or_bits, str):
        bits = S_or_bits
        n = len(bits)
        S = get_set(bits)
    else:
        if n is None:
            raise BadInput("n is required for a set argument")
        S = tuple(sorted(S_or_bits))
        bits = bin_rep(S, n)
    return CanonicalForms(char_vector(S, n), bits, is_necklace(bits), neck(bits))


def _flip_last(b: str) -> str:
    return b[:-1] + ("0" if b[-1] == "1" else "1")


def gen_necklaces(n: int, stats: dict | None = None) -> Iterator[str]:
    """Nonzero binary necklaces of length n in the rotate-and-flip tree order.

    ``stats['checks']`` receives the number of candidate strings tested.
    """
    if n < 1:
        raise BadInput("n must be positive")
    checks = 0

    def walk(b: str):
        nonlocal checks
        yield b
        while True:
            b = b[1:] + b[0]
            child = _flip_last(b)
            checks += 1
            # the zero string is a necklace but not part of the tree (reachable for n <= 2)
            if "1" not in child or not is_necklace(child):
                return
            yield from walk(child)

    yield from walk("0" * (n - 1) + "1")
    if stats is not None:
        stats["checks"] = checks


def gen_canonical_subsets(n: int, stats: dict | None = None) -> Iterator[tuple[int, ...]]:
    """Nonempty canonical subsets of [0, n-1]; children S+{j} for j = max+1, ... until one fails."""
    if n < 1:
        raise BadInput("n must be positive")
    checks = 0

    def walk(S: tuple[int, ...]):
        nonlocal checks
        yield S
        for j in range(S[-1] + 1, n):
            checks += 1
            child = S + (j,)
            if not is_necklace(bin_rep(child, n)):
                return
            yield from walk(child)

    yield from walk((0,))
    if stats is not None:
        stats["checks"] = checks


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def necklaces_of_weight(n: int, i: int) -> int:
    g = gcd(i, n - i)
    total = sum(_phi(j) * comb(n // j, i // j) for j in range(1, g + 1) if g % j == 0)
    return total // n


def necklace_count(n: int) -> int:
    """All binary necklaces of length n, the zero string included."""
    return sum(necklaces_of_weight(n, i) for i in range(n + 1))


# the search ----------------------------------------------------------------

@dataclass
class SearchConfig:
    tower: FieldTower = field(repr=False)
    P: tuple[int, ...]
    budget_nodes: int | None = None
    budget_secs: float | None = None
    prune: bool = True

    def __post_init__(self):
        self.P = tuple(int(m) for m in self.P)
        if not self.P:
            raise BadInput("P must be nonempty")
        for m in self.P:
            if not is_primitive_exponent(self.tower, m):
                raise NonPrimitiveExponent(f"alpha^{m} is not primitive")
        for b in (self.budget_nodes, self.budget_secs):
            if b is not None and b <= 0:
                raise BadInput("budgets must be positive")
        self.index = ZeroShiftIndex(self.tower, self.P)
        self._u_cache: dict[tuple[int, ...], int] = {}

    @property
    def n(self) -> int:
        return self.tower.w

    @property
    def t(self) -> int:
        return self.tower.t

    def feasible(self, I: Sequence[int]) -> bool:
        return self.index.feasible(self.P, I)

    def set_feasible(self, S: Sequence[int]) -> bool:
        return all(self.feasible(I) for I in combinations(S, self.t))

    def _u_mask(self, X: tuple[int, ...]) -> int:
        """Bits u in [1, w-1] (u not in X) with X + {0, u} infeasible for every alpha in P."""
        got = self._u_cache.get(X)
        if got is not None:
            return got
        w = self.n
        bases = []
        for m in self.P:
            rot = self.index.rotations(m)
            acc = rot[0]
            for x in X:
                acc &= rot[x]
            bases.append((acc, rot))
        skip = set(X)
        mask = 0
        for u in range(1, w):
            if u in skip:
                continue
            if all(acc & rot[u] for acc, rot in bases):
                mask |= 1 << u
        self._u_cache[X] = mask
        return mask


def u_p(config: SearchConfig, I: Iterable[int]) -> frozenset[int]:
    """{j in [max(I)+1, w-1] : I + {0, j} is not feasible}."""
    I = tuple(sorted(int(i) for i in I))
    if len(I) != config.t - 2:
        raise BadSize(f"|I| must be t-2 = {config.t - 2}")
    if I and (I[0] < 1 or I[-1] > config.n - 1):
        raise BadInput(f"I must lie in [1, {config.n - 1}]")
    lo = (I[-1] if I else 0) + 1
    mask = config._u_mask(I)
    return frozenset(j for j in range(lo, config.n) if mask >> j & 1)


def _rotate(mask: int, j: int, w: int) -> int:
    """Add j modulo w to every member."""
    j %= w
    full = (1 << w) - 1
    return ((mask << j) | (mask >> (w - j))) & full


def _compute_cand_mask(config: SearchConfig, S: Sequence[int], j: int, cand: int) -> int:
    C = (cand >> (j + 1)) << (j + 1)
    if not C:
        return 0
    t, w = config.t, config.n
    if len(S) < t - 2:
        return C
    for I in combinations(S, t - 2):
        X = tuple(sorted((i - j) % w for i in I))
        C &= ~_rotate(config._u_mask(X), j, w)
        if not C:
            return 0
    return C


def _to_mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << int(x)
    return m


def _from_mask(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def compute_cand(config: SearchConfig, S: Iterable[int], j: int,
                 cand_S: Iterable[int]) -> list[int]:
    """Cand(S + {j}) from Cand(S), for j in Cand(S)."""
    S = tuple(sorted(int(s) for s in S))
    cand = _to_mask(cand_S)
    if not cand >> j & 1:
        raise BadCandidate(f"{j} is not in the candidate set")
    return _from_mask(_compute_cand_mask(config, S, j, cand))


def candidates_by_definition(config: SearchConfig, S: Sequence[int]) -> list[int]:
    """Cand(S) recomputed from scratch: x > max(S) with S + {x} feasible."""
    S = tuple(sorted(S))
    lo = S[-1] + 1 if S else 0
    t = config.t
    out = []
    for x in range(lo, config.n):
        if all(config.feasible(I + (x,)) for I in combinations(S, t - 1)):
            out.append(x)
    return out


@dataclass
class SearchResult:
    best: tuple[int, ...]
    size: int
    nodes_visited: int
    exhausted: bool
    P: tuple[int, ...] = ()
    interrupted: bool = False


class _OutOfBudget(Exception):
    pass


def find_ca(config: SearchConfig) -> SearchResult:
    """Depth-first search over canonical sets with bound, horizon and necklace cuts."""
    n = config.n
    best: tuple[int, ...] = (0,)
    nodes = 0
    deadline = None if config.budget_secs is None else time.monotonic() + config.budget_secs
    prune = config.prune

    def visit(S: tuple[int, ...], chars: str, cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if config.budget_nodes is not None and nodes > config.budget_nodes:
            raise _OutOfBudget
        if deadline is not None and time.monotonic() > deadline:
            raise _OutOfBudget
        if len(S) > len(best):
            best = S
        cands = _from_mask(cand)
        if prune and len(best) >= len(S) + len(cands):
            return
        top = S[-1]
        for i, x in enumerate(cands):
            if prune and i > len(S) + len(cands) - len(best):
                break
            child_chars = chars + "0" * (x - top - 1) + "1"
            if not is_necklace("0" * (n - x - 1) + child_chars):
                break
            visit(S + (x,), child_chars, _compute_cand_mask(config, S, x, cand))

    exhausted, interrupted = True, False
    try:
        visit((0,), "1", _to_mask(range(1, n)))
    except _OutOfBudget:
        exhausted = False
        nodes -= 1
    except KeyboardInterrupt:
        exhausted, interrupted = False, True
    return SearchResult(best, len(best), nodes, exhausted, config.P, interrupted)


def find_ca_unpruned(config: SearchConfig) -> SearchResult:
    """Reference answer: check every canonical set directly."""
    best: tuple[int, ...] = (0,)
    count = 0
    for S in gen_canonical_subsets(config.n):
        count += 1
        if len(S) > len(best) and config.set_feasible(S):
            best = S
    return SearchResult(best, len(best), count, True, config.P)
