"""Cyclotomic cosets of p modulo w and the driver that searches over sets of primitive elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from .errors import BadInput, NotEnoughRepresentatives
from .finite_field import FieldTower
from .search import SearchConfig, SearchResult, find_ca


def cyclotomic_coset(p: int, w: int, i: int) -> list[int]:
    """{i * p**r mod w : r >= 0}, sorted."""
    if w < 1 or gcd(p, w) != 1 or gcd(i, w) != 1:
        raise BadInput(f"need gcd(p, w) = gcd(i, w) = 1 (p={p}, w={w}, i={i})")
    out = set()
    x = i % w
    while x not in out:
        out.add(x)
        x = x * p % w
    return sorted(out)


@dataclass
class CosetSystem:
    p: int
    w: int
    leaders: list[int]
    cosets: dict[int, list[int]]
    X: list[int] = field(default_factory=list)
    modulus: int = 0


def coset_partition(p: int, w: int) -> dict[int, list[int]]:
    """Partition of the units mod w into cosets, keyed by their smallest member."""
    seen = set()
    cosets = {}
    for i in range(w):
        if gcd(i, w) == 1 and i not in seen:
            cos = cyclotomic_coset(p, w, i)
            seen.update(cos)
            cosets[cos[0]] = cos
    return cosets


def coset_system(tower: FieldTower) -> CosetSystem:
    """Cosets of p modulo w = [t]_q plus one exponent coprime to Q-1 per usable coset."""
    w, n = tower.w, tower.Q - 1
    cosets = coset_partition(tower.p, w)
    X = []
    for members in cosets.values():
        coprime = [j for j in members if gcd(j, n) == 1]
        if coprime:
            X.append(coprime[0])
    return CosetSystem(tower.p, w, list(cosets), cosets, X, n)


@dataclass
class Problem2Result:
    best: SearchResult
    exps: tuple[int, ...]
    runs: list[SearchResult]

    @property
    def exhausted(self) -> bool:
        return all(r.exhausted for r in self.runs)


def problem2_search(tower: FieldTower, l: int, budget_nodes: int | None = None,
                    budget_secs: float | None = None,
                    X: list[int] | None = None) -> Problem2Result:
    """Run find_ca for every l-subset of coset representatives; keep the largest result.

    Budgets are global and split evenly across the runs.  Ties go to the
    lexicographically smallest exponent set, which is also the first one run.
    """
    X = coset_system(tower).X if X is None else list(X)
    if l < 1 or l > len(X):
        raise NotEnoughRepresentatives(f"need {l} representatives, have {len(X)}")
    subsets = list(combinations(sorted(X), l))
    per_nodes = None if budget_nodes is None else max(1, budget_nodes // len(subsets))
    per_secs = None if budget_secs is None else budget_secs / len(subsets)
    runs = []
    best, best_exps = None, ()
    for P in subsets:
        res = find_ca(SearchConfig(tower, P, per_nodes, per_secs))
        runs.append(res)
        if best is None or res.size > best.size:
            best, best_exps = res, P
        if res.interrupted:
            break
    return Problem2Result(best, best_exps, runs)
