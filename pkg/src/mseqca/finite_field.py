"""Table-driven arithmetic for a two-step field tower F_p < F_q < F_Q, Q = q**t.

Elements are integer codes: the coefficient vector of an element over the
immediate subfield, packed positionally (digit i holds the coefficient of
x**i).  Zero is code 0, one is code 1 and the adjoined root x has code equal
to the subfield size.  A subfield element keeps the same code when viewed in
the larger field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadInput,
    LogOfZero,
    NonPrime,
    NonPrimitivePolynomial,
    TableCapExceeded,
    ZeroInverse,
)

DEFAULT_TABLE_CAP = 1 << 24
_ADD_TABLE_LIMIT = 1 << 12


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n = p**e, or None when n is not a prime power."""
    fs = prime_factors(n) if n >= 2 else []
    if len(fs) != 1:
        return None
    p, e = fs[0], 0
    while n > 1:
        n //= p
        e += 1
    return p, e


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with coefficient codes in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[-1] == 0:
            raise BadInput("polynomial must have a nonzero leading coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"[{c}]{mono}")
        return " + ".join(terms)


def as_polynomial(poly: Polynomial | Sequence[int]) -> Polynomial:
    return poly if isinstance(poly, Polynomial) else Polynomial(tuple(poly))


class GF:
    """A finite field, either prime or a simple extension of a smaller GF.

    Multiplication goes through exp/log tables; addition is digit-wise over
    the immediate subfield (cached as a full table for small orders).
    """

    def __init__(self, order: int, char: int, sub: "GF | None", poly: Polynomial | None,
                 exp: np.ndarray):
        self.order = order
        self.char = char
        self.sub = sub
        self.poly = poly
        self.exp = exp
        log = np.full(order, -1, dtype=np.int64)
        log[exp] = np.arange(order - 1, dtype=np.int64)
        self.log = log
        self.degree = 1 if sub is None else poly.degree
        self._add_table = None
        if order <= _ADD_TABLE_LIMIT:
            a = np.arange(order, dtype=np.int64)
            self._add_table = self._add_digits(a[:, None], a[None, :])

    # construction -------------------------------------------------------

    @classmethod
    def prime(cls, p: int) -> "GF":
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        g = smallest_primitive_root(p)
        exp = np.empty(p - 1, dtype=np.int64)
        x = 1
        for i in range(p - 1):
            exp[i] = x
            x = x * g % p
        return cls(p, p, None, None, exp)

    @classmethod
    def extension(cls, sub: "GF", poly: Polynomial | Sequence[int],
                  table_cap: int = DEFAULT_TABLE_CAP) -> "GF":
        """Adjoin a root of the monic primitive polynomial ``poly`` to ``sub``."""
        poly = as_polynomial(poly)
        if not poly.is_monic:
            raise BadInput("extension polynomial must be monic")
        if any(c >= sub.order for c in poly.coeffs):
            raise BadInput("polynomial coefficient outside the base field")
        order = sub.order ** poly.degree
        if order > table_cap:
            raise TableCapExceeded(f"field of order {order} exceeds table cap {table_cap}")
        if not is_primitive_poly(sub, poly):
            raise NonPrimitivePolynomial(f"{poly} is not primitive over F_{sub.order}")
        d = poly.degree
        s = sub.order
        # x**d = -(c_0 + ... + c_{d-1} x**(d-1))
        red = [sub.neg(c) for c in poly.coeffs[:-1]]
        weights = [s**i for i in range(d)]
        exp = np.empty(order - 1, dtype=np.int64)
        vec = [1] + [0] * (d - 1)
        for i in range(order - 1):
            exp[i] = sum(c * w for c, w in zip(vec, weights))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for k in range(d):
                    if red[k]:
                        vec[k] = sub.add(vec[k], sub.mul(top, red[k]))
        return cls(order, sub.char, sub, poly, exp)

    # scalar arithmetic --------------------------------------------------

    def _add_digits(self, a, b):
        if self.sub is None:
            return (a + b) % self.order
        s = self.sub.order
        out = 0
        w = 1
        for _ in range(self.degree):
            out = out + self.sub.add_arr((a // w) % s, (b // w) % s) * w
            w *= s
        return out

    def add_arr(self, a, b):
        """Vectorised addition of code arrays."""
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_digits(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int(self._add_digits(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.sub is None:
            return (-a) % self.order
        s = self.sub.order
        out, w = 0, 1
        for _ in range(self.degree):
            out += self.sub.neg((a // w) % s) * w
            w *= s
        return out

    def sub_(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no inverse")
        return int(self.exp[(-self.log[a]) % (self.order - 1)])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroInverse("zero has no inverse")
            return 1 if n == 0 else 0
        return int(self.exp[(int(self.log[a]) * n) % (self.order - 1)])

    def digits(self, a: int) -> list[int]:
        """Coefficients of ``a`` over the immediate subfield, ascending."""
        s = self.order if self.sub is None else self.sub.order
        return [(a // s**i) % s for i in range(self.degree)]

    def __repr__(self) -> str:
        return f"GF({self.order})"


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise NonPrime(f"{p} is not prime")


# polynomial arithmetic over a GF, used only for primitivity testing ------

def _poly_mulmod(a: list[int], b: list[int], f: list[int], F: GF) -> list[int]:
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    # f is monic: reduce from the top
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d):
                if f[i]:
                    prod[k - d + i] = F.sub_(prod[k - d + i], F.mul(c, f[i]))
            prod[k] = 0
    out = prod[:d] + [0] * max(0, d - len(prod))
    return out


def _poly_x_pow(n: int, f: list[int], F: GF) -> list[int]:
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = _poly_mulmod([0, 1], [1], f, F) if d > 1 else [F.neg(f[0])]
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, f, F)
        base = _poly_mulmod(base, base, f, F)
        n >>= 1
    return result


def is_primitive_poly(F: GF, poly: Polynomial | Sequence[int]) -> bool:
    """True iff the monic ``poly`` is primitive over F: x has order |F|**deg - 1 modulo poly."""
    poly = as_polynomial(poly)
    f = list(poly.coeffs)
    d = poly.degree
    if d < 1 or not poly.is_monic or f[0] == 0:
        return False
    n = F.order**d - 1
    one = [1] + [0] * (d - 1)
    if _poly_x_pow(n, f, F) != one:
        return False
    return all(_poly_x_pow(n // r, f, F) != one for r in prime_factors(n))


def find_primitive_poly(base_field: GF, degree: int) -> Polynomial:
    """Smallest monic primitive polynomial, ordering coefficient vectors constant term first."""
    if degree < 1:
        raise BadInput("degree must be at least 1")
    for low in itertools.product(range(base_field.order), repeat=degree):
        if low[0] == 0:
            continue
        cand = Polynomial(low + (1,))
        if is_primitive_poly(base_field, cand):
            return cand
    raise AssertionError("unreachable: primitive polynomials always exist")


# the tower ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldTower:
    p: int
    e: int
    t: int
    base_poly: Polynomial | None
    ext_poly: Polynomial
    prime_field: GF = field(repr=False)
    base: GF = field(repr=False)
    top: GF = field(repr=False)

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def Q(self) -> int:
        return self.top.order

    @property
    def w(self) -> int:
        return (self.Q - 1) // (self.q - 1)

    @property
    def exp_table(self) -> np.ndarray:
        return self.top.exp

    @property
    def log_table(self) -> np.ndarray:
        return self.top.log

    @cached_property
    def trace_table(self) -> np.ndarray:
        """trace_table[i] = Tr_{Q/q}(alpha**i) for i in [0, Q-2]."""
        n = self.Q - 1
        idx = np.arange(n, dtype=np.int64)
        exp = self.top.exp
        acc = exp.copy()
        for k in range(1, self.t):
            acc = self.top.add_arr(acc, exp[(idx * pow(self.q, k, n)) % n])
        acc = np.asarray(acc, dtype=np.int64)
        assert int(acc.max()) < self.q
        return acc

    @cached_property
    def omega_log(self) -> np.ndarray:
        """omega_log[c] = j with omega**j = c, omega = alpha**w; -1 at c = 0."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[1:] = self.top.log[1:self.q] // self.w
        return out

    @cached_property
    def coord_table(self) -> np.ndarray:
        """Row i holds the F_q coordinates of alpha**i in the basis 1, alpha, ..., alpha**(t-1)."""
        codes = self.top.exp
        q = self.q
        return np.stack([(codes // q**k) % q for k in range(self.t)], axis=1)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, e={self.e}, t={self.t}, Q={self.Q})"


def build_tower(p: int, e: int, t: int,
                base_poly: Polynomial | Sequence[int] | None = None,
                ext_poly: Polynomial | Sequence[int] | None = None,
                table_cap: int = DEFAULT_TABLE_CAP) -> FieldTower:
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if e < 1 or t < 1:
        raise BadInput("e and t must be positive")
    if p ** (e * t) > table_cap:
        raise TableCapExceeded(f"field of order {p ** (e * t)} exceeds table cap {table_cap}")
    Fp = GF.prime(p)
    if e == 1:
        if base_poly is not None and as_polynomial(base_poly).degree != 1:
            raise BadInput("base_poly must be absent or linear when e = 1")
        base_poly = None
        Fq = Fp
    else:
        if base_poly is None:
            base_poly = find_primitive_poly(Fp, e)
        base_poly = as_polynomial(base_poly)
        if base_poly.degree != e:
            raise BadInput(f"base_poly must have degree {e}")
        Fq = GF.extension(Fp, base_poly, table_cap)
    if ext_poly is None:
        ext_poly = find_primitive_poly(Fq, t)
    ext_poly = as_polynomial(ext_poly)
    if ext_poly.degree != t:
        raise BadInput(f"ext_poly must have degree {t}")
    top = GF.extension(Fq, ext_poly, table_cap)
    return FieldTower(p, e, t, base_poly, ext_poly, Fp, Fq, top)


def tower_for(q: int, t: int, ext_poly=None) -> FieldTower:
    """Tower for a prime power q with default (smallest primitive) polynomials."""
    pe = prime_power(q)
    if pe is None:
        raise BadInput(f"{q} is not a prime power")
    return build_tower(pe[0], pe[1], t, ext_poly=ext_poly)


# operations --------------------------------------------------------------

def field_arith(F: GF, op: str, *operands: int) -> int:
    """Dispatch add / sub / mul / inv / pow / neg on field F."""
    if op == "add":
        a, b = operands
        return F.add(a, b)
    if op == "sub":
        a, b = operands
        return F.sub_(a, b)
    if op == "mul":
        a, b = operands
        return F.mul(a, b)
    if op == "inv":
        (a,) = operands
        return F.inv(a)
    if op == "neg":
        (a,) = operands
        return F.neg(a)
    if op == "pow":
        a, n = operands
        return F.pow(a, n)
    raise BadInput(f"unknown operation {op!r}")


def trace(tower: FieldTower, elem: int, over: str = "base") -> int:
    """Trace of the element code ``elem`` down to F_q (``over='base'``) or F_p (``'prime'``)."""
    if elem == 0:
        return 0
    top = tower.top
    sub_order = tower.q if over == "base" else tower.p
    if over not in ("base", "prime"):
        raise BadInput("over must be 'base' or 'prime'")
    n = top.order - 1
    deg = {tower.q: tower.t, tower.p: tower.e * tower.t}[sub_order]
    lg = int(top.log[elem])
    acc = 0
    for k in range(deg):
        acc = top.add(acc, int(top.exp[(lg * pow(sub_order, k, n)) % n]))
    return acc


def trace_power(tower: FieldTower, i: int) -> int:
    """Tr_{Q/q}(alpha**i)."""
    return int(tower.trace_table[i % (tower.Q - 1)])


def dlog_omega(tower: FieldTower, c: int) -> int:
    """Exponent j in [0, q-2] with (alpha**w)**j = c for a nonzero subfield code c."""
    if c == 0:
        raise LogOfZero("discrete log of zero")
    if not 0 < c < tower.q:
        raise BadInput(f"{c} is not a subfield element code")
    return int(tower.omega_log[c])


def rank_over(F: GF, vectors: Iterable[Sequence[int]]) -> int:
    """Rank of coordinate vectors over F by Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        prow = [F.mul(inv, x) for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [F.sub_(x, F.mul(f, y)) for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_over_subfield(tower: FieldTower, exponents: Iterable[int]) -> int:
    """Rank over F_q of {alpha**i : i in exponents}."""
    n = tower.Q - 1
    coords = tower.coord_table
    return rank_over(tower.base, (coords[i % n].tolist() for i in exponents))


def element_order(tower: FieldTower, exponent: int) -> int:
    n = tower.Q - 1
    return n // gcd(exponent % n, n)


def is_primitive_exponent(tower: FieldTower, i: int) -> bool:
    return gcd(i, tower.Q - 1) == 1


def primitive_exponents(tower: FieldTower) -> list[int]:
    n = tower.Q - 1
    return [i for i in range(1, n) if gcd(i, n) == 1] or [0]
