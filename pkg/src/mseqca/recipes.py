"""Construction recipes: a small `key = value` format, builtin recipes, and recipe execution.

Grammar (one entry per line, `#` starts a comment)::

    name = ca511
    p = 2
    e = 2
    t = 4
    base_poly = 1, 1, 1        # optional, codes over F_p, constant term first
    ext_poly = 2, 0, 2, 3, 1   # optional, codes over F_q, constant term first
    exps = 1, 31
    columns = arith 0 5 17     # or a list such as 0-14, 16, 18
    zero_row = true
    v = 3                      # optional: build the mod-v array instead
    expect.kind = CA
    expect.N = 511
    expect.k = 17
    expect.v = 4
    expect.t = 4
    expect.index = 1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .arrays import SymbolArray
from .coverage import CoverageReport, verify_ca, verify_oa
from .errors import MalformedValue, MissingKey, PostVerificationFailed, UnknownKey
from .finite_field import FieldTower, build_tower, prime_power
from .trace_arrays import build_concat_array, build_mod_v_array

REQUIRED = ("p", "e", "t", "exps", "columns")
SCALARS = ("name", "p", "e", "t", "base_poly", "ext_poly", "exps", "columns", "zero_row", "v")
EXPECT_KEYS = ("kind", "N", "k", "v", "t", "index")


@dataclass(frozen=True)
class Expect:
    kind: str = "CA"
    N: int | None = None
    k: int | None = None
    v: int | None = None
    t: int | None = None
    index: int = 1


@dataclass(frozen=True)
class Recipe:
    p: int
    e: int
    t: int
    exps: tuple[int, ...]
    columns: tuple[int, ...]
    name: str = ""
    base_poly: tuple[int, ...] | None = None
    ext_poly: tuple[int, ...] | None = None
    arith: tuple[int, int, int] | None = None  # (a, d, n) when columns = {a + d*i}
    zero_row: bool = True
    v: int | None = None
    expect: Expect | None = None

    @property
    def q(self) -> int:
        return self.p**self.e


# parsing -------------------------------------------------------------------

def _int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise MalformedValue(f"{key}: expected an integer, got {text!r}") from None


def _int_list(key: str, text: str, ranges: bool = False) -> tuple[int, ...]:
    out = []
    for item in text.split(","):
        item = item.strip()
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", item) if ranges else None
        if m:
            lo, hi = int(m[1]), int(m[2])
            if lo > hi:
                raise MalformedValue(f"{key}: empty range {item!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(_int(key, item))
    return tuple(out)


def _columns(text: str) -> tuple[tuple[int, ...], tuple[int, int, int] | None]:
    words = text.split()
    if words and words[0] == "arith":
        if len(words) != 4:
            raise MalformedValue("columns: 'arith a d n' takes three integers")
        a, d, n = (_int("columns", w) for w in words[1:])
        if n < 1:
            raise MalformedValue("columns: arith count must be positive")
        return tuple(a + d * i for i in range(n)), (a, d, n)
    return _int_list("columns", text, ranges=True), None


def _bool(key: str, text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise MalformedValue(f"{key}: expected true or false, got {text!r}")


def parse_recipe(text: str) -> Recipe:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedValue(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key.startswith("expect."):
            if key[7:] not in EXPECT_KEYS:
                raise UnknownKey(key)
        elif key not in SCALARS:
            raise UnknownKey(key)
        if key in raw:
            raise MalformedValue(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    for key in REQUIRED:
        if key not in raw:
            raise MissingKey(key)

    columns, arith = _columns(raw["columns"])
    expect = None
    ex = {k[7:]: v for k, v in raw.items() if k.startswith("expect.")}
    if ex:
        kind = ex.get("kind", "CA").upper()
        if kind not in ("CA", "OA"):
            raise MalformedValue(f"expect.kind: expected CA or OA, got {ex['kind']!r}")
        nums = {k: _int(f"expect.{k}", ex[k]) for k in ("N", "k", "v", "t", "index") if k in ex}
        expect = Expect(kind=kind, **nums)
    return Recipe(
        p=_int("p", raw["p"]),
        e=_int("e", raw["e"]),
        t=_int("t", raw["t"]),
        exps=_int_list("exps", raw["exps"]),
        columns=columns,
        name=raw.get("name", ""),
        base_poly=_int_list("base_poly", raw["base_poly"]) if "base_poly" in raw else None,
        ext_poly=_int_list("ext_poly", raw["ext_poly"]) if "ext_poly" in raw else None,
        arith=arith,
        zero_row=_bool("zero_row", raw["zero_row"]) if "zero_row" in raw else True,
        v=_int("v", raw["v"]) if "v" in raw else None,
        expect=expect,
    )


def _render_columns(cols: tuple[int, ...]) -> str:
    """Runs of three or more consecutive integers are written a-b."""
    parts, i = [], 0
    while i < len(cols):
        j = i
        while j + 1 < len(cols) and cols[j + 1] == cols[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{cols[i]}-{cols[j]}")
        else:
            parts.extend(str(c) for c in cols[i:j + 1])
        i = j + 1
    return ", ".join(parts)


def render_recipe(r: Recipe) -> str:
    join = lambda xs: ", ".join(map(str, xs))
    lines = []
    if r.name:
        lines.append(f"name = {r.name}")
    lines += [f"p = {r.p}", f"e = {r.e}", f"t = {r.t}"]
    if r.base_poly is not None:
        lines.append(f"base_poly = {join(r.base_poly)}")
    if r.ext_poly is not None:
        lines.append(f"ext_poly = {join(r.ext_poly)}")
    lines.append(f"exps = {join(r.exps)}")
    lines.append("columns = " + (f"arith {r.arith[0]} {r.arith[1]} {r.arith[2]}" if r.arith
                                 else _render_columns(r.columns)))
    lines.append(f"zero_row = {'true' if r.zero_row else 'false'}")
    if r.v is not None:
        lines.append(f"v = {r.v}")
    if r.expect is not None:
        ex = r.expect
        lines.append(f"expect.kind = {ex.kind}")
        for key in ("N", "k", "v", "t"):
            if getattr(ex, key) is not None:
                lines.append(f"expect.{key} = {getattr(ex, key)}")
        lines.append(f"expect.index = {ex.index}")
    return "\n".join(lines) + "\n"


# symbolic polynomial encoder ------------------------------------------------

def _split_top(expr: str) -> list[tuple[int, str]]:
    """Split at + and - outside parentheses; returns (sign, term) pairs."""
    terms, depth, sign, cur = [], 0, 1, ""
    for ch in expr:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                terms.append((sign, cur.strip()))
            elif ch == "-":
                sign = -sign
                continue
            sign, cur = (1 if ch == "+" else -1), ""
            continue
        cur += ch
    if depth != 0:
        raise MalformedValue(f"unbalanced parentheses in {expr!r}")
    if cur.strip():
        terms.append((sign, cur.strip()))
    return terms


def _coef_digits(expr: str, p: int, e: int, gen: str) -> list[int]:
    """Digits (over F_p, lowest first) of a polynomial expression in the generator."""
    digits = [0] * e
    for sign, term in _split_top(expr.replace(" ", "")):
        m = re.fullmatch(rf"(\d*)\*?(?:{gen}(?:\^(\d+))?)?", term)
        if not m or not term:
            raise MalformedValue(f"cannot read coefficient term {term!r}")
        has_gen = gen in term
        mult = int(m[1]) if m[1] else 1
        power = (int(m[2]) if m[2] else 1) if has_gen else 0
        if power >= e:
            raise MalformedValue(f"{gen}^{power} needs reduction; write it in degree < {e}")
        digits[power] = (digits[power] + sign * mult) % p
    return digits


def encode_poly_text(text: str, p: int, e: int = 1, var: str = "x", gen: str = "b") -> list[int]:
    """Coefficient codes, constant term first, of a polynomial written over F_{p^e}.

    Coefficients may use the generator symbol (``b`` or ``β``), e.g.
    ``x^4 + (b + 1)x^3 + b x^2 + b``.
    """
    text = text.replace("β", gen).replace("**", "^")
    coeffs: dict[int, list[int]] = {}
    for sign, term in _split_top(text):
        term = term.replace(" ", "")
        m = re.fullmatch(rf"(.*?)\*?{var}(?:\^(\d+))?", term)
        if m:
            coef, deg = m[1], int(m[2]) if m[2] else 1
        else:
            coef, deg = term, 0
        if coef.startswith("(") and coef.endswith(")"):
            coef = coef[1:-1]
        digits = _coef_digits(coef, p, e, gen) if coef else [1] + [0] * (e - 1)
        if sign < 0:
            digits = [(-d) % p for d in digits]
        acc = coeffs.setdefault(deg, [0] * e)
        coeffs[deg] = [(a + b) % p for a, b in zip(acc, digits)]
    if not coeffs:
        raise MalformedValue("empty polynomial")
    top = max(coeffs)
    return [sum(d * p**i for i, d in enumerate(coeffs.get(k, [0] * e))) for k in range(top + 1)]


# builtins -------------------------------------------------------------------

_TABLE_TEXT = {
    "ca511": """
        name = ca511
        p = 2
        e = 2
        t = 4
        base_poly = 1, 1, 1
        ext_poly = 2, 0, 2, 3, 1
        exps = 1, 31
        columns = arith 0 5 17
        expect.N = 511
        expect.k = 17
        expect.v = 4
        expect.t = 4
    """,
    "ca1249": """
        name = ca1249
        p = 5
        e = 1
        t = 4
        ext_poly = 2, 0, 2, 1, 1
        exps = 1, 7
        columns = 0, 6, 9, 15, 39, 45, 48, 54, 78, 84, 87, 93, 117, 123, 126, 132
        expect.N = 1249
        expect.k = 16
        expect.v = 5
        expect.t = 4
    """,
    "ca1873": """
        name = ca1873
        p = 5
        e = 1
        t = 4
        ext_poly = 2, 0, 2, 1, 1
        exps = 1, 7, 17
        columns = 0, 9, 12, 21, 24, 33, 36, 45, 48, 57, 60, 69, 72, 81, 84, 93, 96, 105, 108, 117, 120, 129, 132, 141, 144
        expect.N = 1873
        expect.k = 25
        expect.v = 5
        expect.t = 4
    """,
    "ca485": """
        name = ca485
        p = 3
        e = 1
        t = 5
        ext_poly = 1, 0, 0, 0, 2, 1
        exps = 1, 17
        columns = arith 0 11 11
        expect.N = 485
        expect.k = 11
        expect.v = 3
        expect.t = 5
    """,
    "ca161": """
        name = ca161
        p = 3
        e = 1
        t = 4
        ext_poly = 2, 0, 0, 1, 1
        exps = 1, 17
        columns = 0, 1, 8, 9, 16, 17, 24, 25, 32, 33
        expect.N = 161
        expect.k = 10
        expect.v = 3
        expect.t = 4
    """,
    "ca16381": """
        name = ca16381
        p = 2
        e = 3
        t = 4
        base_poly = 1, 1, 0, 1
        ext_poly = 2, 0, 0, 2, 1
        exps = 1, 43, 421, 1324
        columns = 0-14, 16, 18, 20, 22, 24, 26, 28, 31, 33, 34, 37, 41, 48, 52, 124, 125, 128, 176, 226, 230, 240, 251, 275, 279, 285, 321, 365, 432, 433, 440, 444, 452, 510
        expect.N = 16381
        expect.k = 48
        expect.v = 8
        expect.t = 4
    """,
    "ca19681": """
        name = ca19681
        p = 3
        e = 2
        t = 4
        base_poly = 2, 2, 1
        ext_poly = 3, 0, 0, 3, 1
        exps = 1, 7, 13
        columns = arith 0 10 42
        expect.N = 19681
        expect.k = 42
        expect.v = 9
        expect.t = 4
    """,
}

# symbolic forms of the extension polynomials above, re-encoded by a test
SYMBOLIC_EXT_POLY = {
    "ca511": "x^4 + (b + 1)x^3 + b x^2 + b",
    "ca1249": "x^4 + x^3 + 2x^2 + 2",
    "ca1873": "x^4 + x^3 + 2x^2 + 2",
    "ca485": "x^5 + 2x^4 + 1",
    "ca161": "x^4 + x^3 + 2",
    "ca16381": "x^4 + b x^3 + b",
    "ca19681": "x^4 + b x^3 + b",
}
SYMBOLIC_BASE_POLY = {"ca511": "x^2 + x + 1", "ca16381": "x^3 + x + 1", "ca19681": "x^2 + 2x + 2"}


def _pe(q: int) -> tuple[int, int]:
    pe = prime_power(q)
    if pe is None:
        raise MalformedValue(f"{q} is not a prime power")
    return pe


def raoham(q: int, t: int) -> Recipe:
    """A_0(alpha, [0, w-1]): an orthogonal array of strength 2 and index q^(t-2)."""
    p, e = _pe(q)
    w = (q**t - 1) // (q - 1)
    return Recipe(p, e, t, (1,), tuple(range(w)), name=f"raoham:{q}:{t}", arith=(0, 1, w),
                  expect=Expect("OA", q**t, w, q, 2, q ** (t - 2)))


def ovoid(q: int) -> Recipe:
    """A_0(alpha, {j(q+1)}) for t = 4: an orthogonal array of strength 3 and index q."""
    p, e = _pe(q)
    n = q * q + 1
    return Recipe(p, e, 4, (1,), tuple(j * (q + 1) for j in range(n)), name=f"ovoid:{q}",
                  arith=(0, q + 1, n), expect=Expect("OA", q**4, n, q, 3, q))


def raaphorst(q: int) -> Recipe:
    """A_0({alpha, alpha^-1}, [0, q^2+q]) for t = 3: a CA(2q^3 - 1; 3, q^2+q+1, q)."""
    p, e = _pe(q)
    k = q * q + q + 1
    return Recipe(p, e, 3, (1, q**3 - 2), tuple(range(k)), name=f"raaphorst:{q}",
                  arith=(0, 1, k), expect=Expect("CA", 2 * q**3 - 1, k, q, 3, 1))


def builtin_recipes() -> dict[str, Recipe]:
    out = {name: parse_recipe(text) for name, text in _TABLE_TEXT.items()}
    for q, t in ((2, 3), (3, 3), (3, 4), (4, 3)):
        r = raoham(q, t)
        out[r.name] = r
    for q in (3, 4, 5):
        out[f"ovoid:{q}"] = ovoid(q)
    for q in (2, 3, 4, 5):
        out[f"raaphorst:{q}"] = raaphorst(q)
    return out


def lookup_recipe(spec: str) -> Recipe:
    """A builtin name, or a parametric form such as raoham:3:4, ovoid:5, raaphorst:7."""
    table = builtin_recipes()
    if spec in table:
        return table[spec]
    head, *args = spec.split(":")
    makers = {"raoham": (raoham, 2), "ovoid": (ovoid, 1), "raaphorst": (raaphorst, 1)}
    if head in makers and len(args) == makers[head][1]:
        return makers[head][0](*(_int(head, a) for a in args))
    raise KeyError(spec)


# execution -------------------------------------------------------------------

def recipe_tower(r: Recipe) -> FieldTower:
    return build_tower(r.p, r.e, r.t, r.base_poly, r.ext_poly)


def build_from_recipe(r: Recipe, tower: FieldTower | None = None) -> SymbolArray:
    tower = tower or recipe_tower(r)
    if r.v is not None:
        if len(r.exps) != 1:
            raise MalformedValue("a mod-v recipe takes exactly one exponent")
        return build_mod_v_array(tower, r.exps[0], r.columns, r.v)
    return build_concat_array(tower, r.exps, r.columns, r.zero_row)


def check_expect(r: Recipe, array: SymbolArray) -> CoverageReport | None:
    """Verify the recipe's expect block; raises PostVerificationFailed on any mismatch."""
    ex = r.expect
    if ex is None:
        return None
    for key, got in (("N", array.rows), ("k", array.cols), ("v", array.v)):
        want = getattr(ex, key)
        if want is not None and want != got:
            raise PostVerificationFailed(f"{r.name}: expected {key}={want}, built {got}")
    t = ex.t if ex.t is not None else r.t
    if ex.kind == "OA":
        report = verify_oa(array, t)
        if report.lambda_target != ex.index:
            raise PostVerificationFailed(
                f"{r.name}: expected index {ex.index}, array has {report.lambda_target}")
    else:
        report = verify_ca(array, t, ex.index)
    if not report.verdict:
        raise PostVerificationFailed(f"{r.name}: {report.summary()}")
    return report


def construct_from_recipe(r: Recipe, check: bool = True) -> tuple[SymbolArray, CoverageReport | None]:
    array = build_from_recipe(r)
    return array, (check_expect(r, array) if check else None)


def with_expect(r: Recipe, **changes) -> Recipe:
    return replace(r, expect=replace(r.expect or Expect(), **changes))
