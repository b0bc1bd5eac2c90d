"""Dense univariate polynomials over Q as coefficient tuples.

Coefficients are stored lowest degree first (``c[i]`` multiplies ``z**i``)
and trailing zeros are always stripped, so the zero polynomial is ``()``.
Integer-only callers can pass ints; results are Fractions unless the routine
says otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import sympy

Poly = tuple


def trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(c: Poly) -> int:
    return len(c) - 1 if c else -1


def lc(c: Poly):
    return c[-1] if c else 0


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, k) -> Poly:
    return trim(k * x for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def power(a: Poly, n: int) -> Poly:
    if n < 0:
        raise ValueError("negative polynomial power")
    result: Poly = (1,)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def divmod_(a: Poly, b: Poly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = Fraction(1) / Fraction(b[-1])
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] * inv
        if coef:
            q[i - db] = coef
            for j, y in enumerate(b):
                a[i - db + j] -= coef * y
    return trim(q), trim(a[:db])


def monic(a: Poly) -> Poly:
    if not a:
        return ()
    inv = Fraction(1) / Fraction(a[-1])
    return tuple(Fraction(x) * inv for x in a)


def gcd(a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a) if a else ()


def evaluate(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a: Poly) -> Poly:
    return trim(i * a[i] for i in range(1, len(a)))


def is_integral(a: Poly) -> bool:
    return all(Fraction(x).denominator == 1 for x in a)


def to_ints(a: Poly) -> tuple:
    return tuple(int(Fraction(x)) for x in a)


def content_primitive(a: Poly):
    """Split an integer polynomial into (content, primitive part) with lc > 0."""
    from math import gcd as igcd

    ints = to_ints(a)
    g = 0
    for x in ints:
        g = igcd(g, x)
    if g == 0:
        return 0, ()
    if ints[-1] < 0:
        g = -g
    return g, tuple(x // g for x in ints)


def _to_sympy(a: Poly, var):
    return sympy.Poly([sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in reversed(a)], var, domain="QQ")


def _from_sympy(p) -> Poly:
    return trim(Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs()))


_Z = sympy.Symbol("z")


@lru_cache(maxsize=4096)
def factor_monic(a: Poly):
    """Factor over Q into monic irreducibles.

    Returns ``(leading_coefficient, ((factor, multiplicity), ...))`` with the
    factors sorted by (degree, coefficients) so the output is deterministic.
    """
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    if deg(a) == 0:
        return Fraction(a[0]), ()
    _, facs = _to_sympy(a, _Z).factor_list()
    out = []
    for f, m in facs:
        out.append((monic(_from_sympy(f)), int(m)))
    out.sort(key=lambda fm: (deg(fm[0]), fm[0]))
    return Fraction(lc(a)), tuple(out)


def is_irreducible(a: Poly) -> bool:
    if deg(a) < 1:
        return False
    return bool(_to_sympy(a, _Z).is_irreducible)


def resultant_power_poly(f: Poly, m: int) -> Poly:
    """Integer polynomial vanishing at ``alpha**m`` for every root alpha of f (m >= 1)."""
    y, x = sympy.symbols("y x")
    fy = sum(sympy.Integer(int(c)) * y**i for i, c in enumerate(f))
    r = sympy.resultant(fy, x - y**m, y)
    p = sympy.Poly(r, x)
    return trim(int(c) for c in reversed(p.all_coeffs()))


# ---------------------------------------------------------------- parsing

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:\s*/\s*\d+)?)\s*\*?\s*)?
        (?:(?P<var>[a-zA-Z])\s*(?:(?:\^|\*\*)\s*(?P<exp>\d+))?)?
        \s*""",
    re.VERBOSE,
)


class PolyParseError(ValueError):
    pass


def parse(text: str, var: str | None = None) -> Poly:
    """Parse ``c_k*x^k +- ... +- c_0`` into an ascending coefficient tuple.

    Coefficients may be integers or ``a/b``; ``^`` and ``**`` both mean power.
    One variable name is allowed per string (``var`` pins it if given).
    """
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    seen_var = var
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise PolyParseError(f"cannot parse polynomial near {s[pos:]!r}")
        if m.group("sign") is None and not first:
            raise PolyParseError(f"missing operator near {s[pos:]!r}")
        if m.group("coef") is None and m.group("var") is None:
            raise PolyParseError(f"dangling sign near {s[pos:]!r}")
        coef = Fraction(m.group("coef").replace(" ", "")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("var"):
            if seen_var is None:
                seen_var = m.group("var")
            elif m.group("var") != seen_var:
                raise PolyParseError(f"mixed variables {seen_var!r} and {m.group('var')!r}")
            e = int(m.group("exp")) if m.group("exp") else 1
        else:
            if m.group("exp"):
                raise PolyParseError("exponent without variable")
            e = 0
        coeffs[e] = coeffs.get(e, Fraction(0)) + coef
        pos = m.end()
        first = False
    top = max(coeffs) if coeffs else 0
    return trim(coeffs.get(i, Fraction(0)) for i in range(top + 1))


def format_poly(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = Fraction(a[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
