"""Valuations and heights on Q(z), read inside kbar(z).

A finite place of Q(z) is a monic irreducible polynomial pi in Q[z].  Over
the algebraic closure it splits into ``deg pi`` places of kbar(z), all with
the same valuation, so every count over places carries that multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _poly

__all__ = [
    "RationalFunction",
    "FFPlace",
    "MasonInstance",
    "MasonResult",
    "CatalanExponentResult",
    "ff_valuation",
    "support",
    "ff_height",
    "place_sum_height",
    "genus_bound_schmidt",
    "mason_check",
    "ff_catalan_exponent_check",
]


def _frac_poly(c) -> tuple:
    return _poly.trim(Fraction(x) for x in c)


@dataclass(frozen=True)
class RationalFunction:
    """``num/den`` in lowest terms with ``den`` monic; polynomials ascending."""

    num: tuple
    den: tuple = (1,)

    def __post_init__(self):
        num, den = _frac_poly(self.num), _frac_poly(self.den)
        if not den:
            raise ZeroDivisionError("denominator is zero")
        if not num:
            den = (Fraction(1),)
        else:
            g = _poly.gcd(num, den)
            if _poly.deg(g) > 0:
                num = _poly.divmod_(num, g)[0]
                den = _poly.divmod_(den, g)[0]
            k = den[-1]
            num = tuple(c / k for c in num)
            den = tuple(c / k for c in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def parse(cls, num: str, den: str = "1") -> "RationalFunction":
        return cls(_poly.parse(num), _poly.parse(den))

    @classmethod
    def parse_quotient(cls, text: str) -> "RationalFunction":
        """Parse ``(poly) / (poly)``; a bare polynomial is allowed."""
        depth = 0
        split = None
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0 and text[:i].strip().endswith(")"):
                split = i
                break
        strip = lambda s: s.strip()[1:-1] if s.strip().startswith("(") and s.strip().endswith(")") else s
        if split is None:
            return cls(_poly.parse(strip(text)))
        return cls(_poly.parse(strip(text[:split])), _poly.parse(strip(text[split + 1 :])))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((Fraction(c),))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return _poly.deg(self.num) <= 0 and _poly.deg(self.den) == 0

    def __add__(self, o):
        o = _coerce(o)
        return RationalFunction(
            _poly.add(_poly.mul(self.num, o.den), _poly.mul(o.num, self.den)), _poly.mul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_poly.neg(self.num), self.den)

    def __sub__(self, o):
        return self + (-_coerce(o))

    def __rsub__(self, o):
        return _coerce(o) - self

    def __mul__(self, o):
        o = _coerce(o)
        return RationalFunction(_poly.mul(self.num, o.num), _poly.mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, o):
        return self * _coerce(o).inverse()

    def __pow__(self, m: int):
        if m < 0:
            return self.inverse() ** (-m)
        return RationalFunction(_poly.power(self.num, m), _poly.power(self.den, m))

    def __str__(self) -> str:
        if self.den == (1,):
            return _poly.format_poly(self.num, "z")
        return f"({_poly.format_poly(self.num, 'z')})/({_poly.format_poly(self.den, 'z')})"


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.const(x)


@dataclass(frozen=True, order=True)
class FFPlace:
    """Finite place (monic irreducible ``poly``) or the infinite place (``poly=None``)."""

    poly: tuple | None = None

    def __post_init__(self):
        if self.poly is not None:
            p = _frac_poly(self.poly)
            if not p or p[-1] != 1 or not _poly.is_irreducible(p):
                raise ValueError("finite place needs a monic irreducible polynomial")
            object.__setattr__(self, "poly", p)

    @classmethod
    def infinite(cls) -> "FFPlace":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def multiplicity(self) -> int:
        return 1 if self.poly is None else _poly.deg(self.poly)

    def __str__(self) -> str:
        return "inf" if self.poly is None else _poly.format_poly(self.poly, "z")


def _ord(a: tuple, pi: tuple) -> int:
    e = 0
    while True:
        q, r = _poly.divmod_(a, pi)
        if r:
            return e
        a = q
        e += 1


def ff_valuation(x: RationalFunction, v: FFPlace) -> int:
    if x.is_zero:
        raise ValueError("valuation of 0 is undefined")
    if v.is_infinite:
        return _poly.deg(x.den) - _poly.deg(x.num)
    return _ord(x.num, v.poly) - _ord(x.den, v.poly)


def _irreducible_places(a: tuple) -> list[FFPlace]:
    if _poly.deg(a) < 1:
        return []
    _, facs = _poly.factor_monic(a)
    return [FFPlace(f) for f, _ in facs]


def support(x: RationalFunction) -> list[FFPlace]:
    """Places where ``v(x) != 0``, in a fixed order (finite by poly, then infinite)."""
    if x.is_zero:
        raise ValueError("support of 0 is undefined")
    places = sorted(set(_irreducible_places(x.num)) | set(_irreducible_places(x.den)), key=lambda p: p.poly)
    if ff_valuation(x, FFPlace.infinite()) != 0:
        places.append(FFPlace.infinite())
    return places


def ff_height(x: RationalFunction) -> int:
    """``H(x) = max(deg num, deg den)``; zero and constants have height 0."""
    if x.is_zero:
        return 0
    return max(_poly.deg(x.num), _poly.deg(x.den))


def place_sum_height(x: RationalFunction) -> int:
    """``-sum_v mult(v) * min(0, v(x))`` summed over the support directly."""
    if x.is_zero:
        return 0
    return -sum(v.multiplicity * min(0, ff_valuation(x, v)) for v in support(x))


def genus_bound_schmidt(m: int, d: int, max_coeff_deg: int) -> int:
    """Genus bound ``(d - 1) * m * max_coeff_deg`` for a degree-m equation split in degree d."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    if max_coeff_deg < 0:
        raise ValueError("max_coeff_deg must be non-negative")
    return (d - 1) * m * max_coeff_deg


@dataclass(frozen=True)
class MasonResult:
    holds: bool
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {"holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class MasonInstance:
    """An S-unit solution of ``x + y = 1`` in kbar(z) with a genus upper bound."""

    x: RationalFunction
    y: RationalFunction
    S: frozenset = field(default_factory=frozenset)
    genus_bound: int = 0

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))
        if self.genus_bound < 0:
            raise ValueError("genus bound must be non-negative")
        if self.x + self.y != RationalFunction.const(1):
            raise ValueError("x + y != 1")
        if self.x.is_constant or self.y.is_constant:
            raise ValueError("x and y must be nonconstant (constant S-units are not handled)")
        missing = [v for v in support(self.x) + support(self.y) if v not in self.S]
        if missing:
            raise ValueError("x, y are not S-units: missing " + ", ".join(sorted({str(v) for v in missing})))

    @classmethod
    def full_support(cls, x: RationalFunction, genus_bound: int = 0) -> "MasonInstance":
        y = RationalFunction.const(1) - x
        S = frozenset(support(x)) | frozenset(support(y)) if not y.is_zero else frozenset(support(x))
        return cls(x, y, S, genus_bound)

    @property
    def weighted_size(self) -> int:
        return sum(v.multiplicity for v in self.S)


def mason_check(inst: MasonInstance) -> MasonResult:
    lhs = max(ff_height(inst.x), ff_height(inst.y))
    rhs = inst.weighted_size + 2 * inst.genus_bound - 2
    return MasonResult(lhs <= rhs, lhs, rhs)


@dataclass(frozen=True)
class CatalanExponentResult:
    satisfiable: bool
    lhs: int | None = None
    bound: int | None = None
    holds: bool | None = None
    s_size: int | None = None

    def to_json(self) -> dict:
        return {
            "satisfiable": self.satisfiable,
            "lhs": self.lhs,
            "bound": self.bound,
            "holds": self.holds,
            "s_size": self.s_size,
        }


def ff_catalan_exponent_check(
    x: RationalFunction, y: RationalFunction, p: int, q: int, genus_bound: int = 0
) -> CatalanExponentResult:
    """Test ``x^p - y^q = 1`` and, if it holds, the exponent inequality it forces.

    The inequality is ``(p-2)H(x) + (q-2)H(y) <= 2|S| + 4g - 4`` where S is the
    set of poles of x and y, weighted by multiplicity.
    """
    if x.is_constant or y.is_constant:
        raise ValueError("x and y must be nonconstant")
    if p < 2 or q < 2:
        raise ValueError("exponents must exceed 1")
    if x**p - y**q != RationalFunction.const(1):
        return CatalanExponentResult(False)
    poles = {v for v in support(x) if ff_valuation(x, v) < 0}
    poles |= {v for v in support(y) if ff_valuation(y, v) < 0}
    s = sum(v.multiplicity for v in poles)
    lhs = (p - 2) * ff_height(x) + (q - 2) * ff_height(y)
    bound = 2 * s + 4 * genus_bound - 4
    return CatalanExponentResult(True, lhs, bound, lhs <= bound, s)
