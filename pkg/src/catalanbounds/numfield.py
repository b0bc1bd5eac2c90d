"""Algebraic numbers, places of Q, and the absolute logarithmic height.

Finite places are only handled over Q.  For an algebraic number of higher
degree the height is computed from its minimal polynomial through the Mahler
measure,

    h(alpha) = (log|a_0| + sum_i max(0, log|alpha_i|)) / deg,

where the root moduli come from certified enclosures (see
:func:`certified_roots`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import sympy
from mpmath.ctx_mp import MPContext

from . import _poly

__all__ = [
    "AlgebraicNumber",
    "RationalPlace",
    "NumberFieldParams",
    "SIntegerSolutionCandidate",
    "HeightAxiomReport",
    "PrecisionError",
    "RootEnclosure",
    "abs_value",
    "ord_p",
    "log_abs_vector",
    "product_formula_check",
    "rational_height",
    "height",
    "mahler_height",
    "height_axiom_suite",
    "northcott_enumerate",
    "certified_roots",
    "is_cyclotomic",
]

START_PREC = 64
MAX_PREC = 4096
HEIGHT_TOL = 1e-10


class PrecisionError(ArithmeticError):
    """Root enclosures could not be certified within the precision cap."""


# ------------------------------------------------------------------ places


@dataclass(frozen=True, order=True)
class RationalPlace:
    """A place of Q: ``prime=None`` is the infinite place."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not sympy.isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def infinite(cls) -> "RationalPlace":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "RationalPlace":
        return cls(int(p))

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


def ord_p(a: Fraction, p: int) -> int:
    a = Fraction(a)
    if a == 0:
        raise ValueError("ord of 0 is undefined")
    e = 0
    n, d = a.numerator, a.denominator
    while n % p == 0:
        n //= p
        e += 1
    while d % p == 0:
        d //= p
        e -= 1
    return e


def abs_value(alpha, v: RationalPlace) -> Fraction:
    """``|alpha|_v`` for rational alpha, as an exact Fraction.

    Finite places use ``p**(-ord_p)``; zero is rejected there.
    """
    a = Fraction(alpha)
    if v.is_infinite:
        return abs(a)
    if a == 0:
        raise ValueError("|0|_p is not defined here (ord is only total on nonzero inputs)")
    return Fraction(v.prime) ** (-ord_p(a, v.prime))


def _prime_support(a: Fraction) -> list[int]:
    ps = set(sympy.factorint(abs(a.numerator))) | set(sympy.factorint(a.denominator))
    return sorted(p for p in ps if p > 1)


def log_abs_vector(alpha) -> dict:
    """``log|alpha|_v`` for each relevant place as integer combinations of log p.

    Returns ``{place: {p: coefficient}}`` where ``log|alpha|_v`` equals
    ``sum(coefficient * log p)``.  Places where the value is 1 are omitted,
    except the infinite place which is always present.
    """
    a = Fraction(alpha)
    if a == 0:
        raise ValueError("alpha must be nonzero")
    out: dict = {RationalPlace.infinite(): {}}
    for p in _prime_support(a):
        e = ord_p(a, p)
        out[RationalPlace.infinite()][p] = e
        out[RationalPlace.finite(p)] = {p: -e}
    return out


def product_formula_check(alpha, symbolic: bool = True) -> float:
    """Sum of ``log|alpha|_v`` over the places of Q (zero by the product formula).

    With ``symbolic=True`` the place contributions are combined as integer
    multiples of ``log p`` before any floating point happens, so the defect of
    a correct computation is exactly ``0.0``.  Otherwise each term is evaluated
    in floating point and summed.
    """
    a = Fraction(alpha)
    if a == 0:
        raise ValueError("alpha must be nonzero")
    if symbolic:
        total: dict[int, int] = {}
        for coeffs in log_abs_vector(a).values():
            for p, c in coeffs.items():
                total[p] = total.get(p, 0) + c
        return float(sum(c * math.log(p) for p, c in total.items() if c))
    s = math.log(abs(a.numerator)) - math.log(a.denominator)
    for p in _prime_support(a):
        s += -ord_p(a, p) * math.log(p)
    return s


def rational_height(alpha) -> float:
    """``h(alpha)`` for rational alpha by summing ``log max(1, |alpha|_v)`` over places."""
    a = Fraction(alpha)
    if a == 0:
        return 0.0
    s = max(0.0, math.log(abs(a.numerator)) - math.log(a.denominator))
    for p in _prime_support(a):
        e = ord_p(a, p)
        if e < 0:
            s += -e * math.log(p)
    return s


# -------------------------------------------------------- certified roots


@dataclass(frozen=True)
class RootEnclosure:
    """Disk ``|z - center| <= radius`` known to contain exactly one root."""

    center: complex
    radius: float
    prec: int


def _exact(x) -> Fraction:
    sign, man, e, _ = x._mpf_
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** int(e))
    return -v if sign else v


def _eval_gauss(coeffs, re, im):
    """Evaluate an integer polynomial at the Gaussian rational re + i*im exactly."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _sqrt_up(q: Fraction, bits: int = 200) -> Fraction:
    """Upper bound for sqrt(q), q >= 0, as a dyadic rational."""
    if q <= 0:
        return Fraction(0)
    scaled = q * (1 << (2 * bits))
    r = math.isqrt(math.ceil(scaled))
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << bits)


def _try_certify(coeffs_asc, prec):
    ctx = MPContext()
    ctx.prec = prec
    desc = [int(c) for c in reversed(coeffs_asc)]
    n = len(desc) - 1
    try:
        roots = ctx.polyroots(desc, maxsteps=200 + 4 * prec, extraprec=2 * prec)
    except ctx.NoConvergence:
        return None
    dcoeffs = _poly.derivative(coeffs_asc)
    disks = []
    for z in roots:
        zc = ctx.mpc(z)
        re, im = _exact(zc.real), _exact(zc.imag)
        fr, fi = _eval_gauss(coeffs_asc, re, im)
        dr, di = _eval_gauss(dcoeffs, re, im)
        dmod2 = dr * dr + di * di
        if dmod2 == 0:
            return None
        # disk of radius n|f/f'| around z holds at least one root
        r2 = Fraction(n * n) * (fr * fr + fi * fi) / dmod2
        disks.append((re, im, _sqrt_up(r2)))
    for i in range(n):
        for j in range(i + 1, n):
            dx = disks[i][0] - disks[j][0]
            dy = disks[i][1] - disks[j][1]
            rsum = disks[i][2] + disks[j][2]
            if dx * dx + dy * dy <= rsum * rsum:
                return None
    disks.sort(key=lambda d: (d[0], d[1]))
    return disks


def _contribution_width(disks):
    """Certified interval for sum_i max(0, log|alpha_i|) from the root disks."""
    lo = 0.0
    hi = 0.0
    ctx = MPContext()
    ctx.prec = 200
    for re, im, r in disks:
        mod_up = _sqrt_up(re * re + im * im) + r
        mod2 = re * re + im * im
        mod_dn = ctx.sqrt(ctx.mpf(mod2.numerator) / mod2.denominator) * (1 - ctx.mpf(2) ** -190) - ctx.mpf(r.numerator) / r.denominator
        up = ctx.log(ctx.mpf(mod_up.numerator) / mod_up.denominator) * (1 + ctx.mpf(2) ** -190)
        hi += float(max(ctx.mpf(0), up))
        if mod_dn > 1:
            lo += float(ctx.log(mod_dn) * (1 - ctx.mpf(2) ** -190))
    return lo, hi


@lru_cache(maxsize=1024)
def _certified(coeffs_asc: tuple, tol: float, start_prec: int = START_PREC):
    prec = start_prec
    while prec <= MAX_PREC:
        disks = _try_certify(coeffs_asc, prec)
        if disks is not None:
            lo, hi = _contribution_width(disks)
            if hi - lo <= tol * max(1, len(disks)) / 4:
                return tuple(disks), lo, hi, prec
        prec *= 2
    raise PrecisionError(
        f"root enclosures for {_poly.format_poly(coeffs_asc)} not certified at {MAX_PREC} bits"
    )


def certified_roots(coeffs_asc) -> list[RootEnclosure]:
    """Isolating disks for all complex roots of a squarefree integer polynomial.

    Ordered lexicographically by (real part, imaginary part) of the centers.
    """
    disks, _, _, prec = _certified(tuple(int(c) for c in coeffs_asc), HEIGHT_TOL)
    return [
        RootEnclosure(complex(float(re), float(im)), float(r), prec) for re, im, r in disks
    ]


@lru_cache(maxsize=1024)
def is_cyclotomic(coeffs_asc: tuple) -> bool:
    """Exact Kronecker test: monic irreducible f divides z^N - 1 with phi(N) = deg f."""
    n = _poly.deg(coeffs_asc)
    if n < 1 or coeffs_asc[-1] != 1:
        return False
    for N in range(1, 2 * n * n + 3):
        if sympy.totient(N) != n:
            continue
        # z^N mod f by repeated squaring with exact integer reduction
        r = _powmod_z(N, coeffs_asc)
        if r == (-1,) or _poly.trim(_poly.add(r, (-1,))) == ():
            return True
    return False


def _powmod_z(N, f):
    result = (1,)
    base = (0, 1)
    while N:
        if N & 1:
            result = _poly.divmod_(_poly.mul(result, base), f)[1]
        N >>= 1
        if N:
            base = _poly.divmod_(_poly.mul(base, base), f)[1]
    return _poly.to_ints(result) if result else ()


# ----------------------------------------------------- algebraic numbers


def _check_min_poly(coeffs_asc) -> tuple:
    c = _poly.trim(int(x) for x in coeffs_asc)
    if _poly.deg(c) < 1:
        raise ValueError("minimal polynomial must have degree >= 1")
    g, prim = _poly.content_primitive(c)
    if abs(g) != 1 or c[-1] < 0:
        raise ValueError("minimal polynomial must be primitive with positive leading coefficient")
    if not _poly.is_irreducible(c):
        raise ValueError(f"{_poly.format_poly(c)} is reducible over Q")
    return c


@dataclass(frozen=True)
class AlgebraicNumber:
    """Root number ``root_index`` of an irreducible primitive integer polynomial.

    ``min_poly`` is stored lowest degree first.  Roots are indexed in the
    order of :func:`certified_roots`.
    """

    min_poly: tuple
    root_index: int = 0

    def __post_init__(self):
        c = _check_min_poly(self.min_poly)
        object.__setattr__(self, "min_poly", c)
        if not 0 <= self.root_index < _poly.deg(c):
            raise ValueError("root_index out of range")

    @classmethod
    def parse(cls, text: str, root_index: int = 0) -> "AlgebraicNumber":
        c = _poly.parse(text)
        if not _poly.is_integral(c):
            raise ValueError("minimal polynomial needs integer coefficients")
        return cls(_poly.to_ints(c), root_index)

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls((-q.numerator, q.denominator), 0)

    @property
    def degree(self) -> int:
        return _poly.deg(self.min_poly)

    def enclosure(self) -> RootEnclosure:
        return certified_roots(self.min_poly)[self.root_index]

    def approx(self) -> complex:
        return self.enclosure().center

    def as_rational(self) -> Fraction | None:
        if self.degree != 1:
            return None
        return Fraction(-self.min_poly[0], self.min_poly[1])

    def __str__(self) -> str:
        return f"root[{self.root_index}] of {_poly.format_poly(self.min_poly)}"


def mahler_height(alpha: AlgebraicNumber, tol: float = HEIGHT_TOL, start_prec: int = START_PREC) -> float:
    """``(log a0 + sum log+|root|) / deg`` from certified root disks, for any degree.

    ``tol`` bounds the width of the certified interval for the root sum.
    """
    f = alpha.min_poly
    _, lo, hi, _ = _certified(tuple(f), tol, max(START_PREC, int(start_prec)))
    return (math.log(f[-1]) + (lo + hi) / 2) / _poly.deg(f)


def height(alpha: AlgebraicNumber, start_prec: int = START_PREC) -> float:
    """Absolute logarithmic height.

    Rationals use the exact place sum, cyclotomic minimal polynomials give 0,
    everything else goes through :func:`mahler_height`.
    """
    f = alpha.min_poly
    if _poly.deg(f) == 1:
        return rational_height(alpha.as_rational())
    if is_cyclotomic(f):
        return 0.0
    return mahler_height(alpha, HEIGHT_TOL, start_prec)


def _power_min_poly(alpha: AlgebraicNumber, m: int) -> tuple:
    """Minimal polynomial of alpha**m (m >= 1) picked by numeric root matching."""
    if m == 1:
        return alpha.min_poly
    r = _poly.resultant_power_poly(alpha.min_poly, m)
    _, facs = _poly.factor_monic(r)
    target = alpha.approx() ** m
    best = None
    for fac, _mult in facs:
        den = 1
        for c in fac:
            den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
        ints = tuple(int(Fraction(c) * den) for c in fac)
        _, prim = _poly.content_primitive(ints)
        val = abs(complex(sum(c * target**i for i, c in enumerate(prim))))
        scale_ = sum(abs(c) * abs(target) ** i for i, c in enumerate(prim)) or 1.0
        score = val / scale_
        if best is None or score < best[0]:
            best = (score, prim)
    return best[1]


def power_height(alpha: AlgebraicNumber, m: int) -> float:
    """``h(alpha**m)`` computed from the minimal polynomial of ``alpha**m``."""
    if m == 0:
        return 0.0
    base = alpha
    if m < 0:
        rev = tuple(reversed(alpha.min_poly))
        if rev[-1] < 0:
            rev = tuple(-c for c in rev)
        base = AlgebraicNumber(rev, 0)
        m = -m
    q = base.as_rational()
    if q is not None:
        return rational_height(q**m)
    return height(AlgebraicNumber(_power_min_poly(base, m), 0))


@dataclass
class HeightAxiomReport:
    """Outcome of :func:`height_axiom_suite`; ``violations`` lists failed checks."""

    checks: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, name, lhs, rhs, ok):
        row = (name, lhs, rhs)
        self.checks.append(row)
        if not ok:
            self.violations.append(row)


def height_axiom_suite(samples, m: int, tol: float = 1e-9) -> HeightAxiomReport:
    """Check the product, sum and power laws of the height on ``samples``.

    Samples may be AlgebraicNumbers or rationals.  The product and sum laws are
    exercised on the rational samples only, where composition is exact.
    """
    report = HeightAxiomReport()
    algs = [s if isinstance(s, AlgebraicNumber) else AlgebraicNumber.from_rational(s) for s in samples]
    rats = [a.as_rational() for a in algs if a.as_rational() is not None]
    for a in algs:
        q = a.as_rational()
        if q == 0:
            continue
        lhs = power_height(a, m)
        rhs = abs(m) * height(a)
        report.add(f"power[{a}; m={m}]", lhs, rhs, abs(lhs - rhs) <= tol)
    if rats:
        hs = sum(rational_height(q) for q in rats)
        prod = Fraction(1)
        for q in rats:
            prod *= q
        lhs = rational_height(prod)
        report.add("product", lhs, hs, lhs <= hs + tol)
        total = sum(rats, Fraction(0))
        lhs = rational_height(total)
        rhs = math.log(len(rats)) + hs
        report.add("sum", lhs, rhs, lhs <= rhs + tol)
    return report


def northcott_enumerate(max_height: float, max_den: int) -> list[Fraction]:
    """All rationals a/b (lowest terms, 1 <= b <= max_den) with h(a/b) <= max_height.

    Over Q the height is ``log max(|a|, |b|)``, so this is the finite set with
    ``max(|a|, b) <= exp(max_height)``, returned sorted.
    """
    if max_height < 0 or max_den < 1:
        raise ValueError("need max_height >= 0 and max_den >= 1")
    bound = math.floor(math.exp(max_height) * (1 + 1e-12))
    out = {Fraction(0)}
    for b in range(1, min(max_den, bound) + 1):
        for a in range(1, bound + 1):
            if math.gcd(a, b) == 1:
                out.add(Fraction(a, b))
                out.add(Fraction(-a, b))
    return sorted(out)


# --------------------------------------------------------- field data


def _prime_power(n: int):
    f = sympy.factorint(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


@dataclass(frozen=True)
class NumberFieldParams:
    """Field and place data consumed by the bound evaluators.

    ``finite_norms`` are the norms p**f of the finite places in S, and
    ``num_infinite`` counts the infinite places r1 + r2.
    """

    degree: int
    abs_disc: object = 1
    finite_norms: tuple = ()
    num_infinite: int = 1

    def __post_init__(self):
        object.__setattr__(self, "finite_norms", tuple(int(n) for n in self.finite_norms))
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if not 1 <= self.num_infinite <= self.degree:
            raise ValueError("need 1 <= num_infinite <= degree")
        for n in self.finite_norms:
            pp = _prime_power(n) if n > 1 else None
            if pp is None or pp[1] > self.degree:
                raise ValueError(f"norm {n} is not p^f with 1 <= f <= degree")
        if not isinstance(self.abs_disc, (int,)) and not hasattr(self.abs_disc, "level"):
            raise TypeError("abs_disc must be an int or ExtScalar")
        if isinstance(self.abs_disc, int) and self.abs_disc < 1:
            raise ValueError("|D_K| must be positive")

    @property
    def t(self) -> int:
        return len(self.finite_norms)

    @property
    def s(self) -> int:
        return self.num_infinite + self.t

    @property
    def P(self) -> int:
        return max((2,) + self.finite_norms)

    @property
    def Q(self) -> int:
        q = 1
        for n in self.finite_norms:
            q *= n
        return q


@dataclass(frozen=True, order=True)
class SIntegerSolutionCandidate:
    """A solution of ``x^p - y^q = 1`` (sign 'minus') or ``x^p + y^q = 1`` ('plus')."""

    x: object
    p: int
    y: object
    q: int
    sign: str = "minus"

    def __post_init__(self):
        if int(self.p) != self.p or int(self.q) != self.q or self.p < 2 or self.q < 2:
            raise ValueError("exponents must be integers > 1")
        if Fraction(self.x) == 0 or Fraction(self.y) == 0:
            raise ValueError("x and y must be nonzero")
        if self.sign not in ("minus", "plus"):
            raise ValueError("sign must be 'minus' or 'plus'")

    def verify(self) -> bool:
        x, y = Fraction(self.x), Fraction(self.y)
        if self.sign == "minus":
            return x**self.p - y**self.q == 1
        return x**self.p + y**self.q == 1

    def to_json(self) -> dict:
        def enc(v):
            v = Fraction(v)
            return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

        return {"x": enc(self.x), "p": self.p, "y": enc(self.y), "q": self.q, "sign": self.sign}
