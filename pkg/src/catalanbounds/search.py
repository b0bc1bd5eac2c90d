"""Exhaustive windows for Catalan-type equations.

Integer and S-integer searches iterate over y and q, form ``1 +- y^q`` and test
it for a perfect p-th power; they never loop over x.  The integer scan runs
in the kernel chosen by :mod:`catalanbounds._kernels`.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import product

import sympy

from . import _kernels, _poly
from ._pyscan import iroot
from .numfield import SIntegerSolutionCandidate

__all__ = [
    "SearchWindow",
    "catalan_search_integers",
    "catalan_search_s_rationals",
    "superelliptic_search",
    "SuperellipticResult",
    "poly_catalan_search",
    "poly_pth_root",
    "to_json_lines",
    "summary",
]

_SIGNS = {"minus": (1,), "plus": (-1,), "both": (1, -1)}
_SIGN_NAME = {1: "minus", -1: "plus"}


@dataclass(frozen=True)
class SearchWindow:
    """``|x|, |y| <= xy_max`` (numerators and denominators), ``2 <= p, q <= exp_max``."""

    xy_max: int
    exp_max: int
    sign_mode: str = "minus"
    exclude_units: bool = True

    def __post_init__(self):
        if int(self.xy_max) != self.xy_max or self.xy_max < 2:
            raise ValueError("xy_max must be an integer >= 2")
        if int(self.exp_max) != self.exp_max or self.exp_max < 2:
            raise ValueError("exp_max must be an integer >= 2")
        if self.sign_mode not in _SIGNS:
            raise ValueError("sign_mode must be plus, minus or both")

    def keep(self, x, y) -> bool:
        # zero is never a candidate; the unit filter only governs +-1
        if x == 0 or y == 0:
            return False
        return not self.exclude_units or (abs(x) > 1 and abs(y) > 1)


def _shard(args):
    backend, xy_max, exp_max, s, residue, modulus = args
    return s, _kernels.get_scan(backend)(xy_max, exp_max, s, residue, modulus)


def catalan_search_integers(w: SearchWindow, workers: int | None = None, backend: str | None = None) -> list:
    """Every integer solution of ``x^p -+ y^q = 1`` in the window, sorted.

    ``workers > 1`` splits the y-range into that many residue classes and runs
    them in separate processes.
    """
    shards = max(1, int(workers or 1))
    jobs = [(backend, w.xy_max, w.exp_max, s, r, shards) for s in _SIGNS[w.sign_mode] for r in range(shards)]
    if shards == 1:
        parts = [_shard(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=shards) as ex:
            parts = list(ex.map(_shard, jobs))
    out = set()
    for s, hits in parts:
        for x, p, y, q in hits:
            if w.keep(x, y):
                out.add(SIntegerSolutionCandidate(x, p, y, q, _SIGN_NAME[s]))
    return sorted(out, key=_sort_key)


def _sort_key(c: SIntegerSolutionCandidate):
    return (c.sign, Fraction(c.x), c.p, Fraction(c.y), c.q)


def _smooth_denominators(primes, bound):
    dens = [1]
    for p in sorted(set(primes)):
        more = []
        for d in dens:
            v = d * p
            while v <= bound:
                more.append(v)
                v *= p
        dens += more
    return sorted(dens)


def catalan_search_s_rationals(w: SearchWindow, primes) -> list:
    """Solutions in S-integers of Q, ``S = {inf} + primes``.

    ``x = a/b``, ``y = c/e`` in lowest terms with ``|a|, |c| <= xy_max`` and
    ``b, e`` products of the given primes not exceeding ``xy_max``.
    """
    primes = [int(p) for p in primes]
    for p in primes:
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
    X, Emax = w.xy_max, w.exp_max
    dens = _smooth_denominators(primes, X)
    out = set()
    for s in _SIGNS[w.sign_mode]:
        for e in dens:
            for c in range(-X, X + 1):
                if math.gcd(c, e) != 1:
                    continue
                for q in range(2, Emax + 1):
                    # 1 + s' y^q = (e^q + s' c^q) / e^q, already in lowest terms
                    eq = e**q
                    num = eq + c**q if s == 1 else eq - c**q
                    for p in range(2, Emax + 1):
                        b, okb = iroot(eq, p)
                        if not okb or b > X:
                            continue
                        for a in _int_roots(num, p, X):
                            x, y = Fraction(a, b), Fraction(c, e)
                            if w.keep(x, y):
                                out.add(SIntegerSolutionCandidate(x, p, y, q, _SIGN_NAME[s]))
    return sorted(out, key=_sort_key)


def _int_roots(T, p, bound):
    if T == 0:
        return (0,)
    if T < 0:
        if p % 2 == 0:
            return ()
        r, ok = iroot(-T, p)
        return (-r,) if ok and r <= bound else ()
    r, ok = iroot(T, p)
    if not ok or r > bound:
        return ()
    return (r, -r) if p % 2 == 0 else (r,)


@dataclass(frozen=True)
class SuperellipticResult:
    solutions: list
    degenerate: bool

    def to_json(self) -> dict:
        return {"solutions": [list(s) for s in self.solutions], "degenerate": self.degenerate}


def superelliptic_search(f_coeffs, b, m: int, window: int) -> SuperellipticResult:
    """Integer ``(x, y)`` with ``|x|, |y| <= window`` and ``f(x) = b y^m``.

    ``f_coeffs`` are highest degree first.  ``degenerate`` is set when f has a
    repeated root, where finiteness is not expected.
    """
    f = _poly.trim(int(c) for c in reversed(list(f_coeffs)))
    if _poly.deg(f) < 2:
        raise ValueError("f must have degree >= 2")
    if m < 2:
        raise ValueError("m must be >= 2")
    b = int(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    window = int(window)
    sols = []
    for x in range(-window, window + 1):
        v = _poly.evaluate(f, x)
        if v % b:
            continue
        for y in _int_roots(v // b, m, window):
            sols.append((x, y))
    degenerate = _poly.deg(_poly.gcd(f, _poly.derivative(f))) > 0
    return SuperellipticResult(sorted(sols), degenerate)


def poly_pth_root(T: tuple, p: int):
    """Integer polynomial R with ``R**p == T`` (ascending coefficients), or None."""
    T = _poly.trim(T)
    n = _poly.deg(T)
    if n < 0 or n % p:
        return None
    k = n // p
    lead = T[-1]
    if lead < 0 and p % 2 == 0:
        return None
    r0, ok = iroot(abs(lead), p)
    if not ok:
        return None
    r0 = -r0 if lead < 0 else r0
    R = [0] * (k + 1)
    R[k] = r0
    denom = p * r0 ** (p - 1)
    for j in range(1, k + 1):
        cur = _poly.power(tuple(R), p)
        idx = n - j
        diff = T[idx] - (cur[idx] if idx < len(cur) else 0)
        if diff % denom:
            return None
        R[k - j] = diff // denom
    R = tuple(R)
    return R if _poly.power(R, p) == T else None


def _bounded_polys(deg_max, coeff_max):
    rng = range(-coeff_max, coeff_max + 1)
    for dgr in range(1, deg_max + 1):
        for low in product(rng, repeat=dgr):
            for top in rng:
                if top:
                    yield tuple(low) + (top,)


def poly_catalan_search(deg_max: int, coeff_max: int, exp_max: int) -> list:
    """Nonconstant integer polynomials with ``x^p - y^q = 1`` in the box.

    Returns ``(x, p, y, q)`` with x, y as ascending coefficient tuples.
    """
    if deg_max < 1:
        raise ValueError("deg_max must be >= 1 (nonconstant solutions only)")
    if coeff_max < 1 or exp_max < 2:
        raise ValueError("need coeff_max >= 1 and exp_max >= 2")
    out = []
    for y in _bounded_polys(deg_max, coeff_max):
        yq = y
        for q in range(2, exp_max + 1):
            yq = _poly.to_ints(_poly.mul(yq, y))
            T = _poly.add(yq, (1,))
            for p in range(2, exp_max + 1):
                x = poly_pth_root(T, p)
                if x is None or _poly.deg(x) > deg_max or max(abs(c) for c in x) > coeff_max:
                    continue
                for xx in {x, _poly.to_ints(_poly.neg(x))} if p % 2 == 0 else {x}:
                    out.append((tuple(xx), p, y, q))
    return sorted(out)


def to_json_lines(solutions) -> list[str]:
    return [json.dumps(s.to_json(), sort_keys=True) for s in solutions]


def summary(w: SearchWindow, solutions, primes=None) -> dict:
    counts = {"minus": 0, "plus": 0}
    for s in solutions:
        counts[s.sign] += 1
    window = asdict(w)
    if primes is not None:
        window["primes"] = sorted(primes)
    return {"summary": {"window": window, "count": len(solutions), "counts": counts}}
