"""Evaluators for the explicit constants and bounds of the Catalan argument.

Wherever the source argument hides a constant inside ``O(.)`` the evaluator
reads it from :class:`AbsoluteConstants` under a per-site key (``SITES``);
nothing here fixes those constants.  Large bounds come back as
:class:`~catalanbounds.extscalar.ExtScalar`; the small named constants of the
linear-forms estimates are plain ``mpf`` reals.

With ``monotone_envelope`` on (the default), the few factors that are not
monotone in their parameter are replaced by a larger, monotone expression,
so every bound is nondecreasing in every numeric input.  The replacement is
logged in the report notes.  Turning the mode off gives the raw formulas.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import sympy

from .extscalar import (
    ExtScalar,
    ctx as mp,
    ext_cmp,
    ext_exp,
    ext_from_log,
    ext_from_real,
    ext_ln,
    ext_max,
    ext_mul,
    ext_pow,
    mpf,
)
from .numfield import NumberFieldParams, RationalPlace, abs_value

__all__ = [
    "SITES",
    "AbsoluteConstants",
    "BoundReport",
    "SuperellipticInstance",
    "PreconditionError",
    "log_star",
    "voutier_c1",
    "c2_constant",
    "rs_lower",
    "rh_upper",
    "rs_upper",
    "sunit_system_bounds",
    "hsmall_bound",
    "suniteq_height_bound",
    "matveev_a1",
    "matveev_linear_form_bound",
    "lmatveev_a2",
    "lambda_form_bound",
    "yu_constants",
    "yu_ord_bound",
    "hhat",
    "superelliptic_height_bound",
    "hyperelliptic_height_bound",
    "schinzel_tijdeman_bound",
    "t8_exponent_bound",
    "catalana_prime_value",
    "catalana_prime_bound",
    "catalana_height_bound",
    "catalana_general_bound",
    "pfinal2_bound",
    "estimates2_threshold",
    "fg_bounds",
    "fg_parameter_chain",
]

# One key per O(.) occurrence; the two S-unit lemmas are deliberately separate.
SITES = (
    "fundamental-sunits",
    "sunit-equation",
    "key-exponent",
    "catalan-prime-exponent",
    "catalan-final-exponent",
    "fg-transcendental",
    "fg-algebraic",
    "fg-chain",
)

E = mp.e
PI = mp.pi


class PreconditionError(ValueError):
    """Inputs violate a hypothesis of the formula being evaluated."""


def _num(x):
    """Exact-ish conversion of a real input to mpf."""
    if isinstance(x, ExtScalar):
        v = x.to_mpf()
        if v is None:
            raise PreconditionError("parameter too large for a real-valued formula")
        return v
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, bool):
        raise TypeError("bool is not numeric")
    return mpf(x)


# ------------------------------------------------------------ constants


@dataclass(frozen=True)
class AbsoluteConstants:
    """Values standing in for the implicit ``O(.)`` constants.

    ``c_O`` is the default; ``sites`` overrides it per key of :data:`SITES`.
    """

    c_O: float = 1.0
    sites: tuple = ()
    monotone_envelope: bool = True

    def __post_init__(self):
        sites = self.sites.items() if isinstance(self.sites, dict) else self.sites
        sites = tuple(sorted((str(k), float(v)) for k, v in sites))
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "c_O", float(self.c_O))
        for key, _ in sites:
            if key not in SITES:
                raise ValueError(f"unknown O-constant site {key!r}; known: {', '.join(SITES)}")
        values = [self.c_O] + [v for _, v in sites]
        if any(not math.isfinite(v) or v <= 0 for v in values):
            raise ValueError("absolute constants must be positive and finite")
        if self.monotone_envelope and any(v < 1 for v in values):
            raise ValueError("absolute constants must be >= 1 in monotone-envelope mode")

    def get(self, site: str) -> float:
        if site not in SITES:
            raise KeyError(site)
        return dict(self.sites).get(site, self.c_O)

    def with_site(self, site: str, value: float) -> "AbsoluteConstants":
        s = dict(self.sites)
        s[site] = value
        return AbsoluteConstants(self.c_O, s, self.monotone_envelope)

    def to_json(self) -> dict:
        return {"c_O": self.c_O, "sites": dict(self.sites), "monotone_envelope": self.monotone_envelope}

    @classmethod
    def from_json(cls, obj: dict) -> "AbsoluteConstants":
        unknown = set(obj) - {"c_O", "sites", "monotone_envelope"}
        if unknown:
            raise ValueError(f"unknown constants keys: {sorted(unknown)}")
        return cls(
            float(obj.get("c_O", 1.0)),
            dict(obj.get("sites", {})),
            bool(obj.get("monotone_envelope", True)),
        )

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "AbsoluteConstants":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


DEFAULT_CONSTANTS = AbsoluteConstants()


def _consts(c):
    return DEFAULT_CONSTANTS if c is None else c


# --------------------------------------------------------------- report


def _jsonable(v):
    if isinstance(v, ExtScalar):
        return v.to_json()
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return v
    if hasattr(v, "_mpf_"):
        return mp.nstr(v, 30)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, Real):
        return float(v)
    return str(v)


@dataclass(frozen=True)
class BoundReport:
    formula_id: str
    inputs: dict
    constants: AbsoluteConstants
    bound: ExtScalar
    notes: tuple = ()
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "formula_id": self.formula_id,
            "inputs": _jsonable(self.inputs),
            "constants": self.constants.to_json(),
            "bound": self.bound.to_json(),
            "notes": list(self.notes),
        }
        if self.extra:
            out["extra"] = _jsonable(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _report(formula_id, inputs, consts, bound, notes=(), extra=None) -> BoundReport:
    if not isinstance(bound, ExtScalar):
        bound = ext_from_real(bound)
    return BoundReport(formula_id, dict(inputs), _consts(consts), bound, tuple(notes), dict(extra or {}))


def _note(notes, msg):
    if notes is not None:
        notes.append(msg)


# --------------------------------------------------------------- helpers


def _X(x) -> ExtScalar:
    return x if isinstance(x, ExtScalar) else ext_from_real(_num(x))


def _prod(*xs) -> ExtScalar:
    acc = ext_from_real(1)
    for x in xs:
        acc = ext_mul(acc, _X(x))
    return acc


def log_star(x) -> ExtScalar:
    """``max(1, log x)`` as an ExtScalar."""
    L = ext_ln(_X(x))
    if not isinstance(L, ExtScalar):
        return ext_from_real(1)
    return ext_max(L, ext_from_real(1))


def _two_s_power(s, c) -> ExtScalar:
    """``(2s)^(c*s)``."""
    return ext_pow(ext_from_real(2 * _num(s)), mpf(c) * _num(s))


def _check(cond, msg):
    if not cond:
        raise PreconditionError(msg)


# ----------------------------------------------- small named constants


def voutier_c1(d: int):
    """Lower bound for ``d * h(alpha)``: ``log 2 / log(3d)^3``."""
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    return mp.ln2 / mp.log(3 * mpf(d)) ** 3


def c2_constant(r: int, d: int):
    """The unit-rank constant: 0, 1/d, or ``29 e r! r sqrt(r-1) log d``."""
    _check(int(r) == r and r >= 0, "unit rank must be a non-negative integer")
    _check(int(d) == d and d >= 1, "degree must be an integer >= 1")
    if r == 0:
        return mpf(0)
    if r == 1:
        return 1 / mpf(d)
    _check(d >= 2, "rank >= 2 needs degree >= 2")
    return 29 * E * mp.factorial(r) * r * mp.sqrt(r - 1) * mp.log(d)


def rs_lower(t: int):
    """Lower bound ``0.2052 (log 2)^t`` for the S-regulator."""
    _check(int(t) == t and t >= 0, "t must be a non-negative integer")
    return mpf("0.2052") * mp.ln2**t


def rh_upper(d: int, abs_disc) -> ExtScalar:
    """``|D_K|^(1/2) (log* |D_K|)^(d-1)``."""
    _check(int(d) == d and d >= 1, "degree must be an integer >= 1")
    D = _X(abs_disc)
    _check(ext_cmp(D, 1) >= 0, "|D_K| must be >= 1")
    return ext_mul(ext_pow(D, mpf("0.5")), ext_pow(log_star(D), d - 1))


def rs_upper(d: int, abs_disc, finite_norms, consts=None, notes=None) -> ExtScalar:
    """``rh_upper * prod log N(p_i)``.

    ``log N(p)`` is below 1 for N(p) = 2; the envelope uses ``log*`` there.
    """
    c = _consts(consts)
    acc = rh_upper(d, abs_disc)
    for n in finite_norms:
        _check(int(n) >= 2, "finite norms must be >= 2")
        if c.monotone_envelope:
            if int(n) == 2:
                _note(notes, "log N(p) replaced by log* N(p) for N(p) = 2")
            acc = ext_mul(acc, log_star(int(n)))
        else:
            acc = ext_mul(acc, mp.log(int(n)))
    return acc


def sunit_system_bounds(s: int, R_S, consts=None) -> dict:
    """Sizes attached to a fundamental system of S-units.

    ``prod_bound`` and ``each_bound`` are ``(2s)^(c s) R_S``;
    ``inverse_matrix_bound`` is ``(2s)^(c s)``.
    """
    _check(int(s) == s and s >= 2, "s must be an integer >= 2")
    _check(_num(R_S) > 0, "R_S must be positive")
    k = _two_s_power(s, _consts(consts).get("fundamental-sunits"))
    each = ext_mul(k, _X(R_S))
    return {"prod_bound": each, "each_bound": each, "inverse_matrix_bound": k}


def _hsmall_raw(d, logNS, n, R, h_class, Q, r):
    if r is None:
        c2 = max(c2_constant(rr, d) for rr in range(0, d))
    else:
        c2 = c2_constant(r, d)
    return logNS / d + n * (c2 * R + mpf(h_class) / d * mp.log(Q))


def hsmall_bound(d, logNS, n, R, h_class, Q, consts=None, r=None, notes=None):
    """Height of a small generator: ``logNS/d + n (c2(r,d) R + (h/d) log Q)``.

    Without ``r`` the largest ``c2(r', d)`` over ``r' <= d - 1`` is used.  The
    envelope takes the maximum over degrees ``d' <= d`` since the ``1/d``
    terms decrease in d.
    """
    _check(int(d) == d and d >= 1, "degree must be an integer >= 1")
    _check(int(n) == n and n >= 1, "n must be an integer >= 1")
    _check(r is None or 0 <= r <= d - 1, "unit rank must lie in [0, d-1]")
    logNS, R, Q = _num(logNS), _num(R), _num(Q)
    _check(logNS >= 0 and R >= 0 and Q >= 1 and h_class >= 1, "need logNS >= 0, R >= 0, Q >= 1, h >= 1")
    if not _consts(consts).monotone_envelope:
        return _hsmall_raw(d, logNS, n, R, h_class, Q, r)
    lo = 1 if r is None else max(1, r + 1)
    best = max(_hsmall_raw(dd, logNS, n, R, h_class, Q, r) for dd in range(lo, d + 1))
    if best > _hsmall_raw(d, logNS, n, R, h_class, Q, r):
        _note(notes, "envelope: maximum over degrees d' <= d exceeds the raw value")
    return best


def suniteq_height_bound(s, P, H, R_S, consts=None, notes=None) -> ExtScalar:
    """``(2s)^(c s) (P/log P) H R_S max(log P, log* R_S)``."""
    c = _consts(consts)
    _check(int(s) == s and s >= 1, "s must be an integer >= 1")
    P, H, R_S = _num(P), _num(H), _num(R_S)
    _check(P >= 2, "P must be >= 2")
    _check(H >= 1 and R_S > 0, "need H >= 1 and R_S > 0")
    ratio = P / mp.log(P)
    if c.monotone_envelope:
        floor = 2 / mp.ln2
        if ratio < floor:
            _note(notes, "envelope: P/log P raised to its value at P = 2")
            ratio = floor
    tail = max(mp.log(P), mp.log(R_S) if R_S > E else mpf(1))
    return _prod(_two_s_power(s, c.get("sunit-equation")), ratio, H, R_S, tail)


# ----------------------------------------------- linear forms in logs


def _matveev_branches(n, d, real_field, shift):
    chi = 1 if real_field else 2
    m = n + shift
    first = (E * m / 2) ** chi / chi * mpf(30) ** (n + 3 + shift) * mpf(m) ** mpf("3.5")
    second = mpf(2) ** (6 * n + 20 + 6 * shift)
    return first, second, d * d * mp.log(E * d)


def matveev_a1(n: int, d: int, real_field: bool = False, notes=None):
    """``min{(1/chi)(en/2)^chi 30^(n+3) n^3.5, 2^(6n+20)} d^2 log(ed)``."""
    _check(int(n) == n and n >= 2, "n must be an integer >= 2")
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    first, second, tail = _matveev_branches(n, d, real_field, 0)
    _note(notes, "a1 branch: " + ("chi-power" if first <= second else "power-of-two"))
    return min(first, second) * tail


def matveev_linear_form_bound(A, B, n, d, real_field: bool = False):
    """``a1 * prod(A_i) * log(eB)``; the linear form satisfies ``log|L| > -result``."""
    A = [_num(a) for a in A]
    _check(len(A) == n, "need exactly n height parameters")
    _check(all(a >= mpf("0.16") for a in A), "each A_i must be >= 0.16")
    _check(_num(B) >= 1, "B must be >= 1")
    return matveev_a1(n, d, real_field) * mp.fprod(A) * mp.log(E * _num(B))


def lmatveev_a2(n: int, d: int, real_field: bool = False, notes=None):
    """``2 pi min{(1/chi)(e(n+1)/2)^chi 30^(n+4) (n+1)^3.5, 2^(6n+26)} d^2 log(ed)``."""
    _check(int(n) == n and n >= 2, "n must be an integer >= 2")
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    first, second, tail = _matveev_branches(n, d, real_field, 1)
    _note(notes, "a2 branch: " + ("chi-power" if first <= second else "power-of-two"))
    return 2 * PI * min(first, second) * tail


def lambda_form_bound(Aprime, Bprime, n, d, real_field: bool = False):
    """``a2 * prod(A'_i) * log(e(n+1)B')`` with ``A'_i = d h(alpha_i) + pi``."""
    A = [_num(a) for a in Aprime]
    _check(all(a >= PI for a in A), "each A'_i must be >= pi")
    _check(_num(Bprime) >= 1, "B' must be >= 1")
    return lmatveev_a2(n, d, real_field) * mp.fprod(A) * mp.log(E * (n + 1) * _num(Bprime))


def yu_constants(n: int, d: int) -> dict:
    _check(int(n) == n and n >= 1, "n must be an integer >= 1")
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    n, d = int(n), int(d)
    a3 = (16 * E * d) ** (2 * (n + 1)) * mpf(n) ** mpf("1.5") * mp.log(2 * n * d) * mp.log(2 * d)
    a4 = mpf(2 * d) ** (2 * n + 1) * mp.log(2 * d) * mp.log(3 * d) ** 3
    a5 = 2 * mp.exp((n + 1) * (6 * n + 5)) * mpf(d) ** (3 * n) * mp.log(2 * d)
    return {"a3": a3, "a4": a4, "a5": a5}


def _yu_minimize(Hprod, logC, B, a4, u_lo, u_hi):
    """``min over u in [u_lo, u_hi]`` of ``max(Hprod (logC - log u), u B / a4)``."""

    def f(u):
        return max(Hprod * (logC - mp.log(u)), u * B / a4)

    def gap(u):
        return Hprod * (logC - mp.log(u)) - u * B / a4  # decreasing in u

    if gap(u_hi) >= 0:
        return f(u_hi)
    if gap(u_lo) <= 0:
        return f(u_lo)
    lo, hi = mp.log(u_lo), mp.log(u_hi)
    for _ in range(200):
        mid = (lo + hi) / 2
        if gap(mp.exp(mid)) > 0:
            lo = mid
        else:
            hi = mid
    return f(mp.exp(hi))


def yu_ord_bound(n, d, e_p, N_p, hprimes, B, B_n, delta, consts=None, notes=None):
    """Upper bound for ``ord_p`` of a linear form in n logarithms.

    ``a3 (e_p^n N/(log N)^2) max{h'_1...h'_n log(M/delta), delta B/(B_n a4)}``
    with ``M = B_n a5 N^(n+1) h'_1...h'_(n-1)``.  Heights below
    ``1/(16 e^2 d^2)`` are raised to that floor.  The envelope takes the best
    admissible ``delta' in [delta, 1/2]``, ``B_n' in [B_n, B]`` and replaces
    ``N/(log N)^2`` by its running maximum from N = 2.
    """
    delta, B, B_n = _num(delta), _num(B), _num(B_n)
    _check(0 < delta <= mpf("0.5"), "delta must lie in (0, 1/2]")
    _check(B >= B_n >= 1, "need B >= B_n >= 1")
    _check(int(e_p) == e_p and e_p >= 1, "e_p must be an integer >= 1")
    _check(int(N_p) == N_p and N_p >= 2, "N(p) must be an integer >= 2")
    _check(len(hprimes) == n, "need exactly n modified heights")
    c = _consts(consts)
    k = yu_constants(n, d)
    floor = 1 / (16 * E**2 * mpf(d) ** 2)
    hs = []
    for h in hprimes:
        h = _num(h)
        if h < floor:
            _note(notes, f"h' clamped up to floor 1/(16e^2d^2) from {mp.nstr(h, 10)}")
            h = floor
        hs.append(h)
    N = mpf(int(N_p))
    g = N / mp.log(N) ** 2
    if c.monotone_envelope:
        g2 = 2 / mp.ln2**2
        if g < g2:
            _note(notes, "envelope: N/(log N)^2 raised to its value at N = 2")
            g = g2
    front = k["a3"] * mpf(int(e_p)) ** n * g
    Hprod = mp.fprod(hs)
    logC = mp.log(k["a5"]) + (n + 1) * mp.log(N) + sum(mp.log(h) for h in hs[:-1])
    if c.monotone_envelope:
        inner = _yu_minimize(Hprod, logC, B, k["a4"], delta / B, 1 / (2 * B_n))
    else:
        inner = max(Hprod * (logC + mp.log(B_n) - mp.log(delta)), delta * B / (B_n * k["a4"]))
    return front * inner


# ----------------------------------------------- superelliptic family


def hhat(coeffs, b):
    """``sum_v log max(1, |b|_v, |a_0|_v, ..., |a_n|_v)`` over the places of Q."""
    _check(any(Fraction(x) != 0 for x in coeffs), "coefficients are all zero")
    nz = [Fraction(x) for x in list(coeffs) + [b] if Fraction(x) != 0]
    primes = set()
    for x in nz:
        primes |= set(sympy.factorint(abs(x.numerator))) | set(sympy.factorint(x.denominator))
    places = [RationalPlace.infinite()] + [RationalPlace.finite(p) for p in sorted(primes) if p > 1]
    total = mpf(0)
    for v in places:
        m = max([Fraction(1)] + [abs_value(x, v) for x in nz])
        total += mp.log(mpf(m.numerator) / m.denominator)
    return total


@dataclass(frozen=True)
class SuperellipticInstance:
    """Parameters for ``f(x) = b y^m`` with f of degree n over a field of degree d."""

    n: int
    m: int
    s: int = 1
    d: int = 1
    abs_disc: object = 1
    Q: object = 1
    P: object = 2
    hhat: object = 0

    def __post_init__(self):
        _check(self.n >= 2 and self.m >= 2, "need n >= 2 and m >= 2")
        _check(self.s >= 1 and self.d >= 1, "need s, d >= 1")
        _check(ext_cmp(_X(self.abs_disc), 1) >= 0 and ext_cmp(_X(self.Q), 1) >= 0, "|D_K|, Q must be >= 1")
        _check(ext_cmp(_X(self.P), 2) >= 0, "P must be >= 2")
        _check(_num(self.hhat) >= 0 and mp.isfinite(_num(self.hhat)), "hhat must be finite and >= 0")


def _e_power(x) -> ExtScalar:
    x = _num(x)
    return ext_exp(ext_from_real(x)) if x > 0 else ext_from_real(1)


def superelliptic_height_bound(inst: SuperellipticInstance) -> ExtScalar:
    """``(6ns)^(14 m^3 n^3 s) |D|^(2 m^2 n^2) Q^(3 m^2 n^2) e^(8 m^2 n^3 d hhat)``."""
    n, m, s, d = inst.n, inst.m, inst.s, inst.d
    _check(m >= 3, "superelliptic bound needs m >= 3")
    return _prod(
        ext_pow(6 * n * s, 14 * m**3 * n**3 * s),
        ext_pow(_X(inst.abs_disc), 2 * m * m * n * n),
        ext_pow(_X(inst.Q), 3 * m * m * n * n),
        _e_power(8 * m * m * n**3 * d * _num(inst.hhat)),
    )


def hyperelliptic_height_bound(n, s, abs_disc, Q, d, hhat_value) -> ExtScalar:
    """``(4ns)^(212 n^4 s) |D|^(8n^3) Q^(20n^3) e^(50 n^4 d hhat)``."""
    _check(n >= 3, "hyperelliptic bound needs n >= 3")
    _check(s >= 1 and d >= 1, "need s, d >= 1")
    return _prod(
        ext_pow(4 * n * s, 212 * n**4 * s),
        ext_pow(_X(abs_disc), 8 * n**3),
        ext_pow(_X(Q), 20 * n**3),
        _e_power(50 * n**4 * d * _num(hhat_value)),
    )


def schinzel_tijdeman_bound(n, s, abs_disc, P, d, hhat_value) -> ExtScalar:
    """``(10 n^2 s)^(40 n s) |D|^(6n) P^(n^2) e^(11 n d hhat)``.

    Valid for solutions with y neither 0 nor a root of unity.
    """
    _check(n >= 2, "Schinzel-Tijdeman bound needs n >= 2")
    _check(s >= 1 and d >= 1, "need s, d >= 1")
    return _prod(
        ext_pow(10 * n * n * s, 40 * n * s),
        ext_pow(_X(abs_disc), 6 * n),
        ext_pow(_X(P), n * n),
        _e_power(11 * n * d * _num(hhat_value)),
    )


# ------------------------------------------------------ Catalan bounds


def t8_exponent_bound(s, P, R_S, consts=None) -> ExtScalar:
    """Key exponent estimate ``(2s)^(c s) P^2 R_S^4``."""
    _check(int(s) == s and s >= 1, "s must be an integer >= 1")
    _check(ext_cmp(_X(P), 2) >= 0, "P must be >= 2")
    _check(_num(R_S) > 0, "R_S must be positive")
    return _prod(_two_s_power(s, _consts(consts).get("key-exponent")), ext_pow(_X(P), 2), ext_pow(_X(R_S), 4))


def catalana_prime_value(P, s, abs_disc, consts=None) -> ExtScalar:
    """``(P^2 s)^(c P s) |D|^(6P) P^(P^2)``."""
    c = _consts(consts).get("catalan-prime-exponent")
    P = _X(P)
    _check(ext_cmp(P, 2) >= 0, "P must be >= 2")
    _check(int(s) == s and s >= 1, "s must be an integer >= 1")
    return _prod(
        ext_pow(ext_mul(ext_pow(P, 2), s), ext_mul(P, c * s)),
        ext_pow(_X(abs_disc), ext_mul(P, 6)),
        ext_pow(P, ext_pow(P, 2)),
    )


def _params_inputs(params: NumberFieldParams) -> dict:
    return {
        "degree": params.degree,
        "abs_disc": params.abs_disc,
        "finite_norms": list(params.finite_norms),
        "num_infinite": params.num_infinite,
        "s": params.s,
        "t": params.t,
        "P": params.P,
        "Q": params.Q,
    }


_FINAL_NOTE = (
    "the final exponent estimate is the sharper form; the stated exponent bound "
    "uses the larger expression, which coincides in shape with catalan-prime-exponent"
)


def catalana_prime_bound(params: NumberFieldParams, consts=None) -> BoundReport:
    """c11: bound for prime exponents p, q of S-integral solutions."""
    b = catalana_prime_value(params.P, params.s, params.abs_disc, consts)
    return _report("catalan-prime-exponent", _params_inputs(params), consts, b, [_FINAL_NOTE])


def _catalan_height_value(c11, s, abs_disc, Q) -> ExtScalar:
    c11 = _X(c11)
    e4 = ext_pow(c11, 4)
    return _prod(
        ext_pow(ext_mul(c11, s), ext_pow(c11, 6)),
        ext_pow(_X(abs_disc), e4),
        ext_pow(_X(Q), e4),
    )


def _c11_of(c11):
    return c11.bound if isinstance(c11, BoundReport) else _X(c11)


def catalana_height_bound(c11, s, abs_disc, Q, consts=None) -> BoundReport:
    """``(c11 s)^(c11^6) |D|^(c11^4) Q^(c11^4)``: height of S-integral solutions."""
    c = _c11_of(c11)
    _check(int(s) == s and s >= 1, "s must be an integer >= 1")
    b = _catalan_height_value(c, s, abs_disc, Q)
    return _report("catalan-height", {"c11": c, "s": s, "abs_disc": abs_disc, "Q": Q}, consts, b)


def catalana_general_bound(c11, s, abs_disc, Q, consts=None) -> BoundReport:
    """Bound on ``max(p, q)`` for arbitrary exponents; same expression as the height bound."""
    c = _c11_of(c11)
    _check(int(s) == s and s >= 1, "s must be an integer >= 1")
    b = _catalan_height_value(c, s, abs_disc, Q)
    return _report(
        "catalan-general", {"c11": c, "s": s, "abs_disc": abs_disc, "Q": Q}, consts, b,
        ["identical expression to catalan-height"],
    )


def pfinal2_bound(s, abs_disc, d, P, t, consts=None, notes=None) -> ExtScalar:
    """``(2s)^(c s) |D|^11 (log*|D|)^(22(d-1)) P^18 (log P)^(10t)``.

    ``log P < 1`` at P = 2; the envelope uses ``log* P``.
    """
    c = _consts(consts)
    _check(int(s) == s and s >= 1, "s must be an integer >= 1")
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    _check(int(t) == t and t >= 0, "t must be an integer >= 0")
    D, P = _X(abs_disc), _X(P)
    _check(ext_cmp(P, 2) >= 0, "P must be >= 2")
    if c.monotone_envelope:
        logP = log_star(P)
        if t and ext_cmp(ext_ln(P), 1) < 0:
            _note(notes, "envelope: log P replaced by log* P")
    else:
        logP = ext_ln(P)
        logP = _X(logP)
    return _prod(
        _two_s_power(s, c.get("catalan-final-exponent")),
        ext_pow(D, 11),
        ext_pow(log_star(D), 22 * (d - 1)),
        ext_pow(P, 18),
        ext_pow(logP, 10 * t),
    )


# ------------------------------------------------------------ estimates


GRID = mpf("1.01")


def estimates2_threshold(a, b, c, notes=None):
    """Smallest ``x = 1.01^k`` with ``b^(x/a) > 2 A log A``, ``A = (a/log b) c^(1/a)``.

    Requires ``A > e``.  The returned x is checked to satisfy
    ``a log x + log c < x log b`` before it is returned.
    """
    a, b, c = _num(a), _num(b), _num(c)
    _check(a > 0 and c > 0 and b > 1, "need a > 0, c > 0, b > 1")
    lb = mp.log(b)
    logA = mp.log(a) - mp.log(lb) + mp.log(c) / a
    _check(logA > 1, "hypothesis (a / log b) c^(1/a) > e fails")
    # b^(x/a) > 2 A log A  <=>  x > a (log 2 + log A + log log A) / log b
    x0 = a * (mp.ln2 + logA + mp.log(logA)) / lb
    k = int(mp.floor(mp.log(x0) / mp.log(GRID)))
    while GRID**k <= x0:
        k += 1
    while GRID ** (k - 1) > x0:
        k -= 1
    x = GRID**k
    while not a * mp.log(x) + mp.log(c) < x * lb:
        _note(notes, "grid point failed the log-space check; stepping up")
        k += 1
        x = GRID**k
    return x


# ------------------------------------------------ finitely generated case


def _fg_G(r, d, c) -> ExtScalar:
    """``(2d)^(exp(c r))``."""
    return ext_pow(ext_from_real(2 * _num(d)), ext_from_log(mpf(c) * _num(r)))


def fg_bounds(r, d, h, consts=None) -> dict:
    """Exponent bounds over a finitely generated domain.

    ``transcendental = (2d)^(exp(c r))``;
    ``algebraic = exp(exp(exp((2d)^(exp(c r)) (h + 1))))``.
    """
    _check(int(r) == r and r >= 1, "r must be an integer >= 1")
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    _check(_num(h) >= 1, "h must be >= 1")
    c = _consts(consts)
    trans = _fg_G(r, d, c.get("fg-transcendental"))
    inner = ext_mul(_fg_G(r, d, c.get("fg-algebraic")), _num(h) + 1)
    return {"transcendental": trans, "algebraic": ext_exp(ext_exp(ext_exp(inner)))}


def fg_parameter_chain(r, k, t, d, h, consts=None) -> dict:
    """Field parameters after specialization to a number field.

    ``D_max = d^t``, ``disc_bound = D^(2D-1) exp(E)``, ``s_bound = E`` and
    ``P_bound = Q_bound = exp(E)`` where ``E = (2d)^(exp(c r)) (h+1)``;
    ``pq_transcendental = 2D(1 + G) + 4 D^2 G`` with ``G = (2d)^(exp(c r))``.
    """
    _check(int(r) == r and int(k) == k and r >= 0 and k >= 0, "r, k must be non-negative integers")
    _check(k <= r, "k must not exceed r")
    if t is None:
        t = r - k
    _check(t == r - k, "t must equal r - k")
    _check(int(d) == d and d >= 1, "d must be an integer >= 1")
    _check(_num(h) >= 1, "h must be >= 1")
    cc = _consts(consts).get("fg-chain")
    G = _fg_G(r, d, cc)
    Ebig = ext_mul(G, _num(h) + 1)
    D = ext_pow(ext_from_real(d), t) if t else ext_from_real(1)
    disc = ext_mul(ext_pow(D, _sub1(ext_mul(D, 2))), ext_exp(Ebig))
    pq = ext_mul(ext_mul(D, 2), G + 1) + ext_mul(ext_mul(ext_pow(D, 2), 4), G)
    return {
        "D_max": D,
        "disc_bound": disc,
        "s_bound": Ebig,
        "P_bound": ext_exp(Ebig),
        "Q_bound": ext_exp(Ebig),
        "pq_transcendental": pq,
    }


def _sub1(x: ExtScalar) -> ExtScalar:
    """``x - 1`` for ``x >= 2`` (exact at small sizes, dominated otherwise)."""
    v = x.to_mpf()
    if v is None or v > mpf(10) ** 30:
        return x
    return ext_from_real(v - 1)
