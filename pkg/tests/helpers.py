"""Shared generators and check harnesses for the unit and acceptance tests."""

import math
import random
from fractions import Fraction

import mpmath

from catalanbounds import bounds as B
from catalanbounds.extscalar import ExtScalar, ext_cmp, ext_exp, ext_ln
from catalanbounds.funcfield import RationalFunction
from catalanbounds.numfield import NumberFieldParams

REF = mpmath.MPContext()
REF.prec = 240
REF_VMAX = REF.mpf(10) ** 15


def iter_log(x: ExtScalar, k: int):
    """``ln^k(x)`` as an mpf (None when an intermediate log is <= 0)."""
    lv, v = x.canonical().level, x.canonical().value
    v = REF.mpf(v)
    while k and lv:
        lv -= 1
        k -= 1
    for _ in range(lv):
        v = REF.exp(v)
    for _ in range(k):
        if v <= 0:
            return None
        v = REF.log(v)
    return v


def log_close(got, want, rel=1e-6, abs_tol=1e-12) -> bool:
    got, want = REF.mpf(got), REF.mpf(want)
    return abs(got - want) <= max(abs_tol, rel * abs(want))


def ref_canonical(level: int, v):
    """Independent canonical form at 240 bits (promote past 1e15, demote while exp(v) < 1e15)."""
    v = REF.mpf(v)
    while level > 0 and v < 0:
        v = REF.exp(v)
        level -= 1
    while v >= REF_VMAX:
        v = REF.log(v)
        level += 1
    while level > 0 and REF.exp(v) < REF_VMAX:
        v = REF.exp(v)
        level -= 1
    return level, v


def random_ext(rng: random.Random, level=None) -> ExtScalar:
    L = rng.randint(0, 3) if level is None else level
    if L == 0:
        v = 10 ** rng.uniform(-12, 14.9)
    else:
        v = rng.choice([rng.uniform(-20, 40), 10 ** rng.uniform(-6, 14.9)])
    return ExtScalar(L, v)


def random_rational(rng: random.Random, bound: int = 10**6) -> Fraction:
    while True:
        n = rng.randint(-bound, bound)
        if n:
            return Fraction(n, rng.randint(1, bound))


def random_poly(rng, deg, coeff=5, nonzero_lead=True):
    c = [Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3)) for _ in range(deg + 1)]
    if nonzero_lead and c[-1] == 0:
        c[-1] = Fraction(1)
    return tuple(c)


def random_rf(rng, max_deg=5, nonconstant=False) -> RationalFunction:
    while True:
        x = RationalFunction(random_poly(rng, rng.randint(0, max_deg)), random_poly(rng, rng.randint(0, max_deg)))
        if x.is_zero:
            continue
        if nonconstant and x.is_constant:
            continue
        return x


# -------------------------------------------------- monotonicity harness


class Spec:
    """Parameter box for a bound evaluator: name -> (lo, hi, is_int)."""

    def __init__(self, name, fn, params, valid=lambda p: True):
        self.name, self.fn, self.params, self.valid = name, fn, params, valid

    def sample(self, rng):
        while True:
            p = {}
            for k, (lo, hi, is_int) in self.params.items():
                if is_int:
                    p[k] = rng.randint(lo, hi)
                else:
                    p[k] = math.exp(rng.uniform(math.log(lo), math.log(hi))) if lo > 0 else rng.uniform(lo, hi)
            if self.valid(p):
                return p

    def bump(self, rng, p):
        for _ in range(1000):
            q = dict(p)
            keys = rng.sample(sorted(self.params), rng.randint(1, len(self.params)))
            for k in keys:
                lo, hi, is_int = self.params[k]
                if is_int:
                    q[k] = rng.randint(p[k], max(p[k], min(hi, p[k] + 3)))
                else:
                    q[k] = min(hi, p[k] * rng.uniform(1.0, 3.0)) if p[k] > 0 else p[k] + rng.uniform(0, 1)
            if self.valid(q):
                return q
        return dict(p)


def _outs(v):
    return list(v.values()) if isinstance(v, dict) else [v]


def _as_ext(v):
    if isinstance(v, ExtScalar):
        return v
    if isinstance(v, B.BoundReport):
        return v.bound
    return B._X(v)


def monotone_violations(spec: Spec, pairs: int, seed: int):
    rng = random.Random(seed)
    bad = []
    for _ in range(pairs):
        p = spec.sample(rng)
        q = spec.bump(rng, p)
        a, b = _outs(spec.fn(**p)), _outs(spec.fn(**q))
        for x, y in zip(a, b):
            if ext_cmp(_as_ext(x), _as_ext(y)) > 0:
                bad.append((p, q))
                break
    return bad


def _nf(degree, disc, norms, inf):
    return NumberFieldParams(degree, disc, tuple(norms), inf)


MONOTONE_SPECS = [
    Spec("rh_upper", lambda d, D: B.rh_upper(d, D), {"d": (1, 12, True), "D": (1, 10**9, True)}),
    Spec(
        "rs_upper",
        lambda d, D, N1, N2: B.rs_upper(d, D, [N1, N2]),
        {"d": (1, 12, True), "D": (1, 10**9, True), "N1": (2, 1000, True), "N2": (2, 1000, True)},
    ),
    Spec("sunit_system_bounds", lambda s, R: B.sunit_system_bounds(s, R), {"s": (2, 40, True), "R": (0.01, 1e6, False)}),
    Spec(
        "hsmall_bound",
        lambda d, L, n, R, h, Q: B.hsmall_bound(d, L, n, R, h, Q),
        {"d": (1, 12, True), "L": (0.0, 50.0, False), "n": (1, 10, True), "R": (0.0, 100.0, False), "h": (1, 20, True), "Q": (1.0, 1e6, False)},
    ),
    Spec("suniteq", lambda s, P, H, R: B.suniteq_height_bound(s, P, H, R), {"s": (1, 30, True), "P": (2.0, 1e5, False), "H": (1.0, 1e4, False), "R": (1e-3, 1e5, False)}),
    Spec("matveev_a1", lambda n, d: B.matveev_a1(n, d, False), {"n": (2, 30, True), "d": (1, 50, True)}),
    Spec("matveev_a1_real", lambda n, d: B.matveev_a1(n, d, True), {"n": (2, 30, True), "d": (1, 50, True)}),
    Spec(
        "matveev_linear_form_bound",
        lambda A1, A2, A3, Bv, d: B.matveev_linear_form_bound([A1, A2, A3], Bv, 3, d),
        {"A1": (0.16, 100.0, False), "A2": (0.16, 100.0, False), "A3": (0.16, 100.0, False), "Bv": (1.0, 1e9, False), "d": (1, 20, True)},
    ),
    Spec("lmatveev_a2", lambda n, d: B.lmatveev_a2(n, d, True), {"n": (2, 30, True), "d": (1, 50, True)}),
    Spec(
        "lambda_form_bound",
        lambda A1, A2, Bv, n, d: B.lambda_form_bound([A1, A2], Bv, n, d),
        {"A1": (3.2, 100.0, False), "A2": (3.2, 100.0, False), "Bv": (1.0, 1e9, False), "n": (2, 20, True), "d": (1, 20, True)},
    ),
    Spec("yu_constants", lambda n, d: B.yu_constants(n, d), {"n": (1, 20, True), "d": (1, 30, True)}),
    Spec(
        "yu_ord_bound",
        lambda d, e, N, h1, h2, Bv, Bn, delta: B.yu_ord_bound(2, d, e, N, [h1, h2], Bv, Bn, delta),
        {
            "d": (1, 10, True), "e": (1, 5, True), "N": (2, 10**4, True), "h1": (1e-4, 100.0, False), "h2": (1e-4, 100.0, False),
            "Bv": (1.0, 1e30, False), "Bn": (1.0, 1e30, False), "delta": (1e-6, 0.5, False),
        },
        valid=lambda p: p["Bv"] >= p["Bn"] and p["delta"] <= 0.5,
    ),
    Spec(
        "superelliptic_height_bound",
        lambda n, m, s, d, D, Q, hh: B.superelliptic_height_bound(B.SuperellipticInstance(n, m, s, d, D, Q, 2, hh)),
        {"n": (2, 6, True), "m": (3, 8, True), "s": (1, 6, True), "d": (1, 6, True), "D": (1, 10**6, True), "Q": (1, 10**6, True), "hh": (0.0, 5.0, False)},
    ),
    Spec(
        "hyperelliptic_height_bound",
        lambda n, s, D, Q, d, hh: B.hyperelliptic_height_bound(n, s, D, Q, d, hh),
        {"n": (3, 8, True), "s": (1, 6, True), "D": (1, 10**6, True), "Q": (1, 10**6, True), "d": (1, 6, True), "hh": (0.0, 5.0, False)},
    ),
    Spec(
        "schinzel_tijdeman_bound",
        lambda n, s, D, P, d, hh: B.schinzel_tijdeman_bound(n, s, D, P, d, hh),
        {"n": (2, 8, True), "s": (1, 6, True), "D": (1, 10**6, True), "P": (2, 10**6, True), "d": (1, 6, True), "hh": (0.0, 5.0, False)},
    ),
    Spec("t8_exponent_bound", lambda s, P, R: B.t8_exponent_bound(s, P, R), {"s": (1, 40, True), "P": (2, 10**6, True), "R": (1e-3, 1e6, False)}),
    Spec("catalana_prime_value", lambda P, s, D: B.catalana_prime_value(P, s, D), {"P": (2, 500, True), "s": (1, 40, True), "D": (1, 10**9, True)}),
    Spec(
        "catalana_height_bound",
        lambda c, s, D, Q: B.catalana_height_bound(c, s, D, Q),
        {"c": (1.0, 1e12, False), "s": (1, 40, True), "D": (1, 10**9, True), "Q": (1, 10**9, True)},
    ),
    Spec(
        "catalana_general_bound",
        lambda c, s, D, Q: B.catalana_general_bound(c, s, D, Q),
        {"c": (1.0, 1e12, False), "s": (1, 40, True), "D": (1, 10**9, True), "Q": (1, 10**9, True)},
    ),
    Spec(
        "pfinal2_bound",
        lambda s, D, d, P, t: B.pfinal2_bound(s, D, d, P, t),
        {"s": (1, 30, True), "D": (1, 10**9, True), "d": (1, 12, True), "P": (2, 10**6, True), "t": (0, 30, True)},
    ),
    Spec("fg_bounds", lambda r, d, h: B.fg_bounds(r, d, h), {"r": (1, 4, True), "d": (1, 30, True), "h": (1.0, 1e6, False)}),
    Spec(
        "fg_parameter_chain",
        lambda r, t, d, h: B.fg_parameter_chain(r, r - t, t, d, h),
        {"r": (0, 4, True), "t": (0, 4, True), "d": (1, 10, True), "h": (1.0, 1e4, False)},
        valid=lambda p: p["t"] <= p["r"],
    ),
]


# -------------------------------------------------- ExtScalar randomized suite


def _near_boundary(level, v):
    """True when the reference form sits within rounding of a level boundary."""
    if level == 0:
        return abs(v / REF_VMAX - 1) < REF.mpf(10) ** -25
    return abs(REF.exp(v) / REF_VMAX - 1) < REF.mpf(10) ** -25 or abs(v / REF_VMAX - 1) < REF.mpf(10) ** -25


def extscalar_suite(cases: int, seed: int):
    """Round-trip, normalization-uniqueness and ordering over random scalars.

    Ordering is checked against :func:`ref_canonical`, an independent 240-bit
    canonicalizer; pairs whose reference keys agree to 1e-25 relative are
    skipped since 128-bit storage cannot separate them.
    Returns a dict of failure lists keyed by property.
    """
    rng = random.Random(seed)
    fails = {"round_trip": [], "normalization": [], "ordering": []}
    prev = None
    for i in range(cases):
        x = random_ext(rng, level=i % 4)
        y = ext_ln(ext_exp(x))
        if not isinstance(y, ExtScalar) or ext_cmp(y, x) != 0 or (y.level, y.value) != (x.level, x.value):
            fails["round_trip"].append(x)
        n = x.normalize()
        if (n.level, n.value) != (x.level, x.value) or x.canonical().normalize().canonical() != x.canonical():
            fails["normalization"].append(x)
        rx = ref_canonical(x.level, x.value)
        if prev is not None:
            px, rp = prev
            if not (_near_boundary(*rx) or _near_boundary(*rp)):
                same = rx[0] == rp[0] and abs(rx[1] - rp[1]) <= abs(rx[1]) * REF.mpf(10) ** -25
                if not same:
                    want = -1 if rp < rx else 1
                    if ext_cmp(px, x) != want or ext_cmp(x, px) != -want:
                        fails["ordering"].append((px, x))
        if ext_cmp(x, x) != 0:
            fails["ordering"].append((x, x))
        prev = (x, rx)
    return fails
