"""Positive scalars of arbitrary magnitude stored as a tower of exponentials.

An :class:`ExtScalar` with ``level == k`` and ``value == v`` represents
``exp(exp(...exp(v)...))`` with ``k`` applications of ``exp``.  The value at
each level is an mpmath ``mpf`` held at a fixed 128-bit working precision in a
private context, so nothing here touches the global ``mpmath.mp`` settings.

Two forms are used:

``normalize``
    Promotion only.  While ``v >= V_MAX`` take a logarithm and go up a level;
    a negative ``v`` above level 0 is pushed down.  This is the stored form and
    is what :func:`ext_exp` / :func:`ext_ln` act on structurally.

canonical
    The normalized form additionally demoted while ``exp(v) < V_MAX``.  Two
    scalars with the same canonical form are equal at working precision, and
    canonical forms order lexicographically by ``(level, v)``.  All arithmetic
    returns canonical results.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Real

from mpmath.ctx_mp import MPContext

__all__ = [
    "ExtScalar",
    "V_MAX",
    "WORKING_PREC",
    "ext_from_real",
    "ext_from_log",
    "ext_mul",
    "ext_add",
    "ext_pow",
    "ext_exp",
    "ext_ln",
    "ext_cmp",
    "ext_max",
    "mpf",
    "ctx",
]

WORKING_PREC = 128

_ctx = MPContext()
_ctx.prec = WORKING_PREC
mpf = _ctx.mpf
ctx = _ctx

V_MAX = mpf(10) ** 15
_LN_VMAX = _ctx.log(V_MAX)
# below this log-ratio the smaller summand cannot move the larger at 128 bits
_NEGLIGIBLE = -mpf(WORKING_PREC + 16) * _ctx.ln2


def _to_mpf(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Integral):
        return mpf(int(x))
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    if isinstance(x, str):
        return mpf(x)
    if isinstance(x, Real) or hasattr(x, "_mpf_"):
        return mpf(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a real scalar")


def _normalize(level, v):
    while level > 0 and v < 0:
        v = _ctx.exp(v)
        level -= 1
    if level == 0 and not v > 0:
        raise ValueError("ExtScalar must be positive")
    while v >= V_MAX:
        v = _ctx.log(v)
        level += 1
    return level, v


def _canonical(level, v):
    while level > 0 and v < _LN_VMAX:
        w = _ctx.exp(v)
        if w >= V_MAX:
            break
        v = w
        level -= 1
    return level, v


class ExtScalar:
    """Immutable positive scalar ``exp^level(value)``."""

    __slots__ = ("_level", "_value")

    def __init__(self, level: int, value) -> None:
        if int(level) != level or level < 0:
            raise ValueError("level must be a non-negative integer")
        v = _to_mpf(value)
        if not _ctx.isfinite(v):
            raise ValueError("ExtScalar value must be finite")
        lv, vv = _normalize(int(level), v)
        object.__setattr__(self, "_level", lv)
        object.__setattr__(self, "_value", vv)

    @classmethod
    def _raw(cls, level, v):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_level", level)
        object.__setattr__(obj, "_value", v)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    @property
    def level(self) -> int:
        return self._level

    @property
    def value(self):
        return self._value

    def normalize(self) -> "ExtScalar":
        return ExtScalar(self._level, self._value)

    def canonical(self) -> "ExtScalar":
        return ExtScalar._raw(*_canonical(self._level, self._value))

    def log_value(self):
        """Natural log of the represented number as an ``mpf`` when it fits.

        Returns ``None`` once the log itself is a tower (canonical level >= 3).
        """
        lv, v = _canonical(self._level, self._value)
        if lv == 0:
            return _ctx.log(v)
        if lv == 1:
            return v
        if lv == 2:
            return _ctx.exp(v)
        return None

    def log2_value(self):
        """``ln(ln x)`` as an ``mpf``; ``None`` past level 3 or when x <= e."""
        lv, v = _canonical(self._level, self._value)
        if lv == 2:
            return v
        if lv == 3:
            return _ctx.exp(v)
        if lv > 3:
            return None
        inner = self.log_value()
        return _ctx.log(inner) if inner > 0 else None

    def to_mpf(self):
        """Represented number as an ``mpf`` (level <= 1 canonical), else ``None``."""
        lv, v = _canonical(self._level, self._value)
        if lv == 0:
            return v
        if lv == 1:
            return _ctx.exp(v)
        return None

    def __float__(self) -> float:
        x = self.to_mpf()
        if x is None or x > mpf("1.7e308"):
            return float("inf")
        return float(x)

    def __repr__(self) -> str:
        return f"ExtScalar(level={self._level}, value={_ctx.nstr(self._value, 20)})"

    def __str__(self) -> str:
        x = self.to_mpf()
        if x is not None and x < mpf(10) ** 40:
            return _ctx.nstr(x, 15)
        return "exp^%d(%s)" % (self._level, _ctx.nstr(self._value, 15))

    def to_json(self) -> dict:
        out = {"level": self._level, "log_value": _ctx.nstr(self._value, 40)}
        x = self.to_mpf()
        if x is not None and x < mpf(10) ** 40:
            out["decimal"] = _ctx.nstr(x, 40)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ExtScalar":
        return cls(int(obj["level"]), mpf(obj["log_value"]))

    # -- comparison ------------------------------------------------------
    def _key(self):
        return _canonical(self._level, self._value)

    def __eq__(self, other):
        if not isinstance(other, ExtScalar):
            try:
                other = ext_from_real(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return ext_cmp(self, other) < 0

    def __le__(self, other):
        return ext_cmp(self, other) <= 0

    def __gt__(self, other):
        return ext_cmp(self, other) > 0

    def __ge__(self, other):
        return ext_cmp(self, other) >= 0

    # -- arithmetic sugar ------------------------------------------------
    def __mul__(self, other):
        return ext_mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other):
        return ext_add(self, other)

    __radd__ = __add__

    def __pow__(self, other):
        return ext_pow(self, other)


def _as_ext(x) -> ExtScalar:
    if isinstance(x, ExtScalar):
        return x
    return ext_from_real(x)


def ext_from_real(x) -> ExtScalar:
    """Wrap a positive finite real (int, Fraction, float, mpf or decimal string)."""
    if isinstance(x, ExtScalar):
        return x
    v = _to_mpf(x)
    if not _ctx.isfinite(v) or not v > 0:
        raise ValueError(f"expected a positive finite real, got {x!r}")
    return ExtScalar._raw(*_normalize(0, v))


def _log_form(x: ExtScalar):
    """``ln x`` as an ``mpf`` (levels 0, 1) or a canonical ExtScalar (level >= 2)."""
    lv, v = _canonical(x._level, x._value)
    if lv == 0:
        return _ctx.log(v)
    if lv == 1:
        return v
    return ExtScalar._raw(lv - 1, v)


def ext_from_log(L) -> ExtScalar:
    """Scalar whose natural log is ``L`` (a signed real or an ExtScalar)."""
    if isinstance(L, ExtScalar):
        lv, v = _normalize(L._level + 1, L._value)
        return ExtScalar._raw(*_canonical(lv, v))
    r = _to_mpf(L)
    if r < _LN_VMAX:
        return ExtScalar._raw(*_normalize(0, _ctx.exp(r)))
    return ExtScalar._raw(*_canonical(*_normalize(1, r)))


def _real_log_sum(L, r):
    """``L + r`` for a log-form ``L`` and a signed real ``r``."""
    if not isinstance(L, ExtScalar):
        return L + r
    if L._level <= 1:
        return L.to_mpf() + r
    return L  # L >= e^(1e15); |r| is under 1e15 at any representable input


def ext_add(a, b) -> ExtScalar:
    """``a + b``; a dominated summand is dropped."""
    a, b = _as_ext(a), _as_ext(b)
    if ext_cmp(a, b) < 0:
        a, b = b, a
    la_, _ = _canonical(a._level, a._value)
    if la_ <= 1:
        return ext_from_real(a.to_mpf() + b.to_mpf())
    if la_ >= 3:
        return a.canonical()
    La = a.log_value()
    Lb = b.log_value()
    d = Lb - La
    if d < _NEGLIGIBLE:
        return a.canonical()
    return ext_from_log(La + _ctx.log1p(_ctx.exp(d)))


def ext_mul(a, b) -> ExtScalar:
    """``a * b`` computed in log space."""
    a, b = _as_ext(a), _as_ext(b)
    ka, kb = a._key(), b._key()
    if ka[0] == 0 and kb[0] == 0:
        return ext_from_real(ka[1] * kb[1])
    La, Lb = _log_form(a), _log_form(b)
    if isinstance(La, ExtScalar) and isinstance(Lb, ExtScalar):
        return ext_from_log(ext_add(La, Lb))
    if isinstance(Lb, ExtScalar):
        La, Lb = Lb, La
    return ext_from_log(_real_log_sum(La, Lb))


def ext_pow(a, e) -> ExtScalar:
    """``a ** e`` with the exponent multiplied in one level down the tower.

    ``e`` may be an ExtScalar, a positive real, or ``0`` (giving 1).
    """
    if not isinstance(e, ExtScalar):
        ev = _to_mpf(e)
        if ev < 0:
            raise ValueError("negative exponents are not supported")
        if ev == 0:
            if isinstance(a, ExtScalar):
                return ext_from_real(1)
            if _to_mpf(a) == 0:
                raise ValueError("0 ** 0 is undefined")
            return ext_from_real(1)
        e = ext_from_real(ev)
    a = _as_ext(a)
    ka, ke = a._key(), e._key()
    if ka[0] == 0 and ke[0] == 0 and ke[1] * abs(_ctx.log(ka[1])) < _LN_VMAX:
        return ext_from_real(ka[1] ** ke[1])
    La = _log_form(a)
    if isinstance(La, ExtScalar):
        return ext_from_log(ext_mul(e, La))
    if La == 0:
        return ext_from_real(1)
    if La > 0:
        return ext_from_log(ext_mul(e, ext_from_real(La)))
    em = e.to_mpf()
    if em is None:
        raise OverflowError("result underflows below the representable range")
    return ext_from_log(em * La)


def ext_exp(a) -> ExtScalar:
    """``exp(a)``: raises the stored level by exactly one, then normalizes."""
    a = _as_ext(a)
    return ExtScalar._raw(*_normalize(a._level + 1, a._value))


def ext_ln(a):
    """``ln(a)``.

    Returns an ExtScalar when ``a > 1``.  For ``0 < a <= 1`` the logarithm is
    not positive, so it is returned as a plain ``mpf``.
    """
    a = _as_ext(a)
    if a._level == 0:
        lv = _ctx.log(a._value)
        if lv > 0:
            return ExtScalar._raw(0, lv)
        return lv
    if a._level == 1 and a._value == 0:
        return mpf(0)
    return ExtScalar._raw(*_normalize(a._level - 1, a._value))


def ext_cmp(a, b) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = _as_ext(a)._key(), _as_ext(b)._key()
    if ka == kb:
        return 0
    return -1 if ka < kb else 1


def ext_max(*xs) -> ExtScalar:
    best = _as_ext(xs[0])
    for x in xs[1:]:
        x = _as_ext(x)
        if ext_cmp(x, best) > 0:
            best = x
    return best
