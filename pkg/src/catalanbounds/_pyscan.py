"""Pure-Python integer Catalan scan (reference and fallback backend)."""

from __future__ import annotations

import math


def iroot(n: int, k: int) -> tuple[int, bool]:
    """``(floor(n ** (1/k)), exact)`` for integers n >= 0, k >= 1."""
    if n < 0:
        raise ValueError("iroot needs n >= 0")
    if n < 2 or k == 1:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    bits = n.bit_length()
    if bits <= 1000:
        r = int(round(n ** (1.0 / k)))
    else:
        r = 1 << -(-bits // k)
        # Newton from above
        while True:
            s = ((k - 1) * r + n // r ** (k - 1)) // k
            if s >= r:
                break
            r = s
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r, r**k == n


def _roots(T: int, p: int, xy_max: int):
    """Integers x with x**p == T and |x| <= xy_max."""
    if T == 0:
        return (0,)
    if T < 0:
        if p % 2 == 0:
            return ()
        r, ok = iroot(-T, p)
        return (-r,) if ok and r <= xy_max else ()
    r, ok = iroot(T, p)
    if not ok or r > xy_max:
        return ()
    return (r, -r) if p % 2 == 0 else (r,)


def scan(xy_max: int, exp_max: int, s: int, residue: int = 0, modulus: int = 1) -> list:
    """All ``(x, p, y, q)`` with ``x**p == s + y**q`` in the window.

    ``s = 1`` gives ``x^p - y^q = 1``; ``s = -1`` gives ``x^p + y^q = 1``.
    Only y with ``y % modulus == residue`` are visited.
    """
    out = []
    cap = xy_max**exp_max
    caps = [xy_max**p for p in range(exp_max + 1)]
    for y in range(-xy_max, xy_max + 1):
        if y % modulus != residue:
            continue
        yq = y
        for q in range(2, exp_max + 1):
            yq *= y
            T = yq + 1 if s == 1 else 1 - yq
            aT = abs(T)
            if aT > cap and abs(y) >= 2:
                break  # |1 +- y^q| only grows with q
            for p in range(2, exp_max + 1):
                if aT > caps[p]:
                    continue
                for x in _roots(T, p, xy_max):
                    out.append((x, p, y, q))
    return out
