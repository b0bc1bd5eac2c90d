# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer Catalan scan; same contract as ``_pyscan.scan``."""

from libc.math cimport pow as cpow, llround

from . import _pyscan

# x**p and y**q must stay below this for the machine-integer path
cdef long long LIMIT = 1LL << 62


cdef long long ipow_capped(long long r, int p, long long cap):
    """r**p for r >= 0, or -1 once it exceeds cap."""
    cdef long long acc = 1
    cdef int i
    for i in range(p):
        if r != 0 and acc > cap // r:
            return -1
        acc *= r
    return acc if acc <= cap else -1


cdef long long iroot_exact(long long n, int k):
    """r with r**k == n (n >= 0), else -1."""
    cdef long long r, c, v
    if n < 2:
        return n
    r = llround(cpow(<double>n, 1.0 / k))
    for c in range(r - 1 if r > 0 else 0, r + 2):
        v = ipow_capped(c, k, n)
        if v == n:
            return c
    return -1


def scan(long long xy_max, int exp_max, int s, long long residue=0, long long modulus=1):
    cdef long long cap, y, yq, T, aT, r, ay
    cdef int p, q
    cdef list caps
    # machine-integer path needs xy_max**exp_max <= 2**62 and y**q computed by the cap test
    big = int(xy_max) ** exp_max
    if big >= LIMIT:
        return _pyscan.scan(xy_max, exp_max, s, residue, modulus)
    cap = <long long>big
    cdef long long[64] pcaps
    for p in range(exp_max + 1):
        pcaps[p] = <long long>(int(xy_max) ** p)
    out = []
    for y in range(-xy_max, xy_max + 1):
        if ((y % modulus) + modulus) % modulus != residue:
            continue
        ay = y if y >= 0 else -y
        yq = y
        for q in range(2, exp_max + 1):
            if ay >= 2 and (yq > cap or -yq > cap or ay > (cap + 1) // (yq if yq > 0 else -yq)):
                # next |y^q| would already exceed cap + 1
                break
            yq *= y
            T = yq + 1 if s == 1 else 1 - yq
            aT = T if T >= 0 else -T
            if aT > cap and ay >= 2:
                break
            for p in range(2, exp_max + 1):
                if aT > pcaps[p]:
                    continue
                if T == 0:
                    out.append((0, p, y, q))
                    continue
                if T < 0 and p % 2 == 0:
                    continue
                r = iroot_exact(aT, p)
                if r < 0 or r > xy_max:
                    continue
                if T < 0:
                    out.append((-r, p, y, q))
                else:
                    out.append((r, p, y, q))
                    if p % 2 == 0:
                        out.append((-r, p, y, q))
    return out
