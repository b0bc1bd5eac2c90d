import json
import os
import subprocess
import sys
from fractions import Fraction
from itertools import product

import pytest

from catalanbounds import _kernels, _poly
from catalanbounds import bounds as B
from catalanbounds._pyscan import iroot
from catalanbounds.extscalar import ext_cmp
from catalanbounds.search import (
    SearchWindow,
    catalan_search_integers,
    catalan_search_s_rationals,
    poly_catalan_search,
    poly_pth_root,
    summary,
    superelliptic_search,
    to_json_lines,
)

BACKENDS = _kernels.available_backends()


def tuples(sols):
    return [(s.x, s.p, s.y, s.q, s.sign) for s in sols]


def brute_force(X, E, sign):
    """Direct loop over x, y, p, q (the searcher never loops over x)."""
    out = set()
    for x, y in product(range(-X, X + 1), repeat=2):
        if abs(x) <= 1 or abs(y) <= 1:
            continue
        for p, q in product(range(2, E + 1), repeat=2):
            lhs = x**p - y**q if sign == "minus" else x**p + y**q
            if lhs == 1:
                out.add((x, p, y, q, sign))
    return sorted(out)


# ---------------------------------------------------------- integer scan


@pytest.mark.parametrize("backend", BACKENDS)
def test_catalan_fact(backend):
    sols = catalan_search_integers(SearchWindow(30, 7, "minus"), backend=backend)
    assert tuples(sols) == [(-3, 2, 2, 3, "minus"), (3, 2, 2, 3, "minus")]


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("sign", ["minus", "plus"])
def test_matches_brute_force(backend, sign):
    got = tuples(catalan_search_integers(SearchWindow(40, 6, sign), backend=backend))
    assert got == brute_force(40, 6, sign)


def test_backends_agree_on_a_large_window():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    w = (3000, 9, 1)
    assert _kernels.get_scan("cython")(*w) == _kernels.get_scan("python")(*w)
    w = (3000, 9, -1)
    assert _kernels.get_scan("cython")(*w) == _kernels.get_scan("python")(*w)


def test_cython_falls_back_past_64_bits():
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernel not built")
    w = (10**5, 5, 1)  # X^E overflows long long
    assert _kernels.get_scan("cython")(*w) == _kernels.get_scan("python")(*w)


@pytest.mark.parametrize("backend", BACKENDS)
def test_nested_windows_are_supersets(backend):
    prev = set()
    for X, E in [(5, 3), (10, 4), (20, 6), (40, 8), (80, 10)]:
        cur = set(tuples(catalan_search_integers(SearchWindow(X, E, "both"), backend=backend)))
        assert prev <= cur
        prev = cur


def test_every_hit_reverifies():
    sols = catalan_search_integers(SearchWindow(200, 9, "both", exclude_units=False))
    assert sols
    for s in sols:
        assert s.verify()
        # independent exponentiation through Fraction powers
        lhs = Fraction(s.x) ** s.p + (-1 if s.sign == "minus" else 1) * Fraction(s.y) ** s.q
        assert lhs == 1


def test_unit_filter():
    on = tuples(catalan_search_integers(SearchWindow(10, 4, "minus")))
    off = tuples(catalan_search_integers(SearchWindow(10, 4, "minus", exclude_units=False)))
    # x or y = +-1 forces the other to 0, which is never a candidate
    assert on == off
    both = tuples(catalan_search_s_rationals(SearchWindow(10, 4, "both", exclude_units=False), [2]))
    assert all(x != 0 and y != 0 for x, _, y, _, _ in both)


def test_workers_give_identical_results():
    w = SearchWindow(500, 8, "both")
    assert catalan_search_integers(w, workers=3) == catalan_search_integers(w, workers=1)


def test_bound_consistency_over_q():
    c11 = B.catalana_prime_value(2, 1, 1)
    bound = B.catalana_general_bound(c11, 1, 1, 1).bound
    for s in catalan_search_integers(SearchWindow(100, 8, "both")):
        assert ext_cmp(s.p, bound) <= 0 and ext_cmp(s.q, bound) <= 0


def test_window_validation():
    with pytest.raises(ValueError):
        SearchWindow(1, 5)
    with pytest.raises(ValueError):
        SearchWindow(10, 1)
    with pytest.raises(ValueError):
        SearchWindow(10, 5, "sideways")
    with pytest.raises(ValueError):
        _kernels.get_scan("fortran")


def test_pure_python_env_selects_fallback():
    env = dict(os.environ, CATALANBOUNDS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from catalanbounds import _kernels; print(_kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_iroot():
    assert iroot(27, 3) == (3, True)
    assert iroot(28, 3) == (3, False)
    assert iroot(10**40, 4) == (10**10, True)
    assert iroot(0, 5) == (0, True)


# ---------------------------------------------------------- S-integers


def test_s_rational_search():
    w = SearchWindow(20, 4, "minus")
    got = tuples(catalan_search_s_rationals(w, [2, 3]))
    for want in [(Fraction(5, 3), 2, Fraction(4, 3), 2), (Fraction(17, 8), 2, Fraction(15, 8), 2), (3, 2, 2, 3)]:
        assert (*want, "minus") in got
    for x, p, y, q, _ in got:
        assert Fraction(x) ** p - Fraction(y) ** q == 1
        for v in (Fraction(x), Fraction(y)):
            d = v.denominator
            for pr in (2, 3):
                while d % pr == 0:
                    d //= pr
            assert d == 1
    integers_only = tuples(catalan_search_s_rationals(w, []))
    assert integers_only == tuples(catalan_search_integers(w))
    with pytest.raises(ValueError):
        catalan_search_s_rationals(w, [4])


def test_json_lines_and_summary():
    w = SearchWindow(30, 7, "minus")
    sols = catalan_search_integers(w)
    lines = to_json_lines(sols)
    assert [json.loads(l) for l in lines] == [
        {"p": 2, "q": 3, "sign": "minus", "x": -3, "y": 2},
        {"p": 2, "q": 3, "sign": "minus", "x": 3, "y": 2},
    ]
    s = summary(w, sols)["summary"]
    assert s["count"] == 2 and s["counts"] == {"minus": 2, "plus": 0}
    assert s["window"]["xy_max"] == 30


# ---------------------------------------------------------- superelliptic


def test_superelliptic_examples():
    r = superelliptic_search([1, 0, -1], 1, 3, 10)
    assert {(1, 0), (-1, 0), (3, 2), (-3, 2)} <= set(r.solutions)
    assert not r.degenerate
    assert superelliptic_search([1, 0, 1], 1, 3, 10).solutions == [(0, 1)]
    cube = superelliptic_search([1, 0, 0, 0], 1, 3, 6)
    assert cube.degenerate and cube.solutions == [(x, x) for x in range(-6, 7)]
    for bad in (([1, 1], 1, 3, 5), ([1, 0, 1], 1, 1, 5), ([1, 0, 1], 0, 3, 5)):
        with pytest.raises(ValueError):
            superelliptic_search(*bad)


def test_superelliptic_matches_brute_force():
    f = [2, -3, 0, 5]
    for b, m in [(1, 2), (2, 3), (-1, 3)]:
        got = superelliptic_search(f, b, m, 30).solutions
        want = sorted((x, y) for x in range(-30, 31) for y in range(-30, 31) if 2 * x**3 - 3 * x**2 + 5 == b * y**m)
        assert got == want


# ---------------------------------------------------------- polynomial case


def test_poly_pth_root():
    assert poly_pth_root((1, 2, 1), 2) == (1, 1)
    assert poly_pth_root((1, 3, 3, 1), 3) == (1, 1)
    assert poly_pth_root((1, 0, 1), 2) is None
    assert poly_pth_root((-8, -12, -6, -1), 3) == (-2, -1)
    assert poly_pth_root((-8, 0, 0, -1), 3) is None
    assert poly_pth_root((-1, 0, -1), 2) is None


def _fingerprint(c, mods=(1_000_003, 998_244_353), pts=(2, 3, 5, 7, 11)):
    return tuple(sum(a * pow(t, i, m) for i, a in enumerate(c)) % m for m in mods for t in pts)


def _polys(deg_max, coeff_max):
    rng = range(-coeff_max, coeff_max + 1)
    for c in product(rng, repeat=deg_max + 1):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        if len(c) >= 2:
            yield tuple(c)


def _power_fp(fp, k, mods=(1_000_003, 998_244_353), npts=5):
    return tuple(pow(v, k, mods[i // npts]) for i, v in enumerate(fp))


def test_poly_catalan_empty_against_hash_join_oracle():
    """Join x^p - 1 against y^q on evaluation fingerprints, then confirm exactly."""
    mods = (1_000_003, 998_244_353)
    left = {}
    polys = list(_polys(3, 3))
    for x in polys:
        fx = _fingerprint(x)
        for p in range(2, 6):
            fp = _power_fp(fx, p)
            key = tuple((v - 1) % mods[i // 5] for i, v in enumerate(fp))
            left.setdefault(key, []).append((x, p))
    hits = []
    for y in polys:
        fy = _fingerprint(y)
        for q in range(2, 6):
            for x, p in left.get(_power_fp(fy, q), []):
                hits.append((x, p, y, q))
    exact = [h for h in hits if _poly.add(_poly.power(h[0], h[1]), _poly.neg(_poly.power(h[2], h[3]))) == (1,)]
    assert exact == []
    assert poly_catalan_search(3, 3, 5) == []


def test_poly_catalan_rejects_constant_window():
    with pytest.raises(ValueError):
        poly_catalan_search(0, 3, 5)
