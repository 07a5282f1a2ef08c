"""Recognising z^n, T_n and Z_n up to pre- and post-composition with Mobius maps."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from sympy import integer_nthroot

from .core import Polynomial
from .families import chebyshev, power, zhukovsky
from .ramification import Portrait, fiber, portrait
from .ratmap import (
    INF,
    AlgebraicClass,
    MobiusMap,
    MuClass,
    Point,
    RatMap,
    compose,
)


def rational_nth_roots(r: Fraction, n: int) -> list[Fraction]:
    """All rational x with x^n = r."""
    if r == 0:
        return [Fraction(0)]
    if r < 0 and n % 2 == 0:
        return []
    num, exact_n = integer_nthroot(abs(r.numerator), n)
    den, exact_d = integer_nthroot(r.denominator, n)
    if not (exact_n and exact_d):
        return []
    x = Fraction(int(num), int(den))
    if r < 0:
        return [-x]
    return [x, -x] if n % 2 == 0 else [x]


def _is_rational(p: Point) -> bool:
    return not isinstance(p, AlgebraicClass)


def _single_preimage(f: RatMap, v: Point) -> Point:
    (p, _), = fiber(f, v)
    return p


def _witness_ok(f: RatMap, mu1: MobiusMap, g: RatMap, mu2: MobiusMap) -> bool:
    return compose(mu1.as_ratmap(), compose(g, mu2.as_ratmap())) == f


def _third_point(avoid: list[Point]) -> Fraction:
    k = 0
    while True:
        for cand in (Fraction(k), Fraction(-k - 1)):
            if cand not in avoid:
                return cand
        k += 1


def power_witnesses(f: RatMap, a: Point, b: Point) -> tuple[MobiusMap, MobiusMap] | None:
    """f = mu1 o z^n o mu2 given the two totally ramified values."""
    p, q = _single_preimage(f, a), _single_preimage(f, b)
    if not (_is_rational(p) and _is_rational(q)):
        return None
    r = _third_point([p, q])
    mu2 = MobiusMap.through((p, q, r), (Fraction(0), INF, Fraction(1)))
    mu1 = MobiusMap.through((Fraction(0), INF, Fraction(1)), (a, b, f(r)))
    return (mu1, mu2) if _witness_ok(f, mu1, power(f.degree), mu2) else None


def _move_to_infinity(p: Point) -> MobiusMap:
    """A Mobius map sending infinity to p."""
    return MobiusMap.identity() if p is INF else MobiusMap(p, 1, 1, 0)


def chebyshev_witnesses(f: RatMap, c: Point, a: Point, b: Point) -> tuple[MobiusMap, MobiusMap] | None:
    """f = mu1 o T_n o mu2, c totally ramified, a and b the other critical values."""
    n = f.degree
    T = chebyshev(n)
    p = _single_preimage(f, c)
    if not _is_rational(p):
        return None
    sigma = _move_to_infinity(p)
    for lo, hi in ((a, b), (b, a)):
        mu1 = MobiusMap.through((Fraction(1), Fraction(-1), INF), (lo, hi, c))
        g = compose(mu1.inverse().as_ratmap(), compose(f, sigma.as_ratmap()))
        if not g.is_polynomial():
            continue
        lead = g.num.lc / g.den.lc
        sub = g.num[n - 1] / g.den.lc
        for alpha in rational_nth_roots(lead / 2 ** (n - 1), n):
            beta = sub * alpha / (n * lead)
            mu2 = MobiusMap(alpha, beta, 0, 1).compose(sigma.inverse())
            if _witness_ok(f, mu1, T, mu2):
                return mu1, mu2
    return None


def zhukovsky_witnesses(f: RatMap, c: Point, a: Point, b: Point) -> tuple[MobiusMap, MobiusMap] | None:
    """f = mu1 o Z_n o mu2, c the value with fibre {n,n}."""
    n = f.degree // 2
    Zn = zhukovsky(n)
    pts = [pt for pt, _ in fiber(f, c)]
    if len(pts) != 2 or not all(_is_rational(pt) for pt in pts):
        return None
    p, q = pts
    r = _third_point([p, q])
    base = MobiusMap.through((p, q, r), (Fraction(0), INF, Fraction(1)))
    for lo, hi in ((a, b), (b, a)):
        mu1 = MobiusMap.through((Fraction(1), Fraction(-1), INF), (lo, hi, c))
        k = compose(mu1.inverse().as_ratmap(), compose(f, base.inverse().as_ratmap()))
        # expect k = (s w^2n + 1/s) / (2 w^n)
        if k.den != Polynomial.monomial(n):
            continue
        s = 2 * k.num[2 * n]
        for lam in rational_nth_roots(s, n) if s else []:
            mu2 = MobiusMap(lam, 0, 0, 1).compose(base)
            if _witness_ok(f, mu1, Zn, mu2):
                return mu1, mu2
    return None


def _values_by_shape(p: Portrait) -> dict[tuple[int, ...], list[Point]]:
    out: dict[tuple[int, ...], list[Point]] = {}
    for fp in p.fibers:
        out.setdefault(fp.local_degrees, []).append(fp.value)
    return out


def _classify_degree_two(f: RatMap, p: Portrait) -> MuClass:
    a, b = (fp.value for fp in p.fibers)
    wit = power_witnesses(f, a, b)
    if f.is_polynomial() and wit is not None:
        finite = b if a is INF else a
        if finite in (-1, 1):
            sign = 1 if finite == -1 else -1
            # T_2 = (2z - 1) o z^2, and -T_2 = (1 - 2z) o z^2
            shift = MobiusMap(2 * sign, -sign, 0, 1)
            return MuClass("chebyshev", 2, sign, (wit[0].compose(shift.inverse()), wit[1]), True)
    return MuClass("power", 2, 1, wit, True)


def classify(f: RatMap) -> MuClass:
    n = f.degree
    if n < 2:
        return MuClass(None)
    p = portrait(f)
    if n == 2:
        return _classify_degree_two(f, p)
    shape = p.shape()
    values = [fp.value for fp in p.fibers]
    rational = all(_is_rational(v) for v in values)

    if shape == [(n,), (n,)]:
        wit = power_witnesses(f, *values) if rational else None
        return MuClass("power", n, 1, wit, True)

    if sorted(shape) == _chebyshev_shape(n):
        wit = None
        if rational:
            c = next(fp.value for fp in p.fibers if fp.local_degrees == (n,))
            a, b = (fp.value for fp in p.fibers if fp.local_degrees != (n,))
            wit = chebyshev_witnesses(f, c, a, b)
        return MuClass("chebyshev", n, 1, wit, True)

    if n % 2 == 0 and sorted(shape) == _zhukovsky_shape(n // 2):
        wit = None
        if rational:
            m = n // 2
            ordered = [fp.value for fp in p.fibers]
            by_shape = _values_by_shape(p)
            candidates = (
                [tuple(x) for x in permutations(ordered)]
                if m == 2
                else [(by_shape[(m, m)][0], *by_shape[(2,) * m])]
            )
            for c, a, b in candidates:
                wit = zhukovsky_witnesses(f, c, a, b)
                if wit:
                    break
        return MuClass("zhukovsky", n // 2, 1, wit, True)
    return MuClass(None)


def _chebyshev_shape(n: int) -> list[tuple[int, ...]]:
    """Portrait shape of T_n: totally ramified at infinity, simple critical points over +-1."""
    if n % 2:
        half = (1,) + (2,) * (n // 2)
        return sorted([(n,), half, half])
    return sorted([(n,), (2,) * (n // 2), (1, 1) + (2,) * (n // 2 - 1)])


def _zhukovsky_shape(m: int) -> list[tuple[int, ...]]:
    return sorted([(2,) * m, (2,) * m, (m, m)])


def describe(mc: MuClass) -> str:
    if mc.kind is None:
        return "none"
    names = {"power": f"z^{mc.n}", "chebyshev": f"T_{mc.n}", "zhukovsky": f"Z_{mc.n}"}
    base = names[mc.kind] if mc.sign == 1 else "-" + names[mc.kind]
    if not mc.exact:
        return f"{base} (portrait matches; witnesses not rational)"
    mu1, mu2 = mc.witnesses
    return f"{base}, mu1 = {mu1}, mu2 = {mu2}"

