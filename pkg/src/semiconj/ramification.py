"""Critical values, fibres and branching portraits."""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Polynomial,
    homogeneous_eval,
    irreducible_factors,
    pencil_resultant,
    squarefree_decomposition,
)
from .errors import InvalidInput
from .ratmap import (
    INF,
    AlgebraicClass,
    Point,
    RatMap,
    as_point,
    format_point,
    local_degree,
    point_key,
    point_size,
)


def _class_or_point(factor: Polynomial) -> Point:
    return -factor[0] if factor.degree == 1 else AlgebraicClass(factor)


def wronskian(f: RatMap) -> Polynomial:
    """num' * den - num * den'; its roots are the finite critical points (order = local degree - 1)."""
    return f.num.derivative() * f.den - f.num * f.den.derivative()


def _fiber_polynomial(f: RatMap, v: Point) -> tuple[Polynomial, int]:
    """Polynomial cutting out the finite part of the fibre, and the local degree at infinity (0 if absent)."""
    n = f.degree
    if v is INF:
        poly = f.den
        extra = f.num.degree - f.den.degree
        return poly, max(extra, 0)
    if isinstance(v, AlgebraicClass):
        return homogeneous_eval(v.minpoly, f.num, f.den, v.size), 0
    poly = f.num - f.den.scale(v)
    return poly, n - poly.degree


def fiber(f: RatMap, v: Point | int) -> list[tuple[Point, int]]:
    """Preimage points of v with their local degrees.

    For an algebraic class v the entries cover all conjugate values together;
    each returned class lists every root with the same local degree.
    """
    v = as_point(v)
    if f.is_constant():
        raise InvalidInput("fibre of a constant map")
    poly, at_inf = _fiber_polynomial(f, v)
    out = [(_class_or_point(g), e) for g, e in irreducible_factors(poly)] if not poly.is_constant() else []
    if at_inf:
        out.append((INF, at_inf))
    out.sort(key=lambda pe: point_key(pe[0]))
    return out


def fiber_portrait(f: RatMap, v: Point | int) -> tuple[int, ...]:
    """Sorted multiset of local degrees over one value (one conjugate, for algebraic classes)."""
    v = as_point(v)
    if f.is_constant():
        raise InvalidInput("fibre of a constant map")
    poly, at_inf = _fiber_polynomial(f, v)
    conj = point_size(v)
    degs: list[int] = []
    if not poly.is_constant():
        for part, mult in squarefree_decomposition(poly):
            if part.degree % conj:
                raise AssertionError("fibre not equidistributed over conjugates")
            degs.extend([mult] * (part.degree // conj))
    if at_inf:
        degs.append(at_inf)
    return tuple(sorted(degs))


def critical_points(f: RatMap) -> list[tuple[Point, int]]:
    """Critical points with local degree (>= 2)."""
    if f.degree < 1:
        raise InvalidInput("critical points of a constant map")
    out: list[tuple[Point, int]] = []
    W = wronskian(f)
    if not W.is_constant():
        out = [(_class_or_point(g), e + 1) for g, e in irreducible_factors(W)]
    d_inf = local_degree(f, INF)
    if d_inf > 1:
        out.append((INF, d_inf))
    out.sort(key=lambda pe: point_key(pe[0]))
    return out


def critical_values(f: RatMap) -> list[Point]:
    """Critical values, sorted; irrational ones appear as algebraic classes."""
    if f.degree < 2:
        return []
    values: set[Point] = set()
    res = pencil_resultant(f.num, f.den, wronskian(f))
    if not res.is_constant():
        for g, _ in irreducible_factors(res):
            values.add(_class_or_point(g))
    poles_repeated = any(m > 1 for _, m in squarefree_decomposition(f.den)) if not f.den.is_constant() else False
    if poles_repeated or f.num.degree - f.den.degree >= 2:
        values.add(INF)
    if local_degree(f, INF) > 1:
        values.add(f(INF))
    return sorted(values, key=point_key)


@dataclass(frozen=True)
class FiberPortrait:
    value: Point
    local_degrees: tuple[int, ...]


@dataclass(frozen=True)
class Portrait:
    degree: int
    fibers: tuple[FiberPortrait, ...]

    def as_dict(self) -> dict[Point, tuple[int, ...]]:
        return {fp.value: fp.local_degrees for fp in self.fibers}

    def shape(self) -> list[tuple[int, ...]]:
        """Fibre multisets without their base points, sorted; algebraic classes repeated per conjugate."""
        out = []
        for fp in self.fibers:
            out.extend([fp.local_degrees] * point_size(fp.value))
        return sorted(out)

    def __str__(self) -> str:
        return format_portrait(self)


def portrait(f: RatMap) -> Portrait:
    if f.degree < 2:
        raise InvalidInput("portrait needs degree >= 2")
    fibers = tuple(FiberPortrait(v, fiber_portrait(f, v)) for v in critical_values(f))
    return Portrait(f.degree, fibers)


def format_multiset(ms: tuple[int, ...]) -> str:
    return "{" + ",".join(str(x) for x in ms) + "}"


def format_portrait(p: Portrait) -> str:
    return "(" + ", ".join(f"{format_multiset(fp.local_degrees)}@{format_point(fp.value)}" for fp in p.fibers) + ")"


def portrait_record(p: Portrait) -> dict:
    return {
        "degree": p.degree,
        "fibers": [
            {
                "value": format_point(fp.value),
                "conjugates": point_size(fp.value),
                "local_degrees": list(fp.local_degrees),
            }
            for fp in p.fibers
        ],
        "text": format_portrait(p),
    }


def ramification_total(p: Portrait) -> int:
    return sum(point_size(fp.value) * sum(e - 1 for e in fp.local_degrees) for fp in p.fibers)


def check_riemann_hurwitz(f: RatMap) -> bool:
    """Sum of (local degree - 1) over all points equals 2 deg f - 2."""
    if f.degree < 1:
        raise InvalidInput("Riemann-Hurwitz needs a nonconstant map")
    if f.degree == 1:
        return not critical_values(f)
    p = portrait(f)
    sums_ok = all(sum(fp.local_degrees) == f.degree for fp in p.fibers)
    return sums_ok and ramification_total(p) == 2 * f.degree - 2


def preimage_count(f: RatMap, values: list[Point]) -> int:
    """Number of geometric points in f^-1(values) (rational/infinite values only)."""
    return sum(point_size(pt) for v in values for pt, _ in fiber(f, v))
