"""Orbifolds on the sphere and the orbifold-level predicates for rational maps."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd, lcm
from typing import Callable, Iterable, Mapping

from .core import irreducible_factors, pencil_resultant
from .errors import InvalidInput
from .ramification import critical_values, fiber, fiber_portrait
from .ratmap import INF, AlgebraicClass, Point, RatMap, as_point, format_point, point_key, point_size


@dataclass(frozen=True)
class Orbifold:
    """Ramification function; points not listed have index 1."""

    items: tuple[tuple[Point, int], ...]

    def __init__(self, ramification: Mapping[Point, int] | Iterable[tuple[Point, int]] = ()) -> None:
        pairs = ramification.items() if isinstance(ramification, Mapping) else ramification
        merged: dict[Point, int] = {}
        for p, nu in pairs:
            p = as_point(p)
            if not isinstance(nu, int) or nu < 1:
                raise InvalidInput(f"ramification index must be a positive integer, got {nu!r}")
            if p in merged and merged[p] != nu:
                raise InvalidInput(f"conflicting indices at {format_point(p)}")
            if nu > 1:
                merged[p] = nu
        object.__setattr__(self, "items", tuple(sorted(merged.items(), key=lambda pn: point_key(pn[0]))))

    def nu(self, p: Point) -> int:
        for q, n in self.items:
            if q == p:
                return n
        return 1

    @property
    def support(self) -> list[Point]:
        return [p for p, _ in self.items]

    @property
    def signature(self) -> tuple[int, ...]:
        out: list[int] = []
        for p, n in self.items:
            out.extend([n] * point_size(p))
        return tuple(sorted(out))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{n}@{format_point(p)}" for p, n in self.items) + "}"


UNRAMIFIED = Orbifold()


class SignatureClass(Enum):
    UNRAMIFIED = "Unramified"
    POSITIVE_SPHERE = "PositiveSphere"
    POSITIVE_DIHEDRAL = "PositiveDihedral"
    TETRA = "Tetra"
    OCTA = "Octa"
    ICOSA = "Icosa"
    ZERO_2222 = "Zero{2,2,2,2}"
    ZERO_333 = "Zero{3,3,3}"
    ZERO_244 = "Zero{2,4,4}"
    ZERO_236 = "Zero{2,3,6}"
    NEGATIVE = "Negative"
    NON_ORBIFOLD = "NonOrbifoldException"


ZERO_SIGNATURES = {
    (2, 2, 2, 2): SignatureClass.ZERO_2222,
    (3, 3, 3): SignatureClass.ZERO_333,
    (2, 4, 4): SignatureClass.ZERO_244,
    (2, 3, 6): SignatureClass.ZERO_236,
}
_PLATONIC = {(2, 3, 3): SignatureClass.TETRA, (2, 3, 4): SignatureClass.OCTA, (2, 3, 5): SignatureClass.ICOSA}


def _sig(x: Orbifold | Iterable[int]) -> tuple[int, ...]:
    return x.signature if isinstance(x, Orbifold) else tuple(sorted(i for i in x if i > 1))


def euler_char(x: Orbifold | Iterable[int]) -> Fraction:
    """2 + sum over ramified points of (1/nu - 1)."""
    return 2 + sum((Fraction(1, n) - 1 for n in _sig(x)), Fraction(0))


def classify_signature(x: Orbifold | Iterable[int]) -> SignatureClass:
    sig = _sig(x)
    chi = euler_char(sig)
    if chi < 0:
        return SignatureClass.NEGATIVE
    if not sig:
        return SignatureClass.UNRAMIFIED
    if len(sig) == 1 or (len(sig) == 2 and sig[0] != sig[1]):
        return SignatureClass.NON_ORBIFOLD
    if len(sig) == 2:
        return SignatureClass.POSITIVE_SPHERE
    if chi == 0:
        return ZERO_SIGNATURES[sig]
    if sig[:2] == (2, 2) and len(sig) == 3:
        return SignatureClass.POSITIVE_DIHEDRAL
    return _PLATONIC[sig]


def format_signature(x: Orbifold | Iterable[int]) -> str:
    return "(" + ",".join(str(i) for i in _sig(x)) + ")"


# maps between orbifolds

def orbifolds_of_map(f: RatMap) -> tuple[Orbifold, Orbifold]:
    """(O1^f, O2^f): nu2 = lcm of local degrees over each value, nu1(z) = nu2(f z) / deg_z f."""
    if f.degree < 2:
        raise InvalidInput("orbifolds of a map need degree >= 2")
    o2: dict[Point, int] = {}
    o1: dict[Point, int] = {}
    for v in critical_values(f):
        nu = reduce(lcm, fiber_portrait(f, v))
        o2[v] = nu
        for z, e in fiber(f, v):
            if nu // e > 1:
                o1[z] = nu // e
    return Orbifold(o1), Orbifold(o2)


def _check_points(f: RatMap, O1: Orbifold, O2: Orbifold) -> Iterable[tuple[int, int, int]]:
    """(nu1(z), deg_z f, nu2(f z)) on every point where something is nontrivial."""
    targets = set(O2.support) | set(critical_values(f))
    seen: set[Point] = set()
    for y in sorted(targets, key=point_key):
        for z, e in fiber(f, y):
            seen.add(z)
            yield O1.nu(z), e, O2.nu(y)
    for z in O1.support:
        if z not in seen:
            yield O1.nu(z), 1, 1


def _all_points(f: RatMap, O1: Orbifold, O2: Orbifold, test: Callable[[int, int, int], bool]) -> bool:
    if f.degree < 1:
        raise InvalidInput("constant map")
    return all(test(n1, e, n2) for n1, e, n2 in _check_points(f, O1, O2))


def is_covering_map(f: RatMap, O1: Orbifold, O2: Orbifold) -> bool:
    return _all_points(f, O1, O2, lambda n1, e, n2: n2 == n1 * e)


def is_holomorphic_map(f: RatMap, O1: Orbifold, O2: Orbifold) -> bool:
    return _all_points(f, O1, O2, lambda n1, e, n2: (n1 * e) % n2 == 0)


def is_minimal_holomorphic(f: RatMap, O1: Orbifold, O2: Orbifold) -> bool:
    return _all_points(f, O1, O2, lambda n1, e, n2: n2 == n1 * gcd(e, n2))


def pullback(f: RatMap, O: Orbifold) -> Orbifold:
    """f*O: nu1(z) = nu(f z) / gcd(deg_z f, nu(f z))."""
    if f.degree < 1:
        raise InvalidInput("pullback by a constant map")
    out: dict[Point, int] = {}
    for y, nu in O.items:
        for z, e in fiber(f, y):
            k = nu // gcd(e, nu)
            if k > 1:
                out[z] = k
    return Orbifold(out)


def precedes(O: Orbifold, O2: Orbifold) -> bool:
    """nu(z) divides nu2(z) everywhere."""
    return all(O2.nu(p) % n == 0 for p, n in O.items)


def nu_leq(O: Orbifold | Iterable[int], O2: Orbifold | Iterable[int]) -> bool:
    """Every index of O divides some index of O2."""
    s2 = _sig(O2)
    return all(any(m % n == 0 for m in s2) for n in _sig(O))


def lcm_orbifolds(orbifolds: Iterable[Orbifold]) -> Orbifold:
    acc: dict[Point, int] = {}
    for O in orbifolds:
        for p, n in O.items:
            acc[p] = lcm(acc.get(p, 1), n)
    return Orbifold(acc)


# exceptional coverings between zero-characteristic orbifolds

@dataclass(frozen=True)
class ExceptionRecord:
    case: int
    self_cover_case: int | None
    model: str
    signature_of_map: tuple[int, ...]
    signature_source: tuple[int, ...]
    signature_target: tuple[int, ...]


_S2222, _S333, _S244, _S236 = (2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)

# (nu(O2^A), deg A, nu(O1), nu(O2)) -> (case, same-signature case, model of A up to Mobius)
EXCEPTIONAL_COVERS: dict[tuple, tuple[int, int | None, str]] = {
    ((2, 2), 2, _S2222, _S2222): (1, 1, "pow(2)"),
    ((2, 2), 2, _S244, _S244): (2, 2, "pow(2)"),
    ((2, 2), 2, _S2222, _S244): (3, None, "pow(2)"),
    ((2, 2), 2, _S333, _S236): (4, None, "pow(2)"),
    ((3, 3), 3, _S333, _S333): (5, 3, "pow(3)"),
    ((3, 3), 3, _S2222, _S236): (6, None, "pow(3)"),
    ((4, 4), 4, _S2222, _S244): (7, None, "pow(4)"),
    ((2, 2, 2), 4, _S2222, _S2222): (8, 4, "Z(2)"),
    ((2, 2, 2), 4, _S2222, _S244): (9, None, "Z(2)"),
    ((2, 2, 3), 6, _S333, _S236): (10, None, "Z(3)"),
    ((2, 2, 3), 3, _S236, _S236): (11, 5, "T(3)"),
    ((2, 2, 4), 8, _S2222, _S244): (12, None, "Z(4)"),
    ((2, 2, 4), 4, _S2222, _S244): (13, None, "T(4)"),
    ((2, 2, 4), 4, _S244, _S244): (14, 6, "T(4)"),
    ((2, 3, 3), 4, _S236, _S236): (15, 7, "lattes233_4"),
    ((2, 3, 3), 6, _S2222, _S236): (16, None, "lattes233_6"),
    ((2, 3, 3), 12, _S2222, _S236): (17, None, "lattes233_12"),
}


def exceptional_self_cover_lookup(f: RatMap, O1: Orbifold, O2: Orbifold) -> ExceptionRecord | None:
    """Which exceptional case applies to a covering f: O1 -> O2 of zero-characteristic orbifolds.

    None means chi(O2^f) = 0, in which case O2 = O2^f and O1 = O1^f.
    """
    if euler_char(O1) != 0 or euler_char(O2) != 0:
        raise InvalidInput("both orbifolds must have zero Euler characteristic")
    if not is_covering_map(f, O1, O2):
        raise InvalidInput("f is not a covering map O1 -> O2")
    _, o2f = orbifolds_of_map(f)
    if euler_char(o2f) == 0:
        return None
    key = (o2f.signature, f.degree, O1.signature, O2.signature)
    if key not in EXCEPTIONAL_COVERS:
        raise AssertionError(f"covering outside the exceptional list: {key}")
    case, cor, model = EXCEPTIONAL_COVERS[key]
    return ExceptionRecord(case, cor, model, *key[:1], O1.signature, O2.signature)


def image_point(f: RatMap, p: Point) -> Point:
    """f(p), with algebraic classes mapped to the class of their image."""
    if not isinstance(p, AlgebraicClass):
        return f(p)
    if (f.den % p.minpoly).is_zero():
        return INF
    res = pencil_resultant(f.num, f.den, p.minpoly)
    (g, _), = irreducible_factors(res)
    return -g[0] if g.degree == 1 else AlgebraicClass(g)


def zero_char_self_covers(f: RatMap) -> list[Orbifold]:
    """All orbifolds O with chi(O) = 0 for which f: O -> O is a covering map."""
    if f.degree < 2:
        return []
    _, o2f = orbifolds_of_map(f)
    chi = euler_char(o2f)
    if chi < 0:
        return []
    if chi == 0:
        return [o2f] if is_covering_map(f, o2f, o2f) else []
    # extra points of a candidate lie in f(c) or f(f(c)), c = support of O2^f
    base = o2f.support
    pool = list(base)
    frontier = list(base)
    for _ in range(2):
        frontier = [image_point(f, p) for p in frontier]
        for p in frontier:
            if p not in pool:
                pool.append(p)
    extras = [p for p in pool if p not in base]
    found: list[Orbifold] = []
    for k in range(len(extras) + 1):
        for extra in combinations(extras, k):
            pts = list(base) + list(extra)
            if sum(point_size(p) for p in pts) > 4:
                continue
            choices = [[m for m in (2, 3, 4, 6) if m % o2f.nu(p) == 0] for p in pts]
            for nus in product(*choices):
                O = Orbifold(zip(pts, nus))
                if euler_char(O) == 0 and O not in found and is_covering_map(f, O, O):
                    found.append(O)
    return found
