"""Rational maps of the Riemann sphere with rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .core import (
    Number,
    Polynomial,
    format_fraction,
    format_polynomial,
    homogeneous_eval,
    nullspace,
    poly_gcd,
)
from .errors import InvalidInput, UnsupportedPoint


class _Infinity:
    _instance = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@dataclass(frozen=True)
class AlgebraicClass:
    """All roots of an irreducible rational polynomial of degree >= 2, treated as one entry."""

    minpoly: Polynomial

    def __post_init__(self) -> None:
        if self.minpoly.degree < 2:
            raise InvalidInput("algebraic class needs a minimal polynomial of degree >= 2")
        if self.minpoly.lc != 1:
            object.__setattr__(self, "minpoly", self.minpoly.monic())

    @property
    def size(self) -> int:
        return self.minpoly.degree


Point = Union[Fraction, _Infinity, AlgebraicClass]


def as_point(p: Point | int | str) -> Point:
    if isinstance(p, (_Infinity, AlgebraicClass)):
        return p
    if isinstance(p, str):
        return INF if p.strip().lower() in {"inf", "oo", "infinity"} else Fraction(p)
    return Fraction(p)


def point_key(p: Point) -> tuple:
    """Finite rationals ascending, then algebraic classes, then infinity."""
    if isinstance(p, Fraction):
        return (0, p)
    if isinstance(p, AlgebraicClass):
        return (1, p.minpoly.content_key())
    return (2,)


def point_size(p: Point) -> int:
    """Number of geometric points an entry stands for."""
    return p.size if isinstance(p, AlgebraicClass) else 1


def format_point(p: Point) -> str:
    if isinstance(p, Fraction):
        return format_fraction(p)
    if isinstance(p, AlgebraicClass):
        return f"root({format_polynomial(p.minpoly)})"
    return "inf"


def _rational_only(p: Point) -> None:
    if isinstance(p, AlgebraicClass):
        raise UnsupportedPoint("operation defined only on rational points and infinity")


@dataclass(frozen=True)
class RatMap:
    """Reduced fraction num/den with monic denominator."""

    num: Polynomial
    den: Polynomial

    def __init__(self, num: Polynomial | Number, den: Polynomial | Number = 1) -> None:
        num = num if isinstance(num, Polynomial) else Polynomial.const(num)
        den = den if isinstance(den, Polynomial) else Polynomial.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational map with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial.const(1)
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.exact_div(g), den.exact_div(g)
            if den.lc != 1:
                s = 1 / den.lc
                num, den = num.scale(s), den.scale(s)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> RatMap:
        """Build from a pair already known to be coprime."""
        obj = object.__new__(cls)
        if den.lc != 1:
            s = 1 / den.lc
            num, den = num.scale(s), den.scale(s)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def identity(cls) -> RatMap:
        return cls(Polynomial.var())

    @classmethod
    def const(cls, c: Number) -> RatMap:
        return cls(Polynomial.const(c))

    @classmethod
    def poly(cls, coeffs: Iterable[Number]) -> RatMap:
        return cls(Polynomial(coeffs))

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    # field arithmetic, used by the expression parser

    def __add__(self, other: RatMap | Number) -> RatMap:
        o = _as_map(other)
        return RatMap(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatMap:
        return RatMap._raw(-self.num, self.den)

    def __sub__(self, other: RatMap | Number) -> RatMap:
        return self + (-_as_map(other))

    def __rsub__(self, other: Number) -> RatMap:
        return _as_map(other) - self

    def __mul__(self, other: RatMap | Number) -> RatMap:
        o = _as_map(other)
        return RatMap(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatMap | Number) -> RatMap:
        o = _as_map(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero map")
        return RatMap(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: Number) -> RatMap:
        return _as_map(other) / self

    def __pow__(self, n: int) -> RatMap:
        if n < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of the zero map")
            return RatMap._raw(self.den ** (-n), self.num ** (-n))
        return RatMap._raw(self.num ** n, self.den ** n)

    def __call__(self, p: Point | Number) -> Point:
        return evaluate(self, as_point(p))

    def __matmul__(self, other: RatMap) -> RatMap:
        return compose(self, other)

    def __str__(self) -> str:
        return format_ratmap(self)

    def __repr__(self) -> str:
        return f"RatMap({format_ratmap(self)})"


def _as_map(x: RatMap | Number) -> RatMap:
    return x if isinstance(x, RatMap) else RatMap.const(x)


Z = RatMap.identity()


def format_ratmap(f: RatMap) -> str:
    if f.den.is_constant():
        return format_polynomial(f.num)
    num = format_polynomial(f.num)
    if len(f.num.coeffs) - f.num.coeffs.count(0) > 1:
        num = f"({num})"
    return f"{num}/({format_polynomial(f.den)})"


def compose(f: RatMap, g: RatMap) -> RatMap:
    """f o g."""
    if g.is_constant():
        v = evaluate(f, Fraction(g.num[0]))
        if v is INF:
            raise InvalidInput("composition with a constant landing on a pole")
        return RatMap.const(v)
    if f.is_constant():
        return f
    n = f.degree
    num = homogeneous_eval(f.num, g.num, g.den, n)
    den = homogeneous_eval(f.den, g.num, g.den, n)
    # coprime automatically: the homogenised forms have no common zero on P^1
    return RatMap._raw(num, den)


def iterate(f: RatMap, k: int) -> RatMap:
    if k < 0:
        raise InvalidInput("iterate count must be non-negative")
    out = RatMap.identity()
    for _ in range(k):
        out = compose(f, out)
    return out


def compose_all(maps: Iterable[RatMap]) -> RatMap:
    """Left-to-right list [f1, f2, ...] gives f1 o f2 o ..."""
    out = RatMap.identity()
    for m in maps:
        out = compose(out, m)
    return out


def evaluate(f: RatMap, p: Point) -> Point:
    _rational_only(p)
    if p is INF:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return Fraction(0)
        return f.num.lc / f.den.lc
    d = f.den(p)
    if d == 0:
        return INF
    return f.num(p) / d


def local_degree(f: RatMap, p: Point) -> int:
    """Multiplicity of f at p, via vanishing order of f - f(p)."""
    _rational_only(p)
    if f.is_constant():
        raise InvalidInput("local degree of a constant map")
    if p is INF:
        return local_degree(compose(f, RECIPROCAL), Fraction(0))
    v = evaluate(f, p)
    if v is INF:
        return f.den.root_order(p)
    return (f.num - f.den.scale(v)).root_order(p)


def right_divide(F: RatMap, V: RatMap) -> RatMap | None:
    """U with F = U o V when it exists; found by solving a linear system for U's coefficients."""
    if V.degree == 0 or F.degree % V.degree:
        return None
    m = F.degree // V.degree
    if m == 0:
        return F if F.is_constant() else None
    apow = [Polynomial.const(1)]
    bpow = [Polynomial.const(1)]
    for _ in range(m):
        apow.append(apow[-1] * V.num)
        bpow.append(bpow[-1] * V.den)
    basis = [apow[i] * bpow[m - i] for i in range(m + 1)]
    # P * D(V) - Q * N(V) = 0, unknowns: u_0..u_m (numerator), v_0..v_m (denominator)
    cols = [-(F.den * b) for b in basis] + [F.num * b for b in basis]
    nrows = max(c.degree for c in cols) + 1
    rows = [[c[r] for c in cols] for r in range(nrows)]
    for vec in nullspace(rows, 2 * m + 2):
        num = Polynomial(vec[: m + 1])
        den = Polynomial(vec[m + 1 :])
        if num.is_zero() or den.is_zero():
            continue
        U = RatMap(num, den)
        if U.degree == m and compose(U, V) == F:
            return U
    return None


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d), scaled so the first nonzero entry is 1."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a: Number, b: Number, c: Number, d: Number) -> None:
        vals = [Fraction(x) for x in (a, b, c, d)]
        if vals[0] * vals[3] - vals[1] * vals[2] == 0:
            raise InvalidInput("degenerate Mobius matrix")
        lead = next(x for x in vals if x != 0)
        vals = [x / lead for x in vals]
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v)

    @classmethod
    def identity(cls) -> MobiusMap:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_ratmap(cls, f: RatMap) -> MobiusMap:
        if f.degree != 1:
            raise InvalidInput("not a degree-one map")
        return cls(f.num[1], f.num[0], f.den[1], f.den[0])

    @classmethod
    def to_zero_one_inf(cls, p: Point, q: Point, r: Point) -> MobiusMap:
        """The map sending p, q, r to 0, 1, infinity."""
        for x in (p, q, r):
            _rational_only(x)
        if len({point_key(x) for x in (p, q, r)}) < 3:
            raise InvalidInput("three distinct points needed")
        if p is INF:
            return cls(0, q - r, 1, -r)
        if q is INF:
            return cls(1, -p, 1, -r)
        if r is INF:
            return cls(1, -p, 0, q - p)
        return cls(q - r, -p * (q - r), q - p, -r * (q - p))

    @classmethod
    def through(cls, src: tuple[Point, Point, Point], dst: tuple[Point, Point, Point]) -> MobiusMap:
        """The unique map sending src[i] to dst[i]."""
        return cls.to_zero_one_inf(*dst).inverse().compose(cls.to_zero_one_inf(*src))

    def as_ratmap(self) -> RatMap:
        return RatMap(Polynomial((self.b, self.a)), Polynomial((self.d, self.c)))

    def inverse(self) -> MobiusMap:
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self o other."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __call__(self, p: Point | Number) -> Point:
        return evaluate(self.as_ratmap(), as_point(p))

    def __str__(self) -> str:
        return format_ratmap(self.as_ratmap())


RECIPROCAL = RatMap(1, Polynomial.var())


def mobius_conjugate(f: RatMap, m: MobiusMap) -> RatMap:
    """m o f o m^-1."""
    return compose(compose(m.as_ratmap(), f), m.inverse().as_ratmap())


@dataclass(frozen=True)
class MuClass:
    """Outcome of the mu-equivalence classifier.

    ``kind`` is "power", "chebyshev", "zhukovsky" or None.  When the portrait
    matches a family but the Mobius witnesses are not rational, ``witnesses``
    is None and ``portrait_matches`` is True.
    """

    kind: str | None
    n: int = 0
    sign: int = 1
    witnesses: tuple[MobiusMap, MobiusMap] | None = None
    portrait_matches: bool = False

    @property
    def exact(self) -> bool:
        return self.witnesses is not None


def classify_mu_equivalence(f: RatMap) -> MuClass:
    """Decide whether f = mu1 o g o mu2 with g a power, a Chebyshev polynomial or Z_n."""
    from .mu_equivalence import classify

    return classify(f)
