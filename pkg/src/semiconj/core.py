"""Exact polynomial arithmetic over the rationals.

Polynomials are dense, lowest degree first, with ``Fraction`` coefficients.
Everything here is immutable; functions return new objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from itertools import count
from typing import Iterable, Sequence

from .errors import InvalidInput

Number = Fraction | int


def _frac(x: Number | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, slots=True)
class Polynomial:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``z**i``."""

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable[Number] = ()) -> None:
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: Number) -> Polynomial:
        return cls((c,))

    @classmethod
    def var(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: Number = 1) -> Polynomial:
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> Polynomial:
        out = cls.const(1)
        for r in roots:
            out = out * cls((-_frac(r), 1))
        return out

    # basic properties

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Polynomial(c / lc for c in self.coeffs)

    def scale(self, c: Number) -> Polynomial:
        c = _frac(c)
        return Polynomial(x * c for x in self.coeffs)

    # ring operations

    def __add__(self, other: Polynomial | Number) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial | Number) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Number) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other: Polynomial | Number) -> Polynomial:
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        if len(a) * len(b) < 64:
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x == 0:
                    continue
                for j, y in enumerate(b):
                    out[i + j] += x * y
            return Polynomial(out)
        ia, da = _integer_form(a)
        ib, db = _integer_form(b)
        den = da * db
        return Polynomial(Fraction(c, den) for c in _int_convolve(ia, ib))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise InvalidInput("negative power of a polynomial")
        result, base = Polynomial.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Polynomial(), self
        inv = 1 / other.lc
        quot = [Fraction(0)] * (len(rem) - dq)
        oc = other.coeffs
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] * inv
            if q == 0:
                continue
            quot[i - dq] = q
            for j in range(dq + 1):
                rem[i - dq + j] -= q * oc[j]
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def exact_div(self, other: Polynomial) -> Polynomial:
        q, r = divmod(self, other)
        if r:
            raise InvalidInput("inexact polynomial division")
        return q

    # calculus and evaluation

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reversed_to(self, n: int) -> Polynomial:
        """Coefficients of ``z**n * p(1/z)``; requires ``n >= degree``."""
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Polynomial(reversed(cs))

    def root_order(self, r: Number) -> int:
        """Multiplicity of ``r`` as a root."""
        if self.is_zero():
            raise InvalidInput("root order of the zero polynomial")
        lin = Polynomial((-_frac(r), 1))
        k, p = 0, self
        while True:
            q, rem = divmod(p, lin)
            if rem:
                return k
            k, p = k + 1, q

    def content_key(self) -> tuple[int, tuple[Fraction, ...]]:
        """Deterministic ordering key (degree first)."""
        return (self.degree, self.coeffs)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


def _integer_form(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Integer coefficients and the common denominator."""
    den = reduce(lcm, (c.denominator for c in cs), 1)
    return [c.numerator * (den // c.denominator) for c in cs], den


def _int_convolve(a: list[int], b: list[int]) -> list[int]:
    """Product of integer coefficient lists by Kronecker substitution."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    shift = 2 * bound.bit_length() + 2  # room for signed digits
    half = 1 << (shift - 1)
    mask = (1 << shift) - 1

    def pack(cs: list[int]) -> int:
        return sum(c << (shift * i) for i, c in enumerate(cs))

    prod = pack(a) * pack(b)
    out = []
    for _ in range(len(a) + len(b) - 1):
        digit = prod & mask
        if digit >= half:
            digit -= 1 << shift
        out.append(digit)
        prod = (prod - digit) >> shift
    return out


def _as_poly(x: Polynomial | Number) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.const(x)


def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    terms: list[str] = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = format_fraction(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_fraction(a)}*{mono}"
        terms.append(f"{sign} {body}")
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# gcd, squarefree parts, resultants

def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if p.is_zero() and q.is_zero():
        raise InvalidInput("gcd(0, 0) is undefined")
    a, b = p.monic(), q.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic pairwise coprime squarefree factors with multiplicities."""
    if p.is_zero():
        raise InvalidInput("squarefree decomposition of the zero polynomial")
    if p.is_constant():
        return []
    out: list[tuple[Polynomial, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while not b.is_constant():
        g = poly_gcd(b, d)
        if not g.is_constant():
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: Polynomial) -> Polynomial:
    return reduce(lambda acc, fm: acc * fm[0], squarefree_decomposition(p), Polynomial.const(1))


def resultant(a: Polynomial, b: Polynomial) -> Fraction:
    """Sylvester resultant of two univariate polynomials (actual degrees)."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    acc = Fraction(1)
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return acc * b.lc ** m
        if m == 0:
            return acc * a.lc ** n
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if (m * n) % 2:
            acc = -acc
        acc *= b.lc ** (m - r.degree)
        a, b = b, r


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Polynomial:
    """Newton interpolation through the given nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Polynomial.const(coef[-1]) if coef else Polynomial()
    for i in range(n - 2, -1, -1):
        out = out * Polynomial((-xs[i], 1)) + coef[i]
    return out


def pencil_resultant(P: Polynomial, Q: Polynomial, W: Polynomial) -> Polynomial:
    """Res_z(P - t*Q, W) as a polynomial in t.

    The first argument is taken with its formal degree max(deg P, deg Q), so the
    result is a genuine polynomial identity in t.
    """
    if W.is_zero():
        raise InvalidInput("resultant against the zero polynomial")
    n = max(P.degree, Q.degree)
    m = W.degree
    if m == 0:
        return Polynomial.const(W.lc ** n)
    xs = [Fraction(j) for j in range(m + 1)]
    ys = []
    sign = -1 if (n * m) % 2 else 1
    for t in xs:
        F = P - Q.scale(t)
        if F.is_zero():
            ys.append(Fraction(0))
            continue
        ys.append(sign * W.lc ** (n - F.degree) * resultant(W, F))
    return interpolate(xs, ys)


def homogeneous_eval(p: Polynomial, a: Polynomial, b: Polynomial, n: int | None = None) -> Polynomial:
    """Sum of p_i * a^i * b^(n-i), the degree-n homogenisation of p at (a, b)."""
    n = p.degree if n is None else n
    if p.is_zero():
        return Polynomial()
    apow = [Polynomial.const(1)]
    bpow = [Polynomial.const(1)]
    for _ in range(n):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    out = Polynomial()
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + (apow[i] * bpow[n - i]).scale(c)
    return out


# factorisation over Q (irreducible splitting is delegated to sympy)

def irreducible_factors(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors over Q with multiplicities, in a deterministic order.

    Multiplicities come from our own squarefree decomposition; sympy only splits
    each squarefree part into irreducibles.
    """
    out: list[tuple[Polynomial, int]] = []
    for part, mult in squarefree_decomposition(p):
        for f in _split_squarefree(part):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].content_key(), fm[1]))
    return out


def _split_squarefree(p: Polynomial) -> list[Polynomial]:
    if p.degree == 1:
        return [p.monic()]
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")
    _, factors = expr.factor_list()
    out = []
    for f, _ in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append(Polynomial(cs).monic())
    return out


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, ascending."""
    out = [(-f[0], m) for f, m in irreducible_factors(p) if f.degree == 1]
    return sorted(out)


# exact linear algebra

def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix, via reduced row echelon form."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of rows * x = rhs, or None when inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [-b] for r, b in zip(rows, rhs)]
    for v in nullspace(aug, n + 1):
        if v[n] != 0:
            return [x / v[n] for x in v[:n]]
    return None


# rational functions in z as (num, den) pairs, and polynomials over them

RatPair = tuple[Polynomial, Polynomial]


def reduce_pair(num: Polynomial, den: Polynomial) -> RatPair:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return Polynomial(), Polynomial.const(1)
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lc
    return num.scale(1 / lc), den.scale(1 / lc)


def _pair_sub_mul(x: RatPair, q: RatPair, h: RatPair) -> RatPair:
    # x - q*h
    qn, qd = q
    hn, hd = h
    pn, pd = qn * hn, qd * hd
    return reduce_pair(x[0] * pd - pn * x[1], x[1] * pd)


def _pair_div(x: RatPair, y: RatPair) -> RatPair:
    return reduce_pair(x[0] * y[1], x[1] * y[0])


def _pair_at(x: RatPair, z0: Fraction) -> Fraction | None:
    d = x[1](z0)
    return None if d == 0 else x[0](z0) / d


@dataclass(frozen=True, slots=True)
class FunctionFieldPolynomial:
    """Polynomial in t whose coefficients are reduced rational functions of z."""

    coeffs: tuple[RatPair, ...]

    def __init__(self, coeffs: Iterable[RatPair | Polynomial | Number]) -> None:
        cs: list[RatPair] = []
        for c in coeffs:
            if isinstance(c, tuple):
                cs.append(reduce_pair(*c))
            else:
                cs.append((_as_poly(c), Polynomial.const(1)))
        while cs and cs[-1][0].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> FunctionFieldPolynomial:
        lc = self.coeffs[-1]
        return FunctionFieldPolynomial(_pair_div(c, lc) for c in self.coeffs)

    def at(self, z0: Fraction) -> Polynomial | None:
        """Specialise z = z0; None when a denominator vanishes or the degree drops."""
        vals = []
        for c in self.coeffs:
            v = _pair_at(c, z0)
            if v is None:
                return None
            vals.append(v)
        if vals and vals[-1] == 0:
            return None
        return Polynomial(vals)

    def divides(self, other: FunctionFieldPolynomial) -> bool:
        """Exact divisibility test in Q(z)[t] (self must be monic)."""
        rem = list(other.coeffs)
        r = self.degree
        for i in range(len(rem) - 1, r - 1, -1):
            q = rem[i]
            if q[0].is_zero():
                continue
            for j in range(r + 1):
                rem[i - r + j] = _pair_sub_mul(rem[i - r + j], q, self.coeffs[j])
        return all(c[0].is_zero() for c in rem[:r])


def _sample_points() -> Iterable[Fraction]:
    yield Fraction(0)
    for k in count(1):
        yield Fraction(k)
        yield Fraction(-k)
        yield Fraction(1, k + 1)


def rational_reconstruction(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> RatPair | None:
    """Rational function num/den with deg num + deg den < len(xs) through the data.

    Uses the half-extended Euclidean algorithm on (prod(z - x_i), interpolant).
    """
    n = len(xs)
    M = Polynomial.from_roots(xs)
    L = interpolate(xs, ys)
    bound = (n - 1) // 2
    r0, r1 = M, L
    t0, t1 = Polynomial(), Polynomial.const(1)
    while r1.degree > bound:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    if L.is_zero():
        return Polynomial(), Polynomial.const(1)
    if r1.is_zero() or t1.is_zero():
        return None
    if any(t1(x) == 0 for x in xs):
        return None
    return reduce_pair(r1, t1)


def function_field_gcd(F: FunctionFieldPolynomial, G: FunctionFieldPolynomial) -> FunctionFieldPolynomial:
    """Monic gcd in t over Q(z).

    Evaluation at rational z followed by rational reconstruction of each
    coefficient; the candidate is accepted only after exact trial division of
    both inputs, and its degree is certified minimal by the specialisations.
    """
    if F.is_zero() or G.is_zero():
        nz = F if G.is_zero() else G
        if nz.is_zero():
            raise InvalidInput("gcd of two zero polynomials")
        return nz.monic()
    points: list[Fraction] = []
    images: list[Polynomial] = []
    best = None
    target = 4
    for z0 in _sample_points():
        f0, g0 = F.at(z0), G.at(z0)
        if f0 is None or g0 is None:
            continue
        h0 = poly_gcd(f0, g0)
        if best is None or h0.degree < best:
            best, points, images = h0.degree, [], []
        if h0.degree > best:
            continue
        if best == 0:
            return FunctionFieldPolynomial([1])
        points.append(z0)
        images.append(h0)
        if len(points) < target:
            continue
        cand = _reconstruct(points, images, best)
        if cand is not None and cand.divides(F) and cand.divides(G):
            return cand
        target *= 2
    raise AssertionError("unreachable")


def _reconstruct(points: list[Fraction], images: list[Polynomial], deg: int) -> FunctionFieldPolynomial | None:
    coeffs: list[RatPair] = []
    for j in range(deg):
        rec = rational_reconstruction(points, [h[j] for h in images])
        if rec is None:
            return None
        coeffs.append(rec)
    coeffs.append((Polynomial.const(1), Polynomial.const(1)))
    return FunctionFieldPolynomial(coeffs)
