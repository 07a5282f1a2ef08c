"""Semiconjugacies, solution squares, Luroth generators and special maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count, permutations
from math import gcd

import sympy

from .core import FunctionFieldPolynomial, Polynomial, function_field_gcd
from .errors import InfiniteGroup, InvalidInput, NotSemiconjugate
from .families import DELTA, GAMMA, chebyshev, power, zhukovsky
from .orbifold import (
    ExceptionRecord,
    Orbifold,
    euler_char,
    exceptional_self_cover_lookup,
    is_minimal_holomorphic,
    orbifolds_of_map,
    zero_char_self_covers,
)
from .ramification import critical_points, critical_values, fiber, fiber_portrait
from .ratmap import (
    INF,
    AlgebraicClass,
    MobiusMap,
    Point,
    RatMap,
    Z,
    classify_mu_equivalence,
    compose,
    compose_all,
    iterate,
    mobius_conjugate,
    point_key,
    right_divide,
)


def verify_semiconjugacy(A: RatMap, X: RatMap, B: RatMap) -> bool:
    """A o X == X o B."""
    return compose(A, X) == compose(X, B)


def coprime_local_degrees(C: RatMap, B: RatMap) -> bool:
    """gcd(deg_z C, deg_z B) = 1 at every point (only shared critical points matter)."""
    dc = dict(critical_points(C))
    return all(gcd(dc[p], e) == 1 for p, e in critical_points(B) if p in dc)


@dataclass(frozen=True)
class SolutionSquare:
    """A o C = D o B."""

    A: RatMap
    C: RatMap
    D: RatMap
    B: RatMap

    def __post_init__(self) -> None:
        if compose(self.A, self.C) != compose(self.D, self.B):
            raise InvalidInput("A o C != D o B")


@dataclass(frozen=True)
class GoodnessReport:
    fiber_product_irreducible: bool | None  # None: not checked
    no_common_right_factor: bool
    degrees_match: bool
    verdict: bool


def is_good_solution(s: SolutionSquare) -> GoodnessReport:
    """Goodness from the two computable conditions.

    Any two of (irreducible fibre product of A and D, no common right factor of
    B and C, matching degrees) imply the third, so the last two decide the
    verdict.  Irreducibility is known when the square is good, and when exactly
    one of the other two conditions holds (it must then fail).  The right-factor
    condition is decided as Q(B, C) = Q(z); on squares it agrees with
    coprime_local_degrees.
    """
    degrees = s.A.degree == s.B.degree and s.C.degree == s.D.degree
    no_common = is_primitive(s.C, s.B)
    verdict = degrees and no_common
    irreducible: bool | None
    if verdict:
        irreducible = True
    elif degrees or no_common:
        irreducible = False
    else:
        irreducible = None
    return GoodnessReport(irreducible, no_common, degrees, verdict)


def diagram_is_minimal(s: SolutionSquare) -> bool:
    """A: O2^C -> O2^D and B: O1^C -> O1^D are minimal holomorphic."""
    o1c, o2c = orbifolds_of_map(s.C)
    o1d, o2d = orbifolds_of_map(s.D)
    return is_minimal_holomorphic(s.A, o2c, o2d) and is_minimal_holomorphic(s.B, o1c, o1d)


def model_good_square(kind: str, m1: int = 0, m2: int = 0) -> SolutionSquare:
    """The four model good squares with all Mobius factors trivial.

    kind "i"/"ii": powers/Chebyshev of coprime degrees m1, m2 >= 2;
    "iii": Gamma, Delta, Delta, Gamma; "iv": T_2, Z_m, Z_m, z^2 with m = m2 odd.
    """
    if kind in ("i", "ii"):
        if m1 < 2 or m2 < 2 or gcd(m1, m2) != 1:
            raise InvalidInput("need m1, m2 >= 2 coprime")
        g = power if kind == "i" else chebyshev
        return SolutionSquare(g(m1), g(m2), g(m2), g(m1))
    if kind == "iii":
        return SolutionSquare(GAMMA, DELTA, DELTA, GAMMA)
    if kind == "iv":
        if m2 < 1 or m2 % 2 == 0:
            raise InvalidInput("need odd m")
        return SolutionSquare(chebyshev(2), zhukovsky(m2), zhukovsky(m2), power(2))
    raise InvalidInput(f"unknown family {kind!r}")


# Luroth generators

def _pencil_in_t(X: RatMap) -> FunctionFieldPolynomial:
    """num_X(t) den_X(z) - num_X(z) den_X(t) as a polynomial in t over Q(z)."""
    n = max(X.num.degree, X.den.degree)
    return FunctionFieldPolynomial(X.den * X.num[i] - X.num * X.den[i] for i in range(n + 1))


def _source_points():
    yield INF
    yield Fraction(0)
    for k in count(1):
        yield Fraction(k)
        yield Fraction(-k)


def normalize_generator(U: RatMap) -> RatMap:
    """Left-compose U with the Mobius map sending U(p1), U(p2), U(p3) to 0, 1, inf.

    p1, p2, p3 are the first points of inf, 0, 1, -1, 2, -2, ... with distinct
    images, so the result depends only on the field Q(U).
    """
    if U.degree < 1:
        raise InvalidInput("constant generator")
    images: list[Point] = []
    for p in _source_points():
        v = U(p)
        if v not in images:
            images.append(v)
            if len(images) == 3:
                break
    mu = MobiusMap.to_zero_one_inf(*images)
    return compose(mu.as_ratmap(), U)


def luroth_generator(X: RatMap, B: RatMap) -> tuple[RatMap, int]:
    """Generator U of Q(X, B) and the index [Q(z) : Q(X, B)] = deg U."""
    if X.degree < 1 or B.degree < 1:
        raise InvalidInput("both maps must be nonconstant")
    G = function_field_gcd(_pencil_in_t(X), _pencil_in_t(B))
    idx = G.degree
    if idx == 1:
        return Z, 1
    for num, den in G.coeffs:
        if not (num.is_constant() and den.is_constant()):
            return normalize_generator(RatMap(num, den)), idx
    raise AssertionError("gcd has constant coefficients")


def is_primitive(X: RatMap, B: RatMap) -> bool:
    return luroth_generator(X, B)[1] == 1


# the Mobius symmetry group

def _marked_rational_points(B: RatMap) -> dict[Point, tuple]:
    """Rational points over critical values, keyed to data preserved by any symmetry."""
    out: dict[Point, tuple] = {}
    for v in critical_values(B):
        shape = fiber_portrait(B, v)
        for p, e in fiber(B, v):
            if not isinstance(p, AlgebraicClass):
                out[p] = (e, shape)
    return out


def _is_symmetry(B: RatMap, mu: MobiusMap) -> bool:
    nu = right_divide(compose(B, mu.as_ratmap()), B)
    return nu is not None and nu.degree == 1


def _symmetries_by_triples(B: RatMap, marked: dict[Point, tuple]) -> list[MobiusMap]:
    pts = sorted(marked, key=point_key)
    src = tuple(pts[:3])
    out: list[MobiusMap] = []
    for dst in permutations(pts, 3):
        if any(marked[s] != marked[t] for s, t in zip(src, dst)):
            continue
        mu = MobiusMap.through(src, dst)
        if mu not in out and _is_symmetry(B, mu):
            out.append(mu)
    return out


def _binary_form(B: RatMap, e: int) -> tuple[Polynomial, int]:
    """Product of the finite critical points of local degree e, and its homogeneous degree."""
    poly = Polynomial.const(1)
    hdeg = 0
    for p, d in critical_points(B):
        if d != e:
            continue
        hdeg += 1 if not isinstance(p, AlgebraicClass) else p.size
        if isinstance(p, AlgebraicClass):
            poly = poly * p.minpoly
        elif p is not INF:
            poly = poly * Polynomial((-p, 1))
    return poly, hdeg


def _rational(x: sympy.Expr) -> Fraction:
    num, den = sympy.fraction(sympy.nsimplify(x))
    return Fraction(int(num), int(den))


def _symmetries_by_solving(B: RatMap) -> list[MobiusMap]:
    """Solve for rational (a z + b) / (c z + d) preserving each critical-point form up to scale.

    Needed when fewer than three rational marked points exist (e.g. odd maps
    whose finite critical points are irrational).
    """
    a, b, d, zz = sympy.symbols("a b d zz")
    forms = [_binary_form(B, e) for e in sorted({e for _, e in critical_points(B)})]
    out: list[MobiusMap] = []
    for chart in ((a, b, 1, d), (a, b, 0, 1)):
        A_, B_, C_, D_ = chart
        system = []
        for poly, hdeg in forms:
            coeffs = [sympy.Rational(c.numerator, c.denominator) for c in poly.coeffs]
            moved = sum(c * (A_ * zz + B_) ** i * (C_ * zz + D_) ** (hdeg - i) for i, c in enumerate(coeffs))
            mc = sympy.Poly(sympy.expand(moved), zz).all_coeffs()[::-1]
            mc += [0] * (hdeg + 1 - len(mc))
            fc = coeffs + [0] * (hdeg + 1 - len(coeffs))
            # proportional coefficient vectors: every 2x2 minor vanishes
            for i in range(hdeg + 1):
                for j in range(i + 1, hdeg + 1):
                    expr = sympy.expand(mc[i] * fc[j] - mc[j] * fc[i])
                    if expr != 0:
                        system.append(expr)
        unknowns = [s for s in chart if isinstance(s, sympy.Symbol)]
        for sol in sympy.solve(system, unknowns, dict=True):
            vals = [sympy.sympify(sol.get(s, s)) for s in chart]
            if not all(v.is_Rational for v in vals):
                continue
            fr = [_rational(v) for v in vals]
            if fr[0] * fr[3] - fr[1] * fr[2] == 0:
                continue
            mu = MobiusMap(*fr)
            if mu not in out and _is_symmetry(B, mu):
                out.append(mu)
    return out


def mobius_symmetry_group(B: RatMap) -> list[MobiusMap]:
    """Rational Mobius mu with B o mu = nu o B for some Mobius nu."""
    if B.degree < 2:
        raise InvalidInput("need degree >= 2")
    if B.degree == 2 or classify_mu_equivalence(B).kind == "power":
        raise InfiniteGroup("B is mu-equivalent to z^d; the group is {a z^(+-1)}")
    marked = _marked_rational_points(B)
    group = _symmetries_by_triples(B, marked) if len(marked) >= 3 else _symmetries_by_solving(B)
    return sorted(group, key=lambda m: (m != MobiusMap.identity(), str(m)))


# decomposition X = Xtilde o U o B^k

@dataclass(frozen=True)
class Decomposition:
    A: RatMap
    xtilde: RatMap
    U: RatMap
    k: int
    steps: tuple[tuple[RatMap, RatMap], ...]
    special: bool
    checks: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.steps)


def recover_semiconjugate(X: RatMap, B: RatMap) -> RatMap:
    """The unique A with A o X = X o B."""
    A = right_divide(compose(X, B), X)
    if A is None:
        raise NotSemiconjugate("no rational A with A o X = X o B")
    return A


def decompose_semiconjugacy(X: RatMap, B: RatMap) -> Decomposition:
    """Split X = Xtilde o U o B^k with (Xtilde, F_l) primitive.

    k is maximal; U = U_l o ... o U_1 where each U_i generates Q(X_{i-1}, F_{i-1}),
    X_{i-1} = X_i o U_i, F_{i-1} = V_i o U_i and F_i = U_i o V_i.
    """
    if X.degree < 1 or B.degree < 2:
        raise InvalidInput("need deg X >= 1 and deg B >= 2")
    A = recover_semiconjugate(X, B)
    k = 0
    Y = X
    while Y.degree >= B.degree:
        nxt = right_divide(Y, B)
        if nxt is None:
            break
        Y, k = nxt, k + 1
    F = B
    steps: list[tuple[RatMap, RatMap]] = []
    while Y.degree > 1:
        U, idx = luroth_generator(Y, F)
        if idx == 1:
            break
        Y_next, V = right_divide(Y, U), right_divide(F, U)
        if Y_next is None or V is None:
            raise AssertionError("Luroth generator is not a common right factor")
        steps.append((U, V))
        Y, F = Y_next, compose(U, V)
    U_total = compose_all(u for u, _ in reversed(steps)) if steps else Z
    special = classify_special(B).kind != "NonSpecial"
    dec = Decomposition(A, Y, U_total, k, tuple(steps), special)
    dec.checks.update(decomposition_checks(X, B, dec))
    return dec


def decomposition_checks(X: RatMap, B: RatMap, dec: Decomposition) -> dict[str, bool]:
    from .chains import luroth_steps_bound, primitive_degree_bound

    d = B.degree
    out = {
        "roundtrip": compose_all([dec.xtilde, dec.U, iterate(B, dec.k)]) == X,
        "semiconjugacy": verify_semiconjugacy(dec.A, X, B),
    }
    l = dec.length
    if l:
        out["U_divides_B_iterate"] = right_divide(iterate(B, l), dec.U) is not None
    if not dec.special and d >= 4:
        xt = dec.xtilde
        positive = xt.degree < 2 or euler_char(orbifolds_of_map(xt)[1]) > 0
        out["xtilde_positive"] = positive
        out["xtilde_degree_bound"] = xt.degree <= primitive_degree_bound(d)
        out["length_bound"] = luroth_steps_bound(d).ge_int(l)
    return out


# special maps

@dataclass(frozen=True)
class SpecialClass:
    kind: str  # PowerConjugate, ChebyshevConjugate, LattesCandidate, NonSpecial
    n: int = 0
    sign: int = 1
    witness: MobiusMap | None = None  # w o B o w^-1 is the model map
    orbifold: Orbifold | None = None
    exceptional: ExceptionRecord | None = None

    def describe(self) -> str:
        if self.kind == "PowerConjugate":
            body = f"z^{self.n}" if self.sign == 1 else f"z^-{self.n}"
        elif self.kind == "ChebyshevConjugate":
            body = f"T_{self.n}" if self.sign == 1 else f"-T_{self.n}"
        elif self.kind == "LattesCandidate":
            body = f"covering self-map of {self.orbifold}"
            if self.exceptional:
                body += f", exceptional case {self.exceptional.case}"
        else:
            return self.kind
        if self.witness is not None and self.kind != "LattesCandidate":
            body += f" via mu = {self.witness}"
        return f"{self.kind}: {body}"


def _conjugator_to(p: Point, q: Point) -> MobiusMap | None:
    """Rational Mobius map sending p to 0 and q to infinity."""
    if isinstance(p, AlgebraicClass) or isinstance(q, AlgebraicClass):
        return None
    r = next(x for x in (Fraction(0), Fraction(1), Fraction(-1), Fraction(2)) if x not in (p, q))
    return MobiusMap.through((p, q, r), (Fraction(0), INF, Fraction(1)))


def _power_conjugate(B: RatMap) -> SpecialClass | None:
    n = B.degree
    crit = critical_points(B)
    if [e for _, e in crit] != [n, n]:
        return None
    pts = [p for p, _ in crit]
    if set(pts) != set(critical_values(B)):
        return None
    p, q = pts
    if isinstance(p, AlgebraicClass):
        # both points are the roots of one quadratic; fixed iff m | num - z den
        fixed = ((B.num - B.den * Polynomial.var()) % p.minpoly).is_zero()
    else:
        fixed = B(p) == p
    sign = 1 if fixed else -1
    return SpecialClass("PowerConjugate", n, sign, _power_witness(B, n, sign, p, q))


def _power_witness(B: RatMap, n: int, sign: int, p: Point, q: Point) -> MobiusMap | None:
    """w with w o B o w^-1 = z^(sign n), when one exists over Q."""
    from .mu_equivalence import rational_nth_roots

    base = _conjugator_to(p, q)
    if base is None:
        return None
    g = mobius_conjugate(B, base)  # c z^n or c z^-n
    c = g.num.lc / g.den.lc
    # conjugating c z^n by s z gives c s^(1-n) z^n; c z^-n gives c s^(n+1) z^-n
    roots = rational_nth_roots(c, n - 1) if sign == 1 else rational_nth_roots(1 / c, n + 1)
    target = power(n) if sign == 1 else RatMap(1) / power(n)
    for s in roots:
        w = MobiusMap(s, 0, 0, 1).compose(base)
        if mobius_conjugate(B, w) == target:
            return w
    return None


def _quadratic_chebyshev(B: RatMap) -> SpecialClass | None:
    """Degree two: conjugate to z^2 - 2 iff a fixed critical point exists and the invariant is -2."""
    for p, _ in critical_points(B):
        if isinstance(p, AlgebraicClass) or B(p) != p:
            continue
        sigma = MobiusMap.identity() if p is INF else MobiusMap(0, 1, 1, -p)  # p -> inf
        P = compose(sigma.as_ratmap(), compose(B, sigma.inverse().as_ratmap()))
        if not P.is_polynomial():
            continue
        a, b, c = (P.num[i] / P.den.lc for i in (2, 1, 0))
        if a * c + b / 2 - b * b / 4 == -2:
            # w = a z + b/2 conjugates to w^2 - 2; then w = 2u gives 2 T_2
            w = MobiusMap(a / 2, b / 4, 0, 1).compose(sigma)
            return SpecialClass("ChebyshevConjugate", 2, 1, w)
    return None


def _chebyshev_conjugate(B: RatMap) -> SpecialClass | None:
    n = B.degree
    mc = classify_mu_equivalence(B)
    if mc.kind != "chebyshev" or n < 3:
        return None
    total = [fp for fp in critical_values(B) if fiber_portrait(B, fp) == (n,)]
    if len(total) != 1:
        return None
    c = total[0]
    if [p for p, _ in fiber(B, c)] != [c]:
        return None
    others = [v for v in critical_values(B) if v != c]
    simple = {p for v in others for p, e in fiber(B, v) if e == 1}
    if simple != set(others):
        return None
    sign = 1
    if n % 2 == 1 and not isinstance(others[0], AlgebraicClass) and B(others[0]) != others[0]:
        sign = -1
    witness = None
    if mc.exact:
        # the mu-witnesses fix the conjugator up to the symmetry z -> -z of T_n
        target = chebyshev(n) * sign
        b = mc.witnesses[1]
        for w in (MobiusMap.identity(), b, MobiusMap(-1, 0, 0, 1).compose(b)):
            if mobius_conjugate(B, w) == target:
                witness = w
                break
    return SpecialClass("ChebyshevConjugate", n, sign, witness)


def classify_special(B: RatMap) -> SpecialClass:
    if B.degree < 2:
        raise InvalidInput("need degree >= 2")
    found = _power_conjugate(B)
    if found is None:
        found = _quadratic_chebyshev(B) if B.degree == 2 else _chebyshev_conjugate(B)
    if found is not None:
        return found
    covers = zero_char_self_covers(B)
    if covers:
        O = covers[0]
        return SpecialClass("LattesCandidate", B.degree, 1, None, O, exceptional_self_cover_lookup(B, O, O))
    return SpecialClass("NonSpecial", B.degree)

