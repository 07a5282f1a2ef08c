"""Explicit maps: powers, Chebyshev polynomials, Z_n, Delta, Gamma, Omega and friends."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from .core import Polynomial
from .errors import InvalidInput
from .ratmap import RECIPROCAL, Z, RatMap, compose, right_divide

_z = Polynomial.var()

KINDS_WITH_N = ("pow", "T", "Z", "theta_cyclic", "theta_dihedral")
NAMED = ("Delta", "Gamma", "Omega", "lattes233_12", "lattes233_4", "lattes233_6")


@dataclass(frozen=True)
class FamilyTag:
    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind in KINDS_WITH_N:
            if self.n < 1:
                raise InvalidInput(f"{self.kind} needs n >= 1")
        elif self.kind not in NAMED:
            raise InvalidInput(f"unknown family {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}({self.n})" if self.kind in KINDS_WITH_N else self.kind


def power(n: int) -> RatMap:
    return RatMap(Polynomial.monomial(n))


@lru_cache(maxsize=None)
def _chebyshev_poly(n: int) -> Polynomial:
    prev, cur = Polynomial.const(1), _z
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, _z * cur * 2 - prev
    return cur


def chebyshev(n: int) -> RatMap:
    """T_n from the three-term recurrence."""
    if n < 0:
        raise InvalidInput("Chebyshev index must be >= 0")
    return RatMap(_chebyshev_poly(n))


def chebyshev_closed_form(n: int) -> RatMap:
    """T_n = (n/2) sum_k (-1)^k (n-k-1)! / (k! (n-2k)!) (2z)^(n-2k), for n >= 1."""
    if n < 1:
        raise InvalidInput("closed form needs n >= 1")
    out = Polynomial()
    for k in range(n // 2 + 1):
        c = Fraction((-1) ** k * factorial(n - k - 1), factorial(k) * factorial(n - 2 * k))
        out = out + Polynomial.monomial(n - 2 * k, c * Fraction(n, 2) * 2 ** (n - 2 * k))
    return RatMap(out)


def zhukovsky(n: int) -> RatMap:
    """Z_n = (z^n + z^-n) / 2."""
    return RatMap(Polynomial.monomial(2 * n) + 1, Polynomial.monomial(n, 2))


DELTA = RatMap(_z * 27, (_z * 4 - 1) ** 3)
GAMMA = RatMap(_z * (_z - 1) ** 3 * -64, (_z * 8 + 1) ** 3)

# -1/64 * z^3 (z^3 - 8)^3 / (z^3 + 1)^3 and its two relatives
_z3 = _z ** 3
LATTES233_12 = RatMap(_z3 * (_z3 - 8) ** 3 * Fraction(-1, 64), (_z3 + 1) ** 3)
LATTES233_4 = RatMap(_z * (_z - 8) ** 3 * Fraction(-1, 64), (_z + 1) ** 3)
LATTES233_6 = RatMap((_z ** 2 - 4) ** 3 * Fraction(-1, 64), (_z - 1) ** 3)

OMEGA_PRINTED = RatMap(
    (_z - 1) ** 3 * (_z * 8 + 1) ** 6 * _z * 1728,
    (_z ** 3 * 64 - _z ** 2 * 48 + _z * 228 - 1) ** 3 * (_z * 4 - 1) ** 3,
)


@lru_cache(maxsize=None)
def omega() -> RatMap:
    """Gamma o Delta (the composed product is authoritative)."""
    return compose(GAMMA, DELTA)


def make(tag: FamilyTag | str) -> RatMap:
    if isinstance(tag, str):
        tag = parse_tag(tag)
    kind, n = tag.kind, tag.n
    if kind in ("pow", "theta_cyclic"):
        return power(n)
    if kind == "T":
        return chebyshev(n)
    if kind in ("Z", "theta_dihedral"):
        return zhukovsky(n)
    return {
        "Delta": DELTA,
        "Gamma": GAMMA,
        "lattes233_12": LATTES233_12,
        "lattes233_4": LATTES233_4,
        "lattes233_6": LATTES233_6,
    }.get(kind) or omega()


def parse_tag(text: str) -> FamilyTag:
    text = text.strip()
    if "(" in text and text.endswith(")"):
        kind, arg = text[:-1].split("(", 1)
        try:
            return FamilyTag(kind.strip(), int(arg))
        except ValueError as exc:
            raise InvalidInput(f"bad family argument in {text!r}") from exc
    return FamilyTag(text)


def recognize(f: RatMap) -> FamilyTag | None:
    """Name of f when it is literally one of the families (degree >= 2)."""
    d = f.degree
    if d < 2:
        return None
    candidates: list[FamilyTag] = [FamilyTag("pow", d), FamilyTag("T", d)]
    if d % 2 == 0:
        candidates.append(FamilyTag("Z", d // 2))
    candidates += {
        3: [FamilyTag("Delta")],
        4: [FamilyTag("Gamma"), FamilyTag("lattes233_4")],
        6: [FamilyTag("lattes233_6")],
        12: [FamilyTag("Omega"), FamilyTag("lattes233_12")],
    }.get(d, [])
    for tag in candidates:
        if make(tag) == f:
            return tag
    return None


def in_frak_T(G: RatMap) -> bool:
    """G(1/z) = 1/G(z)."""
    if G.num.is_zero():
        return False
    return compose(G, RECIPROCAL) == RatMap(1) / G


def power_orbifold_self_map(r: int, R: RatMap, n: int) -> RatMap:
    """z^r R(z)^n, a minimal self-map of the orbifold nu(0) = nu(inf) = n."""
    if not 1 <= r <= n - 1:
        raise InvalidInput("need 1 <= r <= n - 1")
    if gcd(r, n) != 1:
        raise InvalidInput("need gcd(r, n) = 1")
    return power(r) * R ** n


def dihedral_orbifold_self_map(r: int, S: RatMap, n: int, sign: int = 1) -> RatMap:
    """A with A o Z_1 = Z_1 o (sign * z^r S^n), hence A o Z_n = Z_n o (eps z^r S(z^n)).

    The result is a minimal self-map of nu(-1) = nu(1) = 2, nu(inf) = n.
    """
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    if not 1 <= r <= n - 1 or gcd(r, n) != 1:
        raise InvalidInput("need 1 <= r <= n - 1 and gcd(r, n) = 1")
    if not in_frak_T(S):
        raise InvalidInput("S must satisfy S(1/z) = 1/S(z)")
    inner = power(r) * S ** n * sign
    z1 = zhukovsky(1)
    A = right_divide(compose(z1, inner), z1)
    if A is None:
        raise AssertionError("Z_1 o inner is not invariant under z -> 1/z")
    return A


def remark_identities(n: int, m: int, R: RatMap) -> dict[str, bool]:
    """The three identities realisable over Q, checked by exact composition."""
    zn = power(n)
    r_of_zn = compose(R, zn)
    left1 = compose(zn, power(m) * r_of_zn)
    right1 = compose(power(m) * R ** n, zn)
    ok = gcd(n, m) == 1
    return {
        "power": left1 == right1,
        "zhukovsky": ok and compose(zhukovsky(n), power(m)) == compose(chebyshev(m), zhukovsky(n)),
        "chebyshev": compose(chebyshev(n), chebyshev(m)) == compose(chebyshev(m), chebyshev(n)),
    }


IDENTITY = Z
