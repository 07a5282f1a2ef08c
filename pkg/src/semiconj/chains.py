"""Chains of elementary transformations and the explicit length bounds."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import InvalidDecomposition, InvalidInput, UndefinedValue
from .orbifold import euler_char, orbifolds_of_map
from .ratmap import RatMap, compose

Number = int | Fraction


@dataclass(frozen=True)
class LogExpr:
    """c0 + c1 * log2(M) with rational c0, c1 >= 0 and integer M >= 1, compared exactly."""

    c0: Fraction
    c1: Fraction
    M: int

    def __init__(self, c0: Number = 0, c1: Number = 0, M: int = 1) -> None:
        if M < 1 or c1 < 0:
            raise InvalidInput("need M >= 1 and c1 >= 0")
        if c1 == 0 or M == 1:
            c1, M = 0, 1
        object.__setattr__(self, "c0", Fraction(c0))
        object.__setattr__(self, "c1", Fraction(c1))
        object.__setattr__(self, "M", M)

    def compare(self, x: Number) -> int:
        """Sign of self - x."""
        r = Fraction(x) - self.c0
        if self.c1 == 0:
            return (r < 0) - (r > 0)
        # sign of log2(M) - r / c1 with r / c1 = p / q
        t = r / self.c1
        p, q = t.numerator, t.denominator
        if p <= 0:
            return 1
        lhs, rhs = self.M ** q, 2 ** p
        return (lhs > rhs) - (lhs < rhs)

    def __add__(self, k: Number) -> LogExpr:
        return LogExpr(self.c0 + k, self.c1, self.M)

    __radd__ = __add__

    def __sub__(self, k: Number) -> LogExpr:
        return LogExpr(self.c0 - k, self.c1, self.M)

    def __mul__(self, k: Number) -> LogExpr:
        if k < 0:
            raise InvalidInput("scaling by a negative number")
        return LogExpr(self.c0 * k, self.c1 * k, self.M)

    __rmul__ = __mul__

    def __lt__(self, x: Number) -> bool:
        return self.compare(x) < 0

    def __le__(self, x: Number) -> bool:
        return self.compare(x) <= 0

    def __gt__(self, x: Number) -> bool:
        return self.compare(x) > 0

    def __ge__(self, x: Number) -> bool:
        return self.compare(x) >= 0

    def __eq__(self, x: object) -> bool:
        if isinstance(x, LogExpr):
            return (self.c0, self.c1, self.M) == (x.c0, x.c1, x.M)
        if isinstance(x, (int, Fraction)):
            return self.compare(x) == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.c0, self.c1, self.M))

    def ge_int(self, s: Number) -> bool:
        return self.compare(s) >= 0

    def floor(self) -> int:
        n = floor(self.c0)
        while self.compare(n + 1) >= 0:
            n += 1
        return n

    def ceil(self) -> int:
        f = self.floor()
        return f if self.compare(f) == 0 else f + 1

    def __float__(self) -> float:
        from math import log2

        return float(self.c0) + float(self.c1) * log2(self.M)

    def __str__(self) -> str:
        if self.c1 == 0:
            return _fmt(self.c0)
        term = f"log2({self.M})" if self.c1 == 1 else f"{_fmt(self.c1)}*log2({self.M})"
        return term if self.c0 == 0 else f"{term} + {_fmt(self.c0)}" if self.c0 > 0 else f"{term} - {_fmt(-self.c0)}"

    def record(self) -> dict:
        return {
            "expr": str(self),
            "c0": _fmt(self.c0),
            "c1": _fmt(self.c1),
            "M": self.M,
            "floor": self.floor(),
            "ceil": self.ceil(),
        }


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def theta_bound(d: int) -> LogExpr:
    """1 for d = 4, else log2(84 (d - 4))."""
    if d < 4:
        raise InvalidInput("theta is defined for d >= 4")
    if d == 4:
        return LogExpr(1)
    return LogExpr(0, 1, 84 * (d - 4))


def good_chain_length_bound(d: int) -> LogExpr:
    """2 theta(d) + 26."""
    return 2 * theta_bound(d) + 26


def luroth_steps_bound(d: int) -> LogExpr:
    """(2 theta(d) + 26)(d/2 - 1): bound on the number of Luroth steps."""
    return good_chain_length_bound(d) * (Fraction(d, 2) - 1)


def primitive_degree_bound(d: int) -> int:
    """max{60, 2d - 1}."""
    if d < 2:
        raise InvalidInput("need d >= 2")
    return max(60, 2 * d - 1)


def nonneg_subchain_bound(d: int, k: int) -> LogExpr:
    """Good chains with s >= 2 theta(d) + k - 2 contain a non-negative subchain of length k."""
    if k < 2:
        raise InvalidInput("need k >= 2")
    return 2 * theta_bound(d) + (k - 2)


def stable_subchain_bound(s: int) -> int:
    """Non-negative chains of length s contain a stable subchain of length ceil(s / 7)."""
    if s < 1:
        raise InvalidInput("need s >= 1")
    return ceil(Fraction(s, 7))


def bounds_record(d: int) -> dict:
    return {
        "d": d,
        "theta": theta_bound(d).record(),
        "chain_bound": good_chain_length_bound(d).record(),
        "luroth_steps_bound": luroth_steps_bound(d).record(),
        "primitive_degree_bound": primitive_degree_bound(d),
    }


# chains

@dataclass(frozen=True)
class Chain:
    """Steps (U_i, V_i) with U_i o V_i = V_{i+1} o U_{i+1}; the basis is V_1 o U_1.

    ``relaxed`` admits degree-one entries (engine output); the chain predicates
    refuse relaxed chains.
    """

    steps: tuple[tuple[RatMap, RatMap], ...]
    relaxed: bool = False

    def __post_init__(self) -> None:
        if not self.steps:
            raise InvalidInput("a chain needs at least one step")
        if not self.relaxed and any(u.degree < 2 or v.degree < 2 for u, v in self.steps):
            raise InvalidInput("chain maps must have degree >= 2")

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def basis(self) -> RatMap:
        u, v = self.steps[0]
        return compose(v, u)


def validate_chain(c: Chain) -> bool:
    return all(
        compose(u, v) == compose(v2, u2) for (u, v), (u2, v2) in zip(c.steps, c.steps[1:])
    )


def elementary_transform(F: RatMap, U: RatMap, V: RatMap) -> RatMap:
    """V o U, given F = U o V."""
    if compose(U, V) != F:
        raise InvalidDecomposition("F != U o V")
    return compose(V, U)


def dual_chain(c: Chain) -> Chain:
    """U'_i = V_{s+1-i}, V'_i = U_{s+1-i}."""
    return Chain(tuple((v, u) for u, v in reversed(c.steps)), c.relaxed)


def subchain(c: Chain, i1: int, i2: int) -> Chain:
    """Steps i1..i2 (1-based, inclusive)."""
    if not 1 <= i1 < i2 <= c.length:
        raise InvalidInput("need 1 <= i1 < i2 <= s")
    return Chain(c.steps[i1 - 1 : i2], c.relaxed)


def constant_chain(A: RatMap, B: RatMap, s: int) -> Chain:
    """U_i = A, V_i = B for commuting A and B."""
    if compose(A, B) != compose(B, A):
        raise InvalidInput("A and B do not commute")
    return Chain(((A, B),) * s)


def chain_from_squares(squares) -> Chain:
    """Consecutive squares A o C = D o B glued with B_i = A_{i+1}, D_i = C_{i+1}."""
    squares = list(squares)
    if not squares:
        raise InvalidInput("no squares")
    steps = [(squares[0].A, squares[0].C)]
    for i, sq in enumerate(squares):
        if i + 1 < len(squares):
            nxt = squares[i + 1]
            if (sq.B, sq.D) != (nxt.A, nxt.C):
                raise InvalidInput(f"squares {i + 1} and {i + 2} do not glue")
        steps.append((sq.B, sq.D))
    return Chain(tuple(steps))


def _strict(c: Chain) -> None:
    if c.relaxed:
        raise InvalidInput("chain predicates need a strict chain (all degrees >= 2)")


def is_good_chain(c: Chain) -> bool:
    from .equations import SolutionSquare, is_good_solution

    _strict(c)
    if not validate_chain(c):
        return False
    return all(
        is_good_solution(SolutionSquare(u, v, v2, u2)).verdict
        for (u, v), (u2, v2) in zip(c.steps, c.steps[1:])
    )


def _chis(c: Chain) -> tuple[list[Fraction], list[Fraction]]:
    us = [euler_char(orbifolds_of_map(u)[1]) for u, _ in c.steps]
    vs = [euler_char(orbifolds_of_map(v)[1]) for _, v in c.steps]
    return us, vs


def _signatures(c: Chain) -> tuple[set, set]:
    su = {orbifolds_of_map(u)[1].signature for u, _ in c.steps}
    sv = {orbifolds_of_map(v)[1].signature for _, v in c.steps}
    return su, sv


def is_nonnegative(c: Chain) -> bool:
    if not is_good_chain(c):
        return False
    us, vs = _chis(c)
    return all(x >= 0 for x in us + vs)


def is_stable(c: Chain) -> bool:
    if not is_good_chain(c):
        return False
    su, sv = _signatures(c)
    return len(su) == 1 and len(sv) == 1


def chi1(c: Chain) -> Fraction:
    if not is_stable(c):
        raise UndefinedValue("chi1 is defined only for stable chains")
    return euler_char(orbifolds_of_map(c.steps[0][0])[1])


def chi2(c: Chain) -> Fraction:
    if not is_stable(c):
        raise UndefinedValue("chi2 is defined only for stable chains")
    return euler_char(orbifolds_of_map(c.steps[0][1])[1])


# serialisation

def chain_to_json(c: Chain) -> str:
    from .expr import print_expression

    return json.dumps(
        {
            "basis": print_expression(c.basis),
            "steps": [[print_expression(u), print_expression(v)] for u, v in c.steps],
            "relaxed": c.relaxed,
            "valid": validate_chain(c),
        },
        sort_keys=True,
    )


def chain_from_json(text: str) -> Chain:
    """Read {"steps": [[U, V], ...], "basis": ..., "relaxed": ...}; a stated basis must match."""
    from .expr import parse_expression

    try:
        data = json.loads(text)
        steps = tuple((parse_expression(u), parse_expression(v)) for u, v in data["steps"])
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed chain file: {exc}") from exc
    c = Chain(steps, bool(data.get("relaxed", False)))
    if "basis" in data and parse_expression(data["basis"]) != c.basis:
        raise InvalidInput("stated basis differs from V_1 o U_1")
    return c
