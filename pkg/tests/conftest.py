from __future__ import annotations

from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from semiconj.core import Polynomial
from semiconj.ratmap import RatMap

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

zs = sp.Symbol("z")

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_fracs = small_fracs.filter(lambda x: x != 0)


@st.composite
def polynomials(draw, min_degree=0, max_degree=4):
    deg = draw(st.integers(min_degree, max_degree))
    cs = draw(st.lists(small_fracs, min_size=deg, max_size=deg))
    lead = draw(nonzero_fracs)
    return Polynomial(cs + [lead])


@st.composite
def ratmaps(draw, min_degree=1, max_degree=3):
    while True:
        num = draw(polynomials(0, max_degree))
        den = draw(polynomials(0, max_degree))
        f = RatMap(num, den)
        if min_degree <= f.degree <= max_degree:
            return f


def _mobius(entries):
    from semiconj.ratmap import MobiusMap

    return MobiusMap(*entries)


mobius_maps = lambda: st.tuples(small_fracs, small_fracs, small_fracs, small_fracs).filter(
    lambda e: e[0] * e[3] - e[1] * e[2] != 0
).map(_mobius)


def to_sympy_poly(p: Polynomial) -> sp.Expr:
    return sum(sp.Rational(c.numerator, c.denominator) * zs**i for i, c in enumerate(p.coeffs))


def to_sympy(f: RatMap) -> sp.Expr:
    return to_sympy_poly(f.num) / to_sympy_poly(f.den)


def same_map(f: RatMap, expr: sp.Expr) -> bool:
    return sp.simplify(to_sympy(f) - expr) == 0
