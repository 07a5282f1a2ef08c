from fractions import Fraction
from math import log2

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiconj.chains import (
    Chain,
    LogExpr,
    bounds_record,
    chain_from_json,
    chain_from_squares,
    chain_to_json,
    chi1,
    chi2,
    constant_chain,
    dual_chain,
    elementary_transform,
    good_chain_length_bound,
    is_good_chain,
    is_nonnegative,
    is_stable,
    luroth_steps_bound,
    nonneg_subchain_bound,
    primitive_degree_bound,
    stable_subchain_bound,
    subchain,
    theta_bound,
    validate_chain,
)
from semiconj.equations import SolutionSquare, model_good_square
from semiconj.errors import InvalidDecomposition, InvalidInput, UndefinedValue
from semiconj.families import DELTA, GAMMA, chebyshev, omega, zhukovsky
from semiconj.ratmap import Z, compose

z = Z
F = Fraction
T2, T3 = chebyshev(2), chebyshev(3)
Z1 = zhukovsky(1)


class TestTheta:
    def test_four(self):
        assert theta_bound(4) == 1

    def test_five_bracket(self):
        t = theta_bound(5)
        assert 2**6 < 84 < 2**7
        assert t > 6 and t < 7
        assert (t.floor(), t.ceil()) == (6, 7)

    def test_eighty_eight_bracket(self):
        t = theta_bound(88)
        assert 2**12 < 7056 < 2**13
        assert t.M == 84 * 84
        assert t > 12 and t < 13

    def test_small_degree(self):
        with pytest.raises(InvalidInput):
            theta_bound(3)

    @given(st.integers(5, 5000))
    def test_matches_float(self, d):
        t = theta_bound(d)
        exact = log2(84 * (d - 4))
        assert t.floor() == int(exact) or abs(exact - round(exact)) < 1e-9

    @given(st.integers(4, 2000))
    def test_monotone(self, d):
        assert good_chain_length_bound(d + 1).ceil() >= good_chain_length_bound(d).floor()


class TestLogExpr:
    def test_exact_power_of_two(self):
        e = LogExpr(0, 1, 64)
        assert e == 6 and e.floor() == e.ceil() == 6

    def test_comparisons_against_integers(self):
        e = LogExpr(26, 2, 84)  # 2 log2(84) + 26, between 38 and 40
        assert 38 < e.floor() + 1 and e > 38 and e < 40
        # s <= 2 log2 84 + 26 iff 2^(s - 26) <= 84^2
        for s in range(30, 45):
            assert e.ge_int(s) == (2 ** (s - 26) <= 84**2)

    def test_negative_scale(self):
        with pytest.raises(InvalidInput):
            LogExpr(0, 1, 5) * -1

    def test_record(self):
        rec = theta_bound(5).record()
        assert rec == {"expr": "log2(84)", "c0": "0", "c1": "1", "M": 84, "floor": 6, "ceil": 7}


class TestBounds:
    def test_chain_bound_four(self):
        assert good_chain_length_bound(4) == 28

    def test_steps_bound_four(self):
        assert luroth_steps_bound(4) == 28

    def test_steps_bound_six(self):
        # (2 log2 168 + 26) * 2
        b = luroth_steps_bound(6)
        assert (b.c0, b.c1, b.M) == (52, 4, 168)

    def test_primitive_degree(self):
        assert primitive_degree_bound(4) == 60
        assert primitive_degree_bound(31) == 61
        assert primitive_degree_bound(30) == 60

    def test_stable_subchain(self):
        assert stable_subchain_bound(29) == 5
        assert stable_subchain_bound(7) == 1
        assert stable_subchain_bound(14) == 2

    def test_nonneg_subchain(self):
        assert nonneg_subchain_bound(4, 2) == 2
        assert nonneg_subchain_bound(4, 5) == 5

    def test_record(self):
        rec = bounds_record(4)
        assert rec["theta"]["expr"] == "1"
        assert rec["chain_bound"]["expr"] == "28"
        assert rec["luroth_steps_bound"]["expr"] == "28"
        assert rec["primitive_degree_bound"] == 60


class TestChainOps:
    def test_constant_chain(self):
        c = constant_chain(T2, T3, 4)
        assert c.length == 4 and validate_chain(c)

    def test_non_commuting(self):
        with pytest.raises(InvalidInput):
            constant_chain(z**2, z + 1, 3)

    def test_two_step(self):
        assert validate_chain(Chain(((z**2, z**3), (z**3, z**2))))

    def test_mismatch(self):
        assert not validate_chain(Chain(((z**2, z**3), (z**2 + 1, z**3))))

    def test_elementary_powers(self):
        assert elementary_transform(z**6, z**2, z**3) == z**6

    def test_elementary_omega(self):
        assert elementary_transform(omega(), GAMMA, DELTA) == omega()

    def test_elementary_expansion(self):
        F_ = compose(z**2, z * (z**2 + 1))
        assert F_ == z**2 * (z**2 + 1) ** 2
        assert elementary_transform(F_, z**2, z * (z**2 + 1)) == z**2 * (z**4 + 1)

    def test_elementary_wrong(self):
        with pytest.raises(InvalidDecomposition):
            elementary_transform(z**6, z**3, z**3)

    def test_dual(self):
        c = constant_chain(T2, T3, 3)
        d = dual_chain(c)
        assert d.steps == ((T3, T2),) * 3
        assert dual_chain(d) == c

    def test_dual_of_square_chain(self):
        c = chain_from_squares([SolutionSquare(T3, Z1, Z1, z**3)])
        assert c.steps == ((T3, Z1), (z**3, Z1))
        assert validate_chain(c) and validate_chain(dual_chain(c))

    def test_squares_must_glue(self):
        with pytest.raises(InvalidInput):
            chain_from_squares([model_good_square("ii", 2, 3), model_good_square("ii", 3, 2)])

    def test_subchain(self):
        c = Chain(((z**2, z**3), (z**3, z**2), (z**2, z**3), (z**3, z**2)))
        assert subchain(c, 1, 4) == c
        assert subchain(c, 1, 2).steps == c.steps[:2]
        assert subchain(subchain(c, 2, 4), 1, 2) == subchain(c, 2, 3)

    def test_subchain_range(self):
        with pytest.raises(InvalidInput):
            subchain(constant_chain(T2, T3, 3), 2, 2)

    def test_low_degree_rejected(self):
        with pytest.raises(InvalidInput):
            Chain(((z + 1, z**2),))
        assert Chain(((z + 1, z**2),), relaxed=True).length == 1


class TestChainPredicates:
    def test_constant_chebyshev_chain(self):
        c = constant_chain(T2, T3, 4)
        assert is_good_chain(c) and is_stable(c) and is_nonnegative(c)
        assert chi1(c) == 1  # O2 of T2: {2@-1, 2@inf}
        assert chi2(c) == F(1, 3)  # O2 of T3: {2, 2, 3}

    def test_common_factor_not_good(self):
        c = constant_chain(z**2, z**4, 3)
        assert validate_chain(c) and not is_good_chain(c)

    def test_unstable(self):
        # T3 o Z1 = Z1 o z^3, and the signature of U moves from (2,2,3) to (3,3)
        c = Chain(((T3, Z1), (z**3, Z1)))
        assert is_good_chain(c) and is_nonnegative(c) and not is_stable(c)
        with pytest.raises(UndefinedValue):
            chi1(c)

    def test_lattes_chain(self):
        c = constant_chain(GAMMA, DELTA, 3)
        assert is_good_chain(c) and is_stable(c)
        assert chi1(c) == F(1, 6) and chi2(c) == F(1, 3)

    def test_relaxed_refused(self):
        with pytest.raises(InvalidInput):
            is_good_chain(Chain(((z**2, z**3),), relaxed=True))


class TestSerialisation:
    @pytest.mark.parametrize(
        "c",
        [constant_chain(T2, T3, 2), Chain(((z**2 + 1, z**3 - z), (z**3 - z, z**2 + 1)), relaxed=True),
         constant_chain(GAMMA, DELTA, 2)],
    )
    def test_roundtrip(self, c):
        text = chain_to_json(c)
        assert chain_from_json(text) == c
        assert chain_to_json(chain_from_json(text)) == text

    def test_wrong_basis(self):
        with pytest.raises(InvalidInput):
            chain_from_json('{"steps": [["z^2", "z^3"]], "basis": "z^5"}')

    def test_malformed(self):
        with pytest.raises(InvalidInput):
            chain_from_json('{"steps": 3}')
