from fractions import Fraction

import pytest
from hypothesis import given

from conftest import ratmaps
from corpus import CORPUS
from semiconj.errors import LimitExceeded, ParseError
from semiconj.expr import parse_expression, print_expression
from semiconj.families import DELTA, GAMMA, chebyshev, zhukovsky
from semiconj.ratmap import Z, compose

z = Z
F = Fraction


class TestParse:
    def test_square(self):
        assert parse_expression("z^2") == z**2

    def test_delta(self):
        assert parse_expression("27*z/(4*z-1)^3") == DELTA

    def test_composition(self):
        assert parse_expression("T(2) o T(3)") == chebyshev(6)

    def test_composition_binds_loosest(self):
        assert parse_expression("z + 1 o z^2") == compose(z + 1, z**2)
        assert parse_expression("T(3) o Z(2)") == compose(chebyshev(3), zhukovsky(2))

    def test_composition_left_to_right(self):
        assert parse_expression("z^2 o z + 1 o 2*z") == compose(z**2, compose(z + 1, 2 * z))

    def test_precedence(self):
        assert parse_expression("1 + 2*z^2") == 1 + 2 * z**2
        assert parse_expression("-z^2") == -(z**2)
        assert parse_expression("2/3*z") == F(2, 3) * z
        assert parse_expression("z - 1 - 1") == z - 2

    def test_negative_exponent(self):
        assert parse_expression("z^-2") == 1 / z**2
        assert parse_expression("(z+1)^(-1)") == 1 / (z + 1)

    def test_decimal(self):
        assert parse_expression("0.5*z") == z / 2

    def test_names(self):
        assert parse_expression("Gamma") == GAMMA
        assert parse_expression("pow(3) o Delta") == compose(z**3, DELTA)

    @pytest.mark.parametrize(
        "text,pos",
        [("", 0), ("z^", 2), ("z^1.5", 2), ("(z+1", 4), ("z $ 2", 2), ("foo(2)", 0), ("T(0)", 2), ("z +", 3),
         ("z)", 1)],
    )
    def test_errors(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_expression(text)
        assert info.value.position == pos

    def test_division_by_zero(self):
        with pytest.raises(ParseError):
            parse_expression("z/0")
        with pytest.raises(ParseError):
            parse_expression("0^-1")

    def test_degree_cap(self):
        with pytest.raises(LimitExceeded):
            parse_expression("z^5000")
        with pytest.raises(LimitExceeded):
            parse_expression("T(70) o T(70)")
        assert parse_expression("z^40", max_degree=40) == z**40


class TestRoundTrip:
    @pytest.mark.parametrize("f", CORPUS, ids=lambda f: str(f)[:40])
    def test_corpus(self, f):
        assert parse_expression(print_expression(f)) == f

    @given(ratmaps(0, 5))
    def test_random(self, f):
        text = print_expression(f)
        assert parse_expression(text) == f
        assert print_expression(parse_expression(text)) == text

    def test_family_names_printed(self):
        assert print_expression(chebyshev(4)) == "T(4)"
        assert print_expression(DELTA) == "Delta"
        assert print_expression(z**3 + 1) == "z^3 + 1"
