from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import same_map, zs
from semiconj.errors import InvalidInput
from semiconj.families import (
    DELTA,
    GAMMA,
    LATTES233_4,
    OMEGA_PRINTED,
    FamilyTag,
    chebyshev,
    chebyshev_closed_form,
    dihedral_orbifold_self_map,
    in_frak_T,
    make,
    omega,
    parse_tag,
    power_orbifold_self_map,
    recognize,
    remark_identities,
    zhukovsky,
)
from semiconj.orbifold import INF, Orbifold, is_minimal_holomorphic
from semiconj.ratmap import RatMap, Z, compose, evaluate

z = Z
F = Fraction


class TestMake:
    def test_t3(self):
        assert make(FamilyTag("T", 3)) == 4 * z**3 - 3 * z

    def test_delta(self):
        assert make("Delta") == 27 * z / (4 * z - 1) ** 3

    def test_omega_printed_form(self):
        printed = 1728 * (z - 1) ** 3 * (8 * z + 1) ** 6 * z / (
            (64 * z**3 - 48 * z**2 + 228 * z - 1) ** 3 * (4 * z - 1) ** 3
        )
        assert make("Omega") == printed == OMEGA_PRINTED

    def test_omega_both_orders(self):
        assert omega() == compose(GAMMA, DELTA) == compose(DELTA, GAMMA)

    def test_gamma_from_tetrahedral_map(self):
        # Gamma is the degree-4 tetrahedral map after z -> 8z
        assert GAMMA == compose(LATTES233_4, 8 * z)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_chebyshev_against_sympy(self, n):
        assert same_map(chebyshev(n), sp.chebyshevt(n, zs))

    @pytest.mark.parametrize("n", range(1, 13))
    def test_chebyshev_closed_sum(self, n):
        assert chebyshev(n) == chebyshev_closed_form(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_zhukovsky(self, n):
        assert same_map(zhukovsky(n), (zs**n + zs ** (-n)) / 2)

    def test_unknown_tag(self):
        with pytest.raises(InvalidInput):
            parse_tag("Sigma")

    def test_tag_roundtrip(self):
        for text in ("T(5)", "Z(2)", "pow(7)", "Delta", "Omega", "lattes233_6"):
            assert str(parse_tag(text)) == text

    def test_recognize(self):
        assert recognize(chebyshev(4)) == FamilyTag("T", 4)
        assert recognize(DELTA) == FamilyTag("Delta")
        assert recognize(z**3 + 1) is None


class TestFrakT:
    def test_identity(self):
        assert in_frak_T(z)

    def test_blaschke_factor(self):
        assert in_frak_T((z - 2) / (2 * z - 1))

    def test_shift(self):
        assert not in_frak_T(z + 1)

    @given(st.integers(-4, 4))
    def test_monomials(self, k):
        assert in_frak_T(z**k)


NU_POWER = lambda n: Orbifold({F(0): n, INF: n})
NU_DIHEDRAL = lambda n: Orbifold({F(-1): 2, F(1): 2, INF: n})


class TestPowerOrbifoldSelfMap:
    def test_examples(self):
        assert power_orbifold_self_map(1, z + 1, 2) == z * (z + 1) ** 2
        assert power_orbifold_self_map(2, z - 1, 3) == z**2 * (z - 1) ** 3

    def test_degenerate(self):
        for n in (2, 3, 5):
            assert power_orbifold_self_map(1, RatMap(1), n) == z

    def test_gcd_violation(self):
        with pytest.raises(InvalidInput):
            power_orbifold_self_map(2, z + 1, 4)

    GRID = [
        (n, r, R)
        for n in range(2, 6)
        for r in range(1, n)
        if __import__("math").gcd(r, n) == 1
        for R in (z + 1, z - 2, (z + 3) / (z - 1), z**2 + 1, (2 * z - 1) / (z**2 + 2))
    ]

    @pytest.mark.parametrize("n,r,R", GRID)
    def test_minimal_holomorphic(self, n, r, R):
        A = power_orbifold_self_map(r, R, n)
        O = NU_POWER(n)
        assert is_minimal_holomorphic(A, O, O)

    @pytest.mark.parametrize("n,r,R", GRID)
    def test_index_preserved(self, n, r, R):
        # a minimal self-map keeps the index of each support point: nu(A(z)) = nu(z)
        A = power_orbifold_self_map(r, R, n)
        O = NU_POWER(n)
        for p in O.support:
            assert O.nu(evaluate(A, p)) == O.nu(p)

    @pytest.mark.parametrize("n,r", [(2, 2), (4, 2), (3, 3), (4, 6), (5, 5)])
    def test_non_coprime_fails(self, n, r):
        # z^r R^n with gcd(r, n) > 1 is not minimal on nu(0) = nu(inf) = n
        A = z**r * (z + 1) ** n
        O = NU_POWER(n)
        assert not is_minimal_holomorphic(A, O, O)


class TestDihedralOrbifoldSelfMap:
    @pytest.mark.parametrize("n,r,k", [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 2, 1), (4, 1, 1), (5, 2, 1), (4, 3, 0)])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_monomial_s_gives_chebyshev(self, n, r, k, sign):
        A = dihedral_orbifold_self_map(r, z**k, n, sign)
        m = r + k * n
        assert A == sign * chebyshev(m)
        if m >= 2:
            O = NU_DIHEDRAL(n)
            assert is_minimal_holomorphic(A, O, O)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_blaschke_s(self, n, sign):
        A = dihedral_orbifold_self_map(1, (z - 2) / (2 * z - 1), n, sign)
        O = NU_DIHEDRAL(n)
        assert A.degree == n + 1
        assert is_minimal_holomorphic(A, O, O)
        for p in O.support:
            assert O.nu(evaluate(A, p)) == O.nu(p)

    def test_semiconjugacy(self):
        inner = z * ((z - 2) / (2 * z - 1)) ** 3
        A = dihedral_orbifold_self_map(1, (z - 2) / (2 * z - 1), 3)
        assert compose(A, zhukovsky(1)) == compose(zhukovsky(1), inner)

    def test_s_outside_frak_t(self):
        with pytest.raises(InvalidInput):
            dihedral_orbifold_self_map(1, z + 1, 3)

    def test_r_range(self):
        with pytest.raises(InvalidInput):
            dihedral_orbifold_self_map(3, RatMap(1), 3)


class TestRemarkIdentities:
    @pytest.mark.parametrize("n,m", [(2, 3), (3, 4), (2, 5)])
    @pytest.mark.parametrize("R", [z + 1, (z - 2) / (2 * z - 1)], ids=["shift", "blaschke"])
    def test_all_hold(self, n, m, R):
        assert remark_identities(n, m, R) == {"power": True, "zhukovsky": True, "chebyshev": True}
