from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kappaforge import InvalidInputError, Poly, RootSpec, derivative, distinct_zero_count, evaluate, from_roots, gcd
from kappaforge.polycore import ZERO_DEGREE, multiplicity_of_factor, square_free_decomposition, square_free_part
from oracles import Z, expand, from_sympy, to_sympy

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def root_specs(draw, max_d=4, max_m=3):
    roots = draw(st.lists(small_q, min_size=1, max_size=max_d, unique=True))
    mults = draw(st.lists(st.integers(1, max_m), min_size=len(roots), max_size=len(roots)))
    lead = draw(small_q.filter(lambda x: x != 0))
    return RootSpec(list(zip(roots, mults)), lead)


class TestPoly:
    def test_trims_and_degree_sentinel(self):
        assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
        assert Poly([]).degree == ZERO_DEGREE
        assert Poly([0, 0]).is_zero()
        assert Poly([]).degree < 0 and Poly([]).degree != -1

    def test_rejects_floats(self):
        with pytest.raises(InvalidInputError):
            Poly([0.5, 1])

    def test_string_coefficients(self):
        assert Poly(["1/2", "-3"]).coeffs == (Fraction(1, 2), -3)

    def test_arithmetic_matches_sympy(self):
        p, q = Poly([1, -2, 3]), Poly([Fraction(1, 3), 0, 0, 1])
        for ours, theirs in [
            (p + q, to_sympy(p) + to_sympy(q)),
            (p - q, to_sympy(p) - to_sympy(q)),
            (p * q, to_sympy(p) * to_sympy(q)),
        ]:
            assert ours == from_sympy(theirs)
        quo, rem = divmod(q, p)
        sq, sr = sp.div(to_sympy(q), to_sympy(p))
        assert quo == from_sympy(sq) and rem == from_sympy(sr)

    def test_exact_div_rejects_remainder(self):
        with pytest.raises(InvalidInputError):
            Poly([1, 0, 1]).exact_div(Poly([-1, 1]))

    def test_shift_is_taylor_shift(self):
        p = expand((Z - 1) ** 3 * (Z - 2) ** 2 * (Z - 3) ** 3)
        assert p.shift(2) == expand(((Z + 2) - 1) ** 3 * Z**2 * ((Z + 2) - 3) ** 3)

    def test_str(self):
        assert str(Poly([1, -2, 1])) == "z^2 - 2*z + 1"


class TestFromRoots:
    def test_binomial_square(self):
        assert from_roots(RootSpec([(1, 2)])) == Poly([1, -2, 1])

    def test_sharp_pair_polynomial(self):
        p = from_roots(RootSpec([(1, 3), (2, 2), (3, 3)]))
        assert p == expand((Z - 1) ** 3 * (Z - 2) ** 2 * (Z - 3) ** 3)
        assert p.degree == 8

    def test_figure_polynomial(self):
        p = from_roots(RootSpec([(15, 1), (-13, 4), (20, 3), (-10, 1)]))
        assert p == expand((Z - 15) * (Z + 13) ** 4 * (Z - 20) ** 3 * (Z + 10))
        assert p.degree == 9

    def test_duplicate_roots_rejected(self):
        with pytest.raises(InvalidInputError):
            RootSpec([(1, 1), (1, 2)])

    def test_bad_multiplicity_and_leading(self):
        with pytest.raises(InvalidInputError):
            RootSpec([(1, 0)])
        with pytest.raises(InvalidInputError):
            RootSpec([(1, 1)], leading=0)


class TestCalculus:
    @pytest.mark.parametrize(
        "p, expected",
        [(Poly([1, -2, 1]), Poly([-2, 2])), (Poly([1, 0, 0, 1]), Poly([0, 0, 3])), (Poly([]), Poly([]))],
    )
    def test_derivative(self, p, expected):
        assert derivative(p) == expected

    def test_derivative_of_constant(self):
        assert derivative(Poly([7])).is_zero()

    @pytest.mark.parametrize("x, value", [(0, 1), (-1, 0)])
    def test_evaluate_cubic(self, x, value):
        assert evaluate(Poly([1, 0, 0, 1]), Fraction(x)) == value

    def test_evaluate_at_root(self):
        assert evaluate(from_roots(RootSpec([(1, 3), (2, 2), (3, 3)])), Fraction(2)) == 0


class TestGcd:
    def test_examples(self):
        assert gcd(Poly([-1, 0, 1]), Poly([-1, 1])) == Poly([-1, 1])
        assert gcd(Poly([1, 0, 1]), Poly([-1, 0, 1])) == Poly([1])
        p = expand((Z - 1) ** 3 * (Z - 2) ** 2)
        assert gcd(p, p.derivative()) == expand((Z - 1) ** 2 * (Z - 2))

    def test_both_zero(self):
        with pytest.raises(InvalidInputError):
            gcd(Poly([]), Poly([]))

    def test_gcd_with_zero_is_monic(self):
        assert gcd(Poly([2, 4]), Poly([])) == Poly([Fraction(1, 2), 1])

    @settings(max_examples=60, deadline=None)
    @given(st.lists(small_q, min_size=1, max_size=5), st.lists(small_q, min_size=1, max_size=5))
    def test_matches_sympy(self, a, b):
        p, q = Poly(a), Poly(b)
        if p.is_zero() and q.is_zero():
            return
        expected = sp.gcd(to_sympy(p), to_sympy(q))
        expected = from_sympy(expected).monic() if not from_sympy(expected).is_zero() else Poly([])
        assert gcd(p, q) == expected

    @settings(max_examples=40, deadline=None)
    @given(root_specs(max_m=1), root_specs())
    def test_square_free_coprime_property(self, s1, s2):
        p, q = s1.to_poly(), s2.to_poly()
        if gcd(p, q).degree > 0:
            return
        assert gcd(p * q, p) == p.monic()


class TestSquareFree:
    def test_examples(self):
        assert square_free_decomposition(expand((Z - 1) ** 2 * (Z + 2))) == [(Poly([2, 1]), 1), (Poly([-1, 1]), 2)]
        assert square_free_decomposition(Poly([1, 0, 0, 1])) == [(Poly([1, 0, 0, 1]), 1)]
        p = from_roots(RootSpec([(1, 3), (2, 2), (3, 3)]))
        assert square_free_decomposition(p) == [(Poly([-2, 1]), 2), (expand((Z - 1) * (Z - 3)), 3)]

    @pytest.mark.parametrize("p", [Poly([]), Poly([3])])
    def test_constant_rejected(self, p):
        with pytest.raises(InvalidInputError):
            square_free_decomposition(p)

    @settings(max_examples=60, deadline=None)
    @given(root_specs())
    def test_recovers_multiplicities(self, spec):
        p = spec.to_poly()
        parts = square_free_decomposition(p)
        got = sorted(m for g, m in parts for _ in range(int(g.degree)))
        assert got == sorted(m for _, m in spec.roots)
        rebuilt = Poly([spec.leading])
        for g, m in parts:
            assert g.lc == 1
            rebuilt = rebuilt * g**m
        assert rebuilt == p

    @settings(max_examples=40, deadline=None)
    @given(root_specs())
    def test_matches_sympy_sqf(self, spec):
        p = spec.to_poly()
        _, factors = sp.sqf_list(to_sympy(p))
        assert {(from_sympy(f).monic(), m) for f, m in factors} == set(square_free_decomposition(p))

    @settings(max_examples=40, deadline=None)
    @given(root_specs())
    def test_derivative_keeps_multiple_roots(self, spec):
        dp = spec.to_poly().derivative()
        for r, m in spec.roots:
            if m >= 2:
                assert multiplicity_of_factor(dp, Poly([-r, 1])) == m - 1

    @settings(max_examples=40, deadline=None)
    @given(root_specs())
    def test_roots_evaluate_to_zero(self, spec):
        p = spec.to_poly()
        assert all(p(r) == 0 for r, _ in spec.roots)


class TestDistinctZeroCount:
    def test_examples(self):
        assert distinct_zero_count(from_roots(RootSpec([(1, 3), (2, 2), (3, 3)]))) == 3
        assert distinct_zero_count(Poly([1, 0, 0, 1])) == 3
        p = expand((Z**2 + 100) * (Z + 100) * (Z - 1))
        assert distinct_zero_count(p) == 4

    def test_constant_rejected(self):
        with pytest.raises(InvalidInputError):
            distinct_zero_count(Poly([5]))

    def test_square_free_part(self):
        assert square_free_part(expand(3 * (Z - 1) ** 2 * (Z + 1))) == expand((Z - 1) * (Z + 1))


def test_multiplicity_of_factor_nonuniform():
    f = expand((Z - 1) ** 2 * (Z - 2))
    assert multiplicity_of_factor(f, expand((Z - 1) * (Z - 2))) is None
    assert multiplicity_of_factor(f, Poly([-1, 1])) == 2
