"""Exact polynomial and rational-function arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superpi.rational import (
    Poly,
    RatFun,
    poly_exact_div,
    poly_gcd,
    rat_mat_inverse,
    rat_solve,
    solve_fraction_system,
)

V = ("x", "y", "z")


def poly(terms):
    return Poly(V, terms)


def var(name):
    return RatFun.var(V, name)


def const(c):
    return RatFun.const(V, c)


class TestPoly:
    def test_zero_terms_dropped(self):
        p = poly({(1, 0, 0): Fraction(0), (0, 1, 0): Fraction(2)})
        assert len(p.terms) == 1

    def test_mismatched_variables_rejected(self):
        other = Poly(("x",), {(1,): Fraction(1)})
        with pytest.raises(ValueError, match="mismatched variable sets"):
            poly({}) + other

    def test_arithmetic(self):
        x = Poly.var(V, "x")
        y = Poly.var(V, "y")
        assert (x + y) * (x - y) == x * x - y * y
        assert (x + y) ** 2 == x * x + x * y + x * y + y * y

    def test_derivative(self):
        x = Poly.var(V, "x")
        y = Poly.var(V, "y")
        p = x * x * y + y
        assert p.derivative("x") == x * y + x * y
        assert p.derivative("y") == x * x + Poly.const(V, 1)

    def test_graded_lex_print(self):
        p = poly({(1, 0, 0): Fraction(1), (0, 0, 0): Fraction(-1), (2, 1, 0): Fraction(3)})
        assert p.to_str() == "3*x^2*y + x - 1"


class TestRatFun:
    def test_add(self):
        z = var("z")
        assert (const(1) / z + z).to_str() == "(z^2 + 1)/(z)"

    def test_mul_inverse_pair(self):
        assert (var("x") / var("y") * (var("y") / var("x"))).equals(const(1))

    def test_div_cancellation(self):
        z20 = var("y")
        z10 = var("z")
        lhs = (z20 / (z10 * z10)) / (const(1) / z10)
        assert lhs.equals(z20 / z10)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            var("x") / RatFun.zero(V)

    def test_eq_factored_identity(self):
        z = Poly.var(V, "z")
        one = Poly.const(V, 1)
        lhs = RatFun(z * z - one, z - one)
        rhs = RatFun.from_poly(z + one)
        assert lhs.equals(rhs)

    def test_eq_distinguishes(self):
        z = var("z")
        assert not (const(1) / z).equals(const(1) / (z * z))

    def test_sign_normalisation(self):
        y, z = var("y"), var("z")
        assert ((-y) / (-z)).to_str() == "(y)/(z)"
        assert ((-y) / (-z)).equals(y / z)

    def test_eq_invariant_under_common_factor(self):
        x, y = Poly.var(V, "x"), Poly.var(V, "y")
        base = RatFun(x, y)
        blown = RatFun(x * (x + y), y * (x + y))
        assert base.equals(blown)

    def test_derivative_quotient_rule(self):
        z = var("z")
        d = (const(1) / z).derivative("z")
        assert d.equals(-(const(1) / (z * z)))

    def test_substitute(self):
        x, y = var("x"), var("y")
        f = x / y
        image = f.substitute({"x": y * y, "y": y, "z": var("z")})
        assert image.equals(y)

    def test_homogeneous_degree(self):
        x, y = var("x"), var("y")
        assert (x / (y * y)).homogeneous_degree() == -1
        assert (x + const(1)).homogeneous_degree() is None


class TestGcd:
    def test_reduction_caps_growth(self):
        x, y = Poly.var(V, "x"), Poly.var(V, "y")
        delta = x * y - y * x * x  # = xy(1 - x)
        blown = RatFun(delta * (x + y), delta * delta)
        assert blown.den.total_degree() <= delta.total_degree()

    def test_exact_div(self):
        x, y = Poly.var(V, "x"), Poly.var(V, "y")
        product = (x + y) * (x - y)
        assert poly_exact_div(product, x + y) == x - y
        assert poly_exact_div(x + y, x * x) is None

    def test_gcd_common_factor(self):
        x, y, z = (Poly.var(V, n) for n in V)
        g = x * y - z
        a = g * (x + Poly.const(V, 1))
        b = g * g * y
        got = poly_gcd(a, b)
        assert poly_exact_div(got, g) is not None or poly_exact_div(g, got) is not None
        assert poly_exact_div(a, got) is not None
        assert poly_exact_div(b, got) is not None

    def test_gcd_coprime(self):
        x, y = Poly.var(V, "x"), Poly.var(V, "y")
        assert poly_gcd(x + Poly.const(V, 1), y + Poly.const(V, 2)).is_constant() == 1


@st.composite
def small_polys(draw):
    n_terms = draw(st.integers(0, 3))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(draw(st.integers(0, 2)) for _ in V)
        coeff = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        if coeff:
            terms[exps] = coeff
    return Poly(V, terms)


@st.composite
def small_ratfuns(draw):
    num = draw(small_polys())
    den = draw(small_polys())
    if den.is_zero:
        den = Poly.const(V, 1)
    return RatFun(num, den)


class TestEqualityProperties:
    @given(small_ratfuns())
    def test_reflexive(self, a):
        assert a.equals(a)

    @given(small_ratfuns(), small_ratfuns())
    def test_symmetric(self, a, b):
        assert a.equals(b) == b.equals(a)

    @given(small_ratfuns(), small_polys())
    def test_invariant_under_scaling(self, a, p):
        if p.is_zero:
            p = Poly.const(V, 1)
        scaled = RatFun(a.num * p, a.den * p)
        assert a.equals(scaled)

    @given(small_ratfuns(), small_ratfuns(), small_ratfuns())
    def test_field_identities(self, a, b, c):
        assert ((a + b) + c).equals(a + (b + c))
        assert ((a * b) * c).equals(a * (b * c))
        assert (a * (b + c)).equals(a * b + a * c)


class TestLinearAlgebra:
    def test_rat_solve(self):
        x = var("x")
        matrix = [[x, const(0)], [const(1), x * x]]
        rhs = [x * x, const(0)]
        sol = rat_solve(matrix, rhs)
        assert sol[0].equals(x)
        assert sol[1].equals(-(const(1) / x))

    def test_rat_mat_inverse(self):
        x = var("x")
        matrix = [[x, const(1)], [const(0), x]]
        inv = rat_mat_inverse(matrix)
        prod00 = matrix[0][0] * inv[0][0] + matrix[0][1] * inv[1][0]
        prod01 = matrix[0][0] * inv[0][1] + matrix[0][1] * inv[1][1]
        assert prod00.equals(const(1))
        assert prod01.equals(const(0))

    def test_rat_solve_singular(self):
        with pytest.raises(ValueError, match="singular"):
            rat_solve([[const(0)]], [const(1)])

    def test_fraction_system_consistent(self):
        rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
        sol = solve_fraction_system(rows, [Fraction(3), Fraction(1)])
        assert sol == [Fraction(2), Fraction(1)]

    def test_fraction_system_inconsistent(self):
        rows = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
        assert solve_fraction_system(rows, [Fraction(1), Fraction(3)]) is None

    def test_fraction_system_underdetermined(self):
        rows = [[Fraction(1), Fraction(1)]]
        sol = solve_fraction_system(rows, [Fraction(5)])
        assert sol is not None and sol[0] + sol[1] == 5
