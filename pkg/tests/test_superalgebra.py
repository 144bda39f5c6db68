"""Grassmann-variable arithmetic: Koszul signs, inversion, substitution."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from superpi.superalgebra import Chart, SuperFunction, parse_superfunction, substitute

from conftest import random_superfunction

U0 = Chart("U0", ("z10", "z20"), ("th10", "th20"))
U1 = Chart("U1", ("z01", "z21"), ("th01", "th21"))


def sf(text, chart=U0):
    return parse_superfunction(text, chart)


class TestChart:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            Chart("bad", ("a", "b"), ("b",))

    def test_parity_lookup(self):
        assert U0.is_even("z10")
        assert not U0.is_even("th20")
        with pytest.raises(KeyError):
            U0.is_even("nope")


class TestArithmetic:
    def test_unsorted_monomial_picks_up_sign(self):
        t1 = SuperFunction.coordinate(U0, "th10")
        t2 = SuperFunction.coordinate(U0, "th20")
        assert (t2 * t1).equals(sf("(-1)*[th10*th20]"))

    def test_nilpotency(self):
        t1 = SuperFunction.coordinate(U0, "th10")
        assert (t1 * t1).is_zero

    def test_supercommutativity_signs(self):
        t1 = SuperFunction.coordinate(U0, "th10")
        t2 = SuperFunction.coordinate(U0, "th20")
        z = SuperFunction.coordinate(U0, "z10")
        assert (t1 * t2).equals(-(t2 * t1))
        assert (z * t1).equals(t1 * z)

    def test_hand_expansion_product(self):
        # (z + t1 t2) * (1/z - t1 t2 / z^2): the cross terms cancel exactly.
        f = sf("(z10) + (1)*[th10*th20]")
        g = sf("(1)/(z10) + (-1)/(z10^2)*[th10*th20]")
        assert (f * g).equals(SuperFunction.one(U0))

    def test_chart_mismatch(self):
        with pytest.raises(ValueError, match="charts differ"):
            SuperFunction.one(U0) * SuperFunction.one(U1)

    def test_parity(self):
        assert sf("(z10)").parity == "even"
        assert sf("(1)*[th10]").parity == "odd"
        assert sf("(z10) + (1)*[th10]").parity == "inhomogeneous"
        assert SuperFunction.zero(U0).parity == "even"


class TestInvert:
    def test_plain_variable(self):
        z = SuperFunction.coordinate(U0, "z10")
        assert z.invert().equals(sf("(1)/(z10)"))

    def test_series_truncates(self):
        f = sf("(z10) + (1)*[th10*th20]")
        assert f.invert().equals(sf("(1)/(z10) + (-1)/(z10^2)*[th10*th20]"))

    def test_four_odd_variables(self):
        chart = Chart("V", ("y11",), ("th11", "th21", "xi11", "xi21"))
        f = parse_superfunction("(y11) + (1)*[xi11*xi21]", chart)
        inv = f.invert()
        assert inv.equals(
            parse_superfunction("(1)/(y11) + (-1)/(y11^2)*[xi11*xi21]", chart)
        )
        assert (f * inv).equals(SuperFunction.one(chart))

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            sf("(1)*[th10]").invert()

    def test_rejects_zero_body(self):
        with pytest.raises(ZeroDivisionError):
            sf("(1)*[th10*th20]").invert()


class TestDerive:
    def test_left_odd_derivative_signs(self):
        f = sf("(1)/(z10^2)*[th10*th20]")
        assert f.derive("th10").equals(sf("(1)/(z10^2)*[th20]"))
        assert f.derive("th20").equals(sf("(-1)/(z10^2)*[th10]"))

    def test_second_odd_derivative_vanishes(self):
        rng = random.Random(7)
        for _ in range(20):
            f = random_superfunction(rng, U0)
            assert f.derive("th10").derive("th10").is_zero

    def test_odd_mixed_partials_anticommute(self):
        rng = random.Random(8)
        for _ in range(40):
            f = random_superfunction(rng, U0)
            ab = f.derive("th10").derive("th20")
            ba = f.derive("th20").derive("th10")
            assert ab.equals(-ba)

    def test_even_derivative(self):
        f = sf("(z20)/(z10)")
        assert f.derive("z10").equals(sf("(-z20)/(z10^2)"))

    def test_unknown_variable(self):
        with pytest.raises(KeyError):
            sf("(z10)").derive("w")


class TestDegreePart:
    def test_splits_by_odd_degree(self):
        f = sf("(z20)/(z10) + (1)/(z10^2)*[th10*th20]")
        assert f.degree_part(0).equals(sf("(z20)/(z10)"))
        assert f.degree_part(2).equals(sf("(1)/(z10^2)*[th10*th20]"))
        assert f.degree_part(1).is_zero


class TestSubstitute:
    def transition_images(self):
        # U1 coordinates in terms of U0 ones, the degree-1 projective pattern.
        z10 = SuperFunction.coordinate(U0, "z10")
        inv = z10.invert()
        return {
            "z01": inv,
            "z21": SuperFunction.coordinate(U0, "z20") * inv,
            "th01": SuperFunction.coordinate(U0, "th10") * inv,
            "th21": SuperFunction.coordinate(U0, "th20") * inv,
        }

    def inverse_images(self):
        z01 = SuperFunction.coordinate(U1, "z01")
        inv = z01.invert()
        return {
            "z10": inv,
            "z20": SuperFunction.coordinate(U1, "z21") * inv,
            "th10": SuperFunction.coordinate(U1, "th01") * inv,
            "th20": SuperFunction.coordinate(U1, "th21") * inv,
        }

    def test_round_trip_is_identity(self):
        for name in U0.coords:
            image = substitute(SuperFunction.coordinate(U0, name), self.inverse_images())
            back = substitute(image, self.transition_images())
            assert back.equals(SuperFunction.coordinate(U0, name))

    def test_odd_coordinate_round_trip_with_sign(self):
        # th01 = -th10/z10^2 under the involutive pair z01 = 1/z10.
        pi_images = {
            "z01": SuperFunction.coordinate(U0, "z10").invert(),
            "z21": SuperFunction.coordinate(U0, "z20"),
            "th01": sf("(-1)/(z10^2)*[th10]"),
            "th21": SuperFunction.coordinate(U0, "th20"),
        }
        pi_inverse = {
            "z10": SuperFunction.coordinate(U1, "z01").invert(),
            "z20": SuperFunction.coordinate(U1, "z21"),
            "th10": parse_superfunction("(-1)/(z01^2)*[th01]", U1),
            "th20": SuperFunction.coordinate(U1, "th21"),
        }
        round_trip = substitute(
            substitute(SuperFunction.coordinate(U1, "th01"), pi_images), pi_inverse
        )
        assert round_trip.equals(SuperFunction.coordinate(U1, "th01"))

    def test_homomorphism_on_random_inputs(self):
        rng = random.Random(11)
        images = self.transition_images()
        for _ in range(30):
            f = random_superfunction(rng, U1)
            g = random_superfunction(rng, U1)
            assert substitute(f + g, images).equals(
                substitute(f, images) + substitute(g, images)
            )
            assert substitute(f * g, images).equals(
                substitute(f, images) * substitute(g, images)
            )

    def test_parity_mismatch_rejected(self):
        bad = dict(self.transition_images())
        bad["z01"] = SuperFunction.coordinate(U0, "th10")
        with pytest.raises(ValueError, match="non-even"):
            substitute(SuperFunction.coordinate(U1, "z01"), bad)

    def test_zero_body_denominator_rejected(self):
        bad = dict(self.transition_images())
        bad["z01"] = sf("(1)*[th10*th20]")
        with pytest.raises(ValueError, match="zero-body"):
            substitute(SuperFunction.coordinate(U1, "z01"), bad)


class TestLeibnizAndKoszul:
    def test_graded_leibniz_randomised(self):
        rng = random.Random(23)
        for _ in range(60):
            parity = rng.choice(("even", "odd"))
            f = random_superfunction(rng, U0, parity=parity)
            g = random_superfunction(rng, U0)
            sign = 1 if parity == "even" else -1
            lhs = (f * g).derive("th10")
            rhs = f.derive("th10") * g + (f * g.derive("th10")).scale(sign)
            assert lhs.equals(rhs)

    def test_koszul_randomised(self):
        rng = random.Random(29)
        for _ in range(60):
            pf = rng.choice(("even", "odd"))
            pg = rng.choice(("even", "odd"))
            f = random_superfunction(rng, U0, parity=pf)
            g = random_superfunction(rng, U0, parity=pg)
            sign = -1 if pf == "odd" and pg == "odd" else 1
            assert (f * g).equals((g * f).scale(sign))


@st.composite
def superfunctions(draw):
    rng = random.Random(draw(st.integers(0, 10**9)))
    return random_superfunction(rng, U0, max_components=4)


class TestTextRoundTrip:
    @settings(max_examples=120)
    @given(superfunctions())
    def test_parse_print_exact(self, f):
        text = f.to_str()
        back = parse_superfunction(text, U0)
        # representation-exact: identical monomials and identical num/den polys
        assert set(back.components) == set(f.components)
        for mon in f.components:
            assert back.components[mon].num == f.components[mon].num
            assert back.components[mon].den == f.components[mon].den

    def test_zero(self):
        assert SuperFunction.zero(U0).to_str() == "(0)"
        assert parse_superfunction("(0)", U0).is_zero

    def test_reject_garbage(self):
        with pytest.raises(ValueError):
            parse_superfunction("(z10", U0)
        with pytest.raises(ValueError):
            parse_superfunction("(z10) $ (z20)", U0)
