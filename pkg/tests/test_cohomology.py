"""Cech machinery: pullbacks, the obstruction cochain, lifting, refutation."""

import random
from fractions import Fraction

import pytest

from superpi.builders import build_pi_projective_closed, build_projective_superspace
from superpi.cohomology import (
    CechCochain1,
    HomogeneousSection,
    TensorSection,
    alternating_quotient_wedge,
    check_cech_cocycle,
    coboundary_of,
    coboundary_refute,
    coboundary_solve,
    cochain_multiple,
    euler_preimage_section,
    expected_coboundary,
    extract_obstruction,
    lifted_obstruction_section,
    lifting_verify,
    odd_degree_decompose,
    omega_representative,
    pullback_tensor,
    reduced_projective_atlas,
    rewrite_frames,
    wedge_inclusion,
)
from superpi.rational import Poly, RatFun
from superpi.superalgebra import parse_superfunction


def rf(text, chart):
    from superpi.superalgebra import parse_ratfun

    return parse_ratfun(text, chart.even_coords)


class TestPullback:
    def setup_method(self):
        self.atlas = reduced_projective_atlas(2)
        self.u0 = self.atlas.chart("U0")
        self.u1 = self.atlas.chart("U1")
        self.t10 = self.atlas.transition("U1", "U0")  # target U0, source U1

    def test_frame_rules(self):
        # dz10 ^ dz20 (x) d/dz20 rewritten on U1:
        # dz10 = -dz01/z01^2, dz20 = dz21/z01 - (z21/z01^2) dz01,
        # d/dz20 = z01 d/dz21, so the section becomes
        # (-1/z01^2) dz01 ^ dz21 (x) d/dz21.
        section = TensorSection(
            self.u0, {("z20", ("z10", "z20")): RatFun.one(self.u0.even_coords)}
        )
        pulled = pullback_tensor(section, self.t10)
        expected = TensorSection(
            self.u1, {("z21", ("z01", "z21")): rf("(-1)/(z01^2)", self.u1)}
        )
        assert pulled.equals(expected)

    def test_round_trip(self):
        rng = random.Random(5)
        t01 = self.atlas.transition("U0", "U1")
        names = self.u0.even_coords
        for _ in range(10):
            comp = {}
            for k in names:
                coeff = Fraction(rng.randint(-3, 3))
                if coeff:
                    comp[(k, (names[0], names[1]))] = RatFun.const(names, coeff) * rf(
                        "(z10)", self.u0
                    )
            section = TensorSection(self.u0, comp)
            back = pullback_tensor(pullback_tensor(section, self.t10), t01)
            assert back.equals(section)

    def test_chart_mismatch(self):
        section = TensorSection(self.u1, {})
        with pytest.raises(ValueError, match="target"):
            pullback_tensor(section, self.t10)


class TestOmegaRepresentative:
    def test_plane_single_term(self):
        omega = omega_representative(2)
        section = omega.section("U0", "U1")
        chart = omega.atlas.chart("U1")
        expected = TensorSection(
            chart, {("z21", ("z01", "z21")): rf("(1)/(z01)", chart)}
        )
        assert section.equals(expected)

    def test_three_space_has_two_terms(self):
        omega = omega_representative(3)
        section = omega.section("U0", "U1")
        assert len(section.components) == 2

    def test_scale_zero_gives_zero(self):
        assert omega_representative(2, scale=0).is_zero()

    def test_cocycle_condition(self):
        assert check_cech_cocycle(omega_representative(2)).all_passed
        assert check_cech_cocycle(omega_representative(3)).all_passed

    def test_perturbed_cochain_fails(self):
        omega = omega_representative(2)
        sections = dict(omega.sections)
        sections[("U0", "U1")] = TensorSection.zero(omega.atlas.chart("U1"))
        broken = CechCochain1(omega.atlas, sections)
        report = check_cech_cocycle(broken)
        assert not report.all_passed
        assert any("difference" in c.witness for c in report.checks if c.status == "fail")


class TestExtractObstruction:
    def test_pi_plane_gives_lambda_one(self):
        extracted = extract_obstruction(build_pi_projective_closed(2))
        assert cochain_multiple(extracted, omega_representative(2)) == 1

    def test_pi_three_space(self):
        extracted = extract_obstruction(build_pi_projective_closed(3))
        assert cochain_multiple(extracted, omega_representative(3)) == 1

    def test_split_model_gives_zero(self):
        extracted = extract_obstruction(build_projective_superspace(2, 2))
        assert extracted.is_zero()

    def test_linearity_in_corrections(self):
        doubled = extract_obstruction(build_pi_projective_closed(2, scale=2))
        assert cochain_multiple(doubled, omega_representative(2)) == 2

    def test_exact_section_values(self):
        extracted = extract_obstruction(build_pi_projective_closed(2))
        assert extracted.section("U0", "U1").equals(
            omega_representative(2).section("U0", "U1")
        )


class TestLifting:
    @pytest.mark.parametrize("n", [2, 3])
    def test_all_identities(self, n):
        report = lifting_verify(n)
        assert report.all_passed, report.to_text()

    def test_sign_flipped_coboundary_differs(self):
        # flipping the third-term sign in the closed form breaks the identity
        n, i, j = 2, 0, 1
        s_ij = rewrite_frames(euler_preimage_section(n, i), j) - euler_preimage_section(n, j)
        closed = expected_coboundary(n, i, j)
        assert s_ij.equals(closed)
        flipped_components = dict(closed.components)
        key = next(k for k in flipped_components if k[1] == (j, 2))
        flipped_components[key] = -flipped_components[key]
        flipped = HomogeneousSection(n, j, flipped_components)
        assert not s_ij.equals(flipped)

    def test_lift_equals_coboundary(self):
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            s_ij = rewrite_frames(euler_preimage_section(2, i), j) - euler_preimage_section(2, j)
            assert lifted_obstruction_section(2, i, j).equals(s_ij)

    def test_exactness_on_basis(self):
        for a, b in ((1, 2),):
            image = alternating_quotient_wedge(2, wedge_inclusion(2, a, b, 0), 0)
            assert not image

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            lifting_verify(5)


class TestCoboundary:
    def test_refutes_obstruction_cochain(self):
        report = coboundary_refute(omega_representative(2), 3)
        assert report.all_passed
        check = report.find("refutation/degree-3")
        assert "no polynomial 0-cochain" in check.witness

    def test_zero_cochain_is_trivially_split(self):
        omega = omega_representative(2)
        zero = CechCochain1(
            omega.atlas,
            {k: TensorSection.zero(s.chart) for k, s in omega.sections.items()},
        )
        solution = coboundary_solve(zero, 1)
        assert solution is not None
        assert all(s.is_zero for s in solution.values())

    def test_round_trip_recovery(self):
        rng = random.Random(17)
        atlas = reduced_projective_atlas(2)
        eta = {}
        for name in atlas.chart_names():
            chart = atlas.chart(name)
            names = chart.even_coords
            comp = {}
            for k in names:
                terms = {}
                for _ in range(2):
                    exps = tuple(rng.randint(0, 1) for _ in names)
                    coeff = Fraction(rng.randint(-2, 2))
                    if coeff:
                        terms[exps] = coeff
                if terms:
                    comp[(k, (names[0], names[1]))] = RatFun.from_poly(Poly(names, terms))
            eta[name] = TensorSection(chart, comp)
        cochain = coboundary_of(atlas, eta)
        solution = coboundary_solve(cochain, 2)
        assert solution is not None
        assert coboundary_of(atlas, solution).equals(cochain)


class TestCochainMultiple:
    def test_non_proportional_is_none(self):
        omega = omega_representative(2)
        sections = dict(omega.sections)
        chart = omega.atlas.chart("U1")
        doubled = sections[("U0", "U1")].scale(2)
        sections[("U0", "U1")] = doubled
        skewed = CechCochain1(omega.atlas, sections)
        assert cochain_multiple(skewed, omega) is None

    def test_zero_against_nonzero(self):
        omega = omega_representative(2)
        zero = CechCochain1(
            omega.atlas,
            {k: TensorSection.zero(s.chart) for k, s in omega.sections.items()},
        )
        assert cochain_multiple(zero, omega) == 0
        assert cochain_multiple(omega, zero) is None

    def test_small_dimension_rejected(self):
        with pytest.raises(ValueError, match="n >= 2"):
            omega_representative(1)


class TestOddDegreeDecompose:
    def test_pi_space_transitions_are_linear(self):
        atlas = build_pi_projective_closed(3)
        layers = odd_degree_decompose(atlas.transition("U0", "U1"))
        for name, parts in layers.items():
            assert set(parts) == {1}

    def test_decomposition_sums_back(self):
        atlas = build_pi_projective_closed(2)
        t = atlas.transition("U0", "U2")
        layers = odd_degree_decompose(t)
        for name, parts in layers.items():
            total = parse_superfunction("(0)", t.source)
            for part in parts.values():
                total = total + part
            assert total.equals(t.images[name])
