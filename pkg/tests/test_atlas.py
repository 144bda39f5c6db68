"""Transitions, cocycle verification, super Jacobians, atlas classification."""

import random

import pytest

from superpi.atlas import (
    Atlas,
    TransitionMap,
    atlas_classification,
    check_berezinian_trivial,
    check_cocycle,
    classify_atlas,
    compose,
    identity_transition,
    jacobian_chain_product,
    super_jacobian,
    transition_eq,
)
from superpi.builders import build_pi_projective_closed, build_projective_superspace
from superpi.report import FAIL, PASS
from superpi.superalgebra import Chart, parse_superfunction
from superpi.supermatrix import SuperMatrix, berezinian

from conftest import random_transition


class TestCompose:
    def test_with_identity(self):
        atlas = build_pi_projective_closed(2)
        t = atlas.transition("U0", "U1")
        left = compose(t, identity_transition(atlas.chart("U0")))
        right = compose(identity_transition(atlas.chart("U1")), t)
        assert transition_eq(left, t)
        assert transition_eq(right, t)

    def test_round_trip_identity(self):
        atlas = build_pi_projective_closed(1)
        rt = compose(atlas.transition("U1", "U0"), atlas.transition("U0", "U1"))
        assert rt.is_identity()

    def test_triple_agreement(self):
        atlas = build_pi_projective_closed(2)
        threaded = compose(atlas.transition("U1", "U2"), atlas.transition("U0", "U1"))
        assert transition_eq(threaded, atlas.transition("U0", "U2"))

    def test_chart_mismatch(self):
        atlas = build_pi_projective_closed(2)
        with pytest.raises(ValueError, match="cannot compose"):
            compose(atlas.transition("U0", "U1"), atlas.transition("U0", "U1"))


class TestCheckCocycle:
    def test_pi_line_passes(self):
        assert check_cocycle(build_pi_projective_closed(1)).all_passed

    def test_p3_passes(self):
        assert check_cocycle(build_pi_projective_closed(3)).all_passed

    def test_negative_control_flags_witness(self):
        atlas = build_pi_projective_closed(1)
        broken = dict(atlas.transitions)
        t = broken[("U0", "U1")]
        images = dict(t.images)
        images["th01"] = -images["th01"]  # deliberate sign flip
        broken[("U0", "U1")] = TransitionMap(t.source, t.target, images)
        report = check_cocycle(Atlas(atlas.charts, broken))
        assert not report.all_passed
        failing = [c for c in report.checks if c.status == FAIL]
        assert failing
        assert all("difference" in c.witness for c in failing)
        assert any("th" in c.witness for c in failing)


class TestSuperJacobian:
    def test_identity_map(self):
        chart = Chart("U", ("z",), ("t",))
        jac = super_jacobian(identity_transition(chart))
        assert jac.equals(SuperMatrix.identity(chart, (1, 1)))

    def test_plane_blocks(self):
        atlas = build_pi_projective_closed(2)
        jac = super_jacobian(atlas.transition("U0", "U1"))
        chart = atlas.chart("U0")

        def expect(text):
            return parse_superfunction(text, chart)

        # rows: z01, z21 | th01, th21; columns: z10, z20 | th10, th20
        assert jac.entries[0][0].equals(expect("(-1)/(z10^2)"))
        assert jac.entries[1][0].equals(
            expect("(-z20)/(z10^2) + (-2)/(z10^3)*[th10*th20]")
        )
        assert jac.entries[1][2].equals(expect("(1)/(z10^2)*[th20]"))
        assert jac.entries[1][3].equals(expect("(-1)/(z10^2)*[th10]"))
        assert jac.entries[2][0].equals(expect("(2)/(z10^3)*[th10]"))
        assert jac.entries[3][0].equals(
            expect("(-1)/(z10^2)*[th20] + (2*z20)/(z10^3)*[th10]")
        )
        assert jac.entries[3][2].equals(expect("(-z20)/(z10^2)"))
        assert jac.entries[3][3].equals(expect("(1)/(z10)"))

    def test_chain_rule_on_atlas(self):
        atlas = build_pi_projective_closed(2)
        names = ["U0", "U1", "U2"]
        for i in names:
            for j in names:
                for k in names:
                    if len({i, j, k}) != 3:
                        continue
                    t1 = atlas.transition(i, j)
                    t2 = atlas.transition(j, k)
                    direct = super_jacobian(compose(t2, t1))
                    pulled = super_jacobian(t2).map_entries(t1.pull_back)
                    chained = jacobian_chain_product(super_jacobian(t1), pulled)
                    assert direct.equals(chained)

    def test_chain_rule_randomised(self):
        rng = random.Random(31)
        a = Chart("A", ("a1", "a2"), ("p1", "p2"))
        b = Chart("B", ("b1", "b2"), ("q1", "q2"))
        c = Chart("C", ("c1", "c2"), ("r1", "r2"))
        for _ in range(25):
            t1 = random_transition(rng, a, b)
            t2 = random_transition(rng, b, c)
            direct = super_jacobian(compose(t2, t1))
            pulled = super_jacobian(t2).map_entries(t1.pull_back)
            chained = jacobian_chain_product(super_jacobian(t1), pulled)
            assert direct.equals(chained)


class TestBerezinianTriviality:
    def test_pi_spaces_exactly_one(self):
        for n in (1, 2):
            report = check_berezinian_trivial(build_pi_projective_closed(n))
            assert report.find("verdict").witness == "trivial (exact)"
            for i, j in (("U0", "U1"), ("U1", "U0")):
                assert report.find(f"pair/{i}->{j}").witness == "Ber = 1"

    def test_superline_is_nonconstant(self):
        report = check_berezinian_trivial(build_projective_superspace(1, 1))
        assert report.find("verdict").witness == "undetermined"
        atlas = build_projective_superspace(1, 1)
        ber = berezinian(super_jacobian(atlas.transition("U0", "U1")))
        chart = atlas.chart("U0")
        assert ber.equals(parse_superfunction("(-1)/(z10)", chart))

    def test_constant_cocycle_families(self):
        for n, m in ((1, 2), (2, 3)):
            report = check_berezinian_trivial(build_projective_superspace(n, m))
            assert report.find("verdict").witness == "trivial (constant cocycle)"
            assert report.find("pair/U0->U1").witness == "Ber = -1"


class TestClassification:
    def test_split_model(self):
        summary = atlas_classification(build_projective_superspace(2, 3))
        assert summary.projected_evidence
        assert summary.split_evidence
        assert not summary.even_corrections

    def test_pi_plane_has_degree_two_corrections(self):
        summary = atlas_classification(build_pi_projective_closed(2))
        assert not summary.projected_evidence
        degrees = {d for ds in summary.even_corrections.values() for d in ds}
        assert degrees == {2}
        # the odd transitions stay linear
        assert not summary.odd_corrections

    def test_pi_line_is_split(self):
        summary = atlas_classification(build_pi_projective_closed(1))
        assert summary.projected_evidence
        assert summary.split_evidence

    def test_report_form(self):
        report = classify_atlas(build_pi_projective_closed(2))
        assert report.find("projected-evidence").witness.startswith("no")
        assert all(c.status == PASS for c in report.checks)
