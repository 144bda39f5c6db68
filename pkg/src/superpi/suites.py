"""Named verification suites combining the module-level checks.

Each suite returns a VerificationReport whose checks assert the expected
outcome for the family under test (a cocycle failure, a wrong Berezinian,
a missing correction term and so on all turn into failing checks), so the
CLI exit status can mirror the report.
"""

from __future__ import annotations

from .atlas import (
    Atlas,
    atlas_classification,
    check_berezinian_trivial,
    check_cocycle,
    classify_atlas,
)
from .builders import (
    atlases_equal,
    build_pi_grassmannian,
    build_pi_projective_closed,
    build_projective_superspace,
    build_super_grassmannian,
    check_pi_symmetric,
    grassmannian_cells,
    pi_grassmannian_cells,
    transformed_cell,
)
from .cohomology import (
    check_cech_cocycle,
    cochain_multiple,
    coboundary_refute,
    extract_obstruction,
    lifting_verify,
    odd_degree_decompose,
    omega_representative,
)
from .report import FAIL, PASS, VerificationReport
from .superalgebra import parse_superfunction

# Expected change of coordinates between the first two cells of the rank-2
# Pi-Grassmannian on a 4|4 space, written on the source chart U1.
G24_EXPECTED_U1_U2 = {
    "x12": "(-x11)/(y11) + (-1)/(y11^2)*[th11*xi11]",
    "x22": "(x21) + (-x11*y21)/(y11) + (1)/(y11)*[th11*xi21]"
    " + (-y21)/(y11^2)*[th11*xi11] + (-x11)/(y11^2)*[xi11*xi21]",
    "y12": "(1)/(y11)",
    "y22": "(y21)/(y11) + (1)/(y11^2)*[xi11*xi21]",
    "th12": "(-1)/(y11)*[th11] + (x11)/(y11^2)*[xi11]",
    "th22": "(1)*[th21] + (-y21)/(y11)*[th11] + (-x11)/(y11)*[xi21]"
    " + (x11*y21)/(y11^2)*[xi11] + (-1)/(y11^2)*[th11*xi11*xi21]",
    "xi12": "(-1)/(y11^2)*[xi11]",
    "xi22": "(1)/(y11)*[xi21] + (-y21)/(y11^2)*[xi11]",
}

# The same pair for the reduced rank-2 Grassmannian.
G24_REDUCED_EXPECTED_U1_U2 = {
    "x12": "(-x11)/(y11)",
    "x22": "(x21) + (-x11*y21)/(y11)",
    "y12": "(1)/(y11)",
    "y22": "(y21)/(y11)",
}

# Degree-1 odd layers: the transitions of the parity-shifted cotangent sheaf.
G24_COTANGENT_EXPECTED_U1_U2 = {
    "th12": "(-1)/(y11)*[th11] + (x11)/(y11^2)*[xi11]",
    "th22": "(1)*[th21] + (-y21)/(y11)*[th11] + (-x11)/(y11)*[xi21]"
    " + (x11*y21)/(y11^2)*[xi11]",
    "xi12": "(-1)/(y11^2)*[xi11]",
    "xi22": "(1)/(y11)*[xi21] + (-y21)/(y11^2)*[xi11]",
}

G24_CUBIC_TERM = "(-1)/(y11^2)*[th11*xi11*xi21]"


def suite_pi_projective(n: int) -> VerificationReport:
    """Gluing, Berezinian triviality and obstruction checks for one space."""
    report = VerificationReport(f"pi-projective n={n}")
    atlas = build_pi_projective_closed(n)
    report.merge(check_cocycle(atlas), prefix="cocycle/")

    ber = check_berezinian_trivial(atlas)
    report.merge(ber, prefix="berezinian/")
    verdict = ber.find("verdict")
    report.add_bool(
        "berezinian/expected-trivial-exact",
        verdict.witness == "trivial (exact)",
        f"verdict was {verdict.witness!r}",
    )

    derived = build_pi_grassmannian(1, n + 1)
    report.add_bool(
        "derivation/cells-match-closed",
        atlases_equal(derived, atlas),
        "cell-derived transitions differ from the closed form",
    )

    summary = atlas_classification(atlas)
    if n == 1:
        report.add_bool(
            "classification/split",
            summary.split_evidence,
            "expected a split atlas at n=1",
        )
        extracted = extract_obstruction(atlas)
        report.add_bool(
            "obstruction/zero",
            extracted.is_zero(),
            "nonzero obstruction cochain on a split atlas",
        )
    else:
        degrees = {d for ds in summary.even_corrections.values() for d in ds}
        report.add_bool(
            "classification/nonprojected-evidence",
            not summary.projected_evidence and degrees == {2},
            f"even correction degrees {sorted(degrees)}",
        )
        extracted = extract_obstruction(atlas)
        lam = cochain_multiple(extracted, omega_representative(n))
        if lam == 1:
            report.add("obstruction/lambda", PASS, "lambda = 1")
        else:
            report.add("obstruction/lambda", FAIL, f"lambda = {lam}")
    return report


def suite_projective_superspace(n: int, m: int) -> VerificationReport:
    """Gluing and classification for the split model; Berezinian reported."""
    report = VerificationReport(f"projective-superspace n={n} m={m}")
    atlas = build_projective_superspace(n, m)
    report.merge(check_cocycle(atlas), prefix="cocycle/")
    summary = atlas_classification(atlas)
    report.add_bool(
        "classification/projected",
        summary.projected_evidence,
        "unexpected nilpotent corrections in even transitions",
    )
    report.add_bool(
        "classification/split",
        summary.split_evidence,
        "odd transitions are not purely linear",
    )
    verdict = check_berezinian_trivial(atlas).find("verdict")
    report.add("berezinian/verdict", PASS, verdict.witness)
    extracted = extract_obstruction(atlas)
    report.add_bool(
        "obstruction/zero",
        extracted.is_zero(),
        "nonzero obstruction cochain on a projected atlas",
    )
    return report


def suite_grassmannian(d0: int, d1: int, n: int, m: int) -> VerificationReport:
    """Cell count and gluing for a derived super Grassmannian atlas."""
    report = VerificationReport(f"grassmannian ({d0}|{d1}; {n}|{m})")
    cells = grassmannian_cells(d0, d1, n, m)
    from math import comb

    expected = comb(n, d0) * comb(m, d1)
    report.add_bool(
        "cells/count",
        len(cells) == expected,
        f"{len(cells)} cells, expected {expected}",
    )
    atlas = build_super_grassmannian(d0, d1, n, m)
    report.merge(check_cocycle(atlas), prefix="cocycle/")
    return report


def suite_pi_grassmannian_24() -> VerificationReport:
    """Full verification of the rank-2 Pi-Grassmannian on a 4|4 space."""
    report = VerificationReport("pi-grassmannian (2, 4)")
    cells = pi_grassmannian_cells(2, 4)
    report.add_bool("cells/count", len(cells) == 6, f"{len(cells)} cells, expected 6")

    by_name = {cell.chart.name: cell for cell in cells}
    for zi in cells:
        for zj in cells:
            if zi.chart.name == zj.chart.name:
                continue
            ok = check_pi_symmetric(transformed_cell(zi, zj))
            report.add_bool(
                f"pi-symmetry/{zi.chart.name}->{zj.chart.name}",
                ok,
                "derived cell is not Pi-symmetric",
            )

    atlas = build_pi_grassmannian(2, 4)
    report.merge(check_cocycle(atlas), prefix="cocycle/")

    t12 = atlas.transition("U1", "U2")
    chart1 = atlas.chart("U1")
    for name in sorted(G24_EXPECTED_U1_U2):
        expected = parse_superfunction(G24_EXPECTED_U1_U2[name], chart1)
        actual = t12.images[name]
        diff = actual - expected
        report.add_bool(
            f"transitions/U1->U2/{name}",
            actual.equals(expected),
            f"difference {diff.to_str()}",
        )
    for name in sorted(G24_REDUCED_EXPECTED_U1_U2):
        expected = parse_superfunction(G24_REDUCED_EXPECTED_U1_U2[name], chart1)
        actual = t12.images[name].degree_part(0)
        report.add_bool(
            f"reduced/U1->U2/{name}",
            actual.equals(expected),
            f"reduced part {actual.to_str()}",
        )
    layers = odd_degree_decompose(t12)
    for name in sorted(G24_COTANGENT_EXPECTED_U1_U2):
        expected = parse_superfunction(G24_COTANGENT_EXPECTED_U1_U2[name], chart1)
        actual = layers[name].get(1, t12.images[name].degree_part(1))
        report.add_bool(
            f"cotangent-layer/U1->U2/{name}",
            actual.equals(expected),
            f"degree-1 part {actual.to_str()}",
        )
    cubic_expected = parse_superfunction(G24_CUBIC_TERM, chart1)
    cubic = t12.images["th22"].degree_part(3)
    report.add_bool(
        "cubic-term/U1->U2/th22",
        cubic.equals(cubic_expected),
        f"degree-3 part {cubic.to_str()}",
    )
    for name in ("th12", "xi12", "xi22"):
        report.add_bool(
            f"cubic-term/U1->U2/{name}-absent",
            t12.images[name].degree_part(3).is_zero,
            f"unexpected degree-3 part in {name}",
        )
    return report


def suite_lifting(n: int) -> VerificationReport:
    return lifting_verify(n)


def suite_obstruction(n: int, degree_bound: int = 3) -> VerificationReport:
    """Representative cocycle, extraction and bounded nontriviality evidence."""
    report = VerificationReport(f"obstruction n={n} degree-bound={degree_bound}")
    omega = omega_representative(n)
    report.merge(check_cech_cocycle(omega), prefix="cocycle/")
    extracted = extract_obstruction(build_pi_projective_closed(n))
    lam = cochain_multiple(extracted, omega)
    if lam == 1:
        report.add("extraction/lambda", PASS, "lambda = 1")
    else:
        report.add("extraction/lambda", FAIL, f"lambda = {lam}")
    report.merge(coboundary_refute(omega, degree_bound))
    return report


def classification_report(atlas: Atlas) -> VerificationReport:
    return classify_atlas(atlas)
