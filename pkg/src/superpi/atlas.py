"""Charts glued by substitution homomorphisms, and the checks run on them.

A TransitionMap with source chart S and target chart T assigns to every
coordinate of T a superfunction on S; composition is substitution.  An
Atlas stores one transition for every ordered chart pair, identity on the
diagonal.

The super Jacobian of a transition has rows indexed by target coordinates
(even first) and columns by source coordinates, entry (r, c) the left
derivative of the image of r with respect to c.  With this layout and left
derivatives the chain rule crosses the factors:

    Jac(T2 o T1)[r, c]  =  sum_m  Jac(T1)[m, c] * subst(Jac(T2))[r, m]

(the source-side factor multiplies from the left; the commonly quoted
matrix product subst(Jac(T2)) * Jac(T1) acquires wrong Koszul signs on the
parity-diagonal blocks).  jacobian_chain_product implements the correct
contraction and the Berezinian checks never rely on the wrong one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .report import FAIL, PASS, UNDETERMINED, VerificationReport
from .superalgebra import Chart, SuperFunction, substitute
from .supermatrix import SuperMatrix, berezinian


@dataclass(frozen=True)
class TransitionMap:
    source: Chart
    target: Chart
    images: dict[str, SuperFunction]

    def __post_init__(self):
        for name in self.target.coords:
            if name not in self.images:
                raise ValueError(f"transition misses target coordinate {name!r}")
        for name, img in self.images.items():
            if img.chart != self.source:
                raise ValueError(f"image of {name!r} does not live on the source chart")
            if self.target.is_even(name):
                if img.parity != "even":
                    raise ValueError(f"even coordinate {name!r} has non-even image")
                if img.body().is_zero:
                    raise ValueError(f"even coordinate {name!r} has zero-body image")
            elif not img.is_zero and img.parity != "odd":
                raise ValueError(f"odd coordinate {name!r} has non-odd image")

    def pull_back(self, f: SuperFunction) -> SuperFunction:
        """Rewrite a superfunction on the target chart in source coordinates."""
        if f.chart != self.target:
            raise ValueError("pull_back expects a function on the target chart")
        return substitute(f, self.images)

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        return all(
            self.images[name].equals(SuperFunction.coordinate(self.source, name))
            for name in self.target.coords
        )


def identity_transition(chart: Chart) -> TransitionMap:
    return TransitionMap(
        chart,
        chart,
        {name: SuperFunction.coordinate(chart, name) for name in chart.coords},
    )


def compose(t2: TransitionMap, t1: TransitionMap) -> TransitionMap:
    """The transition first applying t1 and then t2 (t1.target = t2.source)."""
    if t2.source != t1.target:
        raise ValueError(
            f"cannot compose: {t2.source.name!r} is not {t1.target.name!r}"
        )
    images = {name: substitute(img, t1.images) for name, img in t2.images.items()}
    return TransitionMap(t1.source, t2.target, images)


def transition_eq(a: TransitionMap, b: TransitionMap) -> bool:
    if a.source != b.source or a.target != b.target:
        return False
    return all(a.images[n].equals(b.images[n]) for n in a.target.coords)


class Atlas:
    """Charts plus one transition per ordered chart pair."""

    def __init__(self, charts: list[Chart], transitions: dict[tuple[str, str], TransitionMap]):
        names = [c.name for c in charts]
        if len(set(names)) != len(names):
            raise ValueError("duplicate chart names in atlas")
        by_name = {c.name: c for c in charts}
        for (i, j), t in transitions.items():
            if t.source != by_name[i] or t.target != by_name[j]:
                raise ValueError(f"transition ({i}, {j}) has inconsistent charts")
        for i in names:
            key = (i, i)
            if key not in transitions:
                transitions = dict(transitions)
                transitions[key] = identity_transition(by_name[i])
        for i, j in list(transitions):
            if (j, i) not in transitions:
                raise ValueError(f"transition ({j}, {i}) missing for stored ({i}, {j})")
        self.charts = list(charts)
        self.transitions = dict(transitions)

    def chart(self, name: str) -> Chart:
        for c in self.charts:
            if c.name == name:
                return c
        raise KeyError(name)

    def transition(self, source: str, target: str) -> TransitionMap:
        return self.transitions[(source, target)]

    def chart_names(self) -> list[str]:
        return [c.name for c in self.charts]

    def pairs(self) -> list[tuple[str, str]]:
        names = self.chart_names()
        return [(i, j) for i in names for j in names if i != j]


def check_cocycle(atlas: Atlas) -> VerificationReport:
    """Round-trip and triple-overlap consistency of every transition.

    Verifies T_ji o T_ij = id for all ordered pairs and the composition
    identity on triples: all six orderings when the atlas has at most four
    charts, the increasing and decreasing ones otherwise.
    """
    report = VerificationReport("cocycle")
    names = atlas.chart_names()
    for i, j in atlas.pairs():
        round_trip = compose(atlas.transition(j, i), atlas.transition(i, j))
        _check_is_identity(report, f"roundtrip/{i}->{j}->{i}", round_trip)
    for combo in combinations(names, 3):
        orderings = (
            list(permutations(combo))
            if len(names) <= 4
            else [combo, tuple(reversed(combo))]
        )
        for i, j, k in orderings:
            direct = atlas.transition(i, k)
            threaded = compose(atlas.transition(j, k), atlas.transition(i, j))
            _check_transitions_match(report, f"triple/{i},{j},{k}", direct, threaded)
    return report


def _check_is_identity(report: VerificationReport, identifier: str, t: TransitionMap):
    for name in t.target.coords:
        expected = SuperFunction.coordinate(t.source, name)
        if not t.images[name].equals(expected):
            diff = t.images[name] - expected
            report.add(
                identifier, FAIL, f"coordinate {name}: difference {diff.to_str()}"
            )
            return
    report.add(identifier, PASS)


def _check_transitions_match(
    report: VerificationReport, identifier: str, a: TransitionMap, b: TransitionMap
):
    for name in a.target.coords:
        if not a.images[name].equals(b.images[name]):
            diff = a.images[name] - b.images[name]
            report.add(
                identifier, FAIL, f"coordinate {name}: difference {diff.to_str()}"
            )
            return
    report.add(identifier, PASS)


def super_jacobian(t: TransitionMap) -> SuperMatrix:
    """Left-derivative Jacobian, rows = target coords, columns = source coords."""
    rows = []
    row_names = list(t.target.even_coords) + list(t.target.odd_coords)
    col_names = list(t.source.even_coords) + list(t.source.odd_coords)
    for r in row_names:
        image = t.images[r]
        rows.append([image.derive(c) for c in col_names])
    return SuperMatrix(
        t.source,
        (len(t.target.even_coords), len(t.target.odd_coords)),
        (len(t.source.even_coords), len(t.source.odd_coords)),
        rows,
    )


def jacobian_chain_product(j_inner: SuperMatrix, j_outer_pulled: SuperMatrix) -> SuperMatrix:
    """Contract two Jacobians in the order the left-derivative chain rule needs.

    j_inner is Jac(T1) and j_outer_pulled is Jac(T2) with entries already
    rewritten in T1's source coordinates; entry (r, c) of the result is
    sum_m j_inner[m, c] * j_outer_pulled[r, m].
    """
    if j_inner.row_shape != j_outer_pulled.col_shape:
        raise ValueError("inner rows must match outer columns")
    chart = j_inner.chart
    zero = SuperFunction.zero(chart)
    inner_n = j_inner.row_shape[0] + j_inner.row_shape[1]
    rows = j_outer_pulled.row_shape[0] + j_outer_pulled.row_shape[1]
    cols = j_inner.col_shape[0] + j_inner.col_shape[1]
    grid = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = zero
            for m in range(inner_n):
                left = j_inner.entries[m][c]
                right = j_outer_pulled.entries[r][m]
                if left.is_zero or right.is_zero:
                    continue
                acc = acc + left * right
            row.append(acc)
        grid.append(row)
    return SuperMatrix(chart, j_outer_pulled.row_shape, j_inner.col_shape, grid)


def berezinian_class(value: SuperFunction) -> tuple[str, str]:
    """Classify a Berezinian as identically 1, a nonzero constant, or neither."""
    constant = value.is_constant()
    if constant == 1:
        return "one", "Ber = 1"
    if constant is not None and constant != 0:
        return "constant", f"Ber = {constant}"
    return "nonconstant", f"Ber = {value.to_str()}"


def check_berezinian_trivial(atlas: Atlas) -> VerificationReport:
    """Berezinians of all pair Jacobians, with a triviality verdict.

    Verdict levels: "trivial (exact)" when every Berezinian is 1,
    "trivial (constant cocycle)" when all are nonzero constants (a constant
    rescaling of frames absorbs them on these coverings), otherwise
    "undetermined".
    """
    report = VerificationReport("berezinian")
    kinds = []
    for i, j in atlas.pairs():
        ber = berezinian(super_jacobian(atlas.transition(i, j)))
        kind, witness = berezinian_class(ber)
        kinds.append(kind)
        status = PASS if kind in ("one", "constant") else UNDETERMINED
        report.add(f"pair/{i}->{j}", status, witness)
    if all(k == "one" for k in kinds):
        verdict = "trivial (exact)"
        status = PASS
    elif all(k in ("one", "constant") for k in kinds):
        verdict = "trivial (constant cocycle)"
        status = PASS
    else:
        verdict = "undetermined"
        status = UNDETERMINED
    report.add("verdict", status, verdict)
    return report


@dataclass
class AtlasClassification:
    projected_evidence: bool
    split_evidence: bool
    even_corrections: dict[tuple[str, str, str], list[int]]
    odd_corrections: dict[tuple[str, str, str], list[int]]


def atlas_classification(atlas: Atlas) -> AtlasClassification:
    """Collect the degreewise evidence for projectedness and splitness.

    Projected evidence: every even image is its own degree-0 part.  Split
    evidence: every odd image is purely of odd degree 1.  The correction
    tables list, per (source, target, coordinate), the degrees > (0 resp. 1)
    carrying nonzero parts.
    """
    even_corr: dict[tuple[str, str, str], list[int]] = {}
    odd_corr: dict[tuple[str, str, str], list[int]] = {}
    for i, j in atlas.pairs():
        t = atlas.transition(i, j)
        for name in t.target.even_coords:
            degrees = sorted(
                {len(m) for m in t.images[name].components if len(m) > 0}
            )
            if degrees:
                even_corr[(i, j, name)] = degrees
        for name in t.target.odd_coords:
            degrees = sorted(
                {len(m) for m in t.images[name].components if len(m) != 1}
            )
            if degrees:
                odd_corr[(i, j, name)] = degrees
    return AtlasClassification(
        projected_evidence=not even_corr,
        split_evidence=not even_corr and not odd_corr,
        even_corrections=even_corr,
        odd_corrections=odd_corr,
    )


def classify_atlas(atlas: Atlas) -> VerificationReport:
    """Descriptive report of the projected/split evidence of an atlas."""
    summary = atlas_classification(atlas)
    report = VerificationReport("classification")
    report.add(
        "projected-evidence",
        PASS,
        "yes (even transitions close on the reduced coordinates)"
        if summary.projected_evidence
        else "no (nilpotent corrections in even transitions)",
    )
    report.add(
        "split-evidence",
        PASS,
        "yes (odd transitions linear, even transitions reduced)"
        if summary.split_evidence
        else "no",
    )
    for (i, j, name), degrees in sorted(summary.even_corrections.items()):
        report.add(
            f"correction/even/{i}->{j}/{name}",
            PASS,
            f"degrees {degrees}",
        )
    for (i, j, name), degrees in sorted(summary.odd_corrections.items()):
        report.add(
            f"correction/odd/{i}->{j}/{name}",
            PASS,
            f"degrees {degrees}",
        )
    return report
