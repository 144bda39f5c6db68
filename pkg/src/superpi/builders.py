"""Constructors for the atlases the engine verifies.

Projective superspaces and Pi-projective spaces come both in closed form
(explicit transition formulas) and derived form (big cells glued through
Z_J = B_IJ^-1 Z_I, reading the new coordinates off the free columns).  The
two routes are kept independent so they can be checked against each other.

Coordinate naming:

  * projective-style charts U_i carry z{k}{i} and th{k}{i} (indices are the
    ambient column labels, chart index last);
  * rank-2 Grassmannian cells follow the row-wise scheme x{m}{s}, y{m}{s}
    with odd partners th{m}{s}, xi{m}{s}, where m counts free columns and s
    numbers the cell;
  * other cell shapes use a generic row/column scheme x{r}_{m} etc.

Single-digit ambient indices are enforced so names stay unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .atlas import Atlas, TransitionMap, identity_transition
from .rational import RatFun
from .superalgebra import Chart, SuperFunction
from .supermatrix import SuperMatrix, smat_inverse


class CellOverlapError(ValueError):
    """The selected columns of a big cell are not invertible."""


@dataclass
class BigCell:
    """A chart of a super Grassmannian presented as a coordinate supermatrix.

    The columns listed in index_even / index_odd form the identity; every
    other column holds coordinate entries.  layout maps grid positions to
    (coordinate name, sign) so derived matrices can be read off without
    guessing.
    """

    chart: Chart
    shape: tuple[int, int, int, int]  # d0, d1, n, m
    index_even: tuple[int, ...]
    index_odd: tuple[int, ...]
    matrix: SuperMatrix
    layout: dict[tuple[int, int], tuple[str, int]]


def _coordinate_entry(chart: Chart, name: str, sign: int) -> SuperFunction:
    sf = SuperFunction.coordinate(chart, name)
    return sf if sign > 0 else -sf


def make_big_cell(
    d0: int,
    d1: int,
    n: int,
    m: int,
    index_even: Sequence[int],
    index_odd: Sequence[int],
    chart_name: str,
    even_name: Callable[[int, int, int], str],
    odd_name: Callable[[int, int, int], str],
) -> BigCell:
    """Generic big cell of G(d0|d1; n|m) with freely chosen coordinate names.

    even_name(block_row, ordinal, column) names the even coordinates (block
    row 0 = even rows against free even columns, block row 1 = odd rows
    against free odd columns); odd_name does the same for the odd entries
    (block row 0 = even rows / free odd columns, 1 = odd rows / free even
    columns).
    """
    index_even = tuple(index_even)
    index_odd = tuple(index_odd)
    free_even = [c for c in range(n) if c not in index_even]
    free_odd = [c for c in range(m) if c not in index_odd]

    even_coords = []
    odd_coords = []
    names: dict[tuple[str, int, int], str] = {}
    for r in range(d0):
        for mi, c in enumerate(free_even):
            name = even_name(0, r, mi)
            names[("ee", r, c)] = name
            even_coords.append(name)
    for r in range(d1):
        for mi, c in enumerate(free_odd):
            name = even_name(1, r, mi)
            names[("oo", r, c)] = name
            even_coords.append(name)
    for r in range(d0):
        for mi, c in enumerate(free_odd):
            name = odd_name(0, r, mi)
            names[("eo", r, c)] = name
            odd_coords.append(name)
    for r in range(d1):
        for mi, c in enumerate(free_even):
            name = odd_name(1, r, mi)
            names[("oe", r, c)] = name
            odd_coords.append(name)

    chart = Chart(chart_name, tuple(even_coords), tuple(odd_coords))
    zero = SuperFunction.zero(chart)
    one = SuperFunction.one(chart)
    layout: dict[tuple[int, int], tuple[str, int]] = {}
    grid: list[list[SuperFunction]] = []
    for r in range(d0):
        row = []
        for c in range(n):
            if c in index_even:
                row.append(one if index_even.index(c) == r else zero)
            else:
                name = names[("ee", r, c)]
                layout[(r, c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        for c in range(m):
            if c in index_odd:
                row.append(zero)
            else:
                name = names[("eo", r, c)]
                layout[(r, n + c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        grid.append(row)
    for r in range(d1):
        row = []
        for c in range(n):
            if c in index_even:
                row.append(zero)
            else:
                name = names[("oe", r, c)]
                layout[(d0 + r, c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        for c in range(m):
            if c in index_odd:
                row.append(one if index_odd.index(c) == r else zero)
            else:
                name = names[("oo", r, c)]
                layout[(d0 + r, n + c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        grid.append(row)

    matrix = SuperMatrix(chart, (d0, d1), (n, m), grid)
    return BigCell(chart, (d0, d1, n, m), index_even, index_odd, matrix, layout)


def make_pi_cell(
    k: int,
    big_n: int,
    index: Sequence[int],
    chart_name: str,
    even_name: Callable[[int, int], str],
    odd_name: Callable[[int, int], str],
) -> BigCell:
    """Pi-symmetric big cell of shape (k|k) x (N|N).

    Row r pairs with row k+r: if row r reads (..., a, ... | ..., b, ...)
    then row k+r reads (..., -b, ... | ..., a, ...), the sign on the odd
    entries coming from the parity swap.  even_name(r, ordinal) and
    odd_name(r, ordinal) name the free entries of the even rows.
    """
    index = tuple(index)
    free = [c for c in range(big_n) if c not in index]
    even_coords = [even_name(r, mi) for r in range(k) for mi in range(len(free))]
    odd_coords = [odd_name(r, mi) for r in range(k) for mi in range(len(free))]
    chart = Chart(chart_name, tuple(even_coords), tuple(odd_coords))
    zero = SuperFunction.zero(chart)
    one = SuperFunction.one(chart)
    layout: dict[tuple[int, int], tuple[str, int]] = {}
    grid: list[list[SuperFunction]] = []
    for r in range(k):
        row = []
        for c in range(big_n):
            if c in index:
                row.append(one if index.index(c) == r else zero)
            else:
                name = even_name(r, free.index(c))
                layout[(r, c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        for c in range(big_n):
            if c in index:
                row.append(zero)
            else:
                name = odd_name(r, free.index(c))
                layout[(r, big_n + c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        grid.append(row)
    for r in range(k):
        row = []
        for c in range(big_n):
            if c in index:
                row.append(zero)
            else:
                name = odd_name(r, free.index(c))
                layout[(k + r, c)] = (name, -1)
                row.append(_coordinate_entry(chart, name, -1))
        for c in range(big_n):
            if c in index:
                row.append(one if index.index(c) == r else zero)
            else:
                name = even_name(r, free.index(c))
                layout[(k + r, big_n + c)] = (name, 1)
                row.append(_coordinate_entry(chart, name, 1))
        grid.append(row)
    matrix = SuperMatrix(chart, (k, k), (big_n, big_n), grid)
    return BigCell(chart, (k, k, big_n, big_n), index, index, matrix, layout)


def transformed_cell(zi: BigCell, zj: BigCell) -> SuperMatrix:
    """B_IJ^-1 Z_I: the cell of Z_I rewritten in Z_J's normal form.

    Raises CellOverlapError when the submatrix B_IJ made of Z_I's columns at
    Z_J's index set is not invertible.
    """
    if zi.shape != zj.shape:
        raise ValueError("cells of different Grassmannians")
    d0, d1, n, _ = zi.shape
    rows = len(zi.matrix.entries)
    cols = [c for c in zj.index_even] + [n + c for c in zj.index_odd]
    grid = [[zi.matrix.entries[r][c] for c in cols] for r in range(rows)]
    b = SuperMatrix(zi.chart, (d0, d1), (d0, d1), grid)
    try:
        b_inv = smat_inverse(b)
    except (ValueError, ZeroDivisionError) as exc:
        raise CellOverlapError(f"cells do not overlap: {exc}") from exc
    return b_inv * zi.matrix


def derive_transition_from_cells(zi: BigCell, zj: BigCell) -> TransitionMap:
    """Transition expressing Z_J's coordinates in Z_I's, from B_IJ^-1 Z_I.

    The identity columns of the transformed cell are verified, every
    occurrence of a coordinate in Z_J's template is read off, and repeated
    occurrences are required to agree.
    """
    w = transformed_cell(zi, zj)
    d0, d1, n, _ = zj.shape
    one = SuperFunction.one(zi.chart)
    zero = SuperFunction.zero(zi.chart)
    unit_cols = [c for c in zj.index_even] + [n + c for c in zj.index_odd]
    for t, c in enumerate(unit_cols):
        for r in range(d0 + d1):
            expected = one if r == t else zero
            if not w.entries[r][c].equals(expected):
                raise ValueError(
                    f"column {c} of the transformed cell is not the unit vector "
                    f"e_{t}: entry ({r}, {c}) = {w.entries[r][c].to_str()}"
                )
    images: dict[str, SuperFunction] = {}
    for (r, c), (name, sign) in zj.layout.items():
        value = w.entries[r][c]
        if sign < 0:
            value = -value
        if name in images:
            if not images[name].equals(value):
                raise ValueError(
                    f"inconsistent read-off for {name!r}: "
                    f"{images[name].to_str()} vs {value.to_str()}"
                )
        else:
            images[name] = value
    return TransitionMap(zi.chart, zj.chart, images)


def check_pi_symmetric(matrix: SuperMatrix) -> bool:
    """Whether the row span is stable under the parity swap v -> (-b | a).

    The matrix must contain a full set of unit columns (all our cells and
    their transforms do); the candidate coefficients of the transformed row
    are read off there and the combination is verified on every column.
    """
    k2 = matrix.row_shape[0] + matrix.row_shape[1]
    if matrix.row_shape[0] != matrix.row_shape[1] or matrix.col_shape[0] != matrix.col_shape[1]:
        raise ValueError("Pi-symmetry check needs shape (k|k) x (N|N)")
    big_n = matrix.col_shape[0]
    chart = matrix.chart
    one = SuperFunction.one(chart)
    zero = SuperFunction.zero(chart)
    unit_col: list[int] = []
    for t in range(k2):
        found = None
        for c in range(2 * big_n):
            if all(
                matrix.entries[r][c].equals(one if r == t else zero)
                for r in range(k2)
            ):
                found = c
                break
        if found is None:
            raise ValueError("no unit column for row {}; span test unavailable".format(t))
        unit_col.append(found)
    for r in range(k2):
        v_pi = [-matrix.entries[r][big_n + c] for c in range(big_n)]
        v_pi += [matrix.entries[r][c] for c in range(big_n)]
        coeffs = [v_pi[unit_col[t]] for t in range(k2)]
        for c in range(2 * big_n):
            acc = zero
            for t in range(k2):
                if coeffs[t].is_zero or matrix.entries[t][c].is_zero:
                    continue
                acc = acc + coeffs[t] * matrix.entries[t][c]
            if not acc.equals(v_pi[c]):
                return False
    return True


# -- named atlases ------------------------------------------------------------


def _check_digit(value: int, what: str):
    if not 0 <= value <= 9:
        raise ValueError(f"{what} must stay in 0..9 to keep coordinate names unambiguous")


def projective_chart(n: int, m: int, i: int) -> Chart:
    even = tuple(f"z{k}{i}" for k in range(n + 1) if k != i)
    odd = tuple(f"th{a}{i}" for a in range(1, m + 1))
    return Chart(f"U{i}", even, odd)


def build_projective_superspace(n: int, m: int) -> Atlas:
    """The split supermanifold with n+1 charts, odd part m copies of O(-1).

    Transitions: z_lj = z_li / z_ji (and z_ij = 1/z_ji), th_aj = th_ai / z_ji.
    """
    if n < 1 or m < 0:
        raise ValueError("projective superspace needs n >= 1, m >= 0")
    _check_digit(n, "n")
    _check_digit(m, "m")
    charts = [projective_chart(n, m, i) for i in range(n + 1)]
    transitions: dict[tuple[str, str], TransitionMap] = {}
    for i, src in enumerate(charts):
        for j, tgt in enumerate(charts):
            if i == j:
                transitions[(src.name, tgt.name)] = identity_transition(src)
                continue
            z_ji = SuperFunction.coordinate(src, f"z{j}{i}")
            inv = z_ji.invert()
            images: dict[str, SuperFunction] = {}
            for ell in range(n + 1):
                if ell == j:
                    continue
                if ell == i:
                    images[f"z{i}{j}"] = inv
                else:
                    images[f"z{ell}{j}"] = (
                        SuperFunction.coordinate(src, f"z{ell}{i}") * inv
                    )
            for a in range(1, m + 1):
                images[f"th{a}{j}"] = SuperFunction.coordinate(src, f"th{a}{i}") * inv
            transitions[(src.name, tgt.name)] = TransitionMap(src, tgt, images)
    return Atlas(charts, transitions)


def pi_projective_chart(n: int, i: int) -> Chart:
    even = tuple(f"z{k}{i}" for k in range(n + 1) if k != i)
    odd = tuple(f"th{k}{i}" for k in range(n + 1) if k != i)
    return Chart(f"U{i}", even, odd)


def build_pi_projective_closed(n: int, scale: Fraction | int = 1) -> Atlas:
    """Closed-form Pi-projective atlas on n+1 charts.

    Even transitions pick up the degree-2 correction scale * th_ji th_li /
    z_ji^2 on top of the reduced ones; odd transitions are the cotangent
    frame rules under dz <-> th.  scale=1 is the standard normalisation,
    scale=0 degenerates to the split model with the same odd part.
    """
    if n < 1:
        raise ValueError("Pi-projective space needs n >= 1")
    _check_digit(n, "n")
    scale = Fraction(scale)
    charts = [pi_projective_chart(n, i) for i in range(n + 1)]
    transitions: dict[tuple[str, str], TransitionMap] = {}
    for i, src in enumerate(charts):
        for j, tgt in enumerate(charts):
            if i == j:
                transitions[(src.name, tgt.name)] = identity_transition(src)
                continue
            z_ji = SuperFunction.coordinate(src, f"z{j}{i}")
            th_ji = SuperFunction.coordinate(src, f"th{j}{i}")
            inv = z_ji.invert()
            inv2 = inv * inv
            images: dict[str, SuperFunction] = {}
            images[f"z{i}{j}"] = inv
            images[f"th{i}{j}"] = -(th_ji * inv2)
            for ell in range(n + 1):
                if ell in (i, j):
                    continue
                z_li = SuperFunction.coordinate(src, f"z{ell}{i}")
                th_li = SuperFunction.coordinate(src, f"th{ell}{i}")
                images[f"z{ell}{j}"] = (
                    z_li * inv + (th_ji * th_li * inv2).scale(scale)
                )
                images[f"th{ell}{j}"] = th_li * inv - z_li * inv2 * th_ji
            transitions[(src.name, tgt.name)] = TransitionMap(src, tgt, images)
    return Atlas(charts, transitions)


def pi_projective_cell(n: int, i: int) -> BigCell:
    """The (1|1) x (n+1|n+1) Pi-cell carried by the chart U_i."""
    _check_digit(n, "n")
    free = [c for c in range(n + 1) if c != i]
    return make_pi_cell(
        1,
        n + 1,
        (i,),
        f"U{i}",
        lambda r, mi: f"z{free[mi]}{i}",
        lambda r, mi: f"th{free[mi]}{i}",
    )


def grassmannian_cells(d0: int, d1: int, n: int, m: int) -> list[BigCell]:
    """All big cells of G(d0|d1; n|m) in lexicographic index order."""
    if not (0 <= d0 <= n and 0 <= d1 <= m) or (d0, d1) == (0, 0):
        raise ValueError(f"invalid Grassmannian shape ({d0}|{d1}; {n}|{m})")
    _check_digit(n, "n")
    _check_digit(m, "m")
    cells = []
    combos = [
        (i0, i1)
        for i0 in combinations(range(n), d0)
        for i1 in combinations(range(m), d1)
    ]
    for idx, (i0, i1) in enumerate(combos, start=1):
        if d0 == 1 and d1 == 0:
            i = i0[0]
            free = [c for c in range(n) if c != i]
            cell = make_big_cell(
                d0, d1, n, m, i0, i1, f"U{i}",
                lambda block, r, mi, i=i, free=free: f"z{free[mi]}{i}",
                lambda block, r, mi, i=i: f"th{mi + 1}{i}",
            )
        elif d0 == 2 and d1 == 0 and n == 4:
            cell = make_big_cell(
                d0, d1, n, m, i0, i1, f"U{idx}",
                lambda block, r, mi, idx=idx: f"{'xy'[r]}{mi + 1}{idx}",
                lambda block, r, mi, idx=idx: f"{('th', 'xi')[r]}{mi + 1}{idx}",
            )
        else:
            cell = make_big_cell(
                d0, d1, n, m, i0, i1, f"U{idx}",
                lambda block, r, mi, idx=idx: f"{'xw'[block]}{r + 1}_{mi + 1}",
                lambda block, r, mi, idx=idx: f"{('et', 'ph')[block]}{r + 1}_{mi + 1}",
            )
        cells.append(cell)
    return cells


def _atlas_from_cells(cells: list[BigCell], pi_symmetric: bool = False) -> Atlas:
    charts = [cell.chart for cell in cells]
    transitions: dict[tuple[str, str], TransitionMap] = {}
    for zi in cells:
        for zj in cells:
            if zi.chart.name == zj.chart.name:
                transitions[(zi.chart.name, zj.chart.name)] = identity_transition(zi.chart)
                continue
            if pi_symmetric:
                w = transformed_cell(zi, zj)
                if not check_pi_symmetric(w):
                    raise ValueError(
                        f"derived cell {zi.chart.name}->{zj.chart.name} lost Pi-symmetry"
                    )
            transitions[(zi.chart.name, zj.chart.name)] = derive_transition_from_cells(zi, zj)
    return Atlas(charts, transitions)


def build_super_grassmannian(d0: int, d1: int, n: int, m: int) -> Atlas:
    """Atlas of G(d0|d1; n|m) with transitions derived from the big cells."""
    return _atlas_from_cells(grassmannian_cells(d0, d1, n, m))


def pi_grassmannian_cells(k: int, big_n: int) -> list[BigCell]:
    """Pi-symmetric cells: the full family for k=1, the (2, 4) case beyond."""
    if k == 1 and big_n >= 2:
        return [pi_projective_cell(big_n - 1, i) for i in range(big_n)]
    if k == 2 and big_n == 4:
        cells = []
        for idx, index in enumerate(combinations(range(4), 2), start=1):
            cells.append(
                make_pi_cell(
                    2, 4, index, f"U{idx}",
                    lambda r, mi, idx=idx: f"{'xy'[r]}{mi + 1}{idx}",
                    lambda r, mi, idx=idx: f"{('th', 'xi')[r]}{mi + 1}{idx}",
                )
            )
        return cells
    raise ValueError(
        f"unsupported Pi-Grassmannian shape (k={k}, N={big_n}); "
        "only k=1 and (k, N) = (2, 4) are exposed"
    )


def build_pi_grassmannian(k: int, big_n: int) -> Atlas:
    """Atlas of the Pi-Grassmannian, transitions derived from the Pi-cells.

    Every derived cell is verified to stay Pi-symmetric before its
    transition is accepted.
    """
    return _atlas_from_cells(pi_grassmannian_cells(k, big_n), pi_symmetric=True)


def atlases_equal(a: Atlas, b: Atlas) -> bool:
    """Chart-by-chart, coordinate-by-coordinate exact equality."""
    if [c.name for c in a.charts] != [c.name for c in b.charts]:
        return False
    for ca, cb in zip(a.charts, b.charts):
        if ca != cb:
            return False
    for key, t in a.transitions.items():
        other = b.transitions.get(key)
        if other is None:
            return False
        if not all(t.images[n].equals(other.images[n]) for n in t.target.coords):
            return False
    return True


def reduce_atlas(atlas: Atlas) -> Atlas:
    """Forget the odd coordinates: bodies of the even transition images."""
    reduced_charts = {
        c.name: Chart(c.name, c.even_coords, ()) for c in atlas.charts
    }
    transitions: dict[tuple[str, str], TransitionMap] = {}
    for (i, j), t in atlas.transitions.items():
        src = reduced_charts[i]
        tgt = reduced_charts[j]
        images = {}
        for name in tgt.even_coords:
            body = t.images[name].body()
            images[name] = SuperFunction.from_ratfun(
                src, RatFun(body.num, body.den)
            )
        transitions[(i, j)] = TransitionMap(src, tgt, images)
    return Atlas(list(reduced_charts.values()), transitions)
