"""Supercommutative functions on a chart: even/odd variables, Koszul signs.

A chart fixes an ordered tuple of even coordinate names and an ordered
tuple of odd (Grassmann) coordinate names.  A SuperFunction on a chart maps
odd monomials, stored as strictly increasing tuples of odd names in the
chart's declared order, to exact rational functions of the even
coordinates:

    f  =  sum_S  c_S(z) * theta_S,     theta_S = theta_{s1} ... theta_{sk}

Zero components are never stored.  Multiplication merges the odd monomials
and picks up the sign of the sorting permutation; a repeated odd name kills
the term (theta^2 = 0).  Even elements with an invertible body (nonzero
degree-0 part) are invertible through a finite geometric series, since the
nilpotent remainder has order at most floor(q/2)+1 in products.

The canonical text form round-trips exactly through parse_superfunction:
components are printed in increasing (length, position) order of their odd
monomial, e.g. "(z20)/(z10) + (1)/(z10^2)*[th10*th20]".

Values are immutable and every operation is pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .rational import Poly, RatFun

OddMonomial = tuple[str, ...]


@dataclass(frozen=True)
class Chart:
    """Named chart with ordered even and odd coordinates."""

    name: str
    even_coords: tuple[str, ...]
    odd_coords: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "even_coords", tuple(self.even_coords))
        object.__setattr__(self, "odd_coords", tuple(self.odd_coords))
        names = self.even_coords + self.odd_coords
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in chart {self.name!r}")

    @property
    def coords(self) -> tuple[str, ...]:
        return self.even_coords + self.odd_coords

    def is_even(self, name: str) -> bool:
        if name in self.even_coords:
            return True
        if name in self.odd_coords:
            return False
        raise KeyError(f"unknown coordinate {name!r} on chart {self.name!r}")

    def odd_position(self, name: str) -> int:
        try:
            return self.odd_coords.index(name)
        except ValueError:
            raise KeyError(f"unknown odd coordinate {name!r} on chart {self.name!r}")


def _merge_odd(m1: OddMonomial, m2: OddMonomial, chart: Chart) -> tuple[int, OddMonomial]:
    """Concatenate two sorted odd monomials; return (sign, sorted monomial).

    The sign is that of the merging permutation; a repeated name returns
    sign 0 (the product vanishes).
    """
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    pos = chart.odd_position
    left = [pos(x) for x in m1]
    right = [pos(x) for x in m2]
    if set(left) & set(right):
        return 0, ()
    sign = 1
    merged: list[int] = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            # right[j] jumps over the remaining len(left)-i left factors
            if (len(left) - i) % 2 == 1:
                sign = -sign
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(chart.odd_coords[k] for k in merged)


class SuperFunction:
    """Chart-local element of the structure sheaf."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Mapping[OddMonomial, RatFun]):
        clean: dict[OddMonomial, RatFun] = {}
        for mon, coeff in components.items():
            mon = tuple(mon)
            positions = [chart.odd_position(x) for x in mon]
            if positions != sorted(positions) or len(set(positions)) != len(positions):
                raise ValueError(f"odd monomial {mon} not strictly increasing")
            if coeff.variables != chart.even_coords:
                raise ValueError(
                    f"coefficient variables {coeff.variables} do not match chart "
                    f"{chart.name!r} even coordinates"
                )
            if not coeff.is_zero:
                clean[mon] = coeff
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SuperFunction is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> SuperFunction:
        return cls(chart, {})

    @classmethod
    def one(cls, chart: Chart) -> SuperFunction:
        return cls(chart, {(): RatFun.one(chart.even_coords)})

    @classmethod
    def const(cls, chart: Chart, value) -> SuperFunction:
        return cls(chart, {(): RatFun.const(chart.even_coords, value)})

    @classmethod
    def coordinate(cls, chart: Chart, name: str) -> SuperFunction:
        if chart.is_even(name):
            return cls(chart, {(): RatFun.var(chart.even_coords, name)})
        return cls(chart, {(name,): RatFun.one(chart.even_coords)})

    @classmethod
    def from_ratfun(cls, chart: Chart, value: RatFun) -> SuperFunction:
        return cls(chart, {(): value})

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def parity(self) -> str:
        """'even', 'odd' or 'inhomogeneous'; the zero function counts as even."""
        lengths = {len(m) % 2 for m in self.components}
        if not lengths:
            return "even"
        if lengths == {0}:
            return "even"
        if lengths == {1}:
            return "odd"
        return "inhomogeneous"

    def body(self) -> RatFun:
        """Degree-0 part, the image in the reduced structure sheaf."""
        return self.components.get((), RatFun.zero(self.chart.even_coords))

    def degree_part(self, degree: int) -> SuperFunction:
        """Sum of components whose odd monomial has exactly this length."""
        return SuperFunction(
            self.chart,
            {m: c for m, c in self.components.items() if len(m) == degree},
        )

    def max_degree(self) -> int:
        return max((len(m) for m in self.components), default=0)

    def is_constant(self) -> Optional[Fraction]:
        if self.is_zero:
            return Fraction(0)
        if set(self.components) == {()}:
            return self.body().is_constant()
        return None

    def equals(self, other: SuperFunction) -> bool:
        self._require_same_chart(other)
        keys = set(self.components) | set(other.components)
        zero = RatFun.zero(self.chart.even_coords)
        return all(
            self.components.get(k, zero).equals(other.components.get(k, zero))
            for k in keys
        )

    def _require_same_chart(self, other: SuperFunction) -> None:
        if self.chart != other.chart:
            raise ValueError(
                f"charts differ: {self.chart.name!r} vs {other.chart.name!r}"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: SuperFunction) -> SuperFunction:
        self._require_same_chart(other)
        out = dict(self.components)
        zero = RatFun.zero(self.chart.even_coords)
        for mon, coeff in other.components.items():
            out[mon] = out.get(mon, zero) + coeff
        return SuperFunction(self.chart, out)

    def __sub__(self, other: SuperFunction) -> SuperFunction:
        return self + (-other)

    def __neg__(self) -> SuperFunction:
        return SuperFunction(self.chart, {m: -c for m, c in self.components.items()})

    def __mul__(self, other: SuperFunction) -> SuperFunction:
        self._require_same_chart(other)
        out: dict[OddMonomial, RatFun] = {}
        zero = RatFun.zero(self.chart.even_coords)
        for m1, c1 in self.components.items():
            for m2, c2 in other.components.items():
                sign, mon = _merge_odd(m1, m2, self.chart)
                if sign == 0:
                    continue
                term = c1 * c2
                if sign < 0:
                    term = -term
                out[mon] = out.get(mon, zero) + term
        return SuperFunction(self.chart, out)

    def scale(self, value) -> SuperFunction:
        return SuperFunction(
            self.chart, {m: c.scale(value) for m, c in self.components.items()}
        )

    def mul_ratfun(self, value: RatFun) -> SuperFunction:
        return SuperFunction(
            self.chart, {m: c * value for m, c in self.components.items()}
        )

    def __pow__(self, power: int) -> SuperFunction:
        if power < 0:
            return self.invert() ** (-power)
        result = SuperFunction.one(self.chart)
        for _ in range(power):
            result = result * self
        return result

    def invert(self) -> SuperFunction:
        """Exact inverse of an even element with invertible body.

        With b the body and n the nilpotent remainder, the inverse is
        b^-1 * sum_k (-n/b)^k; the series stops at k = floor(q/2) because
        every component of n has odd degree >= 2.
        """
        if self.parity != "even":
            raise ValueError("only even superfunctions are invertible")
        b = self.body()
        if b.is_zero:
            raise ZeroDivisionError("superfunction with nilpotent (zero-body) part")
        inv_body = SuperFunction.from_ratfun(self.chart, b.inverse())
        nil = self - SuperFunction.from_ratfun(self.chart, b)
        if nil.is_zero:
            return inv_body
        x = nil * inv_body
        result = SuperFunction.one(self.chart)
        power = SuperFunction.one(self.chart)
        for _ in range(len(self.chart.odd_coords) // 2):
            power = -(power * x)
            if power.is_zero:
                break
            result = result + power
        return result * inv_body

    def derive(self, name: str) -> SuperFunction:
        """Partial derivative; odd variables use the left convention.

        For an odd name a and monomial S containing a at 0-based position p,
        the term c * theta_S contributes (-1)^p c * theta_(S minus a).
        """
        if self.chart.is_even(name):
            return SuperFunction(
                self.chart,
                {m: c.derivative(name) for m, c in self.components.items()},
            )
        out: dict[OddMonomial, RatFun] = {}
        zero = RatFun.zero(self.chart.even_coords)
        for mon, coeff in self.components.items():
            if name not in mon:
                continue
            p = mon.index(name)
            rest = mon[:p] + mon[p + 1 :]
            term = coeff if p % 2 == 0 else -coeff
            out[rest] = out.get(rest, zero) + term
        return SuperFunction(self.chart, out)

    # -- printing -------------------------------------------------------------

    def _sort_key(self, mon: OddMonomial):
        return (len(mon), tuple(self.chart.odd_position(x) for x in mon))

    def to_str(self) -> str:
        if not self.components:
            return "(0)"
        parts = []
        for mon in sorted(self.components, key=self._sort_key):
            coeff = self.components[mon].to_str()
            if mon:
                parts.append(f"{coeff}*[{'*'.join(mon)}]")
            else:
                parts.append(coeff)
        return " + ".join(parts)

    def __repr__(self):
        return f"SuperFunction({self.chart.name!r}, {self.to_str()})"


def substitute(
    f: SuperFunction, assignment: Mapping[str, SuperFunction]
) -> SuperFunction:
    """Apply the ring homomorphism sending each coordinate to its image.

    Even coordinates must map to even superfunctions with nonzero body,
    odd coordinates to odd superfunctions, and all images must share one
    chart.  Odd monomials map to the ordered product of the images.
    """
    target = None
    for img in assignment.values():
        if target is None:
            target = img.chart
        elif img.chart != target:
            raise ValueError("substitution images live on different charts")
    if target is None:
        raise ValueError("empty substitution")
    for name, img in assignment.items():
        if f.chart.is_even(name):
            if img.parity != "even":
                raise ValueError(f"even coordinate {name!r} mapped to non-even image")
            if img.body().is_zero:
                raise ValueError(f"even coordinate {name!r} mapped to zero-body image")
        else:
            if not img.is_zero and img.parity != "odd":
                raise ValueError(f"odd coordinate {name!r} mapped to non-odd image")

    powers: dict[str, list[SuperFunction]] = {}
    poly_cache: dict[Poly, SuperFunction] = {}
    inverse_cache: dict[Poly, SuperFunction] = {}

    def poly_image(p: Poly) -> SuperFunction:
        cached = poly_cache.get(p)
        if cached is not None:
            return cached
        result = SuperFunction.zero(target)
        for exps, coeff in p.terms.items():
            term = SuperFunction.const(target, coeff)
            for v, e in zip(p.variables, exps):
                if e == 0:
                    continue
                if v not in assignment:
                    raise ValueError(f"no image for coordinate {v!r}")
                cache = powers.setdefault(v, [SuperFunction.one(target)])
                while len(cache) <= e:
                    cache.append(cache[-1] * assignment[v])
                term = term * cache[e]
            result = result + term
        poly_cache[p] = result
        return result

    def den_inverse(p: Poly) -> SuperFunction:
        cached = inverse_cache.get(p)
        if cached is None:
            cached = poly_image(p).invert()
            inverse_cache[p] = cached
        return cached

    total = SuperFunction.zero(target)
    for mon, coeff in f.components.items():
        term = poly_image(coeff.num) * den_inverse(coeff.den)
        for name in mon:
            if name not in assignment:
                raise ValueError(f"no image for coordinate {name!r}")
            term = term * assignment[name]
        total = total + term
    return total


# -- canonical text form -------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(1):
            tokens.append(("int", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch in "+-*/^()[]":
                tokens.append((ch, ch))
            else:
                raise ValueError(f"unexpected character {ch!r} in expression")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.chart = chart

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> str:
        tok, value = self.next()
        if tok != kind:
            raise ValueError(f"expected {kind!r}, found {value!r}")
        return value

    def parse_superfunction(self) -> SuperFunction:
        total = self.parse_term()
        while self.peek() in "+-":
            op, _ = self.next()
            term = self.parse_term()
            total = total + term if op == "+" else total - term
        self.expect("end")
        return total

    def parse_term(self) -> SuperFunction:
        if self.peek() == "[":
            self.next()
            return self.finish_monomial(RatFun.one(self.chart.even_coords))
        coeff = self.parse_ratfun()
        if self.peek() == "*":
            self.next()
            self.expect("[")
            return self.finish_monomial(coeff)
        return SuperFunction.from_ratfun(self.chart, coeff)

    def finish_monomial(self, coeff: RatFun) -> SuperFunction:
        names = [self.expect("name")]
        while self.peek() == "*":
            self.next()
            names.append(self.expect("name"))
        self.expect("]")
        sf = SuperFunction.from_ratfun(self.chart, coeff)
        for name in names:
            sf = sf * SuperFunction.coordinate(self.chart, name)
        return sf

    def parse_ratfun(self) -> RatFun:
        self.expect("(")
        num = self.parse_poly()
        self.expect(")")
        if self.peek() == "/":
            self.next()
            self.expect("(")
            den = self.parse_poly()
            self.expect(")")
            return RatFun(num, den)
        return RatFun.from_poly(num)

    def parse_poly(self) -> Poly:
        total = self.parse_poly_term()
        while self.peek() in "+-":
            op, _ = self.next()
            term = self.parse_poly_term()
            total = total + term if op == "+" else total - term
        return total

    def parse_poly_term(self) -> Poly:
        variables = self.chart.even_coords
        sign = 1
        while self.peek() in "+-":
            op, _ = self.next()
            if op == "-":
                sign = -sign
        coeff = Fraction(sign)
        factors: list[tuple[str, int]] = []
        saw_coeff = False
        if self.peek() == "int":
            _, a = self.next()
            value = Fraction(int(a))
            if self.peek() == "/":
                self.next()
                value = value / int(self.expect("int"))
            coeff *= value
            saw_coeff = True
        while True:
            if self.peek() == "*":
                self.next()
                continue
            if self.peek() != "name":
                break
            _, name = self.next()
            power = 1
            if self.peek() == "^":
                self.next()
                power = int(self.expect("int"))
            factors.append((name, power))
        if not factors and not saw_coeff:
            raise ValueError("empty polynomial term")
        term = Poly.const(variables, coeff)
        for name, power in factors:
            term = term * (Poly.var(variables, name) ** power)
        return term


def parse_superfunction(text: str, chart: Chart) -> SuperFunction:
    """Parse the canonical text form back into a SuperFunction."""
    return _Parser(text, chart).parse_superfunction()


def parse_ratfun(text: str, variables: Sequence[str]) -> RatFun:
    """Parse a rational function in the canonical "(num)/(den)" form."""
    chart = Chart("_parse", tuple(variables), ())
    parser = _Parser(text, chart)
    value = parser.parse_ratfun()
    parser.expect("end")
    return value
