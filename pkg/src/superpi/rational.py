"""Exact multivariate polynomial and rational-function arithmetic over Q.

A polynomial is a mapping from exponent tuples to nonzero Fraction
coefficients, together with an ordered tuple of variable names.  The
exponent tuple has one entry per variable, so two polynomials can be
combined only when they carry the same variable tuple (this is the
"mismatched variable sets" error surface of the contracts below).

  x0^2*x1 + 3/2   ->   Poly(("x0", "x1"), {(2, 1): Fraction(1), (0, 0): Fraction(3, 2)})

The zero polynomial stores no terms.  Fraction keeps every coefficient in
lowest terms with a positive denominator, so scalars need no wrapper type.

A rational function is a pair num/den of polynomials with den != 0,
normalised at construction to keep representatives small and deterministic:

  * joint integer-primitive scaling: both polynomials get integer
    coefficients whose collective gcd is 1;
  * removal of any monomial factor common to every term of num and den;
  * cancellation of a common polynomial factor (exact multivariate gcd via
    primitive remainder sequences) whenever both parts are multi-term and a
    cheap evaluation probe does not rule a factor out - without this, the
    binomial denominators of Grassmannian overlaps compound uncontrollably
    under composition;
  * the leading coefficient of den (graded-lex order) is positive.

Equality of rational functions is decided by cross-multiplication,
a.num*b.den == b.num*a.den, which is exact and never depends on which
representative the normalisation happened to keep.

All values are immutable after construction and all operations are pure,
so everything here can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping, Optional, Sequence

Exponent = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Poly:
    """Sparse exact polynomial over Q in a fixed ordered set of variables."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Fraction]):
        variables = tuple(variables)
        clean: dict[Exponent, Fraction] = {}
        nvars = len(variables)
        for exps, coeff in terms.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} does not match {nvars} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if type(coeff) is not Fraction:
                coeff = Fraction(coeff)
            if coeff != 0:
                clean[tuple(exps)] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> Poly:
        # Internal fast path: terms must already be canonical (tuple keys,
        # nonzero Fraction values, correct arity).
        self = object.__new__(cls)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> Poly:
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Sequence[str], value) -> Poly:
        return cls(variables, {(0,) * len(tuple(variables)): Fraction(value)})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> Poly:
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: _ONE})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> Optional[Fraction]:
        """The constant value if this polynomial is constant, else None."""
        if not self.terms:
            return _ZERO
        if len(self.terms) == 1:
            exps, coeff = next(iter(self.terms.items()))
            if all(e == 0 for e in exps):
                return coeff
        return None

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading term under graded-lex order (requires a nonzero poly)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def homogeneous_degree(self) -> Optional[int]:
        """Common total degree of all terms, or None if inhomogeneous/zero."""
        degrees = {sum(e) for e in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def _require_same_variables(self, other: Poly) -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"mismatched variable sets: {self.variables} vs {other.variables}"
            )

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        self._require_same_variables(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            value = out.get(exps, _ZERO) + coeff
            if value == 0:
                out.pop(exps, None)
            else:
                out[exps] = value
        return Poly._raw(self.variables, out)

    def __sub__(self, other: Poly) -> Poly:
        self._require_same_variables(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            value = out.get(exps, _ZERO) - coeff
            if value == 0:
                out.pop(exps, None)
            else:
                out[exps] = value
        return Poly._raw(self.variables, out)

    def __neg__(self) -> Poly:
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        self._require_same_variables(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                value = out.get(exps, _ZERO) + c1 * c2
                if value == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = value
        return Poly._raw(self.variables, out)

    def scale(self, value) -> Poly:
        value = Fraction(value)
        if value == 0:
            return Poly._raw(self.variables, {})
        return Poly._raw(self.variables, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, power: int) -> Poly:
        if power < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.variables, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base if power > 1 else base
            power >>= 1
        return result

    def derivative(self, name: str) -> Poly:
        idx = self.variables.index(name)
        out: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            if exps[idx] == 0:
                continue
            new = list(exps)
            new[idx] -= 1
            new_t = tuple(new)
            out[new_t] = out.get(new_t, _ZERO) + coeff * exps[idx]
        return Poly(self.variables, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        cached = self._hash
        if cached is None:
            cached = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", cached)
        return cached

    # -- printing --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order, the canonical print order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            factors = [
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps)
                if e > 0
            ]
            if not factors:
                body = _frac_str(coeff)
            elif coeff == 1:
                body = "*".join(factors)
            elif coeff == -1:
                body = "-" + "*".join(factors)
            else:
                body = _frac_str(coeff) + "*" + "*".join(factors)
            parts.append(body)
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RatFun:
    """Quotient of two polynomials with a cheap canonical normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        num._require_same_variables(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = _normalize_pair(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("RatFun is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> RatFun:
        return cls(p, Poly.const(p.variables, 1))

    @classmethod
    def zero(cls, variables: Sequence[str]) -> RatFun:
        return cls.from_poly(Poly.zero(variables))

    @classmethod
    def one(cls, variables: Sequence[str]) -> RatFun:
        return cls.from_poly(Poly.const(variables, 1))

    @classmethod
    def const(cls, variables: Sequence[str], value) -> RatFun:
        return cls.from_poly(Poly.const(variables, value))

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> RatFun:
        return cls.from_poly(Poly.var(variables, name))

    # -- queries ----------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_constant(self) -> Optional[Fraction]:
        """The value as a Fraction if this is a constant, else None.

        num/den equals a scalar c iff num == c*den; c can only be the ratio
        of the leading coefficients, so one comparison decides it.
        """
        if self.is_zero:
            return _ZERO
        _, cn = self.num.leading()
        _, cd = self.den.leading()
        ratio = cn / cd
        if self.num == self.den.scale(ratio):
            return ratio
        return None

    def equals(self, other: RatFun) -> bool:
        """Exact equality by cross-multiplication."""
        self.num._require_same_variables(other.num)
        return self.num * other.den == other.num * self.den

    def homogeneous_degree(self) -> Optional[int]:
        """deg(num) - deg(den) when both are homogeneous, else None."""
        if self.is_zero:
            return None
        dn = self.num.homogeneous_degree()
        dd = self.den.homogeneous_degree()
        if dn is None or dd is None:
            return None
        return dn - dd

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: RatFun) -> RatFun:
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: RatFun) -> RatFun:
        if self.den == other.den:
            return RatFun(self.num - other.num, self.den)
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den)

    def __mul__(self, other: RatFun) -> RatFun:
        num_a, den_a = self.num, self.den
        num_b, den_b = other.num, other.den
        num_a, den_b = _cross_cancel(num_a, den_b)
        num_b, den_a = _cross_cancel(num_b, den_a)
        return RatFun(num_a * num_b, den_a * den_b)

    def __truediv__(self, other: RatFun) -> RatFun:
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        num_a, den_a = self.num, self.den
        num_b, den_b = other.num, other.den
        num_a, num_b = _cross_cancel(num_a, num_b)
        den_b, den_a = _cross_cancel(den_b, den_a)
        return RatFun(num_a * den_b, den_a * num_b)

    def scale(self, value) -> RatFun:
        return RatFun(self.num.scale(value), self.den)

    def inverse(self) -> RatFun:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __pow__(self, power: int) -> RatFun:
        if power < 0:
            return self.inverse() ** (-power)
        return RatFun(self.num**power, self.den**power)

    def derivative(self, name: str) -> RatFun:
        """Quotient-rule derivative with respect to one variable."""
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        return RatFun(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(self, images: Mapping[str, RatFun]) -> RatFun:
        """Evaluate at rational-function images of every variable.

        The images must all share one variable tuple; the image of the
        denominator must be nonzero.
        """
        num_img = _poly_substitute(self.num, images)
        den_img = _poly_substitute(self.den, images)
        return num_img / den_img

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        raise TypeError("RatFun is unhashable; equality is value-based")

    def to_str(self) -> str:
        if self.den.is_constant() == 1:
            return f"({self.num.to_str()})"
        return f"({self.num.to_str()})/({self.den.to_str()})"

    def __repr__(self):
        return f"RatFun({self.to_str()})"


def _cross_cancel(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Divide out a common polynomial factor before multiplying fractions.

    Keeps products of reduced fractions reduced instead of re-reducing the
    larger result; monomial-only pairs are left to the cheaper stripping in
    the constructor.
    """
    if len(a.terms) > 1 and len(b.terms) > 1 and not _probably_coprime(a, b):
        g = poly_gcd(a, b)
        if g.is_constant() is None:
            qa = poly_exact_div(a, g)
            qb = poly_exact_div(b, g)
            if qa is not None and qb is not None:
                return qa, qb
    return a, b


def _normalize_pair(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero:
        return num, Poly.const(num.variables, 1)

    # Joint primitive scaling: integer coefficients, collective gcd 1.
    coeffs = list(num.terms.values()) + list(den.terms.values())
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = _lcm(denom_lcm, c.denominator)
    numer_gcd = 0
    for c in coeffs:
        numer_gcd = gcd(numer_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
    factor = Fraction(denom_lcm, numer_gcd)
    if factor != 1:
        num = num.scale(factor)
        den = den.scale(factor)

    # Strip a monomial factor common to every term of both polynomials.
    nvars = len(num.variables)
    mins = [None] * nvars
    for terms in (num.terms, den.terms):
        for exps in terms:
            for i, e in enumerate(exps):
                if mins[i] is None or e < mins[i]:
                    mins[i] = e
    if any(m for m in mins):
        shift = tuple(mins)
        num = Poly(num.variables, {_shift(e, shift): c for e, c in num.terms.items()})
        den = Poly(den.variables, {_shift(e, shift): c for e, c in den.terms.items()})

    # Cancel a common polynomial factor.  Content and monomial stripping are
    # already done, so a nontrivial factor needs both parts multi-term; that
    # is exactly where unreduced growth compounds (binomial denominators of
    # Grassmannian overlaps), so the gcd pays for itself.  Skipping the
    # reduction is always sound, so coprime pairs are filtered out first by
    # evaluation at fixed points.
    if len(num.terms) > 1 and len(den.terms) > 1 and not _probably_coprime(num, den):
        g = poly_gcd(num, den)
        if g.is_constant() is None:
            num_q = poly_exact_div(num, g)
            den_q = poly_exact_div(den, g)
            if num_q is not None and den_q is not None:
                num, den = num_q, den_q

    # Positive leading coefficient for the denominator.
    _, lead = den.leading()
    if lead < 0:
        num = -num
        den = -den
    return num, den


def _shift(exps: Exponent, shift: Exponent) -> Exponent:
    return tuple(e - s for e, s in zip(exps, shift))


# -- exact multivariate gcd (primitive subresultant remainder sequences) -----

_PROBE_POINTS = (
    (1009, 2003, 3001, 4001, 5003, 6007, 7001, 8009, 9001, 10007),
    (7507, 1511, 9203, 2503, 8101, 3511, 10501, 4507, 6101, 5501),
)


def _eval_int(p: Poly, point: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        value = coeff
        for base, e in zip(point, exps):
            if e:
                value = value * base**e
        total += value
    return total


def _probably_coprime(a: Poly, b: Poly) -> bool:
    """Cheap one-sided coprimality filter.

    A common factor divides both evaluations at any integer point, so two
    independent points with tiny numerator gcd certify that running the
    full remainder sequence would be wasted work.  A False answer only
    means "worth trying"; skipping a real factor merely costs size.
    """
    nvars = len(a.variables)
    for point in _PROBE_POINTS:
        pt = point[:nvars] if nvars <= len(point) else point + (9973,) * (nvars - len(point))
        va = _eval_int(a, pt)
        vb = _eval_int(b, pt)
        if gcd(va.numerator, vb.numerator) <= 1000:
            return True
    return False


def poly_exact_div(a: Poly, b: Poly) -> Optional[Poly]:
    """The quotient a / b when the division is exact, else None."""
    if b.is_zero:
        raise ZeroDivisionError("exact division by the zero polynomial")
    if a.is_zero:
        return a
    variables = a.variables
    b_lead_exp, b_lead_coeff = b.leading()
    remainder = dict(a.terms)
    quotient: dict[Exponent, Fraction] = {}
    while remainder:
        exps = max(remainder, key=lambda e: (sum(e), e))
        coeff = remainder[exps]
        q_exp = tuple(x - y for x, y in zip(exps, b_lead_exp))
        if any(e < 0 for e in q_exp):
            return None
        q_coeff = coeff / b_lead_coeff
        quotient[q_exp] = q_coeff
        for b_exp, b_coeff in b.terms.items():
            key = tuple(x + y for x, y in zip(q_exp, b_exp))
            value = remainder.get(key, _ZERO) - q_coeff * b_coeff
            if value == 0:
                remainder.pop(key, None)
            else:
                remainder[key] = value
    return Poly(variables, quotient)


def _integer_primitive(p: Poly) -> Poly:
    """Scale to integer coefficients with gcd 1 and positive leading term."""
    if p.is_zero:
        return p
    denom_lcm = 1
    for c in p.terms.values():
        denom_lcm = _lcm(denom_lcm, c.denominator)
    numer_gcd = 0
    for c in p.terms.values():
        numer_gcd = gcd(numer_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
    scaled = p.scale(Fraction(denom_lcm, numer_gcd))
    _, lead = scaled.leading()
    return -scaled if lead < 0 else scaled


def _degree_in(p: Poly, idx: int) -> int:
    return max((e[idx] for e in p.terms), default=0)


def _coeff_wrt(p: Poly, idx: int, degree: int) -> Poly:
    terms = {}
    for exps, coeff in p.terms.items():
        if exps[idx] == degree:
            stripped = list(exps)
            stripped[idx] = 0
            terms[tuple(stripped)] = coeff
    return Poly(p.variables, terms)


def _shift_in(p: Poly, idx: int, amount: int) -> Poly:
    if amount == 0:
        return p
    terms = {}
    for exps, coeff in p.terms.items():
        shifted = list(exps)
        shifted[idx] += amount
        terms[tuple(shifted)] = coeff
    return Poly(p.variables, terms)


def _pseudo_rem(a: Poly, b: Poly, idx: int) -> Poly:
    """Pseudo-remainder of a by b with respect to variable idx."""
    db = _degree_in(b, idx)
    lcb = _coeff_wrt(b, idx, db)
    e = _degree_in(a, idx) - db + 1
    r = a
    while not r.is_zero and _degree_in(r, idx) >= db:
        dr = _degree_in(r, idx)
        lcr = _coeff_wrt(r, idx, dr)
        r = lcb * r - _shift_in(lcr, idx, dr - db) * b
        e -= 1
    if e > 0:
        r = (lcb**e) * r
    return r


def _content_pp(p: Poly, idx: int) -> tuple[Poly, Poly]:
    """Content (gcd of the idx-coefficients) and primitive part."""
    content = Poly.zero(p.variables)
    for d in range(_degree_in(p, idx) + 1):
        coeff = _coeff_wrt(p, idx, d)
        if not coeff.is_zero:
            content = poly_gcd(content, coeff)
            if content.is_constant() is not None:
                content = Poly.const(p.variables, 1)
                break
    if content.is_constant() == 1:
        return content, p
    pp = poly_exact_div(p, content)
    if pp is None:
        # The evaluation filter inside poly_gcd may under-estimate a
        # coefficient gcd; treating the content as trivial is always sound.
        return Poly.const(p.variables, 1), p
    return content, pp


_GCD_CACHE: dict[tuple, Poly] = {}
_GCD_CACHE_LIMIT = 1 << 16


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor over Q, integer-primitive with positive lead.

    Recursive primitive remainder sequences: the first active variable is
    made the main one, contents are split off and combined recursively.
    Used only to keep rational-function representatives small; equality
    never depends on it.
    """
    a._require_same_variables(b)
    a = _integer_primitive(a)
    b = _integer_primitive(b)
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.is_constant() is not None or b.is_constant() is not None:
        return Poly.const(a.variables, 1)
    key = (a, b) if (len(a.terms), hash(a)) <= (len(b.terms), hash(b)) else (b, a)
    cached = _GCD_CACHE.get(key)
    if cached is not None:
        return cached
    result = _poly_gcd_uncached(a, b)
    if result.is_constant() is None and (
        poly_exact_div(a, result) is None or poly_exact_div(b, result) is None
    ):
        # Spurious content can survive the heuristically stripped remainder
        # sequence; a non-divisor "gcd" is discarded rather than propagated.
        result = Poly.const(a.variables, 1)
    if len(_GCD_CACHE) < _GCD_CACHE_LIMIT:
        _GCD_CACHE[key] = result
    return result


def _poly_gcd_uncached(a: Poly, b: Poly) -> Poly:
    idx = next(
        i
        for i in range(len(a.variables))
        if _degree_in(a, i) > 0 or _degree_in(b, i) > 0
    )
    ca, pa = _content_pp(a, idx)
    cb, pb = _content_pp(b, idx)
    cg = poly_gcd(ca, cb)
    if _probably_coprime(pa, pb):
        return _integer_primitive(cg)
    if _degree_in(pa, idx) < _degree_in(pb, idx):
        pa, pb = pb, pa
    while not pb.is_zero:
        r = _pseudo_rem(pa, pb, idx)
        if r.is_zero:
            pa = pb
            break
        _, r_pp = _content_pp(_integer_primitive(r), idx)
        pa, pb = pb, r_pp
    return _integer_primitive(cg * pa)


def _poly_substitute(p: Poly, images: Mapping[str, RatFun]) -> RatFun:
    target_vars = None
    for img in images.values():
        target_vars = img.variables
        break
    if target_vars is None:
        raise ValueError("empty substitution")
    result = RatFun.zero(target_vars)
    powers: dict[str, list[RatFun]] = {}
    for exps, coeff in p.terms.items():
        term = RatFun.const(target_vars, coeff)
        for v, e in zip(p.variables, exps):
            if e == 0:
                continue
            if v not in images:
                raise ValueError(f"no image for variable {v!r}")
            cache = powers.setdefault(v, [RatFun.one(target_vars)])
            while len(cache) <= e:
                cache.append(cache[-1] * images[v])
            term = term * cache[e]
        result = result + term
    return result


# -- exact linear algebra over rational functions ---------------------------


def rat_solve(matrix: Sequence[Sequence[RatFun]], rhs: Sequence[RatFun]) -> list[RatFun]:
    """Solve M x = rhs exactly for a square invertible RatFun matrix."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("rat_solve expects a square system")
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not aug[r][col].is_zero), None)
        if pivot is None:
            raise ValueError("singular matrix in rat_solve")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [entry * inv for entry in aug[col]]
        for r in range(n):
            if r == col or aug[r][col].is_zero:
                continue
            f = aug[r][col]
            aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def rat_mat_inverse(matrix: Sequence[Sequence[RatFun]]) -> list[list[RatFun]]:
    """Exact inverse of a square invertible RatFun matrix."""
    n = len(matrix)
    variables = matrix[0][0].variables if n else ()
    aug = [
        list(row) + [RatFun.const(variables, 1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not aug[r][col].is_zero), None)
        if pivot is None:
            raise ValueError("singular matrix in rat_mat_inverse")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [entry * inv for entry in aug[col]]
        for r in range(n):
            if r == col or aug[r][col].is_zero:
                continue
            f = aug[r][col]
            aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_fraction_system(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[list[Fraction]]:
    """One exact solution of a (possibly overdetermined) linear system over Q.

    Returns None when the system is inconsistent; free variables are set
    to zero.  Row-reduction is plain Gaussian elimination over Fraction.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][n] != 0:
            return None
    solution = [Fraction(0)] * n
    for r, c in pivots:
        solution[c] = aug[r][n]
    return solution
