"""Exact arithmetic for weight polynomials, truncated q-series and rational terms.

Coefficients live in Z[t, w, v, x].  A weight monomial is packed into a
single int as four 16-bit exponent fields (t in the highest field), so a
product of monomials is an integer addition.  Truncated series are dense
lists of weight-polynomial coefficients for q^0 .. q^order; binary
operations truncate to the smaller operand's order rather than treating
unknown coefficients as zero.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

VARIABLES = ("t", "w", "v", "x")

_FIELD_MASK = 0xFFFF

MONO_ONE = 0
MONO_T = 1 << 48
MONO_W = 1 << 32
MONO_V = 1 << 16
MONO_X = 1


class FactorError(ValueError):
    """Raised for denominator factors that are not power-series invertible."""


class SubstitutionError(ValueError):
    """Raised when a substitution leaves the supported factor shape."""


def pack_monomial(t=0, w=0, v=0, x=0):
    for e in (t, w, v, x):
        if not 0 <= e <= _FIELD_MASK:
            raise ValueError(f"weight exponent out of range: {e!r}")
    return (t << 48) | (w << 32) | (v << 16) | x


def unpack_monomial(mono):
    return (
        (mono >> 48) & _FIELD_MASK,
        (mono >> 32) & _FIELD_MASK,
        (mono >> 16) & _FIELD_MASK,
        mono & _FIELD_MASK,
    )


def monomial_degree(mono):
    return sum(unpack_monomial(mono))


def monomial_power(mono, k):
    """k-th power of a packed monomial (exponent ranges re-checked)."""
    if k < 0:
        raise ValueError("negative monomial power")
    return pack_monomial(*(e * k for e in unpack_monomial(mono)))


def monomial_str(mono):
    pieces = []
    for name, e in zip(VARIABLES, unpack_monomial(mono)):
        if e == 1:
            pieces.append(name)
        elif e:
            pieces.append(f"{name}^{e}")
    return "*".join(pieces) if pieces else "1"


def parse_monomial(text):
    """Parse "1", "t", "v^2" or "t*w^3" into a packed monomial."""
    s = text.strip()
    if s in ("", "1"):
        return MONO_ONE
    exps = [0, 0, 0, 0]
    for piece in s.split("*"):
        name, _, power = piece.strip().partition("^")
        if name not in VARIABLES:
            raise ValueError(f"unknown weight variable {name!r} in {text!r}")
        exps[VARIABLES.index(name)] += int(power) if power else 1
    return pack_monomial(*exps)


def _mono_key(mono):
    # graded order, then t before w before v before x
    exps = unpack_monomial(mono)
    return (sum(exps), tuple(-e for e in exps))


def normalize_substitution(mapping):
    """Turn {"t": 1, "w": "q", "v": (1, 2)} into a 4-slot internal form.

    Each value is an int constant, the string "q", or a (coeff, q_exp)
    pair meaning coeff * q^q_exp.  Unmentioned variables are untouched.
    """
    out = [None, None, None, None]
    for name, value in mapping.items():
        if name not in VARIABLES:
            raise SubstitutionError(f"unknown weight variable {name!r}")
        if isinstance(value, int):
            norm = (value, 0)
        elif value == "q":
            norm = (1, 1)
        else:
            coeff, exp = value
            norm = (int(coeff), int(exp))
        if norm[1] < 0:
            raise SubstitutionError("substitution q-exponent must be >= 0")
        out[VARIABLES.index(name)] = norm
    return tuple(out)


def compose_substitutions(first, second):
    """Apply `first`, then `second` on the variables `first` left alone."""
    return tuple(f if f is not None else s for f, s in zip(first, second))


class WeightPolynomial:
    """Sparse polynomial in t, w, v, x with exact integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _trusted=False):
        if not terms:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def const(cls, c):
        return cls({MONO_ONE: int(c)})

    @classmethod
    def variable(cls, name):
        return cls({pack_monomial(*(1 if v == name else 0 for v in VARIABLES)): 1})

    @classmethod
    def monomial(cls, mono, coeff=1):
        return cls({mono: coeff})

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {MONO_ONE}

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms.get(MONO_ONE, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({MONO_ONE: other} if other else {})
        if isinstance(other, WeightPolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return WeightPolynomial(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return WeightPolynomial({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return WeightPolynomial()
            return WeightPolynomial(
                {m: c * other for m, c in self.terms.items()}, _trusted=True
            )
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    del out[m]
        return WeightPolynomial(out, _trusted=True)

    __rmul__ = __mul__

    def times_monomial(self, mono, coeff=1):
        if not coeff:
            return WeightPolynomial()
        return WeightPolynomial(
            {m + mono: c * coeff for m, c in self.terms.items()}, _trusted=True
        )

    def substitute(self, subs):
        """Apply a normalized substitution; returns {q_shift: polynomial}."""
        out = {}
        for mono, c in self.terms.items():
            exps = unpack_monomial(mono)
            coeff = c
            shift = 0
            kept = [0, 0, 0, 0]
            for i, (e, s) in enumerate(zip(exps, subs)):
                if s is None:
                    kept[i] = e
                else:
                    coeff *= s[0] ** e
                    shift += s[1] * e
            if not coeff:
                continue
            bucket = out.setdefault(shift, {})
            key = pack_monomial(*kept)
            nc = bucket.get(key, 0) + coeff
            if nc:
                bucket[key] = nc
            else:
                del bucket[key]
        return {
            s: WeightPolynomial(b, _trusted=True) for s, b in out.items() if b
        }

    def nonnegative(self):
        return all(c >= 0 for c in self.terms.values())

    def first_negative(self):
        """Smallest (graded-lex) monomial with a negative coefficient, or None."""
        bad = [(m, c) for m, c in self.terms.items() if c < 0]
        if not bad:
            return None
        return min(bad, key=lambda mc: _mono_key(mc[0]))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            body = monomial_str(mono)
            if body == "1":
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{abs(c)}*{body}"
            if not pieces:
                pieces.append(f"-{text}" if c < 0 else text)
            else:
                pieces.append(f"- {text}" if c < 0 else f"+ {text}")
        return " ".join(pieces)

    def __repr__(self):
        return f"WeightPolynomial({self})"


WP_ZERO = WeightPolynomial()
WP_ONE = WeightPolynomial.const(1)


def _coerce(x):
    if isinstance(x, WeightPolynomial):
        return x
    if isinstance(x, int):
        return WeightPolynomial.const(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# q-polynomials: {q_degree: WeightPolynomial}, used for numerators.
# ---------------------------------------------------------------------------

def qpoly(data):
    """Normalize an int, WeightPolynomial or {degree: coeff} into a q-poly."""
    if isinstance(data, int):
        data = {0: data}
    elif isinstance(data, WeightPolynomial):
        data = {0: data}
    out = {}
    for deg, c in data.items():
        c = _coerce(c)
        if c is NotImplemented:
            raise TypeError(f"coefficient at q^{deg} is not int or polynomial")
        if c:
            out[deg] = c
    return out


def qpoly_add(a, b):
    out = dict(a)
    for deg, c in b.items():
        nc = out.get(deg, WP_ZERO) + c
        if nc:
            out[deg] = nc
        else:
            out.pop(deg, None)
    return out


def qpoly_mul(a, b):
    out = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            d = d1 + d2
            nc = out.get(d, WP_ZERO) + c1 * c2
            if nc:
                out[d] = nc
            else:
                del out[d]
    return out


def qpoly_str(qp):
    """Canonical string: ascending q-degree, weight terms in graded order."""
    if not qp:
        return "0"
    pieces = []
    for deg in sorted(qp):
        coeff = qp[deg]
        if deg == 0:
            qpart = ""
        elif deg == 1:
            qpart = "q"
        else:
            qpart = f"q^{deg}"
        items = coeff.sorted_terms()
        if len(items) > 1:
            body = f"({coeff})*{qpart}" if qpart else f"({coeff})"
            pieces.append(("+", body))
            continue
        mono, c = items[0]
        mpart = monomial_str(mono)
        factors = []
        if abs(c) != 1 or (mpart == "1" and not qpart):
            factors.append(str(abs(c)))
        if mpart != "1":
            factors.append(mpart)
        if qpart:
            factors.append(qpart)
        pieces.append(("-" if c < 0 else "+", "*".join(factors)))
    sign, body = pieces[0]
    text = f"-{body}" if sign == "-" else body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# Truncated series.
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Dense q-series with WeightPolynomial coefficients up to q^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) != order + 1:
            raise ValueError("coefficient list does not match order")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order):
        return cls(order, [WP_ZERO] * (order + 1))

    @classmethod
    def one(cls, order):
        coeffs = [WP_ZERO] * (order + 1)
        coeffs[0] = WP_ONE
        return cls(order, coeffs)

    @classmethod
    def from_terms(cls, order, qp):
        coeffs = [WP_ZERO] * (order + 1)
        for deg, c in qpoly(qp).items():
            if 0 <= deg <= order:
                coeffs[deg] = coeffs[deg] + c
            elif deg < 0:
                raise ValueError("negative q-degree in series constructor")
        return cls(order, coeffs)

    def coefficient(self, n):
        if n > self.order:
            raise IndexError(f"coefficient q^{n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other):
        k = min(self.order, other.order)
        return TruncatedSeries(
            k, [self.coeffs[n] + other.coeffs[n] for n in range(k + 1)]
        )

    def __sub__(self, other):
        k = min(self.order, other.order)
        return TruncatedSeries(
            k, [self.coeffs[n] - other.coeffs[n] for n in range(k + 1)]
        )

    def __mul__(self, other):
        k = min(self.order, other.order)
        buckets = [dict() for _ in range(k + 1)]
        for i in range(k + 1):
            a = self.coeffs[i].terms
            if not a:
                continue
            for j in range(k - i + 1):
                b = other.coeffs[j].terms
                if not b:
                    continue
                bucket = buckets[i + j]
                for m1, c1 in a.items():
                    for m2, c2 in b.items():
                        m = m1 + m2
                        nc = bucket.get(m, 0) + c1 * c2
                        if nc:
                            bucket[m] = nc
                        else:
                            del bucket[m]
        return TruncatedSeries(
            k, [WeightPolynomial(b, _trusted=True) for b in buckets]
        )

    def shifted(self, k):
        if k == 0:
            return self
        return TruncatedSeries(self.order + k, [WP_ZERO] * k + self.coeffs)

    def truncated(self, k):
        if k > self.order:
            raise ValueError("cannot extend a truncated series")
        if k == self.order:
            return self
        return TruncatedSeries(k, self.coeffs[: k + 1])

    def scaled(self, factor):
        factor = _coerce(factor)
        return TruncatedSeries(self.order, [c * factor for c in self.coeffs])

    def scaled_monomial(self, mono, coeff=1):
        return TruncatedSeries(
            self.order, [c.times_monomial(mono, coeff) for c in self.coeffs]
        )

    def substitute(self, subs):
        """Apply a normalized weight substitution coefficient-wise.

        Replacements carrying q-powers push contributions to higher
        degrees; anything landing past the order is dropped, which is
        sound because unknown coefficients can only land higher still.
        """
        out = [dict() for _ in range(self.order + 1)]
        for n, coeff in enumerate(self.coeffs):
            if not coeff:
                continue
            for shift, part in coeff.substitute(subs).items():
                if n + shift > self.order:
                    continue
                bucket = out[n + shift]
                for m, c in part.terms.items():
                    nc = bucket.get(m, 0) + c
                    if nc:
                        bucket[m] = nc
                    else:
                        del bucket[m]
        return TruncatedSeries(
            self.order, [WeightPolynomial(b, _trusted=True) for b in out]
        )

    def as_qpoly(self):
        return {n: c for n, c in enumerate(self.coeffs) if c}

    def __str__(self):
        return qpoly_str(self.as_qpoly())

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, {self})"


@dataclass
class EqualityReport:
    """Outcome of a coefficient-wise series comparison."""

    equal: bool
    order: int
    degree: int | None = None
    lhs: WeightPolynomial | None = None
    rhs: WeightPolynomial | None = None

    def __str__(self):
        if self.equal:
            return f"equal through q^{self.order}"
        return (
            f"unequal at q^{self.degree}: lhs={self.lhs} rhs={self.rhs}"
        )


def series_equal(a, b):
    """Compare two series up to their shared order; report first mismatch."""
    k = min(a.order, b.order)
    for n in range(k + 1):
        if a.coeffs[n] != b.coeffs[n]:
            return EqualityReport(False, k, n, a.coeffs[n], b.coeffs[n])
    return EqualityReport(True, k)


def expand_inverse_factor(factor, order):
    """Geometric expansion of 1/(1 - mono*q^e) up to the given order."""
    mono, q_exp = factor
    if q_exp < 1:
        raise FactorError(f"factor exponent must be >= 1, got {q_exp}")
    coeffs = [WP_ZERO] * (order + 1)
    for i in range(order // q_exp + 1):
        coeffs[i * q_exp] = WeightPolynomial.monomial(monomial_power(mono, i))
    return TruncatedSeries(order, coeffs)


# ---------------------------------------------------------------------------
# Rational terms: q^shift * numerator / prod (1 - mono*q^e).
# ---------------------------------------------------------------------------

@dataclass
class RationalTerm:
    """One summand of a sum side.

    The numerator is stored with min degree 0; construction folds any
    negative numerator degrees into the prefactor shift, which must stay
    non-negative.
    """

    q_shift: int
    numerator: dict
    denominator: tuple

    def is_zero(self):
        return not self.numerator

    def expand(self, order):
        if not self.numerator or self.q_shift > order:
            return TruncatedSeries.zero(order)
        work = order - self.q_shift
        acc = TruncatedSeries.from_terms(
            work, {d: c for d, c in self.numerator.items() if d <= work}
        )
        for factor in self.denominator:
            acc = acc * expand_inverse_factor(factor, work)
        return acc.shifted(self.q_shift)

    def substitute(self, subs):
        num = {}
        for deg, coeff in self.numerator.items():
            for shift, part in coeff.substitute(subs).items():
                num = qpoly_add(num, {deg + shift: part})
        dens = []
        for mono, q_exp in self.denominator:
            exps = unpack_monomial(mono)
            coeff = 1
            shift = 0
            kept = [0, 0, 0, 0]
            for i, (e, s) in enumerate(zip(exps, subs)):
                if s is None:
                    kept[i] = e
                else:
                    coeff *= s[0] ** e
                    shift += s[1] * e
            if coeff == 0:
                continue
            if coeff != 1:
                raise SubstitutionError(
                    "substitution gives a denominator coefficient other than 0 or 1"
                )
            dens.append((pack_monomial(*kept), q_exp + shift))
        return rational_term(self.q_shift, num, tuple(dens))

    def __str__(self):
        num = qpoly_str(self.numerator)
        text = f"({num})" if self.numerator and len(self.numerator) > 1 else num
        if self.q_shift:
            text = f"q^{self.q_shift}*{text}" if self.q_shift > 1 else f"q*{text}"
        for mono, e in self.denominator:
            ms = monomial_str(mono)
            head = "" if ms == "1" else f"{ms}*"
            text += f"/(1-{head}q^{e})" if e > 1 else f"/(1-{head}q)"
        return text


def rational_term(q_shift, numerator, denominator=()):
    """Build a RationalTerm, normalizing negative numerator degrees."""
    num = qpoly(numerator)
    dens = []
    for mono, q_exp in denominator:
        if q_exp < 1:
            raise FactorError(f"factor exponent must be >= 1, got {q_exp}")
        dens.append((int(mono), int(q_exp)))
    if num:
        dmin = min(num)
        if dmin < 0:
            q_shift = q_shift + dmin
            num = {d - dmin: c for d, c in num.items()}
    if q_shift < 0:
        raise ValueError("rational term has a negative leading q-power")
    return RationalTerm(q_shift, num, tuple(dens))
