"""Exact coefficient rings.

Two rings are supported: arbitrary-precision rationals (``int`` and
:class:`fractions.Fraction`) and multivariate polynomials with rational
coefficients (:class:`Poly`). Polynomials interoperate with plain numbers, so
a matrix may freely mix both.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, Fraction]
Monomial = Tuple[Tuple[str, int], ...]

_SYMBOL = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def monomial_key(m: Monomial):
    """Graded lexicographic key: total degree, then the sorted variable list."""
    flat = []
    for v, e in m:
        flat.extend([v] * e)
    return (len(flat), flat)


class Poly:
    """Immutable sparse multivariate polynomial.

    >>> a, b = Poly.var("a"), Poly.var("b")
    >>> str((a + b) * (a - b))
    'a^2-b^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: Dict[Monomial, Number] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls({(): c})

    @property
    def terms(self) -> Dict[Monomial, Number]:
        return dict(self._terms)

    def variables(self):
        return sorted({v for m in self._terms for v, _ in m})

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant(self) -> Number:
        return self._terms.get((), 0)

    def degree(self) -> int:
        return max((monomial_key(m)[0] for m in self._terms), default=0)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def leading_coefficient(self) -> Number:
        """Coefficient of the graded-lex least monomial (0 for the zero poly)."""
        if not self._terms:
            return 0
        return min(self._terms.items(), key=lambda t: monomial_key(t[0]))[1]

    def evaluate(self, values: Mapping[str, Number]) -> Number:
        total = Fraction(0)
        for m, c in self._terms.items():
            t = Fraction(c)
            for v, e in m:
                t *= Fraction(values[v]) ** e
            total += t
        return _norm(total)

    def substitute(self, values: Mapping[str, "Poly | Number"]) -> "Poly":
        total = Poly()
        for m, c in self._terms.items():
            t = Poly.const(c)
            for v, e in m:
                base = values.get(v, Poly.var(v))
                for _ in range(e):
                    t = t * base
            total = total + t
        return total

    def map_coefficients(self, fn) -> "Poly":
        return Poly({m: fn(c) for m, c in self._terms.items()})

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: Dict[Monomial, Number] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, d: int) -> "Poly":
        """Divide every coefficient by the integer ``d``; raises if inexact."""
        out = {}
        for m, c in self._terms.items():
            q = Fraction(c) / d
            if isinstance(c, int) and q.denominator != 1:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out[m] = q
        return Poly(out)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for v, e in m:
                factors.append(v if e == 1 else f"{v}^{e}")
            mono = "*".join(factors)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            if parts and not s.startswith("-"):
                s = "+" + s
            parts.append(s)
        return "".join(parts)


RingElement = Union[int, Fraction, Poly]

_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(text: str) -> Poly:
    """Parse the canonical printed form, e.g. ``5+2*a*d-b^2``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty weight")
    total = Poly()
    pos = 0
    for match in _TERM.finditer(s):
        if match.start() != pos:
            raise ValueError(f"cannot parse weight {text!r}")
        pos = match.end()
        sign, body = match.groups()
        term = Poly.const(-1 if sign == "-" else 1)
        for factor in body.split("*"):
            base, _, exp = factor.partition("^")
            power = int(exp) if exp else 1
            number = _parse_number(base)
            if number is not None:
                term = term * (Fraction(number) ** power)
            elif _SYMBOL.match(base):
                term = term * Poly.var(base) ** power
            else:
                raise ValueError(f"cannot parse weight {text!r}")
        total = total + term
    if pos != len(s):
        raise ValueError(f"cannot parse weight {text!r}")
    return total


def is_zero(x: RingElement) -> bool:
    return not x


def is_polynomial(x) -> bool:
    return isinstance(x, Poly) and not x.is_constant()


def to_number(x: RingElement) -> Number:
    if isinstance(x, Poly):
        if not x.is_constant():
            raise TypeError(f"{x} is not a constant")
        return x.constant()
    return _norm(Fraction(x)) if isinstance(x, Fraction) else x


def format_element(x: RingElement) -> str:
    return str(x)


class Ring:
    """Base class: parse weights and normalize partition-function signs."""

    name = "abstract"
    zero: RingElement = 0
    one: RingElement = 1

    def parse(self, text) -> RingElement:  # pragma: no cover - abstract
        raise NotImplementedError

    def abs(self, x: RingElement) -> RingElement:  # pragma: no cover
        raise NotImplementedError

    def is_nonnegative(self, x: RingElement) -> bool:  # pragma: no cover
        raise NotImplementedError


def _parse_number(text: str) -> Number | None:
    try:
        return _norm(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return None


class RationalRing(Ring):
    name = "rational"
    zero = 0
    one = 1

    def parse(self, text) -> Number:
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return _norm(Fraction(text))
        value = _parse_number(str(text).strip())
        if value is None:
            raise ValueError(
                f"weight {text!r} is not a rational number (use --ring polynomial)"
            )
        return value

    def abs(self, x):
        return _norm(abs(Fraction(to_number(x))))

    def is_nonnegative(self, x):
        return to_number(x) >= 0


class PolynomialRing(Ring):
    name = "polynomial"
    zero = Poly()
    one = Poly.const(1)

    def parse(self, text) -> Poly:
        if isinstance(text, Poly):
            return text
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return Poly.const(text)
        s = str(text).strip()
        value = _parse_number(s)
        if value is not None:
            return Poly.const(value)
        return parse_poly(s)

    def abs(self, x):
        p = x if isinstance(x, Poly) else Poly.const(x)
        return -p if p.leading_coefficient() < 0 else p

    def is_nonnegative(self, x):
        p = x if isinstance(x, Poly) else Poly.const(x)
        return all(c >= 0 for c in p.terms.values())


RATIONAL = RationalRing()
POLYNOMIAL = PolynomialRing()


def get_ring(name: str) -> Ring:
    if name == "rational":
        return RATIONAL
    if name == "polynomial":
        return POLYNOMIAL
    raise ValueError(f"unknown ring {name!r}")


def exact_div(x: RingElement, d: int) -> RingElement:
    """Exact division by an integer; integer-valued inputs must divide evenly."""
    if isinstance(x, Poly):
        return x.exact_div(d)
    if isinstance(x, int):
        if x % d:
            raise ArithmeticError(f"{x} not divisible by {d}")
        return x // d
    return _norm(Fraction(x) / d)


def ring_sum(items: Iterable[RingElement]) -> RingElement:
    total: RingElement = 0
    for x in items:
        total = total + x
    return total
