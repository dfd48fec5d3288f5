"""Exact rationals, high-precision complex values and sparse Laurent polynomials.

Rationals are :class:`fractions.Fraction`; everything exact in the package
is built on them. :class:`LaurentPoly` is an immutable map exponent -> Fraction
with zero coefficients pruned, so structural equality is identity of
functions. :class:`ComplexApprox` carries an mpmath complex together with the
number of significant digits it is meant to be trusted to.
"""
from __future__ import annotations

import functools
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from mpmath.ctx_mp import MPContext

from .errors import DomainError, NumericError, ParseError, PoleError

Scalar = Union[int, Fraction]

GUARD_DIGITS = 10
MIN_PRECISION = 15

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``[-]digits`` or ``[-]digits/digits`` into a reduced Fraction."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den))


def format_rational(r: Scalar) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def pow_int(s: Scalar, k: int) -> Fraction:
    """Exact ``s**k``; raises PoleError for ``0**k`` with ``k < 0``."""
    s = as_rational(s)
    if k < 0 and s == 0:
        raise PoleError("0 raised to a negative power")
    return s**k


def binom2(n: int) -> int:
    """binomial(n, 2) for any integer n >= 0."""
    return n * (n - 1) // 2


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


class LaurentPoly:
    """Finite sum of ``coeff * x**exp`` with integer exponents and exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: dict[int, Fraction] = {}
        for e, c in (terms or {}).items():
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponent must be int, got {e!r}")
            c = as_rational(c)
            if c:
                clean[e] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: dict[int, Fraction]) -> LaurentPoly:
        # terms already canonical
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: Scalar) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Parse the ``exp:coeff,exp:coeff`` text format."""
        text = text.strip()
        if not text:
            raise ParseError("empty Laurent polynomial text")
        terms: dict[int, Fraction] = {}
        for chunk in text.split(","):
            exp_s, sep, coeff_s = chunk.partition(":")
            if not sep:
                raise ParseError(f"term {chunk!r} is not of the form exp:coeff")
            try:
                exp = int(exp_s.strip())
            except ValueError:
                raise ParseError(f"bad exponent in term {chunk!r}") from None
            if exp in terms:
                raise ParseError(f"duplicate exponent {exp}")
            terms[exp] = parse_rational(coeff_s)
        return cls(terms)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Terms in descending exponent order."""
        return iter(sorted(self._terms.items(), reverse=True))

    @property
    def degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    @property
    def valuation(self) -> int | None:
        return min(self._terms) if self._terms else None

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0:0"
        return ",".join(f"{e}:{format_rational(c)}" for e, c in self.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict[str, str]:
        return {str(e): format_rational(c) for e, c in self.items()}

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> LaurentPoly:
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise DomainError("only monomials have Laurent-polynomial inverses")
            (e, c), = self._terms.items()
            return LaurentPoly._wrap({e * k: c**k})
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: Scalar) -> LaurentPoly:
        c = as_rational(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly._wrap({e: c * v for e, v in self._terms.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``x**k``."""
        return LaurentPoly._wrap({e + k: c for e, c in self._terms.items()})

    def scale_arg(self, c: Scalar) -> LaurentPoly:
        """The polynomial ``x -> f(c*x)``."""
        c = as_rational(c)
        if c == 0:
            raise DomainError("argument scale factor must be nonzero")
        return LaurentPoly._wrap({e: v * c**e for e, v in self._terms.items()})

    # -- evaluation --------------------------------------------------------

    def eval(self, x0: Scalar) -> Fraction:
        x0 = as_rational(x0)
        if x0 == 0:
            if self._terms and min(self._terms) < 0:
                raise PoleError("evaluation at 0 of a polynomial with negative exponents")
            return self.coeff(0)
        return sum((c * x0**e for e, c in self._terms.items()), Fraction(0))

    def eval_complex(self, z: ComplexApprox) -> ComplexApprox:
        ctx = mp_context(z.precision_digits)
        value = eval_mp(self, z.value, ctx)
        return ComplexApprox.from_mp(value, z.precision_digits)

    def __call__(self, x0):
        if isinstance(x0, ComplexApprox):
            return self.eval_complex(x0)
        return self.eval(x0)


def _coerce_poly(other):
    if isinstance(other, LaurentPoly):
        return other
    if isinstance(other, Rational):
        return LaurentPoly.constant(other)
    return NotImplemented


def eval_mp(f: LaurentPoly, z, ctx: MPContext):
    """Horner evaluation of ``f`` at an mpmath value ``z`` inside ``ctx``."""
    if f.is_zero():
        return ctx.mpc(0)
    lo, hi = f.valuation, f.degree
    if lo < 0 and z == 0:
        raise PoleError("evaluation at 0 of a polynomial with negative exponents")
    acc = ctx.mpc(0)
    for e in range(hi, lo - 1, -1):
        acc = acc * z + to_mp(f.coeff(e), ctx)
    if lo:
        acc = acc * z**lo
    return check_finite(acc, ctx)


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def lp_scale(f: LaurentPoly, c: Scalar) -> LaurentPoly:
    return f.scale(c)


def lp_scale_arg(f: LaurentPoly, c: Scalar) -> LaurentPoly:
    return f.scale_arg(c)


def lp_eval(f: LaurentPoly, x0: Scalar) -> Fraction:
    return f.eval(x0)


def lp_eval_complex(f: LaurentPoly, z: ComplexApprox) -> ComplexApprox:
    return f.eval_complex(z)


X = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)


# --------------------------------------------------------------------------
# High-precision complex numbers
# --------------------------------------------------------------------------


@functools.cache
def mp_context(precision_digits: int) -> MPContext:
    """A private mpmath context working ``GUARD_DIGITS`` beyond the declared precision.

    Contexts are never mutated after creation, so sharing them is safe.
    """
    ctx = MPContext()
    ctx.dps = precision_digits + GUARD_DIGITS
    return ctx


def to_mp(x, ctx: MPContext):
    """Convert an int, Fraction, str, float, complex or mpmath value into ``ctx``."""
    if isinstance(x, ComplexApprox):
        return ctx.mpc(x.re, x.im)
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        try:
            return to_mp(parse_rational(x), ctx)
        except ParseError:
            return ctx.mpmathify(x)
    return ctx.convert(x)


def check_finite(v, ctx: MPContext):
    if not ctx.isfinite(v):
        raise NumericError(f"non-finite intermediate value {v}")
    return v


@dataclass(frozen=True)
class ComplexApprox:
    re: object
    im: object
    precision_digits: int = 50

    def __post_init__(self):
        if self.precision_digits < MIN_PRECISION:
            raise DomainError(f"precision_digits must be >= {MIN_PRECISION}")
        ctx = mp_context(self.precision_digits)
        object.__setattr__(self, "re", check_finite(ctx.mpf(self.re), ctx))
        object.__setattr__(self, "im", check_finite(ctx.mpf(self.im), ctx))

    @classmethod
    def of(cls, x, precision_digits: int = 50) -> ComplexApprox:
        if isinstance(x, ComplexApprox):
            return cls(x.re, x.im, min(precision_digits, x.precision_digits))
        return cls.from_mp(to_mp(x, mp_context(precision_digits)), precision_digits)

    @classmethod
    def from_mp(cls, v, precision_digits: int) -> ComplexApprox:
        ctx = mp_context(precision_digits)
        v = ctx.mpc(v)
        return cls(v.real, v.imag, precision_digits)

    @property
    def context(self) -> MPContext:
        return mp_context(self.precision_digits)

    @property
    def value(self):
        return self.context.mpc(self.re, self.im)

    def __abs__(self):
        return abs(self.value)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.context.isint(self.re)

    def _binary(self, other, op) -> ComplexApprox:
        if isinstance(other, ComplexApprox):
            prec = min(self.precision_digits, other.precision_digits)
        else:
            prec = self.precision_digits
        ctx = mp_context(prec)
        return ComplexApprox.from_mp(op(to_mp(self, ctx), to_mp(other, ctx)), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        def div(a, b):
            if b == 0:
                raise PoleError("division by zero")
            return a / b

        return self._binary(other, div)

    def __rtruediv__(self, other):
        return ComplexApprox.of(other, self.precision_digits) / self

    def __neg__(self):
        return ComplexApprox(-self.re, -self.im, self.precision_digits)

    def to_string(self, digits: int | None = None) -> str:
        """Decimal string with ``digits`` significant digits (default: declared precision)."""
        digits = digits or self.precision_digits
        ctx = self.context
        re_s = ctx.nstr(self.re, digits, strip_zeros=False)
        if self.im == 0:
            return re_s
        im_s = ctx.nstr(abs(self.im), digits, strip_zeros=False)
        sign = "-" if self.im < 0 else "+"
        return f"{re_s}{sign}{im_s}j"

    def __str__(self) -> str:
        return self.to_string()
