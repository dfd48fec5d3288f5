"""The lambda-derivative, lambda-integral and their consequences.

``d_lambda`` maps ``f(x)`` to ``f(lam*x)/x`` and ``i_lambda`` maps it to
``(x/lam) f(x/lam)``. On Laurent polynomials both act termwise, so every
identity here is checked by exact structural comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import (
    ComplexApprox,
    LaurentPoly,
    Scalar,
    as_rational,
    binom2,
    mp_context,
    to_mp,
)
from .errors import DomainError


@dataclass(frozen=True)
class OperatorContext:
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", as_rational(self.lam))
        if self.lam == 0:
            raise DomainError("lambda must be nonzero")


Ctx = Union[OperatorContext, int, Fraction]


def _lam(ctx: Ctx) -> Fraction:
    if isinstance(ctx, OperatorContext):
        return ctx.lam
    return OperatorContext(ctx).lam


def d_lambda(f: LaurentPoly, ctx: Ctx) -> LaurentPoly:
    lam = _lam(ctx)
    return LaurentPoly({e - 1: c * lam**e for e, c in f.terms.items()})


def i_lambda(f: LaurentPoly, ctx: Ctx) -> LaurentPoly:
    lam = _lam(ctx)
    return LaurentPoly({e + 1: c / lam ** (e + 1) for e, c in f.terms.items()})


def d_lambda_n_closed(f: LaurentPoly, ctx: Ctx, n: int) -> LaurentPoly:
    """``f(lam**n x) / (lam**C(n,2) x**n)``."""
    lam = _lam(ctx)
    return f.scale_arg(lam**n).shift(-n).scale(lam ** -binom2(n))


def i_lambda_n_closed(f: LaurentPoly, ctx: Ctx, n: int) -> LaurentPoly:
    """``x**n f(x / lam**n) / lam**C(n+1,2)``."""
    lam = _lam(ctx)
    return f.scale_arg(lam**-n).shift(n).scale(lam ** -binom2(n + 1))


def _iterate(op, f: LaurentPoly, ctx: Ctx, n: int) -> LaurentPoly:
    for _ in range(n):
        f = op(f, ctx)
    return f


def d_lambda_n(f: LaurentPoly, ctx: Ctx, n: int) -> LaurentPoly:
    """n-fold lambda-derivative, computed by iteration and by closed form.

    The two routes are compared and an ``ArithmeticError`` is raised if they
    ever differ.
    """
    if n < 0:
        raise DomainError("order must be non-negative")
    iterated = _iterate(d_lambda, f, ctx, n)
    closed = d_lambda_n_closed(f, ctx, n)
    if iterated != closed:
        raise ArithmeticError(f"D^{n} routes disagree: {iterated} vs {closed}")
    return closed


def i_lambda_n(f: LaurentPoly, ctx: Ctx, n: int) -> LaurentPoly:
    if n < 0:
        raise DomainError("order must be non-negative")
    iterated = _iterate(i_lambda, f, ctx, n)
    closed = i_lambda_n_closed(f, ctx, n)
    if iterated != closed:
        raise ArithmeticError(f"I^{n} routes disagree: {iterated} vs {closed}")
    return closed


def _lambda_power(lam: Fraction, exponent: ComplexApprox, integral: bool):
    prec = exponent.precision_digits
    if integral:
        # exact for integer exponents, including negative lambda
        e = int(exponent.re)
        return ComplexApprox.of(lam**e, prec)
    if lam <= 0:
        raise DomainError("non-integer powers need lambda > 0 (principal branch)")
    ctx = mp_context(prec)
    return ComplexApprox.from_mp(ctx.power(to_mp(lam, ctx), exponent.value), prec)


def monomial_dk(alpha, k: int, ctx: Ctx) -> tuple[ComplexApprox, ComplexApprox]:
    """``D^k x**alpha = scale * x**exponent``; returns ``(scale, exponent)``."""
    lam = _lam(ctx)
    alpha = ComplexApprox.of(alpha)
    power = alpha * k - binom2(k)
    return _lambda_power(lam, power, alpha.is_integer()), alpha - k


def monomial_ik(alpha, k: int, ctx: Ctx) -> tuple[ComplexApprox, ComplexApprox]:
    """``I^k x**alpha = scale * x**exponent``; returns ``(scale, exponent)``."""
    lam = _lam(ctx)
    alpha = ComplexApprox.of(alpha)
    power = -(alpha * k) - binom2(k + 1)
    return _lambda_power(lam, power, alpha.is_integer()), alpha + k


def definite_integral(f: LaurentPoly, ctx: Ctx, alpha: Scalar, beta: Scalar) -> Fraction:
    """``(beta/lam) f(beta/lam) - (alpha/lam) f(alpha/lam)``.

    ``f`` itself must be finite at both scaled endpoints; a pole there raises
    :class:`~lamcalc.errors.PoleError` even when the product would be finite.
    """
    lam = _lam(ctx)
    lo, hi = as_rational(alpha) / lam, as_rational(beta) / lam
    return hi * f.eval(hi) - lo * f.eval(lo)


def jackson_derivative(f: LaurentPoly, q: Scalar) -> LaurentPoly:
    q = as_rational(q)
    if q in (0, 1):
        raise DomainError("Jackson derivative needs q not in {0, 1}")
    combination = (d_lambda(f, 1) - d_lambda(f, q)).scale(1 / (1 - q))
    direct = (f - f.scale_arg(q)).shift(-1).scale(1 / (1 - q))
    if combination != direct:
        raise ArithmeticError(f"Jackson routes disagree: {combination} vs {direct}")
    return direct
