"""lambda-Taylor expansion of ``f(1/x)`` in the basis ``(x - a)_lam^k`` and connection formulas.

Two independent routes produce the coefficients: forward substitution in
the triangular system built from ``(I^i f)(a)``, and re-expansion of each
monomial ``x**-i`` through the q-binomial connection formula. Each
``connect_*`` function returns ground-truth coefficients from the system
route. The ``printed_*`` functions evaluate the closed forms as they are
usually stated, so callers can compare the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPoly, Scalar, as_rational, binom2
from .errors import DomainError
from .lambinom import BasisSpec, lb_eval, lb_expand
from .ops import i_lambda_n
from .qsymbols import (
    pochhammer_poly,
    q_binomial,
    q_pochhammer,
    rogers_szego,
    stieltjes_wigert,
)


def _check_basis(a: Fraction, lam: Fraction) -> None:
    if a == 0:
        raise DomainError("expansion point a must be nonzero")
    if lam in (0, 1, -1):
        raise DomainError("lambda must not be 0, 1 or -1")


@dataclass(frozen=True)
class BasisExpansion:
    a: Fraction
    lam: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "lam", as_rational(self.lam))
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))
        _check_basis(self.a, self.lam)

    @property
    def spec(self) -> BasisSpec:
        return BasisSpec(self.a, self.lam)


def reconstruct(e: BasisExpansion) -> LaurentPoly:
    spec = e.spec
    out = LaurentPoly()
    for k, c in enumerate(e.coeffs):
        if c:
            out = out + lb_expand(spec, k).scale(c)
    return out


def _degree_in_reciprocal(f: LaurentPoly) -> int:
    if f.is_zero():
        return 0
    if f.degree > 0:
        raise DomainError("f(1/x) must have only non-positive exponents")
    return -f.valuation


def taylor_via_system(f: LaurentPoly, a: Scalar, lam: Scalar) -> BasisExpansion:
    """Forward substitution in the lower-triangular system.

    Row ``i`` reads ``(I^i f)(a) = (a**i / lam**C(i+1,2)) * (lam;lam)_i *
    sum_{k<=i} c_k / (lam;lam)_{i-k}``; the ``k = 0`` term is ``c_0 a**i /
    lam**C(i+1,2)``.
    """
    a, lam = as_rational(a), as_rational(lam)
    _check_basis(a, lam)
    n = _degree_in_reciprocal(f)
    qp = [q_pochhammer(lam, lam, j) for j in range(n + 1)]
    coeffs = [f.eval(a)]
    for i in range(1, n + 1):
        value = i_lambda_n(f, lam, i).eval(a)
        row = a**i * qp[i] / lam ** binom2(i + 1)
        known = sum((coeffs[k] / qp[i - k] for k in range(i)), Fraction(0))
        coeffs.append(value / row - known)
    return BasisExpansion(a, lam, tuple(coeffs))


def taylor_via_connection(f: LaurentPoly, a: Scalar, lam: Scalar) -> BasisExpansion:
    """``c_k = (-1)**k lam**C(k,2) sum_{i>=k} (f_i / a**i) [i k]_lam`` with ``f_i`` the coefficient of ``x**-i``."""
    a, lam = as_rational(a), as_rational(lam)
    _check_basis(a, lam)
    m = _degree_in_reciprocal(f)
    coeffs = []
    for k in range(m + 1):
        inner = sum((f.coeff(-i) / a**i * q_binomial(i, k, lam) for i in range(k, m + 1)), Fraction(0))
        coeffs.append((-1) ** k * lam ** binom2(k) * inner)
    return BasisExpansion(a, lam, tuple(coeffs))


def c1_closed_form(f: LaurentPoly, a: Scalar, lam: Scalar) -> Fraction:
    a, lam = as_rational(a), as_rational(lam)
    return (lam * i_lambda_n(f, lam, 1).eval(a) - a * f.eval(a)) / (a * (1 - lam))


# --------------------------------------------------------------------------
# connection formulas: targets, ground truth and printed closed forms
# --------------------------------------------------------------------------


def _padded(e: BasisExpansion, n: int) -> BasisExpansion:
    cs = list(e.coeffs) + [Fraction(0)] * (n + 1 - len(e.coeffs))
    return BasisExpansion(e.a, e.lam, tuple(cs))


def target_monomial(n: int, a=None, lam=None, b=None) -> LaurentPoly:
    return LaurentPoly.monomial(-n)


def target_two_point(n: int, a, lam, b) -> LaurentPoly:
    return lb_expand(BasisSpec(b, lam), n)


def target_pochhammer(n: int, a, lam, b=None) -> LaurentPoly:
    return pochhammer_poly(n, lam).at_reciprocal()


def target_rogers_szego(n: int, a, lam, b=None) -> LaurentPoly:
    return rogers_szego(n, lam).at_reciprocal()


def target_stieltjes_wigert(n: int, a, lam, b=None) -> LaurentPoly:
    return stieltjes_wigert(n, lam).at_reciprocal()


def connect_monomial(n: int, a: Scalar, lam: Scalar) -> BasisExpansion:
    return _padded(taylor_via_system(target_monomial(n), a, lam), n)


def connect_two_point(n: int, a: Scalar, b: Scalar, lam: Scalar) -> BasisExpansion:
    return _padded(taylor_via_system(target_two_point(n, a, lam, b), a, lam), n)


def connect_pochhammer(n: int, a: Scalar, lam: Scalar) -> BasisExpansion:
    return _padded(taylor_via_system(target_pochhammer(n, a, lam), a, lam), n)


def connect_rogers_szego(n: int, a: Scalar, lam: Scalar) -> BasisExpansion:
    return _padded(taylor_via_system(target_rogers_szego(n, a, lam), a, lam), n)


def connect_stieltjes_wigert(n: int, a: Scalar, lam: Scalar) -> BasisExpansion:
    return _padded(taylor_via_system(target_stieltjes_wigert(n, a, lam), a, lam), n)


def printed_monomial(n: int, a: Scalar, lam: Scalar) -> list[Fraction]:
    a, lam = as_rational(a), as_rational(lam)
    return [(-1) ** k * lam ** binom2(k) * q_binomial(n, k, lam) / a**n for k in range(n + 1)]


def printed_two_point(n: int, a: Scalar, b: Scalar, lam: Scalar, sign: bool = True) -> list[Fraction]:
    """Closed form ``[n k] (-1)**k lam**(2 C(k,2)) (lam**(1-n) b/a)**k (a-b)^(n-k) ``.

    ``sign=False`` drops the ``(-1)**k`` factor; that variant agrees with the
    exact expansion.
    """
    a, b, lam = as_rational(a), as_rational(b), as_rational(lam)
    base = BasisSpec(b, lam)
    out = []
    for k in range(n + 1):
        c = (q_binomial(n, k, lam) * lam ** (2 * binom2(k)) * (lam ** (1 - n) * b / a) ** k
             * lb_eval(base, n - k, a))
        out.append((-1) ** k * c if sign else c)
    return out


def printed_pochhammer(n: int, a: Scalar, lam: Scalar) -> list[Fraction]:
    a, lam = as_rational(a), as_rational(lam)
    return [q_binomial(n, k, lam) * lam ** (2 * binom2(k)) / a**k * q_pochhammer(lam**k / a, lam, n - k)
            for k in range(n + 1)]


def printed_rogers_szego(n: int, a: Scalar, lam: Scalar) -> list[Fraction]:
    a, lam = as_rational(a), as_rational(lam)
    return [q_binomial(n, k, lam) * (-1) ** k * lam ** binom2(k) / a**k * rogers_szego(n - k, lam)(1 / a)
            for k in range(n + 1)]


def printed_stieltjes_wigert(n: int, a: Scalar, lam: Scalar) -> list[Fraction]:
    a, lam = as_rational(a), as_rational(lam)
    return [q_binomial(n, k, lam) * (-1) ** k * lam ** (k * (3 * k - 1) // 2) / a**k
            * stieltjes_wigert(n - k, lam)(lam**2 / a)
            for k in range(n + 1)]


@dataclass(frozen=True)
class ConnectionReport:
    family: str
    truth: BasisExpansion
    printed: tuple[Fraction, ...]
    target: LaurentPoly

    @property
    def agree(self) -> tuple[bool, ...]:
        return tuple(t == p for t, p in zip(self.truth.coeffs, self.printed))

    @property
    def all_agree(self) -> bool:
        return all(self.agree)

    @property
    def reconstructs(self) -> bool:
        return reconstruct(self.truth) == self.target


FAMILIES = ("monomial", "twopoint", "pochhammer", "rs", "sw")


def compare_connection(family: str, n: int, a: Scalar, lam: Scalar, b: Scalar | None = None) -> ConnectionReport:
    """Ground-truth coefficients next to the printed closed form for one family."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if family == "monomial":
        truth, printed, target = connect_monomial(n, a, lam), printed_monomial(n, a, lam), target_monomial(n)
    elif family == "twopoint":
        if b is None:
            raise DomainError("the two-point family needs b")
        truth = connect_two_point(n, a, b, lam)
        printed = printed_two_point(n, a, b, lam)
        target = target_two_point(n, a, lam, b)
    elif family == "pochhammer":
        truth, printed = connect_pochhammer(n, a, lam), printed_pochhammer(n, a, lam)
        target = target_pochhammer(n, a, lam)
    elif family == "rs":
        truth, printed = connect_rogers_szego(n, a, lam), printed_rogers_szego(n, a, lam)
        target = target_rogers_szego(n, a, lam)
    elif family == "sw":
        truth, printed = connect_stieltjes_wigert(n, a, lam), printed_stieltjes_wigert(n, a, lam)
        target = target_stieltjes_wigert(n, a, lam)
    else:
        raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return ConnectionReport(family, truth, tuple(printed), target)
