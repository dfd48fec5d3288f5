"""q-shifted factorials, q-binomials, q-exponentials and classical q-polynomials.

Finite objects are exact over Fractions. Infinite products and series are
evaluated with mpmath and stop on explicit tail bounds controlled by
:class:`TruncationConfig`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ComplexApprox,
    LaurentPoly,
    Scalar,
    as_rational,
    binom2,
    check_finite,
    mp_context,
    to_mp,
)
from .errors import DomainError, PoleError, TruncationError


@dataclass(frozen=True)
class TruncationConfig:
    precision_digits: int = 50
    tol: float | str = 1e-30
    max_terms: int = 10000

    def __post_init__(self):
        if self.precision_digits < 15:
            raise DomainError("precision_digits must be >= 15")
        if not float(self.tol) > 0:
            raise DomainError("tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")

    @property
    def context(self):
        return mp_context(self.precision_digits)

    def tol_mp(self):
        ctx = self.context
        return ctx.mpf(self.tol) if isinstance(self.tol, str) else ctx.mpf(repr(float(self.tol)))


DEFAULT_CONFIG = TruncationConfig()


def q_pochhammer(a, q, n: int):
    """``(a; q)_n``, the product of ``1 - a q**k`` for ``k < n``.

    Works for any numeric type that supports ``*`` and ``-``; Fractions stay
    exact.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    out = 1
    qk = 1
    for _ in range(n):
        out = out * (1 - a * qk)
        qk = qk * q
    return Fraction(out) if isinstance(out, int) else out


def _is_root_of_unity_risk(q: Fraction, n: int) -> bool:
    # a rational q is a root of unity only for q = +-1
    if q == 1:
        return n >= 1
    if q == -1:
        return n >= 2
    return False


def q_binomial(n: int, k: int, q: Scalar) -> Fraction:
    q = as_rational(q)
    if n < 0:
        raise DomainError("n must be non-negative")
    if k < 0 or k > n:
        return Fraction(0)
    if _is_root_of_unity_risk(q, n):
        raise PoleError(f"(q;q)_j vanishes for q={q}, j<={n}")
    return q_pochhammer(q, q, n) / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k))


@dataclass(frozen=True)
class QPolynomial:
    """Ordinary polynomial ``sum coeffs[k] z**k`` with exact coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [as_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return Fraction(acc) if isinstance(acc, int) else acc

    def __mul__(self, other: QPolynomial) -> QPolynomial:
        if not self.coeffs or not other.coeffs:
            return QPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(tuple(out))

    def at_reciprocal(self) -> LaurentPoly:
        """The Laurent polynomial ``x -> P(1/x)``."""
        return LaurentPoly({-k: c for k, c in enumerate(self.coeffs)})

    def as_list(self) -> list[Fraction]:
        return list(self.coeffs) or [Fraction(0)]


def gauss_expand(n: int, q: Scalar) -> QPolynomial:
    """Coefficients of ``(z; q)_n`` from the q-binomial theorem."""
    q = as_rational(q)
    return QPolynomial(tuple(
        q_binomial(n, k, q) * q ** binom2(k) * (-1) ** k for k in range(n + 1)
    ))


def pochhammer_poly(n: int, q: Scalar) -> QPolynomial:
    """``(z; q)_n`` by multiplying out the linear factors."""
    q = as_rational(q)
    out = QPolynomial((Fraction(1),))
    for k in range(n):
        out = out * QPolynomial((Fraction(1), -q**k))
    return out


def rogers_szego(n: int, q: Scalar) -> QPolynomial:
    return QPolynomial(tuple(q_binomial(n, k, q) for k in range(n + 1)))


def stieltjes_wigert(n: int, q: Scalar) -> QPolynomial:
    q = as_rational(q)
    norm = q_pochhammer(q, q, n)
    if norm == 0:
        raise PoleError(f"(q;q)_{n} vanishes at q={q}")
    return QPolynomial(tuple(q_binomial(n, k, q) * q ** (k * k) / norm for k in range(n + 1)))


# --------------------------------------------------------------------------
# numeric infinite objects
# --------------------------------------------------------------------------


def _pochhammer_inf_mp(a, q, cfg: TruncationConfig):
    ctx = cfg.context
    aq, qq = abs(a), abs(q)
    if qq >= 1:
        raise DomainError("(a;q)_inf needs |q| < 1")
    tol = cfg.tol_mp()
    # stop at the first N with |a| |q|^N / (1 - |q|) < tol
    prod, qk, bound = ctx.mpc(1), ctx.mpc(1), aq / (1 - qq)
    n = 0
    while bound >= tol:
        if n >= cfg.max_terms:
            raise TruncationError(f"(a;q)_inf needs more than {cfg.max_terms} factors")
        prod *= 1 - a * qk
        qk *= q
        bound *= qq
        n += 1
    return check_finite(prod, ctx)


def q_pochhammer_inf(a, q, cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    ctx = cfg.context
    value = _pochhammer_inf_mp(to_mp(a, ctx), to_mp(q, ctx), cfg)
    return ComplexApprox.from_mp(value, cfg.precision_digits)


def _ratio_series(z, q, cfg: TruncationConfig, big: bool):
    """Sum ``t_n = [q**C(n,2)] z**n / (q;q)_n``.

    The term ratio is bounded by ``r_n = |q|^(n if big) |z| / (1 - |q|^(n+1))``,
    which decreases in ``n``; once ``r_n < 1`` the tail after ``t_n`` is at most
    ``|t_n| r_n / (1 - r_n)``.
    """
    ctx = cfg.context
    qq, zz = abs(q), abs(z)
    if qq >= 1:
        raise DomainError("q-exponential series needs |q| < 1")
    tol = cfg.tol_mp()
    term, total = ctx.mpc(1), ctx.mpc(1)
    qn = ctx.mpc(1)  # q**n
    qn_abs = ctx.mpf(1)
    for n in range(cfg.max_terms):
        r = (qn_abs if big else 1) * zz / (1 - qn_abs * qq)
        if r < 1 and abs(term) * r / (1 - r) < tol:
            return check_finite(total, ctx)
        term = term * z * (qn if big else 1) / (1 - qn * q)
        total += term
        qn *= q
        qn_abs *= qq
    raise TruncationError(f"series did not converge within {cfg.max_terms} terms")


def e_q(z, q, cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """``sum z**n / (q;q)_n`` for ``|z| < 1``."""
    ctx = cfg.context
    z, q = to_mp(z, ctx), to_mp(q, ctx)
    if abs(z) >= 1:
        raise DomainError("e_q series needs |z| < 1")
    return ComplexApprox.from_mp(_ratio_series(z, q, cfg, big=False), cfg.precision_digits)


def big_e_q(z, q, cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """``sum q**C(n,2) z**n / (q;q)_n``; entire in ``z``."""
    ctx = cfg.context
    z, q = to_mp(z, ctx), to_mp(q, ctx)
    return ComplexApprox.from_mp(_ratio_series(z, q, cfg, big=True), cfg.precision_digits)


def _solution_product(a, lam, x, cfg: TruncationConfig):
    lam = as_rational(lam)
    if lam <= 1:
        raise DomainError("proportional-equation solutions need lambda > 1")
    ctx = cfg.context
    x = to_mp(x, ctx)
    if x == 0:
        raise PoleError("x must be nonzero")
    return _pochhammer_inf_mp(to_mp(as_rational(a), ctx) / x, to_mp(1 / lam, ctx), cfg)


def solution_E(a: Scalar, lam: Scalar, x, cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """Solution of ``x f(lam x) = x f(x) + a f(lam x)``, ``f(inf) = 1``: ``(a/x; 1/lam)_inf``."""
    return ComplexApprox.from_mp(_solution_product(a, lam, x, cfg), cfg.precision_digits)


def solution_e(a: Scalar, lam: Scalar, x, cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """Solution of ``a f(x) = x f(x) - x f(lam x)``, ``f(inf) = 1``: ``1 / (a/x; 1/lam)_inf``."""
    ctx = cfg.context
    prod = _solution_product(a, lam, x, cfg)
    if abs(prod) <= ctx.mpf(10) ** (GUARD_FLOOR - cfg.precision_digits):
        raise PoleError("(a/x; 1/lam)_inf vanishes numerically")
    return ComplexApprox.from_mp(1 / prod, cfg.precision_digits)


# smallest trusted magnitude is 10**(GUARD_FLOOR - precision_digits)
GUARD_FLOOR = 5
