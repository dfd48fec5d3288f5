"""The lambda-binomial basis ``(x - a)_lam^n`` and its identities.

For ``n >= 0`` the basis element is the Laurent polynomial
``prod_{k<n} (1 - a / (lam**k x))``; for ``n < 0`` it is the rational function
``1 / (lam**n x - a)_lam^{-n}``; for complex ``alpha`` it is a ratio of two
infinite products. Identities between rational functions are certified by
exact agreement at enough random rational points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import ComplexApprox, LaurentPoly, Scalar, as_rational, binom2, to_mp
from .errors import DomainError, PoleError
from .ops import d_lambda_n, i_lambda_n
from .qsymbols import DEFAULT_CONFIG, TruncationConfig, _pochhammer_inf_mp, q_pochhammer


@dataclass(frozen=True)
class BasisSpec:
    a: Fraction
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "lam", as_rational(self.lam))
        if self.lam == 0:
            raise DomainError("lambda must be nonzero")


@dataclass
class Certificate:
    """Outcome of checking one identity.

    ``mode`` is ``"exact"`` when both sides were compared as Laurent
    polynomials and ``"pointwise"`` when they were compared at ``points``.
    """

    name: str
    holds: bool
    mode: str
    lhs: Any
    rhs: Any
    points: list[Fraction] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def lb_expand(spec: BasisSpec, n: int) -> LaurentPoly:
    if n < 0:
        raise DomainError("lb_expand needs n >= 0; use lb_eval for negative n")
    out = LaurentPoly.constant(1)
    for k in range(n):
        out = out * LaurentPoly({0: 1, -1: -spec.a / spec.lam**k})
    return out


def lb_value(spec: BasisSpec, n: int, y):
    """``(y - a)_lam^n`` at the point ``y`` for any integer ``n``.

    Generic over Fractions and mpmath values. Raises PoleError on ``y = 0`` or a
    vanishing denominator factor.
    """
    if y == 0:
        raise PoleError("lambda-binomial evaluated at x = 0")
    a, lam = spec.a, spec.lam
    if isinstance(y, (int, Fraction)):
        y = Fraction(y)
    else:
        a, lam = to_mp(a, y.context), to_mp(lam, y.context)
    if n >= 0:
        out = 1
        for k in range(n):
            out = out * (1 - a / (lam**k * y))
        return out
    base = lam**n * y
    den = 1
    for k in range(-n):
        den = den * (1 - a / (lam**k * base))
    if den == 0:
        raise PoleError(f"(x - a)_lam^{n} has a pole at x = {y}")
    return 1 / den


def lb_eval(spec: BasisSpec, n: int, x0: Scalar) -> Fraction:
    return Fraction(lb_value(spec, n, as_rational(x0)))


def lb_general(spec: BasisSpec, alpha, x, cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """``(x - a)_lam^alpha = (a/x; 1/lam)_inf / (a/(lam**alpha x); 1/lam)_inf``."""
    ctx = cfg.context
    value = _lb_general_mp(spec, to_mp(alpha, ctx), to_mp(x, ctx), cfg)
    return ComplexApprox.from_mp(value, cfg.precision_digits)


def _lb_general_mp(spec: BasisSpec, alpha, x, cfg: TruncationConfig):
    if abs(spec.lam) <= 1:
        raise DomainError("general lambda-binomial needs |lambda| > 1")
    if x == 0:
        raise PoleError("x must be nonzero")
    ctx = cfg.context
    lam, a = to_mp(spec.lam, ctx), to_mp(spec.a, ctx)
    q = 1 / lam
    num = _pochhammer_inf_mp(a / x, q, cfg)
    den = _pochhammer_inf_mp(a / (ctx.power(lam, alpha) * x), q, cfg)
    if abs(den) > ctx.mpf(10) ** (5 - cfg.precision_digits):
        return num / den
    if ctx.isint(alpha):
        # removable 0/0: for integer alpha the two products share their tail
        return _lb_integer_mp(a / x, q, int(alpha), ctx)
    raise PoleError("denominator product of (x - a)_lam^alpha vanishes")


def _lb_integer_mp(z, q, n: int, ctx):
    if n >= 0:
        return to_mp(q_pochhammer(z, q, n), ctx)
    den = to_mp(q_pochhammer(z * q**n, q, -n), ctx)
    if abs(den) <= ctx.eps:
        raise PoleError(f"(x - a)_lam^{n} has a pole here")
    return 1 / den


# --------------------------------------------------------------------------
# pointwise certification
# --------------------------------------------------------------------------


def sample_points(rng: random.Random, count: int, valid) -> list[Fraction]:
    """``count`` distinct nonzero rationals accepted by ``valid`` (which may raise PoleError)."""
    points: list[Fraction] = []
    seen: set[Fraction] = set()
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 100 * count + 1000:
            raise RuntimeError("could not find enough pole-free sample points")
        p = Fraction(rng.choice([-1, 1]) * rng.randint(1, 99), rng.randint(1, 99))
        if p in seen:
            continue
        seen.add(p)
        try:
            valid(p)
        except PoleError:
            continue
        points.append(p)
    return points


def _certify_pointwise(name, lhs, rhs, count: int, rng: random.Random) -> Certificate:
    values: dict[Fraction, tuple[Fraction, Fraction]] = {}

    def both(p):
        values[p] = (lhs(p), rhs(p))

    points = sample_points(rng, count, both)
    holds = all(values[p][0] == values[p][1] for p in points)
    return Certificate(
        name, holds, "pointwise",
        [values[p][0] for p in points], [values[p][1] for p in points], points,
    )


def _certify_exact(name, lhs: LaurentPoly, rhs: LaurentPoly) -> Certificate:
    return Certificate(name, lhs == rhs, "exact", lhs, rhs)


def _rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def _point_count(n: int, k: int) -> int:
    return abs(n) + 2 * k + 2


def lb_dk(spec: BasisSpec, n: int, k: int, rng=0) -> Certificate:
    """``lam**C(k,2) x**k (x-a)^k D^k (x-a)^n == (x-a)^(n+k)``."""
    lam = spec.lam
    name = f"D^{k} (x-a)^{n}"
    if n >= 0:
        cleared = lb_expand(spec, k).shift(k).scale(lam ** binom2(k))
        lhs = cleared * d_lambda_n(lb_expand(spec, n), lam, k)
        return _certify_exact(name, lhs, lb_expand(spec, n + k))

    def lhs(x):
        # D^k g(x) = g(lam^k x) / (lam^C(k,2) x^k); the prefactor cancels
        return lb_value(spec, k, x) * lb_value(spec, n, lam**k * x)

    return _certify_pointwise(name, lhs, lambda x: lb_value(spec, n + k, x),
                              _point_count(n, k), _rng(rng))


def lb_ik(spec: BasisSpec, n: int, k: int, rng=0) -> Certificate:
    """``I^k (x-a)^n == x**k (x/lam**k - a)^k (x-a)^(n-k) / lam**C(k+1,2)``."""
    lam = spec.lam
    scale = lam ** -binom2(k + 1)
    name = f"I^{k} (x-a)^{n}"
    if n == 0:
        return _certify_exact(name, i_lambda_n(LaurentPoly.constant(1), lam, k),
                              LaurentPoly.monomial(k, scale))
    if 0 <= k <= n:
        lhs = i_lambda_n(lb_expand(spec, n), lam, k)
        rhs = (lb_expand(spec, k).scale_arg(lam**-k) * lb_expand(spec, n - k)).shift(k).scale(scale)
        return _certify_exact(name, lhs, rhs)

    def lhs(x):
        return x**k * scale * lb_value(spec, n, x / lam**k)

    def rhs(x):
        return x**k * scale * lb_value(spec, k, x / lam**k) * lb_value(spec, n - k, x)

    return _certify_pointwise(name, lhs, rhs, _point_count(n, k), _rng(rng))


def lb_addition(spec: BasisSpec, m: int, n: int) -> Certificate:
    """``(x-a)^(n+m) == (x-a)^m (lam**m x - a)^n`` as Laurent polynomials."""
    lhs = lb_expand(spec, n + m)
    rhs = lb_expand(spec, m) * lb_expand(spec, n).scale_arg(spec.lam**m)
    return _certify_exact(f"(x-a)^{m}+{n}", lhs, rhs)


def lb_addition_general(spec: BasisSpec, alpha, beta, x,
                        cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """``|(x-a)^alpha (lam**alpha x - a)^beta - (x-a)^(alpha+beta)|``."""
    ctx = cfg.context
    alpha, beta, x = to_mp(alpha, ctx), to_mp(beta, ctx), to_mp(x, ctx)
    lam = to_mp(spec.lam, ctx)
    lhs = _lb_general_mp(spec, alpha, x, cfg) * _lb_general_mp(spec, beta, ctx.power(lam, alpha) * x, cfg)
    rhs = _lb_general_mp(spec, alpha + beta, x, cfg)
    return ComplexApprox.from_mp(abs(lhs - rhs), cfg.precision_digits)


def lb_dk_reciprocal(spec: BasisSpec, n: int, k: int, rng=0) -> Certificate:
    """``lam**C(k,2) x**k (x-a)^(n+k) D^k [1/(x-a)^n] == (x-a)^k``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    lam = spec.lam

    def lhs(x):
        den = lb_value(spec, n, lam**k * x)
        if den == 0:
            raise PoleError("1/(x-a)^n has a pole at lam^k x")
        return lb_value(spec, n + k, x) / den

    return _certify_pointwise(f"D^{k} 1/(x-a)^{n}", lhs, lambda x: lb_value(spec, k, x),
                              n + 2 * k + 2, _rng(rng))


def lb_general_dk(spec: BasisSpec, alpha, k: int, x,
                  cfg: TruncationConfig = DEFAULT_CONFIG) -> ComplexApprox:
    """Largest absolute residual of the two D^k identities for ``(x-a)^alpha``.

    Both ``D^k (x-a)^alpha`` and ``D^k 1/(x-a)^alpha`` are evaluated through
    ``D^k g(x) = g(lam**k x) / (lam**C(k,2) x**k)``.
    """
    ctx = cfg.context
    if k == 0:
        return ComplexApprox.from_mp(0, cfg.precision_digits)
    alpha, x = to_mp(alpha, ctx), to_mp(x, ctx)
    lam = to_mp(spec.lam, ctx)
    pref = lam ** binom2(k) * x**k
    base_k = lb_value(spec, k, x)
    if base_k == 0:
        raise PoleError("(x - a)_lam^k vanishes at x")
    shifted = _lb_general_mp(spec, alpha, lam**k * x, cfg)
    raised = _lb_general_mp(spec, alpha + k, x, cfg)
    direct = abs(shifted / pref - raised / (pref * base_k))
    reciprocal = abs(1 / (pref * shifted) - base_k / (pref * raised))
    return ComplexApprox.from_mp(max(direct, reciprocal), cfg.precision_digits)


def useful_identities(spec: BasisSpec, i: int) -> tuple[bool, bool]:
    """``(lam**-i a - a)^i == (lam;lam)_i`` and ``(a - a)^-i == 1/(lam;lam)_i``."""
    lam, a = spec.lam, spec.a
    qi = q_pochhammer(lam, lam, i)
    first = lb_eval(spec, i, lam**-i * a) == qi
    second = qi != 0 and lb_eval(spec, -i, a) == 1 / qi
    return first, second


__all__ = [
    "BasisSpec",
    "Certificate",
    "lb_addition",
    "lb_addition_general",
    "lb_dk",
    "lb_dk_reciprocal",
    "lb_eval",
    "lb_expand",
    "lb_general",
    "lb_general_dk",
    "lb_ik",
    "lb_value",
    "sample_points",
    "useful_identities",
]
