"""Functional-equation residuals of the infinite-product solutions across precisions.

    python scripts/numeric_residuals.py --precisions 30 50 80
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from lamcalc.algebra import to_mp
from lamcalc.errors import PoleError
from lamcalc.qsymbols import TruncationConfig, solution_E, solution_e


@dataclass(frozen=True)
class ResidualConfig:
    precisions: tuple[int, ...] = (30, 50, 80)
    lambdas: tuple[Fraction, ...] = (Fraction(3, 2), Fraction(2), Fraction(5))
    a_values: tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1), Fraction(-3, 4))
    x_values: tuple[Fraction, ...] = field(default=(Fraction(1), Fraction(5), Fraction(-7, 3)))


def residuals(cfg: TruncationConfig, a, lam, x):
    ctx = cfg.context
    xv, lv, av = to_mp(x, ctx), to_mp(lam, ctx), to_mp(a, ctx)
    E = lambda y: solution_E(a, lam, y, cfg).value  # noqa: E731
    r1 = abs(xv * E(lv * xv) - xv * E(xv) - av * E(lv * xv))
    try:
        e = lambda y: solution_e(a, lam, y, cfg).value  # noqa: E731
        r2 = abs(av * e(xv) - xv * e(xv) + xv * e(lv * xv))
    except PoleError:
        r2 = None
    return r1, r2


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--precisions", type=int, nargs="+", default=list(ResidualConfig.precisions))
    args = p.parse_args()
    cfg = ResidualConfig(precisions=tuple(args.precisions))
    print(f"{'digits':>6} {'tol':>8} {'max func1':>12} {'max func2':>12} {'poles':>6}")
    for prec in cfg.precisions:
        tcfg = TruncationConfig(precision_digits=prec, tol=f"1e-{prec - 20}")
        worst1 = worst2 = 0
        poles = 0
        for lam in cfg.lambdas:
            for a in cfg.a_values:
                for x in cfg.x_values:
                    r1, r2 = residuals(tcfg, a, lam, x)
                    worst1 = max(worst1, r1)
                    if r2 is None:
                        poles += 1
                    else:
                        worst2 = max(worst2, r2)
        ctx = tcfg.context
        print(f"{prec:>6} {'1e-' + str(prec - 20):>8} {ctx.nstr(worst1, 3):>12} {ctx.nstr(worst2, 3):>12} {poles:>6}")


if __name__ == "__main__":
    main()
