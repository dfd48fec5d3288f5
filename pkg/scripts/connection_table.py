"""Tabulate exact vs closed-form connection coefficients for every family.

    python scripts/connection_table.py --n-max 4 --samples 5 --seed 0
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from lamcalc.algebra import format_rational
from lamcalc.taylor import FAMILIES, compare_connection, printed_two_point


@dataclass(frozen=True)
class TableConfig:
    n_max: int = 4
    samples: int = 5
    seed: int = 0


def _rational(rng: random.Random, exclude=(0,)) -> Fraction:
    while True:
        r = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if r not in exclude:
            return r


def run(cfg: TableConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    rows = []
    for family in FAMILIES:
        for _ in range(cfg.samples):
            a, lam = _rational(rng), _rational(rng, exclude=(0, 1, -1))
            b = _rational(rng, exclude=()) if family == "twopoint" else None
            for n in range(cfg.n_max + 1):
                rep = compare_connection(family, n, a, lam, b)
                row = {"family": family, "n": n, "a": a, "lambda": lam, "b": b,
                       "agree": rep.all_agree, "reconstructs": rep.reconstructs,
                       "first_mismatch": next((k for k, ok in enumerate(rep.agree) if not ok), None)}
                if family == "twopoint":
                    row["agree_unsigned"] = list(rep.truth.coeffs) == printed_two_point(n, a, b, lam, sign=False)
                rows.append(row)
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=TableConfig.n_max)
    p.add_argument("--samples", type=int, default=TableConfig.samples)
    p.add_argument("--seed", type=int, default=TableConfig.seed)
    args = p.parse_args()
    rows = run(TableConfig(args.n_max, args.samples, args.seed))
    print(f"{'family':<11}{'cases':>6}{'printed ok':>12}{'reconstructs':>14}{'unsigned ok':>13}")
    for family in FAMILIES:
        sel = [r for r in rows if r["family"] == family]
        unsigned = sum(r.get("agree_unsigned", False) for r in sel) if family == "twopoint" else "-"
        print(f"{family:<11}{len(sel):>6}{sum(r['agree'] for r in sel):>12}"
              f"{sum(r['reconstructs'] for r in sel):>14}{unsigned!s:>13}")
    bad = [r for r in rows if not r["agree"]][:6]
    if bad:
        print("\nfirst disagreements:")
        for r in bad:
            extra = f" b={format_rational(r['b'])}" if r["b"] is not None else ""
            print(f"  {r['family']} n={r['n']} a={format_rational(r['a'])} "
                  f"lambda={format_rational(r['lambda'])}{extra}: first bad k={r['first_mismatch']}")


if __name__ == "__main__":
    main()
