"""Run the verification suites over several seeds and summarise pass counts.

    python scripts/verify_sweep.py --seeds 1 2 3 --trials 50
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from lamcalc.verify import run_verification


@dataclass(frozen=True)
class SweepConfig:
    seeds: tuple[int, ...] = (1, 2, 3)
    trials: int = 50
    group: str = "all"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, nargs="+", default=list(SweepConfig.seeds))
    p.add_argument("--trials", type=int, default=SweepConfig.trials)
    p.add_argument("--group", default=SweepConfig.group)
    args = p.parse_args()
    cfg = SweepConfig(tuple(args.seeds), args.trials, args.group)
    totals: dict[str, list[int]] = {}
    assertable: dict[str, bool] = {}
    for seed in cfg.seeds:
        start = time.perf_counter()
        report = run_verification(cfg.group, cfg.trials, seed)
        print(f"seed {seed}: {'ok' if report.ok else 'FAILED'} in {time.perf_counter() - start:.1f}s")
        for s in report.suites:
            t = totals.setdefault(s.name, [0, 0])
            t[0] += s.passes
            t[1] += s.trials
            assertable[s.name] = s.assertable
    print()
    for name, (passes, trials) in totals.items():
        tag = "" if assertable[name] else "  (reported only)"
        print(f"{name:<32}{passes:>6}/{trials:<6}{tag}")


if __name__ == "__main__":
    main()
