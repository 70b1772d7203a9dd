"""Hypothesis and conclusion verdicts for every curated functor.

    python3 scripts/keylemma_table.py [--width 4] [--fiber-mode strict]
"""

import argparse
import time

from dkloc.corpus import functors
from dkloc.keylemma import check_conclusion, check_hypothesis, groupoid_observation_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--width", type=int, default=4)
    ap.add_argument("--max-dim", type=int, default=2)
    ap.add_argument("--fiber-mode", choices=["strict", "essential"], default="strict")
    args = ap.parse_args()
    print(f"{'functor':<22} {'hypothesis':<13} {'conclusion':<13} {'groupoid':<13} seconds")
    for name, F in functors().items():
        t = time.perf_counter()
        h = check_hypothesis(F, args.max_dim, 1, fiber_mode=args.fiber_mode).hypothesis
        c = check_conclusion(F, args.width, 2, 1).summary
        g = groupoid_observation_check(F, 2)
        dt = time.perf_counter() - t
        print(f"{name:<22} {h.status.value:<13} {c.status.value:<13} {g.status.value:<13} {dt:.1f}")
        for v in (h, c):
            if not v.passed and v.detail:
                print(f"    {v.detail}")


if __name__ == "__main__":
    main()
