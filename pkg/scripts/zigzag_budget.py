"""Cost of the hammock/Ho comparison along the seeded RelCat stream.

Prints, per draw, the zigzag count at the width cap and the wall time of
computing hom-set components for every object pair.  Draws over the budget
are reported but not run.

    python3 scripts/zigzag_budget.py [--draws 60] [--width 5] [--budget 5000]
"""

import argparse
import random
import time

from dkloc.generators import random_relcat
from dkloc.hammock import ho_localization, mapping_space_components, zigzag_count


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--draws", type=int, default=60)
    ap.add_argument("--width", type=int, default=5)
    ap.add_argument("--budget", type=int, default=5000)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    total, kept = 0.0, 0
    print(f"{'draw':>4} {'objs':>4} {'mors':>4} {'marked':>6} {'zigzags':>8} {'seconds':>8}")
    for i in range(args.draws):
        R = random_relcat(rng)
        n = zigzag_count(R, args.width)
        row = f"{i:>4} {len(R.base.objects):>4} {len(R.base.morphisms):>4} {len(R.weq):>6} {n:>8}"
        if n > args.budget:
            print(row, "skipped")
            continue
        t = time.perf_counter()
        ho_localization(R, args.width)
        for x in R.base.objects:
            for y in R.base.objects:
                mapping_space_components(R, x, y, args.width)
        dt = time.perf_counter() - t
        total += dt
        kept += 1
        print(row, f"{dt:8.2f}")
    print(f"{kept} draws within budget, {total:.1f}s")


if __name__ == "__main__":
    main()
