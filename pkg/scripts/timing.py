"""Wall-clock cost of the main routines as inputs grow.

Prints a table of (routine, size, seconds); sizes are morphism counts of the
input groupoid or of the tower's top level.
"""

import argparse
import random
import time

from stonegroupoid.constructions import normal_basis, reconstruct, skeletal_replacement
from stonegroupoid.fundamental import fundamental_group_check
from stonegroupoid.finite_groupoid import pair_times_group
from stonegroupoid.generators import cyclic_tower, random_groupoid
from stonegroupoid.groups import symmetric
from stonegroupoid.realization import pipeline


def clock(fn, *a):
    t0 = time.perf_counter()
    fn(*a)
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-depth", type=int, default=8)
    args = ap.parse_args()
    rows = []
    for depth in range(1, args.max_depth + 1):
        T = cyclic_tower(2, depth)
        rows.append(("pipeline cyclic-tower", T.top.num_morphisms, clock(pipeline, T)))
        rows.append(("reconstruct cyclic-tower", T.top.num_morphisms, clock(reconstruct, T)))
    for m in (16, 32, 64, 128):
        X = skeletal_replacement(random_groupoid(random.Random(m), m, 3)).skeleton
        rows.append(("normal basis random", X.num_morphisms, clock(normal_basis, X)))
    for k in (1, 2, 4, 6):
        G = pair_times_group(k, symmetric(4))
        rows.append(("fundamental group pair x S4", G.num_morphisms, clock(fundamental_group_check, G, 0)))
    width = max(len(r[0]) for r in rows)
    for name, size, secs in rows:
        print(f"{name:<{width}}  {size:>6}  {secs:8.4f}")


if __name__ == "__main__":
    main()
