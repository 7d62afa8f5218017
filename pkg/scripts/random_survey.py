#!/usr/bin/env python3
"""Survey random generic orthotopes and tabulate the global laws.

For each seed: volume by three methods, Euler characteristic by two, the
census law by_mu[1] - by_mu[3] = 4 * chi in 2D, and the alternating law
n1 - n3 - n5 + n7 = 8 * chi in 3D.  Any disagreement is reported loudly;
the summary line counts clean instances.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from orthotopes.genericize import random_generic
from orthotopes.lattice import (
    EulerMethod,
    VolumeMethod,
    euler,
    vertex_census,
    volume,
)


def survey_one(dim: int, count: int, extent: int, seed: int) -> list:
    P = random_generic(dim, count, extent, seed)
    failures = []
    vols = {m.value: volume(P, m) for m in VolumeMethod}
    if len(set(vols.values())) != 1:
        failures.append(f"volumes disagree: {vols}")
    chis = {m.value: euler(P, m) for m in EulerMethod}
    if len(set(chis.values())) != 1:
        failures.append(f"euler disagrees: {chis}")
    census = vertex_census(P).by_mu
    chi = next(iter(chis.values()))
    if dim == 2:
        lhs = census.get(1, 0) - census.get(3, 0)
        if lhs != 4 * chi:
            failures.append(f"2d law: n1-n3={lhs}, 4chi={4 * chi}")
    if dim == 3:
        lhs = (
            census.get(1, 0)
            - census.get(3, 0)
            - census.get(5, 0)
            + census.get(7, 0)
        )
        if lhs != 8 * chi:
            failures.append(f"3d law: alt={lhs}, 8chi={8 * chi}")
    return failures


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--extent", type=int, default=60)
    parser.add_argument("--seeds", type=int, default=50)
    args = parser.parse_args()

    clean = 0
    for seed in range(args.seeds):
        failures = survey_one(args.dim, args.count, args.extent, seed)
        if failures:
            for f in failures:
                print(f"seed {seed}: {f}")
        else:
            clean += 1
    print(
        f"{clean}/{args.seeds} clean instances "
        f"(dim {args.dim}, {args.count} boxes, extent {args.extent})"
    )
    return 0 if clean == args.seeds else 1


if __name__ == "__main__":
    sys.exit(main())
