#!/usr/bin/env python3
"""Render a small gallery of orthogons to SVG files.

Outputs a unit square, an L-shape, a staircase union, a seeded random
orthogon, and a cross-section of the torus model.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from orthotopes.cli import load_model, render2d
from orthotopes.genericize import random_generic, thicken
from orthotopes.lattice import cross_section, from_boxes, from_cells


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="gallery", help="output directory")
    args = parser.parse_args()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    fixture = Path(__file__).resolve().parent.parent / "fixtures" / "torus.json"
    gallery = {
        "square": from_cells(2, [(0, 0)]),
        "ell": from_cells(2, [(0, 0), (1, 0), (0, 1)]),
        "staircase": from_boxes(2, [((0, 0), (2, 2)), ((1, 1), (3, 3))]),
        "random": random_generic(2, 10, 48, seed=7),
        "torus_slice": cross_section(load_model(str(fixture)), {3: Fraction(1, 2)}),
        "thickened_points": thicken(
            2,
            [((x, y), (0, 0)) for x, y in ((0, 0), (2, 1), (1, 3))],
            Fraction(1, 2),
        ),
    }
    for name, model in gallery.items():
        path = outdir / f"{name}.svg"
        path.write_text(render2d(model), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
