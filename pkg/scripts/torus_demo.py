#!/usr/bin/env python3
"""Walk through the shipped torus model end to end.

Prints the genericity verdict, the vertex census by class and by orthant
count, the volume by all three methods, the Euler characteristic by both
methods, the skeleton summary, and two cross-sections.
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from orthotopes.cli import load_model
from orthotopes.lattice import (
    EulerMethod,
    VolumeMethod,
    check_generic,
    cross_section,
    euler,
    skeleton,
    vertex_census,
    volume,
)


def main() -> None:
    fixture = Path(__file__).resolve().parent.parent / "fixtures" / "torus.json"
    P = load_model(str(fixture))
    print(f"model: {fixture.name} ({len(P.cells)} cells, dim {P.dim})")
    print(f"generic: {check_generic(P).generic}")

    census = vertex_census(P)
    print("census by class:")
    for key, n in census.by_class.items():
        print(f"  {key:10s} {n:3d}")
    print(f"census by mu: {census.by_mu}")

    for method in VolumeMethod:
        print(f"volume[{method.value}] = {volume(P, method)}")
    for method in EulerMethod:
        print(f"euler[{method.value}] = {euler(P, method)}")

    graph = skeleton(P)
    degs = sorted(set(graph.degrees().values()))
    print(
        f"skeleton: {len(graph.nodes)} nodes, {len(graph.arcs)} arcs, "
        f"degrees {degs}, bipartite {graph.is_bipartite}"
    )

    for value in (Fraction(1, 2), Fraction(5, 2)):
        section = cross_section(P, {3: value})
        print(f"slice z={value}: {len(section.cells)} cells")


if __name__ == "__main__":
    main()
