"""Constructive approximation of degenerate unions by generic orthotopes.

``thicken`` replaces each closed cube face of an input set by a slightly
padded box.  The pads are chosen so that no two boxes share a supporting
hyperplane, which forces every tangent cone of the union to be floral, and
so that every pad stays below half of the requested bound, which keeps the
result within that bound of the input in L-infinity Hausdorff distance.

``random_generic`` builds unions of boxes whose supporting coordinates are
pairwise distinct along every axis, a condition that is preserved by the
union and intersection closure properties of generic orthotopes.  The
generator is a tiny explicit linear congruential recurrence so that runs
reproduce bit for bit from the seed alone.

``hausdorff_distance`` is exact: the distance between two closed box
unions with integer data at scale n is an integer multiple of 1/(2n), so
an integer binary search over dilation radii, with an exact coverage test
on the coordinate-refined grid, pins the value without any floating
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lattice import ConsistencyError, IntegralOrthotope, from_boxes

__all__ = [
    "PadSchedule",
    "distance_to_faces",
    "face_box",
    "hausdorff_distance",
    "random_generic",
    "thicken",
]

# cap on the dyadic refinement used for pad denominators
_MAX_SCALE_LOG = 32


@dataclass(frozen=True)
class PadSchedule:
    """Padding plan for a thickening: one positive rational pad per box
    side, all resulting supporting-hyperplane coordinates distinct per
    axis.  ``pads[i][j]`` is the (low, high) pad pair of face i on axis
    j + 1, in true units; ``scale`` clears all denominators."""

    scale: int
    pads: tuple

    def validate(self, dim: int, faces: Sequence) -> None:
        for j in range(dim):
            coords = []
            for (v, spec), sides in zip(faces, self.pads):
                lo, hi = _face_range(v, spec, j)
                coords.append(Fraction(lo) - sides[j][0])
                coords.append(Fraction(hi) + sides[j][1])
            if len(set(coords)) != len(coords):
                raise ConsistencyError(
                    f"pad schedule repeats a supporting coordinate on axis {j + 1}"
                )


def face_box(corner: Sequence[int], spec: Sequence) -> tuple:
    """Closed box ``corner + spec`` of a unit-cube face: spec entries are
    0 or 1 for a pinned side and None for a full extent.  Degenerate
    ranges are allowed; the box is a face, not a solid."""
    lo, hi = [], []
    for v, f in zip(corner, spec):
        if f is None:
            lo.append(int(v))
            hi.append(int(v) + 1)
        elif f in (0, 1):
            lo.append(int(v) + f)
            hi.append(int(v) + f)
        else:
            raise ValueError(f"face spec entry {f!r} is not 0, 1, or None")
    return tuple(lo), tuple(hi)


def _face_range(corner, spec, j):
    lo, hi = face_box(corner, spec)
    return lo[j], hi[j]


def _pad_schedule(dim: int, faces: Sequence, bound: Fraction) -> PadSchedule:
    """Assign pad ranks so that sides sharing an axis, a direction, and a
    base coordinate get distinct multiples of the grid unit.  Sides with
    different base coordinates stay separated because every pad is kept
    strictly below 1/2."""
    ranks = []
    counters: dict = {}
    top = 1
    for v, spec in faces:
        per_axis = []
        for j in range(dim):
            lo, hi = _face_range(v, spec, j)
            klo = counters[(j, -1, lo)] = counters.get((j, -1, lo), 0) + 1
            khi = counters[(j, +1, hi)] = counters.get((j, +1, hi), 0) + 1
            top = max(top, klo, khi)
            per_axis.append((klo, khi))
        ranks.append(per_axis)
    ceiling = min(bound / 2, Fraction(1, 2))
    scale = 1
    for _ in range(_MAX_SCALE_LOG + 1):
        if Fraction(top, scale) < ceiling:
            break
        scale *= 2
    else:
        raise ValueError(
            f"bound {bound} requires pads finer than 2**-{_MAX_SCALE_LOG}"
        )
    pads = tuple(
        tuple((Fraction(klo, scale), Fraction(khi, scale)) for klo, khi in per_axis)
        for per_axis in ranks
    )
    return PadSchedule(scale, pads)


def thicken(dim: int, faces: Sequence, bound) -> IntegralOrthotope:
    """Generic orthotope within ``bound`` of the union of the given cube
    faces.  Each face (corner, spec) grows into a box that contains it in
    its interior, with every pad positive and below ``bound / 2`` and all
    supporting hyperplanes distinct, so the output is generic and the
    Hausdorff distance to the input union stays below the bound."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    faces = [(tuple(int(c) for c in v), tuple(spec)) for v, spec in faces]
    if not faces:
        raise ValueError("need at least one face")
    for v, spec in faces:
        if len(v) != dim or len(spec) != dim:
            raise ValueError(f"face ({v}, {spec}) has wrong arity for dimension {dim}")
        face_box(v, spec)
    schedule = _pad_schedule(dim, faces, bound)
    schedule.validate(dim, faces)
    n = schedule.scale
    boxes = []
    for (v, spec), sides in zip(faces, schedule.pads):
        lo, hi = [], []
        for j in range(dim):
            a, b = _face_range(v, spec, j)
            lo.append(a * n - int(sides[j][0] * n))
            hi.append(b * n + int(sides[j][1] * n))
        boxes.append((tuple(lo), tuple(hi)))
    return from_boxes(dim, boxes, n)


class _Lcg:
    """Linear congruential stream: x <- (6364136223846793005 * x +
    1442695040888963407) mod 2**64, emitting the top 32 bits.  The
    constants are fixed so that identical seeds reproduce identical
    orthotopes across implementations."""

    def __init__(self, seed: int):
        self.state = seed & 0xFFFFFFFFFFFFFFFF

    def next_word(self) -> int:
        self.state = (
            self.state * 6364136223846793005 + 1442695040888963407
        ) & 0xFFFFFFFFFFFFFFFF
        return self.state >> 32

    def below(self, bound: int) -> int:
        return self.next_word() % bound


def random_generic(dim: int, count: int, extent: int, seed: int) -> IntegralOrthotope:
    """Union of ``count`` boxes in ``[0, extent]^dim`` whose supporting
    coordinates are pairwise distinct along every axis.  Deterministic in
    the seed; the distinctness forces the union to be generic."""
    if count < 1:
        raise ValueError("need at least one box")
    if extent + 1 < 2 * count:
        raise ValueError(
            f"extent {extent} cannot host {2 * count} distinct coordinates"
        )
    stream = _Lcg(seed)
    per_axis = []
    for _ in range(dim):
        chosen: list[int] = []
        seen = set()
        while len(chosen) < 2 * count:
            value = stream.below(extent + 1)
            if value not in seen:
                seen.add(value)
                chosen.append(value)
        per_axis.append(chosen)
    boxes = []
    for i in range(count):
        lo, hi = [], []
        for j in range(dim):
            a, b = per_axis[j][2 * i], per_axis[j][2 * i + 1]
            lo.append(min(a, b))
            hi.append(max(a, b))
        boxes.append((tuple(lo), tuple(hi)))
    return from_boxes(dim, boxes)


# ---------------------------------------------------------------------------
# exact L-infinity Hausdorff distance


def hausdorff_distance(P: IntegralOrthotope, Q: IntegralOrthotope) -> Fraction:
    """Exact L-infinity Hausdorff distance between the true point sets."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    if P.is_empty or Q.is_empty:
        raise ValueError("Hausdorff distance needs two nonempty sets")
    common = math.lcm(P.scale, Q.scale)
    a = _scaled_boxes(P, common // P.scale)
    b = _scaled_boxes(Q, common // Q.scale)
    k = max(_directed_halves(P.dim, a, b), _directed_halves(P.dim, b, a))
    return Fraction(k, 2 * common)


def distance_to_faces(P: IntegralOrthotope, faces: Sequence) -> Fraction:
    """Exact Hausdorff distance between ``P`` and a closed union of cube
    faces given as (corner, spec) pairs at denominator 1.  Faces may be
    lower dimensional, which an orthotope cannot represent directly."""
    if P.is_empty or not faces:
        raise ValueError("Hausdorff distance needs two nonempty sets")
    n = P.scale
    face_boxes = []
    for v, spec in faces:
        lo, hi = face_box(v, spec)
        face_boxes.append(
            (tuple(c * n for c in lo), tuple(c * n for c in hi))
        )
    a = list(P.boxes)
    k = max(
        _directed_halves(P.dim, a, face_boxes),
        _directed_halves(P.dim, face_boxes, a),
    )
    return Fraction(k, 2 * n)


def _scaled_boxes(P: IntegralOrthotope, factor: int) -> list:
    return [
        (tuple(c * factor for c in lo), tuple(c * factor for c in hi))
        for lo, hi in P.boxes
    ]


def _directed_halves(dim: int, source: list, target: list) -> int:
    """Smallest k such that ``source`` lies inside ``target`` dilated by
    k/2, both unions taken closed.  Distances between integer box unions
    are half-integral, so the search over integers is exact."""
    doubled_src = [_double(b) for b in source]
    doubled_tgt = [_double(b) for b in target]
    if _covered(dim, doubled_src, doubled_tgt, 0):
        return 0
    lo_all = [min(b[0][j] for b in doubled_src + doubled_tgt) for j in range(dim)]
    hi_all = [max(b[1][j] for b in doubled_src + doubled_tgt) for j in range(dim)]
    hi = max(h - l for l, h in zip(lo_all, hi_all))
    if not _covered(dim, doubled_src, doubled_tgt, hi):
        raise ConsistencyError("dilation by the full span failed to cover")
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _covered(dim, doubled_src, doubled_tgt, mid):
            hi = mid
        else:
            lo = mid
    return hi


def _double(box):
    lo, hi = box
    return tuple(2 * c for c in lo), tuple(2 * c for c in hi)


def _covered(dim: int, source: list, target: list, radius: int) -> bool:
    """Whether every point of the closed union ``source`` lies in the
    closed union ``target`` inflated by ``radius``.  Each source box is
    checked against the inflated boxes meeting it, on the interleaved grid
    of points and open intervals spanned by their coordinates clipped to
    the box; on that grid every minimal piece is entirely in or out, so
    slab bookkeeping is exact even for degenerate boxes."""
    grown = [
        (tuple(c - radius for c in lo), tuple(c + radius for c in hi))
        for lo, hi in target
    ]
    for lo, hi in source:
        if any(
            all(blo[j] <= lo[j] and hi[j] <= bhi[j] for j in range(dim))
            for blo, bhi in grown
        ):
            continue
        near = [
            (blo, bhi)
            for blo, bhi in grown
            if all(blo[j] <= hi[j] and lo[j] <= bhi[j] for j in range(dim))
        ]
        if not _box_covered(dim, lo, hi, near):
            return False
    return True


def _box_covered(dim: int, lo: tuple, hi: tuple, cover: list) -> bool:
    if not cover:
        return False
    axes = []
    for j in range(dim):
        vals = {lo[j], hi[j]}
        for blo, bhi in cover:
            vals.add(min(max(blo[j], lo[j]), hi[j]))
            vals.add(min(max(bhi[j], lo[j]), hi[j]))
        axes.append(np.array(sorted(vals), dtype=np.int64))
    occ = np.zeros(tuple(2 * len(c) - 1 for c in axes), dtype=bool)
    for blo, bhi in cover:
        sel = tuple(
            slice(
                2 * int(np.searchsorted(axes[j], max(blo[j], lo[j]))),
                2 * int(np.searchsorted(axes[j], min(bhi[j], hi[j]))) + 1,
            )
            for j in range(dim)
        )
        occ[sel] = True
    return bool(occ.all())
