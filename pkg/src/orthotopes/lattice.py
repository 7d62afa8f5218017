"""Integral orthogonal polytopes and their local and global invariants.

An orthotope here is a finite union of unit cells of the integer lattice,
together with a positive denominator ``scale`` so that rational inputs can
be handled exactly: the true point set is ``(1/scale)`` times the stored
cell union.  Every question about such a set reduces to classifying the
tangent cone at half-lattice points, which is an orthant set in the sense
of :mod:`orthotopes.arrangement`.  The classification scan runs on a
coordinate-compressed grid: along each axis only the box edge coordinates
matter, and the slabs between consecutive edges are homogeneous, so one
representative layer per slab suffices.  This keeps the scan polynomial in
the number of boxes rather than in the geometric extent.

All arithmetic is exact: coordinates are integers or half-integers, and
volumes are :class:`fractions.Fraction` values.  No floating point is used
anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum, unique
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import ndimage

from .arrangement import DEGENERATE, Cylinder, OrthantSet, SetOp, recognize
from .spd import SignedSpd, bouquet, canonical_key

__all__ = [
    "ConsistencyError",
    "EulerMethod",
    "Face",
    "FacePoset",
    "Genericity",
    "IntegralOrthotope",
    "NotGenericError",
    "PointClass",
    "SkeletonGraph",
    "VertexCensus",
    "VolumeMethod",
    "check_generic",
    "classify_point",
    "cross_section",
    "euler",
    "face_poset",
    "from_boxes",
    "from_cells",
    "set_ops",
    "sigma_sum",
    "skeleton",
    "vertex_census",
    "vertices",
    "volume",
]

# Materializing more cells than this almost certainly indicates a caller
# that should be working with boxes instead.
_CELL_LIMIT = 5_000_000


class NotGenericError(ValueError):
    """Raised when an operation that requires genericity meets a degenerate
    tangent cone.  ``witness`` is a point at which recognition fails."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not a generic orthotope; degenerate tangent cone at {witness}")


class ConsistencyError(RuntimeError):
    """An internal cross-check failed.  This signals a bug in the library,
    not a problem with the input."""


@dataclass(frozen=True)
class Genericity:
    """Outcome of a genericity check.  Truthy iff generic."""

    generic: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.generic


@dataclass(frozen=True)
class PointClass:
    """Local data of one half-lattice point: its tangent cone, which axes
    the cone depends on, the genericity degree (``None`` for points outside
    the polytope, whose cone is empty), and the recognition result."""

    point: tuple
    cone: OrthantSet
    essential_axes: tuple[int, ...]
    degree: int | None
    floral: object


@dataclass(frozen=True)
class VertexCensus:
    by_class: Mapping[str, int]
    by_mu: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.by_class.values())


@dataclass(frozen=True)
class Face:
    """Closure of one genericity region.  ``cells`` are min-corners of the
    face's unit cells written in the free-axis coordinates only; ``fixed``
    lists the (axis, coordinate) pairs of the remaining axes."""

    dim: int
    free_axes: tuple[int, ...]
    fixed: tuple[tuple[int, int], ...]
    cells: frozenset
    representative: PointClass


@dataclass(frozen=True)
class FacePoset:
    faces: tuple[Face, ...]
    incidence: frozenset

    def f_vector(self) -> tuple[int, ...]:
        top = max((f.dim for f in self.faces), default=-1)
        counts = [0] * (top + 1)
        for f in self.faces:
            counts[f.dim] += 1
        return tuple(counts)

    def faces_of_dim(self, k: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == k)


@dataclass(frozen=True)
class SkeletonGraph:
    """Vertices with their tau signs and the axis-labeled arcs between
    them.  For a generic orthotope every node meets exactly ``dim`` arcs
    and the tau signs form a proper 2-coloring."""

    nodes: tuple
    arcs: tuple

    @property
    def is_bipartite(self) -> bool:
        sign = dict(self.nodes)
        return all(sign[a] != sign[b] for a, b, _axis in self.arcs)

    def degrees(self) -> dict:
        deg = {p: 0 for p, _s in self.nodes}
        for a, b, _axis in self.arcs:
            deg[a] += 1
            deg[b] += 1
        return deg


@unique
class VolumeMethod(Enum):
    MU_SUM = "musum"
    DETERMINANTAL = "determinantal"
    VOXEL_COUNT = "voxelcount"


@unique
class EulerMethod(Enum):
    SIGMA_SUM = "sigmasum"
    CUBICAL_COMPLEX = "cubicalcomplex"


class IntegralOrthotope:
    """A union of unit lattice cells in dimension ``dim`` at denominator
    ``scale``.  The set is stored as a list of integer boxes; the explicit
    cell set is materialized lazily because thickened instances can cover
    millions of cells while all invariants are computable from the boxes.
    Instances are immutable; equality compares (dim, scale, cell set).
    """

    __slots__ = ("dim", "scale", "_boxes", "_cells")

    def __init__(self, dim: int, scale: int, boxes, cells):
        self.dim = dim
        self.scale = scale
        self._boxes = boxes
        self._cells = cells

    @property
    def boxes(self) -> tuple:
        if self._boxes is not None:
            return self._boxes
        return tuple(
            (cell, tuple(c + 1 for c in cell)) for cell in sorted(self._cells)
        )

    @property
    def cells(self) -> frozenset:
        if self._cells is None:
            total = sum(
                reduce(lambda a, b: a * b, (h - l for l, h in zip(lo, hi)), 1)
                for lo, hi in self._boxes
            )
            if total > _CELL_LIMIT:
                raise ConsistencyError(
                    f"refusing to materialize about {total} cells; "
                    "use the box form for instances of this size"
                )
            cells = set()
            for lo, hi in self._boxes:
                cells.update(
                    itertools.product(*(range(l, h) for l, h in zip(lo, hi)))
                )
            self._cells = frozenset(cells)
        return self._cells

    @property
    def is_empty(self) -> bool:
        if self._boxes is not None:
            return not self._boxes
        return not self._cells

    def bounding_box(self):
        """(lo, hi) integer corner pair of the smallest enclosing box, or
        ``None`` when empty."""
        if self.is_empty:
            return None
        if self._boxes is not None:
            lo = tuple(min(b[0][j] for b in self._boxes) for j in range(self.dim))
            hi = tuple(max(b[1][j] for b in self._boxes) for j in range(self.dim))
        else:
            lo = tuple(min(c[j] for c in self._cells) for j in range(self.dim))
            hi = tuple(max(c[j] for c in self._cells) + 1 for j in range(self.dim))
        return lo, hi

    def cell_count(self) -> int:
        """Number of unit cells, computed from the boxes without
        materializing the cell set."""
        if self._cells is not None:
            return len(self._cells)
        scan = _Scan(self)
        return scan.cell_total()

    def __eq__(self, other):
        if not isinstance(other, IntegralOrthotope):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.scale == other.scale
            and self.cells == other.cells
        )

    def __hash__(self):
        return hash((self.dim, self.scale, self.cells))

    def __repr__(self):
        if self._cells is not None:
            body = f"cells={len(self._cells)}"
        else:
            body = f"boxes={len(self._boxes)}"
        return f"IntegralOrthotope(dim={self.dim}, scale={self.scale}, {body})"


def _validate_header(dim, scale):
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"dimension must be a positive integer, got {dim!r}")
    if not isinstance(scale, int) or scale < 1:
        raise ValueError(f"scale must be a positive integer, got {scale!r}")


def from_boxes(dim: int, boxes: Iterable, scale: int = 1) -> IntegralOrthotope:
    """Build the union of axis-aligned integer boxes ``[lo, hi)`` given as
    (lo, hi) corner pairs.  Every box must be proper (lo < hi on each
    axis); overlaps and duplicates are allowed and merge silently.  An
    empty list yields the empty orthotope."""
    _validate_header(dim, scale)
    clean = []
    for k, (lo, hi) in enumerate(boxes):
        lo = tuple(int(c) for c in lo)
        hi = tuple(int(c) for c in hi)
        if len(lo) != dim or len(hi) != dim:
            raise ValueError(f"box {k} has wrong arity for dimension {dim}")
        if any(l >= h for l, h in zip(lo, hi)):
            raise ValueError(f"box {k} is degenerate: {lo} .. {hi}")
        clean.append((lo, hi))
    clean = tuple(sorted(set(clean)))
    return IntegralOrthotope(dim, scale, clean, frozenset() if not clean else None)


def from_cells(dim: int, cells: Iterable, scale: int = 1) -> IntegralOrthotope:
    """Build an orthotope directly from unit cell min-corners."""
    _validate_header(dim, scale)
    cleaned = set()
    for cell in cells:
        cell = tuple(int(c) for c in cell)
        if len(cell) != dim:
            raise ValueError(f"cell {cell} has wrong arity for dimension {dim}")
        cleaned.add(cell)
    return IntegralOrthotope(dim, scale, None, frozenset(cleaned))


def _half(value) -> Fraction:
    """Normalize a coordinate to an int or a half-integer Fraction."""
    f = Fraction(value)
    if f.denominator == 1:
        return int(f)
    if f.denominator == 2:
        return f
    raise ValueError(f"coordinate {value!r} is not a multiple of 1/2")


# ---------------------------------------------------------------------------
# local profiles of orthant-set masks


@dataclass(frozen=True)
class _MaskProfile:
    mu_d: int
    tau_d: int
    essential: tuple[int, ...]
    degree: int | None
    floral: object
    degenerate: bool
    is_vertex: bool
    class_key: str | None
    sigma: int


@lru_cache(maxsize=1 << 20)
def _mask_profile(dim: int, mask: int) -> _MaskProfile:
    oset = OrthantSet(dim, mask)
    floral = recognize(oset)
    degenerate = floral is DEGENERATE or (
        isinstance(floral, Cylinder) and floral.diagram is DEGENERATE
    )
    if mask == 0:
        essential: tuple[int, ...] = ()
        degree = None
    else:
        essential = tuple(sorted(oset.essential_axes()))
        degree = dim - len(essential)
    mu_d, tau_d = _mask_counts(dim, mask)
    is_vertex = degree == 0 and not degenerate
    class_key = None
    sigma = 0
    if is_vertex:
        assert isinstance(floral, SignedSpd)
        class_key = canonical_key(floral.shape)
        sigma = bouquet(floral.shape).sign
    return _MaskProfile(
        mu_d, tau_d, essential, degree, floral, degenerate, is_vertex, class_key, sigma
    )


def _mask_counts(dim: int, mask: int) -> tuple[int, int]:
    mu = 0
    tau = 0
    m = mask
    while m:
        k = (m & -m).bit_length() - 1
        mu += 1
        tau += -1 if (dim - k.bit_count()) % 2 else 1
        m &= m - 1
    return mu, tau


def _mask_dtype(dim: int):
    if dim <= 3:
        return np.uint8
    if dim <= 4:
        return np.uint16
    if dim <= 5:
        return np.uint32
    if dim <= 6:
        return np.uint64
    return object


# ---------------------------------------------------------------------------
# the classification scan


class _Scan:
    """Tangent-cone classification over the doubled grid of a compressed
    cell decomposition.

    ``edges[j]`` holds the strictly increasing coordinates at which the
    cell structure can change along axis j, inflated by one empty unit on
    both ends so that boundary points see the exterior.  Positions along
    an axis are indexed by r = 0 .. 2*(len(edges)-1) - 2; even r is the
    interior of slab r//2 and odd r is the edge shared by slabs r//2 and
    r//2 + 1.  The mask array assigns to every position tuple the bit set
    of occupied orthants around the corresponding point."""

    def __init__(self, P: IntegralOrthotope, compress: bool = True):
        self.dim = P.dim
        self.scale = P.scale
        self.empty = P.is_empty
        if self.empty:
            return
        boxes = P.boxes
        d = P.dim
        self.edges = []
        for j in range(d):
            coords = {b[0][j] for b in boxes} | {b[1][j] for b in boxes}
            if compress:
                base = sorted(coords)
            else:
                base = list(range(min(coords), max(coords) + 1))
            self.edges.append(
                np.array([base[0] - 1] + base + [base[-1] + 1], dtype=np.int64)
            )
        occ = np.zeros(tuple(len(e) - 1 for e in self.edges), dtype=bool)
        for lo, hi in boxes:
            sel = tuple(
                slice(
                    int(np.searchsorted(self.edges[j], lo[j])),
                    int(np.searchsorted(self.edges[j], hi[j])),
                )
                for j in range(d)
            )
            occ[sel] = True
        self.occ = occ
        self.masks = self._build_masks(occ)
        flat = self.masks.reshape(-1)
        if flat.dtype == object:
            seen: dict[int, int] = {}
            inverse = np.empty(flat.shape[0], dtype=np.int64)
            uniq_list: list[int] = []
            for i, v in enumerate(flat.tolist()):
                t = seen.get(v)
                if t is None:
                    t = seen[v] = len(uniq_list)
                    uniq_list.append(int(v))
                inverse[i] = t
            self.unique_masks = uniq_list
        else:
            uniq, inverse = np.unique(flat, return_inverse=True)
            self.unique_masks = [int(u) for u in uniq]
        self.inverse = inverse.reshape(self.masks.shape)
        self.profiles = {m: _mask_profile(self.dim, m) for m in self.unique_masks}

    def _build_masks(self, occ):
        d = self.dim
        sizes = tuple(2 * (len(e) - 1) - 1 for e in self.edges)
        lo_sel = [np.arange(s) // 2 for s in sizes]
        hi_sel = [(np.arange(s) + 1) // 2 for s in sizes]
        dtype = _mask_dtype(d)
        if dtype is object:
            masks = np.zeros(sizes, dtype=object)
            source = occ.astype(object)
        else:
            masks = np.zeros(sizes, dtype=dtype)
            source = occ.astype(dtype)
        for s in range(1 << d):
            sel = tuple(
                hi_sel[j] if (s >> j) & 1 else lo_sel[j] for j in range(d)
            )
            contrib = source[np.ix_(*sel)]
            if dtype is object:
                masks = masks + contrib * (1 << s)
            else:
                masks |= contrib << dtype(s)
        return masks

    # position helpers ------------------------------------------------

    def coordinate(self, j: int, r: int):
        """Working-scale coordinate of position r on axis j; edges give
        integers, slab interiors give the first half-integer inside."""
        if r % 2 == 1:
            return int(self.edges[j][(r + 1) // 2])
        return Fraction(2 * int(self.edges[j][r // 2]) + 1, 2)

    def point_of(self, idx: Sequence[int]) -> tuple:
        return tuple(self.coordinate(j, int(r)) for j, r in enumerate(idx))

    def widths(self, j: int) -> np.ndarray:
        return np.diff(self.edges[j])

    # derived summaries ------------------------------------------------

    def cell_total(self) -> int:
        if self.empty:
            return 0
        total = self.occ.astype(np.int64)
        for j in reversed(range(self.dim)):
            total = np.tensordot(total, self.widths(j), axes=([total.ndim - 1], [0]))
        return int(total)

    def degenerate_witness(self):
        """Lexicographically first scan point whose cone fails recognition,
        or ``None``.  Slab interiors stand for runs of identical layers, so
        the reported point is the first half-integer of its run."""
        if self.empty:
            return None
        bad = [
            i for i, m in enumerate(self.unique_masks) if self.profiles[m].degenerate
        ]
        if not bad:
            return None
        hit = np.isin(self.inverse, bad)
        flat = int(np.argmax(hit.reshape(-1)))
        if not hit.reshape(-1)[flat]:
            return None
        idx = np.unravel_index(flat, self.masks.shape)
        return self.point_of(idx)

    def vertex_entries(self):
        """(point, mask, profile) triples for all degree-0 points, in
        lexicographic point order.  Degenerate degree-0 points are included
        so callers can report them."""
        if self.empty:
            return []
        sub = self.inverse[(slice(1, None, 2),) * self.dim]
        keep = [
            i
            for i, m in enumerate(self.unique_masks)
            if self.profiles[m].degree == 0
        ]
        out = []
        if not keep:
            return out
        hit = np.isin(sub, keep)
        for idx in np.argwhere(hit):
            mask = self.unique_masks[int(sub[tuple(idx)])]
            point = tuple(int(self.edges[j][int(t) + 1]) for j, t in enumerate(idx))
            out.append((point, mask, self.profiles[mask]))
        return out


def _scan_for(P: IntegralOrthotope, compress: bool = True) -> _Scan:
    return _Scan(P, compress=compress)


# ---------------------------------------------------------------------------
# public operations


def classify_point(P: IntegralOrthotope, point: Sequence) -> PointClass:
    """Tangent cone of ``P`` at a half-lattice point, as the orthant set of
    directions whose adjacent half-cell lies inside the cell union."""
    coords = tuple(_half(c) for c in point)
    if len(coords) != P.dim:
        raise ValueError(f"point arity {len(coords)} does not match dimension {P.dim}")
    cells = P._cells if P._cells is not None else None
    boxes = P.boxes if cells is None else None
    mask = 0
    for s in range(1 << P.dim):
        cell = []
        for j, c in enumerate(coords):
            if isinstance(c, int):
                cell.append(c if (s >> j) & 1 else c - 1)
            else:
                cell.append((2 * c.numerator // c.denominator - 1) // 2)
        cell = tuple(cell)
        if cells is not None:
            inside = cell in cells
        else:
            inside = any(
                all(lo[j] <= cell[j] < hi[j] for j in range(P.dim))
                for lo, hi in boxes
            )
        if inside:
            mask |= 1 << s
    prof = _mask_profile(P.dim, mask)
    return PointClass(coords, OrthantSet(P.dim, mask), prof.essential, prof.degree, prof.floral)


def check_generic(P: IntegralOrthotope, *, compress: bool = True) -> Genericity:
    """Decide whether every tangent cone of ``P`` is a floral arrangement.
    The ``compress`` flag selects between the slab-compressed scan and a
    full-resolution scan; both give the same verdict and exist so the two
    can cross-check each other."""
    scan = _scan_for(P, compress=compress)
    if scan.empty:
        return Genericity(True)
    witness = scan.degenerate_witness()
    if witness is None:
        return Genericity(True)
    return Genericity(False, witness)


def _require_generic(P: IntegralOrthotope) -> _Scan:
    scan = _scan_for(P)
    if not scan.empty:
        witness = scan.degenerate_witness()
        if witness is not None:
            raise NotGenericError(witness)
    return scan


def vertices(P: IntegralOrthotope) -> list:
    """All degree-0 half-lattice points with their recognition results.
    Points whose cone fails recognition are reported with ``floral`` set
    to the degenerate marker rather than suppressed."""
    scan = _scan_for(P)
    out = []
    if scan.empty:
        return out
    full_axes = tuple(range(1, P.dim + 1))
    for point, mask, prof in scan.vertex_entries():
        cone = OrthantSet(P.dim, mask)
        out.append(PointClass(point, cone, full_axes, 0, prof.floral))
    return out


def vertex_census(P: IntegralOrthotope) -> VertexCensus:
    scan = _require_generic(P)
    by_class: dict[str, int] = {}
    by_mu: dict[int, int] = {}
    if not scan.empty:
        for _point, _mask, prof in scan.vertex_entries():
            assert prof.is_vertex
            by_class[prof.class_key] = by_class.get(prof.class_key, 0) + 1
            by_mu[prof.mu_d] = by_mu.get(prof.mu_d, 0) + 1
    return VertexCensus(dict(sorted(by_class.items())), dict(sorted(by_mu.items())))


def sigma_sum(P: IntegralOrthotope) -> int:
    """Sum of bouquet signs over all vertices.  Divisible by 2^dim for
    every generic orthotope; the quotient is the Euler characteristic."""
    scan = _require_generic(P)
    if scan.empty:
        return 0
    return sum(prof.sigma for _p, _m, prof in scan.vertex_entries())


def volume(P: IntegralOrthotope, method: VolumeMethod = VolumeMethod.MU_SUM) -> Fraction:
    """Exact volume of the true point set ``(1/scale) * cells``."""
    if not isinstance(method, VolumeMethod):
        raise ValueError(f"unknown volume method {method!r}")
    n = P.scale
    d = P.dim
    if P.is_empty:
        return Fraction(0)
    if method is VolumeMethod.VOXEL_COUNT:
        scan = _scan_for(P)
        return Fraction(scan.cell_total(), n**d)
    if method is VolumeMethod.DETERMINANTAL:
        scan = _require_generic(P)
        total = Fraction(0)
        for point, _mask, prof in scan.vertex_entries():
            term = Fraction(prof.tau_d)
            for c in point:
                term *= Fraction(c, n)
            total += term
        return total if d % 2 == 0 else -total
    scan = _require_generic(P)
    pop = _popcounts(scan.masks)
    acc = pop
    for j in reversed(range(d)):
        w = scan.widths(j).astype(np.int64)
        size = 2 * len(w) - 1
        weights = np.zeros(size, dtype=np.int64)
        weights[0::2] = w - 1
        weights[1::2] = 1
        acc = np.tensordot(acc, weights, axes=([acc.ndim - 1], [0]))
    total = int(acc)
    return Fraction(total, (1 << d) * n**d)


def _popcounts(masks: np.ndarray) -> np.ndarray:
    if masks.dtype == object:
        counter = np.frompyfunc(lambda v: int(v).bit_count(), 1, 1)
        return counter(masks).astype(np.int64)
    return np.bitwise_count(masks).astype(np.int64)


def euler(P: IntegralOrthotope, method: EulerMethod = EulerMethod.SIGMA_SUM) -> int:
    if not isinstance(method, EulerMethod):
        raise ValueError(f"unknown euler method {method!r}")
    d = P.dim
    if P.is_empty:
        return 0
    if method is EulerMethod.SIGMA_SUM:
        total = sigma_sum(P)
        if total % (1 << d):
            raise ConsistencyError(
                f"vertex sign sum {total} is not divisible by 2^{d}"
            )
        return total // (1 << d)
    scan = _scan_for(P)
    occ = scan.occ
    sizes = tuple(2 * s + 1 for s in occ.shape)
    present = np.zeros(sizes, dtype=bool)
    for offset in itertools.product((0, 1, 2), repeat=d):
        sel = tuple(
            slice(offset[j], offset[j] + 2 * occ.shape[j], 2) for j in range(d)
        )
        present[sel] |= occ
    acc = present.astype(np.int64)
    for j in reversed(range(d)):
        signs = np.where(np.arange(sizes[j]) % 2 == 0, 1, -1).astype(np.int64)
        acc = np.tensordot(acc, signs, axes=([acc.ndim - 1], [0]))
    return int(acc)


def skeleton(P: IntegralOrthotope) -> SkeletonGraph:
    """Vertices of ``P`` joined along grid segments whose interior points
    all have degree 1 with the segment's axis inessential."""
    scan = _require_generic(P)
    if scan.empty:
        return SkeletonGraph((), ())
    entries = scan.vertex_entries()
    inverse = scan.inverse
    profiles = [scan.profiles[m] for m in scan.unique_masks]
    node_index = {}
    nodes = []
    for point, _mask, prof in entries:
        node_index[point] = prof.tau_d
        nodes.append((point, prof.tau_d))
    arcs = set()
    vertex_positions = np.argwhere(
        np.isin(
            inverse[(slice(1, None, 2),) * P.dim],
            [i for i, p in enumerate(profiles) if p.degree == 0],
        )
    )
    for sub_idx in vertex_positions:
        base = tuple(2 * int(t) + 1 for t in sub_idx)
        point = scan.point_of(base)
        for j in range(P.dim):
            axis = j + 1
            for step in (-1, 1):
                r = list(base)
                found = None
                while True:
                    r[j] += step
                    if r[j] < 0 or r[j] >= inverse.shape[j]:
                        break
                    prof = profiles[int(inverse[tuple(r)])]
                    if prof.degree == 0:
                        found = tuple(r)
                        break
                    if prof.degree != 1 or axis in prof.essential:
                        break
                if found is None:
                    continue
                other = scan.point_of(found)
                if node_index[point] != -node_index[other]:
                    raise ConsistencyError(
                        f"tau signs fail to alternate along {point} .. {other}"
                    )
                arcs.add((min(point, other), max(point, other), axis))
    for point, _tau in nodes:
        deg = sum(1 for a, b, _x in arcs if point in (a, b))
        if deg != P.dim:
            raise ConsistencyError(f"vertex {point} has skeleton degree {deg}")
    return SkeletonGraph(tuple(sorted(nodes)), tuple(sorted(arcs)))


def face_poset(P: IntegralOrthotope) -> FacePoset:
    """Genericity regions of the doubled grid, grouped into faces by
    taking closures, with containment among closures.  Runs at full grid
    resolution, so it is intended for desk-scale instances."""
    _require_generic(P)
    scan = _scan_for(P, compress=False)
    if scan.empty:
        return FacePoset((), frozenset())
    d = P.dim
    inverse = scan.inverse
    labels = np.zeros(inverse.shape, dtype=np.int64)
    structure = ndimage.generate_binary_structure(d, 1)
    next_label = 0
    region_mask = {}
    for i, m in enumerate(scan.unique_masks):
        if m == 0:
            continue
        comp, count = ndimage.label(inverse == i, structure=structure)
        where = comp > 0
        labels[where] = comp[where] + next_label
        for c in range(1, count + 1):
            region_mask[next_label + c] = m
        next_label += count
    order = np.argsort(labels.reshape(-1), kind="stable")
    flat_labels = labels.reshape(-1)[order]
    starts = np.searchsorted(flat_labels, np.arange(1, next_label + 1))
    ends = np.searchsorted(flat_labels, np.arange(1, next_label + 1), side="right")
    faces = []
    for lab in range(1, next_label + 1):
        member_flat = order[starts[lab - 1] : ends[lab - 1]]
        members = np.stack(np.unravel_index(member_flat, labels.shape), axis=-1)
        prof = scan.profiles[region_mask[lab]]
        free = tuple(a for a in range(1, d + 1) if a not in prof.essential)
        k = len(free)
        fixed = []
        for a in prof.essential:
            col = members[:, a - 1]
            if (col % 2 == 0).any() or col.min() != col.max():
                raise ConsistencyError("essential axis varies inside a region")
            fixed.append((a, int(scan.edges[a - 1][(int(col[0]) + 1) // 2])))
        interior = np.ones(len(members), dtype=bool)
        for a in free:
            interior &= members[:, a - 1] % 2 == 0
        cell_rows = members[interior]
        if len(cell_rows) == 0:
            raise ConsistencyError("genericity region with no interior cell")
        cells = frozenset(
            tuple(int(scan.edges[a - 1][int(row[a - 1]) // 2]) for a in free)
            for row in cell_rows
        )
        rep_idx = members[np.lexsort(members.T[::-1])][0]
        rep_point = scan.point_of(tuple(int(t) for t in rep_idx))
        mask = region_mask[lab]
        rep = PointClass(
            rep_point, OrthantSet(d, mask), prof.essential, prof.degree, prof.floral
        )
        faces.append(Face(k, free, tuple(fixed), cells, rep))
    faces.sort(key=lambda f: (f.dim, f.representative.point))
    incidence = set()
    for i, a in enumerate(faces):
        for j, b in enumerate(faces):
            if a.dim >= b.dim:
                continue
            if not set(a.free_axes) <= set(b.free_axes):
                continue
            b_fixed = dict(b.fixed)
            a_fixed = dict(a.fixed)
            if any(a_fixed[ax] != v for ax, v in b_fixed.items()):
                continue
            between = [ax for ax in b.free_axes if ax not in a.free_axes]
            ok = True
            for cell in a.cells:
                placed = dict(zip(a.free_axes, cell))
                hit = False
                for choice in itertools.product(*(
                    (a_fixed[ax] - 1, a_fixed[ax]) for ax in between
                )):
                    cand = tuple(
                        placed[ax] if ax in placed else choice[between.index(ax)]
                        for ax in b.free_axes
                    )
                    if cand in b.cells:
                        hit = True
                        break
                if not hit:
                    ok = False
                    break
            if ok:
                incidence.add((i, j))
    return FacePoset(tuple(faces), frozenset(incidence))


def cross_section(P: IntegralOrthotope, axes_values: Mapping) -> IntegralOrthotope:
    """Slice ``P`` by the generalized hyperplane fixing the given axes at
    half-lattice values, identifying the result with the lower-dimensional
    lattice by dropping the fixed coordinates.  Half-integer values cut
    through cell interiors; integer values take the union of the two
    adjacent cell layers, which matches slicing the closed point set."""
    if not axes_values:
        return P
    items = sorted(((int(a), _half(v)) for a, v in axes_values.items()), reverse=True)
    seen = set()
    for a, _v in items:
        if a < 1 or a > P.dim:
            raise ValueError(f"axis {a} out of range for dimension {P.dim}")
        if a in seen:
            raise ValueError(f"axis {a} fixed twice")
        seen.add(a)
    if len(items) >= P.dim:
        raise ValueError("cross-sections must keep at least one axis")
    boxes = list(P.boxes)
    dim = P.dim
    for axis, value in items:
        j = axis - 1
        kept = []
        for lo, hi in boxes:
            if isinstance(value, int):
                touches = lo[j] <= value - 1 and value <= hi[j]
                touches = touches or (lo[j] <= value and value + 1 <= hi[j])
            else:
                c = (2 * value.numerator // value.denominator - 1) // 2
                touches = lo[j] <= c < hi[j]
            if touches:
                kept.append((lo[:j] + lo[j + 1 :], hi[:j] + hi[j + 1 :]))
        boxes = kept
        dim -= 1
    return from_boxes(dim, boxes, P.scale)


def set_ops(P: IntegralOrthotope, Q: IntegralOrthotope, op: SetOp):
    """Union or intersection at a common denominator, together with the
    genericity verdict of the result."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    if op is SetOp.COMPLEMENT:
        raise ValueError("complement is not a binary operation on orthotopes")
    if op not in (SetOp.UNION, SetOp.INTERSECT):
        raise ValueError(f"unsupported operation {op!r}")
    common = math.lcm(P.scale, Q.scale)
    p_boxes = _rescaled_boxes(P, common // P.scale)
    q_boxes = _rescaled_boxes(Q, common // Q.scale)
    if op is SetOp.UNION:
        boxes = p_boxes + q_boxes
    else:
        boxes = []
        for alo, ahi in p_boxes:
            for blo, bhi in q_boxes:
                lo = tuple(max(a, b) for a, b in zip(alo, blo))
                hi = tuple(min(a, b) for a, b in zip(ahi, bhi))
                if all(l < h for l, h in zip(lo, hi)):
                    boxes.append((lo, hi))
    result = from_boxes(P.dim, boxes, common)
    return result, check_generic(result)


def _rescaled_boxes(P: IntegralOrthotope, factor: int) -> list:
    return [
        (tuple(c * factor for c in lo), tuple(c * factor for c in hi))
        for lo, hi in P.boxes
    ]
