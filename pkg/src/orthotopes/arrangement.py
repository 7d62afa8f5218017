"""Floral arrangements: orthant sets, recognition, facets, cross-sections.

The geometric side of the local theory.  A local orthotopal arrangement in
R^d is a union of closed orthants; it is represented here by an OrthantSet,
a membership table over the 2^d sign vectors.  A signed series-parallel
diagram evaluates to such a set (series = intersection, parallel = union,
literal i = the half-space s_i * x_i >= 0), and an arrangement is *floral*
when it arises this way.  ``recognize`` inverts the evaluation map where
possible; a FloralVertex pairs a diagram with its orthant set and supports
the facet, edge and cross-section operations of the cone it spans.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

from .spd import (
    EMPTY,
    FULL,
    TRIVIAL,
    EdgeKind,
    Leaf,
    Parallel,
    Series,
    SignedSpd,
    Spd,
    _make,
    _Marker,
    axes,
    delete_edge,
    dual,
    edge_count,
    edge_kind,
    normalize,
    residual_diagram,
)

#: An orthant set that is provably not the evaluation of any signed diagram.
DEGENERATE = _Marker("Degenerate")


@dataclass(frozen=True)
class OrthantSet:
    """Membership table over the 2^dim closed orthants of R^dim.

    Orthant index k encodes the sign vector with s_j = +1 iff bit j-1 of k
    is set (axis labels are 1-based, bits 0-based).
    """

    dim: int
    mask: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        if not 0 <= self.mask < (1 << (1 << self.dim)):
            raise ValueError("mask has bits outside the orthant table")

    @classmethod
    def empty(cls, dim: int) -> "OrthantSet":
        return cls(dim, 0)

    @classmethod
    def full(cls, dim: int) -> "OrthantSet":
        return cls(dim, (1 << (1 << dim)) - 1)

    @classmethod
    def from_signs(cls, dim: int, members) -> "OrthantSet":
        mask = 0
        for signs in members:
            if len(signs) != dim or any(s not in (-1, 1) for s in signs):
                raise ValueError(f"not a sign vector of length {dim}: {signs}")
            k = 0
            for j, s in enumerate(signs):
                if s > 0:
                    k |= 1 << j
            mask |= 1 << k
        return cls(dim, mask)

    @property
    def count(self) -> int:
        return self.mask.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_full(self) -> bool:
        return self.mask == (1 << (1 << self.dim)) - 1

    def contains(self, signs) -> bool:
        if len(signs) != self.dim:
            raise ValueError("sign vector has wrong length")
        k = 0
        for j, s in enumerate(signs):
            if s > 0:
                k |= 1 << j
        return bool((self.mask >> k) & 1)

    def members(self) -> Iterator[tuple[int, ...]]:
        """Occupied sign vectors in ascending index order."""
        for k in range(1 << self.dim):
            if (self.mask >> k) & 1:
                yield tuple(1 if (k >> j) & 1 else -1 for j in range(self.dim))

    def complement(self) -> "OrthantSet":
        return OrthantSet(self.dim, self.mask ^ ((1 << (1 << self.dim)) - 1))

    def __and__(self, other: "OrthantSet") -> "OrthantSet":
        self._check(other)
        return OrthantSet(self.dim, self.mask & other.mask)

    def __or__(self, other: "OrthantSet") -> "OrthantSet":
        self._check(other)
        return OrthantSet(self.dim, self.mask | other.mask)

    def _check(self, other: "OrthantSet"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def slice(self, axis: int, side: int) -> "OrthantSet":
        """Cross-section at x_axis = side: the (dim-1)-set whose member t is
        occupied iff t with the side sign inserted at the axis is occupied."""
        if not 1 <= axis <= self.dim:
            raise ValueError(f"axis {axis} out of range 1..{self.dim}")
        if side not in (-1, 1):
            raise ValueError("side must be +1 or -1")
        p = axis - 1
        low = (1 << p) - 1
        bit = (1 << p) if side > 0 else 0
        out = 0
        for k in range(1 << (self.dim - 1)):
            lifted = ((k >> p) << (p + 1)) | bit | (k & low)
            if (self.mask >> lifted) & 1:
                out |= 1 << k
        return OrthantSet(self.dim - 1, out)

    def essential_axes(self) -> tuple[int, ...]:
        """Axes whose two cross-sections differ (flipping s_i can change
        membership)."""
        return tuple(
            i for i in range(1, self.dim + 1) if self.slice(i, 1) != self.slice(i, -1)
        )


def _half_space_mask(dim: int, pos: int, positive: bool) -> int:
    # bit k is set iff bit pos of k agrees with the requested side
    width = 1 << (pos + 1)
    unit = ((1 << (1 << pos)) - 1) << (1 << pos)
    table = 1 << dim
    mask = unit * (((1 << table) - 1) // ((1 << width) - 1))
    if not positive:
        mask ^= (1 << table) - 1
    return mask


def orthants_of(x: Union[SignedSpd, Spd], dim: int | None = None) -> OrthantSet:
    """Evaluate a diagram to its orthant set in R^dim.

    Axes of {1..dim} missing from the edge set are unconstrained, so the
    arrangement is a cylinder over them.  dim defaults to the largest label.
    """
    signed = x if isinstance(x, SignedSpd) else SignedSpd(x)
    labels = axes(signed.shape)
    if dim is None:
        dim = max(labels)
    if max(labels) > dim:
        raise ValueError(f"edge label {max(labels)} exceeds dimension {dim}")

    def rec(node: Spd) -> int:
        if isinstance(node, Leaf):
            return _half_space_mask(dim, node.axis - 1, node.axis not in signed.neg)
        if isinstance(node, Series):
            out = (1 << (1 << dim)) - 1
            for c in node.children:
                out &= rec(c)
            return out
        out = 0
        for c in node.children:
            out |= rec(c)
        return out

    return OrthantSet(dim, rec(signed.shape))


def orthant_counts(orthants: OrthantSet) -> tuple[int, int]:
    """(mu_d, tau_d): the occupied-orthant count and the sum of orthant
    signs (-1)^{number of negative coordinates} over the occupied ones.

    For the evaluation of a signed diagram, mu_d = 2^(d-k) * mu of the
    shape and tau_d is the signed volume when all d axes are essential and
    0 otherwise.
    """
    d = orthants.dim
    mu_d = 0
    tau_d = 0
    mask = orthants.mask
    while mask:
        low = mask & -mask
        k = low.bit_length() - 1
        mu_d += 1
        tau_d += -1 if (d - k.bit_count()) % 2 else 1
        mask ^= low
    return mu_d, tau_d


class SetOp(enum.Enum):
    INTERSECT = "intersect"
    UNION = "union"
    COMPLEMENT = "complement"


def combine(a: OrthantSet, b: OrthantSet | None, op: SetOp) -> OrthantSet:
    """Pointwise set operation; COMPLEMENT ignores the second argument."""
    if op is SetOp.COMPLEMENT:
        return a.complement()
    if b is None:
        raise ValueError(f"{op.value} needs two operands")
    if op is SetOp.INTERSECT:
        return a & b
    return a | b


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cylinder:
    """A floral arrangement with unconstrained axes: a diagram on the
    essential axes, extended freely along ``free_axes``."""

    free_axes: tuple[int, ...]
    diagram: SignedSpd

    def __post_init__(self):
        overlap = set(self.free_axes) & axes(self.diagram.shape)
        if overlap:
            raise ValueError(f"free axes {sorted(overlap)} occur in the diagram")


def _series_join(parts: list[SignedSpd]) -> SignedSpd:
    if len(parts) == 1:
        return parts[0]
    shape = normalize(_make(Series, [p.shape for p in parts]))
    neg: frozenset[int] = frozenset()
    for p in parts:
        neg |= p.neg
    return SignedSpd(shape, neg)


def _factor_once(members: frozenset, positions: tuple[int, ...]):
    """Split a set of 0/1 tuples as a Cartesian product across a bipartition
    of coordinate slots; yields (slots_a, proj_a, slots_b, proj_b)."""
    k = len(positions)
    slots = range(k)
    # the first slot anchors side a; a full side-a pick would leave b empty
    for pick in range((1 << (k - 1)) - 1):
        a = [0] + [j for j in slots if j and (pick >> (j - 1)) & 1]
        b = [j for j in slots if j and not (pick >> (j - 1)) & 1]
        proj_a = frozenset(tuple(t[j] for j in a) for t in members)
        proj_b = frozenset(tuple(t[j] for j in b) for t in members)
        if len(proj_a) * len(proj_b) == len(members):
            yield (tuple(positions[j] for j in a), proj_a, tuple(positions[j] for j in b), proj_b)


def _recognize_core(members: frozenset, positions: tuple[int, ...]) -> SignedSpd | None:
    """Invert the evaluation map on a set with every listed axis essential;
    None when the set is not read-once."""
    if len(positions) == 1:
        ((bit,),) = members
        leaf = Leaf(positions[0])
        return SignedSpd(leaf, frozenset() if bit else frozenset((positions[0],)))
    for slots_a, proj_a, slots_b, proj_b in _factor_once(members, positions):
        left = _recognize_core(proj_a, slots_a)
        if left is None:
            continue
        right = _recognize_core(proj_b, slots_b)
        if right is not None:
            return _series_join([left, right])
    complement = frozenset(
        t for t in _all_tuples(len(positions)) if t not in members
    )
    for slots_a, proj_a, slots_b, proj_b in _factor_once(complement, positions):
        left = _recognize_core(proj_a, slots_a)
        if left is None:
            continue
        right = _recognize_core(proj_b, slots_b)
        if right is not None:
            return dual(_series_join([left, right]))
    return None


def _all_tuples(k: int):
    for bits in range(1 << k):
        yield tuple((bits >> j) & 1 for j in range(k))


def recognize(orthants: OrthantSet):
    """Invert the evaluation map.

    Returns the normal-form SignedSpd when the set is floral with every
    axis essential, a Cylinder over the inessential axes when the core is
    floral, the FULL or EMPTY marker for the two improper sets, and the
    DEGENERATE marker otherwise.
    """
    if orthants.is_empty:
        return EMPTY
    if orthants.is_full:
        return FULL
    essential = orthants.essential_axes()
    free = tuple(i for i in range(1, orthants.dim + 1) if i not in essential)
    slots = [a - 1 for a in essential]
    members = frozenset(
        tuple(1 if s > 0 else 0 for j, s in enumerate(signs) if j in slots)
        for signs in orthants.members()
    )
    diagram = _recognize_core(members, tuple(essential))
    if diagram is None:
        return DEGENERATE
    assert orthants_of(diagram, orthants.dim) == orthants
    if free:
        return Cylinder(free, diagram)
    return diagram


# ---------------------------------------------------------------------------
# floral vertices and their faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FloralVertex:
    """A cone at the origin spanned by a signed diagram on axes 1..d."""

    diagram: SignedSpd
    orthants: OrthantSet

    def __post_init__(self):
        d = edge_count(self.diagram.shape)
        if axes(self.diagram.shape) != frozenset(range(1, d + 1)):
            raise ValueError("edge set must be exactly 1..d")
        if orthants_of(self.diagram, d) != self.orthants:
            raise ValueError("orthant table does not match the diagram")
        assert self.orthants.count % 2 == 1

    @classmethod
    def from_diagram(cls, diagram: SignedSpd) -> "FloralVertex":
        d = edge_count(diagram.shape)
        return cls(diagram, orthants_of(diagram, d))

    @property
    def dim(self) -> int:
        return self.orthants.dim


def _as_signed(v: FloralVertex | SignedSpd) -> SignedSpd:
    return v.diagram if isinstance(v, FloralVertex) else v


def _restrict(signed: SignedSpd, shape: Spd) -> SignedSpd:
    return SignedSpd(shape, signed.neg & axes(shape))


def facet(v: FloralVertex | SignedSpd, axis: int):
    """The signed diagram of the facet of the cone lying in x_axis = 0.

    Iterative complementation: working from a series root, peel off the
    series partners of the subdiagram containing the axis, take the dual of
    the rest, and repeat until the axis's own leaf surfaces; the facet is
    the series connection of everything peeled off.  It lives on all of the
    other d-1 axes.  For a single-edge diagram the facet is the honorary
    vertex TRIVIAL.
    """
    signed = _as_signed(v)
    if axis not in axes(signed.shape):
        raise ValueError(f"axis {axis} is not an edge of the diagram")
    if isinstance(signed.shape, Leaf):
        return TRIVIAL
    work = signed if isinstance(signed.shape, Series) else dual(signed)
    collected: list[SignedSpd] = []
    while True:
        shape = work.shape
        if isinstance(shape, Leaf):
            # the dual step exposed the bare leaf; nothing remains to peel
            break
        beta = None
        rest: list[Spd] = []
        for child in shape.children:
            if axis in axes(child):
                beta = child
            else:
                rest.append(child)
        assert beta is not None and rest
        gamma_shape = rest[0] if len(rest) == 1 else Series(tuple(rest))
        collected.append(_restrict(work, normalize(gamma_shape)))
        if isinstance(beta, Leaf):
            break
        work = dual(_restrict(work, beta))
    result = _series_join(collected)
    assert axes(result.shape) == axes(signed.shape) - {axis}
    return result


def edge_direction(v: FloralVertex | SignedSpd, axis: int) -> int:
    """Sign epsilon such that the ray along epsilon * e_axis is an edge of
    the cone: the literal's sign for a conjunctive edge and its opposite
    for a disjunctive one (equivalently sigma(D) * sigma(D \\ axis) * sign).
    """
    signed = _as_signed(v)
    s = signed.sign(axis)
    return s if edge_kind(signed.shape, axis) is EdgeKind.CONJUNCTIVE else -s


def edge_cross_section(v: FloralVertex | SignedSpd, axis: int):
    """Diagram of the slice at x_axis = edge_direction: the deletion
    D \\ axis with inherited signs (TRIVIAL for a single-edge diagram)."""
    signed = _as_signed(v)
    smaller = delete_edge(signed.shape, axis, allow_trivial=True)
    if smaller is TRIVIAL:
        return TRIVIAL
    return _restrict(signed, smaller)


def residual_cross_section(v: FloralVertex | SignedSpd, axis: int):
    """Diagram of the slice at x_axis = -edge_direction: the residual
    substitution, FULL or EMPTY when it collapses."""
    signed = _as_signed(v)
    residue = residual_diagram(signed.shape, axis)
    if residue is FULL or residue is EMPTY:
        return residue
    return _restrict(signed, residue)
