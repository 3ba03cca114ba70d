"""Operators turning ball spaces into new ball spaces.

Extensions (singletons, top), unions, closures under unions and
intersections, the associated topology, subspaces, spherical closure and
the three finite products.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Sequence

from .core import (
    MAX_GROUND,
    BallSpace,
    GroundSet,
    InputError,
    PreconditionError,
    ResourceLimitError,
    _normalize_family,
    intersection_semilattice,
    is_subset,
    iter_bits,
    nest_intersections,
)
from .hierarchy import classify


class ClosureOp(str, enum.Enum):
    FINITE_UNIONS = "FiniteUnions"
    FINITE_INTERSECTIONS = "FiniteIntersections"
    INTERSECTIONS = "Intersections"
    NEST_INTERSECTIONS = "NestIntersections"
    FULL_CLOSURE = "FullClosure"


class ProductMode(str, enum.Enum):
    PR = "pr"
    TPR = "tpr"
    BPR = "bpr"


def with_singletons(space: BallSpace) -> BallSpace:
    return space.with_balls(space.balls + tuple(1 << i for i in range(space.n)))


def with_top(space: BallSpace) -> BallSpace:
    return space.with_balls(space.balls + (space.full,))


def union(space1: BallSpace, space2: BallSpace) -> BallSpace:
    if space1.ground != space2.ground:
        raise InputError("union requires the same ground set")
    return space1.with_balls(space1.balls + space2.balls)


def _pairwise_closure(balls: Iterable[int], combine) -> tuple[int, ...]:
    seen = set(balls)
    work = list(seen)
    while work:
        a = work.pop()
        for b in list(seen):
            c = combine(a, b)
            if c and c not in seen:
                seen.add(c)
                work.append(c)
    return _normalize_family(seen)


def close(space: BallSpace, op: ClosureOp | str) -> BallSpace:
    """Least family containing the balls and closed under ``op``.

    Empty intersections are dropped. ``FullClosure`` closes under finite
    unions first and then under nonempty intersections.
    """
    op = ClosureOp(op)
    if op is ClosureOp.FINITE_UNIONS:
        return space.with_balls(_pairwise_closure(space.balls, lambda a, b: a | b))
    if op is ClosureOp.FINITE_INTERSECTIONS:
        return space.with_balls(_pairwise_closure(space.balls, lambda a, b: a & b))
    if op is ClosureOp.INTERSECTIONS:
        return space.with_balls(intersection_semilattice(space))
    if op is ClosureOp.NEST_INTERSECTIONS:
        return space.with_balls(space.balls + nest_intersections(space))
    return close(close(space, ClosureOp.FINITE_UNIONS), ClosureOp.INTERSECTIONS)


def close_intersections(space: BallSpace) -> BallSpace:
    return close(space, ClosureOp.INTERSECTIONS)


def is_union_closed(space: BallSpace) -> bool:
    return all((a | b) in space for a in space.balls for b in space.balls)


@dataclass(frozen=True)
class Topology:
    """A finite topology given by its closed sets (including the empty set)."""

    ground: GroundSet
    closed_sets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "closed_sets", _normalize_family(self.closed_sets))

    @classmethod
    def from_labels(cls, ground: Sequence | GroundSet, closed: Iterable[Iterable]) -> "Topology":
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        return cls(ground, tuple(ground.subset(c) for c in closed))

    @classmethod
    def discrete(cls, ground: GroundSet) -> "Topology":
        return cls(ground, tuple(range(ground.full + 1)))

    def violation(self) -> tuple[str, int, int] | None:
        """First closure-axiom failure as ``(axiom, a, b)``, or ``None``."""
        sets = set(self.closed_sets)
        full = self.ground.full
        for s in self.closed_sets:
            if s & ~full:
                return ("subset", s, s)
        if 0 not in sets:
            return ("empty", 0, 0)
        if full not in sets:
            return ("whole", full, full)
        for a in self.closed_sets:
            for b in self.closed_sets:
                if (a | b) not in sets:
                    return ("union", a, b)
                if (a & b) not in sets:
                    return ("intersection", a, b)
        return None

    def is_valid(self) -> bool:
        return self.violation() is None

    def is_compact(self) -> bool:
        """Every open cover has a finite subcover; always true on finite sets."""
        return True


def associated_topology(space: BallSpace) -> Topology:
    closed = close(space, ClosureOp.FULL_CLOSURE).balls + (0, space.full)
    return Topology(space.ground, closed)


def subspace(space: BallSpace, region: int) -> BallSpace:
    """The induced space on ``region`` (labels kept, reindexed)."""
    traces = {b & region for b in space.balls} - {0}
    if not traces:
        raise InputError("empty induced family")
    positions = list(iter_bits(region))
    ground = GroundSet(tuple(space.ground.labels[i] for i in positions))
    remap = {old: new for new, old in enumerate(positions)}

    def relabel(mask: int) -> int:
        return sum(1 << remap[i] for i in iter_bits(mask))

    return BallSpace(ground, tuple(relabel(t) for t in traces))


def embed(parent: BallSpace, sub: BallSpace, mask: int) -> int:
    """Map a mask of ``sub`` (a subspace of ``parent``) back to parent indices."""
    out = 0
    for i in iter_bits(mask):
        out |= 1 << parent.ground.index(sub.ground.labels[i])
    return out


def spherical_closure(space: BallSpace, s: int, check: bool = True) -> int:
    """Smallest ball containing ``s`` in an S* space."""
    if check and not classify(space).s_star:
        raise PreconditionError("spherical closure requires an S* ball space")
    if s == 0:
        raise PreconditionError("spherical closure of the empty set is undefined")
    above = [b for b in space.balls if is_subset(s, b)]
    if not above:
        raise PreconditionError("unbounded subset")
    out = space.full
    for b in above:
        out &= b
    return out


def _check_product_size(spaces: Sequence[BallSpace]) -> int:
    size = 1
    for s in spaces:
        size *= s.n
    if size > MAX_GROUND:
        raise ResourceLimitError(f"product ground set has {size} elements; at most {MAX_GROUND} supported")
    return size


def product_ground(spaces: Sequence[BallSpace]) -> GroundSet:
    _check_product_size(spaces)
    return GroundSet(tuple("|".join(t) for t in cartesian(*(s.ground.labels for s in spaces))))


def box(spaces: Sequence[BallSpace], factors: Sequence[int]) -> int:
    """Mask of the cartesian product of one subset per factor."""
    members = [list(iter_bits(f)) for f in factors]
    strides = []
    stride = 1
    for s in reversed(spaces):
        strides.append(stride)
        stride *= s.n
    strides.reverse()
    out = 0
    for coords in cartesian(*members):
        out |= 1 << sum(c * st for c, st in zip(coords, strides))
    return out


def product(spaces: Sequence[BallSpace], mode: ProductMode | str) -> BallSpace:
    """Product, topological product or box product of finitely many spaces.

    ``Pr`` uses a ball in one coordinate and whole factors elsewhere, and also
    contains the whole product. With a finite index set the "almost all"
    clause of ``Tpr`` is vacuous, so ``Tpr`` is the box product of the
    factors with their whole sets adjoined.
    """
    mode = ProductMode(mode)
    spaces = list(spaces)
    if not spaces:
        raise InputError("product needs at least one factor")
    ground = product_ground(spaces)
    wholes = [s.full for s in spaces]
    balls = []
    if mode is ProductMode.BPR:
        for combo in cartesian(*(s.balls for s in spaces)):
            balls.append(box(spaces, combo))
    elif mode is ProductMode.TPR:
        for combo in cartesian(*(with_top(s).balls for s in spaces)):
            balls.append(box(spaces, combo))
    else:
        balls.append(box(spaces, wholes))
        for k, s in enumerate(spaces):
            for b in s.balls:
                factors = list(wholes)
                factors[k] = b
                balls.append(box(spaces, factors))
    return BallSpace(ground, tuple(balls))


def product_of_families(spaces: Sequence[BallSpace], families: Sequence[Iterable[int]], mode: ProductMode | str) -> BallSpace:
    """Product over the same grounds with replacement families per factor."""
    replaced = [s.with_balls(f) for s, f in zip(spaces, families)]
    return product(replaced, mode)
