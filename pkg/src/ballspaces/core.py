"""Ground sets, bitmask subsets, ball families and system predicates.

A subset of a ground set with ``n`` elements is a plain Python ``int`` whose
bit ``i`` is set when the element with index ``i`` belongs to it. Ball
families are stored as tuples of masks in canonical order: by popcount
first, then by numeric value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

MAX_GROUND = 64


class BallSpaceError(Exception):
    """Base class for all errors raised by this package."""


class InputError(BallSpaceError, ValueError):
    """Malformed or invalid input data."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(BallSpaceError):
    """An operation was called outside its domain."""


class ResourceLimitError(BallSpaceError):
    """The requested computation exceeds a documented size bound."""


class SoundnessAlarm(BallSpaceError):
    """A checked theorem or implication failed on a concrete instance.

    This indicates a bug (or a false theorem); ``payload`` carries the
    offending instance for diagnosis.
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key for subsets: smaller sets first, ties by numeric mask."""
    return (popcount(mask), mask)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def is_proper_subset(a: int, b: int) -> bool:
    return a != b and a & ~b == 0


@dataclass(frozen=True)
class GroundSet:
    """An ordered finite set of distinct string labels."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InputError("ground set must be nonempty")
        if len(labels) > MAX_GROUND:
            raise ResourceLimitError(
                f"ground set has {len(labels)} elements; at most {MAX_GROUND} supported"
            )
        index = {}
        for i, label in enumerate(labels):
            if label in index:
                raise InputError(f"duplicate label {label!r}")
            index[label] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def range(cls, n: int, start: int = 1) -> "GroundSet":
        """Ground set labelled ``start, ..., start + n - 1``."""
        return cls(tuple(str(i) for i in range(start, start + n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return str(label) in self._index

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputError(f"unknown label {label!r}") from None

    def subset(self, labels: Iterable) -> int:
        """Mask of the given labels."""
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"


def _normalize_family(balls: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(balls), key=canonical_key))


@dataclass(frozen=True)
class BallSpace:
    """A ground set together with a nonempty family of nonempty balls.

    ``balls`` may be passed in any order and with repetitions; it is stored
    deduplicated and canonically sorted, so equal families compare equal.
    """

    ground: GroundSet
    balls: tuple[int, ...]
    _ball_set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        balls = _normalize_family(self.balls)
        if not balls:
            raise InputError("ball family must be nonempty")
        full = self.ground.full
        for b in balls:
            if b == 0:
                raise InputError("balls must be nonempty")
            if b & ~full:
                raise InputError(f"ball mask {b:#x} is not a subset of the ground set")
        object.__setattr__(self, "balls", balls)
        object.__setattr__(self, "_ball_set", frozenset(balls))

    @classmethod
    def from_labels(cls, ground: Sequence | GroundSet, balls: Iterable[Iterable]) -> "BallSpace":
        """Build a space from label lists, e.g. ``from_labels("123", [[1, 2], [2, 3]])``."""
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        return cls(ground, tuple(ground.subset(b) for b in balls))

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> int:
        return self.ground.full

    def __len__(self) -> int:
        return len(self.balls)

    def __iter__(self) -> Iterator[int]:
        return iter(self.balls)

    def __contains__(self, mask: int) -> bool:
        return mask in self._ball_set

    def with_balls(self, balls: Iterable[int]) -> "BallSpace":
        return BallSpace(self.ground, tuple(balls))

    def describe(self) -> str:
        return "{" + ", ".join(self.ground.format(b) for b in self.balls) + "}"

    def __str__(self) -> str:
        return f"BallSpace(X={self.ground.format(self.full)}, B={self.describe()})"


class SystemKind(enum.Enum):
    NEST = "nest"
    DIRECTED = "directed"
    CENTERED = "centered"

    @property
    def suffix(self) -> str:
        return {"nest": "", "directed": "d", "centered": "c"}[self.value]


def intersection(family: Iterable[int]) -> int:
    """Intersection of a nonempty collection of masks (possibly empty)."""
    family = list(family)
    if not family:
        raise InputError("empty collection")
    return reduce(lambda a, b: a & b, family)


def _check_collection(space: BallSpace, coll: Iterable[int]) -> tuple[int, ...]:
    coll = tuple(set(coll))
    if not coll:
        raise InputError("system must be nonempty")
    for b in coll:
        if b not in space:
            raise InputError(f"{space.ground.format(b)} is not a ball")
    return coll


def is_nest(coll: Sequence[int]) -> bool:
    return all(is_subset(a, b) or is_subset(b, a) for a, b in combinations(coll, 2))


def is_directed(coll: Sequence[int]) -> bool:
    members = set(coll)
    for a in members:
        for b in members:
            meet = a & b
            if not any(is_subset(c, meet) for c in members):
                return False
    return True


def is_centered_literal(coll: Sequence[int]) -> bool:
    """Every nonempty finite subcollection has nonempty intersection.

    Exponential in ``len(coll)``; kept as the oracle for the one-shot test.
    """
    coll = list(coll)
    for k in range(1, len(coll) + 1):
        for sub in combinations(coll, k):
            if intersection(sub) == 0:
                return False
    return True


def is_system(space: BallSpace, coll: Iterable[int], kind: SystemKind) -> bool:
    """Decide whether ``coll`` is a nest, directed system or centered system."""
    coll = _check_collection(space, coll)
    if kind is SystemKind.NEST:
        return is_nest(coll)
    if kind is SystemKind.DIRECTED:
        return is_directed(coll)
    # finite collections: all subcollections meet iff the whole one does
    return intersection(coll) != 0


def intersection_semilattice(space: BallSpace) -> tuple[int, ...]:
    """All nonempty intersections of nonempty subfamilies of the balls.

    Computed as the closure of the family under pairwise intersection with
    empty results discarded. Returned in canonical order.
    """
    seen = set(space.balls)
    frontier = list(space.balls)
    balls = space.balls
    while frontier:
        nxt = []
        for a in frontier:
            for b in balls:
                c = a & b
                if c and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return _normalize_family(seen)


def intersection_semilattice_bruteforce(space: BallSpace) -> tuple[int, ...]:
    """Oracle: intersect every nonempty subfamily. Exponential in ``len(space)``."""
    out = set()
    balls = space.balls
    for k in range(1, len(balls) + 1):
        for sub in combinations(balls, k):
            c = intersection(sub)
            if c:
                out.add(c)
    return _normalize_family(out)


class BallsWithin(NamedTuple):
    all: tuple[int, ...]
    maximal: tuple[int, ...]
    largest: int | None


def maximal_elements(masks: Sequence[int]) -> tuple[int, ...]:
    return tuple(a for a in masks if not any(is_proper_subset(a, b) for b in masks))


def minimal_elements(masks: Sequence[int]) -> tuple[int, ...]:
    return tuple(a for a in masks if not any(is_proper_subset(b, a) for b in masks))


def balls_within(space: BallSpace, region: int) -> BallsWithin:
    """Balls contained in ``region``, the maximal ones, and the largest if unique."""
    inside = tuple(b for b in space.balls if is_subset(b, region))
    maximal = maximal_elements(inside)
    largest = maximal[0] if len(maximal) == 1 else None
    return BallsWithin(inside, maximal, largest)


@dataclass(frozen=True)
class BxAssignment:
    """A total map from ground indices to balls, ``x -> B_x``."""

    ground: GroundSet
    balls: tuple[int, ...]

    def __post_init__(self):
        balls = tuple(self.balls)
        object.__setattr__(self, "balls", balls)
        if len(balls) != self.ground.n:
            raise InputError("assignment must give exactly one ball per ground element")
        for b in balls:
            if b == 0 or b & ~self.ground.full:
                raise InputError(f"invalid ball mask {b:#x} in assignment")

    def __getitem__(self, x: int) -> int:
        return self.balls[x]

    def family(self) -> tuple[int, ...]:
        return _normalize_family(self.balls)

    def space(self) -> BallSpace:
        """The B_x-ball space ``{B_x | x in X}``."""
        return BallSpace(self.ground, self.balls)

    def covers(self, space: BallSpace) -> bool:
        return self.family() == space.balls


def nest_intersections(space: BallSpace) -> tuple[int, ...]:
    """Intersections of all nests of balls.

    A nest is grown downward one ball at a time, carrying its running
    intersection; states already reached are not expanded again.
    """
    seen = set()
    stack = list(space.balls)
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        for b in space.balls:
            if is_proper_subset(b, current):
                stack.append(current & b)
    return _normalize_family(x for x in seen if x)
