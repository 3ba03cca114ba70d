"""Decide the spherical-completeness hierarchy on finite ball spaces.

Two independent routes are provided. The fast route uses three facts that
hold for finite families: every nest and every directed system has a least
member (so its intersection is a ball), and a centered system is exactly a
subfamily with nonempty total intersection, so the centered column only has
to be checked on the intersection semilattice. The exhaustive route
enumerates every subfamily with numpy and applies the literal definitions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import (
    BallSpace,
    ResourceLimitError,
    SystemKind,
    balls_within,
    intersection_semilattice,
    is_proper_subset,
    is_subset,
    minimal_elements,
    nest_intersections,
    popcount,
)

LEVELS = (1, 2, 3, 4, 5)
KINDS = (SystemKind.NEST, SystemKind.DIRECTED, SystemKind.CENTERED)
EXHAUSTIVE_MAX_BALLS = 20


class Mode(str, enum.Enum):
    FAST = "fast"
    EXHAUSTIVE = "exhaustive"


class Reason(str, enum.Enum):
    EMPTY_INTERSECTION = "EmptyIntersection"
    NO_BALL_INSIDE = "NoBallInside"
    NO_LARGEST_BALL = "NoLargestBall"
    NOT_A_BALL = "NotABall"


def prop_name(level: int, kind: SystemKind) -> str:
    return f"S{level}{kind.suffix}"


HIERARCHY_NAMES = tuple(prop_name(i, k) for i in LEVELS for k in KINDS)
EXTRA_NAMES = (
    "S*",
    "S**",
    "tree_like",
    "fin_int_closed",
    "chain_int_closed",
    "int_closed",
    "all_singletons",
)
PROPERTY_NAMES = HIERARCHY_NAMES + EXTRA_NAMES

_ALIASES = {"s*": "S*", "sstar": "S*", "s**": "S**", "sstarstar": "S**", "s5c": "S5c"}


def parse_prop_name(name: str) -> str:
    """Normalize a user-supplied property name (``s2c``, ``S2^c``, ``S*`` ...)."""
    key = name.strip().replace("^", "").replace("_", "").replace("-", "")
    if key.lower() in _ALIASES:
        return _ALIASES[key.lower()]
    for canonical in PROPERTY_NAMES:
        if canonical.replace("_", "").lower() == key.lower():
            return canonical
    raise ValueError(f"unknown property {name!r}; expected one of {', '.join(PROPERTY_NAMES)}")


@dataclass(frozen=True)
class FailureWitness:
    kind: SystemKind
    system: tuple[int, ...]
    region: int
    reason: Reason

    def format(self, space: BallSpace) -> str:
        g = space.ground
        members = ", ".join(g.format(b) for b in self.system)
        return f"{self.kind.value} system {{{members}}} with intersection {g.format(self.region)}: {self.reason.value}"


@dataclass(frozen=True)
class PropertyReport:
    """Truth values for every hierarchy property plus derived predicates.

    ``values`` maps names from ``PROPERTY_NAMES`` to booleans; ``witnesses``
    maps each failed hierarchy property to a concrete failing system.
    """

    values: dict
    witnesses: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, name: str) -> bool:
        return self.values[parse_prop_name(name)]

    def s(self, level: int, kind: SystemKind) -> bool:
        return self.values[prop_name(level, kind)]

    @property
    def s_star(self) -> bool:
        return self.values["S*"]

    @property
    def s_star_star(self) -> bool:
        return self.values["S**"]

    @property
    def tree_like(self) -> bool:
        return self.values["tree_like"]

    @property
    def fin_int_closed(self) -> bool:
        return self.values["fin_int_closed"]

    @property
    def chain_int_closed(self) -> bool:
        return self.values["chain_int_closed"]

    @property
    def int_closed(self) -> bool:
        return self.values["int_closed"]

    def hierarchy(self) -> dict:
        return {k: self.values[k] for k in HIERARCHY_NAMES}

    def same_values(self, other: "PropertyReport") -> bool:
        return self.values == other.values


def level_condition(space: BallSpace, region: int, level: int) -> Reason | None:
    """Return ``None`` if ``region`` satisfies the level's condition, else why not."""
    if region == 0:
        return Reason.EMPTY_INTERSECTION
    if level == 1:
        return None
    if level == 5:
        return None if region in space else Reason.NOT_A_BALL
    within = balls_within(space, region)
    if level in (2, 3):
        # finitely, a nonempty set of contained balls always has maximal ones
        return None if within.maximal else Reason.NO_BALL_INSIDE
    if not within.all:
        return Reason.NO_BALL_INSIDE
    return None if within.largest is not None else Reason.NO_LARGEST_BALL


def is_tree_like(space: BallSpace) -> bool:
    balls = space.balls
    for i, a in enumerate(balls):
        for b in balls[i + 1 :]:
            if a & b and not (is_subset(a, b) or is_subset(b, a)):
                return False
    return True


def closure_predicates(space: BallSpace) -> tuple[bool, bool, bool]:
    """(finitely, chain, arbitrarily) intersection closed."""
    balls = space.balls
    fin = all((a & b) == 0 or (a & b) in space for a in balls for b in balls)
    chain = all(r in space for r in nest_intersections(space))
    full = all(r in space for r in intersection_semilattice(space))
    return fin, chain, full


def _saturated_system(space: BallSpace, region: int) -> tuple[int, ...]:
    return tuple(b for b in space.balls if is_subset(region, b))


def _derived(space: BallSpace) -> dict:
    fin, chain, full = closure_predicates(space)
    total = space.full
    for b in space.balls:
        total &= b
    singles = all((1 << i) in space for i in range(space.n))
    return {
        "tree_like": is_tree_like(space),
        "fin_int_closed": fin,
        "chain_int_closed": chain,
        "int_closed": full,
        "all_singletons": singles,
        "_total": total,
    }


def _fast_columns(space: BallSpace):
    values, witnesses = {}, {}
    for level in LEVELS:
        values[prop_name(level, SystemKind.NEST)] = True
        values[prop_name(level, SystemKind.DIRECTED)] = True
    regions = intersection_semilattice(space)
    for level in LEVELS:
        name = prop_name(level, SystemKind.CENTERED)
        values[name] = True
        for region in regions:
            reason = level_condition(space, region, level)
            if reason is not None:
                values[name] = False
                witnesses[name] = FailureWitness(
                    SystemKind.CENTERED, _saturated_system(space, region), region, reason
                )
                break
    return values, witnesses


def _subfamily_table(space: BallSpace):
    """Intersections and nest/directed flags for every subfamily index."""
    balls = space.balls
    m = len(balls)
    if m > EXHAUSTIVE_MAX_BALLS:
        raise ResourceLimitError(
            f"exhaustive mode supports at most {EXHAUSTIVE_MAX_BALLS} balls, got {m}"
        )
    inter = np.array([space.full], dtype=np.uint64)
    for b in balls:
        inter = np.concatenate([inter, inter & np.uint64(b)])
    idx = np.arange(1 << m, dtype=np.int64)
    has = [((idx >> i) & 1).astype(bool) for i in range(m)]

    nest = np.ones(1 << m, dtype=bool)
    for i, a in enumerate(balls):
        comparable = 0
        for j, b in enumerate(balls):
            if is_subset(a, b) or is_subset(b, a):
                comparable |= 1 << j
        nest &= ~has[i] | ((idx & ~comparable) == 0)

    directed = np.ones(1 << m, dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            meet = balls[i] & balls[j]
            inside = 0
            for k, c in enumerate(balls):
                if is_subset(c, meet):
                    inside |= 1 << k
            directed &= ~(has[i] & has[j]) | ((idx & inside) != 0)

    nonempty = idx != 0
    centered = inter != 0
    return idx, inter, {
        SystemKind.NEST: nest & nonempty,
        SystemKind.DIRECTED: directed & nonempty,
        SystemKind.CENTERED: centered & nonempty,
    }


def _exhaustive_columns(space: BallSpace):
    idx, inter, systems = _subfamily_table(space)
    balls = space.balls
    values, witnesses = {}, {}
    for kind in KINDS:
        sel = systems[kind]
        regions = np.unique(inter[sel])
        ordered = sorted((int(r) for r in regions), key=lambda r: (popcount(r), r))
        for level in LEVELS:
            name = prop_name(level, kind)
            values[name] = True
            for region in ordered:
                reason = level_condition(space, region, level)
                if reason is None:
                    continue
                values[name] = False
                hits = idx[sel & (inter == np.uint64(region))]
                sizes = np.array([popcount(int(h)) for h in hits])
                best = int(hits[np.lexsort((hits, sizes))[-1]])
                system = tuple(balls[i] for i in range(len(balls)) if best >> i & 1)
                witnesses[name] = FailureWitness(kind, system, region, reason)
                break
    return values, witnesses


def classify(space: BallSpace, mode: Mode | str = Mode.FAST) -> PropertyReport:
    """Compute the full property report of ``space``."""
    mode = Mode(mode)
    if mode is Mode.FAST:
        values, witnesses = _fast_columns(space)
    else:
        values, witnesses = _exhaustive_columns(space)
    derived = _derived(space)
    total = derived.pop("_total")
    values.update(derived)
    values["S*"] = values["S5c"]
    values["S**"] = total != 0 and derived["int_closed"]
    return PropertyReport(values, witnesses)


def check_property(
    space: BallSpace, level: int, kind: SystemKind, mode: Mode | str = Mode.FAST
) -> tuple[bool, FailureWitness | None]:
    if level not in LEVELS:
        raise ValueError(f"level must be in 1..5, got {level}")
    name = prop_name(level, kind)
    report = classify(space, mode)
    return report.values[name], report.witnesses.get(name)


def validate_report(report: PropertyReport) -> list[str]:
    """List every implication or guarded equivalence the report violates."""
    v = report.values
    out = []

    def implies(a: str, b: str, why: str):
        if v[a] and not v[b]:
            out.append(f"{a} => {b} ({why})")

    def equiv(names, why: str):
        vals = {n: v[n] for n in names}
        if len(set(vals.values())) > 1:
            out.append(f"{' <=> '.join(names)} ({why}): {vals}")

    for kind in KINDS:
        for level in LEVELS[:-1]:
            implies(prop_name(level + 1, kind), prop_name(level, kind), "hierarchy column")
    for level in LEVELS:
        implies(prop_name(level, SystemKind.CENTERED), prop_name(level, SystemKind.DIRECTED), "hierarchy row")
        implies(prop_name(level, SystemKind.DIRECTED), prop_name(level, SystemKind.NEST), "hierarchy row")
    if v["S*"] != v["S5c"]:
        out.append("S* must equal S5c")
    implies("S**", "S*", "S** is stronger than S*")
    implies("S*", "int_closed", "S* spaces are intersection closed")
    equiv(("S4", "S4d"), "S4 and S4d are equivalent")
    implies("int_closed", "fin_int_closed", "closure predicates")
    implies("int_closed", "chain_int_closed", "closure predicates")
    if v["all_singletons"]:
        equiv(("S1", "S2"), "singleton balls")
        equiv(("S1d", "S2d"), "singleton balls")
        equiv(("S1c", "S2c"), "singleton balls")
    if v["tree_like"]:
        for level in LEVELS:
            equiv(tuple(prop_name(level, k) for k in KINDS), "tree-like")
        if v["all_singletons"]:
            equiv(("S1", "S2c"), "tree-like with singleton balls")
    if v["fin_int_closed"]:
        for level in LEVELS:
            equiv((prop_name(level, SystemKind.DIRECTED), prop_name(level, SystemKind.CENTERED)), "finitely intersection closed")
    if v["chain_int_closed"]:
        equiv(tuple(prop_name(i, SystemKind.NEST) for i in LEVELS), "chain intersection closed")
    if v["int_closed"]:
        equiv(HIERARCHY_NAMES, "intersection closed")
    return out


def minimal_balls(space: BallSpace) -> tuple[int, ...]:
    return minimal_elements(space.balls)


def contains_smaller_ball(space: BallSpace, region: int) -> bool:
    """Whether some ball is a proper subset of ``region``."""
    return any(is_proper_subset(b, region) for b in space.balls)
