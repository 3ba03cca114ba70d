"""Self-maps on ball spaces and constructive checks of fixed-point theorems.

Each theorem is checked literally on a finite bundle: the hypotheses are
evaluated by enumeration and, when they hold, so is the conclusion. A
bundle whose hypotheses hold but whose conclusion fails is flagged as an
alarm, since it would refute the theorem (or reveal a bug).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Sequence

from .constructions import subspace
from .core import (
    BallSpace,
    BxAssignment,
    GroundSet,
    InputError,
    PreconditionError,
    ResourceLimitError,
    SoundnessAlarm,
    canonical_key,
    is_nest,
    is_proper_subset,
    is_subset,
    iter_bits,
    nest_intersections,
    popcount,
)
from .hierarchy import PropertyReport, SystemKind, classify
from .instances import CKInstance, OTInstance, PosetInstance

SUBSET_ENUM_LIMIT = 16


@dataclass(frozen=True)
class SelfMap:
    """A total function on ground indices ``0..n-1``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        n = len(image)
        if n == 0:
            raise InputError("self-map must be defined on a nonempty set")
        if any(not 0 <= v < n for v in image):
            raise InputError("self-map image out of range")

    @classmethod
    def identity(cls, n: int) -> "SelfMap":
        return cls(tuple(range(n)))

    @classmethod
    def parse(cls, text: str, ground: GroundSet) -> "SelfMap":
        """Parse ``"a:b,c:d,..."``; every label must be mapped exactly once."""
        image = [None] * ground.n
        for item in filter(None, (p.strip() for p in text.split(","))):
            if ":" not in item:
                raise InputError(f"malformed map entry {item!r}; expected a:b")
            a, b = (s.strip() for s in item.split(":", 1))
            i = ground.index(a)
            if image[i] is not None:
                raise InputError(f"label {a!r} mapped twice")
            image[i] = ground.index(b)
        missing = [ground.labels[i] for i, v in enumerate(image) if v is None]
        if missing:
            raise InputError(f"map is not total; missing {', '.join(missing)}")
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def apply(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.image[i]
        return out

    def preimage(self, mask: int) -> int:
        return sum(1 << i for i, v in enumerate(self.image) if mask >> v & 1)

    def compose(self, other: "SelfMap") -> "SelfMap":
        """``self after other``."""
        return SelfMap(tuple(self.image[v] for v in other.image))

    def iterate(self, x: int, k: int) -> int:
        for _ in range(k):
            x = self.image[x]
        return x

    def fixed_points(self) -> int:
        return sum(1 << i for i, v in enumerate(self.image) if i == v)

    def is_closed(self, mask: int) -> bool:
        return is_subset(self.apply(mask), mask)

    def format(self, ground: GroundSet) -> str:
        return ",".join(f"{ground.labels[i]}:{ground.labels[v]}" for i, v in enumerate(self.image))


def all_self_maps(n: int):
    for image in cartesian(range(n), repeat=n):
        yield SelfMap(image)


def _check_map(f: SelfMap, n: int):
    if f.n != n:
        raise InputError(f"self-map is defined on {f.n} points, ground set has {n}")


def f_closed_family(space: BallSpace, f: SelfMap) -> BallSpace | None:
    """The subspace of ``f``-closed balls, or ``None`` if there is none."""
    _check_map(f, space.n)
    closed = tuple(b for b in space.balls if f.is_closed(b))
    return space.with_balls(closed) if closed else None


def is_f_contracting(s: int, f: SelfMap) -> bool:
    if s == 0:
        raise PreconditionError("f-contracting is defined for nonempty sets")
    image = f.apply(s)
    if not is_subset(image, s):
        raise PreconditionError("set is not f-closed")
    return popcount(s) == 1 or image != s


def f_closed_subsets(f: SelfMap) -> list[int]:
    """Every nonempty ``f``-closed subset of the ground set."""
    if f.n > SUBSET_ENUM_LIMIT:
        raise ResourceLimitError(f"subset enumeration supports at most {SUBSET_ENUM_LIMIT} points")
    return [m for m in range(1, 1 << f.n) if f.is_closed(m)]


# ------------------------------------------------------------- B_x checks


@dataclass(frozen=True)
class BxFlags:
    NB: bool
    C1: bool
    C2: bool
    C2s: bool
    CO: bool | None = None
    fx_in_Bx: bool | None = None

    @property
    def contractive(self) -> bool:
        return self.C1 and self.C2

    @property
    def strongly_contractive(self) -> bool:
        return self.C1 and self.C2s

    @property
    def ultimately_contracting(self) -> bool | None:
        return None if self.CO is None else self.NB and self.CO

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("NB", "C1", "C2", "C2s", "CO", "fx_in_Bx")}


def _check_assignment(space: BallSpace, a: BxAssignment):
    if a.ground != space.ground:
        raise InputError("assignment and space have different ground sets")
    for b in a.balls:
        if b not in space:
            raise InputError(f"{space.ground.format(b)} is assigned but is not a ball")


def check_bx_conditions(space: BallSpace, a: BxAssignment, f: SelfMap | None = None) -> BxFlags:
    _check_assignment(space, a)
    n = space.n
    B = a.balls
    nb = all(B[x] >> x & 1 for x in range(n))
    c1 = all(is_subset(B[y], B[x]) for x in range(n) for y in iter_bits(B[x]))
    c2 = all(
        popcount(B[x]) == 1 or any(is_proper_subset(B[y], B[x]) for y in iter_bits(B[x]))
        for x in range(n)
    )
    c2s = all(is_proper_subset(B[y], B[x]) for x in range(n) for y in iter_bits(B[x]) if y != x)
    co = fx = None
    if f is not None:
        _check_map(f, n)
        fx = all(B[x] >> f(x) & 1 for x in range(n))
        co = True
        for x in range(n):
            if not is_subset(B[f(x)], B[x]):
                co = False
                break
            if f(x) != x and not any(
                is_proper_subset(B[f.iterate(x, i)], B[x]) for i in range(1, n + 1)
            ):
                co = False
                break
    return BxFlags(nb, c1, c2, c2s, co, fx)


# -------------------------------------------------------- greedy descent


@dataclass(frozen=True)
class GreedyResult:
    fixed_point: int | None
    trace: tuple[int, ...]

    @property
    def terminal(self) -> int:
        return self.trace[-1]

    @property
    def found(self) -> bool:
        return self.fixed_point is not None


def greedy_fixed_point(space: BallSpace, f: SelfMap, start: int) -> GreedyResult:
    """Descend through a decreasing chain of ``f``-closed balls from ``start``.

    At each step ``f(B)`` is taken when it is a strictly smaller ``f``-closed
    ball, otherwise the canonically least strictly smaller ``f``-closed ball.
    At a terminal ball the least fixed point in it is returned, if any.
    """
    _check_map(f, space.n)
    if start not in space or not f.is_closed(start):
        raise PreconditionError("start must be an f-closed ball")
    closed = [b for b in space.balls if f.is_closed(b)]
    trace = [start]
    current = start
    while True:
        image = f.apply(current)
        if image != current and image in space and f.is_closed(image):
            current = image
        else:
            smaller = [b for b in closed if is_proper_subset(b, current)]
            if not smaller:
                break
            current = min(smaller, key=canonical_key)
        trace.append(current)
    fixed = current & f.fixed_points()
    fp = next(iter_bits(fixed)) if fixed else None
    return GreedyResult(fp, tuple(trace))


# ------------------------------------------------------- nests in B_x spaces


def maximal_nests(space: BallSpace) -> list[tuple[int, ...]]:
    """All maximal nests, each listed from the largest ball downward."""
    balls = space.balls
    below = {a: [b for b in balls if is_proper_subset(b, a)] for a in balls}
    covers = {
        a: [b for b in below[a] if not any(is_proper_subset(b, c) for c in below[a])]
        for a in balls
    }
    tops = [a for a in balls if not any(is_proper_subset(a, b) for b in balls)]
    out = []

    def walk(chain):
        nxt = covers[chain[-1]]
        if not nxt:
            out.append(tuple(chain))
            return
        for b in nxt:
            walk(chain + [b])

    for t in tops:
        walk([t])
    return out


def f_nests(a: BxAssignment, f: SelfMap) -> list[tuple[int, tuple[int, ...]]]:
    """Pairs ``(S, N)`` with ``S`` f-closed and ``N = {B_x | x in S}`` a nest."""
    out = []
    for s in f_closed_subsets(f):
        family = tuple(sorted({a[x] for x in iter_bits(s)}, key=canonical_key))
        if is_nest(family):
            out.append((s, family))
    return out


# --------------------------------------------------------- theorem checks


class TheoremId(str, enum.Enum):
    BASIC1A = "Basic1a"
    BASIC1B = "Basic1b"
    BASIC1C = "Basic1c"
    BTPRIME = "BTprime"
    GFPT2 = "GFPT2"
    GFPT2U = "GFPT2U"
    GFPT3 = "GFPT3"
    WBW = "WBW"
    ORDER_PRESERVING = "OrderPreserving"
    CARISTI_KIRK = "CaristiKirk"
    OETTLI_THERA = "OettliThera"
    KTBALL = "KTball"

    @classmethod
    def parse(cls, name: str) -> "TheoremId":
        key = name.replace("-", "").replace("_", "").replace("'", "prime").lower()
        for t in cls:
            if t.value.lower() == key:
                return t
        raise InputError(f"unknown theorem {name!r}; expected one of {', '.join(t.value for t in cls)}")


SPACE_THEOREMS = (TheoremId.BASIC1A, TheoremId.BASIC1B, TheoremId.BASIC1C, TheoremId.BTPRIME, TheoremId.KTBALL)
BX_THEOREMS = (TheoremId.GFPT2, TheoremId.GFPT2U, TheoremId.GFPT3)
POSET_THEOREMS = (TheoremId.WBW, TheoremId.ORDER_PRESERVING)


@dataclass(frozen=True)
class PartCheck:
    name: str
    hypotheses: bool
    conclusion: bool | None
    detail: str = ""

    @property
    def alarm(self) -> bool:
        return self.hypotheses and self.conclusion is False


@dataclass(frozen=True)
class TheoremCheck:
    """Outcome of checking one theorem on one bundle.

    ``conclusion_holds`` is ``None`` when no part's hypotheses hold.
    """

    theorem: TheoremId
    parts: tuple[PartCheck, ...]
    fixed_points: int
    ground: GroundSet = field(repr=False)

    @property
    def hypotheses_hold(self) -> bool:
        return any(p.hypotheses for p in self.parts)

    @property
    def conclusion_holds(self) -> bool | None:
        relevant = [p.conclusion for p in self.parts if p.hypotheses]
        return all(relevant) if relevant else None

    @property
    def alarm(self) -> bool:
        return any(p.alarm for p in self.parts)

    @property
    def witness(self) -> str | None:
        for p in self.parts:
            if p.alarm:
                return f"{p.name}: {p.detail}"
        return None

    def summary(self) -> str:
        fix = self.ground.labels_of(self.fixed_points)
        if not self.hypotheses_hold:
            status = "hypotheses fail"
        elif self.alarm:
            status = "SOUNDNESS ALARM"
        else:
            status = "hypotheses and conclusion hold"
        lines = [f"{self.theorem.value}: {status}"]
        for p in self.parts:
            concl = "-" if p.conclusion is None else str(p.conclusion).lower()
            extra = f" ({p.detail})" if p.detail else ""
            lines.append(f"  {p.name}: hypotheses={str(p.hypotheses).lower()} conclusion={concl}{extra}")
        if len(fix) == 1:
            lines.append(f"unique fixed point: {fix[0]}")
        elif fix:
            lines.append(f"fixed points: {' '.join(fix)}")
        else:
            lines.append("no fixed point")
        return "\n".join(lines)


def _part(name, hyp, conclusion_fn, detail_fn=None) -> PartCheck:
    if not hyp:
        return PartCheck(name, False, None)
    ok = conclusion_fn()
    detail = detail_fn() if (detail_fn and not ok) else ""
    return PartCheck(name, True, ok, detail)


def _first(masks: Iterable[int], pred):
    return next((m for m in masks if pred(m)), None)


def _ball_list(ground: GroundSet, masks: Iterable[int]) -> str:
    return ", ".join(ground.format(m) for m in masks)


def _check_basic1a(space, f, report):
    fix = f.fixed_points()
    g = space.ground
    s1 = report.s(1, SystemKind.NEST)
    subsets = f_closed_subsets(f)

    def contains_contracting(s):
        return any(is_subset(b, s) and f.is_closed(b) and is_f_contracting(b, f) for b in space.balls)

    hyp1 = s1 and all(contains_contracting(s) for s in subsets)
    hyp2 = s1 and all(s in space and is_f_contracting(s, f) for s in subsets)
    return (
        _part("part1", hyp1, lambda: all(s & fix for s in subsets),
              lambda: f"f-closed set {g.format(_first(subsets, lambda s: not s & fix))} has no fixed point"),
        _part("part2", hyp2, lambda: popcount(fix) == 1,
              lambda: f"{popcount(fix)} fixed points"),
    )


def _check_basic1b(space, f, report):
    fix = f.fixed_points()
    g = space.ground
    base = report.s(5, SystemKind.NEST) and all(f.apply(b) in space for b in space.balls)
    closed = [b for b in space.balls if f.is_closed(b)]

    def contains_contracting(b):
        return any(is_subset(c, b) and is_f_contracting(c, f) for c in closed)

    hyp1 = base and all(contains_contracting(b) for b in closed)
    hyp2 = base and all(is_f_contracting(b, f) for b in closed)

    def concl2():
        unique = all(popcount(b & fix) == 1 for b in closed)
        if space.full in space:
            unique = unique and popcount(fix) == 1
        return unique

    return (
        _part("part1", hyp1, lambda: all(b & fix for b in closed),
              lambda: f"f-closed ball {g.format(_first(closed, lambda b: not b & fix))} has no fixed point"),
        _part("part2", hyp2, concl2, lambda: "fixed point not unique"),
    )


def _fixed_or_smaller(balls: Sequence[int], fix: int) -> bool:
    return all(b & fix or any(is_proper_subset(c, b) for c in balls) for b in balls)


def _check_basic1c(space, f, report):
    fix = f.fixed_points()
    hyp = report.s(2, SystemKind.NEST) and _fixed_or_smaller(space.balls, fix)
    return (
        _part("main", hyp, lambda: all(b & fix for b in space.balls),
              lambda: f"ball {space.ground.format(_first(space.balls, lambda b: not b & fix))} has no fixed point"),
    )


def _btprime_part(name, family: BallSpace | None, f, fix):
    if family is None:
        return PartCheck(name, False, None)
    b1 = all(f.is_closed(b) for b in family.balls)
    b2 = all(
        popcount(r) == 1 or any(is_proper_subset(c, r) for c in family.balls)
        for r in nest_intersections(family)
    )
    return _part(name, b1 and b2, lambda: all(b & fix for b in family.balls),
                 lambda: "ball without fixed point")


def _check_btprime(space, f, report):
    fix = f.fixed_points()
    return (
        _btprime_part("given family", space, f, fix),
        _btprime_part("f-closed subfamily", f_closed_family(space, f), f, fix),
    )


def _induced(space: BallSpace, fix: int) -> BallSpace | None:
    if not fix:
        return None
    try:
        return subspace(space, fix)
    except InputError:
        return None


def _check_ktball(space, f, report):
    fix = f.fixed_points()
    s_star = report.s_star
    closed = f_closed_family(space, f)

    def concl(family):
        if not all(b & fix for b in family.balls):
            return False
        induced = _induced(family, fix)
        return induced is not None and classify(induced).s_star

    hyp1 = s_star and _fixed_or_smaller(space.balls, fix)
    hyp2 = s_star and closed is not None and _fixed_or_smaller(closed.balls, fix)
    return (
        _part("part1", hyp1, lambda: concl(space), lambda: "induced space on Fix(f) is not S*"),
        _part("part2", hyp2, lambda: concl(closed), lambda: "induced f-closed space on Fix(f) is not S*"),
    )


def _check_gfpt2(space, a, f, report):
    flags = check_bx_conditions(space, a, f)
    fix = f.fixed_points()
    nest_ok = True
    for _, family in f_nests(a, f):
        meet = space.full
        for b in family:
            meet &= b
        if not any(is_subset(a[z], meet) for z in iter_bits(meet)):
            nest_ok = False
            break
    hyp = flags.NB and flags.CO and nest_ok
    return (_bx_conclusion("main", hyp, a, fix),)


def _bx_conclusion(name, hyp, a, fix):
    return _part(name, hyp, lambda: all(a[x] & fix for x in range(a.ground.n)),
                 lambda: f"B_{a.ground.labels[_first(range(a.ground.n), lambda x: not a[x] & fix)]} has no fixed point")


def _check_gfpt2u(space, a, f, report):
    flags = check_bx_conditions(space, a, f)
    fix = f.fixed_points()
    hyp = flags.NB and flags.CO and flags.C1 and report.s(1, SystemKind.NEST)
    return (_bx_conclusion("main", hyp, a, fix),)


def _check_gfpt3(space, a, f, report):
    if not a.covers(space):
        raise InputError("GFPT3 needs a B_x-ball space: the family must be exactly {B_x}")
    flags = check_bx_conditions(space, a, f)
    fix = f.fixed_points()
    hyp = report.s(1, SystemKind.NEST) and flags.contractive and flags.fx_in_Bx
    return (
        _part("main", hyp, lambda: all(b & fix for b in space.balls), lambda: "ball without fixed point"),
    )


def _check_wbw(p: PosetInstance, f):
    increasing = all(p.leq[x][f(x)] for x in range(p.n))
    hyp = increasing and p.is_inductively_ordered()
    return (_part("main", hyp, lambda: f.fixed_points() != 0, lambda: "no fixed point"),)


def _check_order_preserving(p: PosetInstance, f):
    monotone = all(p.leq[f(x)][f(y)] for x in range(p.n) for y in range(p.n) if p.leq[x][y])
    some_up = any(p.leq[x][f(x)] for x in range(p.n))
    hyp = monotone and some_up and p.is_chain_complete()
    return (_part("main", hyp, lambda: f.fixed_points() != 0, lambda: "no fixed point"),)


def _check_ck(c: CKInstance, f):
    d, phi = c.metric.d, c.phi
    hyp = all(d[x][f(x)] <= phi[x] - phi[f(x)] for x in range(c.metric.n))
    return (_part("main", hyp, lambda: f.fixed_points() != 0, lambda: "no fixed point"),)


def _check_ot(o: OTInstance, f):
    hyp = all(o.satisfies(x, f(x)) for x in range(o.metric.n))
    return (_part("main", hyp, lambda: f.fixed_points() != 0, lambda: "no fixed point"),)


def verify_theorem(
    theorem: TheoremId | str,
    f: SelfMap,
    *,
    space: BallSpace | None = None,
    assignment: BxAssignment | None = None,
    poset: PosetInstance | None = None,
    ck: CKInstance | None = None,
    ot: OTInstance | None = None,
    report: PropertyReport | None = None,
) -> TheoremCheck:
    """Check ``theorem`` on the given bundle.

    Space theorems need ``space``; the ``GFPT`` family needs ``assignment``
    (and uses ``assignment.space()`` when ``space`` is omitted); order
    theorems need ``poset``; the metric theorems need ``ck`` or ``ot``.
    A precomputed ``report`` for ``space`` may be passed to save work.
    """
    if isinstance(theorem, str) and not isinstance(theorem, TheoremId):
        theorem = TheoremId.parse(theorem)
    theorem = TheoremId(theorem)
    if theorem in SPACE_THEOREMS or theorem in BX_THEOREMS:
        if theorem in BX_THEOREMS:
            if assignment is None:
                raise InputError(f"{theorem.value} needs a B_x assignment")
            space = space if space is not None else assignment.space()
        if space is None:
            raise InputError(f"{theorem.value} needs a ball space")
        _check_map(f, space.n)
        report = report if report is not None else classify(space)
        if theorem is TheoremId.BASIC1A:
            parts = _check_basic1a(space, f, report)
        elif theorem is TheoremId.BASIC1B:
            parts = _check_basic1b(space, f, report)
        elif theorem is TheoremId.BASIC1C:
            parts = _check_basic1c(space, f, report)
        elif theorem is TheoremId.BTPRIME:
            parts = _check_btprime(space, f, report)
        elif theorem is TheoremId.KTBALL:
            parts = _check_ktball(space, f, report)
        elif theorem is TheoremId.GFPT2:
            parts = _check_gfpt2(space, assignment, f, report)
        elif theorem is TheoremId.GFPT2U:
            parts = _check_gfpt2u(space, assignment, f, report)
        else:
            parts = _check_gfpt3(space, assignment, f, report)
        ground = space.ground
    elif theorem in POSET_THEOREMS:
        if poset is None:
            raise InputError(f"{theorem.value} needs a poset")
        _check_map(f, poset.n)
        parts = _check_wbw(poset, f) if theorem is TheoremId.WBW else _check_order_preserving(poset, f)
        ground = poset.elements
    elif theorem is TheoremId.CARISTI_KIRK:
        if ck is None:
            raise InputError("CaristiKirk needs a Caristi-Kirk instance")
        _check_map(f, ck.metric.n)
        parts = _check_ck(ck, f)
        ground = ck.metric.points
    else:
        if ot is None:
            raise InputError("OettliThera needs an Oettli-Thera instance")
        _check_map(f, ot.metric.n)
        parts = _check_ot(ot, f)
        ground = ot.metric.points
    return TheoremCheck(theorem, tuple(parts), f.fixed_points(), ground)


# ---------------------------------------------------------- Knaster-Tarski


def is_ball_continuous(space: BallSpace, f: SelfMap, fixed_only: bool = False) -> bool:
    """``f^-1(B)`` is a ball for every ball ``B`` (or every ball meeting Fix(f))."""
    fix = f.fixed_points()
    return all(
        f.preimage(b) in space for b in space.balls if not fixed_only or b & fix
    )


def trace_family(space: BallSpace, region: int) -> frozenset:
    return frozenset(b & region for b in space.balls) - {0}


@dataclass(frozen=True)
class KTReport:
    hypothesis: bool
    hypothesis_f: bool
    fixed: int
    induced: BallSpace | None
    induced_f: BallSpace | None
    induced_s_star: bool | None
    induced_f_s_star: bool | None
    ball_continuous: bool
    families_equal: bool | None
    failing_ball: int | None

    def format(self, ground: GroundSet) -> str:
        lines = [
            f"hypothesis (all balls): {str(self.hypothesis).lower()}",
            f"hypothesis (f-closed balls): {str(self.hypothesis_f).lower()}",
            f"Fix(f) = {ground.format(self.fixed)}",
        ]
        if self.failing_ball is not None:
            lines.append(f"fails at ball {ground.format(self.failing_ball)}: no fixed point, no smaller ball")
        if self.induced is not None:
            lines.append(f"induced family: {self.induced.describe()} S*={str(self.induced_s_star).lower()}")
        if self.induced_f is not None:
            lines.append(f"induced f-closed family: {self.induced_f.describe()} S*={str(self.induced_f_s_star).lower()}")
        lines.append(f"ball continuous: {str(self.ball_continuous).lower()}")
        if self.families_equal is not None:
            lines.append(f"induced families equal: {str(self.families_equal).lower()}")
        return "\n".join(lines)


def knaster_tarski_suite(space: BallSpace, f: SelfMap) -> KTReport:
    """Check the Knaster-Tarski analogue and ball continuity on an S* space.

    Raises :class:`SoundnessAlarm` if a hypothesis holds but the induced
    space on Fix(f) is not S*, or if continuity holds but the two induced
    families differ.
    """
    _check_map(f, space.n)
    if not classify(space).s_star:
        raise PreconditionError("the Knaster-Tarski analogue needs an S* ball space")
    fix = f.fixed_points()
    closed = f_closed_family(space, f)
    hyp = _fixed_or_smaller(space.balls, fix)
    hyp_f = closed is not None and _fixed_or_smaller(closed.balls, fix)
    failing = _first(space.balls, lambda b: not b & fix and not any(is_proper_subset(c, b) for c in space.balls))
    induced = _induced(space, fix) if hyp else None
    induced_f = _induced(closed, fix) if hyp_f else None
    s1 = classify(induced).s_star if induced is not None else None
    s2 = classify(induced_f).s_star if induced_f is not None else None
    if hyp and not s1:
        raise SoundnessAlarm("Fix(f) with induced balls is not S*", (space, f))
    if hyp_f and not s2:
        raise SoundnessAlarm("Fix(f) with induced f-closed balls is not S*", (space, f))
    continuous = is_ball_continuous(space, f, fixed_only=True)
    equal = None
    if continuous:
        equal = trace_family(space, fix) == (trace_family(closed, fix) if closed else frozenset())
        if not equal:
            raise SoundnessAlarm("ball continuous map with different induced families", (space, f))
    return KTReport(hyp, hyp_f, fix, induced, induced_f, s1, s2, continuous, equal, failing)


# ---------------------------------------------------------- soundness sweep


@dataclass
class SweepSummary:
    """Per-theorem counts of bundles checked, hypotheses holding and alarms."""

    checked: dict = field(default_factory=lambda: {t: 0 for t in TheoremId})
    hypotheses: dict = field(default_factory=lambda: {t: 0 for t in TheoremId})
    alarms: dict = field(default_factory=lambda: {t: 0 for t in TheoremId})
    first_alarm: TheoremCheck | None = None

    def add(self, check: TheoremCheck):
        t = check.theorem
        self.checked[t] += 1
        self.hypotheses[t] += check.hypotheses_hold
        if check.alarm:
            self.alarms[t] += 1
            if self.first_alarm is None:
                self.first_alarm = check

    @property
    def total_alarms(self) -> int:
        return sum(self.alarms.values())

    def format(self) -> str:
        lines = []
        for t in TheoremId:
            lines.append(
                f"{t.value:<16} checked={self.checked[t]:<8} hypotheses={self.hypotheses[t]:<7} alarms={self.alarms[t]}"
            )
        return "\n".join(lines)


def nb_assignments(space: BallSpace):
    """Every assignment ``x -> B_x`` into the family with ``x in B_x``."""
    options = [[b for b in space.balls if b >> x & 1] for x in range(space.n)]
    for choice in cartesian(*options):
        yield BxAssignment(space.ground, choice)


def onto_assignments(space: BallSpace):
    """Every assignment whose set of values is exactly the family."""
    target = set(space.balls)
    for choice in cartesian(space.balls, repeat=space.n):
        if set(choice) == target:
            yield BxAssignment(space.ground, choice)


def ot_grid(metric, values=(Fraction(-2), Fraction(-1), Fraction(0), math.inf)):
    """Oettli-Thera functions with off-diagonal values from ``values``."""
    n = metric.n
    cells = [(x, y) for x in range(n) for y in range(n) if x != y]
    for choice in cartesian(values, repeat=len(cells)):
        phi = [[Fraction(0)] * n for _ in range(n)]
        for (x, y), v in zip(cells, choice):
            phi[x][y] = v
        try:
            yield OTInstance(metric, tuple(tuple(r) for r in phi), 0)
        except InputError:
            continue


def soundness_sweep(spaces: Iterable[BallSpace], n: int, posets=(), metrics=(), phi_values=(0, 1, 2)) -> SweepSummary:
    """Run every theorem on every bundle built from the given data.

    Space theorems run on each space with each self-map. The ``GFPT2``
    variants use every normalized assignment into the family and ``GFPT3``
    every assignment onto it. Order theorems run on ``posets``; the metric
    theorems on ``metrics`` with ``phi`` drawn from ``phi_values`` (and a
    grid of two-place functions for Oettli-Thera).
    """
    out = SweepSummary()
    maps = list(all_self_maps(n))
    for space in spaces:
        report = classify(space)
        nb = list(nb_assignments(space))
        onto = list(onto_assignments(space)) if len(space) <= n else []
        for f in maps:
            for t in SPACE_THEOREMS:
                out.add(verify_theorem(t, f, space=space, report=report))
            for a in nb:
                out.add(verify_theorem(TheoremId.GFPT2, f, space=space, assignment=a, report=report))
                out.add(verify_theorem(TheoremId.GFPT2U, f, space=space, assignment=a, report=report))
            for a in onto:
                out.add(verify_theorem(TheoremId.GFPT3, f, space=space, assignment=a, report=report))
    for p in posets:
        for f in all_self_maps(p.n):
            out.add(verify_theorem(TheoremId.WBW, f, poset=p))
            out.add(verify_theorem(TheoremId.ORDER_PRESERVING, f, poset=p))
    for m in metrics:
        fs = list(all_self_maps(m.n))
        for phi in cartesian(phi_values, repeat=m.n):
            ck = CKInstance(m, phi)
            for f in fs:
                out.add(verify_theorem(TheoremId.CARISTI_KIRK, f, ck=ck))
        for ot in ot_grid(m):
            for f in fs:
                out.add(verify_theorem(TheoremId.OETTLI_THERA, f, ot=ot))
    return out
