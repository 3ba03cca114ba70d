"""Ball spaces derived from metric, ultrametric, order and topological data.

All numeric data are exact :class:`fractions.Fraction` values. Oettli-Thera
functions may additionally take the value ``math.inf``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Iterable, Mapping, Sequence

from .constructions import Topology
from .core import (
    BallSpace,
    BxAssignment,
    GroundSet,
    InputError,
    PreconditionError,
    ResourceLimitError,
    SoundnessAlarm,
    is_subset,
    iter_bits,
)

POSET_SUBSET_LIMIT = 16


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InputError("floating point values are not accepted; use p/q rationals")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"invalid rational {value!r}") from None


def _as_ground(points) -> GroundSet:
    return points if isinstance(points, GroundSet) else GroundSet(tuple(points))


# ----------------------------------------------------------------- metric


@dataclass(frozen=True)
class MetricInstance:
    """A finite metric space with a rational distance matrix."""

    points: GroundSet
    d: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.points.n
        d = tuple(tuple(as_fraction(v) for v in row) for row in self.d)
        if len(d) != n or any(len(row) != n for row in d):
            raise InputError("distance matrix must be n x n")
        object.__setattr__(self, "d", d)
        labels = self.points.labels
        for i in range(n):
            if d[i][i] != 0:
                raise InputError(f"d({labels[i]},{labels[i]}) must be 0")
            for j in range(n):
                if d[i][j] < 0:
                    raise InputError(f"negative distance d({labels[i]},{labels[j]})")
                if d[i][j] != d[j][i]:
                    raise InputError(f"asymmetric distance between {labels[i]} and {labels[j]}")
                if i != j and d[i][j] == 0:
                    raise InputError(f"distinct points {labels[i]},{labels[j]} at distance 0")
        for i, j, k in cartesian(range(n), repeat=3):
            if d[i][k] > d[i][j] + d[j][k]:
                raise InputError(
                    f"triangle inequality fails for ({labels[i]},{labels[j]},{labels[k]})"
                )

    @classmethod
    def from_pairs(cls, points, distances: Mapping[tuple, object]) -> "MetricInstance":
        """Build from ``{(a, b): value}`` over unordered pairs of labels."""
        g = _as_ground(points)
        d = [[Fraction(0)] * g.n for _ in range(g.n)]
        seen = set()
        for (a, b), v in distances.items():
            i, j = g.index(a), g.index(b)
            d[i][j] = d[j][i] = as_fraction(v)
            seen.add(frozenset((i, j)))
        for i, j in combinations(range(g.n), 2):
            if frozenset((i, j)) not in seen:
                raise InputError(f"missing distance d({g.labels[i]},{g.labels[j]})")
        return cls(g, tuple(tuple(r) for r in d))

    @property
    def n(self) -> int:
        return self.points.n

    def ball(self, x: int, r: Fraction) -> int:
        return sum(1 << y for y in range(self.n) if self.d[x][y] <= r)

    def distances(self) -> tuple[Fraction, ...]:
        return tuple(sorted({v for row in self.d for v in row}))


def metric_balls(m: MetricInstance, radii: Iterable | str = "All") -> BallSpace:
    """Closed balls ``B_r(x)`` for every point and every radius.

    ``"All"`` uses the realized distances, which already produce every
    distinct closed ball.
    """
    if isinstance(radii, str):
        if radii != "All":
            raise InputError(f"unknown radius set {radii!r}")
        rs = m.distances()
    else:
        rs = tuple(as_fraction(r) for r in radii)
        if not rs:
            raise InputError("radius set must be nonempty")
        if any(r <= 0 for r in rs):
            raise InputError("radii must be positive")
    return BallSpace(m.points, tuple(m.ball(x, r) for x in range(m.n) for r in rs))


# ----------------------------------------------------------- ultrametric


class UltrametricVariant(str, enum.Enum):
    CLOSED = "Closed"
    PRECISE = "Precise"
    FULL = "Full"


@dataclass(frozen=True)
class ValueSet:
    """A finite poset of values with a least element, indexed ``0..k-1``.

    ``leq[a][b]`` is true iff value ``a`` is below or equal to value ``b``.
    """

    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        poset = PosetInstance(GroundSet(self.labels), self.leq)
        object.__setattr__(self, "leq", poset.leq)
        if poset.bottom() is None:
            raise InputError("value set must have a least element")

    @classmethod
    def chain(cls, labels: Sequence[str]) -> "ValueSet":
        k = len(labels)
        return cls(tuple(labels), tuple(tuple(a <= b for b in range(k)) for a in range(k)))

    @property
    def zero(self) -> int:
        return next(a for a in range(len(self.labels)) if all(self.leq[a]))

    def comparable(self, a: int, b: int) -> bool:
        return self.leq[a][b] or self.leq[b][a]


@dataclass(frozen=True)
class UltrametricInstance:
    """A finite ultrametric with values in a partially ordered set."""

    points: GroundSet
    values: ValueSet
    u: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.points.n
        u = tuple(tuple(int(v) for v in row) for row in self.u)
        if len(u) != n or any(len(row) != n for row in u):
            raise InputError("value matrix must be n x n")
        object.__setattr__(self, "u", u)
        k = len(self.values.labels)
        zero = self.values.zero
        labels = self.points.labels
        for i in range(n):
            for j in range(n):
                if not 0 <= u[i][j] < k:
                    raise InputError(f"value index out of range at ({labels[i]},{labels[j]})")
                if (u[i][j] == zero) != (i == j):
                    raise InputError(f"(U1) fails at ({labels[i]},{labels[j]})")
                if u[i][j] != u[j][i]:
                    raise InputError(f"(U3) symmetry fails at ({labels[i]},{labels[j]})")
        leq = self.values.leq
        for x, y, z in cartesian(range(n), repeat=3):
            for g in range(k):
                if leq[u[x][y]][g] and leq[u[y][z]][g] and not leq[u[x][z]][g]:
                    raise InputError(
                        f"(U2) fails for ({labels[x]},{labels[y]},{labels[z]}) at "
                        f"value {self.values.labels[g]}"
                    )

    @classmethod
    def from_numbers(cls, points, distances: Mapping[tuple, object]) -> "UltrametricInstance":
        """Classical instance with rational values ordered as numbers."""
        g = _as_ground(points)
        vals = {Fraction(0)}
        table = {}
        for (a, b), v in distances.items():
            v = as_fraction(v)
            vals.add(v)
            table[frozenset((g.index(a), g.index(b)))] = v
        order = sorted(vals)
        pos = {v: i for i, v in enumerate(order)}
        u = [[0] * g.n for _ in range(g.n)]
        for i, j in combinations(range(g.n), 2):
            key = frozenset((i, j))
            if key not in table:
                raise InputError(f"missing value u({g.labels[i]},{g.labels[j]})")
            u[i][j] = u[j][i] = pos[table[key]]
        return cls(g, ValueSet.chain([str(v) for v in order]), tuple(tuple(r) for r in u))

    @property
    def n(self) -> int:
        return self.points.n

    def realized(self) -> tuple[int, ...]:
        """The value set ``uX``, sorted by value index."""
        return tuple(sorted({v for row in self.u for v in row}))

    @property
    def classical(self) -> bool:
        ux = self.realized()
        return all(self.values.comparable(a, b) for a, b in combinations(ux, 2))

    def closed_ball(self, x: int, alpha: int) -> int:
        leq = self.values.leq
        return sum(1 << y for y in range(self.n) if leq[self.u[x][y]][alpha])

    def precise_ball(self, x: int, y: int) -> int:
        return self.closed_ball(x, self.u[x][y])


def ultrametric_balls(inst: UltrametricInstance, variant: UltrametricVariant | str) -> BallSpace:
    variant = UltrametricVariant(variant)
    n = inst.n
    if variant is UltrametricVariant.PRECISE:
        balls = [inst.precise_ball(x, y) for x in range(n) for y in range(n)]
    elif variant is UltrametricVariant.CLOSED:
        balls = [inst.closed_ball(x, a) for x in range(n) for a in range(len(inst.values.labels))]
    else:
        if not inst.classical:
            raise PreconditionError("the Full ball family needs a totally ordered value set uX")
        leq = inst.values.leq
        ux = sorted(inst.realized(), key=lambda a: sum(leq[b][a] for b in inst.realized()))
        balls = []
        for k in range(1, len(ux) + 1):
            segment = set(ux[:k])
            for x in range(n):
                balls.append(sum(1 << y for y in range(n) if inst.u[x][y] in segment))
    return BallSpace(inst.points, tuple(balls))


def ultrametric_product(instances: Sequence[UltrametricInstance], kind: str = "prod") -> UltrametricInstance:
    """Product ultrametric on the cartesian product of the points.

    ``prod`` takes the tuple of coordinate values in the product order;
    ``max`` requires a common totally ordered value set and takes the maximum.
    """
    size = math.prod(i.n for i in instances)
    if size > 64:
        raise ResourceLimitError(f"product ground set has {size} elements; at most 64 supported")
    ground = GroundSet(tuple("|".join(t) for t in cartesian(*(i.points.labels for i in instances))))
    coords = list(cartesian(*(range(i.n) for i in instances)))
    if kind == "prod":
        vlist = list(cartesian(*(range(len(i.values.labels)) for i in instances)))
        vindex = {v: k for k, v in enumerate(vlist)}
        vlabels = tuple("|".join(i.values.labels[c] for i, c in zip(instances, v)) for v in vlist)
        leq = tuple(
            tuple(all(i.values.leq[a][b] for i, a, b in zip(instances, va, vb)) for vb in vlist)
            for va in vlist
        )
        values = ValueSet(vlabels, leq)
        u = tuple(
            tuple(vindex[tuple(i.u[a][b] for i, a, b in zip(instances, p, q))] for q in coords)
            for p in coords
        )
        return UltrametricInstance(ground, values, u)
    if kind == "max":
        first = instances[0].values
        if any(i.values != first for i in instances):
            raise InputError("max product needs a common value set")
        if not all(first.comparable(a, b) for a, b in combinations(range(len(first.labels)), 2)):
            raise InputError("max product needs a totally ordered value set")

        def top(vals):
            return max(vals, key=lambda a: sum(first.leq[b][a] for b in range(len(first.labels))))

        u = tuple(
            tuple(top([i.u[a][b] for i, a, b in zip(instances, p, q)]) for q in coords)
            for p in coords
        )
        return UltrametricInstance(ground, first, u)
    raise InputError(f"unknown product kind {kind!r}")


# ----------------------------------------------------------------- posets


class PosetVariant(str, enum.Enum):
    PRINCIPAL_FINAL = "PrincipalFinal"
    SEGMENTS = "Segments"


@dataclass(frozen=True)
class PosetInstance:
    """A finite partial order given by its ``<=`` matrix."""

    elements: GroundSet
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = self.elements.n
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise InputError("order matrix must be n x n")
        object.__setattr__(self, "leq", leq)
        labels = self.elements.labels
        for i in range(n):
            if not leq[i][i]:
                raise InputError(f"order is not reflexive at {labels[i]}")
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise InputError(f"order is not antisymmetric at ({labels[i]},{labels[j]})")
        for i, j, k in cartesian(range(n), repeat=3):
            if leq[i][j] and leq[j][k] and not leq[i][k]:
                raise InputError(
                    f"order is not transitive at ({labels[i]},{labels[j]},{labels[k]})"
                )

    @classmethod
    def from_relations(cls, elements, pairs: Iterable[tuple]) -> "PosetInstance":
        """Reflexive-transitive closure of the given ``(a, b)`` with ``a <= b``."""
        g = _as_ground(elements)
        n = g.n
        m = [[i == j for j in range(n)] for i in range(n)]
        for a, b in pairs:
            m[g.index(a)][g.index(b)] = True
        for k in range(n):
            for i in range(n):
                if m[i][k]:
                    for j in range(n):
                        if m[k][j]:
                            m[i][j] = True
        return cls(g, tuple(tuple(r) for r in m))

    @classmethod
    def chain(cls, n: int, start: int = 0) -> "PosetInstance":
        return cls(GroundSet.range(n, start), tuple(tuple(i <= j for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return self.elements.n

    def up(self, a: int) -> int:
        return sum(1 << c for c in range(self.n) if self.leq[a][c])

    def down(self, a: int) -> int:
        return sum(1 << c for c in range(self.n) if self.leq[c][a])

    def upper_bounds(self, mask: int) -> int:
        out = (1 << self.n) - 1
        for a in iter_bits(mask):
            out &= self.up(a)
        return out

    def lower_bounds(self, mask: int) -> int:
        out = (1 << self.n) - 1
        for a in iter_bits(mask):
            out &= self.down(a)
        return out

    def least(self, mask: int) -> int | None:
        for a in iter_bits(mask):
            if is_subset(mask, self.up(a)):
                return a
        return None

    def greatest(self, mask: int) -> int | None:
        for a in iter_bits(mask):
            if is_subset(mask, self.down(a)):
                return a
        return None

    def sup(self, mask: int) -> int | None:
        return self.least(self.upper_bounds(mask))

    def inf(self, mask: int) -> int | None:
        return self.greatest(self.lower_bounds(mask))

    def top(self) -> int | None:
        return self.greatest((1 << self.n) - 1)

    def bottom(self) -> int | None:
        return self.least((1 << self.n) - 1)

    def is_chain(self, mask: int) -> bool:
        return all(self.leq[a][b] or self.leq[b][a] for a, b in combinations(iter_bits(mask), 2))

    def _all_subsets(self) -> range:
        if self.n > POSET_SUBSET_LIMIT:
            raise ResourceLimitError(f"subset enumeration supports at most {POSET_SUBSET_LIMIT} elements")
        return range(1 << self.n)

    def chains(self) -> list[int]:
        """Every chain, including the empty one."""
        return [m for m in self._all_subsets() if self.is_chain(m)]

    def is_inductively_ordered(self) -> bool:
        return all(self.upper_bounds(c) for c in self.chains())

    def is_chain_complete(self) -> bool:
        return all(self.sup(c) is not None for c in self.chains() if c)

    def reverse(self) -> "PosetInstance":
        return PosetInstance(self.elements, tuple(zip(*self.leq)))


def poset_balls(p: PosetInstance, variant: PosetVariant | str) -> BallSpace:
    variant = PosetVariant(variant)
    if variant is PosetVariant.PRINCIPAL_FINAL:
        return BallSpace(p.elements, tuple(p.up(a) for a in range(p.n)))
    full = (1 << p.n) - 1
    lows = [full] + [p.up(a) for a in range(p.n)]
    highs = [full] + [p.down(b) for b in range(p.n)]
    balls = [lo & hi for lo in lows for hi in highs]
    return BallSpace(p.elements, tuple(b for b in balls if b))


def principal_final_assignment(p: PosetInstance) -> BxAssignment:
    """``x -> [x, oo)``."""
    return BxAssignment(p.elements, tuple(p.up(a) for a in range(p.n)))


def lattice_check(p: PosetInstance) -> tuple[bool, bool]:
    """(is a lattice, is a complete lattice)."""
    n = p.n
    pairs_ok = all(
        p.sup((1 << a) | (1 << b)) is not None and p.inf((1 << a) | (1 << b)) is not None
        for a in range(n)
        for b in range(a + 1, n)
    )
    complete = all(
        p.sup(m) is not None and p.inf(m) is not None for m in p._all_subsets() if m
    )
    if complete != pairs_ok:
        raise SoundnessAlarm("finite lattice is not complete", p)
    return pairs_ok, complete


def enumerate_posets(n: int):
    """Yield every labelled partial order on ``n`` elements labelled ``0..n-1``."""
    if not 1 <= n <= 6:
        raise ResourceLimitError("poset enumeration supports 1 <= n <= 6")
    g = GroundSet.range(n, 0)
    pairs = list(combinations(range(n), 2))
    for choice in cartesian(range(3), repeat=len(pairs)):
        m = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                m[i][j] = True
            elif c == 2:
                m[j][i] = True
        if all(
            not (m[i][j] and m[j][k]) or m[i][k]
            for i in range(n)
            for j in range(n)
            for k in range(n)
        ):
            yield PosetInstance(g, tuple(tuple(r) for r in m))


# --------------------------------------------------------------- topology


def topology_balls(t: Topology) -> BallSpace:
    bad = t.violation()
    if bad is not None:
        axiom, a, b = bad
        g = t.ground
        raise InputError(f"closed sets violate the {axiom} axiom at ({g.format(a)}, {g.format(b)})")
    return BallSpace(t.ground, tuple(c for c in t.closed_sets if c))


def enumerate_topologies(ground: GroundSet):
    """Yield every topology on ``ground`` (as closed-set families)."""
    n = ground.n
    if n > 4:
        raise ResourceLimitError("topology enumeration supports at most 4 points")
    full = ground.full
    middle = list(range(1, full))
    for k in range(len(middle) + 1):
        for combo in combinations(middle, k):
            t = Topology(ground, (0, full) + combo)
            if t.is_valid():
                yield t


# ------------------------------------------------ Caristi-Kirk, Oettli-Thera


@dataclass(frozen=True)
class CKInstance:
    """A metric space with a rational function ``phi``."""

    metric: MetricInstance
    phi: tuple[Fraction, ...]

    def __post_init__(self):
        phi = tuple(as_fraction(v) for v in self.phi)
        if len(phi) != self.metric.n:
            raise InputError("phi must give one value per point")
        object.__setattr__(self, "phi", phi)

    def ball(self, x: int) -> int:
        d, phi = self.metric.d, self.phi
        return sum(1 << y for y in range(self.metric.n) if d[x][y] <= phi[x] - phi[y])


def caristi_kirk_balls(c: CKInstance) -> tuple[BallSpace, BxAssignment]:
    balls = tuple(c.ball(x) for x in range(c.metric.n))
    return BallSpace(c.metric.points, balls), BxAssignment(c.metric.points, balls)


def _ot_value(v):
    if v == math.inf or (isinstance(v, str) and v.strip().lower() in ("inf", "+inf")):
        return math.inf
    return as_fraction(v)


@dataclass(frozen=True)
class OTInstance:
    """A metric space, a two-place function ``phi`` (rational or ``+inf``) and a base point."""

    metric: MetricInstance
    phi: tuple[tuple, ...]
    x0: int

    def __post_init__(self):
        n = self.metric.n
        phi = tuple(tuple(_ot_value(v) for v in row) for row in self.phi)
        if len(phi) != n or any(len(row) != n for row in phi):
            raise InputError("phi must be an n x n table")
        object.__setattr__(self, "phi", phi)
        if not 0 <= self.x0 < n:
            raise InputError("x0 out of range")
        labels = self.metric.points.labels
        for x in range(n):
            if phi[x][x] != 0:
                raise InputError(f"phi({labels[x]},{labels[x]}) must be 0")
        for x, y, z in cartesian(range(n), repeat=3):
            if phi[x][y] > phi[x][z] + phi[z][y]:
                raise InputError(
                    f"phi triangle inequality fails for ({labels[x]},{labels[z]},{labels[y]})"
                )

    @classmethod
    def from_ck(cls, c: CKInstance, x0: int) -> "OTInstance":
        """``phi(x, y) = phi(y) - phi(x)``."""
        n = c.metric.n
        return cls(c.metric, tuple(tuple(c.phi[y] - c.phi[x] for y in range(n)) for x in range(n)), x0)

    def ball(self, x: int) -> int:
        d, phi = self.metric.d, self.phi
        return sum(1 << y for y in range(self.metric.n) if d[x][y] <= -phi[x][y])

    def satisfies(self, x: int, y: int) -> bool:
        return self.metric.d[x][y] <= -self.phi[x][y]


def oettli_thera_balls(o: OTInstance) -> tuple[BallSpace, BxAssignment]:
    """The ball space on ``B_{x0}`` formed by ``B_x`` for ``x`` in ``B_{x0}``."""
    base = o.ball(o.x0)
    positions = list(iter_bits(base))
    labels = o.metric.points.labels
    ground = GroundSet(tuple(labels[i] for i in positions))
    remap = {old: new for new, old in enumerate(positions)}

    def relabel(mask: int) -> int:
        return sum(1 << remap[i] for i in iter_bits(mask))

    balls = []
    for x in positions:
        b = o.ball(x)
        if not is_subset(b, base):
            raise SoundnessAlarm("Oettli-Thera ball escapes its base ball", o)
        balls.append(relabel(b))
    return BallSpace(ground, tuple(balls)), BxAssignment(ground, tuple(balls))


def metric_grid(n: int, values: Sequence = (Fraction(1, 2), Fraction(1), Fraction(2))):
    """Every metric on ``n`` points with off-diagonal distances drawn from ``values``."""
    g = GroundSet.range(n, 0)
    pairs = list(combinations(range(n), 2))
    for choice in cartesian(values, repeat=len(pairs)):
        d = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(pairs, choice):
            d[i][j] = d[j][i] = Fraction(v)
        if all(d[i][k] <= d[i][j] + d[j][k] for i, j, k in cartesian(range(n), repeat=3)):
            yield MetricInstance(g, tuple(tuple(r) for r in d))
