"""Text and JSON documents for ball spaces and instance data.

A ball space document looks like::

    ballspace v1
    ground 1 2 3
    ball 1 2
    ball 2 3

Blank lines and lines starting with ``#`` are ignored. Instance documents
share the same line-oriented shape with their own headers (``metric v1``,
``ultrametric v1``, ``poset v1``, ``topology v1``, ``ck v1``, ``ot v1``).
Rational numbers are written ``p/q``; ``inf`` is allowed where noted.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .constructions import Topology
from .core import BallSpace, BxAssignment, GroundSet, InputError
from .instances import (
    CKInstance,
    MetricInstance,
    OTInstance,
    PosetInstance,
    UltrametricInstance,
    ValueSet,
)

BALLSPACE_HEADER = "ballspace v1"
INSTANCE_KINDS = ("metric", "ultrametric", "poset", "topology", "ck", "ot")


def _lines(text: str):
    """Yield ``(line number, keyword, args)`` for every significant line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *args = line.split()
        yield no, key, args


def _expect_header(lines, header: str):
    try:
        no, key, args = next(lines)
    except StopIteration:
        raise InputError(f"empty document; expected header {header!r}") from None
    if " ".join([key] + args) != header:
        raise InputError(f"expected header {header!r}", no)


def _ground(no: int, args, previous) -> GroundSet:
    if previous is not None:
        raise InputError("ground set given twice", no)
    if not args:
        raise InputError("ground set must be nonempty", no)
    try:
        return GroundSet(tuple(args))
    except InputError as e:
        raise InputError(str(e), no) from None


def _need(ground, no: int, what: str = "ground") -> GroundSet:
    if ground is None:
        raise InputError(f"{what} line must come first", no)
    return ground


def _subset(ground: GroundSet, no: int, labels) -> int:
    mask = 0
    for label in labels:
        if label not in ground:
            raise InputError(f"unknown label {label!r}", no)
        mask |= 1 << ground.index(label)
    return mask


def _rational(no: int, text: str, allow_inf: bool = False):
    if allow_inf and text.lower() in ("inf", "+inf"):
        return float("inf")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"invalid rational {text!r}", no) from None


# ------------------------------------------------------------ ball spaces


def parse(text: str) -> BallSpace:
    """Parse a ball space document (text or its JSON mirror)."""
    if text.lstrip().startswith("{"):
        return from_json(json.loads(text))
    lines = _lines(text)
    _expect_header(lines, BALLSPACE_HEADER)
    ground = None
    balls = []
    seen = set()
    for no, key, args in lines:
        if key == "ground":
            ground = _ground(no, args, ground)
        elif key == "ball":
            g = _need(ground, no)
            if not args:
                raise InputError("empty ball", no)
            mask = _subset(g, no, args)
            if mask not in seen:
                seen.add(mask)
                balls.append(mask)
        else:
            raise InputError(f"unknown keyword {key!r}", no)
    if ground is None:
        raise InputError("missing ground line")
    if not balls:
        raise InputError("empty ball family")
    return BallSpace(ground, tuple(balls))


def emit(space: BallSpace) -> str:
    """Canonical text form; ``parse(emit(s)) == s``."""
    g = space.ground
    out = [BALLSPACE_HEADER, "ground " + " ".join(g.labels)]
    out += ["ball " + " ".join(g.labels_of(b)) for b in space.balls]
    return "\n".join(out) + "\n"


def to_json(space: BallSpace) -> dict:
    g = space.ground
    return {
        "format": BALLSPACE_HEADER,
        "ground": list(g.labels),
        "balls": [list(g.labels_of(b)) for b in space.balls],
    }


def from_json(data: dict) -> BallSpace:
    if data.get("format") != BALLSPACE_HEADER:
        raise InputError(f"JSON document must have format {BALLSPACE_HEADER!r}")
    ground = GroundSet(tuple(str(x) for x in data.get("ground") or ()))
    balls = data.get("balls") or []
    if not balls:
        raise InputError("empty ball family")
    masks = []
    for b in balls:
        if not b:
            raise InputError("empty ball")
        masks.append(ground.subset(str(x) for x in b))
    return BallSpace(ground, tuple(masks))


def parse_subset(ground: GroundSet, text: str) -> int:
    """Labels separated by spaces or commas."""
    labels = text.replace(",", " ").split()
    return _subset(ground, 0, labels) if labels else 0


def parse_assignment(ground: GroundSet, text: str) -> BxAssignment:
    """Parse ``"x=a b;y=b;..."`` into an assignment ``x -> B_x``."""
    balls = [None] * ground.n
    for item in filter(None, (p.strip() for p in text.split(";"))):
        if "=" not in item:
            raise InputError(f"malformed assignment entry {item!r}; expected x=labels")
        x, members = item.split("=", 1)
        i = ground.index(x.strip())
        if balls[i] is not None:
            raise InputError(f"B_{x.strip()} given twice")
        balls[i] = parse_subset(ground, members)
    missing = [ground.labels[i] for i, b in enumerate(balls) if b is None]
    if missing:
        raise InputError(f"assignment is not total; missing {', '.join(missing)}")
    return BxAssignment(ground, tuple(balls))


def format_assignment(a: BxAssignment) -> str:
    g = a.ground
    return ";".join(f"{g.labels[x]}={' '.join(g.labels_of(b))}" for x, b in enumerate(a.balls))


def emit_topology(t: Topology) -> str:
    g = t.ground
    out = ["topology v1", "ground " + " ".join(g.labels)]
    out += [("closed " + " ".join(g.labels_of(c))).rstrip() for c in t.closed_sets]
    return "\n".join(out) + "\n"


# -------------------------------------------------------------- instances


def instance_header(text: str) -> str | None:
    for _, key, args in _lines(text):
        return key if args == ["v1"] else None
    return None


def _points_and_pairs(text: str, header: str, keys):
    """Shared reader: a ``points`` line followed by keyword lines."""
    lines = _lines(text)
    _expect_header(lines, header)
    ground = None
    rows = {k: [] for k in keys}
    for no, key, args in lines:
        if key in ("points", "ground", "elements"):
            ground = _ground(no, args, ground)
        elif key in rows:
            _need(ground, no, "points")
            rows[key].append((no, args))
        else:
            raise InputError(f"unknown keyword {key!r}", no)
    if ground is None:
        raise InputError("missing points line")
    return ground, rows


def _distance_table(ground, rows, key="d"):
    n = ground.n
    d = [[Fraction(0)] * n for _ in range(n)]
    seen = set()
    for no, args in rows:
        if len(args) != 3:
            raise InputError(f"expected '{key} a b value'", no)
        a, b, v = args
        i, j = _subset_index(ground, no, a), _subset_index(ground, no, b)
        if i == j:
            raise InputError("distance of a point to itself is fixed at 0", no)
        d[i][j] = d[j][i] = _rational(no, v)
        seen.add(frozenset((i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            if frozenset((i, j)) not in seen:
                raise InputError(f"missing distance between {ground.labels[i]} and {ground.labels[j]}")
    return tuple(tuple(r) for r in d)


def _subset_index(ground, no, label) -> int:
    if label not in ground:
        raise InputError(f"unknown label {label!r}", no)
    return ground.index(label)


def parse_metric(text: str):
    """Returns ``(MetricInstance, radii)`` where radii is ``"All"`` or a tuple."""
    ground, rows = _points_and_pairs(text, "metric v1", ("d", "radii"))
    m = MetricInstance(ground, _distance_table(ground, rows["d"]))
    radii = "All"
    for no, args in rows["radii"]:
        if args != ["All"]:
            radii = tuple(_rational(no, a) for a in args)
    return m, radii


def parse_ultrametric(text: str):
    """Returns ``(UltrametricInstance, variant or None)``.

    ``values`` lists the value labels, the first being the least. Without
    ``lt a b`` lines the listed order is taken as a chain.
    """
    ground, rows = _points_and_pairs(text, "ultrametric v1", ("values", "lt", "u", "variant"))
    if len(rows["values"]) != 1:
        raise InputError("exactly one values line is required")
    vno, vlabels = rows["values"][0]
    try:
        vground = GroundSet(tuple(vlabels))
    except InputError as e:
        raise InputError(str(e), vno) from None
    if rows["lt"]:
        pairs = [(vground.labels[0], v) for v in vground.labels]
        for no, args in rows["lt"]:
            if len(args) != 2:
                raise InputError("expected 'lt a b'", no)
            for a in args:
                _subset_index(vground, no, a)
            pairs.append(tuple(args))
        leq = PosetInstance.from_relations(vground, pairs).leq
        values = ValueSet(vground.labels, leq)
    else:
        values = ValueSet.chain(vground.labels)
    n = ground.n
    zero = values.zero
    u = [[zero] * n for _ in range(n)]
    seen = set()
    for no, args in rows["u"]:
        if len(args) != 3:
            raise InputError("expected 'u a b value'", no)
        i, j = _subset_index(ground, no, args[0]), _subset_index(ground, no, args[1])
        u[i][j] = u[j][i] = _subset_index(vground, no, args[2])
        seen.add(frozenset((i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            if frozenset((i, j)) not in seen:
                raise InputError(f"missing value between {ground.labels[i]} and {ground.labels[j]}")
    variant = rows["variant"][-1][1][0] if rows["variant"] else None
    return UltrametricInstance(ground, values, tuple(tuple(r) for r in u)), variant


def parse_poset(text: str):
    """Returns ``(PosetInstance, variant or None)``; ``leq a b`` lines are closed transitively."""
    ground, rows = _points_and_pairs(text, "poset v1", ("leq", "variant"))
    pairs = []
    for no, args in rows["leq"]:
        if len(args) != 2:
            raise InputError("expected 'leq a b'", no)
        for a in args:
            _subset_index(ground, no, a)
        pairs.append(tuple(args))
    variant = rows["variant"][-1][1][0] if rows["variant"] else None
    return PosetInstance.from_relations(ground, pairs), variant


def parse_topology(text: str) -> Topology:
    """``closed`` lines list closed sets; a bare ``closed`` is the empty set."""
    ground, rows = _points_and_pairs(text, "topology v1", ("closed",))
    return Topology(ground, tuple(_subset(ground, no, args) for no, args in rows["closed"]))


def parse_ck(text: str) -> CKInstance:
    ground, rows = _points_and_pairs(text, "ck v1", ("d", "phi"))
    m = MetricInstance(ground, _distance_table(ground, rows["d"]))
    phi = [None] * ground.n
    for no, args in rows["phi"]:
        if len(args) != 2:
            raise InputError("expected 'phi x value'", no)
        phi[_subset_index(ground, no, args[0])] = _rational(no, args[1])
    if any(v is None for v in phi):
        raise InputError("phi must be given for every point")
    return CKInstance(m, tuple(phi))


def parse_ot(text: str) -> OTInstance:
    """``phi x y v`` lines (``v`` may be ``inf``); the diagonal defaults to 0."""
    ground, rows = _points_and_pairs(text, "ot v1", ("d", "phi", "x0"))
    m = MetricInstance(ground, _distance_table(ground, rows["d"]))
    n = ground.n
    phi = [[Fraction(0) if i == j else None for j in range(n)] for i in range(n)]
    for no, args in rows["phi"]:
        if len(args) != 3:
            raise InputError("expected 'phi x y value'", no)
        i, j = _subset_index(ground, no, args[0]), _subset_index(ground, no, args[1])
        phi[i][j] = _rational(no, args[2], allow_inf=True)
    if any(v is None for row in phi for v in row):
        raise InputError("phi must be given for every ordered pair of distinct points")
    if len(rows["x0"]) != 1 or len(rows["x0"][0][1]) != 1:
        raise InputError("exactly one 'x0 label' line is required")
    no, (label,) = rows["x0"][0]
    return OTInstance(m, tuple(tuple(r) for r in phi), _subset_index(ground, no, label))
