"""Exhaustive enumeration of small ball spaces and implication mining.

Families on an ``n``-set are enumerated by number of balls, then
lexicographically over subsets in canonical order. Under this order the
first family with a given pattern is also the one with fewest balls, and
the orbit representative chosen by :func:`canonical_form` is the first
member of its orbit to appear.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, islice, permutations
from typing import Iterator, Sequence

from .core import BallSpace, GroundSet, InputError, SoundnessAlarm, canonical_key, iter_bits
from .hierarchy import (
    HIERARCHY_NAMES,
    KINDS,
    LEVELS,
    PROPERTY_NAMES,
    Mode,
    PropertyReport,
    SystemKind,
    classify,
    parse_prop_name,
    prop_name,
    validate_report,
)

MAX_EXHAUSTIVE_N = 4


class MinerMode(str, enum.Enum):
    IMPLICATIONS = "implications"
    EQUIVALENCE_TABLE = "equivalence-table"
    WITNESS = "witness"


def _check_n(n: int):
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise InputError(f"exhaustive enumeration supports 1 <= n <= {MAX_EXHAUSTIVE_N}, got {n}")


@lru_cache(maxsize=None)
def subsets_in_order(n: int) -> tuple[int, ...]:
    """Nonempty subsets of an ``n``-set in canonical order."""
    return tuple(sorted(range(1, 1 << n), key=canonical_key))


@lru_cache(maxsize=None)
def _rank(n: int) -> dict:
    return {m: i for i, m in enumerate(subsets_in_order(n))}


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For each permutation of the ground set, the induced map on subset ranks."""
    subs = subsets_in_order(n)
    rank = _rank(n)
    tables = []
    for p in permutations(range(n)):
        row = []
        for m in subs:
            row.append(rank[sum(1 << p[i] for i in iter_bits(m))])
        tables.append(tuple(row))
    return tuple(tables)


def family_count(n: int) -> int:
    return 2 ** (2**n - 1) - 1


def _rank_families(n: int) -> Iterator[tuple[int, ...]]:
    total = 2**n - 1
    for k in range(1, total + 1):
        yield from combinations(range(total), k)


def _canonical_ranks(n: int, ranks: Sequence[int]) -> tuple[int, ...]:
    return min(tuple(sorted(t[r] for r in ranks)) for t in _perm_tables(n))


def _orbit_size(n: int, ranks: Sequence[int]) -> int:
    return len({tuple(sorted(t[r] for r in ranks)) for t in _perm_tables(n)})


def canonical_form(space: BallSpace) -> BallSpace:
    """Orbit representative under permutations of the ground set.

    The result lives on the ground set ``1..n`` and is the family whose
    sorted list of subset ranks is lexicographically least.
    """
    n = space.n
    if n > 8:
        raise InputError("canonical form is computed by brute force and supports n <= 8")
    rank = _rank(n)
    subs = subsets_in_order(n)
    best = _canonical_ranks(n, [rank[b] for b in space.balls])
    return BallSpace(GroundSet.range(n), tuple(subs[r] for r in best))


def is_isomorphic(a: BallSpace, b: BallSpace) -> bool:
    return a.n == b.n and len(a) == len(b) and canonical_form(a).balls == canonical_form(b).balls


def _space(n: int, ranks: Sequence[int]) -> BallSpace:
    subs = subsets_in_order(n)
    return BallSpace(GroundSet.range(n), tuple(subs[r] for r in ranks))


def _family_stream(n: int, canonical_only: bool) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(ranks, weight)`` where weight counts the families represented."""
    for ranks in _rank_families(n):
        if not canonical_only:
            yield ranks, 1
        elif _canonical_ranks(n, ranks) == ranks:
            yield ranks, _orbit_size(n, ranks)


def enumerate_spaces(n: int, canonical_only: bool = False) -> Iterator[BallSpace]:
    _check_n(n)
    for ranks, _ in _family_stream(n, canonical_only):
        yield _space(n, ranks)


# ------------------------------------------------------------- summaries


EQUIVALENCE_ROWS = (
    ("no condition", lambda v: True, [("S4", "S4d")]),
    ("all singletons are balls", lambda v: v["all_singletons"], [("S1", "S2"), ("S1d", "S2d"), ("S1c", "S2c")]),
    ("tree-like", lambda v: v["tree_like"], [tuple(prop_name(i, k) for k in KINDS) for i in LEVELS]),
    (
        "tree-like, all singletons are balls",
        lambda v: v["tree_like"] and v["all_singletons"],
        [("S1", "S1d", "S1c", "S2", "S2d", "S2c")]
        + [tuple(prop_name(i, k) for k in KINDS) for i in LEVELS[2:]],
    ),
    (
        "finitely intersection closed",
        lambda v: v["fin_int_closed"],
        [(prop_name(i, SystemKind.DIRECTED), prop_name(i, SystemKind.CENTERED)) for i in LEVELS],
    ),
    ("chain intersection closed", lambda v: v["chain_int_closed"], [tuple(prop_name(i, SystemKind.NEST) for i in LEVELS)]),
    ("intersection closed", lambda v: v["int_closed"], [HIERARCHY_NAMES]),
)
ROW_NAMES = tuple(r[0] for r in EQUIVALENCE_ROWS)


@dataclass
class ImplicationSummary:
    n: int
    canonical_only: bool
    spaces: int = 0
    families: int = 0
    violations: int = 0
    counts: dict = field(default_factory=lambda: {k: 0 for k in PROPERTY_NAMES})

    def merge(self, other: "ImplicationSummary") -> "ImplicationSummary":
        self.spaces += other.spaces
        self.families += other.families
        self.violations += other.violations
        for k, v in other.counts.items():
            self.counts[k] += v
        return self

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "canonical_only": self.canonical_only,
            "spaces": self.spaces,
            "families": self.families,
            "violations": self.violations,
            "counts": dict(self.counts),
        }

    def format(self) -> str:
        head = f"{self.spaces} spaces, {self.violations} violations"
        if self.canonical_only:
            head += f" (orbit representatives covering {self.families} families)"
        lines = [head]
        for k in PROPERTY_NAMES:
            lines.append(f"  {k:<16} {self.counts[k]}")
        return "\n".join(lines)


@dataclass
class RowSummary:
    name: str
    matching: int = 0
    violations: int = 0

    def to_dict(self) -> dict:
        return {"row": self.name, "matching": self.matching, "violations": self.violations}


@dataclass
class EquivalenceSummary:
    n: int
    canonical_only: bool
    spaces: int = 0
    families: int = 0
    rows: list = field(default_factory=lambda: [RowSummary(name) for name in ROW_NAMES])

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.rows)

    def merge(self, other: "EquivalenceSummary") -> "EquivalenceSummary":
        self.spaces += other.spaces
        self.families += other.families
        for a, b in zip(self.rows, other.rows):
            a.matching += b.matching
            a.violations += b.violations
        return self

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "canonical_only": self.canonical_only,
            "spaces": self.spaces,
            "families": self.families,
            "violations": self.violations,
            "rows": [r.to_dict() for r in self.rows],
        }

    def format(self) -> str:
        lines = [f"{self.spaces} spaces, {self.violations} violations"]
        for r in self.rows:
            lines.append(f"  {r.name:<38} {r.matching:>6} spaces, {r.violations} violations")
        return "\n".join(lines)


def _implication_chunk(args) -> ImplicationSummary:
    n, canonical_only, start, stop = args
    out = ImplicationSummary(n, canonical_only)
    for ranks, weight in islice(_family_stream(n, canonical_only), start, stop):
        space = _space(n, ranks)
        report = classify(space)
        bad = validate_report(report)
        if bad:
            raise SoundnessAlarm(f"implication violated on {space}: {bad[0]}", space)
        out.spaces += 1
        out.families += weight
        for k in PROPERTY_NAMES:
            out.counts[k] += report.values[k]
    return out


def _row_violations(values: dict, groups) -> bool:
    return any(len({values[p] for p in g}) > 1 for g in groups)


def _equivalence_chunk(args) -> EquivalenceSummary:
    n, canonical_only, start, stop = args
    out = EquivalenceSummary(n, canonical_only)
    for ranks, weight in islice(_family_stream(n, canonical_only), start, stop):
        space = _space(n, ranks)
        values = classify(space).values
        out.spaces += 1
        out.families += weight
        for row, (name, cond, groups) in zip(out.rows, EQUIVALENCE_ROWS):
            if cond(values):
                row.matching += 1
                if _row_violations(values, groups):
                    raise SoundnessAlarm(f"equivalence row {name!r} violated on {space}", space)
    return out


def _stream_length(n: int, canonical_only: bool) -> int:
    if not canonical_only:
        return family_count(n)
    return sum(1 for _ in _family_stream(n, True))


def _run(worker, n: int, canonical_only: bool, jobs: int, empty):
    jobs = max(1, int(jobs))
    if jobs == 1:
        return worker((n, canonical_only, 0, None))
    total = _stream_length(n, canonical_only)
    step = -(-total // (jobs * 4))
    chunks = [(n, canonical_only, s, min(s + step, total)) for s in range(0, total, step)]
    result = empty
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(worker, chunks):
            result.merge(part)
    return result


def verify_implications(n: int, canonical_only: bool = False, jobs: int = 1) -> ImplicationSummary:
    """Classify every space on an ``n``-set and check all implications.

    Raises :class:`SoundnessAlarm` on the first violated implication.
    """
    _check_n(n)
    return _run(_implication_chunk, n, canonical_only, jobs, ImplicationSummary(n, canonical_only))


def verify_equivalence_table(n: int, canonical_only: bool = False, jobs: int = 1) -> EquivalenceSummary:
    """Check the conditional equivalences, one row per condition."""
    _check_n(n)
    return _run(_equivalence_chunk, n, canonical_only, jobs, EquivalenceSummary(n, canonical_only))


# -------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class WitnessResult:
    space: BallSpace
    report: PropertyReport
    note: str

    def to_dict(self) -> dict:
        return {
            "ground": list(self.space.ground.labels),
            "balls": [list(self.space.ground.labels_of(b)) for b in self.space.balls],
            "note": self.note,
            "report": dict(self.report.values),
        }


def find_witness(prop_a: str, prop_b: str, n: int) -> WitnessResult | None:
    """First canonical space on an ``n``-set with ``prop_a`` and not ``prop_b``.

    Returns ``None`` when the search space is exhausted.
    """
    _check_n(n)
    a, b = parse_prop_name(prop_a), parse_prop_name(prop_b)
    if a == b:
        raise InputError("witness search needs two distinct properties")
    for ranks, _ in _family_stream(n, canonical_only=True):
        space = _space(n, ranks)
        report = classify(space)
        if report.values[a] and not report.values[b]:
            return WitnessResult(space, report, f"{a} holds, {b} fails")
    return None


# ---------------------------------------------------------- oracle checks


def random_spaces(n: int, count: int, seed: int = 0) -> Iterator[BallSpace]:
    """Uniformly random nonempty families on an ``n``-set."""
    rng = random.Random(seed)
    subs = subsets_in_order(n)
    total = family_count(n)
    for _ in range(count):
        code = rng.randint(1, total)
        yield BallSpace(GroundSet.range(n), tuple(subs[i] for i in iter_bits(code)))


@dataclass
class AgreementSummary:
    checked: int = 0
    disagreements: int = 0
    first: BallSpace | None = None

    def to_dict(self) -> dict:
        return {"checked": self.checked, "disagreements": self.disagreements}


def oracle_agreement(spaces) -> AgreementSummary:
    """Compare fast and exhaustive classification on every given space."""
    out = AgreementSummary()
    for space in spaces:
        out.checked += 1
        if not classify(space, Mode.FAST).same_values(classify(space, Mode.EXHAUSTIVE)):
            out.disagreements += 1
            if out.first is None:
                out.first = space
    return out


def verify_implications_sample(n: int, count: int, seed: int = 0) -> ImplicationSummary:
    """Implication check on ``count`` random families, for ground sets too big to exhaust."""
    if not 1 <= n <= 6:
        raise InputError(f"sampled enumeration supports 1 <= n <= 6, got {n}")
    out = ImplicationSummary(n, False)
    for space in random_spaces(n, count, seed):
        report = classify(space)
        bad = validate_report(report)
        if bad:
            raise SoundnessAlarm(f"implication violated on {space}: {bad[0]}", space)
        out.spaces += 1
        out.families += 1
        for k in PROPERTY_NAMES:
            out.counts[k] += report.values[k]
    return out
