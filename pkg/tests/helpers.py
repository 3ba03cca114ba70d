"""Conversions between package objects and the oracle's frozenset families."""

from itertools import combinations, product as cartesian

from ballspaces import BallSpace, GroundSet, InputError
from ballspaces.instances import UltrametricInstance, ValueSet


def as_sets(space: BallSpace) -> frozenset:
    """The family as a frozenset of frozensets of labels."""
    return frozenset(frozenset(space.ground.labels_of(b)) for b in space.balls)


def labels(space: BallSpace, mask: int) -> frozenset:
    return frozenset(space.ground.labels_of(mask))


def from_sets(ground, balls) -> BallSpace:
    return BallSpace.from_labels([str(x) for x in ground], [[str(x) for x in b] for b in balls])


def classical_ultrametrics(n, k=4):
    """Every valid ultrametric on n points with values in the chain 0<1<...<k-1."""
    g = GroundSet.range(n, 0)
    values = ValueSet.chain([str(i) for i in range(k)])
    pairs = list(combinations(range(n), 2))
    for choice in cartesian(range(1, k), repeat=len(pairs)):
        u = [[0] * n for _ in range(n)]
        for (i, j), v in zip(pairs, choice):
            u[i][j] = u[j][i] = v
        try:
            yield UltrametricInstance(g, values, tuple(map(tuple, u)))
        except InputError:
            continue
