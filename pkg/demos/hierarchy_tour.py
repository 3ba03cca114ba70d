"""
A tour of the hierarchy
=======================

Classify a few small ball spaces and look at the full table of
properties, then summarize all 127 spaces on three points at once.
"""

import numpy as np

from ballspaces import BallSpace, SystemKind, classify
from ballspaces.hierarchy import HIERARCHY_NAMES, LEVELS, KINDS
from ballspaces.miner import enumerate_spaces

# Two overlapping balls: every finite nest has a least ball, but the
# centered system {{1,2},{2,3}} meets in {2}, which contains no ball.
I1 = BallSpace.from_labels("123", [[1, 2], [2, 3]])
report = classify(I1)
print(I1)
print("S2c:", report.s(2, SystemKind.CENTERED))
print(report.witnesses["S2c"].format(I1))

# A chain of balls satisfies everything.
I2 = BallSpace.from_labels("123", [[1], [1, 2], [1, 2, 3]])
print(I2, "S*:", classify(I2).s_star)


# The report as a 5x3 boolean grid: rows are levels, columns the kinds.
def grid(space):
    r = classify(space)
    return np.array([[r.s(i, k) for k in KINDS] for i in LEVELS])


print(grid(I1).astype(int))

# Stack the grids of every space on a 3-set and count how often each
# property holds. Nest and directed columns are full, as expected.
grids = np.stack([grid(s) for s in enumerate_spaces(3)])
print(grids.shape)
print(grids.sum(axis=0))

# The centered column is monotone down the levels.
centered = grids[:, :, 2]
assert np.all(centered[:, 1:] <= centered[:, :-1])
print(dict(zip(HIERARCHY_NAMES[2::3], centered.sum(axis=0).tolist())))
