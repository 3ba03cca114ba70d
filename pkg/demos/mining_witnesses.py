"""
Mining separating examples
==========================

Search the small spaces for examples that separate adjacent levels of
the centered column, and check the implications on every family of
subsets of a 4-set up to relabelling.
"""

import numpy as np

from ballspaces.miner import find_witness, verify_equivalence_table, verify_implications

# S1c holds but S2c fails already on three points.
w = find_witness("S1c", "S2c", 3)
print(w.note, w.space.describe())

# Separating S3c from S4c needs a fourth point.
print(find_witness("S3c", "S4c", 3))
w = find_witness("S3c", "S4c", 4)
print(w.note, w.space.describe())

# S4c versus S5c: nothing on three points, the least example on four.
print(find_witness("S4c", "S5c", 3))
w = find_witness("S4c", "S5c", 4)
print(w.note, w.space.describe())

# Orbit representatives carry the size of their orbit, so the counts
# add up to all 32767 families.
summary = verify_implications(4, canonical_only=True)
print(summary.format().splitlines()[0])
counts = np.array([summary.counts[k] for k in ("S1c", "S2c", "S3c", "S4c", "S5c")])
print(counts, counts / summary.spaces)

table = verify_equivalence_table(4, canonical_only=True)
print(table.format())
