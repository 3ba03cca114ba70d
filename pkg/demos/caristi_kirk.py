"""
Caristi-Kirk balls on small metric spaces
==========================================

Build the balls d(x,y) <= phi(x) - phi(y) from a distance matrix and a
potential, check the contraction conditions, and confirm that any map
satisfying the Caristi inequality has a fixed point.
"""

from fractions import Fraction
from itertools import product

import numpy as np

from ballspaces import CKInstance, MetricInstance, caristi_kirk_balls, check_bx_conditions, verify_theorem
from ballspaces.fixedpoint import all_self_maps
from ballspaces.instances import metric_grid

m = MetricInstance.from_pairs("01", {("0", "1"): 1})
c = CKInstance(m, (0, 2))
space, a = caristi_kirk_balls(c)
print([space.ground.format(b) for b in a.balls])
print(check_bx_conditions(space, a).as_dict())

# Each metric on three points with distances in {1/2, 1, 2}, as a matrix.
metrics = list(metric_grid(3))
stack = np.array([[[float(v) for v in row] for row in m.d] for m in metrics])
print(len(metrics), "metrics; mean distance matrix:")
print(stack.mean(axis=0).round(3))

# Count, over the grid of potentials, how many maps satisfy the Caristi
# condition and how many of those fix a point.
hits = fixed = 0
for m in metrics:
    for phi in product(range(3), repeat=3):
        ck = CKInstance(m, phi)
        for f in all_self_maps(3):
            check = verify_theorem("CaristiKirk", f, ck=ck)
            if check.hypotheses_hold:
                hits += 1
                fixed += bool(check.fixed_points)
print(hits, "Caristi maps,", fixed, "with a fixed point")
print(Fraction(fixed, hits))
