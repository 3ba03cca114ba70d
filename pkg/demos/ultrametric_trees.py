"""
Ultrametric balls form trees
============================

Any two ultrametric balls that meet are nested. Build the three ball
families of a small ultrametric, then take a product.
"""

import numpy as np

from ballspaces import UltrametricInstance, classify, is_tree_like, ultrametric_balls
from ballspaces.instances import ultrametric_product

u = UltrametricInstance.from_numbers("abc", {("a", "b"): 1, ("a", "c"): 2, ("b", "c"): 2})
print(np.array(u.u))

for variant in ("Precise", "Closed", "Full"):
    family = ultrametric_balls(u, variant)
    print(f"{variant:<8}", family.describe(), "tree-like:", is_tree_like(family))

# The max-product of two copies is again a classical ultrametric.
two = UltrametricInstance.from_numbers("xy", {("x", "y"): 1})
p = ultrametric_product([two, two], "max")
full = ultrametric_balls(p, "Full")
print(full.describe())
print("S*:", classify(full).s_star, "tree-like:", is_tree_like(full))

# The coordinatewise product takes values in a partially ordered set,
# so its value set need not be a chain.
q = ultrametric_product([u, two], "prod")
print("classical:", q.classical, "closed balls:", len(ultrametric_balls(q, "Closed")))
