"""
Fixed points from ball spaces
=============================

Run the greedy descent through f-closed balls, check a theorem with all
its parts, and look at the fixed-point set as a ball space of its own.
"""

from ballspaces import BallSpace, SelfMap, greedy_fixed_point, knaster_tarski_suite, verify_theorem

space = BallSpace.from_labels("123", [[1], [1, 2], [1, 2, 3]])
f = SelfMap.parse("1:1,2:1,3:2", space.ground)

# Descend from the whole set: X, then f(X) = {1,2}, then {1}.
result = greedy_fixed_point(space, f, space.full)
print(" > ".join(space.ground.format(b) for b in result.trace))
print("fixed point:", space.ground.labels[result.fixed_point])

print(verify_theorem("Basic1b", f, space=space).summary())

# A swap on two overlapping balls has nowhere to go.
I1 = BallSpace.from_labels("123", [[1, 2], [2, 3]])
swap = SelfMap.parse("1:2,2:1,3:3", I1.ground)
stuck = greedy_fixed_point(I1, swap, I1.ground.subset("12"))
print("found:", stuck.found, "stuck at", I1.ground.format(stuck.terminal))

# Restricting the balls to Fix(f) gives an S* space again.
print(knaster_tarski_suite(space, f).format(space.ground))
