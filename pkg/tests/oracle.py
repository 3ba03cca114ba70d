"""Brute-force reference implementations built on frozensets.

Nothing here imports the package under test. Every function follows the
literal definition, enumerating subfamilies where the definition
quantifies over systems of balls.
"""

from __future__ import annotations

from itertools import combinations, product


def fs(*items):
    return frozenset(items)


def family(*sets):
    return frozenset(frozenset(s) for s in sets)


def subfamilies(balls):
    balls = sorted(balls, key=lambda b: (len(b), sorted(map(str, b))))
    for k in range(1, len(balls) + 1):
        for sub in combinations(balls, k):
            yield sub


def meet(sets):
    sets = list(sets)
    out = set(sets[0])
    for s in sets[1:]:
        out &= s
    return frozenset(out)


def is_nest(coll):
    return all(a <= b or b <= a for a in coll for b in coll)


def is_directed(coll):
    return all(any(c <= (a & b) for c in coll) for a in coll for b in coll)


def is_centered(coll):
    return all(meet(sub) for sub in subfamilies(coll))


def balls_inside(balls, region):
    return [b for b in balls if b <= region]


def maximal(sets):
    return [a for a in sets if not any(a < b for b in sets)]


def level_ok(balls, region, level):
    if not region:
        return False
    inside = balls_inside(balls, region)
    if level == 1:
        return True
    if level == 2:
        return bool(inside)
    if level == 3:
        return bool(maximal(inside))
    if level == 4:
        return any(all(c <= b for c in inside) for b in inside)
    return region in balls


SYSTEMS = {"": is_nest, "d": is_directed, "c": is_centered}


def hierarchy(balls):
    """Literal values of the fifteen hierarchy properties."""
    balls = frozenset(balls)
    systems = {k: [s for s in subfamilies(balls) if test(s)] for k, test in SYSTEMS.items()}
    out = {}
    for level in range(1, 6):
        for k, syss in systems.items():
            out[f"S{level}{k}"] = all(level_ok(balls, meet(s), level) for s in syss)
    return out


def semilattice(balls):
    return frozenset(r for sub in subfamilies(balls) if (r := meet(sub)))


def tree_like(balls):
    return all(not (a & b) or a <= b or b <= a for a in balls for b in balls)


def int_closed(balls):
    return semilattice(balls) <= frozenset(balls)


def fin_int_closed(balls):
    return all(not (a & b) or (a & b) in balls for a in balls for b in balls)


def s_star_star(ground, balls):
    return bool(meet(balls)) and int_closed(balls)


def all_families(ground):
    ground = list(ground)
    subsets = [frozenset(c) for k in range(1, len(ground) + 1) for c in combinations(ground, k)]
    for k in range(1, len(subsets) + 1):
        for fam in combinations(subsets, k):
            yield frozenset(fam)


def permute(balls, mapping):
    return frozenset(frozenset(mapping[x] for x in b) for b in balls)


def isomorphic(ground, a, b):
    ground = list(ground)
    for p in product(ground, repeat=len(ground)):
        if len(set(p)) != len(ground):
            continue
        if permute(a, dict(zip(ground, p))) == frozenset(b):
            return True
    return False


# -------------------------------------------------------- constructions


def union_closure(balls):
    out = set(balls)
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for b in list(out):
                if a | b not in out:
                    out.add(a | b)
                    changed = True
    return frozenset(out)


def pr_product(spaces):
    """Products with a ball in one coordinate and whole factors elsewhere, plus the whole product."""
    grounds = [g for g, _ in spaces]
    out = {frozenset(product(*grounds))}
    for k, (_, balls) in enumerate(spaces):
        for b in balls:
            factors = list(grounds)
            factors[k] = b
            out.add(frozenset(product(*factors)))
    return frozenset(out)


def bpr_product(spaces):
    return frozenset(frozenset(product(*combo)) for combo in product(*[balls for _, balls in spaces]))


# -------------------------------------------------------------- instances


def metric_ball(points, d, x, r):
    return frozenset(y for y in points if d(x, y) <= r)


def ck_ball(points, d, phi, x):
    return frozenset(y for y in points if d(x, y) <= phi[x] - phi[y])


def interval(leq, points, a, b):
    return frozenset(c for c in points if (a is None or leq(a, c)) and (b is None or leq(c, b)))


def segments(leq, points):
    ends = [None] + list(points)
    return frozenset(s for a in ends for b in ends if (s := interval(leq, points, a, b)))


def principal_final(leq, points):
    return frozenset(frozenset(c for c in points if leq(a, c)) for a in points)


def has_sup(leq, points, subset):
    ub = [u for u in points if all(leq(s, u) for s in subset)]
    return any(all(leq(u, v) for v in ub) for u in ub)


def has_inf(leq, points, subset):
    lb = [u for u in points if all(leq(u, s) for s in subset)]
    return any(all(leq(v, u) for v in lb) for u in lb)


def is_complete_lattice(leq, points):
    subsets = [c for k in range(1, len(points) + 1) for c in combinations(points, k)]
    return all(has_sup(leq, points, s) and has_inf(leq, points, s) for s in subsets)


def fixed_points(f):
    return frozenset(x for x, y in f.items() if x == y)


def image(f, s):
    return frozenset(f[x] for x in s)
