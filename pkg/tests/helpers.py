"""Independent brute-force references used across the test-suite.

Nothing here imports the decision engine; these are deliberately naive.
"""

import itertools


def _norm(fam):
    out = []
    for s in fam:
        s = sorted(set(s))
        out.append(tuple(x - s[0] for x in s))
    return out


def longest_avoiding(fam, t, limit):
    """Length of the longest t-coloring of [0, n) with no monochromatic
    translate of a member, by depth-first extension.  Returns ``limit`` if
    some coloring of length ``limit`` avoids everything."""
    fam = _norm(fam)
    best = 0
    colors = []

    def ok():
        n = len(colors) - 1
        for s in fam:
            top = s[-1]
            if top > n:
                continue
            pos = [n - top + x for x in s]
            if len({colors[p] for p in pos}) == 1:
                return False
        return True

    def dfs():
        nonlocal best
        best = max(best, len(colors))
        if best >= limit:
            return True
        # the first color is fixed to 0 by symmetry
        for c in range(t if colors else 1):
            colors.append(c)
            if ok() and dfs():
                return True
            colors.pop()
        return False

    dfs()
    return best


def periodic_avoids(colors, fam):
    p = len(colors)
    for s in _norm(fam):
        for j in range(p):
            if len({colors[(j + x) % p] for x in s}) == 1:
                return False
    return True


def all_periodic_colorings(p, t=2):
    return itertools.product(range(t), repeat=p)
