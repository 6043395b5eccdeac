"""Layer sets met by the images of a clique union under flips A -> A ^ B.

A flip B is summarised by a FlipProfile: |B|, and |B meeting clique i| for
each clique.  Clique i (weight a, slack t) then meets the layers
[max(a - 2b_i, -a), min(a, a + 2(t - b_i))] in steps of two, shifted by |B|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .model import CliqueUnion, LayerSet, SetFamily, normalize, reduce_family


@dataclass(frozen=True)
class FlipProfile:
    b: int
    per_clique: tuple[int, ...]
    outside: int = 0

    @property
    def is_principal(self) -> bool:
        return self.outside == 0

    def __str__(self):
        inner = ",".join(map(str, self.per_clique))
        return f"(b={self.b}; {inner}; outside={self.outside})"


def interval_bounds(a: int, t: int, b_i: int) -> tuple[int, int]:
    """Relative (unshifted) end points of the layers met by one clique."""
    if not 0 <= b_i <= a + t:
        raise ValueError(f"flips inside clique must lie in [0, {a + t}], got {b_i}")
    return max(a - 2 * b_i, -a), min(a, a + 2 * (t - b_i))


def clique_layer_interval(a: int, t: int, b_i: int, b: int) -> LayerSet:
    if b < b_i:
        raise ValueError(f"total flips {b} smaller than flips inside the clique {b_i}")
    lo, hi = interval_bounds(a, t, b_i)
    return LayerSet(range(lo + b, hi + b + 1, 2))


def dichotomy_case(a: int, t: int, b_i: int) -> str:
    """Which alternative holds for one clique: 'extreme' when -a or +a (relative)
    is among the layers met, otherwise 'inner' (which forces t < b_i < a)."""
    lo, hi = interval_bounds(a, t, b_i)
    if lo == -a or hi == a:
        return "extreme"
    return "inner"


def profile_is_feasible(u: CliqueUnion, fp: FlipProfile, dim: Optional[int] = None) -> bool:
    dim = u.dimension if dim is None else dim
    if len(fp.per_clique) != u.s or fp.outside < 0 or fp.outside > dim - u.dimension:
        return False
    if any(not 0 <= bi <= o for bi, o in zip(fp.per_clique, u.orders)):
        return False
    if u.vertex_disjoint:
        return fp.b == sum(fp.per_clique) + fp.outside
    if u.s != 2:
        return False
    c = u.overlaps[0][1]
    (b1, b2), (o1, o2) = fp.per_clique, u.orders
    shared = b1 + b2 - (fp.b - fp.outside)
    return (
        0 <= shared <= c
        and 0 <= b1 - shared <= o1 - c
        and 0 <= b2 - shared <= o2 - c
    )


def embedding_layers(u: CliqueUnion, fp: FlipProfile, dim: Optional[int] = None) -> LayerSet:
    """E(b; b_1..b_s): all layers met by the image of the union."""
    if not profile_is_feasible(u, fp, dim):
        raise ValueError(f"flip profile {fp} is not realizable for {u}")
    out: set[int] = set()
    for spec, bi in zip(u.cliques, fp.per_clique):
        out.update(clique_layer_interval(spec.weight, spec.slack, bi, fp.b))
    return LayerSet(out)


def enumerate_overlap_profiles(u: CliqueUnion, dim: Optional[int] = None) -> list[FlipProfile]:
    """Profiles of two overlapping cliques: o shared flips, x_i exclusive flips."""
    if u.s != 2:
        raise ValueError("only pairwise overlap supported")
    c = u.overlaps[0][1]
    if c < 1:
        raise ValueError("cliques do not overlap")
    dim = u.dimension if dim is None else dim
    spare = dim - u.dimension
    if spare < 0:
        raise ValueError(f"dimension {dim} smaller than the ground set {u.dimension}")
    o1, o2 = u.orders
    out = []
    for outside in range(spare + 1):
        for o in range(c + 1):
            for x1 in range(o1 - c + 1):
                for x2 in range(o2 - c + 1):
                    out.append(FlipProfile(x1 + x2 + o + outside, (x1 + o, x2 + o), outside))
    return out


def enumerate_profiles(u: CliqueUnion, dim: Optional[int] = None) -> Iterator[FlipProfile]:
    if not u.vertex_disjoint:
        yield from enumerate_overlap_profiles(u, dim)
        return
    dim = u.dimension if dim is None else dim
    spare = dim - u.dimension
    if spare < 0:
        raise ValueError(f"dimension {dim} smaller than the ground set {u.dimension}")
    for outside in range(spare + 1):
        for bs in itertools.product(*(range(o + 1) for o in u.orders)):
            yield FlipProfile(sum(bs) + outside, bs, outside)


def w_star_witnesses(u: CliqueUnion, dim: Optional[int] = None) -> dict[LayerSet, FlipProfile]:
    """Every layer set met by some flip, with the first profile producing it."""
    found: dict[LayerSet, FlipProfile] = {}
    for fp in enumerate_profiles(u, dim):
        e = _layers_unchecked(u, fp)
        if e not in found:
            found[e] = fp
    return found


def _layers_unchecked(u: CliqueUnion, fp: FlipProfile) -> LayerSet:
    out: set[int] = set()
    for spec, bi in zip(u.cliques, fp.per_clique):
        lo, hi = interval_bounds(spec.weight, spec.slack, bi)
        out.update(range(lo + fp.b, hi + fp.b + 1, 2))
    return LayerSet(out)


def w_star(u: CliqueUnion, dim: Optional[int] = None) -> SetFamily:
    return SetFamily(w_star_witnesses(u, dim))


def _relative_masks(u: CliqueUnion) -> set[int]:
    """Bitmasks of the unshifted unions over all feasible per-clique counts.

    The common shift by |B| is irrelevant once sets are normalized, so only
    the per-clique counts matter.  Bit k stands for layer k - max weight.
    """
    base = max(u.weights)
    per_clique = []
    for spec in u.cliques:
        masks = []
        for bi in range(spec.order + 1):
            lo, hi = interval_bounds(spec.weight, spec.slack, bi)
            m = 0
            for x in range(lo, hi + 1, 2):
                m |= 1 << (x + base)
            masks.append(m)
        per_clique.append(masks)
    if u.vertex_disjoint:
        states = {0}
        for masks in per_clique:
            states = {m | r for m in states for r in set(masks)}
        return states
    return {
        per_clique[0][fp.per_clique[0]] | per_clique[1][fp.per_clique[1]]
        for fp in enumerate_overlap_profiles(u)
    }


def _mask_to_normalized(m: int) -> LayerSet:
    m >>= (m & -m).bit_length() - 1
    return LayerSet(i for i in range(m.bit_length()) if m >> i & 1)


def w_prime(u: CliqueUnion) -> SetFamily:
    """Normalized, inclusion-minimal layer sets of all flips."""
    return reduce_family(_mask_to_normalized(m) for m in _relative_masks(u))


def principal_profiles(u: CliqueUnion) -> list[FlipProfile]:
    """Feasible profiles fixing or fully flipping every clique, nothing outside."""
    out = []
    for bs in itertools.product(*((0, o) for o in u.orders)):
        if u.vertex_disjoint:
            fp = FlipProfile(sum(bs), bs, 0)
        else:
            if u.s != 2:
                raise ValueError("only pairwise overlap supported")
            c = u.overlaps[0][1]
            # shared flips are forced: all of them if either clique is fully flipped
            shared = c if max(bs[0], bs[1]) > 0 else 0
            fp = FlipProfile(bs[0] + bs[1] - shared, bs, 0)
        if profile_is_feasible(u, fp):
            out.append(fp)
    return out


def p_star(u: CliqueUnion) -> SetFamily:
    return SetFamily(_layers_unchecked(u, fp) for fp in principal_profiles(u))


def p_prime(u: CliqueUnion) -> SetFamily:
    """Members of W'(u) that are translates of principal layer sets."""
    principal = {normalize(e) for e in p_star(u)}
    return SetFamily(s for s in w_prime(u) if s in principal)


def min_layers(u: CliqueUnion) -> int:
    """Fewest layers any image of the union can occupy."""
    return min(len(s) for s in w_prime(u))
