"""Closed-form 2-Ramsey criteria and explicit colorings for clique unions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .model import (
    CliqueUnion,
    FiniteColoring,
    LayerSet,
    PeriodicColoring,
    SetFamily,
    SignVector,
    TwoCliqueAnalysis,
    odd_part,
    reduce_family,
    val2,
)


class HypothesisError(ValueError):
    """Parameters outside the range a criterion covers."""


# ---------------------------------------------------------------------------
# two and three cliques


def classify_two_cliques(a1: int, t1: int, a2: int, t2: int) -> bool:
    """2-Ramsey verdict for two vertex-disjoint cliques of positive weight."""
    an = TwoCliqueAnalysis(a1, t1, a2, t2)
    r1, r2 = sorted((an.r1, an.r2))
    both_even = a1 % 2 == 0 and a2 % 2 == 0
    if r1 == r2:
        return True
    if (t1 == 0 or t2 == 0) and both_even:
        return True
    return (t1 == 1 or t2 == 1) and 2 <= r1 < r2


def classify_two_cliques_overlap(a1: int, t1: int, a2: int, t2: int, c: int) -> bool:
    """Verdict for two cliques sharing c >= 1 ground elements (a1 > a2, t_i >= 2)."""
    if not (a1 > a2 >= 1 and t1 >= 2 and t2 >= 2 and c >= 1):
        raise HypothesisError("outside theorem hypotheses (need a1 > a2 >= 1, t1, t2 >= 2, c >= 1)")
    if c > min(a1 + t1, a2 + t2):
        raise HypothesisError("overlap larger than a clique")
    if c >= 3:
        return False
    diff = a1 - a2
    if diff % 4:
        return False
    m = diff // 4
    r = (a1 + a2) % (8 * m)
    if c == 2:
        return r == 2 % (8 * m)
    residues = {x % (8 * m) for x in (0, 2, 4 * m - 2, 4 * m + 4)}
    if m % 2 == 0:
        residues |= {6 % (8 * m), (8 * m - 4) % (8 * m)}
    return r in residues


@dataclass(frozen=True)
class ThreeCliqueAnalysis:
    weights: tuple[int, int, int]
    slacks: tuple[int, int, int]
    valuations: tuple[int, ...] = field(init=False)
    odd_parts: tuple[int, ...] = field(init=False)
    e: int = field(init=False)

    def __post_init__(self):
        if len(self.weights) != 3 or len(self.slacks) != 3:
            raise ValueError("three weights and three slacks expected")
        if len(set(self.weights)) != 3:
            raise HypothesisError("theorem requires pairwise distinct weights")
        if min(self.weights) < 1:
            raise ValueError("weights must be positive")
        order = sorted(range(3), key=lambda i: -self.weights[i])
        object.__setattr__(self, "weights", tuple(self.weights[i] for i in order))
        object.__setattr__(self, "slacks", tuple(self.slacks[i] for i in order))
        object.__setattr__(self, "valuations", tuple(val2(a) for a in self.weights))
        object.__setattr__(self, "odd_parts", tuple(odd_part(a) for a in self.weights))
        object.__setattr__(self, "e", math.gcd(*self.weights))

    @classmethod
    def of(cls, u: CliqueUnion) -> "ThreeCliqueAnalysis":
        if u.s != 3 or not u.vertex_disjoint:
            raise HypothesisError("need three vertex-disjoint cliques")
        return cls(u.weights, u.slacks)

    def forced_periods(self) -> list[int]:
        """Periods every W'-avoiding 2-coloring must have, from equal valuations."""
        (a1, a2, a3), (r1, r2, r3) = self.weights, self.valuations
        out = []
        if r2 == r3:
            out.append(2 * a1)
        if r1 == r2:
            out.append(2 * a3)
        if r1 == r3:
            out.append(2 * a2)
        return out


def classify_three_cliques(analysis: ThreeCliqueAnalysis) -> bool:
    (a1, a2, a3), (t1, t2, t3) = analysis.weights, analysis.slacks
    return (
        classify_two_cliques(a1, t1, a2, t2)
        and classify_two_cliques(a1, t1, a3, t3)
        and classify_two_cliques(a2, t2, a3, t3)
    )


def p_prime_two_cliques(a1: int, a2: int) -> SetFamily:
    """{{0,|a1-a2|},{0,a1+a2}}, reduced.  Equal weights leave {{0}}."""
    if a1 < 1 or a2 < 1:
        raise ValueError("weights must be positive")
    return reduce_family([{0, abs(a1 - a2)}, {0, a1 + a2}])


# ---------------------------------------------------------------------------
# explicit colorings


def build_rrbb_coloring(m: int) -> PeriodicColoring:
    """RRBB... on [0, m-1], complemented on [m, 2m-1]; needs 4 | m."""
    if m <= 0 or m % 4:
        raise ValueError(f"m must be a positive multiple of 4, got {m}")
    first = [0, 0, 1, 1] * (m // 4)
    return PeriodicColoring(tuple(first + [1 - c for c in first]), 2)


def scale_union(u: CliqueUnion, m: int, slacks: Optional[Sequence[int]] = None) -> CliqueUnion:
    if m < 1:
        raise ValueError("scale factor must be positive")
    return u.scaled(m, slacks)


def subsample_coloring(c: PeriodicColoring, m: int) -> PeriodicColoring:
    """n -> c(m n)."""
    if m < 1:
        raise ValueError("scale factor must be positive")
    q = c.period // math.gcd(c.period, m)
    return PeriodicColoring(tuple(c(m * n) for n in range(q)), c.palette_size)


def lift_coloring(c: PeriodicColoring, m: int) -> PeriodicColoring:
    """c'(2mn + j) = c(2n) for j = 0,1 mod 4 and the other color for j = 2,3 mod 4,
    0 <= j < 2m.  Only the even positions of c are read."""
    if c.palette_size != 2:
        raise ValueError("lifting is defined for two colors")
    if m < 1:
        raise ValueError("scale factor must be positive")
    q = c.period // math.gcd(c.period, 2)
    out = []
    for n in range(q):
        base = c(2 * n)
        for j in range(2 * m):
            out.append(base if j % 4 in (0, 1) else 1 - base)
    return PeriodicColoring(tuple(out), 2)


def odd_small_slack_sign_choice(weights: Sequence[int]) -> SignVector:
    """+1 for weights 1 mod 4, -1 for weights 3 mod 4."""
    if any(a % 2 == 0 for a in weights):
        raise ValueError("all weights must be odd")
    return SignVector(tuple(1 if a % 4 == 1 else -1 for a in weights))


# ---------------------------------------------------------------------------
# local lemma arithmetic and the random block coloring


def e_enclosure(terms: int = 20) -> tuple[Fraction, Fraction]:
    """Rational lo <= e <= hi from partial sums of 1/k!."""
    lo = Fraction(0)
    fact = 1
    for k in range(terms + 1):
        if k:
            fact *= k
        lo += Fraction(1, fact)
    # tail sum_{k>N} 1/k! < 1/(N! N)
    return lo, lo + Fraction(1, fact * terms)


def lll_threshold_check(s: int) -> bool:
    """Whether 2(6s^2+1) e (3/4)^(s-1) < 1, decided exactly."""
    if s < 1:
        raise ValueError("s must be positive")
    rest = 2 * (6 * s * s + 1) * Fraction(3, 4) ** (s - 1)
    terms = 20
    while True:
        lo, hi = e_enclosure(terms)
        if rest * hi < 1:
            return True
        if rest * lo >= 1:
            return False
        terms *= 2


def sample_block_coloring(start: int, stop: int, seed: int = 0) -> FiniteColoring:
    """Random coloring of [start, stop): for every i = 0,1 mod 4 a fair coin
    colors (i, i+2) as (R,B) or (B,R).  Uses numpy's PCG64 generator."""
    if start % 4 or (stop - start) % 4:
        raise ValueError("range must consist of whole blocks (start and length divisible by 4)")
    k = (stop - start) // 4
    coins = np.random.Generator(np.random.PCG64(seed)).integers(0, 2, size=(k, 2))
    colors = np.empty((k, 4), dtype=np.int64)
    colors[:, 0] = coins[:, 0]
    colors[:, 2] = 1 - coins[:, 0]
    colors[:, 1] = coins[:, 1]
    colors[:, 3] = 1 - coins[:, 1]
    return FiniteColoring(tuple(colors.ravel().tolist()), start, 2)


def sign_translate_hits(c: FiniteColoring, weights: Sequence[int]) -> np.ndarray:
    """For each admissible b, whether some {x_i a_i} + b is monochromatic.

    b ranges over the positions with b +- max(weights) inside the interval.
    """
    col = np.asarray(c.colors, dtype=np.int8)
    amax = max(weights)
    n = len(col)
    b = np.arange(amax, n - amax)
    red = np.ones(len(b), dtype=bool)
    blue = np.ones(len(b), dtype=bool)
    for a in weights:
        lo, hi = col[b - a], col[b + a]
        red &= (lo == 0) | (hi == 0)
        blue &= (lo == 1) | (hi == 1)
    return red | blue


def sign_set(weights: Sequence[int], signs: SignVector) -> LayerSet:
    return signs.apply(weights)
