"""Decide whether a finite family of integer sets is t-translate-Ramsey.

The family is normalized, stripped of members containing a translate of
another member, and divided by the gcd g of all its elements (translates
never leave a residue class mod g, so classes are colored independently).
The reduced family of width d is then run through a window automaton:

* states are colorings of d consecutive integers, encoded as base-t
  integers with the newest color in the lowest digit;
* a transition appends a color and is valid iff no member, placed with its
  maximum on the new position, becomes monochromatic.

Iterating ``S <- successors(S)`` from all valid windows shrinks S to a
fixpoint.  An empty fixpoint means every long enough interval is forced
(and the iteration count gives the exact forcing length); a nonempty one
contains a cycle, i.e. a periodic avoiding coloring.
"""

from __future__ import annotations

import functools
import math
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .model import (
    AvoidingWitness,
    Decision,
    FiniteColoring,
    ForcingLength,
    LayerSet,
    PeriodicColoring,
    ResourceError,
    SetFamily,
    normalize,
    reduce_family,
)

DEFAULT_MAX_STATES = 1 << 24
GIRTH_NODE_LIMIT = 200_000


def default_max_states() -> int:
    return int(os.environ.get("CUBERAMSEY_MAX_STATES", DEFAULT_MAX_STATES))


# ---------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ReducedProblem:
    family: SetFamily
    palette_size: int
    gcd_modulus: int
    reduced_family: SetFamily
    window_width: int

    @property
    def has_singleton(self) -> bool:
        return any(len(s) == 1 for s in self.family)


def prune_translates(fam: Iterable[Iterable[int]]) -> SetFamily:
    """Normalize and drop every member containing a translate of another."""
    return reduce_family(fam)


def gcd_reduce(fam: Iterable[Iterable[int]], t: int) -> ReducedProblem:
    family = prune_translates(fam)
    if not family:
        raise ValueError("vacuous family")
    g = 0
    for s in family:
        for x in s:
            g = math.gcd(g, x)
    if g == 0:
        # only {0} survives
        return ReducedProblem(family, t, 1, family, 0)
    reduced = SetFamily(LayerSet(x // g for x in s) for s in family)
    return ReducedProblem(family, t, g, reduced, reduced.max_diameter)


def n_T_upper_bound(fam: Iterable[Iterable[int]], t: int) -> int:
    d = SetFamily(normalize(s) for s in fam).max_diameter
    return d * (t**d + 1)


def lift_witness(w: PeriodicColoring, g: int) -> PeriodicColoring:
    """Use the reduced coloring on every residue class: c(n) = w(n // g)."""
    p = w.period
    return PeriodicColoring(tuple(w.colors[(k // g) % p] for k in range(g * p)), w.palette_size)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Violation:
    member: LayerSet
    offset: int
    color: int

    def __str__(self):
        return f"{self.member.shifted(self.offset)} is monochromatic (color {self.color})"


@dataclass(frozen=True)
class Verification:
    violation: Optional[Violation] = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __bool__(self):
        return self.ok


def _first_mono(colors: np.ndarray, fam: SetFamily, offsets: np.ndarray, periodic: bool):
    n = len(colors)
    for member in fam:
        elems = np.asarray(member, dtype=np.int64)
        idx = offsets[:, None] + elems[None, :]
        if periodic:
            idx %= n
        cols = colors[idx]
        mono = np.all(cols == cols[:, :1], axis=1)
        hits = np.flatnonzero(mono)
        if hits.size:
            j = int(offsets[hits[0]])
            return Violation(member, j, int(cols[hits[0], 0]))
    return None


def verify_coloring(c: PeriodicColoring, fam: Iterable[Iterable[int]]) -> Verification:
    """Check every translate of every member over one full period."""
    fam = SetFamily(fam)
    colors = np.asarray(c.colors, dtype=np.int64)
    return Verification(_first_mono(colors, fam, np.arange(c.period, dtype=np.int64), True))


def verify_finite(c: FiniteColoring, fam: Iterable[Iterable[int]]) -> Verification:
    """Check every translate lying inside the colored interval."""
    fam = SetFamily(normalize(s) for s in fam)
    colors = np.asarray(c.colors, dtype=np.int64)
    for member in fam:
        span = len(colors) - member.diameter
        if span <= 0:
            continue
        v = _first_mono(colors, SetFamily([member]), np.arange(span, dtype=np.int64), False)
        if v is not None:
            return Verification(Violation(v.member, v.offset + c.offset, v.color))
    return Verification()


# ---------------------------------------------------------------------------
# window automaton


class WindowAutomaton:
    """Valid-transition structure for a normalized family of width >= 1."""

    def __init__(self, fam: SetFamily, t: int, max_states: Optional[int] = None):
        self.family = fam
        self.t = t
        self.d = fam.max_diameter
        if self.d < 1:
            raise ValueError("window automaton needs a member of positive diameter")
        if (self.d + 1) * math.log2(t) > 62:
            raise ResourceError(f"window of width {self.d} with {t} colors does not fit in 64 bits")
        self.max_states = default_max_states() if max_states is None else max_states
        self.size = t**self.d
        # (diameter, digit offsets counted back from the newest position)
        self.checks = [(s.diameter, [s.diameter - e for e in s]) for s in fam]

    def _digit(self, x: np.ndarray, k: int) -> np.ndarray:
        if self.t == 2:
            return (x >> k) & 1
        return (x // self.t**k) % self.t

    def _valid(self, ext: np.ndarray, length: int) -> np.ndarray:
        """Mask of extended colorings (``length`` colors, newest last) with no
        monochromatic member ending at the newest position."""
        ok = np.ones(ext.shape, dtype=bool)
        for diam, back in self.checks:
            if diam >= length:
                continue
            if self.t == 2:
                mask = sum(1 << k for k in back)
                v = ext & mask
                ok &= (v != 0) & (v != mask)
            else:
                first = self._digit(ext, back[0])
                same = np.ones(ext.shape, dtype=bool)
                for k in back[1:]:
                    same &= self._digit(ext, k) == first
                ok &= ~same
        return ok

    def _budget(self, n: int):
        if n > self.max_states:
            raise ResourceError(f"automaton needs {n} states, budget is {self.max_states}")

    def extend(self, states: np.ndarray, length: int) -> np.ndarray:
        """Valid one-color extensions of colorings with ``length`` colors
        (only the last d of which are stored)."""
        self._budget(len(states) * self.t)
        ext = (states[:, None] * self.t + np.arange(self.t, dtype=np.int64)[None, :]).ravel()
        ext = ext[self._valid(ext, length + 1)]
        if length + 1 > self.d:
            ext = np.unique(ext % self.size)
        return ext

    def fixpoint(self) -> tuple[np.ndarray, int]:
        """Iterate from single colors.  Returns (states, L): an empty array
        with L the longest valid coloring length, or the nonempty fixpoint
        with L the length at which it was reached."""
        cur = np.arange(self.t, dtype=np.int64)
        length = 1
        while True:
            nxt = self.extend(cur, length)
            if len(nxt) == 0:
                return nxt, length
            if length >= self.d and len(nxt) == len(cur) and np.array_equal(nxt, cur):
                return cur, length
            cur = nxt
            if length + 1 == self.d:
                cur = np.sort(cur)
            length += 1

    def successors(self, states: np.ndarray, within: np.ndarray) -> np.ndarray:
        """(len(states), t) array of successor indices into ``within``, -1 if none."""
        out = np.full((len(states), self.t), -1, dtype=np.int64)
        for c in range(self.t):
            ext = states * self.t + c
            ok = self._valid(ext, self.d + 1)
            nxt = ext % self.size
            pos = np.searchsorted(within, nxt)
            pos_c = np.minimum(pos, len(within) - 1)
            hit = ok & (within[pos_c] == nxt)
            out[hit, c] = pos_c[hit]
        return out

    def prune(self, states: np.ndarray) -> np.ndarray:
        """Repeatedly drop states without a successor inside the set."""
        states = np.sort(states)
        while len(states):
            succ = self.successors(states, states)
            keep = (succ >= 0).any(axis=1)
            if keep.all():
                break
            states = states[keep]
        return states

    def window_table(self, states: np.ndarray, p: int) -> np.ndarray:
        """Colors of window positions 0..p-1 for each state, one row per state."""
        return np.stack([self._digit(states, self.d - 1 - j) for j in range(p)], axis=1)

    def window_colors(self, x: int) -> list[int]:
        """Colors of window positions 0..d-1 (oldest first)."""
        return [int(x // self.t ** (self.d - 1 - j) % self.t) for j in range(self.d)]

    # -- cycles ---------------------------------------------------------

    def periodic_windows(self, states: np.ndarray, p: int) -> np.ndarray:
        """States whose window is p-periodic (p < d)."""
        same = np.ones(states.shape, dtype=bool)
        for k in range(self.d - p):
            same &= self._digit(states, k) == self._digit(states, k + p)
        return states[same]

    def shortest_cycle(self, states: np.ndarray) -> PeriodicColoring:
        states = np.sort(states)
        for p in range(1, self.d + 1):
            cand = self.periodic_windows(states, p) if p < self.d else states
            if len(cand) == 0:
                continue
            table = self.window_table(cand, p)
            ok = np.flatnonzero(_periodic_ok(table, self.family))
            if ok.size:
                return PeriodicColoring(tuple(int(c) for c in table[ok[0]]), self.t)
        succ = self.successors(states, states)
        if len(states) <= GIRTH_NODE_LIMIT:
            cyc = _girth_cycle(succ)
        else:
            cyc = _walk_cycle(succ)
        # node i stands for the window ending at its newest color
        colors = tuple(int(states[i] % self.t) for i in cyc)
        w = PeriodicColoring(colors, self.t).primitive()
        assert verify_coloring(w, self.family), "cycle does not verify"
        return w

    def closed_walks(self, states: np.ndarray, p: int, budget: int) -> list[tuple[int, ...]]:
        """Colorings of Z_p (p >= d) whose windows all lie in ``states``.

        Positions 0..d-1 are the start window, d..p-1 are chosen freely along
        valid transitions, and the next d colors must repeat the start window.
        """
        states = np.sort(states)
        succ = self.successors(states, states)
        free = p - self.d
        out = []
        steps = 0
        for start in range(len(states)):
            first = self.window_colors(int(states[start]))
            stack = [(start, 0, ())]
            while stack:
                node, depth, chosen = stack.pop()
                steps += 1
                if steps > budget:
                    raise ResourceError(f"witness enumeration exceeded {budget} search steps")
                if depth == p:
                    if node == start:
                        out.append(tuple(first) + chosen)
                    continue
                if depth >= free:
                    nxt = succ[node, first[depth - free]]
                    if nxt >= 0:
                        stack.append((int(nxt), depth + 1, chosen))
                    continue
                for c in range(self.t - 1, -1, -1):
                    nxt = succ[node, c]
                    if nxt >= 0:
                        stack.append((int(nxt), depth + 1, chosen + (c,)))
        return out


def _periodic_ok(table: np.ndarray, fam: SetFamily) -> np.ndarray:
    """Row mask: the row, repeated with period len(row), avoids every member."""
    p = table.shape[1]
    ok = np.ones(len(table), dtype=bool)
    for member in fam:
        for j in range(p):
            cols = table[:, [(j + e) % p for e in member]]
            ok &= ~np.all(cols == cols[:, :1], axis=1)
    return ok


def _girth_cycle(succ: np.ndarray) -> list[int]:
    """A shortest directed cycle; ties go to the smallest start node."""
    n = len(succ)
    adj = [[int(v) for v in row if v >= 0] for row in succ]
    best: Optional[list[int]] = None
    for s in range(n):
        limit = len(best) if best else n + 1
        parent = {s: -1}
        frontier = deque([(s, 0)])
        found = None
        while frontier and found is None:
            u, dist = frontier.popleft()
            if dist + 1 >= limit:
                break
            for v in adj[u]:
                if v == s:
                    found = u
                    break
                if v not in parent:
                    parent[v] = u
                    frontier.append((v, dist + 1))
        if found is not None:
            path = []
            u = found
            while u != -1:
                path.append(u)
                u = parent[u]
            cyc = path[::-1]
            if best is None or len(cyc) < len(best):
                best = cyc
    assert best is not None
    return best


def _walk_cycle(succ: np.ndarray) -> list[int]:
    seen: dict[int, int] = {}
    order = []
    u = 0
    while u not in seen:
        seen[u] = len(order)
        order.append(u)
        u = int(next(v for v in succ[u] if v >= 0))
    return order[seen[u]:]


# ---------------------------------------------------------------------------
# decisions


@dataclass(frozen=True)
class _Outcome:
    is_ramsey: bool
    n_min: Optional[int]
    witness: Optional[PeriodicColoring]


@functools.lru_cache(maxsize=65536)
def _solve_reduced(fam: SetFamily, t: int, max_states: int) -> _Outcome:
    if any(len(s) == 1 for s in fam):
        return _Outcome(True, 1, None)
    auto = WindowAutomaton(fam, t, max_states)
    states, length = auto.fixpoint()
    if len(states) == 0:
        return _Outcome(True, length + 1, None)
    states = auto.prune(states)
    return _Outcome(False, None, auto.shortest_cycle(states))


def decide(fam: Iterable[Iterable[int]], t: int = 2, max_states: Optional[int] = None) -> Decision:
    fam = SetFamily(fam)
    if not fam:
        raise ValueError("vacuous family")
    if t < 2:
        raise ValueError("need at least two colors")
    max_states = default_max_states() if max_states is None else max_states
    rp = gcd_reduce(fam, t)
    upper = n_T_upper_bound(fam, t)
    out = _solve_reduced(rp.reduced_family, t, max_states)
    g = rp.gcd_modulus
    if out.is_ramsey:
        n_min = g * (out.n_min - 1) + 1
        return Decision(True, ForcingLength(n_min, upper), g, upper)
    witness = lift_witness(out.witness, g)
    check = verify_coloring(witness, fam)
    if not check:
        raise AssertionError(f"internal error: witness fails ({check.violation})")
    return Decision(False, AvoidingWitness(witness), g, upper)


# ---------------------------------------------------------------------------
# witness enumeration


def canonical_form(colors: tuple[int, ...]) -> tuple[int, ...]:
    """Least rotation after renaming colors in order of first appearance."""
    p = len(colors)
    best = None
    for r in range(p):
        rot = colors[r:] + colors[:r]
        names: dict[int, int] = {}
        relabeled = tuple(names.setdefault(c, len(names)) for c in rot)
        if best is None or relabeled < best:
            best = relabeled
    return best


def _minimal_period(colors: tuple[int, ...]) -> int:
    p = len(colors)
    return next(q for q in range(1, p + 1) if p % q == 0 and colors == colors[q:] + colors[:q])


def enumerate_witnesses(
    fam: Iterable[Iterable[int]],
    t: int = 2,
    max_period: int = 64,
    max_states: Optional[int] = None,
    search_budget: int = 5_000_000,
) -> list[PeriodicColoring]:
    """Avoiding periodic colorings up to translation and color permutation.

    Classes are formed on the gcd-reduced family: each returned coloring is
    a reduced witness (minimal period <= max_period // g) used identically
    on every residue class mod g.  Colorings that use different reduced
    witnesses, or shifted copies, on different classes are not listed.
    """
    fam = SetFamily(fam)
    max_states = default_max_states() if max_states is None else max_states
    rp = gcd_reduce(fam, t)
    if rp.has_singleton:
        return []
    auto = WindowAutomaton(rp.reduced_family, t, max_states)
    states, _ = auto.fixpoint()
    if len(states) == 0:
        return []
    states = auto.prune(states)
    g = rp.gcd_modulus
    classes: set[tuple[int, ...]] = set()
    for p in range(1, max_period // g + 1):
        if p < auto.d:
            table = auto.window_table(auto.periodic_windows(states, p), p)
            cands = [tuple(int(c) for c in row) for row in table]
        else:
            cands = auto.closed_walks(states, p, search_budget)
        for colors in cands:
            if _minimal_period(colors) != p:
                continue
            if verify_coloring(PeriodicColoring(colors, t), rp.reduced_family):
                classes.add(canonical_form(colors))
    ordered = sorted(classes, key=lambda c: (len(c), c))
    return [lift_witness(PeriodicColoring(c, t), g) for c in ordered]
