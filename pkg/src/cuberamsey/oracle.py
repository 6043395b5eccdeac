"""Brute-force ground truth on explicit hypercubes.

Vertices of Q_n are n-bit masks (bit k <=> element k of the ground set).
A copy of F in Q_n is searched as a subcube (free coordinates + base
vertex) composed with an automorphism of Q_d (coordinate permutation then
complement by a mask), which is exactly the set of embeddings Q_d -> Q_n.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .model import CliqueUnion, LayerSet, ResourceError, SetFamily, colors_from_text, colors_to_text

MAX_BRUTE_DIM = 20
MAX_CUBE_DIM = 10
COPY_WORK_BUDGET = 4_000_000_000


@dataclass(frozen=True)
class VertexSet:
    n: int
    vertices: tuple[int, ...]

    def __post_init__(self):
        verts = tuple(sorted(set(int(v) for v in self.vertices)))
        if any(not 0 <= v < 1 << self.n for v in verts):
            raise ValueError(f"vertex mask out of range for dimension {self.n}")
        object.__setattr__(self, "vertices", verts)

    def __len__(self):
        return len(self.vertices)

    def weights(self) -> LayerSet:
        return LayerSet(bin(v).count("1") for v in self.vertices)

    def as_sets(self) -> list[set[int]]:
        """1-based element sets, as subsets of [n] are usually written."""
        return [{k + 1 for k in range(self.n) if v >> k & 1} for v in self.vertices]


@dataclass(frozen=True)
class CubeColoring:
    n: int
    colors: tuple[int, ...]
    palette_size: int = 2

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != 1 << self.n:
            raise ValueError(f"need exactly 2^{self.n} colors, got {len(colors)}")
        if any(not 0 <= c < self.palette_size for c in colors):
            raise ValueError("color out of palette range")
        object.__setattr__(self, "colors", colors)

    def to_text(self) -> str:
        return colors_to_text(self.colors, self.palette_size)

    @classmethod
    def from_text(cls, text: str, palette_size: Optional[int] = None) -> "CubeColoring":
        colors, t = colors_from_text(text, palette_size)
        n = len(colors).bit_length() - 1
        if 1 << n != len(colors):
            raise ValueError(f"cube coloring length {len(colors)} is not a power of two")
        return cls(n, tuple(colors), t)


@dataclass(frozen=True)
class CopyWitness:
    free: tuple[int, ...]  # cube coordinates receiving bits 0..d-1
    base: int
    permutation: tuple[int, ...]  # Q_d coordinate k -> permutation[k]
    flip: int  # complemented after permuting

    def apply(self, v: int) -> int:
        w = 0
        for k, pk in enumerate(self.permutation):
            if v >> k & 1:
                w |= 1 << pk
        w ^= self.flip
        out = self.base
        for k, f in enumerate(self.free):
            if w >> k & 1:
                out |= 1 << f
        return out


@dataclass(frozen=True)
class SubcubeWitness:
    free: tuple[int, ...]
    base: int

    def vertices(self) -> list[int]:
        return [self.base | _spread(m, self.free) for m in range(1 << len(self.free))]


def _spread(m: int, coords: Sequence[int]) -> int:
    out = 0
    for k, c in enumerate(coords):
        if m >> k & 1:
            out |= 1 << c
    return out


def _spread_table(coords: Sequence[int]) -> np.ndarray:
    return np.array([_spread(m, coords) for m in range(1 << len(coords))], dtype=np.int64)


def _complement_masks(n: int, used: Sequence[int]) -> np.ndarray:
    rest = [k for k in range(n) if k not in set(used)]
    return _spread_table(rest)


# ---------------------------------------------------------------------------


def realize_union(u: CliqueUnion) -> VertexSet:
    """Concrete ground sets honouring the overlaps; all a_i-subsets of each."""
    grounds: list[list[int]] = [[] for _ in range(u.s)]
    nxt = 0
    for i in range(u.s):
        excl = u.orders[i] - sum(u.overlaps[i][j] for j in range(u.s) if j != i)
        grounds[i].extend(range(nxt, nxt + excl))
        nxt += excl
        for j in range(i + 1, u.s):
            c = u.overlaps[i][j]
            shared = list(range(nxt, nxt + c))
            grounds[i].extend(shared)
            grounds[j].extend(shared)
            nxt += c
    if nxt != u.dimension:
        raise ValueError("infeasible overlaps")
    verts = set()
    for g, spec in zip(grounds, u.cliques):
        for combo in itertools.combinations(g, spec.weight):
            verts.add(sum(1 << k for k in combo))
    return VertexSet(u.dimension, tuple(verts))


def simple_automorphism_image(vs: VertexSet, b: int) -> VertexSet:
    if not 0 <= b < 1 << vs.n:
        raise ValueError("flip mask out of range")
    return VertexSet(vs.n, tuple(v ^ b for v in vs.vertices))


def brute_force_w_star(vs: VertexSet) -> SetFamily:
    """Weight sets of the images under every flip A -> A ^ B, B in Q_n."""
    if vs.n > MAX_BRUTE_DIM:
        raise ResourceError(f"dimension {vs.n} exceeds brute-force limit {MAX_BRUTE_DIM}")
    verts = np.asarray(vs.vertices, dtype=np.int64)
    out = set()
    chunk = 1 << 14
    for start in range(0, 1 << vs.n, chunk):
        bs = np.arange(start, min(start + chunk, 1 << vs.n), dtype=np.int64)
        w = np.bitwise_count(verts[None, :] ^ bs[:, None])
        for row in np.unique(np.sort(w, axis=1), axis=0):
            out.add(LayerSet(row.tolist()))
    return SetFamily(out)


@functools.lru_cache(maxsize=256)
def _automorphism_images(vs: VertexSet) -> tuple[np.ndarray, list[tuple[tuple[int, ...], int]]]:
    """Distinct images of vs under Aut(Q_d), as sorted rows, with one
    (permutation, flip) producing each."""
    d = vs.n
    verts = np.asarray(vs.vertices, dtype=np.int64)
    bits = [(verts >> k) & 1 for k in range(d)]
    flips = np.arange(1 << d, dtype=np.int64)
    seen: dict[bytes, int] = {}
    rows, how = [], []
    for perm in itertools.permutations(range(d)):
        permuted = np.zeros_like(verts)
        for k, pk in enumerate(perm):
            permuted |= bits[k] << pk
        imgs = np.sort(permuted[None, :] ^ flips[:, None], axis=1)
        for b, row in enumerate(imgs):
            key = row.tobytes()
            if key not in seen:
                seen[key] = len(rows)
                rows.append(row)
                how.append((perm, b))
    order = sorted(range(len(rows)), key=lambda i: tuple(rows[i]))
    return np.array([rows[i] for i in order]), [how[i] for i in order]


def contains_monochromatic_copy(cc: CubeColoring, vs: VertexSet) -> Optional[CopyWitness]:
    """First copy (canonical order) of vs inside one color class, or None."""
    n, d = cc.n, vs.n
    if d > n:
        raise ValueError("pattern dimension exceeds cube dimension")
    if n > MAX_CUBE_DIM:
        raise ResourceError(f"cube dimension {n} exceeds limit {MAX_CUBE_DIM}")
    images, how = _automorphism_images(vs)
    n_free = sum(1 for _ in itertools.combinations(range(n), d))
    work = n_free * (1 << (n - d)) * images.size
    if work > COPY_WORK_BUDGET:
        raise ResourceError(f"copy search needs ~{work} checks, budget {COPY_WORK_BUDGET}")
    colors = np.asarray(cc.colors, dtype=np.int8)
    for free in itertools.combinations(range(n), d):
        mapped = _spread_table(free)[images]
        bases = _complement_masks(n, free)
        cols = colors[bases[:, None, None] | mapped[None, :, :]]
        mono = np.all(cols == cols[:, :, :1], axis=2)
        hits = np.argwhere(mono)
        if len(hits):
            bi, ii = hits[0]
            perm, flip = how[ii]
            return CopyWitness(free, int(bases[bi]), perm, flip)
    return None


def layered_coloring(c: Union[Callable[[int], int], Sequence[int]], n: int, palette_size: int = 2) -> CubeColoring:
    """Color vertex v by c(|v|)."""
    f = c if callable(c) else c.__getitem__
    by_layer = [f(k) for k in range(n + 1)]
    return CubeColoring(n, tuple(by_layer[bin(v).count("1")] for v in range(1 << n)), palette_size)


def find_layered_subcube(cc: CubeColoring, s: int) -> Optional[SubcubeWitness]:
    """First s-subcube (canonical order) whose coloring is constant on each of
    its own layers, or None."""
    n = cc.n
    if s > n:
        raise ValueError("subcube dimension exceeds cube dimension")
    if n > MAX_CUBE_DIM:
        raise ResourceError(f"cube dimension {n} exceeds limit {MAX_CUBE_DIM}")
    colors = np.asarray(cc.colors, dtype=np.int8)
    rel = np.arange(1 << s)
    layers = [np.flatnonzero(np.bitwise_count(rel) == k) for k in range(s + 1)]
    for free in itertools.combinations(range(n), s):
        bases = _complement_masks(n, free)
        cols = colors[bases[:, None] | _spread_table(free)[None, :]]
        ok = np.ones(len(bases), dtype=bool)
        for idx in layers:
            part = cols[:, idx]
            ok &= np.all(part == part[:, :1], axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return SubcubeWitness(free, int(bases[hits[0]]))
    return None


def monochromatic_member(colors: Sequence[int], fam: Iterable[LayerSet]) -> Optional[LayerSet]:
    """A member (taken at its own position) lying in [0, len) and monochromatic."""
    for e in fam:
        if e[0] >= 0 and e[-1] < len(colors) and len({colors[x] for x in e}) == 1:
            return e
    return None
