"""Shared value types: clique unions, layer sets, families, colorings, decisions.

Everything here is immutable once built.  Colors are 0-based integers; the
text forms use ``R``/``B`` for two colors and decimal digits otherwise.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union


class ParseError(ValueError):
    """Malformed textual input.  ``position`` is a 0-based character offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        self.reason = message
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


class ResourceError(RuntimeError):
    """A configured search budget was exceeded."""


def val2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    return abs(n) >> val2(n)


# ---------------------------------------------------------------------------
# cliques


@dataclass(frozen=True)
class CliqueSpec:
    weight: int
    slack: int

    def __post_init__(self):
        if self.weight < 0 or self.slack < 0:
            raise ValueError(f"weight and slack must be nonnegative, got {self.weight}:{self.slack}")

    @property
    def order(self) -> int:
        return self.weight + self.slack

    def __str__(self):
        return f"{self.weight}:{self.slack}"


@dataclass(frozen=True)
class CliqueUnion:
    """Union of cliques K_{a_i+t_i}^{(a_i)} with pairwise vertex overlaps.

    ``overlaps[i][j]`` is the number of ground elements shared by cliques i
    and j.  Shared regions of different pairs are assumed disjoint, so the
    ground set size is the sum of orders minus the pairwise overlaps.
    """

    cliques: tuple[CliqueSpec, ...]
    overlaps: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        cliques = tuple(self.cliques)
        if not cliques:
            raise ValueError("a clique union needs at least one clique")
        object.__setattr__(self, "cliques", cliques)
        s = len(cliques)
        if self.overlaps is None:
            ov = tuple(tuple(cliques[i].order if i == j else 0 for j in range(s)) for i in range(s))
        else:
            ov = tuple(tuple(int(x) for x in row) for row in self.overlaps)
            if len(ov) != s or any(len(row) != s for row in ov):
                raise ValueError("overlap matrix must be s x s")
        for i in range(s):
            for j in range(s):
                if i == j:
                    if ov[i][i] != cliques[i].order:
                        raise ValueError("overlaps[i][i] must equal the order of clique i")
                    continue
                if ov[i][j] != ov[j][i]:
                    raise ValueError("overlap matrix must be symmetric")
                if not 0 <= ov[i][j] <= min(cliques[i].order, cliques[j].order):
                    raise ValueError(f"overlap {ov[i][j]} out of range for cliques {i},{j}")
            shared = sum(ov[i][j] for j in range(s) if j != i)
            if shared > cliques[i].order:
                raise ValueError(
                    f"clique {i} shares {shared} > {cliques[i].order} elements; "
                    "only pairwise overlaps with disjoint shared regions are supported"
                )
        object.__setattr__(self, "overlaps", ov)

    @classmethod
    def disjoint(cls, *pairs: tuple[int, int]) -> "CliqueUnion":
        return cls(tuple(CliqueSpec(a, t) for a, t in pairs))

    @classmethod
    def two(cls, a1: int, t1: int, a2: int, t2: int, overlap: int = 0) -> "CliqueUnion":
        c1, c2 = CliqueSpec(a1, t1), CliqueSpec(a2, t2)
        ov = ((c1.order, overlap), (overlap, c2.order))
        return cls((c1, c2), ov)

    @classmethod
    def parse(cls, text: str) -> "CliqueUnion":
        """Parse ``"4:2,8:1"`` (weight:slack pairs, vertex disjoint)."""
        pairs = []
        pos = 0
        for chunk in text.split(","):
            m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", chunk)
            if m is None:
                raise ParseError("expected WEIGHT:SLACK", text, pos)
            pairs.append((int(m.group(1)), int(m.group(2))))
            pos += len(chunk) + 1
        return cls.disjoint(*pairs)

    def with_overlap(self, i: int, j: int, c: int) -> "CliqueUnion":
        ov = [list(row) for row in self.overlaps]
        ov[i][j] = ov[j][i] = c
        return CliqueUnion(self.cliques, tuple(tuple(r) for r in ov))

    @property
    def s(self) -> int:
        return len(self.cliques)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(c.weight for c in self.cliques)

    @property
    def slacks(self) -> tuple[int, ...]:
        return tuple(c.slack for c in self.cliques)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.cliques)

    @property
    def vertex_disjoint(self) -> bool:
        return all(self.overlaps[i][j] == 0 for i in range(self.s) for j in range(self.s) if i != j)

    @property
    def dimension(self) -> int:
        shared = sum(self.overlaps[i][j] for i in range(self.s) for j in range(i + 1, self.s))
        return sum(self.orders) - shared

    def scaled(self, m: int, slacks: Optional[Sequence[int]] = None) -> "CliqueUnion":
        if slacks is None:
            slacks = self.slacks
        return CliqueUnion.disjoint(*((m * a, u) for a, u in zip(self.weights, slacks)))

    def __str__(self):
        text = ",".join(str(c) for c in self.cliques)
        if not self.vertex_disjoint:
            extra = [
                f"{i}-{j}={self.overlaps[i][j]}"
                for i in range(self.s)
                for j in range(i + 1, self.s)
                if self.overlaps[i][j]
            ]
            text += " overlap " + " ".join(extra)
        return text


# ---------------------------------------------------------------------------
# sets of integers


class LayerSet(tuple):
    """A nonempty finite set of integers, stored strictly increasing."""

    def __new__(cls, elements: Iterable[int] = ()):
        elems = tuple(sorted({int(x) for x in elements}))
        if not elems:
            raise ValueError("empty layer set")
        return super().__new__(cls, elems)

    @classmethod
    def parse(cls, text: str) -> "LayerSet":
        m = re.fullmatch(r"\s*\{([^{}]*)\}\s*", text)
        if m is None:
            stripped = text.lstrip()
            lead = len(text) - len(stripped)
            if not stripped.startswith("{"):
                raise ParseError("expected '{'", text, lead)
            close = text.find("}", lead)
            if close < 0:
                raise ParseError("missing '}'", text, len(text.rstrip()))
            nested = text.find("{", lead + 1, close)
            if nested >= 0:
                raise ParseError("nested '{'", text, nested)
            raise ParseError("trailing text after '}'", text, close + 1)
        body = m.group(1)
        if not body.strip():
            raise ParseError("empty layer set", text, m.start(1))
        out = []
        pos = m.start(1)
        for item in body.split(","):
            if not re.fullmatch(r"\s*-?\d+\s*", item):
                raise ParseError("expected an integer", text, pos)
            out.append(int(item))
            pos += len(item) + 1
        return cls(out)

    @property
    def diameter(self) -> int:
        return self[-1] - self[0]

    @property
    def is_normalized(self) -> bool:
        return self[0] == 0

    def normalized(self) -> "LayerSet":
        return normalize(self)

    def shifted(self, k: int) -> "LayerSet":
        return LayerSet(x + k for x in self)

    def scaled(self, m: int) -> "LayerSet":
        return LayerSet(m * x for x in self)

    def contains_translate_of(self, other: "LayerSet") -> bool:
        mine = set(self)
        first = other[0]
        return any(all(x - first + y in mine for x in other) for y in self)

    def __str__(self):
        return "{" + ",".join(str(x) for x in self) + "}"

    def __repr__(self):
        return f"LayerSet({str(self)})"


def normalize(ls: Iterable[int]) -> LayerSet:
    """Translate so the minimum element is 0."""
    ls = ls if isinstance(ls, LayerSet) else LayerSet(ls)
    if ls[0] == 0:
        return ls
    return ls.shifted(-ls[0])


def _family_key(ls: LayerSet):
    return (len(ls), tuple(ls))


class SetFamily(tuple):
    """A deduplicated collection of LayerSets in canonical order
    (by cardinality, then lexicographic)."""

    def __new__(cls, sets: Iterable[Iterable[int]] = ()):
        items = {s if isinstance(s, LayerSet) else LayerSet(s) for s in sets}
        return super().__new__(cls, sorted(items, key=_family_key))

    @classmethod
    def parse(cls, text: str) -> "SetFamily":
        sets = []
        pos = 0
        for chunk in text.split(";"):
            try:
                sets.append(LayerSet.parse(chunk))
            except ParseError as exc:
                raise ParseError(f"bad set in family ({exc.reason})", text, pos + exc.position) from None
            pos += len(chunk) + 1
        return cls(sets)

    @property
    def is_reduced(self) -> bool:
        if not all(s.is_normalized for s in self):
            return False
        return not any(a != b and b.contains_translate_of(a) for a in self for b in self)

    @property
    def max_diameter(self) -> int:
        return max(s.diameter for s in self)

    def normalized(self) -> "SetFamily":
        return SetFamily(normalize(s) for s in self)

    def scaled(self, m: int) -> "SetFamily":
        return SetFamily(s.scaled(m) for s in self)

    def as_lists(self) -> list[list[int]]:
        return [list(s) for s in self]

    def __str__(self):
        return ";".join(str(s) for s in self)

    def __repr__(self):
        return f"SetFamily({str(self)})"


def reduce_family(fam: Iterable[Iterable[int]]) -> SetFamily:
    """Normalize every set and keep those containing no translate of another.

    Minimality is taken over all translates, so {0,2,5,8} is dropped next to
    {0,3,6} even though neither normalized set is a subset of the other.
    """
    normed = sorted({normalize(s) for s in fam}, key=_family_key)
    kept: list[LayerSet] = []
    kept_masks: list[tuple[int, int]] = []
    for s in normed:
        mask = sum(1 << x for x in s)
        # visited by size, so only earlier sets can sit inside a translate of s
        if any(
            (km << y) & ~mask == 0
            for km, kd in kept_masks
            for y in range(s.diameter - kd + 1)
        ):
            continue
        kept.append(s)
        kept_masks.append((mask, s.diameter))
    return SetFamily(kept)


# ---------------------------------------------------------------------------
# colorings


def _color_char(c: int, t: int) -> str:
    if t == 2:
        return "RB"[c]
    return str(c)


def colors_to_text(colors: Sequence[int], t: int) -> str:
    if t > 10:
        raise ValueError("text form supports at most 10 colors")
    return "".join(_color_char(c, t) for c in colors)


def colors_from_text(seq: str, t: Optional[int] = None) -> tuple[list[int], int]:
    seq = seq.strip()
    if not seq:
        raise ParseError("empty color sequence", seq, 0)
    if set(seq) <= set("RB"):
        return ["RB".index(ch) for ch in seq], 2 if t is None else t
    out = []
    for i, ch in enumerate(seq):
        if not ch.isdigit():
            raise ParseError("expected R/B or digits", seq, i)
        out.append(int(ch))
    if t is None:
        t = max(2, max(out) + 1)
    return out, t


@dataclass(frozen=True)
class PeriodicColoring:
    """Coloring n -> colors[n mod period] of all integers."""

    colors: tuple[int, ...]
    palette_size: int = 2

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if self.palette_size < 2:
            raise ValueError("palette size must be at least 2")
        if not colors:
            raise ValueError("period must be at least 1")
        if any(not 0 <= c < self.palette_size for c in colors):
            raise ValueError("color out of palette range")

    @property
    def period(self) -> int:
        return len(self.colors)

    def __call__(self, n: int) -> int:
        return self.colors[n % len(self.colors)]

    def minimal_period(self) -> int:
        p = len(self.colors)
        for q in range(1, p + 1):
            if p % q == 0 and all(self.colors[i] == self.colors[i % q] for i in range(p)):
                return q
        return p

    def primitive(self) -> "PeriodicColoring":
        return PeriodicColoring(self.colors[: self.minimal_period()], self.palette_size)

    def shifted(self, k: int) -> "PeriodicColoring":
        """The coloring n -> self(n + k)."""
        p = self.period
        return PeriodicColoring(tuple(self.colors[(i + k) % p] for i in range(p)), self.palette_size)

    def permuted(self, perm: Sequence[int]) -> "PeriodicColoring":
        return PeriodicColoring(tuple(perm[c] for c in self.colors), self.palette_size)

    def to_text(self) -> str:
        return f"period={self.period}:{colors_to_text(self.colors, self.palette_size)}"

    @classmethod
    def from_text(cls, text: str, palette_size: Optional[int] = None) -> "PeriodicColoring":
        m = re.fullmatch(r"\s*period=(\d+):(\S+)\s*", text)
        if m is None:
            raise ParseError("expected period=P:SEQ", text, 0)
        p = int(m.group(1))
        colors, t = colors_from_text(m.group(2), palette_size)
        if len(colors) != p:
            raise ParseError(f"sequence length {len(colors)} != period {p}", text, m.start(2))
        return cls(tuple(colors), t)

    def window(self, start: int, length: int) -> "FiniteColoring":
        return FiniteColoring(tuple(self(start + i) for i in range(length)), start, self.palette_size)


@dataclass(frozen=True)
class FiniteColoring:
    """Coloring of the interval [offset, offset + len - 1]."""

    colors: tuple[int, ...]
    offset: int = 0
    palette_size: int = 2

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if any(not 0 <= c < self.palette_size for c in colors):
            raise ValueError("color out of palette range")

    def __len__(self):
        return len(self.colors)

    def __call__(self, n: int) -> int:
        i = n - self.offset
        if not 0 <= i < len(self.colors):
            raise IndexError(f"{n} outside [{self.offset}, {self.offset + len(self.colors) - 1}]")
        return self.colors[i]

    @property
    def stop(self) -> int:
        return self.offset + len(self.colors)

    def to_text(self) -> str:
        return colors_to_text(self.colors, self.palette_size)


# ---------------------------------------------------------------------------
# decisions


@dataclass(frozen=True)
class AvoidingWitness:
    coloring: PeriodicColoring


@dataclass(frozen=True)
class ForcingLength:
    n_min: Optional[int]  # None when not computed
    upper_bound: int


@dataclass(frozen=True)
class Decision:
    is_ramsey: bool
    certificate: Union[AvoidingWitness, ForcingLength]
    gcd: int = 1
    upper_bound: int = 0

    def __post_init__(self):
        if self.is_ramsey != isinstance(self.certificate, ForcingLength):
            raise ValueError("Ramsey verdicts carry a ForcingLength, others an AvoidingWitness")

    @property
    def witness(self) -> Optional[PeriodicColoring]:
        if isinstance(self.certificate, AvoidingWitness):
            return self.certificate.coloring
        return None

    @property
    def n_min(self) -> Optional[int]:
        if isinstance(self.certificate, ForcingLength):
            return self.certificate.n_min
        return None

    def to_json(self) -> dict:
        w = self.witness
        return {
            "is_ramsey": self.is_ramsey,
            "n_min": self.n_min,
            "n_upper": self.upper_bound,
            "witness": None
            if w is None
            else {"period": w.period, "colors": colors_to_text(w.colors, w.palette_size)},
            "gcd": self.gcd,
        }


# ---------------------------------------------------------------------------
# small analysis records


@dataclass(frozen=True)
class SignVector:
    signs: tuple[int, ...]

    def __post_init__(self):
        if any(x not in (-1, 1) for x in self.signs):
            raise ValueError("signs must be +1 or -1")

    def __len__(self):
        return len(self.signs)

    def apply(self, weights: Sequence[int]) -> LayerSet:
        if len(weights) != len(self.signs):
            raise ValueError("sign vector length must equal the number of cliques")
        return LayerSet(x * a for x, a in zip(self.signs, weights))


@dataclass(frozen=True)
class TwoCliqueAnalysis:
    a1: int
    t1: int
    a2: int
    t2: int
    r1: int = field(init=False)
    r2: int = field(init=False)
    p1: int = field(init=False)
    p2: int = field(init=False)
    g: int = field(init=False)

    def __post_init__(self):
        if self.a1 < 1 or self.a2 < 1:
            raise ValueError("weights must be positive")
        object.__setattr__(self, "r1", val2(self.a1))
        object.__setattr__(self, "r2", val2(self.a2))
        object.__setattr__(self, "p1", odd_part(self.a1))
        object.__setattr__(self, "p2", odd_part(self.a2))
        object.__setattr__(self, "g", math.gcd(self.p1, self.p2))
