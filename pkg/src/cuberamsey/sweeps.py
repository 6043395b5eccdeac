"""Parameter sweeps comparing closed-form classifiers with the decision engine."""

from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .classify import (
    ThreeCliqueAnalysis,
    classify_three_cliques,
    classify_two_cliques,
    classify_two_cliques_overlap,
)
from .embedding import w_prime
from .engine import decide
from .model import CliqueUnion


@dataclass(frozen=True)
class SweepRow:
    params: tuple[int, ...]
    classifier: bool
    engine: Optional[bool]
    seconds: float = 0.0
    # forced periods the engine's witness fails (three-clique sweep only)
    period_violations: tuple[int, ...] = ()

    @property
    def agree(self) -> Optional[bool]:
        if self.engine is None:
            return None
        return self.classifier == self.engine


@dataclass
class SweepReport:
    kind: str
    grid: str
    columns: tuple[str, ...]
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return sum(r.engine is not None for r in self.rows)

    @property
    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if r.agree is False]

    @property
    def period_violations(self) -> list[SweepRow]:
        return [r for r in self.rows if r.period_violations]

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.period_violations

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "grid": self.grid,
            "instances": len(self.rows),
            "engine_checked": self.checked,
            "classifier_ramsey": sum(r.classifier for r in self.rows),
            "disagreements": len(self.disagreements),
            "period_violations": len(self.period_violations),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns + ("classifier", "engine", "agree"))
        for r in self.rows:
            w.writerow(
                list(r.params)
                + [_flag(r.classifier), "" if r.engine is None else _flag(r.engine), "" if r.agree is None else _flag(r.agree)]
            )
        return buf.getvalue()


def _flag(x: bool) -> str:
    return "1" if x else "0"


# ---------------------------------------------------------------------------
# per-instance workers (module level so they pickle)


def _two_row(params: tuple[int, int, int, int], check: bool) -> SweepRow:
    a1, t1, a2, t2 = params
    start = time.perf_counter()
    verdict = classify_two_cliques(a1, t1, a2, t2)
    engine = decide(w_prime(CliqueUnion.two(a1, t1, a2, t2))).is_ramsey if check else None
    return SweepRow(params, verdict, engine, time.perf_counter() - start)


def _overlap_row(params: tuple[int, int, int, int, int], check: bool) -> SweepRow:
    a1, t1, a2, t2, c = params
    start = time.perf_counter()
    verdict = classify_two_cliques_overlap(a1, t1, a2, t2, c)
    engine = decide(w_prime(CliqueUnion.two(a1, t1, a2, t2, c))).is_ramsey if check else None
    return SweepRow(params, verdict, engine, time.perf_counter() - start)


def _three_row(params: tuple[int, ...], check: bool) -> SweepRow:
    weights, slacks = params[:3], params[3:]
    start = time.perf_counter()
    an = ThreeCliqueAnalysis(weights, slacks)
    verdict = classify_three_cliques(an)
    engine, bad = None, ()
    if check:
        d = decide(w_prime(CliqueUnion.disjoint(*zip(an.weights, an.slacks))))
        engine = d.is_ramsey
        if not engine:
            w = d.witness
            bad = tuple(p for p in an.forced_periods() if any(w(x) != w(x + p) for x in range(w.period)))
    return SweepRow(params, verdict, engine, time.perf_counter() - start, bad)


def _run(worker: Callable, grid: Sequence[tuple], check: bool, jobs: int) -> list[SweepRow]:
    if jobs <= 1:
        return [worker(p, check) for p in grid]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps input order, so the report does not depend on jobs
        return list(pool.map(worker, grid, itertools.repeat(check), chunksize=max(1, len(grid) // (8 * jobs))))


# ---------------------------------------------------------------------------


def two_clique_grid(max_weight: int, max_slack: int, min_weight: int = 1) -> list[tuple[int, int, int, int]]:
    """All ordered (a1,t1,a2,t2)."""
    one = list(itertools.product(range(min_weight, max_weight + 1), range(max_slack + 1)))
    return [(a1, t1, a2, t2) for (a1, t1), (a2, t2) in itertools.product(one, one)]


def sweep_two(max_weight: int = 12, max_slack: int = 5, check_engine: bool = True, jobs: int = 1) -> SweepReport:
    grid = two_clique_grid(max_weight, max_slack)
    rep = SweepReport("two", f"1<=a_i<={max_weight}, 0<=t_i<={max_slack}, ordered", ("a1", "t1", "a2", "t2"))
    rep.rows = _run(_two_row, grid, check_engine, jobs)
    return rep


def overlap_grid(max_weight: int = 12, slacks: Iterable[int] = (2, 3), overlaps: Iterable[int] = (1, 2, 3)):
    slacks, overlaps = tuple(slacks), tuple(overlaps)
    out = []
    for a1 in range(1, max_weight + 1):
        for a2 in range(1, a1):
            for t1, t2, c in itertools.product(slacks, slacks, overlaps):
                if c <= min(a1 + t1, a2 + t2):
                    out.append((a1, t1, a2, t2, c))
    return out


def sweep_overlap(
    max_weight: int = 12,
    slacks: Iterable[int] = (2, 3),
    overlaps: Iterable[int] = (1, 2, 3),
    check_engine: bool = True,
    jobs: int = 1,
) -> SweepReport:
    slacks, overlaps = tuple(slacks), tuple(overlaps)
    grid = overlap_grid(max_weight, slacks, overlaps)
    rep = SweepReport(
        "overlap",
        f"1<=a2<a1<={max_weight}, t_i in {list(slacks)}, c in {list(overlaps)}",
        ("a1", "t1", "a2", "t2", "c"),
    )
    rep.rows = _run(_overlap_row, grid, check_engine, jobs)
    return rep


def three_clique_grid(max_weight: int = 11, max_slack: int = 3):
    out = []
    for ws in itertools.combinations(range(max_weight, 0, -1), 3):
        for ts in itertools.product(range(max_slack + 1), repeat=3):
            out.append(ws + ts)
    return out


def sweep_three(max_weight: int = 11, max_slack: int = 3, check_engine: bool = True, jobs: int = 1) -> SweepReport:
    grid = three_clique_grid(max_weight, max_slack)
    rep = SweepReport(
        "three",
        f"distinct 1<=a_i<={max_weight} (a1>a2>a3), 0<=t_i<={max_slack}",
        ("a1", "a2", "a3", "t1", "t2", "t3"),
    )
    rep.rows = _run(_three_row, grid, check_engine, jobs)
    return rep
