"""Command-line entry point.

Exit codes: 0 success, 1 verification failure or disagreement, 2 usage or
parse error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import embedding, sweeps
from .classify import (
    HypothesisError,
    ThreeCliqueAnalysis,
    classify_three_cliques,
    classify_two_cliques,
    classify_two_cliques_overlap,
)
from .engine import decide, enumerate_witnesses, verify_coloring
from .model import CliqueUnion, ParseError, PeriodicColoring, ResourceError, SetFamily
from .oracle import CubeColoring, VertexSet, brute_force_w_star, contains_monochromatic_copy, realize_union
from .repro import SCENARIOS, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _union(args) -> CliqueUnion:
    u = CliqueUnion.parse(args.union)
    overlap = getattr(args, "overlap", None)
    if overlap:
        if u.s != 2:
            raise UsageError("--overlap needs exactly two cliques")
        u = u.with_overlap(0, 1, overlap)
    return u


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------


def cmd_family(args) -> int:
    u = _union(args)
    if args.command == "wstar":
        fam = embedding.w_star(u, dim=args.dim)
    elif args.command == "wprime":
        fam = embedding.w_prime(u)
    else:
        fam = embedding.p_prime(u)
    _emit(args, fam.as_lists(), str(fam))
    return EXIT_OK


def cmd_minlayers(args) -> int:
    k = embedding.min_layers(_union(args))
    _emit(args, k, str(k))
    return EXIT_OK


def cmd_decide(args) -> int:
    d = decide(SetFamily.parse(args.family), args.colors, args.max_states)
    if args.json:
        print(json.dumps(d.to_json(), sort_keys=True))
        return EXIT_OK
    if d.is_ramsey:
        n_min = "not computed" if d.n_min is None else d.n_min
        print(f"{args.colors}-translate-Ramsey: yes")
        print(f"n_min: {n_min}  (upper bound {d.upper_bound}, gcd {d.gcd})")
    else:
        print(f"{args.colors}-translate-Ramsey: no")
        print(f"witness: {d.witness.to_text()}  (gcd {d.gcd})")
    return EXIT_OK


def cmd_verify(args) -> int:
    fam = SetFamily.parse(args.family)
    c = PeriodicColoring.from_text(_read_text(args.coloring), args.colors)
    v = verify_coloring(c, fam)
    payload = {
        "ok": v.ok,
        "violation": None
        if v.ok
        else {"set": list(v.violation.member), "offset": v.violation.offset, "color": v.violation.color},
    }
    _emit(args, payload, "ok" if v.ok else f"violation: {v.violation}")
    return EXIT_OK if v.ok else EXIT_FAIL


def cmd_witnesses(args) -> int:
    ws = enumerate_witnesses(SetFamily.parse(args.family), args.colors, args.max_period, args.max_states)
    lines = [w.to_text() for w in ws]
    _emit(args, lines, "\n".join(lines + [f"{len(ws)} class(es)"]))
    return EXIT_OK


def cmd_classify(args) -> int:
    u = _union(args)
    if args.kind == "two":
        if u.s != 2:
            raise UsageError("classify two needs exactly two cliques")
        (a1, a2), (t1, t2) = u.weights, u.slacks
        c = u.overlaps[0][1]
        verdict = classify_two_cliques_overlap(a1, t1, a2, t2, c) if c else classify_two_cliques(a1, t1, a2, t2)
    else:
        verdict = classify_three_cliques(ThreeCliqueAnalysis.of(u))
    payload = {"union": str(u), "ramsey": verdict}
    status = EXIT_OK
    if args.check_engine:
        engine = decide(embedding.w_prime(u), 2, args.max_states).is_ramsey
        payload.update(engine=engine, agree=engine == verdict)
        status = EXIT_OK if engine == verdict else EXIT_FAIL
    text = f"2-Ramsey: {'yes' if verdict else 'no'}"
    if args.check_engine:
        text += f"  (engine: {'yes' if payload['engine'] else 'no'}, agree: {payload['agree']})"
    _emit(args, payload, text)
    return status


def cmd_sweep(args) -> int:
    if args.kind == "two":
        rep = sweeps.sweep_two(args.max_weight or 12, 5 if args.max_slack is None else args.max_slack,
                               args.check_engine, args.jobs)
    elif args.kind == "three":
        rep = sweeps.sweep_three(args.max_weight or 11, 3 if args.max_slack is None else args.max_slack,
                                 args.check_engine, args.jobs)
    else:
        rep = sweeps.sweep_overlap(args.max_weight or 12, check_engine=args.check_engine, jobs=args.jobs)
    csv_text = rep.to_csv()
    if args.out:
        Path(args.out).write_text(csv_text)
    if args.json:
        print(json.dumps(rep.summary(), sort_keys=True))
    else:
        if not args.out:
            sys.stdout.write(csv_text)
        print("# " + ", ".join(f"{k}={v}" for k, v in rep.summary().items()), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    u = _union(args)
    vs = realize_union(u)
    if args.kind == "wstar":
        dim = u.dimension if args.dim is None else args.dim
        if dim < u.dimension:
            raise UsageError(f"--dim {dim} smaller than the union's dimension {u.dimension}")
        fam = brute_force_w_star(VertexSet(dim, vs.vertices))
        _emit(args, fam.as_lists(), str(fam))
        return EXIT_OK
    cc = CubeColoring.from_text(_read_text(args.coloring))
    if args.dim is not None and args.dim != cc.n:
        raise UsageError(f"coloring has dimension {cc.n}, --dim says {args.dim}")
    w = contains_monochromatic_copy(cc, vs)
    payload = {"found": w is not None}
    if w is not None:
        payload.update(free=list(w.free), base=w.base, permutation=list(w.permutation), flip=w.flip)
    text = "no monochromatic copy" if w is None else (
        f"monochromatic copy: free={list(w.free)} base={w.base} permutation={list(w.permutation)} flip={w.flip}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_repro(args) -> int:
    if args.name not in SCENARIOS:
        raise UsageError(f"unknown scenario {args.name!r}; choose from {', '.join(SCENARIOS)}")
    rep = run_scenario(args.name, seed=args.seed, jobs=args.jobs)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for fname, content in sorted(rep.artifacts.items()):
            (out / fname).write_text(content)
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        print(rep.render())
        for fname, content in sorted(rep.artifacts.items()):
            if not args.out and fname.endswith(".txt"):
                print(f"--- {fname}\n{content}", end="")
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-states", type=_positive, default=None,
                        help="automaton state budget (default 2^24, env CUBERAMSEY_MAX_STATES)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for sweeps")

    p = argparse.ArgumentParser(prog="cuberamsey", description="Vertex-Ramsey problems on the hypercube.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in (("wstar", "all layer sets of flips"), ("wprime", "reduced layer sets"),
                        ("pprime", "reduced layer sets of principal flips")):
        q = sub.add_parser(name, parents=[common], help=help_)
        q.add_argument("--union", required=True, help='e.g. "4:2,8:1"')
        q.add_argument("--overlap", type=int, default=0, help="shared elements of two cliques")
        if name == "wstar":
            q.add_argument("--dim", type=int, default=None, help="ambient cube dimension")
        q.set_defaults(func=cmd_family)

    q = sub.add_parser("minlayers", parents=[common], help="fewest layers an image can meet")
    q.add_argument("--union", required=True)
    q.add_argument("--overlap", type=int, default=0)
    q.set_defaults(func=cmd_minlayers)

    q = sub.add_parser("decide", parents=[common], help="decide translate-Ramseyness of a family")
    q.add_argument("--family", required=True, help='e.g. "{0,4};{0,12}"')
    q.add_argument("--colors", type=int, default=2)
    q.set_defaults(func=cmd_decide)

    q = sub.add_parser("verify", parents=[common], help="check a periodic coloring against a family")
    q.add_argument("--family", required=True)
    q.add_argument("--coloring", required=True, help="file with period=P:SEQ ('-' for stdin)")
    q.add_argument("--colors", type=int, default=None)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("witnesses", parents=[common], help="avoiding periodic colorings up to symmetry")
    q.add_argument("--family", required=True)
    q.add_argument("--colors", type=int, default=2)
    q.add_argument("--max-period", type=_positive, default=64)
    q.set_defaults(func=cmd_witnesses)

    q = sub.add_parser("classify", parents=[common], help="closed-form 2-Ramsey criteria")
    q.add_argument("kind", choices=("two", "three"))
    q.add_argument("--union", required=True)
    q.add_argument("--overlap", type=int, default=0)
    q.add_argument("--check-engine", action="store_true")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("sweep", parents=[common], help="classifier against engine over a grid (CSV)")
    q.add_argument("kind", choices=("two", "three", "overlap"))
    q.add_argument("--max-weight", type=_positive, default=None)
    q.add_argument("--max-slack", type=int, default=None)
    q.add_argument("--check-engine", action="store_true")
    q.add_argument("--out", default=None, help="CSV path (default stdout)")
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("oracle", parents=[common], help="brute force on explicit cubes")
    q.add_argument("kind", choices=("wstar", "copy"))
    q.add_argument("--union", required=True)
    q.add_argument("--overlap", type=int, default=0)
    q.add_argument("--dim", type=int, default=None)
    q.add_argument("--coloring", default=None, help="file with 2^n characters in vertex-mask order")
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("repro", parents=[common], help="run a named reproduction scenario")
    q.add_argument("name", help=", ".join(SCENARIOS))
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", default=None, help="directory for emitted files")
    q.set_defaults(func=cmd_repro)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle" and args.kind == "copy" and not args.coloring:
        parser.error("oracle copy needs --coloring")
    try:
        return args.func(args)
    except (ParseError, UsageError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
