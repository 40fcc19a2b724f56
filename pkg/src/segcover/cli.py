"""Command-line front end.

Subcommands::

    segcover generate --n 30 --rho 20 -o inst.json
    segcover solve --algo approx12 -i inst.json -o place.json
    segcover verify -i inst.json -p place.json
    segcover reduce --graph g.json --out inst.json
    segcover bench --n 10,15,20,30 --rho 20,30,40,50 --trials 20 --seed 7
    segcover render -i inst.json -p place.json -o pic.svg

Exit codes: 0 success, 1 bad input or usage, 2 resource limit hit,
3 a solver produced a placement that failed the coverage self-check.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

from . import geom
from .errors import ParseError, ResourceLimitError, SegcoverError, ValidationError
from .exact_pierce import DEFAULT_WORK_LIMIT, solve_exact
from .hardness import named_graph, parse_graph, reduce_to_instance
from .instance import (
    Instance,
    Placement,
    parse_instance,
    parse_placement,
    random_instance,
    sensors_in_region,
    serialize_instance,
    serialize_placement,
    serialize_report,
    verify_cover,
)
from .ptas_arbitrary import cover_ptas_arbitrary
from .ptas_axis import cover_ptas_axis
from .render import render_svg
from .strip_cover import cover_axis_parallel

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_SELFCHECK = 3

ALGORITHMS = ("approx12", "ptas-axis", "ptas-arb", "exact")
BENCH_SIDE = 700.0


class UsageError(Exception):
    pass


class SelfCheckError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; 2 is reserved for resource limits here
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    subcommand: str
    input: str | None
    output: str | None
    algorithm: str | None
    eps: float
    k: int
    c: float | None
    seed: int
    tol: float | None
    work_limit: int
    max_size: int | None = None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ValidationError("input", f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_instance(path: str | None) -> Instance:
    if path is None:
        raise ValidationError("input", "an instance file is required (-i)")
    return parse_instance(_read(path))


def solve(inst: Instance, cfg: RunConfig) -> Placement:
    algo = cfg.algorithm
    if algo == "approx12":
        return cover_axis_parallel(inst).placement
    if algo == "ptas-axis":
        res = cover_ptas_axis(inst, cfg.eps, cfg.work_limit)
        if res.config.t > 8:
            print(
                f"warning: {res.config.t} strips (h/rho is large); exact subproblems may hit the work limit",
                file=sys.stderr,
            )
        return res.placement
    if algo == "ptas-arb":
        return cover_ptas_arbitrary(inst, cfg.c, cfg.k, cfg.work_limit).placement
    if algo == "exact":
        pl = solve_exact(inst, cfg.work_limit, cfg.max_size)
        if pl is None:
            raise ResourceLimitError(f"no cover with at most {cfg.max_size} sensors")
        return pl
    raise ValidationError("algo", f"unknown algorithm {algo!r}")


def self_check(inst: Instance, pl: Placement) -> None:
    rep = verify_cover(inst, pl)
    if not rep.all_covered:
        raise SelfCheckError(f"{pl.algorithm}: segments {rep.uncovered_indices} left uncovered")
    if not sensors_in_region(inst, pl):
        raise SelfCheckError(f"{pl.algorithm}: a sensor lies outside the region")


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    inst = random_instance(
        args.width, args.height, args.rho, args.n, args.orientation, args.max_len, args.seed
    )
    _write(args.output, serialize_instance(inst))
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    pl = solve(inst, args.cfg)
    self_check(inst, pl)
    _write(args.output, serialize_placement(pl))
    lb = "n/a" if pl.lower_bound is None else f"{pl.lower_bound:g}"
    print(f"{pl.algorithm}: {len(pl)} sensors, lower bound {lb}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.input)
    if args.placement is None:
        raise ValidationError("placement", "a placement file is required (-p)")
    pl = parse_placement(_read(args.placement))
    rep = verify_cover(inst, pl)
    _write(args.output, serialize_report(rep))
    return EXIT_OK if rep.all_covered else EXIT_INPUT


def cmd_reduce(args) -> int:
    if (args.graph is None) == (args.named is None):
        raise ValidationError("graph", "give exactly one of --graph or --named")
    g = parse_graph(_read(args.graph)) if args.graph else named_graph(args.named)
    red = reduce_to_instance(g)
    _write(args.output, serialize_instance(red.instance))
    e = red.embedding
    print(
        f"{len(red.instance.segments)} segments, path length {e.path_len}, rho {red.instance.rho:g}",
        file=sys.stderr,
    )
    return EXIT_OK


def _int_list(text: str, name: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(name, f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise ValidationError(name, "empty list")
    return vals


def _float_list(text: str, name: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(name, f"expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise ValidationError(name, "empty list")
    return vals


def _bench_trial(job: tuple) -> tuple[int, float | None, int | None]:
    n, rho, seed, cfg, oracle_limit, tol = job
    geom.set_tol(tol)
    inst = random_instance(BENCH_SIDE, BENCH_SIDE, rho, n, "axis-parallel", BENCH_SIDE, seed)
    pl = solve(inst, cfg)
    self_check(inst, pl)
    try:
        opt = solve_exact(inst, oracle_limit)
    except ResourceLimitError:
        opt = None
    return len(pl), pl.lower_bound, None if opt is None else len(opt)


def cmd_bench(args) -> int:
    ns = _int_list(args.n, "n")
    rhos = _float_list(args.rho, "rho")
    cfg = args.cfg
    rows = []
    jobs = [
        (n, rho, args.seed + trial, cfg, args.oracle_limit, geom.get_tol())
        for n in ns
        for rho in rhos
        for trial in range(args.trials)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_trial, jobs))
    else:
        results = [_bench_trial(j) for j in jobs]
    i = 0
    for n in ns:
        for rho in rhos:
            chunk = results[i : i + args.trials]
            i += args.trials
            sizes = [r[0] for r in chunk]
            lbs = [r[1] for r in chunk if r[1] is not None]
            opts = [r[2] for r in chunk]
            if chunk and all(o is not None for o in opts):
                ratios = [s / o if o else 1.0 for s, o in zip(sizes, opts)]
                ratio = f"{fmean(ratios):.6g}"
            else:
                ratio = ""
            rows.append([
                n,
                f"{rho:g}",
                cfg.algorithm,
                args.trials,
                f"{fmean(sizes):.6g}" if sizes else "",
                f"{fmean(lbs):.6g}" if lbs else "",
                ratio,
            ])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "rho", "algo", "trials", "mean_sensors", "mean_lower_bound", "mean_ratio_vs_oracle"])
    w.writerows(rows)
    _write(args.output, buf.getvalue())
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _load_instance(args.input)
    pl = parse_placement(_read(args.placement)) if args.placement else None
    _write(args.output, render_svg(inst, pl, hippodromes=not args.no_hippodromes))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-i", "--input", help="input instance JSON ('-' for stdin)")
    common.add_argument("-o", "--output", help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None,
                        help="comparison tolerance (default $SEGCOVER_TOL or 1e-9)")
    common.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT,
                        help="node budget for exact searches (default %(default)s)")

    def algo_flags(p):
        p.add_argument("--algo", choices=ALGORITHMS, default="approx12")
        p.add_argument("--eps", type=float, default=1.0, help="ptas-axis accuracy")
        p.add_argument("--k", type=int, default=2, help="ptas-arb shift classes")
        p.add_argument("--c", type=float, default=None,
                       help="ptas-arb length factor (default: longest segment / rho)")
        p.add_argument("--max-size", type=int, default=None, help="exact: largest cover to try")

    parser = _Parser(prog="segcover", description="Sensor placement for covering line segments.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", parents=[common], help="random instance")
    p.add_argument("--width", type=float, default=BENCH_SIDE)
    p.add_argument("--height", type=float, default=BENCH_SIDE)
    p.add_argument("--rho", type=float, default=20.0)
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--orientation", choices=("axis-parallel", "arbitrary"), default="axis-parallel")
    p.add_argument("--max-len", type=float, default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", parents=[common], help="compute a sensor placement")
    algo_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a placement")
    p.add_argument("-p", "--placement")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="vertex-cover reduction instance")
    p.add_argument("--graph", help="graph JSON {\"n\": N, \"edges\": [[u, v], ...]}")
    p.add_argument("--named", help="built-in graph: K2, P3, K3, C4, K4")
    p.add_argument("--out", dest="output", help="same as -o")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", parents=[common], help="mean sensor counts on random instances")
    algo_flags(p)
    p.add_argument("--n", default="10,15,20,30")
    p.add_argument("--rho", default="20,30,40,50")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--oracle-limit", type=int, default=10**6,
                   help="node budget of the exact oracle per trial")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", parents=[common], help="SVG drawing")
    p.add_argument("-p", "--placement")
    p.add_argument("--no-hippodromes", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(
        subcommand=args.subcommand,
        input=args.input,
        output=args.output,
        algorithm=getattr(args, "algo", None),
        eps=getattr(args, "eps", 1.0),
        k=getattr(args, "k", 2),
        c=getattr(args, "c", None),
        seed=args.seed,
        tol=args.tol,
        work_limit=args.work_limit,
        max_size=getattr(args, "max_size", None),
    )
    if cfg.work_limit < 1:
        raise ValidationError("work-limit", "must be positive")
    if getattr(args, "trials", 1) < 0:
        raise ValidationError("trials", "must be non-negative")
    return cfg


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as e:  # --help
        return int(e.code or 0)
    old_tol = geom.get_tol()
    try:
        if args.tol is not None:
            geom.set_tol(args.tol)
        args.cfg = _config(args)
        return args.func(args)
    except (ParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except SelfCheckError as e:
        print(f"self-check failed: {e}", file=sys.stderr)
        return EXIT_SELFCHECK
    except SegcoverError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        geom.set_tol(old_tol)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
