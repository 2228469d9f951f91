"""Command-line interface.

Every subcommand writes one JSON object per line to ``--output`` (or stdout);
each record echoes the effective configuration, the seed and the library
version. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .distances import Measure, decide, distance
from .io import DataError, dumps_curve, dumps_record, generate_synthetic, load_dataset, write_atomic
from .ranges import (
    RNG_ALGORITHM,
    RangeQuery,
    SampleSpec,
    approx_count,
    exact_count,
    kde,
    kde_sample_bound,
    sample_size,
    separator_sample_size,
)
from .vclab import (
    bound_formulas,
    circle_construction,
    critical_radius_queries,
    induced_subsets,
    sauer_shelah_bound,
    shattered_subset_search,
    ShatterReport,
)

log = logging.getLogger("curveballs")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


@dataclass
class RunConfig:
    command: str = ""
    measure: str = Measure.FRECHET.value
    radius: float | None = None
    epsilon: float = 0.1
    delta: float = 0.05
    nu: float = 10.0
    C: float = 0.5
    seed: int = 0
    tolerance: float = 1e-6
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# flag dest -> RunConfig field
_FLAG_FIELDS = {
    "measure": "measure",
    "r": "radius",
    "eps": "epsilon",
    "delta": "delta",
    "nu": "nu",
    "C": "C",
    "seed": "seed",
    "tol": "tolerance",
    "output": "output",
}


def _common(p: argparse.ArgumentParser, *names: str) -> None:
    spec = {
        "measure": dict(help="distance measure: " + ", ".join(m.value for m in Measure)),
        "r": dict(type=float, help="ball radius"),
        "eps": dict(type=float, help="additive error epsilon"),
        "delta": dict(type=float, help="failure probability delta"),
        "nu": dict(type=float, help="VC-dimension estimate"),
        "C": dict(type=float, help="sample-size constant"),
        "seed": dict(type=int, help="PRNG seed"),
        "tol": dict(type=float, help="bisection tolerance for continuous measures"),
    }
    for n in names:
        p.add_argument(f"--{n}", dest=n, default=None, **spec[n])
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--config", default=None, help="JSON config file with RunConfig keys")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curveballs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"curveballs {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dist", help="distance or decision for every pair of curves from two files")
    _common(p, "measure", "r", "tol")
    p.add_argument("--decide", action="store_true", help="report the decision at --r instead of the value")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("query", help="exact range count")
    _common(p, "measure", "r", "tol")
    p.add_argument("--center", required=True, help="curve file; its first curve is the ball center")
    p.add_argument("data")

    p = sub.add_parser("approx-query", help="sampled range count estimate")
    _common(p, "measure", "r", "eps", "delta", "nu", "C", "seed", "tol")
    p.add_argument("--center", required=True)
    p.add_argument("data")

    p = sub.add_parser("sample-size", help="sample-size calculators")
    _common(p, "eps", "delta", "nu", "C")
    p.add_argument("--kind", choices=("eps-sample", "separator", "kde"), default="eps-sample")

    p = sub.add_parser("kde", help="kernel density estimate at each probe curve")
    _common(p, "measure", "tol")
    p.add_argument("data")
    p.add_argument("probes")

    p = sub.add_parser("shatter", help="shattering experiments")
    _common(p, "measure", "seed")
    p.add_argument("--construction", choices=("circle", "random-points"), default="circle")
    p.add_argument("--k", type=int, default=None, help="circle size")
    p.add_argument("--R", type=float, default=None, help="circle construction scale")
    p.add_argument("--t", type=int, default=None, help="ground size for random-points")

    p = sub.add_parser("gen", help="write a synthetic curve file")
    _common(p, "seed")
    p.add_argument("--kind", choices=("random_walk", "perturbed_template", "circle_points"), default="random_walk")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--noise", type=float, default=None)
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise DataError(f"cannot read config {args.config}: {exc}") from None
        known = {f.name for f in fields(RunConfig)} - {"command"}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for k, v in data.items():
            setattr(cfg, k, v)
    for flag, name in _FLAG_FIELDS.items():
        v = getattr(args, flag, None)
        if v is not None:
            setattr(cfg, name, v)
    for name in ("a", "b", "data", "probes", "center"):
        v = getattr(args, name, None)
        if v is not None:
            cfg.inputs.append(v)
    return cfg


def _meta(cfg: RunConfig) -> dict:
    return {"config": asdict(cfg), "seed": cfg.seed, "version": __version__}


def _measure(cfg: RunConfig) -> Measure:
    try:
        return Measure.parse(cfg.measure)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _need_radius(cfg: RunConfig) -> float:
    if cfg.radius is None:
        raise UsageError("--r is required")
    if cfg.radius < 0:
        raise UsageError("--r must be non-negative")
    return float(cfg.radius)


def _spec(cfg: RunConfig) -> SampleSpec:
    try:
        return SampleSpec(cfg.epsilon, cfg.delta, cfg.nu, cfg.C)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_dist(args, cfg):
    measure = _measure(cfg)
    A, B = load_dataset(args.a), load_dataset(args.b)
    r = _need_radius(cfg) if args.decide else None
    cfg.extra["decide"] = bool(args.decide)
    for s in A:
        for q in B:
            rec = {"a": s.id, "b": q.id, "measure": measure.value}
            if args.decide:
                rec["decision"] = decide(measure, s, q, r)
                rec["r"] = r
            else:
                rec["distance"] = distance(measure, s, q, cfg.tolerance)
            yield rec


def _first_curve(path):
    return load_dataset(path).curves[0]


def _cmd_query(args, cfg):
    q = RangeQuery(_measure(cfg), _first_curve(args.center), _need_radius(cfg))
    ds = load_dataset(args.data)
    res = exact_count(ds, q)
    yield {"count": res.count, "ids": res.ids, "n": len(ds), "center": q.center.id}


def _cmd_approx(args, cfg):
    q = RangeQuery(_measure(cfg), _first_curve(args.center), _need_radius(cfg))
    spec = _spec(cfg)
    ds = load_dataset(args.data)
    res = approx_count(ds, q, spec, cfg.seed)
    yield {
        "estimate": res.estimate,
        "sample_size": len(res.sample_ids),
        "sample_ids": res.sample_ids,
        "n": len(ds),
        "center": q.center.id,
        "rng": RNG_ALGORITHM,
    }


def _cmd_sample_size(args, cfg):
    spec = _spec(cfg)
    fn = {"eps-sample": sample_size, "separator": separator_sample_size, "kde": kde_sample_bound}[args.kind]
    cfg.extra["kind"] = args.kind
    yield {"n": fn(spec), "kind": args.kind}


def _cmd_kde(args, cfg):
    measure = _measure(cfg)
    ds = load_dataset(args.data)
    for x in load_dataset(args.probes):
        yield {"probe": x.id, "kde": kde(ds, x, measure, cfg.tolerance), "n": len(ds)}


def _cmd_shatter(args, cfg):
    import numpy as np

    from .distances import discrete_hausdorff
    from .predicates import Curve

    measure = _measure(cfg)
    if args.construction == "circle":
        k = args.k if args.k is not None else 6
        R = args.R if args.R is not None else 10.0
        cfg.extra.update(construction="circle", k=k, R=R)
        try:
            cc = circle_construction(k, R, measure)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        masks = induced_subsets(cc.ground, cc.all_queries())
        report = ShatterReport(
            ground_size=k,
            distinct_subsets=len(masks),
            largest_shattered=shattered_subset_search(cc.ground, masks=masks),
            bound_formula_value=bound_formulas(2, k, 1, measure),
            construction={"kind": "circle", "k": k, "R": R, "eps": cc.eps, "measure": measure.value},
        )
    else:
        t = args.t if args.t is not None else 8
        cfg.extra.update(construction="random-points", t=t)
        rng = np.random.default_rng(cfg.seed)
        ground = [Curve(p[None, :], f"g{i}") for i, p in enumerate(rng.uniform(-1, 1, size=(t, 2)))]
        centers = ground + [Curve(p[None, :], f"c{i}") for i, p in enumerate(rng.uniform(-1.5, 1.5, size=(2 * t, 2)))]
        queries = critical_radius_queries(ground, centers, measure, discrete_hausdorff)
        masks = induced_subsets(ground, queries)
        ref = bound_formulas(2, 1, 1, measure)
        report = ShatterReport(
            ground_size=t,
            distinct_subsets=len(masks),
            largest_shattered=shattered_subset_search(ground, masks=masks),
            bound_formula_value=ref,
            construction={
                "kind": "random-points",
                "t": t,
                "measure": measure.value,
                "sauer_shelah_reference": sauer_shelah_bound(t, ref),
            },
        )
    yield report.to_dict()


def _cmd_gen(args, cfg):
    params = {k: getattr(args, k) for k in ("n", "m", "d", "k", "noise") if getattr(args, k) is not None}
    cfg.extra.update(kind=args.kind, **params)
    try:
        ds = generate_synthetic(args.kind, params, cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return ds


_COMMANDS = {
    "dist": _cmd_dist,
    "query": _cmd_query,
    "approx-query": _cmd_approx,
    "sample-size": _cmd_sample_size,
    "kde": _cmd_kde,
    "shatter": _cmd_shatter,
}


def _emit(lines: list[str], output: str | None, stdout) -> None:
    if output:
        write_atomic(output, lines)
    else:
        for line in lines:
            stdout.write(line + "\n")


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    logging.basicConfig(level=os.environ.get("CURVEBALLS_LOG", "WARNING").upper(), stream=stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError(parser.format_usage().strip())
        cfg = _resolve_config(args)
        log.info("running %s with %s", args.command, cfg)
        if args.command == "gen":
            ds = _cmd_gen(args, cfg)
            _emit([dumps_curve(c) for c in ds], cfg.output, stdout)
            return EXIT_OK
        records = list(_COMMANDS[args.command](args, cfg))
        meta = _meta(cfg)
        _emit([dumps_record({**rec, **meta}) for rec in records], cfg.output, stdout)
        return EXIT_OK
    except SystemExit as exc:
        # argparse --help / --version
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (DataError, ValueError, KeyError, IndexError) as exc:
        stderr.write(f"curveballs: data error: {exc}\n")
        return EXIT_DATA


def main() -> None:
    raise SystemExit(run_command())


if __name__ == "__main__":
    main()
