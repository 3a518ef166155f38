"""Command-line front end.

Subcommands: eval, mc, markov, intervals, verify, plot. Settings come from
built-in defaults, then an optional JSON config (``--config``), then flags.

Config schema (every key optional)::

    {
      "family": "affine" | "minkowski" | "custom",
      "params": {"a": "1/3", "b": "2/3"}                       # affine
                {"f0": [[x, y], ...], "f1": [[x, y], ...],
                 "a": ..., "b": ..., "s": ..., "symmetric": false}  # custom
      "p": "1/2",
      "method": "fixedpoint" | "enumerate" | "montecarlo" | "markov",
      "k": 40, "depth": 30, "n_samples": 100000, "max_steps": 60, "seed": 42,
      "transition": [["0", "1"], ["1/2", "1/2"]], "markov_mc": false,
      "levels": 6,
      "grid": {"lo": "0", "hi": "1", "count": 101},
      "output": {"path": "-", "format": "csv"}
    }
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import checks, svg
from ._parallel import pmap
from .estimate import enumerate_bracket, monte_carlo
from .fixedpoint import grid_table
from .intervals import plateau_tree
from .markov import make_markov_measure, markov_enumerate_bracket, markov_monte_carlo
from .measure import BernoulliParam, to_rational
from .pairs import FunctionPair, make_affine_pair, make_minkowski_pair, make_piecewise_pair, validate_assumptions

FAMILIES = ("affine", "minkowski", "custom")
METHODS = ("fixedpoint", "enumerate", "montecarlo", "markov")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    family: str = "affine"
    params: dict = field(default_factory=lambda: {"a": "1/3", "b": "2/3"})
    p: str = "1/2"
    method: str = "fixedpoint"
    k: int = 40
    depth: int = 30
    n_samples: int = 100_000
    max_steps: int = 60
    seed: int = 42
    transition: list | None = None
    markov_mc: bool = False
    levels: int = 6
    grid: dict = field(default_factory=lambda: {"lo": "0", "hi": "1", "count": 101})
    output: dict = field(default_factory=lambda: {"path": "-", "format": "csv"})

    @classmethod
    def from_dict(cls, data: dict) -> JobConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"config: unknown keys {sorted(unknown)}")
        cfg = cls(**data)
        if "params" not in data and cfg.family == "minkowski":
            cfg.params = {}
        return cfg

    def metadata(self) -> dict:
        meta = asdict(self)
        meta["p"] = str(self.p)
        return meta

    def bernoulli(self) -> BernoulliParam:
        try:
            return BernoulliParam(to_rational(self.p))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(f"measure: {exc}") from None

    def grid_points(self) -> list:
        try:
            lo, hi = to_rational(self.grid["lo"]), to_rational(self.grid["hi"])
            count = int(self.grid["count"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"config: grid needs lo, hi and count ({exc})") from None
        if count < 1 or hi < lo:
            raise ConfigError(f"config: grid requires count >= 1 and lo <= hi, got {self.grid}")
        if count == 1:
            return [lo]
        return [lo + (hi - lo) * Fraction(i, count - 1) for i in range(count)]

    def pair(self) -> FunctionPair:
        params = self.params or {}
        try:
            if self.family == "affine":
                return make_affine_pair(params.get("a", "1/3"), params.get("b", "2/3"))
            if self.family == "minkowski":
                return make_minkowski_pair()
            if self.family == "custom":
                missing = {"f0", "f1", "a", "b", "s"} - set(params)
                if missing:
                    raise ConfigError(f"pairs: custom family needs {sorted(missing)}")
                return make_piecewise_pair(params["f0"], params["f1"], params["a"], params["b"], params["s"],
                                           bool(params.get("symmetric", False)))
        except ConfigError:
            raise
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(f"pairs: {exc}") from None
        raise ConfigError(f"config: family must be one of {FAMILIES}, got {self.family!r}")

    def validated_pair(self) -> FunctionPair:
        pair = self.pair()
        if self.family == "custom":
            report = validate_assumptions(pair)
            if not report.passed:
                first = report.violations[0]
                raise ConfigError(f"pairs: custom pair violates assumption(s) {sorted(report.tags())}; "
                                  f"first: ({first.tag}) at x={first.x:g}: {first.detail}")
        return pair


def _markov_measure(cfg: JobConfig):
    if not cfg.transition:
        raise ConfigError("markov: method 'markov' needs a 2x2 'transition' matrix")
    try:
        return make_markov_measure(cfg.transition)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"markov: {exc}") from None


def cmd_eval(cfg: JobConfig) -> list:
    """Rows (x, value, err) over the configured grid.

    err is the a-priori bound max(p,q)^k for fixedpoint, the half-width of
    the bracket for enumerate (value is its midpoint), and the standard error
    for Monte Carlo.
    """
    if cfg.method not in METHODS:
        raise ConfigError(f"config: method must be one of {METHODS}, got {cfg.method!r}")
    pair = cfg.validated_pair()
    grid = cfg.grid_points()
    try:
        if cfg.method == "fixedpoint":
            m = cfg.bernoulli()
            return [(float(x), v.value, v.error_bound) for x, v in grid_table(pair, m, grid, cfg.k)]
        if cfg.method == "montecarlo":
            m = cfg.bernoulli()
            ests = [monte_carlo(pair, m, x, cfg.n_samples, cfg.max_steps, cfg.seed) for x in grid]
            return [(float(x), e.estimate, e.std_error) for x, e in zip(grid, ests)]
        if cfg.method == "markov":
            mm = _markov_measure(cfg)
            if cfg.markov_mc:
                ests = [markov_monte_carlo(pair, mm, x, cfg.n_samples, cfg.max_steps, cfg.seed) for x in grid]
                return [(float(x), e.estimate, e.std_error) for x, e in zip(grid, ests)]
            brackets = pmap(lambda x: markov_enumerate_bracket(pair, mm, x, cfg.depth), grid)
        else:
            m = cfg.bernoulli()
            brackets = pmap(lambda x: enumerate_bracket(pair, m, x, cfg.depth), grid)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{cfg.method}: {exc}") from None
    return [(float(x), float((b.lower + b.upper) / 2), float(b.undecided_mass / 2)) for x, b in zip(grid, brackets)]


def cmd_intervals(cfg: JobConfig) -> list:
    """Rows (level, left, right, value_num, value_den) of the plateau tree."""
    pair = cfg.validated_pair()
    try:
        nodes = plateau_tree(pair, cfg.bernoulli(), cfg.levels)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"intervals: {exc}") from None
    return [(nd.level, float(nd.left), float(nd.right), nd.value.numerator, nd.value.denominator) for nd in nodes]


def cmd_verify(cfg: JobConfig | None = None, suites=None) -> list:
    extra = {}
    if cfg is not None and cfg.family == "custom":
        extra["config pair"] = cfg.pair()
    return checks.run_suites(suites, extra)


def cmd_plot(tables, labels=(), style: str = "line", title: str = "") -> str:
    curves = [[(r[0], r[1]) for r in rows] for rows in tables]
    return svg.render(curves, labels, style, title=title)


def format_eval_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "value", "err"])
    for x, v, e in rows:
        writer.writerow([f"{x:.17g}", f"{v:.17g}", f"{e:.17g}"])
    return buf.getvalue()


def format_intervals_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["level", "left", "right", "value_num", "value_den"])
    for level, left, right, num, den in rows:
        writer.writerow([level, repr(left), repr(right), num, den])
    return buf.getvalue()


def read_eval_csv(path) -> list:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or reader.fieldnames[:2] != ["x", "value"]:
            raise ConfigError(f"plot: {path} is not an eval table (expected header x,value,err)")
        return [(float(r["x"]), float(r["value"]), float(r.get("err") or 0.0)) for r in reader]


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load_config(args) -> JobConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config: cannot read {args.config}: {exc}") from None
    cfg = JobConfig.from_dict(data)
    for key in ("family", "p", "method", "k", "depth", "n_samples", "max_steps", "seed", "levels"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "family", None) == "minkowski" and "params" not in data:
        cfg.params = {}
    if getattr(args, "a", None) is not None or getattr(args, "b", None) is not None:
        cfg.params = dict(cfg.params or {})
        if args.a is not None:
            cfg.params["a"] = args.a
        if args.b is not None:
            cfg.params["b"] = args.b
    if getattr(args, "grid", None):
        lo, hi, count = args.grid
        cfg.grid = {"lo": lo, "hi": hi, "count": int(count)}
    if getattr(args, "transition", None):
        cfg.transition = [row.split(",") for row in args.transition.split(";")]
    if getattr(args, "mc", False):
        cfg.markov_mc = True
    if getattr(args, "output", None):
        cfg.output = {"path": args.output, "format": "csv"}
    return cfg


def _job_args(sub: argparse.ArgumentParser, with_method: bool = True) -> None:
    sub.add_argument("--config", help="JSON config file; flags override its keys")
    sub.add_argument("--family", choices=FAMILIES)
    sub.add_argument("-a", dest="a", help="affine parameter a (rational, e.g. 1/3)")
    sub.add_argument("-b", dest="b", help="affine parameter b")
    sub.add_argument("-p", dest="p", help="probability of symbol 0 (rational)")
    if with_method:
        sub.add_argument("--method", choices=METHODS)
    sub.add_argument("-k", dest="k", type=int, help="fixed-point depth")
    sub.add_argument("--depth", type=int, help="enumeration depth")
    sub.add_argument("--n-samples", dest="n_samples", type=int)
    sub.add_argument("--max-steps", dest="max_steps", type=int)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--grid", nargs=3, metavar=("LO", "HI", "COUNT"))
    sub.add_argument("-o", "--output", help="output path ('-' for stdout)")
    sub.add_argument("--plot", metavar="SVG", help="also write an SVG plot of the table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singular-iter",
                                     description="Divergence probabilities of random iteration of two monotone maps.")
    subs = parser.add_subparsers(dest="command", required=True)

    _job_args(subs.add_parser("eval", help="tabulate F_p on a grid"))
    _job_args(subs.add_parser("mc", help="Monte Carlo estimate of F_p on a grid"), with_method=False)
    mk = subs.add_parser("markov", help="F for a two-symbol Markov measure")
    _job_args(mk, with_method=False)
    mk.add_argument("--transition", help="rows separated by ';', entries by ',' (e.g. '0,1;1/2,1/2')")
    mk.add_argument("--mc", action="store_true", help="Monte Carlo instead of enumeration")

    iv = subs.add_parser("intervals", help="list the plateau intervals of F_p")
    iv.add_argument("--config")
    iv.add_argument("--family", choices=FAMILIES)
    iv.add_argument("-a", dest="a")
    iv.add_argument("-b", dest="b")
    iv.add_argument("-p", dest="p")
    iv.add_argument("--levels", type=int)
    iv.add_argument("-o", "--output")

    vf = subs.add_parser("verify", help="run the invariant suites")
    vf.add_argument("--config", help="config whose custom pair is validated alongside the built-ins")
    vf.add_argument("--suite", action="append", choices=list(checks.SUITES))

    pl = subs.add_parser("plot", help="plot eval CSV tables as SVG")
    pl.add_argument("tables", nargs="+", help="eval CSV files (two tables get a residual annotation)")
    pl.add_argument("--label", action="append", default=[])
    pl.add_argument("--style", choices=("line", "step"), default="line")
    pl.add_argument("--title", default="")
    pl.add_argument("-o", "--output", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("eval", "mc", "markov"):
            cfg = _load_config(args)
            if args.command == "mc":
                cfg.method = "montecarlo"
            elif args.command == "markov":
                cfg.method = "markov"
            rows = cmd_eval(cfg)
            _emit(format_eval_csv(rows), cfg.output.get("path", "-"))
            if args.plot:
                _emit(cmd_plot([rows]), args.plot)
            print(json.dumps(cfg.metadata(), sort_keys=True), file=sys.stderr)
            return 0
        if args.command == "intervals":
            cfg = _load_config(args)
            _emit(format_intervals_csv(cmd_intervals(cfg)), cfg.output.get("path", "-"))
            return 0
        if args.command == "verify":
            cfg = _load_config(args) if args.config else None
            results = cmd_verify(cfg, args.suite)
            for c in results:
                status = "PASS" if c.passed else "FAIL"
                print(f"[{status}] {c.suite}: {c.name}" + (f" ({c.detail})" if c.detail else ""))
            failed = sum(not c.passed for c in results)
            print(f"{len(results) - failed}/{len(results)} checks passed")
            return 1 if failed else 0
        if args.command == "plot":
            tables = [read_eval_csv(path) for path in args.tables]
            _emit(cmd_plot(tables, args.label, args.style, args.title), args.output)
            return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
