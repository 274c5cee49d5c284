"""Command-line front-end.

Every command evaluates a quantity over a grid and writes CSV (12 significant
digits) or JSON (``{config, results, diagnostics}``) to stdout.  Exit codes:
0 success, 1 failed self-test, 2 configuration or domain error, 3 numerical
failure.  Errors are written to stderr as a one-line JSON record.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, acceptance
from .distributed import (
    OrderWeight,
    green_distributed,
    green_distributed_series,
    parse_weight,
    second_moment,
    second_moment_asymptote,
)
from .errors import DomainError, NumericalError
from .single_order import PATHS, green_grid, moment
from .specfun import SeriesPolicy, mittag_leffler_neg, mwright_with_path

EXIT_OK, EXIT_SELFTEST_FAILED, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3


class ConfigError(Exception):
    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class _Parser(argparse.ArgumentParser):
    """Raise instead of printing usage and exiting, so errors become JSON records."""

    def error(self, message):
        match = re.search(r"(--[\w-]+)", message)
        raise ConfigError(message, match.group(1) if match else None)


def parse_grid(text: str, name: str) -> list[float]:
    """``start:stop:step`` (inclusive), a comma list, or a single value."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if not step > 0:
                raise ConfigError(f"{name} grid step must be positive", name)
            if stop < start:
                raise ConfigError(f"{name} grid stop must be >= start", name)
            n = int(round((stop - start) / step)) + 1
            return [start + i * step for i in range(n)]
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(
            f"cannot parse {name} grid {text!r}; use start:stop:step, a comma list or a number", name
        ) from None


@dataclass
class RunConfig:
    command: str
    output_format: str = "csv"
    weight_spec: str | None = None
    normalize_weights: bool = False
    x: list = field(default_factory=list)
    t: list = field(default_factory=list)
    order: float | None = None
    path: str | None = None
    method: str | None = None
    kmax: int | None = None
    tolerances: dict = field(default_factory=dict)


def _policy(config: RunConfig) -> SeriesPolicy:
    return SeriesPolicy(**config.tolerances)


def _weight(config: RunConfig) -> OrderWeight:
    if config.weight_spec is None:
        if config.order is None:
            raise ConfigError("one of --weight or --beta is required", "--weight")
        return OrderWeight.single(config.order)
    return parse_weight(config.weight_spec, normalize=config.normalize_weights)


def _run_mlf(config):
    policy = _policy(config)
    xs = np.array(config.x)
    if np.any(xs < 0):
        raise DomainError("E_beta(-x) is evaluated for x >= 0", "x")
    values = np.atleast_1d(mittag_leffler_neg(config.order, xs, policy))
    rows = [{"beta": config.order, "x": x, "value": float(v)} for x, v in zip(config.x, values)]
    return ["beta", "x", "value"], rows, {"points": len(rows)}


def _run_mwright(config):
    values, paths = mwright_with_path(config.order, np.array(config.x), _policy(config))
    rows = [{"nu": config.order, "x": x, "value": float(v), "path": str(p)}
            for x, v, p in zip(config.x, np.atleast_1d(values), np.atleast_1d(paths))]
    return ["nu", "x", "value", "path"], rows, {"paths": dict(sorted(Counter(r["path"] for r in rows).items()))}


def _run_green_single(config):
    rows = []
    for t in config.t:
        ev = green_grid(config.order, config.x, t, path=config.path, policy=_policy(config))
        rows += [{"x": x, "t": t, "u": float(u), "path": p}
                 for x, u, p in zip(ev.xs, ev.values, ev.point_paths)]
    return ["x", "t", "u", "path"], rows, {"paths": dict(sorted(Counter(r["path"] for r in rows).items()))}


def _run_green_dist(config):
    weight = _weight(config)
    policy = _policy(config)
    rows = []
    for t in config.t:
        if config.method == "series":
            values = [green_distributed_series(weight, x, t, kmax=config.kmax, policy=policy)
                      for x in config.x]
        else:
            values = np.atleast_1d(green_distributed(weight, np.array(config.x), t, policy=policy))
        rows += [{"x": x, "t": t, "u": float(u), "path": config.method} for x, u in zip(config.x, values)]
    return ["x", "t", "u", "path"], rows, {"weight": weight.describe(), "points": len(rows)}


def _run_moments(config):
    weight = _weight(config)
    nu = weight.single_order
    rows = []
    for t in config.t:
        if nu is not None:
            rows.append({"t": t, "mu2": moment(nu, 1, t), "method": "closed_form"})
        else:
            rows.append({"t": t, "mu2": second_moment(weight, t), "method": "talbot"})
    return ["t", "mu2", "method"], rows, {"weight": weight.describe()}


def _run_asymptotics(config):
    weight = _weight(config)
    rows = []
    for t in config.t:
        mu2 = second_moment(weight, t)
        asym, regime = second_moment_asymptote(weight, t)
        ratio = mu2 / asym if asym != 0 else math.nan
        rows.append({"t": t, "mu2": mu2, "asymptote": asym, "ratio": ratio, "regime": regime})
    return ["t", "mu2", "asymptote", "ratio", "regime"], rows, {"weight": weight.describe()}


RUNNERS = {
    "mlf": _run_mlf,
    "mwright": _run_mwright,
    "green-single": _run_green_single,
    "green-dist": _run_green_dist,
    "moments": _run_moments,
    "asymptotics": _run_asymptotics,
}


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(config: RunConfig, header, rows, diagnostics) -> str:
    if config.output_format == "json":
        doc = {
            "config": {**asdict(config), "version": __version__},
            "results": [{k: _json_value(v) for k, v in row.items()} for row in rows],
            "diagnostics": diagnostics,
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(row[h]) for h in header) + "\n")
    return buf.getvalue()


def run(config: RunConfig, out) -> int:
    """Execute one command, writing its report to ``out``; returns the exit status."""
    if config.command == "selftest":
        outcomes = acceptance.run_all()
        out.write(acceptance.format_report(outcomes))
        return EXIT_OK if all(o.passed for o in outcomes) else EXIT_SELFTEST_FAILED
    header, rows, diagnostics = RUNNERS[config.command](config)
    out.write(render(config, header, rows, diagnostics))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracgreen", description="Green functions of fractional diffusion.")
    parser.add_argument("--version", action="version", version=f"fracgreen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    tol = _Parser(add_help=False)
    tol.add_argument("--rel-tol", type=float, help="series truncation tolerance")
    tol.add_argument("--max-terms", type=int, help="series term cap")
    tol.add_argument("--cancellation-limit", type=float,
                     help="largest term / |sum| above which a series is rejected")
    weight = _Parser(add_help=False)
    weight.add_argument("--weight", help='order weight, e.g. "0.25:0.5,0.75:0.5" or "uniform:1"')
    weight.add_argument("--normalize", action="store_true", help="rescale the weight to unit mass")

    p = sub.add_parser("mlf", parents=[common, tol], help="Mittag-Leffler E_beta(-x)")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--x", required=True)

    p = sub.add_parser("mwright", parents=[common, tol], help="Wright M-function M_nu(x)")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--x", required=True)

    p = sub.add_parser("green-single", parents=[common, tol], help="single-order Green function")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--path", choices=PATHS, default="series")

    p = sub.add_parser("green-dist", parents=[common, tol, weight],
                       help="distributed-order Green function")
    p.add_argument("--x", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--method", choices=("integral", "series"), default="integral")
    p.add_argument("--kmax", type=int, default=80)

    for name, text in (("moments", "second moment mu_2(t)"),
                       ("asymptotics", "second moment against its small/large-t asymptote")):
        p = sub.add_parser(name, parents=[common, weight], help=text)
        p.add_argument("--beta", type=float, help="single order (shorthand for --weight beta:1)")
        p.add_argument("--t", required=True)

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=ns.command, output_format=getattr(ns, "output_format", "csv"))
    if ns.command == "selftest":
        return config
    if getattr(ns, "weight", None) is not None and getattr(ns, "beta", None) is not None:
        raise ConfigError("give either --weight or --beta, not both", "--weight")
    config.weight_spec = getattr(ns, "weight", None)
    config.normalize_weights = bool(getattr(ns, "normalize", False))
    config.order = getattr(ns, "beta", None) if ns.command != "mwright" else ns.nu
    if getattr(ns, "x", None) is not None:
        config.x = parse_grid(ns.x, "--x")
    if getattr(ns, "t", None) is not None:
        config.t = parse_grid(ns.t, "--t")
    config.path = getattr(ns, "path", None)
    config.method = getattr(ns, "method", None)
    config.kmax = getattr(ns, "kmax", None)
    for key in ("rel_tol", "max_terms", "cancellation_limit"):
        value = getattr(ns, key, None)
        if value is not None:
            config.tolerances[key] = value
    return config


def _error(kind, exc, parameter, stream):
    record = {"error": kind, "type": type(exc).__name__, "parameter": parameter, "message": str(exc)}
    stream.write(json.dumps(record) + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        config = config_from_args(build_parser().parse_args(argv))
        return run(config, out)
    except ConfigError as exc:
        _error("config", exc, exc.parameter, err)
        return EXIT_CONFIG
    except DomainError as exc:
        _error("domain", exc, exc.parameter, err)
        return EXIT_CONFIG
    except NumericalError as exc:
        _error("numerical", exc, None, err)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
