"""Command-line entry point: ``kato-lab {constants,verify,sweep,density}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .closed_forms import constants_reports
from .errors import KatoLabError
from .experiments import SCENARIOS, ScenarioConfig, catalog, make_field, run_scenario, run_sweep, validate_config
from .functionals import density_profile
from .params import GridSpec
from .spectral import forward_transform

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_COLUMNS = ["scenario", "param_alpha", "param_beta", "param_n", "measured", "predicted",
                  "rel_error", "slope", "pass", "walltime_s"]

# option name -> (type, default); defaults are applied after --config merging
_OPTIONS = {
    "alpha": (float, 0.0),
    "beta": (float, 2.0),
    "dim": (int, 1),
    "grid_n": (int, None),
    "extent": (float, None),
    "tmax": (float, None),
    "tsteps": (int, 256),
    "cutoff_cells": (int, 1),
    "data": (str, None),
    "format": (str, "csv"),
    "out": (str, None),
    "tolerance": (float, None),
}


class UsageError(KatoLabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--dim", type=int)
    p.add_argument("--grid-n", dest="grid_n", type=int)
    p.add_argument("--extent", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--tsteps", type=int)
    p.add_argument("--cutoff-cells", dest="cutoff_cells", type=int)
    p.add_argument("--data")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--config", help="key=value file; command-line flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kato-lab", description="Smoothing-estimate constants and numerical checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_common(sub.add_parser("constants", help="closed-form constants against quadrature oracles"))
    v = sub.add_parser("verify", help="run one named scenario")
    v.add_argument("scenario", choices=sorted(SCENARIOS))
    _add_common(v)
    _add_common(sub.add_parser("sweep", help="run the default scenario catalog"))
    d = sub.add_parser("density", help="time-integrated density on a scan line")
    d.add_argument("--xmax", type=float, default=10.0)
    d.add_argument("--xpoints", type=int, default=401)
    _add_common(d)
    return parser


def read_config(path: str) -> dict:
    """Parse a key=value file. Keys may use '-' or '_'; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        conv = _OPTIONS[key][0]
        try:
            out[key] = conv(val)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
    return out


def merged_options(ns: argparse.Namespace) -> dict:
    opts = {k: d for k, (_, d) in _OPTIONS.items()}
    if getattr(ns, "config", None):
        try:
            opts.update(read_config(ns.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for k in _OPTIONS:
        v = getattr(ns, k, None)
        if v is not None:
            opts[k] = v
    if opts["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {opts['format']!r}")
    return opts


# ---------------------------------------------------------------------------
# output

def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return "" if v is None else str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    if isinstance(v, np.generic):
        return _json_safe(v.item())
    return v


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([_json_safe({c: r[c] for c in columns}) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


@dataclass
class RunManifest:
    command: str
    options: dict
    version: str = __version__
    started: str = ""
    walltime_s: float = 0.0
    exit_code: int = 0
    artifacts: list = field(default_factory=list)

    def write(self, path: Path) -> None:
        self.artifacts = sorted(set(self.artifacts) | {str(path)})
        path.write_text(json.dumps(_json_safe(self.__dict__), indent=1, sort_keys=True) + "\n")


def _emit(text: str, opts: dict, manifest: RunManifest) -> None:
    if opts["out"]:
        out = Path(opts["out"])
        out.write_text(text)
        manifest.artifacts.append(str(out))
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def _scenario_config(name: str, opts: dict) -> ScenarioConfig:
    return ScenarioConfig(
        scenario=name, n=opts["dim"], alpha=opts["alpha"], beta=opts["beta"], data=opts["data"],
        grid_n=opts["grid_n"], extent=opts["extent"], tmax=opts["tmax"], tsteps=opts["tsteps"],
        cutoff_cells=opts["cutoff_cells"], tolerance=opts["tolerance"],
    )


def _report_diagnostics(reports) -> None:
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        msg = f"{status} {r.scenario} alpha={r.alpha:g} beta={r.beta:g} n={r.n} err={r.rel_error:.3g}"
        if r.error:
            msg += f" error={r.error}"
        print(msg, file=sys.stderr)


def cmd_constants(opts, manifest) -> int:
    rows = [r.to_dict() for r in constants_reports()]
    for r in rows:
        r["pass"] = r["rel_residual"] <= (opts["tolerance"] or 1e-6)
    cols = ["name", "params", "formula_value", "oracle_value", "rel_residual", "pass"]
    _emit(render(rows, cols, opts["format"]), opts, manifest)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FAIL


def cmd_verify(name, opts, manifest) -> int:
    cfg = _scenario_config(name, opts)
    validate_config(cfg)  # parameter errors are usage errors, not failed checks
    rep = run_scenario(cfg)
    _report_diagnostics([rep])
    _emit(render([rep.row()], REPORT_COLUMNS, opts["format"]), opts, manifest)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(opts, manifest) -> int:
    reports = run_sweep(catalog())
    _report_diagnostics(reports)
    _emit(render([r.row() for r in reports], REPORT_COLUMNS, opts["format"]), opts, manifest)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_density(ns, opts, manifest) -> int:
    grid = GridSpec(opts["extent"] or 60.0, opts["grid_n"] or 4096)
    f = make_field(opts["data"] or "odd-gaussian", grid)
    if ns.xpoints < 1:
        raise UsageError("--xpoints must be positive")
    xs = np.linspace(-ns.xmax, ns.xmax, ns.xpoints)
    prof = density_profile(forward_transform(f), xs, opts["alpha"], opts["beta"])
    rows = [{"x": float(x), "density": float(d)} for x, d in zip(prof.x, prof.values)]
    _emit(render(rows, ["x", "density"], opts["format"]), opts, manifest)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kato-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        opts = merged_options(ns)
        manifest = RunManifest(ns.command, {}, started=time.strftime("%Y-%m-%dT%H:%M:%S%z"))
        manifest.options = dict(opts, scenario=getattr(ns, "scenario", None))
        if ns.command == "constants":
            code = cmd_constants(opts, manifest)
        elif ns.command == "verify":
            code = cmd_verify(ns.scenario, opts, manifest)
        elif ns.command == "sweep":
            code = cmd_sweep(opts, manifest)
        else:
            code = cmd_density(ns, opts, manifest)
    except (KatoLabError, ValueError) as exc:
        print(f"kato-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if opts["out"]:
        manifest.walltime_s = time.perf_counter() - t0
        manifest.exit_code = code
        manifest.write(Path(str(opts["out"]) + ".manifest.json"))
    return code


if __name__ == "__main__":
    sys.exit(main())
