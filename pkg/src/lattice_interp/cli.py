"""lattice-interp: sharp constants, curve CSVs, verification suites, spectra.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
Settings come from flags, then a JSON file given by --config, then defaults.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import curves, spectral, verify
from .constants import ADMISSIBILITY_RULE, InadmissibleError, check_admissible, sharp_constant
from .lattice import DEFAULT_RADIUS, DiffOperatorSpec, LatticeSeq, green_solve, interpolation_ratio, lattice_sharp_ratio

__all__ = ["RunConfig", "main", "build_parser"]

DEFAULTS = {
    "constants": {"dim": 1, "order": 1, "format": "json", "oracle": False, "radius": None},
    "curve": {"format": "csv", "grid": None},
    "verify": {"suite": "all", "seed": verify.DEFAULT_SEED, "format": "json", "fast": False, "corrupt": 0.0},
    "spectrum": {"dim": 1, "order": 1, "format": "json", "radius": None, "well": None, "potential": None},
}
_SPECTRUM_RADIUS = {1: 40, 2: 12, 3: 8}


class UsageError(Exception):
    """Bad flags or values; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output: str = None
    format: str = "json"

    def require(self, *keys):
        missing = [k for k in keys if self.params.get(k) is None]
        if missing:
            raise UsageError(f"{self.command}: missing required parameter(s): {', '.join(missing)}")


def build_parser():
    p = argparse.ArgumentParser(prog="lattice-interp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file with parameter values (flags take precedence)")
        sp.add_argument("--output", help="write to this path instead of stdout")
        sp.add_argument("--format", choices=("csv", "json"))

    c = sub.add_parser("constants", help="sharp constant K(theta) for (dim, order)")
    common(c)
    c.add_argument("--dim", type=int)
    c.add_argument("--order", type=int)
    c.add_argument("--theta", type=float)
    c.add_argument("--oracle", action="store_true", default=None, help="cross-check on the truncated lattice")
    c.add_argument("--radius", type=int, help="box radius for --oracle")

    c = sub.add_parser("curve", help="sample a registered curve as CSV")
    common(c)
    c.add_argument("--name", help=f"one of {', '.join(sorted(curves.CURVES))}")
    c.add_argument("--grid", help="lo:hi:step or a comma-separated list")

    c = sub.add_parser("verify", help="run verification suites")
    common(c)
    c.add_argument("--suite", help=f"one of {', '.join(verify.SUITES)}, all")
    c.add_argument("--seed", type=int)
    c.add_argument("--fast", action="store_true", default=None, help="smaller boxes for the lattice cross-checks")
    c.add_argument("--corrupt", type=float, help=argparse.SUPPRESS)

    c = sub.add_parser("spectrum", help="negative spectrum and Lieb-Thirring bound")
    common(c)
    c.add_argument("--dim", type=int)
    c.add_argument("--order", type=int)
    c.add_argument("--theta", type=float)
    c.add_argument("--radius", type=int)
    c.add_argument("--well", help="depth,halfwidth: V = depth on the cube |k_j| <= halfwidth")
    c.add_argument("--potential", help="file with one value per line, centered at 0")
    return p


def _config(args):
    fileconf = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                fileconf = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(fileconf, dict):
            raise UsageError("config file must hold a JSON object")
    params = dict(DEFAULTS[args.command])
    params.update({k: v for k, v in fileconf.items() if k != "output"})
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "config")}
    params.update(flags)
    output = params.pop("output", None) or fileconf.get("output")
    fmt = params.pop("format")
    if fmt not in ("csv", "json"):
        raise UsageError(f"unknown format {fmt!r}")
    return RunConfig(args.command, params, output, fmt)


def parse_grid(spec):
    if isinstance(spec, list):
        return [float(x) for x in spec]
    try:
        if ":" in spec:
            lo, hi, step = (float(x) for x in spec.split(":"))
            if not step > 0 or hi < lo:
                raise ValueError
            n = int(math.floor((hi - lo) / step + 1e-9)) + 1
            return [round(lo + i * step, 12) for i in range(n)]
        return [float(x) for x in spec.split(",")]
    except ValueError:
        raise UsageError(f"malformed grid {spec!r}; use lo:hi:step or a comma-separated list") from None


# commands


def _oracle_check(dim, order, theta, res, radius):
    radius = radius or (80 if order > 1 else DEFAULT_RADIUS.get(dim, 30))
    lam = res.lambda_star
    if theta == 1.0:
        ratio = interpolation_ratio(LatticeSeq.delta(dim, radius), theta, order)
        lam = None
    elif lam is None or not math.isfinite(lam) or lam <= 0.0 and theta > 0.0:
        ratio, lam = lattice_sharp_ratio(dim, order, theta, radius)
    else:
        ratio = interpolation_ratio(green_solve(DiffOperatorSpec(dim, order, lam), radius), theta, order)
    return {"radius": radius, "lambda": lam, "ratio": ratio, "discrepancy": abs(ratio - res.constant)}


def cmd_constants(cfg):
    cfg.require("theta")
    dim, order, theta = int(cfg.params["dim"]), int(cfg.params["order"]), float(cfg.params["theta"])
    res = sharp_constant(dim, order, theta)
    report = {
        "dim": dim,
        "order": order,
        "theta": theta,
        "K": res.constant,
        "lambda_star": res.lambda_star,
        "extremal": res.extremal,
    }
    if cfg.params.get("oracle"):
        report["oracle"] = _oracle_check(dim, order, theta, res, cfg.params.get("radius"))
    return report, 0


def cmd_curve(cfg):
    cfg.require("name")
    grid = cfg.params.get("grid")
    grid = None if grid is None else parse_grid(grid)
    try:
        sample = curves.sample_curve(cfg.params["name"], grid)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    return sample, 0


def cmd_verify(cfg):
    names = str(cfg.params["suite"]).split(",")
    ctx = verify.Context(seed=int(cfg.params["seed"]), corrupt=float(cfg.params["corrupt"]), fast=bool(cfg.params["fast"]))
    try:
        checks = verify.run_suites(names, ctx)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    report = verify.report_dict(checks, ctx)
    return report, 0 if report["passed"] else 1


def _load_potential(cfg, dim):
    well, path = cfg.params.get("well"), cfg.params.get("potential")
    if (well is None) == (path is None):
        raise UsageError("give exactly one of --well depth,halfwidth or --potential FILE")
    if well is not None:
        try:
            depth, half = str(well).split(",")
            depth, half = float(depth), int(half)
        except ValueError:
            raise UsageError(f"malformed --well {well!r}; expected depth,halfwidth") from None
        if half < 0:
            raise UsageError("halfwidth must be >= 0")
        values = np.full((2 * half + 1,) * dim, depth)
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                flat = np.array([float(line) for line in fh if line.strip()])
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read potential file {path}: {exc}") from None
        side = round(flat.size ** (1.0 / dim))
        if side**dim != flat.size or side % 2 == 0:
            raise UsageError(f"potential file needs (2r+1)^{dim} values (odd count, centered); got {flat.size}")
        values = flat.reshape((side,) * dim)
    if np.any(values < 0.0) or not np.all(np.isfinite(values)):
        raise UsageError("the potential must satisfy V(k) >= 0 at every site")
    return LatticeSeq(values)


def cmd_spectrum(cfg):
    cfg.require("theta")
    dim, order, theta = int(cfg.params["dim"]), int(cfg.params["order"]), float(cfg.params["theta"])
    check_admissible(dim, order, theta)
    V = _load_potential(cfg, dim)
    radius = cfg.params.get("radius")
    if radius is None:
        radius = max(_SPECTRUM_RADIUS.get(dim, 8), 4 * V.radius)
    spec = spectral.SchrodingerSpec(dim, order, V, int(radius))
    report = spectral.spectral_report(spec, theta).as_dict()
    report.update({"dim": dim, "order": order, "radius": int(radius)})
    return report, 0


COMMANDS = {"constants": cmd_constants, "curve": cmd_curve, "verify": cmd_verify, "spectrum": cmd_spectrum}


# output


def _flatten(report, prefix=""):
    for k, v in report.items():
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", v


def _fmt(v):
    return repr(v) if isinstance(v, float) else ("" if v is None else str(v))


def render(cfg, result):
    if isinstance(result, curves.CurveSample):
        if cfg.format == "csv":
            return curves.to_csv(result)
        obj = {"curve": result.name, "provenance": result.provenance, "columns": [c for c, _ in result.columns], "rows": result.rows}
        return (json.dumps(obj, indent=2) + "\n").encode("utf-8")
    if cfg.format == "json":
        return (json.dumps(result, indent=2) + "\n").encode("utf-8")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if cfg.command == "verify":
        w.writerow(["suite", "name", "ref", "discrepancy", "tolerance", "passed", "detail"])
        for chk in result["checks"]:
            w.writerow([_fmt(chk[k]) for k in ("suite", "name", "ref", "discrepancy", "tolerance", "passed", "detail")])
    elif cfg.command == "spectrum":
        w.writerow(["key", "value"])
        for k, v in _flatten({k: v for k, v in result.items() if k != "eigenvalues"}):
            w.writerow([k, _fmt(v)])
        for i, ev in enumerate(result["eigenvalues"]):
            w.writerow([f"eigenvalue.{i}", _fmt(ev)])
    else:
        w.writerow(["key", "value"])
        for k, v in _flatten(result):
            w.writerow([k, _fmt(v)])
    return buf.getvalue().encode("utf-8")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0) and 2
    try:
        cfg = _config(args)
        result, code = COMMANDS[cfg.command](cfg)
        data = render(cfg, result)
    except InadmissibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
