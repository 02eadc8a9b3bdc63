"""Sampled curves for every sharp constant and energy profile."""

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import green1d, green2d, greennd, higher_order

__all__ = ["CurveSample", "CURVES", "default_grid", "sample_curve", "to_csv"]

_NUDGE = 1e-6
_POINTS = 201


@dataclass(frozen=True)
class CurveSample:
    name: str
    columns: List[Tuple[str, str]]
    rows: List[Tuple[float, ...]]
    provenance: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if any(not math.isfinite(v) for row in self.rows for v in row):
            raise ValueError(f"curve {self.name}: non-finite value")
        xs = [row[0] for row in self.rows]
        if len(xs) > 1:
            steps = np.diff(xs)
            if not (np.all(steps > 0) or np.all(steps < 0)):
                raise ValueError(f"curve {self.name}: abscissa not strictly monotone")


@dataclass(frozen=True)
class _Curve:
    columns: List[Tuple[str, str]]
    row: Callable[[float], Tuple[float, ...]]
    accepts: Callable[[float], bool]
    domain: str
    grid: Callable[[], List[float]]
    ref: str


def _uniform(lo, hi, nudge_lo=False, nudge_hi=False, skip=()):
    xs = np.linspace(lo + (_NUDGE if nudge_lo else 0.0), hi - (_NUDGE if nudge_hi else 0.0), _POINTS)
    return [float(x) for x in xs if float(x) not in skip]


def _v0_row(d):
    V0, V = green2d.V0_majorant(d), green2d.V2(d)
    return (d, V0, V, V0 - V)


CURVES: Dict[str, _Curve] = {
    "k1_theta": _Curve(
        [("theta", "1"), ("K", "1")],
        lambda t: (t, green1d.K1_theta(t).constant),
        lambda t: 0.5 <= t <= 1.0, "[1/2, 1]",
        lambda: _uniform(0.5, 1.0), "sharp constant, dim 1, order 1",
    ),
    "c11_per": _Curve(
        [("theta", "1"), ("C_per", "1")],
        lambda t: (t, higher_order.periodic_C11(t)),
        lambda t: 0.0 <= t <= 0.5, "[0, 1/2]",
        lambda: _uniform(0.0, 0.5), "periodic constant on the circle",
    ),
    "k2_theta": _Curve(
        [("theta", "1"), ("K", "1")],
        lambda t: (t, green2d.K2_theta(t).constant),
        lambda t: 0.0 < t <= 1.0, "(0, 1]",
        lambda: _uniform(0.0, 1.0, nudge_lo=True), "sharp constant, dim 2, order 1",
    ),
    "d_lambda_2d": _Curve(
        [("lambda", "1"), ("d", "1")],
        lambda x: (x, green2d.d2_of_lambda(x)),
        lambda x: x > 0.0 or x < -8.0, "lambda > 0 or lambda < -8",
        lambda: _uniform(0.0, 40.0, nudge_lo=True), "energy ratio of G_lambda, dim 2",
    ),
    "lambda_d_2d": _Curve(
        [("d", "1"), ("lambda", "1")],
        lambda d: (d, green2d.lambda2_of_d(d)),
        lambda d: 0.0 < d < 8.0 and d != 4.0, "(0, 4) U (4, 8)",
        lambda: _uniform(0.0, 8.0, True, True, skip=(4.0,)), "inverse energy ratio, dim 2",
    ),
    "v_d_1d": _Curve(
        [("d", "1"), ("V", "1")],
        lambda d: (d, green1d.V1(d)),
        lambda d: 0.0 <= d <= 4.0, "[0, 4]",
        lambda: _uniform(0.0, 4.0), "V(d), dim 1, order 1",
    ),
    "v0_vs_v_2d": _Curve(
        [("d", "1"), ("V0", "1"), ("V", "1"), ("margin", "1")],
        _v0_row,
        lambda d: 0.0 < d < 8.0, "(0, 8)",
        lambda: _uniform(0.0, 8.0, True, True), "majorant V0 against V, dim 2",
    ),
    "k3_theta": _Curve(
        [("theta", "1"), ("K", "1")],
        lambda t: (t, greennd.K3_theta(t).constant),
        lambda t: 0.0 <= t <= 1.0, "[0, 1]",
        lambda: _uniform(0.0, 1.0), "sharp constant, dim 3, order 1",
    ),
    "k12_theta": _Curve(
        [("theta", "1"), ("K", "1")],
        lambda t: (t, higher_order.K12_theta(t).constant),
        lambda t: 0.75 <= t <= 1.0, "[3/4, 1]",
        lambda: _uniform(0.75, 1.0), "sharp constant, dim 1, order 2",
    ),
    "g_16_3": _Curve(
        [("n", "1"), ("G", "1")],
        lambda n: (n, higher_order.green12_n(16.0 / 3.0, int(n))),
        lambda n: float(n).is_integer(), "integers",
        lambda: [float(n) for n in range(13)], "extremal G_(16/3), order 2",
    ),
    "v_d_order2": _Curve(
        [("d", "1"), ("V", "1")],
        lambda d: (d, higher_order.V12(d)),
        lambda d: 0.0 < d < 16.0, "(0, 16)",
        lambda: _uniform(0.0, 16.0, True, True), "V(d), dim 1, order 2",
    ),
}


def default_grid(name):
    return list(_lookup(name).grid())


def _lookup(name):
    try:
        return CURVES[name]
    except KeyError:
        raise KeyError(f"unknown curve {name!r}; registered: {sorted(CURVES)}") from None


def _threads():
    import os

    env = os.environ.get("LATTICE_INTERP_THREADS")
    return max(1, int(env)) if env else min(4, os.cpu_count() or 1)


def sample_curve(name, grid=None):
    """Evaluate a registered curve; rows follow the grid order."""
    curve = _lookup(name)
    xs = default_grid(name) if grid is None else [float(x) for x in grid]
    if not xs:
        raise ValueError("empty grid")
    for x in xs:
        if not math.isfinite(x) or not curve.accepts(x):
            raise ValueError(f"grid point {x!r} outside the domain {curve.domain} of {name}")
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = [tuple(float(v) for v in r) for r in pool.map(curve.row, xs)]
    return CurveSample(name, list(curve.columns), rows, {"ref": curve.ref, "domain": curve.domain})


def to_csv(sample):
    """UTF-8 CSV: a comment header, the column labels, then shortest round-trip floats."""
    out = io.StringIO()
    out.write(f"# curve={sample.name} paper_ref={sample.provenance.get('ref', '').replace(' ', '_')}\n")
    out.write(",".join(label for label, _ in sample.columns) + "\n")
    for row in sample.rows:
        out.write(",".join(repr(v) for v in row) + "\n")
    return out.getvalue().encode("utf-8")
