"""Negativity over 1-D and 2-D parameter grids, including the figure presets."""
from __future__ import annotations

import datetime
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from . import _kernels
from .entanglement import (JACOBI_MAX_SWEEPS, JACOBI_TOL, mode_density, negativity,
                           negativity_closed_form)
from .errors import ConvergenceError, ParameterError
from .model import ModelParams, amplitudes
from .oracle import amplitudes_oracle

AXIS_NAMES = ("T", "eta", "zeta", "theta")
PARAM_NAMES = ("T", "eta", "zeta", "theta", "n1", "n2")
ENGINES = ("closed_form", "oracle", "both")


@dataclass(frozen=True)
class Axis:
    """Inclusive uniform grid ``linspace(start, stop, count)`` over one parameter."""

    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ParameterError("axis", f"cannot sweep {self.name!r}; choose from {AXIS_NAMES}")
        if isinstance(self.count, bool) or int(self.count) != self.count or self.count < 2:
            raise ParameterError("samples", f"axis {self.name} needs count >= 2, got {self.count}")
        for end in (self.start, self.stop):
            if not math.isfinite(end):
                raise ParameterError("axis", f"axis {self.name} bounds must be finite")
        if not self.start < self.stop:
            raise ParameterError("axis", f"axis {self.name} needs start < stop, "
                                         f"got {self.start} >= {self.stop}")
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "stop", float(self.stop))
        object.__setattr__(self, "count", int(self.count))

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """A grid of parameter points.

    ``fixed`` holds every parameter of ``PARAM_NAMES`` that is not swept;
    swept names must not appear in it.
    """

    fixed: Mapping[str, float]
    axis1: Axis
    axis2: Optional[Axis] = None
    engine: str = "closed_form"

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ParameterError("engine", f"unknown engine {self.engine!r}; choose from {ENGINES}")
        swept = [ax.name for ax in self.axes]
        if len(set(swept)) != len(swept):
            raise ParameterError("axis2", f"axes must sweep distinct parameters, got {swept}")
        fixed = dict(self.fixed)
        unknown = set(fixed) - set(PARAM_NAMES)
        if unknown:
            raise ParameterError("fixed", f"unknown parameters {sorted(unknown)}")
        clash = set(fixed) & set(swept)
        if clash:
            raise ParameterError("fixed", f"{sorted(clash)} are both swept and fixed")
        missing = set(PARAM_NAMES) - set(fixed) - set(swept)
        if missing:
            raise ParameterError(sorted(missing)[0], "no value given")
        object.__setattr__(self, "fixed", fixed)

    @classmethod
    def from_params(cls, params: ModelParams, t_scaled, axis1, axis2=None, engine="closed_form"):
        """Build a spec from full parameters, dropping whatever the axes sweep."""
        base = {"T": t_scaled, "eta": params.eta, "zeta": params.zeta, "theta": params.theta,
                "n1": params.n1, "n2": params.n2}
        swept = {axis1.name} | ({axis2.name} if axis2 else set())
        fixed = {k: v for k, v in base.items() if k not in swept and v is not None}
        return cls(fixed, axis1, axis2, engine)

    @property
    def axes(self):
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)

    @property
    def shape(self):
        return tuple(ax.count for ax in self.axes)

    def points(self):
        """Grid points as (index tuple, parameter dict) in lexicographic index order."""
        grids = [ax.values() for ax in self.axes]
        for index in np.ndindex(*self.shape):
            point = dict(self.fixed)
            for ax, grid, i in zip(self.axes, grids, index):
                point[ax.name] = float(grid[i])
            yield index, point


@dataclass(frozen=True)
class SweepRow:
    index: tuple
    T: float
    eta: float
    zeta: float
    theta: float
    n1: int
    n2: int
    negativity: float
    negativity_closed_form: float
    engine_gap: float


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list
    meta: dict = field(default_factory=dict)

    def axis_values(self, row: SweepRow):
        return tuple(getattr(row, ax.name) for ax in self.spec.axes)

    def column(self, name) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])

    def grid(self, name) -> np.ndarray:
        return self.column(name).reshape(self.spec.shape)


def point_params(point: Mapping) -> ModelParams:
    return ModelParams(n1=point["n1"], n2=point["n2"], theta=point["theta"],
                       eta=point["eta"], zeta=point["zeta"])


def evaluate_point(point: Mapping, engine: str = "closed_form"):
    """Return (negativity, negativity_closed_form, engine_gap) at one point.

    ``negativity`` is the eigenvalue-path value from the selected engine's
    amplitudes (the closed form for ``both``); ``negativity_closed_form`` is
    |ad| + |bc| from the same amplitudes. ``engine_gap`` is the difference
    between the two engines' eigenvalue-path values for ``both``, else 0.
    """
    params = point_params(point)
    t = point["T"]
    amps = amplitudes_oracle(params, t) if engine == "oracle" else amplitudes(params, t)
    value = negativity(mode_density(amps, params.n1, params.n2)).value
    gap = 0.0
    if engine == "both":
        ref = negativity(mode_density(amplitudes_oracle(params, t), params.n1, params.n2)).value
        gap = abs(value - ref)
    return value, negativity_closed_form(amps), gap


def _row(index, point, value, closed, gap):
    return SweepRow(tuple(int(i) for i in index), point["T"], point["eta"], point["zeta"],
                    point["theta"], point["n1"], point["n2"], float(value), float(closed), float(gap))


def _evaluate_chunk(chunk, engine):
    """Evaluate (index, point) pairs; the closed form goes through the batch kernel."""
    if not chunk:
        return []
    cols = {name: [p[name] for _, p in chunk] for name in PARAM_NAMES}
    eig, closed, failed = _kernels.negativity_batch(
        np.array(cols["n1"], dtype=int), np.array(cols["n2"], dtype=int), cols["theta"],
        cols["eta"], cols["zeta"], cols["T"], JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if failed >= 0:
        raise ConvergenceError(f"Jacobi iteration did not converge at grid index "
                               f"{tuple(int(i) for i in chunk[failed][0])}")
    rows = []
    for k, (index, point) in enumerate(chunk):
        gap = 0.0
        if engine == "oracle":
            value, closed_k, gap = evaluate_point(point, "oracle")
        else:
            value, closed_k = eig[k], closed[k]
            if engine == "both":
                params = point_params(point)
                ref = negativity(mode_density(amplitudes_oracle(params, point["T"]))).value
                gap = abs(value - ref)
        rows.append(_row(index, point, value, closed_k, gap))
    return rows


def _describe(point):
    return ", ".join(f"{k}={point[k]!r}" for k in PARAM_NAMES)


def validate_grid(spec: SweepSpec) -> None:
    """Raise ParameterError naming the first invalid grid point, if any.

    Parameters are validated independently of each other, so checking each
    axis value with the other axes at their start is enough; the first
    failing point in lexicographic order is the smallest such candidate.
    """
    starts = {ax.name: ax.start for ax in spec.axes}
    candidates = []
    for pos, ax in enumerate(spec.axes):
        for i, v in enumerate(ax.values()):
            try:
                point_params({**spec.fixed, **starts, ax.name: float(v)})
            except ParameterError as exc:
                index = [0] * len(spec.axes)
                index[pos] = i
                candidates.append((tuple(index), exc))
                break
    if not candidates:
        return
    index, exc = min(candidates, key=lambda c: c[0])
    point = dict(spec.fixed)
    for ax, j in zip(spec.axes, index):
        point[ax.name] = float(ax.values()[j])
    raise ParameterError(exc.field, f"{exc} at grid index {index} ({_describe(point)})")


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; rows come back in lexicographic index order.

    With ``workers > 1`` contiguous chunks are farmed out to a process pool.
    Every point is computed independently, so rows are identical for any
    worker count.
    """
    validate_grid(spec)
    points = list(spec.points())
    if workers <= 1 or len(points) < 2 * workers:
        rows = _evaluate_chunk(points, spec.engine)
    else:
        size = math.ceil(len(points) / (4 * workers))
        chunks = [points[i:i + size] for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_evaluate_chunk, chunks, [spec.engine] * len(chunks))
            rows = [row for part in parts for row in part]
    meta = {
        "fixed": dict(spec.fixed),
        "axes": [(ax.name, ax.start, ax.stop, ax.count) for ax in spec.axes],
        "shape": spec.shape,
        "engine": spec.engine,
        "kernel": _kernels.BACKEND,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    return SweepResult(spec, rows, meta)


def argmax(result: SweepResult):
    """(axis values, negativity) of the largest value; first index wins ties."""
    if not result.rows:
        raise ValueError("argmax of an empty sweep")
    best = result.rows[0]
    for row in result.rows[1:]:
        if row.negativity > best.negativity:
            best = row
    return result.axis_values(best), best.negativity


def engine_gap_report(spec: SweepSpec, workers: int = 1) -> float:
    if spec.engine != "both":
        raise ParameterError("engine", "engine gap needs engine='both'")
    return max(row.engine_gap for row in run_sweep(spec, workers).rows)


# figure presets -----------------------------------------------------------

_PANELS = {"a": (0, 0), "b": (100, 100), "c": (0, 100)}
_PI = math.pi


def _fig1(n1, n2):
    count, stop = (2001, 2 * _PI) if (n1, n2) == (0, 0) else (5001, 0.5)
    return SweepSpec({"eta": 1.0, "zeta": 0.0, "theta": _PI / 4, "n1": n1, "n2": n2},
                     Axis("T", 0.0, stop, count))


def _fig2(n1, n2):
    return SweepSpec({"T": 1.0, "zeta": 10.0, "theta": _PI / 4, "n1": n1, "n2": n2},
                     Axis("eta", 0.0, 10.0, 1001))


def _fig3():
    return SweepSpec({"T": 1.0, "eta": 1.0, "n1": 100, "n2": 100},
                     Axis("zeta", 0.0, 20.0, 101), Axis("theta", 0.0, _PI, 181))


def _fig4(n1, n2):
    return SweepSpec({"eta": 1.0, "zeta": 10.0, "n1": n1, "n2": n2},
                     Axis("T", 0.0, 0.5, 501), Axis("theta", 0.0, _PI, 181))


FIGURES = {"fig3": _fig3}
for _p, (_n1, _n2) in _PANELS.items():
    FIGURES[f"fig1{_p}"] = (lambda n1=_n1, n2=_n2: _fig1(n1, n2))
    FIGURES[f"fig2{_p}"] = (lambda n1=_n1, n2=_n2: _fig2(n1, n2))
    FIGURES[f"fig4{_p}"] = (lambda n1=_n1, n2=_n2: _fig4(n1, n2))


def figure_spec(name: str, engine: str = "closed_form") -> SweepSpec:
    try:
        spec = FIGURES[name]()
    except KeyError:
        raise ParameterError("command", f"unknown figure {name!r}") from None
    return SweepSpec(spec.fixed, spec.axis1, spec.axis2, engine)
