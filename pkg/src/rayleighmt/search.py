"""Root search over the complex speed plane.

The objective F = ln |det A| is sampled on a rectangular lattice, strict
interior local minima are refined by a clamped Nelder-Mead simplex, and
refined minima are accepted as surface-wave roots when the secular
determinant is small against the typical determinant magnitude of the scan.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllPointsFailedError,
    ModeFailureError,
    NotARootError,
    StartFailureError,
)
from .material import MaterialCoefficients
from .modes import ComplexSpeed
from .secular import AmplitudeVector, amplitudes, objective_F

#: Environment variable capping scan parallelism (0 requests auto).
THREADS_ENV = "RAYLEIGH_THREADS"


def resolve_thread_count(threads=None) -> int:
    """Thread count for scans: argument, else environment, else serial."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "")
        if not raw.strip():
            return 1
        threads = int(raw)
    if threads < 0:
        raise ValueError(f"thread count must be nonnegative, got {threads!r}")
    if threads == 0:
        return os.cpu_count() or 1
    return threads


@dataclass(frozen=True)
class ScanWindow:
    """Rectangular window of the complex speed plane, with lattice shape.

    Coordinates are those of v itself, so the admissible quadrant has
    Re v >= 0 and Im v <= 0; the window must intersect it.  Endpoints are
    included in the lattice.
    """

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window bounds must satisfy re_min < re_max and im_min < im_max")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("lattice needs at least 2 points per axis")
        if self.re_max < 0.0 or self.im_min > 0.0:
            raise ValueError("window does not intersect the quadrant Re v >= 0, Im v <= 0")

    def re_values(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.nx)

    def im_values(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.ny)

    def cell_size(self) -> tuple:
        return (
            (self.re_max - self.re_min) / (self.nx - 1),
            (self.im_max - self.im_min) / (self.ny - 1),
        )


@dataclass(frozen=True, eq=False)
class ScanGrid:
    """Objective samples over a window; failed points hold NaN."""

    window: ScanWindow
    values: np.ndarray  # shape (nx, ny), F or NaN
    failures: int


def _scan_point(M, re_v, im_v) -> float:
    if re_v < 0.0 or im_v > 0.0:
        return math.nan
    try:
        return objective_F(M, re_v, -im_v)
    except ModeFailureError:
        return math.nan


def grid_scan(M: MaterialCoefficients, window: ScanWindow, threads=None) -> ScanGrid:
    """Sample the objective on the window lattice.

    Points outside the admissible quadrant or where the objective is
    undefined become NaN and are counted as failures.  The result is
    bit-identical for any thread count, since every lattice point is an
    independent evaluation.

    Raises
    ------
    AllPointsFailedError
        If no lattice point evaluates.
    """
    res = window.re_values()
    ims = window.im_values()
    values = np.empty((window.nx, window.ny))
    n_threads = resolve_thread_count(threads)

    def fill_row(i):
        re_v = res[i]
        row = values[i]
        for j in range(window.ny):
            row[j] = _scan_point(M, re_v, ims[j])

    if n_threads <= 1:
        for i in range(window.nx):
            fill_row(i)
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            list(pool.map(fill_row, range(window.nx)))

    failures = int(np.isnan(values).sum())
    if failures == values.size:
        raise AllPointsFailedError("objective undefined at every lattice point")
    return ScanGrid(window=window, values=values, failures=failures)


def local_minima(grid: ScanGrid) -> list:
    """Indices (i, j) of strict interior local minima of the lattice.

    A point qualifies when it is finite and strictly below all eight
    neighbors; NaN neighbors count as +inf, so minima at the edge of the
    evaluable region still qualify as long as they are interior to the
    lattice itself.
    """
    padded = np.where(np.isnan(grid.values), np.inf, grid.values)
    out = []
    for i in range(1, grid.window.nx - 1):
        for j in range(1, grid.window.ny - 1):
            center = padded[i, j]
            if not np.isfinite(center):
                continue
            neighborhood = padded[i - 1:i + 2, j - 1:j + 2].copy()
            neighborhood[1, 1] = np.inf
            if center < neighborhood.min():
                out.append((i, j))
    return out


@dataclass(frozen=True)
class RefineOptions:
    """Stopping and acceptance parameters of the simplex refinement."""

    initial_step: tuple = (1e-3, 1e-3)
    max_evals: int = 500
    diameter_tol: float = 1e-10
    det_ratio_tol: float = 1e-6
    det_scale: float = None  # reference |det|; falls back to the seed value


@dataclass(frozen=True, eq=False)
class RayleighRoot:
    """A refined minimum of the secular objective."""

    v: ComplexSpeed
    f_value: float
    det_abs: float
    gamma: AmplitudeVector  # None when not converged
    iterations: int
    classification: str  # "converged" or "stagnated"


def _clamp(x: tuple) -> tuple:
    return (max(x[0], 0.0), max(x[1], 0.0))


def refine_minimum(M: MaterialCoefficients, v0: ComplexSpeed,
                   opts: RefineOptions = RefineOptions()) -> RayleighRoot:
    """Refine a seed speed by a two-dimensional Nelder-Mead simplex.

    Coordinates are (v_r, v_i) with v = v_r - i v_i; every candidate vertex
    is clamped into the admissible quadrant before evaluation, so the
    simplex never leaves it.  Reflection, expansion, contraction and shrink
    coefficients are 1, 2, 0.5, 0.5.  The loop stops when the simplex
    diameter drops below ``opts.diameter_tol`` or after ``opts.max_evals``
    objective evaluations.  The best vertex never worsens the seed value.

    The root is classified "converged" when its determinant magnitude is at
    most ``opts.det_ratio_tol`` times the reference scale ``opts.det_scale``
    (the seed determinant magnitude when no scale is given).

    Raises
    ------
    StartFailureError
        If the objective is undefined at the seed and at both initial
        perturbations.
    """

    evals = [0]

    def objective(x: tuple) -> float:
        evals[0] += 1
        try:
            return objective_F(M, x[0], x[1])
        except ModeFailureError:
            return math.inf

    x0 = _clamp((v0.v_r, v0.v_i))
    hx, hy = opts.initial_step
    simplex = [x0, _clamp((x0[0] + hx, x0[1])), _clamp((x0[0], x0[1] + hy))]
    f_values = [objective(x) for x in simplex]
    if all(math.isinf(f) for f in f_values):
        raise StartFailureError(
            f"objective undefined at seed ({v0.v_r!r}, {v0.v_i!r}) and all perturbations"
        )
    f_seed = min(f_values)

    def diameter() -> float:
        return max(
            math.hypot(p[0] - q[0], p[1] - q[1])
            for idx, p in enumerate(simplex)
            for q in simplex[idx + 1:]
        )

    # One iteration spends at most 4 evaluations (reflect, contract, shrink
    # pair), so stopping 4 short keeps the hard budget.
    while evals[0] <= opts.max_evals - 4 and diameter() > opts.diameter_tol:
        order = sorted(range(3), key=lambda idx: f_values[idx])
        best, mid, worst = order[0], order[1], order[2]
        centroid = (
            (simplex[best][0] + simplex[mid][0]) / 2.0,
            (simplex[best][1] + simplex[mid][1]) / 2.0,
        )
        xw = simplex[worst]
        reflected = _clamp((2.0 * centroid[0] - xw[0], 2.0 * centroid[1] - xw[1]))
        f_reflected = objective(reflected)

        if f_reflected < f_values[best]:
            expanded = _clamp((3.0 * centroid[0] - 2.0 * xw[0],
                               3.0 * centroid[1] - 2.0 * xw[1]))
            f_expanded = objective(expanded)
            if f_expanded < f_reflected:
                simplex[worst], f_values[worst] = expanded, f_expanded
            else:
                simplex[worst], f_values[worst] = reflected, f_reflected
        elif f_reflected < f_values[mid]:
            simplex[worst], f_values[worst] = reflected, f_reflected
        else:
            if f_reflected < f_values[worst]:
                contracted = _clamp((
                    centroid[0] + 0.5 * (reflected[0] - centroid[0]),
                    centroid[1] + 0.5 * (reflected[1] - centroid[1]),
                ))
                f_better = f_reflected
            else:
                contracted = _clamp((
                    centroid[0] + 0.5 * (xw[0] - centroid[0]),
                    centroid[1] + 0.5 * (xw[1] - centroid[1]),
                ))
                f_better = f_values[worst]
            f_contracted = objective(contracted)
            if f_contracted < f_better:
                simplex[worst], f_values[worst] = contracted, f_contracted
            else:
                xb = simplex[best]
                for idx in (mid, worst):
                    shrunk = _clamp((
                        xb[0] + 0.5 * (simplex[idx][0] - xb[0]),
                        xb[1] + 0.5 * (simplex[idx][1] - xb[1]),
                    ))
                    simplex[idx] = shrunk
                    f_values[idx] = objective(shrunk)

    best = min(range(3), key=lambda idx: f_values[idx])
    x_best, f_best = simplex[best], f_values[best]
    v_best = ComplexSpeed(x_best[0], x_best[1])
    det_abs = math.exp(f_best) if f_best < 700.0 else math.inf

    scale = opts.det_scale
    if scale is None:
        scale = math.exp(f_seed) if f_seed < 700.0 else math.inf
    converged = math.isfinite(det_abs) and det_abs <= opts.det_ratio_tol * scale

    gamma = None
    if converged:
        try:
            gamma = amplitudes(M, v_best)
        except NotARootError:
            converged = False
    return RayleighRoot(
        v=v_best,
        f_value=f_best,
        det_abs=det_abs,
        gamma=gamma,
        iterations=evals[0],
        classification="converged" if converged else "stagnated",
    )


#: Roots closer than this in the complex plane count as duplicates.
DEDUP_TOL = 1e-6


def grid_median_det(grid: ScanGrid) -> float:
    """Median determinant magnitude over the evaluable lattice points."""
    finite = grid.values[np.isfinite(grid.values)]
    return float(np.median(np.exp(np.minimum(finite, 700.0))))


def find_rayleigh(M: MaterialCoefficients, window: ScanWindow,
                  max_evals: int = 500, det_ratio_tol: float = 1e-6,
                  threads=None) -> list:
    """Locate surface-wave roots inside a window.

    Scans the lattice, refines every strict interior local minimum with an
    initial simplex edge of a quarter grid cell, removes duplicates closer
    than ``DEDUP_TOL`` (keeping the lower objective value), and returns the
    roots sorted by objective value.  Convergence is judged against the
    median determinant magnitude of the scan.

    Raises
    ------
    AllPointsFailedError
        Propagated from the scan.
    """
    grid = grid_scan(M, window, threads=threads)
    seeds = local_minima(grid)
    if not seeds:
        return []
    dx, dy = grid.window.cell_size()
    opts = RefineOptions(
        initial_step=(dx / 4.0, abs(dy) / 4.0),
        max_evals=max_evals,
        det_ratio_tol=det_ratio_tol,
        det_scale=grid_median_det(grid),
    )
    res = grid.window.re_values()
    ims = grid.window.im_values()

    refined = []
    for i, j in seeds:
        seed = ComplexSpeed(res[i], -ims[j])
        try:
            refined.append(refine_minimum(M, seed, opts))
        except StartFailureError:
            continue

    refined.sort(key=lambda root: root.f_value)
    kept = []
    for root in refined:
        if all(abs(complex(root.v) - complex(other.v)) > DEDUP_TOL for other in kept):
            kept.append(root)
    return kept
