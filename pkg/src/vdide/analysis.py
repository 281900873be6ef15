"""Error tables against a known solution and observed convergence order."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import DegenerateError, OffGridSample
from .problem import DelayProblem, FirstStepMode, GridSpec, Trajectory, build_grid
from .stepper import solve

# A sample point must sit this close to a grid point to count as on-grid.
GRID_MATCH_ATOL = 1e-9


@dataclass(frozen=True)
class ErrorTable:
    """Absolute errors |exact(x) - u| at chosen grid points, ascending in x.

    elapsed records the wall-clock seconds of the solve that produced the
    trajectory, when the caller timed one; it is informational only.
    """

    rows: tuple[tuple[float, float], ...]
    h: float
    mode: FirstStepMode
    elapsed: float = 0.0


@dataclass(frozen=True)
class OrderEstimate:
    """(h, error) pairs ordered by decreasing h and the fitted log-log slope."""

    pairs: tuple[tuple[float, float], ...]
    slope: float


def grid_index(grid: GridSpec, x: float) -> int:
    """The index j with grid.point(j) == x, or OffGridSample if none is close."""
    j = round((x - grid.x0) / grid.h)
    if abs(grid.point(j) - x) > GRID_MATCH_ATOL:
        raise OffGridSample(f"x = {x!r} is not a grid point at h = {grid.h!r}")
    return j


def error_table(
    traj: Trajectory,
    exact: Callable[[float], float],
    sample_xs: Iterable[float],
    elapsed: float = 0.0,
) -> ErrorTable:
    """Tabulate |exact(x) - u(x)| at each requested grid point."""
    rows = []
    for x in sorted(sample_xs):
        j = grid_index(traj.grid, x)
        rows.append((x, abs(exact(x) - traj.value(j))))
    return ErrorTable(rows=tuple(rows), h=traj.grid.h, mode=traj.mode, elapsed=elapsed)


def max_abs_error(traj: Trajectory, exact: Callable[[float], float]) -> float:
    """Largest error over the forward grid points j = 1 .. N."""
    return max(
        abs(exact(traj.grid.point(j)) - traj.value(j))
        for j in range(1, traj.grid.steps + 1)
    )


def observed_order(e_h: float, e_h2: float) -> float:
    """log2 of the error ratio under step halving.

    Both errors must be finite and positive; an exactly-zero error means the
    scheme is exact on this problem and no order can be read off.
    """
    if not (math.isfinite(e_h) and math.isfinite(e_h2)) or e_h <= 0 or e_h2 <= 0:
        raise DegenerateError(
            f"cannot estimate order from errors {e_h!r} and {e_h2!r}"
        )
    return math.log2(e_h / e_h2)


def order_study(
    problem: DelayProblem,
    mode: FirstStepMode,
    h_list: Sequence[float],
    at_x: Optional[float] = None,
) -> OrderEstimate:
    """Solve at several step sizes and fit the global convergence slope.

    The error at each h is the maximum over the grid, or the error at the
    single point at_x when given.  The slope comes from a least-squares fit
    of log(error) against log(h), so the h values need not halve.
    """
    if problem.exact is None:
        raise ValueError("order study needs a problem with an exact solution")
    hs = sorted(set(h_list), reverse=True)
    if len(hs) < 2:
        raise ValueError(f"order study needs at least two step sizes, got {h_list!r}")
    pairs = []
    for h in hs:
        grid = build_grid(problem.x0, problem.x_end, problem.tau, h)
        traj = solve(problem, grid, mode)
        if at_x is None:
            err = max_abs_error(traj, problem.exact)
        else:
            err = abs(problem.exact(at_x) - traj.value(grid_index(grid, at_x)))
        if not math.isfinite(err) or err <= 0:
            raise DegenerateError(
                f"error {err!r} at h = {h!r} cannot anchor a log-log fit "
                "(the scheme may be exact on this problem)"
            )
        pairs.append((h, err))
    fit = statistics.linear_regression(
        [math.log(h) for h, _ in pairs], [math.log(e) for _, e in pairs]
    )
    return OrderEstimate(pairs=tuple(pairs), slope=fit.slope)


def timed_solve(
    problem: DelayProblem,
    grid: GridSpec,
    mode: FirstStepMode,
) -> tuple[Trajectory, float]:
    """Solve and return (trajectory, elapsed seconds on a monotonic clock)."""
    start = time.perf_counter()
    traj = solve(problem, grid, mode)
    return traj, time.perf_counter() - start
