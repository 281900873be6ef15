"""Problem statement, uniform grid, and solution container.

The continuous problem is a Volterra integro-differential equation whose
kernel sees the state one constant delay in the past:

    u'(x) = g(x, u(x)) + F(x),    F(x) = integral of K(x, t, u(t - tau))
                                         for t from x0 to x,
    u(x)  = history(x)            on [x0 - tau, x0],

posed on [x0, x_end] with delay tau > 0.  Solvers in this package work on a
uniform grid chosen so that both the interval length and the delay are whole
numbers of steps.  The delayed argument x_j - tau then lands exactly on the
grid point x_{j-M}, and no interpolation into the past is ever needed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import (
    IndexNotYetComputed,
    NonCommensurateDelay,
    NonCommensurateInterval,
    ZeroDelaySteps,
)

# Relative slack when checking that a ratio is a whole number of steps.
COMMENSURABILITY_RTOL = 1e-9


class FirstStepMode(enum.Enum):
    """How the kernel integral is discretized on the very first step.

    LITERAL applies the same trapezium stencil at j = 0 as at every later
    step.  The stencil's corner term then counts the kernel at x_0 twice even
    though the inner integral F(x_0) is exactly zero, which injects an O(h^2)
    perturbation into the first step only.  CORRECTED honours F(x_0) = 0 and
    keeps just the terms belonging to F(x_1).  Both modes agree whenever
    K(x_0, x_0, u(x_0 - tau)) happens to vanish.
    """

    LITERAL = "literal"
    CORRECTED = "corrected"


@dataclass(frozen=True)
class DelayProblem:
    """One instance of the continuous problem.

    g, kernel, and history are plain callables: g(x, u), kernel(x, t, v)
    where v stands for the delayed state u(t - tau), and history(x) for
    x <= x0.  exact, when given, is the known closed-form solution used by
    error tables and order studies.
    """

    g: Callable[[float, float], float]
    kernel: Callable[[float, float, float], float]
    history: Callable[[float], float]
    tau: float
    x0: float
    x_end: float
    exact: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        if not self.x_end > self.x0:
            raise ValueError(
                f"x_end must exceed x0, got x0={self.x0!r}, x_end={self.x_end!r}"
            )

    @property
    def initial_value(self) -> float:
        """u(x0), taken from the history segment."""
        return self.history(self.x0)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid x_j = x0 + j*h for j = -delay_steps .. steps.

    steps is the number of forward steps N, delay_steps the number of steps M
    spanning one delay.  Negative indices address the history segment.
    """

    h: float
    steps: int
    delay_steps: int
    x0: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h!r}")
        if self.steps < 1:
            raise ValueError(f"need at least one forward step, got {self.steps!r}")
        if self.delay_steps < 1:
            raise ValueError(
                f"delay must span at least one step, got {self.delay_steps!r}"
            )

    def point(self, j: int) -> float:
        """Grid point x_j; meaningful for -delay_steps <= j <= steps."""
        return self.x0 + j * self.h


def build_grid(x0: float, x_end: float, tau: float, h: float) -> GridSpec:
    """Build the uniform grid, enforcing commensurability of interval and delay.

    (x_end - x0)/h and tau/h must both be integers to within 1e-9 relative.
    The second condition is what lets delayed lookups stay on-grid; violating
    either is a hard error rather than a silent rounding.
    """
    if h <= 0:
        raise ValueError(f"h must be positive, got {h!r}")
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    if x_end <= x0:
        raise ValueError(f"x_end must exceed x0, got x0={x0!r}, x_end={x_end!r}")

    span = x_end - x0
    n = round(span / h)
    if n < 1 or abs(n * h - span) > COMMENSURABILITY_RTOL * max(1.0, abs(span)):
        raise NonCommensurateInterval(
            f"(x_end - x0)/h = {span / h!r} is not a whole number of steps"
        )
    m = round(tau / h)
    if abs(m * h - tau) > COMMENSURABILITY_RTOL * max(1.0, tau):
        raise NonCommensurateDelay(
            f"tau/h = {tau / h!r} is not a whole number of steps"
        )
    if m == 0:
        raise ZeroDelaySteps(
            f"tau = {tau!r} spans zero steps of h = {h!r}; delayed lookups "
            "would reference the future"
        )
    return GridSpec(h=h, steps=n, delay_steps=m, x0=x0)


class Trajectory:
    """Solution values on the grid, indexed j = -M .. N.

    The history segment j = -M .. 0 is fixed at construction.  Forward values
    are appended one at a time in index order and never rewritten, so an
    instance is safe to share once filled.
    """

    def __init__(self, grid: GridSpec, mode: FirstStepMode, history: list[float]):
        if len(history) != grid.delay_steps + 1:
            raise ValueError(
                f"history must hold {grid.delay_steps + 1} values "
                f"(j = -{grid.delay_steps} .. 0), got {len(history)}"
            )
        self.grid = grid
        self.mode = mode
        self._values = [float(v) for v in history]

    @property
    def values(self) -> tuple[float, ...]:
        """All stored values, history first, as an immutable snapshot."""
        return tuple(self._values)

    @property
    def last(self) -> int:
        """Largest grid index j whose value is present."""
        return len(self._values) - 1 - self.grid.delay_steps

    def value(self, j: int) -> float:
        """Stored u_j; IndexNotYetComputed if the solve has not reached j."""
        if j < -self.grid.delay_steps:
            raise IndexError(
                f"index {j} precedes the history start -{self.grid.delay_steps}"
            )
        if j > self.last:
            raise IndexNotYetComputed(
                f"u_{j} requested but values stop at u_{self.last}"
            )
        return self._values[j + self.grid.delay_steps]

    def append(self, u: float) -> None:
        """Store the next forward value."""
        if self.last >= self.grid.steps:
            raise ValueError("trajectory already holds all grid values")
        self._values.append(float(u))

    def x(self, j: int) -> float:
        return self.grid.point(j)


def init_trajectory(
    problem: DelayProblem,
    grid: GridSpec,
    mode: FirstStepMode = FirstStepMode.LITERAL,
) -> Trajectory:
    """Create a trajectory with the history segment prefilled.

    values[j] = history(x_j) for j = -M .. 0; in particular the initial value
    u_0 is history(x0), whatever the problem's g would say about it.
    """
    _check_grid_matches(problem, grid)
    hist = [problem.history(grid.point(j)) for j in range(-grid.delay_steps, 1)]
    return Trajectory(grid, mode, hist)


def delayed_value(traj: Trajectory, j: int) -> float:
    """u(x_j - tau), read as the stored value at index j - M.

    Valid for j >= 0; j - M >= -M always holds, so the lookup can only fail
    forward, raising IndexNotYetComputed.
    """
    if j < 0:
        raise ValueError(f"delayed lookups are defined for j >= 0, got {j}")
    return traj.value(j - traj.grid.delay_steps)


def _check_grid_matches(problem: DelayProblem, grid: GridSpec) -> None:
    tol = COMMENSURABILITY_RTOL
    if abs(grid.x0 - problem.x0) > tol * max(1.0, abs(problem.x0)):
        raise ValueError(
            f"grid origin {grid.x0!r} does not match problem x0 {problem.x0!r}"
        )
    if abs(grid.delay_steps * grid.h - problem.tau) > tol * max(1.0, problem.tau):
        raise ValueError(
            f"grid delay span {grid.delay_steps * grid.h!r} does not match "
            f"problem tau {problem.tau!r}"
        )
    end = grid.point(grid.steps)
    if abs(end - problem.x_end) > tol * max(1.0, abs(problem.x_end)):
        raise ValueError(
            f"grid endpoint {end!r} does not match problem x_end {problem.x_end!r}"
        )
