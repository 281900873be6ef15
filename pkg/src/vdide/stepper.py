"""Trapezoidal stepper with an explicit three-evaluation closure.

Integrating the equation across one step [x_j, x_{j+1}] and applying the
trapezium rule to the outer integral gives

    u_{j+1} = u_j + (h/2) (g(x_j, u_j) + g(x_{j+1}, u_{j+1}))
                  + (h/2) (F(x_j) + F(x_{j+1})),

where F(x) is the inner kernel integral.  Discretizing F by the trapezium
rule as well, every kernel argument u(x_i - tau) is the already-known grid
value u_{i-M}, so everything except the g(x_{j+1}, u_{j+1}) term is explicit.
Collecting the known part into a predictor M1, the step is the scalar fixed
point u = M1 + (h/2) g(x_{j+1}, u), closed here by a fixed three-term series
expansion (see the dgj module) that collapses to two corrector substitutions:

    M2      = M1 + (h/2) g(x_{j+1}, M1)
    u_{j+1} = M1 + (h/2) g(x_{j+1}, M2)

The per-step truncation of this closure scales as h^3 while the trapezium
discretization error keeps the accumulated error at second order, so the
closure never dominates.  Cost is O(N^2) kernel evaluations over a solve;
sums are accumulated fresh each step rather than cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonFiniteState
from .problem import (
    DelayProblem,
    FirstStepMode,
    GridSpec,
    Trajectory,
    delayed_value,
    init_trajectory,
)


@dataclass(frozen=True)
class StepWorkspace:
    """Intermediate quantities of one step, exposed for diagnosis and tests.

    corner holds the (h^2/4)-weighted kernel values at the stencil's edge
    points; s1 and s2 are the unweighted interior kernel sums seen from x_j
    and x_{j+1}; m1 is the explicit predictor and m2 its single refinement.
    """

    corner: float
    s1: float
    s2: float
    m1: float
    m2: float


def kernel_terms(
    problem: DelayProblem,
    traj: Trajectory,
    j: int,
    mode: FirstStepMode,
) -> tuple[float, float, float]:
    """Corner term and interior sums of the discretized kernel integrals.

    Returns (corner, s1, s2) with

        corner = (h^2/4) (K(x_j, x_0, u_{-M}) + K(x_j, x_j, u_{j-M})
                          + K(x_{j+1}, x_0, u_{-M}) + K(x_{j+1}, x_{j+1}, u_{j+1-M}))
        s1     = sum over i = 1 .. j-1 of K(x_j, x_i, u_{i-M})
        s2     = sum over i = 1 .. j   of K(x_{j+1}, x_i, u_{i-M})

    In CORRECTED mode the j = 0 stencil drops the two K(x_0, ...) corner
    values, honouring F(x_0) = 0; at j = 0 both sums are empty either way.
    The delayed index j + 1 - M never exceeds j because M >= 1, so every
    kernel argument is already known.
    """
    if j < 0:
        raise ValueError(f"step index must be nonnegative, got {j}")
    grid = traj.grid
    h = grid.h
    K = problem.kernel
    x_j = grid.point(j)
    x_next = grid.point(j + 1)
    x_start = grid.point(0)
    u_oldest = delayed_value(traj, 0)
    quarter_h2 = h * h / 4.0

    if mode is FirstStepMode.CORRECTED and j == 0:
        corner = quarter_h2 * (
            K(x_next, x_start, u_oldest)
            + K(x_next, x_next, delayed_value(traj, 1))
        )
        return corner, 0.0, 0.0

    corner = quarter_h2 * (
        K(x_j, x_start, u_oldest)
        + K(x_j, x_j, delayed_value(traj, j))
        + K(x_next, x_start, u_oldest)
        + K(x_next, x_next, delayed_value(traj, j + 1))
    )
    s1 = 0.0
    for i in range(1, j):
        s1 += K(x_j, grid.point(i), delayed_value(traj, i))
    s2 = 0.0
    for i in range(1, j + 1):
        s2 += K(x_next, grid.point(i), delayed_value(traj, i))
    return corner, s1, s2


def predictor(problem: DelayProblem, traj: Trajectory, j: int) -> float:
    """M1: every explicit contribution to the step.

    M1 = u_j + (h/2) g(x_j, u_j) + corner + (h^2/2) (s1 + s2), using the
    trajectory's first-step mode.  What remains of the step update is the
    implicit half-weight of g at x_{j+1}.
    """
    grid = traj.grid
    u_j = traj.value(j)
    corner, s1, s2 = kernel_terms(problem, traj, j, traj.mode)
    return (
        u_j
        + 0.5 * grid.h * problem.g(grid.point(j), u_j)
        + corner
        + 0.5 * grid.h * grid.h * (s1 + s2)
    )


def step_workspace(problem: DelayProblem, traj: Trajectory, j: int) -> StepWorkspace:
    """All intermediate step quantities at index j."""
    grid = traj.grid
    u_j = traj.value(j)
    corner, s1, s2 = kernel_terms(problem, traj, j, traj.mode)
    m1 = (
        u_j
        + 0.5 * grid.h * problem.g(grid.point(j), u_j)
        + corner
        + 0.5 * grid.h * grid.h * (s1 + s2)
    )
    m2 = m1 + 0.5 * grid.h * problem.g(grid.point(j + 1), m1)
    return StepWorkspace(corner=corner, s1=s1, s2=s2, m1=m1, m2=m2)


def nnm_step(problem: DelayProblem, traj: Trajectory, j: int) -> float:
    """Advance one step explicitly: u_{j+1} = M1 + (h/2) g(x_{j+1}, M2).

    Raises NonFiniteState as soon as any intermediate stops being finite, so
    a blow-up is reported at the step that caused it.
    """
    if j >= traj.grid.steps:
        raise ValueError(
            f"step index {j} is out of range; the grid ends after step "
            f"{traj.grid.steps - 1}"
        )
    ws = step_workspace(problem, traj, j)
    u_next = ws.m1 + 0.5 * traj.grid.h * problem.g(traj.grid.point(j + 1), ws.m2)
    if not (math.isfinite(ws.m1) and math.isfinite(ws.m2) and math.isfinite(u_next)):
        raise NonFiniteState(
            f"non-finite value while advancing from step {j}", step_index=j
        )
    return u_next


def solve(
    problem: DelayProblem,
    grid: GridSpec,
    mode: FirstStepMode = FirstStepMode.LITERAL,
) -> Trajectory:
    """Run the stepper over the whole grid and return the filled trajectory."""
    traj = init_trajectory(problem, grid, mode)
    for j in range(grid.steps):
        traj.append(nnm_step(problem, traj, j))
    return traj
