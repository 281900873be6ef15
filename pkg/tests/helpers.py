"""Shared test data: reference error tables, random problems, expression corpus."""

import math
import random

from vdide import DelayProblem
from vdide.expressions import (
    ExpressionSyntaxError,
    UnknownFunction,
    UnknownVariable,
)

# ---------------------------------------------------------------------------
# Reference absolute errors for the built-in problems, literal first step,
# at h in {0.01, 0.02, 0.1}, sampled at x = 0.1, 0.2, ..., 1.0.

SAMPLE_XS = [i / 10 for i in range(1, 11)]

REFERENCE_ERRORS = {
    "example1": {
        0.01: [1.98103e-5, 2.15173e-5, 2.34488e-5, 2.5633e-5, 2.81019e-5,
               3.08911e-5, 3.40406e-5, 3.75955e-5, 4.16061e-5, 4.6129e-5],
        0.02: [7.88502e-5, 8.5647e-5, 9.33384e-5, 1.02037e-4, 1.11871e-4,
               1.22981e-4, 1.35527e-4, 1.4969e-4, 1.65669e-4, 1.83692e-4],
        0.1: [1.89658e-3, 2.06066e-3, 2.24651e-3, 2.45688e-3, 2.69489e-3,
              2.96401e-3, 3.26816e-3, 3.61174e-3, 3.99966e-3, 4.43746e-3],
    },
    "example2": {
        0.01: [5.39924e-5, 5.91385e-5, 6.54017e-5, 7.30438e-5, 8.2388e-5,
               9.38329e-5, 1.0787e-4, 1.25104e-4, 1.4628e-4, 1.72316e-4],
        0.02: [2.1491e-4, 2.35415e-4, 2.60385e-4, 2.90867e-4, 3.28155e-4,
               3.73844e-4, 4.29901e-4, 4.98748e-4, 5.83369e-4, 6.87436e-4],
        0.1: [5.17093e-3, 5.66983e-3, 6.27996e-3, 7.02773e-3, 7.94573e-3,
              9.07421e-3, 1.04628e-2, 1.21727e-2, 1.42792e-2, 1.68753e-2],
    },
}

# ---------------------------------------------------------------------------
# Randomized smooth problems for stepper/closure equivalence checks.


def random_smooth_problem(rng: random.Random) -> DelayProblem:
    """A bounded, smooth problem on [0, 1] with tau = 0.5.

    Coefficients keep |dg/du| <= 1 so the implicit relation stays a strong
    contraction at moderate h, and the state stays O(1) over ten steps.
    """
    a0 = rng.uniform(-1.0, 1.0)
    a1 = rng.uniform(-1.0, 1.0)
    w = rng.uniform(0.3, 1.5)
    cu = rng.uniform(-0.5, 0.5)
    du = rng.uniform(-0.5, 0.5)
    b0 = rng.uniform(-1.0, 1.0)
    b1 = rng.uniform(0.3, 2.0)
    b2 = rng.uniform(-0.8, 0.8)
    cv = rng.uniform(0.2, 1.0)
    p0 = rng.uniform(0.5, 1.5)
    p1 = rng.uniform(-0.5, 0.5)
    p2 = rng.uniform(0.3, 2.0)

    def g(x: float, u: float) -> float:
        return a0 + a1 * math.sin(w * x) + cu * math.cos(u) + du * u

    def kernel(x: float, t: float, v: float) -> float:
        return b0 * math.cos(b1 * x + b2 * t) + cv * math.sin(v)

    def history(x: float) -> float:
        return p0 + p1 * math.cos(p2 * x)

    return DelayProblem(
        g=g, kernel=kernel, history=history, tau=0.5, x0=0.0, x_end=1.0
    )


# ---------------------------------------------------------------------------
# Expression corpus.  Expected values are spelled with the same floating
# operations the evaluator performs, so the assertions can be exact.

EVAL_CASES = [
    ("2^3^2", {}, 512.0),
    ("(2^3)^2", {}, 64.0),
    ("2^-1", {}, 0.5),
    ("2^-2*8", {}, 2.0),
    ("-2^2", {}, -4.0),
    ("(-2)^2", {}, 4.0),
    ("-x^2", {"x": 3.0}, -9.0),
    ("(-x)^2", {"x": 3.0}, 9.0),
    ("x^0", {"x": 0.0}, 1.0),
    ("0^x", {"x": 3.0}, 0.0),
    ("2^0.5", {}, 2.0 ** 0.5),
    ("2 + 3*4", {}, 14.0),
    ("(2 + 3)*4", {}, 20.0),
    ("2 - 3 - 4", {}, -5.0),
    ("2 - (3 - 4)", {}, 3.0),
    ("2/4/2", {}, 0.25),
    ("2/(4/2)", {}, 1.0),
    ("2*3^2", {}, 18.0),
    ("1/2 + 1/4", {}, 0.75),
    ("10/4", {}, 2.5),
    ("--x", {"x": 5.0}, 5.0),
    ("-(-x)", {"x": 5.0}, 5.0),
    ("-x*t", {"x": 2.0, "t": 3.0}, -6.0),
    ("-(x*t)", {"x": 2.0, "t": 3.0}, -6.0),
    ("e", {}, math.e),
    ("pi", {}, math.pi),
    ("e^x", {"x": 1.0}, math.e),
    ("pi*x^2", {"x": 2.0}, math.pi * 4.0),
    ("sin(pi/2)", {}, 1.0),
    ("sin(0)", {}, 0.0),
    ("cos(0)", {}, 1.0),
    ("sinh(0)", {}, 0.0),
    ("cosh(0)", {}, 1.0),
    ("tanh(0)", {}, 0.0),
    ("sqrt(4)", {}, 2.0),
    ("sqrt(2)*sqrt(2)", {}, math.sqrt(2.0) * math.sqrt(2.0)),
    ("abs(-3)", {}, 3.0),
    ("abs(3 - 5)", {}, 2.0),
    ("log(e)", {}, 1.0),
    ("log(1)", {}, 0.0),
    ("exp(0)", {}, 1.0),
    ("exp(1)", {}, math.e),
    ("exp(sin(cos(x)))", {"x": 0.0}, math.exp(math.sin(1.0))),
    ("sqrt(abs(x - t))", {"x": 1.0, "t": 5.0}, 2.0),
    ("3*x + 2*t", {"x": 1.0, "t": 2.0}, 7.0),
    ("x - t - u - v", {"x": 10.0, "t": 1.0, "u": 2.0, "v": 3.0}, 4.0),
    ("x*t*u*v", {"x": 2.0, "t": 3.0, "u": 4.0, "v": 5.0}, 120.0),
    ("x/t/u", {"x": 24.0, "t": 2.0, "u": 3.0}, 4.0),
    ("x - (t - v)", {"x": 1.0, "t": 2.0, "v": 3.0}, 2.0),
    ("1.5e-3*x", {"x": 2000.0}, 1.5e-3 * 2000.0),
    (".5*x", {"x": 3.0}, 1.5),
    ("2.*x", {"x": 3.0}, 6.0),
    ("1E+2 + x", {"x": 1.0}, 101.0),
    ("cosh(x)^2 - sinh(x)^2", {"x": 0.5},
     math.cosh(0.5) ** 2 - math.sinh(0.5) ** 2),
    ("tanh(x)*cosh(x)/sinh(x)", {"x": 0.7},
     math.tanh(0.7) * math.cosh(0.7) / math.sinh(0.7)),
    # the exact expression strings of the built-in problems
    ("exp(-1)*(1 - exp(x)) + u", {"x": 0.0, "u": 1.0}, 1.0),
    ("v", {"v": 7.25}, 7.25),
    ("exp(x)", {"x": 0.5}, math.exp(0.5)),
    ("-exp(x)*sinh(x) + u", {"x": 0.0, "u": 1.0}, 1.0),
    ("v^2", {"v": 3.0}, 9.0),
    ("exp(x + 1)", {"x": 0.0}, math.e),
]

# Valid expressions exercised for parse/unparse round trips only.
ROUND_TRIP_ONLY = [
    "x*(t + v)/(u - 1)",
    "-(x + t)",
    "-(x*t) + v",
    "x^(t + 1)",
    "2^(3*x)",
    "x - (t - v) + u",
    "abs(x)^3",
    "x/(t*u)",
    "(x + t)*(u - v)",
    "-x^-t",
    "x^t^u",
    "(x^t)^u",
    "-(x + 1)^2",
    "1e3*x + 2.5E-2",
    "exp(x)^2",
    "sqrt(x)*sqrt(t)",
    "x^-(t + 1)",
    "cos(x)*cos(t) + sin(x)*sin(t)",
]

# (text, expected exception) pairs for parse-time failures.
PARSE_ERROR_CASES = [
    ("(a)", UnknownVariable),
    ("w^2", UnknownVariable),
    ("x + y", UnknownVariable),
    ("foo(x)", UnknownFunction),
    ("sine(x)", UnknownFunction),
    ("2x", ExpressionSyntaxError),
    ("x 2", ExpressionSyntaxError),
    ("1 +", ExpressionSyntaxError),
    ("(1", ExpressionSyntaxError),
    (")", ExpressionSyntaxError),
    ("", ExpressionSyntaxError),
    ("   ", ExpressionSyntaxError),
    ("*x", ExpressionSyntaxError),
    ("1 ? 2", ExpressionSyntaxError),
    ("exp()", ExpressionSyntaxError),
    ("exp(x, t)", ExpressionSyntaxError),
    ("x + (t))", ExpressionSyntaxError),
]

# (text, bindings) pairs that must raise DomainError when evaluated.
DOMAIN_ERROR_CASES = [
    ("log(x)", {"x": 0.0}),
    ("log(x - 2)", {"x": 1.0}),
    ("sqrt(x - 4)", {"x": 0.0}),
    ("1/x", {"x": 0.0}),
    ("(x - 2)^0.5", {"x": 0.0}),
    ("exp(x)", {"x": 1000.0}),
    ("x^x", {"x": -0.5}),
    ("x*x", {"x": 1e200}),
]
