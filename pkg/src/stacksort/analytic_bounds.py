"""
Numerical checks of the constants behind the average-depth bounds:

* the Golomb-Dickman constant as the integral of ``exp(li(x))`` over (0, 1);
* the affine functions ``F_l(x) = a_l x + b_l`` obtained by iterated averaging,
  their recurrence, closed forms and the series ``sum b_l = 3/5 (7 - 8 log 2)``.

All quadrature here is adaptive Simpson. The closed-form constants are kept
separately so that quadrature error and recurrence error can be told apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "GOLOMB_DICKMAN", "A0", "B0", "UPPER_BOUND", "FIRST_BOUND",
    "QuadratureError", "AffineCoefficients", "adaptive_simpson", "li",
    "golomb_dickman", "f_coefficients", "f_closed_form", "b_series",
    "f0_integrand", "f0_integral_check", "f1_integral_check", "bounds_table",
]

GOLOMB_DICKMAN = 0.6243299885435508
A0 = 3 * math.log(2) - 2
B0 = 2.5 - 3 * math.log(2)
UPPER_BOUND = 0.6 * (7 - 8 * math.log(2))
FIRST_BOUND = B0 + 0.5


class QuadratureError(ArithmeticError):
    """Adaptive quadrature hit its depth limit before meeting the tolerance."""

    def __init__(self, message: str, error_estimate: float) -> None:
        super().__init__(f"{message} (error estimate {error_estimate:.3g})")
        self.error_estimate = error_estimate


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10, max_depth: int = 50) -> float:
    """Integrate ``f`` over ``[a, b]`` with Richardson-corrected adaptive Simpson."""
    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6 * (fa + 4 * fm + fb)

    worst = 0.0

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        nonlocal worst
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if abs(delta) <= 15 * tol:
            return left + right + delta / 15
        if depth <= 0:
            worst = max(worst, abs(delta) / 15)
            return left + right + delta / 15
        return (recurse(a, m, fa, flm, fm, left, tol / 2, depth - 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2, depth - 1))

    fa, fb, fm = f(a), f(b), f((a + b) / 2)
    value = recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)
    if worst > tol:
        raise QuadratureError("adaptive Simpson did not converge", worst)
    return value


def _li_regular(t: float) -> float:
    # 1/log(t) - 1/(t-1) is bounded on [0, 1]; near t = 1 use its Taylor series
    if t <= 0.0:
        return 1.0
    u = t - 1.0
    if abs(u) < 1e-4:
        return 0.5 - u / 12 + u * u / 24
    return 1.0 / math.log(t) - 1.0 / u


def li(x: float, tol: float = 1e-12) -> float:
    """
    Logarithmic integral ``int_0^x dt / log t`` for ``0 < x < 1``.

    The pole at ``t = 1`` is subtracted analytically
    (``int_0^x dt / (t - 1) = log(1 - x)``) and the bounded remainder integrated
    numerically, so accuracy holds up to x very close to 1; the result itself
    diverges to ``-inf`` there.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"li is evaluated on (0, 1) only, got {x}")
    return adaptive_simpson(_li_regular, 0.0, x, tol) + math.log1p(-x)


def golomb_dickman(tol: float = 1e-10) -> float:
    """``int_0^1 exp(li(x)) dx``; the integrand is 1 at 0 and vanishes at 1."""
    def integrand(x: float) -> float:
        if x <= 0.0:
            return 1.0
        if x >= 1.0:
            return 0.0
        return math.exp(li(x))

    return adaptive_simpson(integrand, 0.0, 1.0, tol)


@dataclass(frozen=True)
class AffineCoefficients:
    ell: int
    a: float
    b: float

    def __call__(self, x: float) -> float:
        return self.a * x + self.b


def f_coefficients(ell_max: int) -> list[AffineCoefficients]:
    """Coefficients of ``F_0, ..., F_ell_max`` by the recurrence."""
    if ell_max < 0:
        raise ValueError("ell_max must be nonnegative")
    out = [AffineCoefficients(0, A0, B0)]
    for ell in range(1, ell_max + 1):
        prev = out[-1]
        out.append(AffineCoefficients(ell, 3 / 8 * prev.a, prev.a / 8 + prev.b / 2))
    return out


def f_closed_form(ell: int) -> AffineCoefficients:
    return AffineCoefficients(
        ell,
        (3 / 8) ** ell * A0,
        ((1 - 0.75 ** ell) * A0 + B0) / 2 ** ell,
    )


def b_series(terms: int = 60) -> float:
    """Partial sum of ``b_0 + b_1 + ...``; the tail after ``terms`` is below ``2**-terms``."""
    return math.fsum(c.b for c in f_coefficients(terms))


def f0_integrand(x: float, y: float) -> float:
    r = ((1 - y) / (y - x)) ** 2
    return (1 - r) * y + r


def f0_integral_check(x: float, tol: float = 1e-12) -> float:
    """``F_0(x)`` evaluated from its defining integral rather than the closed form."""
    if not 0.0 <= x < 1.0:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    return adaptive_simpson(lambda y: f0_integrand(x, y), (x + 1) / 2, 1.0, tol) / (1 - x)


def f1_integral_check(x: float, tol: float = 1e-10) -> float:
    """One averaging step applied numerically: ``F_1(x) = 1/(1-x) int_x^{(x+1)/2} F_0``."""
    if not 0.0 <= x < 1.0:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    return adaptive_simpson(lambda y: f0_integral_check(y, tol), x, (x + 1) / 2, tol) / (1 - x)


def bounds_table() -> list[tuple[str, float]]:
    lam = golomb_dickman()
    return [
        ("lambda_computed", lam),
        ("a0", A0),
        ("b0", B0),
        ("sum_b", b_series()),
        ("upper_bound_closed_form", UPPER_BOUND),
        ("F0(0)+1/2", f0_integral_check(0.0) + 0.5),
    ]
