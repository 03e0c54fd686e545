"""
The constants that bracket the average sd'/n: the Golomb-Dickman constant
computed by quadrature, and the series sum of the affine coefficients b_l.

Run: python demos/05_constants.py
"""

import math

from stacksort.analytic_bounds import (
    A0, B0, b_series, f0_integral_check, f_closed_form, f_coefficients, golomb_dickman, li,
)

print(f"li(0.5) = {li(0.5):.12f}")
lam = golomb_dickman()
print(f"Golomb-Dickman constant by quadrature: {lam:.12f}")

print("\nF_0(x) = a0 x + b0 checked against its defining integral:")
for x in (0.0, 0.25, 0.5, 0.75):
    print(f"  x = {x:.2f}: integral {f0_integral_check(x):.10f}   closed form {A0 * x + B0:.10f}")

print("\nFirst coefficients from the recurrence, with closed forms:")
for c in f_coefficients(5):
    closed = f_closed_form(c.ell)
    print(f"  l = {c.ell}: a = {c.a:.3e} ({closed.a:.3e})  b = {c.b:.6f} ({closed.b:.6f})")

total = b_series()
print(f"\nsum of b_l = {total:.10f}; (3/5)(7 - 8 log 2) = {0.6 * (7 - 8 * math.log(2)):.10f}")
print(f"So {lam:.5f} <= average sd'/n <= {total:.5f} in the limit.")
