#!/usr/bin/env python3
"""Places of Q, absolute values, the product formula, and heights.

A place of Q is the usual absolute value, a p-adic one (|p|_p = 1/p), or the
trivial one, optionally raised to a power epsilon (the flow).  Summing
log|x|_v over all places of a nonzero rational gives zero; taking maxima
instead gives the projective and affine heights.
"""

from fractions import Fraction

from arakelov import (
    ARCH,
    TRIVIAL,
    affine_height,
    finite,
    log_abs,
    padic_valuation,
    product_formula_residual,
    projective_height,
    submax,
)

x = Fraction(-35, 4)
print(f"x = {x}")
for v in (ARCH, finite(2), finite(5), finite(7), TRIVIAL):
    print(f"  log|x| at {v}: {log_abs(x, v):+.6f}")
print(f"  product formula residual: {product_formula_residual(x):.2e}  (zero up to rounding)")

print()
print("valuations: v_2(12) =", padic_valuation(12, 2), ", v_7(0) =", padic_valuation(0, 7))

print()
print("heights:")
print(f"  h([1:2])     = {projective_height([1, 2]):.6f}  (= log 2)")
print(f"  h([2:4])     = {projective_height([2, 4]):.6f}  (scaling invariant)")
print(f"  h(1/2)       = {affine_height(Fraction(1, 2)):.6f}  (= h(2): reciprocal symmetry)")
print(f"  h(2, 3)      = {affine_height([2, 3]):.6f}  (= log 3: only infinity contributes)")

print()
print("the flow x -> x^eps scales every log linearly:")
v = finite(3)
v_half = finite(3, 0.5)
print(f"  log|1/9| at v_3        = {log_abs(Fraction(1, 9), v):.6f}")
print(f"  log|1/9| at v_3^(1/2)  = {log_abs(Fraction(1, 9), v_half):.6f}")

print()
print("submax (second largest):", submax([1, 3, 2]), submax([5, 5]), submax([-1, 0, -2, 7]))
