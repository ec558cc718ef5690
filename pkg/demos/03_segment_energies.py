#!/usr/bin/env python3
"""Mutual energies of segment measures, three independent ways.

The squared pairing <mu_a, mu_b> = (1/2)(mu_a - mu_b, mu_a - mu_b) of the
normalized Lebesgue measures on two segments has closed forms driven purely
by the configuration lengths.  A discretized kernel double sum and the
subharmonic-potential route confirm them, and the closed-form lower bounds
follow along.
"""

import math

from arakelov import energy_closed_form, energy_oracle, energy_union_check, eta, finite, lower_bound_report, segment_between, segment_measure, sigma_potential
from arakelov.energy_ua import mutual_energy_raw
from arakelov.tree import point_on_path

v = finite(5)
seg = segment_between


def measure(a, b):
    return segment_measure(seg(a, b, v))


print("the three-branch potential sigma_{0,1,e} evaluated up the 0-ray:")
for w in (-1.0, 0.0, 0.5, 1.0, 2.0):
    print(f"  at log radius {w:+.1f}: {sigma_potential(0, 1.0, math.e, eta(0, w), v):.4f}")

print()
print("facing unit intervals at distance 1 (the 5/6 example):")
ia = measure(eta(0, 0.0), eta(0, 1.0))
ib = measure(eta(0, 2.0), eta(0, 3.0))
print(f"  closed form      : {energy_closed_form(ia, ib, v):.12f}")
print(f"  kernel oracle    : {energy_oracle(ia, ib, v, n=4000):.12f}")
print(f"  potential route  : {mutual_energy_raw(ia, ib, v):.12f}")

print()
print("tree-like pair (segments hanging off different branches):")
ja = measure(eta(1, -2.0), eta(0, 1.5))
jb = measure(eta(2, -1.0), eta(0, 0.5))
print(f"  closed form      : {energy_closed_form(ja, jb, v):.12f}")
print(f"  kernel oracle    : {energy_oracle(ja, jb, v, n=4000):.12f}")

print()
print("the union recursion E(I_a, I'_b u I''_b):")
mid = point_on_path(ib.support.a, ib.support.b, v, 0.35)
b1 = measure(ib.support.a, mid)
b2 = measure(mid, ib.support.b)
lhs, rhs = energy_union_check(ia, b1, b2, v)
print(f"  lhs = {lhs:.12f}, rhs = {rhs:.12f}, defect = {abs(lhs - rhs):.2e}")

print()
print("lower bounds on the nested pair (la = 4, lb = 1, centered):")
big = measure(eta(0, 0.0), eta(0, 4.0))
small = measure(eta(0, 1.5), eta(0, 2.5))
rep = lower_bound_report(big, small, v)
print(f"  energy = {rep['energy']:.6f}")
for name, info in rep["bounds"].items():
    tag = "holds" if info["holds"] else "FAILS"
    print(f"  {name:<22} bound = {info['bound']:.6f}  {tag}")
print("  (the gap bound needs the constant 24: this pair refutes the /6 variant)")
