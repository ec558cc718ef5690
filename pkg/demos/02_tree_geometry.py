#!/usr/bin/env python3
"""The Berkovich line over Q_p as a metric tree.

Points eta_{alpha,r} are closed disks; the Hsia kernel extends |x - y| to
them, joins go up the tree, and segments of type-2/3 points carry a
canonical log length.  Two segments sit in one of two relative positions:
disjoint (possibly touching) or meeting along a genuine subsegment.
"""

import math
from fractions import Fraction

from arakelov import classify_pair, eta, finite, hsia_log_kernel, join, path_length, segment_between, type1
from arakelov.tree import invert_point, point_on_path

v = finite(5)

print("joins and kernels at p = 5:")
x, y = eta(0, 0.0), eta(0, 2.0)
print(f"  join(eta_0,1, eta_0,e^2) = {join(x, y, v)}")
print(f"  log kernel of delta_0 and delta_5: {hsia_log_kernel(type1(0), type1(5), v):.4f}"
      f"  (= -log 5 since |5|_5 = 1/5)")

print()
print("path lengths:")
print(f"  l([eta_0,1, eta_0,e^2]) = {path_length(x, y, v):.4f}")
a, b = eta(0, -1.0), eta(1, -1.0)
print(f"  l([eta_0,1/e, eta_1,1/e]) = {path_length(a, b, v):.4f}  (up to the Gauss point and back down)")

print()
print("walking along a segment:")
seg = segment_between(a, b, v)
for s in (0.0, 0.5, 1.0, 1.5, 2.0):
    print(f"  arc length {s:.1f}: {point_on_path(seg.a, seg.b, v, s)}")

print()
print("pair configurations:")
ia = segment_between(eta(0, 0.0), eta(0, 1.0), v)
ib = segment_between(eta(0, 2.0), eta(0, 3.0), v)
print(f"  facing intervals: {classify_pair(ia, ib, v)}")
big = segment_between(eta(0, 0.0), eta(0, 4.0), v)
small = segment_between(eta(0, 1.0), eta(0, 2.0), v)
print(f"  nested intervals: {classify_pair(big, small, v)}")

print()
print("the chart change t -> 1/t is an isometry:")
for pt in (eta(0, 2.0), eta(Fraction(5), -3 * math.log(5)), type1(0)):
    print(f"  {pt}  ->  {invert_point(pt, v)}")
