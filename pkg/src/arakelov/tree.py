"""Geometry of the Berkovich projective line over an ultrametric place of Q.

Points eta_{alpha,r} are stored in the direct chart as (rational center,
log radius); log radius -inf marks a type-1 point and the point at infinity
is a separate sentinel.  Points handed in through the inverted chart
(coordinates u = 1/t) are canonicalized on construction:

    eta_{alpha,r} with r <  |alpha|  ->  eta_{1/alpha, r/|alpha|^2}
    eta_{alpha,r} with r >= |alpha|  ->  eta_{0, 1/r}

All radii live on a log scale and are scaled by the place's flow exponent
epsilon, because center distances go through ``log_abs``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartMismatch, PlaceMismatch, Type1Endpoint
from .places import INFINITY, NEG_INF, P1Point, Place, format_rational, log_abs, parse_rational

EQ_TOL = 1e-9  # point identity tolerance on the log-radius scale


@dataclass(frozen=True)
class TreePoint:
    """A point of the Berkovich line: eta_{center, exp(log_radius)} or infinity."""

    center: Fraction = Fraction(0)
    log_radius: float = NEG_INF
    at_infinity: bool = False

    @property
    def is_type1(self) -> bool:
        return self.at_infinity or self.log_radius == NEG_INF

    def __repr__(self) -> str:
        if self.at_infinity:
            return "TreePoint(inf)"
        if self.is_type1:
            return f"TreePoint(delta {format_rational(self.center)})"
        return f"TreePoint(eta {format_rational(self.center)}, logr={self.log_radius:.6g})"


POINT_AT_INFINITY = TreePoint(at_infinity=True)
GAUSS = TreePoint(Fraction(0), 0.0)


def eta(center: Fraction | int | str, log_radius: float) -> TreePoint:
    return TreePoint(parse_rational(center), float(log_radius))


def type1(center: P1Point | int | str) -> TreePoint:
    if center is INFINITY:
        return POINT_AT_INFINITY
    return TreePoint(parse_rational(center), NEG_INF)


def from_inverted_chart(center: Fraction | int | str, log_radius: float, v: Place) -> TreePoint:
    """Canonicalize a point given in the u = 1/t chart to the direct chart."""
    c = parse_rational(center)
    la = log_abs(c, v)
    if log_radius == NEG_INF:
        return POINT_AT_INFINITY if c == 0 else type1(1 / c)
    if log_radius >= la:
        return TreePoint(Fraction(0), -log_radius)
    return TreePoint(1 / c, log_radius - 2.0 * la)


def _require_affine(x: TreePoint) -> None:
    if x.at_infinity:
        raise ChartMismatch("the point at infinity has no direct-chart representation")


def log_center_dist(a: Fraction, b: Fraction, v: Place) -> float:
    """log|a - b|_v (epsilon-scaled); -inf when the centers coincide."""
    return log_abs(a - b, v)


def join(x: TreePoint, y: TreePoint, v: Place) -> TreePoint:
    """The smallest point above both, eta_{alpha, max(r, s, |alpha-beta|)}."""
    if not v.is_finite:
        raise PlaceMismatch("tree operations need a finite place")
    _require_affine(x)
    _require_affine(y)
    k = max(x.log_radius, y.log_radius, log_center_dist(x.center, y.center, v))
    base = x if x.log_radius >= y.log_radius else y
    return TreePoint(base.center, k)


def hsia_log_kernel(x: TreePoint, y: TreePoint, v: Place) -> float:
    """log of the Hsia kernel: the log radius of join(x, y).

    Symmetric; equals the log radius on the diagonal; -inf exactly for a pair
    of equal type-1 points.
    """
    if not v.is_finite:
        raise PlaceMismatch("tree operations need a finite place")
    _require_affine(x)
    _require_affine(y)
    return max(x.log_radius, y.log_radius, log_center_dist(x.center, y.center, v))


def points_equal(x: TreePoint, y: TreePoint, v: Place, tol: float = EQ_TOL) -> bool:
    if x.at_infinity or y.at_infinity:
        return x.at_infinity and y.at_infinity
    if x.is_type1 or y.is_type1:
        return x.is_type1 and y.is_type1 and x.center == y.center
    return (
        abs(x.log_radius - y.log_radius) <= tol
        and log_center_dist(x.center, y.center, v) <= x.log_radius + tol
    )


def path_length(x: TreePoint, y: TreePoint, v: Place) -> float:
    """Canonical log length of [x, y]; both points must be of type 2 or 3."""
    if x.is_type1 or y.is_type1:
        raise Type1Endpoint("path length is infinite at type-1 endpoints")
    k = hsia_log_kernel(x, y, v)
    return (k - x.log_radius) + (k - y.log_radius)


def median(x: TreePoint, y: TreePoint, z: TreePoint, v: Place) -> TreePoint:
    """The unique point on all three pairwise paths.

    Accepts the point at infinity (the median then is the join of the other
    two); the result is always an affine point when at most one argument is
    infinite.
    """
    infinities = [p for p in (x, y, z) if p.at_infinity]
    if len(infinities) >= 2:
        return POINT_AT_INFINITY
    if x.at_infinity:
        return join(y, z, v)
    if y.at_infinity:
        return join(x, z, v)
    if z.at_infinity:
        return join(x, y, v)
    cands = (join(x, y, v), join(x, z, v), join(y, z, v))
    return min(cands, key=lambda p: p.log_radius)


@dataclass(frozen=True)
class Segment:
    """A geodesic between two type-2/3 points, with its place and cached length."""

    a: TreePoint
    b: TreePoint
    place: Place
    length: float

    @property
    def is_singleton(self) -> bool:
        return self.length == 0.0

    def __repr__(self) -> str:
        return f"Segment({self.a!r}, {self.b!r}, l={self.length:.6g})"


def segment_between(x: TreePoint, y: TreePoint, v: Place) -> Segment:
    if not v.is_finite:
        raise PlaceMismatch("segments live over a finite place")
    if x.is_type1 or y.is_type1:
        raise Type1Endpoint("segment endpoints must be of type 2 or 3")
    length = path_length(x, y, v)
    if points_equal(x, y, v):
        length = 0.0
    return Segment(x, y, v, length)


def point_on_path(x: TreePoint, y: TreePoint, v: Place, s: float) -> TreePoint:
    """The point at arc length s from x along [x, y] (0 <= s <= length)."""
    k = hsia_log_kernel(x, y, v)
    up = k - x.log_radius
    total = up + (k - y.log_radius)
    s = min(max(s, 0.0), total)
    if s <= up:
        return TreePoint(x.center, x.log_radius + s)
    return TreePoint(y.center, y.log_radius + (total - s))


def point_on_segment(p: TreePoint, seg: Segment, tol: float = EQ_TOL) -> bool:
    return points_equal(median(seg.a, seg.b, p, seg.place), p, seg.place, tol)


@dataclass(frozen=True)
class Disjoint:
    """Segments meeting in at most one point (touching counts as d_ab = 0).

    z_a, z_b are the split points facing the other segment; la1/la2 are the
    lengths of the two halves of I_a around z_a, likewise for I_b.
    """

    la: float
    lb: float
    la1: float
    la2: float
    lb1: float
    lb2: float
    d_ab: float
    z_a: TreePoint
    z_b: TreePoint

    variant = "disjoint"


@dataclass(frozen=True)
class Meeting:
    """Segments whose intersection is a genuine segment of length l_ab.

    The outer pieces are paired by side: (la1, lb1) hang off one endpoint of
    the intersection and (la2, lb2) off the other.
    """

    la: float
    lb: float
    l_ab: float
    la1: float
    la2: float
    lb1: float
    lb2: float
    u: TreePoint
    w: TreePoint

    variant = "meeting"


PairConfiguration = Disjoint | Meeting


def classify_pair(ia: Segment, ib: Segment, v: Place, tol: float = EQ_TOL) -> PairConfiguration:
    """Relative position of two segments: Disjoint/touching or Meeting.

    Matches the two pictures of the segment-vs-segment calculus: in the
    meeting case the intersection [u, w] is cut out and the four outer pieces
    are reported with the same-side pairing convention.
    """
    if ia.place != v or ib.place != v:
        raise PlaceMismatch("both segments must live over the classification place")
    xa, ya = ia.a, ia.b
    xb, yb = ib.a, ib.b
    p1 = median(xa, ya, xb, v)
    p2 = median(xa, ya, yb, v)
    la, lb = ia.length, ib.length

    p1_in_b = point_on_segment(p1, ib, tol)
    p2_in_b = point_on_segment(p2, ib, tol)
    if p1_in_b and p2_in_b:
        l_ab = path_length(p1, p2, v)
        if l_ab > tol:
            du, dv_ = path_length(xa, p1, v), path_length(xa, p2, v)
            u, w = (p1, p2) if du <= dv_ else (p2, p1)
            du, dv_ = min(du, dv_), max(du, dv_)
            la1 = du
            la2 = max(la - dv_, 0.0)
            eu, ev = path_length(xb, u, v), path_length(xb, w, v)
            if eu <= ev:
                lb1, lb2 = eu, max(lb - ev, 0.0)
            else:
                lb1, lb2 = max(lb - eu, 0.0), ev
            return Meeting(la, lb, l_ab, la1, la2, lb1, lb2, u, w)
        # touching: intersection is a single point
        za = p1
        la1 = path_length(xa, za, v)
        lb1 = path_length(xb, za, v)
        return Disjoint(la, lb, la1, max(la - la1, 0.0), lb1, max(lb - lb1, 0.0), 0.0, za, za)

    # genuinely disjoint: the projections collapse to single split points
    za = p1
    zb = median(xb, yb, xa, v)
    d_ab = path_length(za, zb, v)
    la1 = path_length(xa, za, v)
    lb1 = path_length(xb, zb, v)
    return Disjoint(la, lb, la1, max(la - la1, 0.0), lb1, max(lb - lb1, 0.0), d_ab, za, zb)


# ---------------------------------------------------------------------------
# Moebius moves (isometries of the tree) for invariance checks


def translate_point(x: TreePoint, c: Fraction | int, v: Place) -> TreePoint:
    if x.at_infinity:
        return x
    c = parse_rational(c)
    return TreePoint(x.center + c, x.log_radius)


def scale_point(x: TreePoint, c: Fraction | int, v: Place) -> TreePoint:
    c = parse_rational(c)
    if c == 0:
        raise ValueError("scaling by zero is not a Moebius map")
    if x.at_infinity:
        return x
    if x.is_type1:
        return type1(c * x.center)
    return TreePoint(c * x.center, x.log_radius + log_abs(c, v))


def invert_point(x: TreePoint, v: Place) -> TreePoint:
    """Image of x under t -> 1/t, via the chart-change law."""
    if x.at_infinity:
        return type1(0)
    if x.is_type1:
        return POINT_AT_INFINITY if x.center == 0 else type1(1 / x.center)
    la = log_abs(x.center, v)
    if x.log_radius >= la:
        return TreePoint(Fraction(0), -x.log_radius)
    return TreePoint(1 / x.center, x.log_radius - 2.0 * la)


def transform_segment(seg: Segment, move, v: Place) -> Segment:
    return segment_between(move(seg.a, v), move(seg.b, v), v)


# ---------------------------------------------------------------------------
# JSON encoding


def tree_point_to_json(x: TreePoint) -> dict:
    if x.at_infinity:
        return {"point_at_infinity": True}
    out = {"chart": "direct", "center": format_rational(x.center)}
    if x.is_type1:
        out["type1"] = True
    else:
        out["log_radius"] = x.log_radius
    return out


def tree_point_from_json(obj: dict, v: Place | None = None) -> TreePoint:
    if obj.get("point_at_infinity"):
        return POINT_AT_INFINITY
    chart = obj.get("chart", "direct")
    center = parse_rational(obj["center"])
    log_radius = NEG_INF if obj.get("type1") else float(obj["log_radius"])
    if chart == "direct":
        return TreePoint(center, log_radius)
    if chart == "inverted":
        if v is None:
            raise ChartMismatch("inverted-chart points need a place to canonicalize")
        if log_radius == NEG_INF:
            return POINT_AT_INFINITY if center == 0 else type1(1 / center)
        return from_inverted_chart(center, log_radius, v)
    raise ChartMismatch(f"unknown chart {chart!r}")


def segment_to_json(seg: Segment) -> dict:
    return {"endpoints": [tree_point_to_json(seg.a), tree_point_to_json(seg.b)]}


def segment_from_json(obj: dict, v: Place) -> Segment:
    a, b = (tree_point_from_json(e, v) for e in obj["endpoints"])
    return segment_between(a, b, v)
