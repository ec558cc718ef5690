"""Lattes data attached to a quadruple of branch points.

A quadruple of distinct points of P^1(Q) determines a double cover of the
line branched there, hence an elliptic curve with a degree-2 projection, and
the degree-4 map induced by doubling.  This module computes the exact
ultrametric equilibrium data (the segment cut out by the four points and its
Lebesgue measure), cross-ratios and Legendre normalization, the Legendre map
itself, and 2-power torsion images over C by iterated preimages.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .energy_ua import SegmentMeasure, segment_measure
from .errors import DegenerateQuadruple, LevelTooLarge, ResidueCharTwo
from .places import INFINITY, P1Point, Place, format_p1_point, log_abs, parse_p1_point
from .quartic import poly_roots
from .tree import Segment, TreePoint, median, points_equal, segment_between, type1

TORSION_LEVEL_CAP = 5


@dataclass(frozen=True)
class Quadruple:
    """Four pairwise distinct points of P^1(Q)."""

    points: tuple[P1Point, P1Point, P1Point, P1Point]

    def __post_init__(self) -> None:
        pts = self.points
        if len(pts) != 4:
            raise DegenerateQuadruple("a quadruple has four points")
        for i in range(4):
            for j in range(i + 1, 4):
                if pts[i] == pts[j] or (pts[i] is INFINITY and pts[j] is INFINITY):
                    raise DegenerateQuadruple(f"points {i} and {j} coincide")

    def finite_points(self) -> list[Fraction]:
        return [p for p in self.points if p is not INFINITY]

    def __str__(self) -> str:
        return "(" + ", ".join(format_p1_point(p) for p in self.points) + ")"


def as_quadruple(points) -> Quadruple:
    if isinstance(points, Quadruple):
        return points
    return Quadruple(tuple(parse_p1_point(p) for p in points))


@dataclass(frozen=True)
class LegendreParam:
    lam: Fraction

    def __post_init__(self) -> None:
        if self.lam in (0, 1):
            raise DegenerateQuadruple("Legendre parameter must avoid 0 and 1")


# ---------------------------------------------------------------------------
# cross-ratios and Moebius normalization


def _homog(p: P1Point) -> tuple[Fraction, Fraction]:
    if p is INFINITY:
        return Fraction(1), Fraction(0)
    return p, Fraction(1)


def _det(p: P1Point, q: P1Point) -> Fraction:
    (x1, y1), (x2, y2) = _homog(p), _homog(q)
    return x1 * y2 - x2 * y1


def cross_ratio(g1, g2, g3, g4) -> Fraction:
    """[g1, g2, g3, g4] = (g3-g1)(g4-g2) / ((g3-g2)(g4-g1)), with infinity handled.

    Exact; lands outside {0, 1} for distinct points.
    """
    pts = [parse_p1_point(g) for g in (g1, g2, g3, g4)]
    quad = as_quadruple(pts)  # validates distinctness
    g1, g2, g3, g4 = quad.points
    num = _det(g3, g1) * _det(g4, g2)
    den = _det(g3, g2) * _det(g4, g1)
    return num / den


def cross_ratio_orbit(beta: Fraction) -> list[Fraction]:
    """The six values of the cross-ratio under permutations of the points."""
    return [
        beta,
        1 / beta,
        1 - beta,
        1 / (1 - beta),
        (beta - 1) / beta,
        beta / (beta - 1),
    ]


@dataclass(frozen=True)
class MobiusMap:
    """t -> (a t + b) / (c t + d) with exact rational coefficients, ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c == 0:
            raise DegenerateQuadruple("Moebius map needs a nonzero determinant")

    def apply(self, t: P1Point) -> P1Point:
        if t is INFINITY:
            return INFINITY if self.c == 0 else self.a / self.c
        den = self.c * t + self.d
        if den == 0:
            return INFINITY
        return (self.a * t + self.b) / den

    def apply_complex(self, z: complex) -> complex:
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        return (a * z + b) / (c * z + d)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


def normalize_to_legendre(gamma) -> tuple[LegendreParam, MobiusMap]:
    """The Moebius map sending g1, g2, g3 to infinity, 0, 1 and the image of g4.

    The Legendre parameter is exactly the cross-ratio [g1, g2, g3, g4].
    """
    quad = as_quadruple(gamma)
    g1, g2, g3, g4 = quad.points
    # rows of the matrix for t -> (g3-g1)(t-g2) / ((g3-g2)(t-g1)), with the
    # usual degenerations when one of g1, g2, g3 is infinite
    if g1 is INFINITY:
        m = MobiusMap(Fraction(1), -g2, Fraction(0), g3 - g2)
    elif g2 is INFINITY:
        m = MobiusMap(Fraction(0), g3 - g1, Fraction(1), -g1)
    elif g3 is INFINITY:
        m = MobiusMap(Fraction(1), -g2, Fraction(1), -g1)
    else:
        k = g3 - g1
        l = g3 - g2
        m = MobiusMap(k, -k * g2, l, -l * g1)
    lam = m.apply(g4)
    assert lam == cross_ratio(*quad.points)
    return LegendreParam(lam), m


# ---------------------------------------------------------------------------
# the equilibrium segment at a finite place


def _tree_leaf(p: P1Point) -> TreePoint:
    return type1(p)


_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _path_intersection(e1a, e1b, e2a, e2b, v: Place) -> Segment | None:
    """[e1a, e1b] cut with [e2a, e2b]; None when the paths miss each other."""
    m1 = median(e1a, e1b, e2a, v)
    m2 = median(e1a, e1b, e2b, v)
    if points_equal(median(e2a, e2b, m1, v), m1, v) and points_equal(
        median(e2a, e2b, m2, v), m2, v
    ):
        return segment_between(m1, m2, v)
    return None


def lattes_segment(gamma, v: Place) -> Segment:
    """The common core of the two geodesics joining the four branch points.

    For any pairing of the quadruple into two pairs whose geodesics meet, the
    intersection is the same type-2/3 segment.  Defined at odd finite places
    (it describes the equilibrium measure only away from residue
    characteristic 2).
    """
    if not v.is_finite or v.p == 2:
        raise ResidueCharTwo("the equilibrium segment needs an odd finite place")
    quad = as_quadruple(gamma)
    leaves = [_tree_leaf(p) for p in quad.points]
    found: Segment | None = None
    for (i, j), (k, l) in _PAIRINGS:
        seg = _path_intersection(leaves[i], leaves[j], leaves[k], leaves[l], v)
        if seg is None:
            continue
        if found is not None:
            same = (
                points_equal(found.a, seg.a, v) and points_equal(found.b, seg.b, v)
            ) or (points_equal(found.a, seg.b, v) and points_equal(found.b, seg.a, v))
            assert same, "admissible pairings disagree"
        found = seg
    assert found is not None, "some pairing always yields a nonempty intersection"
    return found


def lattes_segment_length_units(gamma, v: Place) -> int:
    """ell(I_gamma) as an exact integer multiple of epsilon * log p."""
    quad = as_quadruple(gamma)
    beta = cross_ratio(*quad.points)
    from .places import padic_valuation

    return max(-padic_valuation(x, v.p) for x in cross_ratio_orbit(beta))


def lattes_segment_length(gamma, v: Place) -> float:
    """The maximal log absolute value of the cross-ratio over all orderings."""
    quad = as_quadruple(gamma)
    beta = cross_ratio(*quad.points)
    return max(log_abs(x, v) for x in cross_ratio_orbit(beta))


def equilibrium_measure_ua(gamma, v: Place) -> SegmentMeasure:
    """The equilibrium measure at an odd finite place: mu_{I_gamma}."""
    if not v.is_finite:
        raise ResidueCharTwo("ultrametric equilibrium measures need a finite place")
    if v.p == 2:
        raise ResidueCharTwo("residue characteristic 2 is excluded")
    return segment_measure(lattes_segment(gamma, v))


# ---------------------------------------------------------------------------
# the Legendre map and 2-power torsion images


def legendre_lattes_eval(lam: LegendreParam | Fraction | int | str, t):
    """L(t) = (t^2 - lam)^2 / (4 t (t-1) (t-lam)); infinity is a value.

    Exact over rationals (P^1 points); floating for complex arguments.
    """
    lam_p = lam.lam if isinstance(lam, LegendreParam) else parse_p1_point(lam)
    if isinstance(t, complex):
        lamc = complex(lam_p)
        den = 4 * t * (t - 1) * (t - lamc)
        if den == 0:
            return INFINITY
        return (t * t - lamc) ** 2 / den
    t = parse_p1_point(t)
    if t is INFINITY:
        return INFINITY
    den = 4 * t * (t - 1) * (t - lam_p)
    if den == 0:
        return INFINITY
    return (t * t - lam_p) ** 2 / den


def lattes_preimages(w, lam: Fraction | complex) -> list[tuple[complex | object, int]]:
    """The four preimages of w under the Legendre map, with multiplicities.

    Branch values use the exact quadratic factorizations
        L - 0   : (t^2 - lam)^2
        L - 1   : (t^2 - 2t + lam)^2
        L - lam : (t^2 - 2 lam t + lam)^2
    and L^{-1}(inf) = {0, 1, lam, inf}; other values go through the quartic.
    """
    lamc = complex(lam)
    if w is INFINITY:
        return [(0j, 1), (1 + 0j, 1), (lamc, 1), (INFINITY, 1)]
    wc = complex(w)
    for value, b_coeff in ((0j, 0j), (1 + 0j, -2 + 0j), (lamc, -2 * lamc)):
        if wc == value:
            r1, r2 = poly_roots([1.0, b_coeff, lamc if value != 0 else -lamc])
            return [(complex(r1), 2), (complex(r2), 2)]
    coeffs = [
        1.0,
        -4 * wc,
        -2 * lamc + 4 * wc * (1 + lamc),
        -4 * wc * lamc,
        lamc * lamc,
    ]
    return [(complex(r), 1) for r in poly_roots(coeffs)]


def _dedup_points(pts: Iterable[tuple[complex | object, int]], tol: float):
    finite: list[tuple[complex, int]] = []
    inf_mult = 0
    for p, m in pts:
        if p is INFINITY:
            inf_mult += m
            continue
        for i, (q, mq) in enumerate(finite):
            if abs(p - q) <= tol:
                finite[i] = (q, mq + m)
                break
        else:
            finite.append((p, m))
    finite.sort(key=lambda pm: (pm[0].real, pm[0].imag))
    out: list[tuple[complex | object, int]] = list(finite)
    if inf_mult:
        out.append((INFINITY, inf_mult))
    return out


def torsion_images(
    gamma_or_lambda,
    level: int,
    tol: float = 1e-9,
    level_cap: int = TORSION_LEVEL_CAP,
) -> list[tuple[complex | object, int]]:
    """Images of the 2^(level+1)-torsion: L^{-level} of the branch set {0,1,lam,inf}.

    Returns deduplicated complex points with multiplicities (total 4^(level+1));
    for a general quadruple the Legendre picture is pulled back through the
    normalizing Moebius map.
    """
    if level < 0 or level > level_cap:
        raise LevelTooLarge(f"level must lie in [0, {level_cap}]")
    mobius = None
    if isinstance(gamma_or_lambda, LegendreParam):
        lam = gamma_or_lambda.lam
    elif isinstance(gamma_or_lambda, (Quadruple, tuple, list)):
        param, mobius = normalize_to_legendre(gamma_or_lambda)
        lam = param.lam
    else:
        lam = parse_p1_point(gamma_or_lambda)
    lamc = complex(lam)
    current: list[tuple[complex | object, int]] = [
        (0j, 1),
        (1 + 0j, 1),
        (lamc, 1),
        (INFINITY, 1),
    ]
    for _ in range(level):
        nxt: list[tuple[complex | object, int]] = []
        for w, mult in current:
            for p, m in lattes_preimages(w, lamc):
                nxt.append((p, m * mult))
        current = _dedup_points(nxt, tol)
    if mobius is not None:
        inv = mobius.inverse()
        moved = []
        for p, m in current:
            if p is INFINITY:
                img = inv.apply(INFINITY)
                moved.append((INFINITY if img is INFINITY else complex(img), m))
            else:
                den = complex(inv.c) * p + complex(inv.d)
                if den == 0:
                    moved.append((INFINITY, m))
                else:
                    moved.append(((complex(inv.a) * p + complex(inv.b)) / den, m))
        current = _dedup_points(moved, tol)
    return current


def torsion_support(points_with_mult) -> list[complex | object]:
    return [p for p, _ in points_with_mult]
