"""Ultrametric mutual energy of segment measures.

The mutual energy used throughout is

    (mu, nu)  := - integral of log kappa(x, y) d mu(x) d nu(y)
    <mu, nu>  := (1/2) (mu - nu, mu - nu)

with kappa the Hsia kernel.  Two independent evaluation routes are provided:
closed forms driven by the pair configuration (the segment-vs-segment
calculus), and a discretized kernel double sum (`energy_oracle`).  A third,
potential-based route through the subharmonic functions sigma_{alpha,r,s}
backs the raw pairings needed by the adelic layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadBoundParameters, BadRadii, BranchPointCenter, NotAbuttable, ResidueCharTwo
from .places import NEG_INF, Place, parse_rational
from .tree import (
    Disjoint,
    Meeting,
    PairConfiguration,
    Segment,
    TreePoint,
    classify_pair,
    hsia_log_kernel,
    points_equal,
    point_on_path,
    segment_between,
    type1,
)

BOUND_SLOP = 1e-9  # float slack when asserting closed-form inequalities


@dataclass(frozen=True)
class SegmentMeasure:
    """Unit measure on a segment: Lebesgue (normalized) or Dirac on a singleton."""

    support: Segment
    kind: str  # "dirac" | "lebesgue"

    def __post_init__(self) -> None:
        if self.kind not in ("dirac", "lebesgue"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if (self.kind == "dirac") != self.support.is_singleton:
            raise ValueError("Dirac measures are exactly the singleton supports")


def segment_measure(seg: Segment) -> SegmentMeasure:
    return SegmentMeasure(seg, "dirac" if seg.is_singleton else "lebesgue")


Atoms = list[tuple[TreePoint, float]]


# ---------------------------------------------------------------------------
# sigma potentials


def _sigma_branch(lo: float, hi: float, w: float) -> float:
    """sigma_{alpha, e^lo, e^hi} as a function of w = log|z - alpha|."""
    if w >= hi:
        return (hi - lo) * w
    if w >= lo:
        return 0.5 * w * w - lo * w + 0.5 * hi * hi
    return 0.5 * (hi * hi - lo * lo)


def sigma_potential(alpha: Fraction | int | str, r: float, s: float, z: TreePoint, v: Place) -> float:
    """The subharmonic potential sigma_{alpha,r,s}(z), r <= s, radii > 0.

    Its Laplacian is log(s/r) times the normalized Lebesgue measure on
    [eta_{alpha,r}, eta_{alpha,s}]; near infinity it grows like
    log(s/r) * log|z|.
    """
    if not (0 < r <= s):
        raise BadRadii("need 0 < r <= s")
    alpha = parse_rational(alpha)
    w = hsia_log_kernel(z, type1(alpha), v)
    return _sigma_branch(v.epsilon * math.log(r), v.epsilon * math.log(s), w)


def _sigma_integral(lo: float, hi: float, c: float, a: float, b: float) -> float:
    """Exact integral of x -> sigma-branch(lo, hi, max(x, c)) over [a, b]."""
    if b <= a:
        return 0.0
    total = 0.0
    # constant part where x <= c
    cut = min(b, c)
    if cut > a:
        total += _sigma_branch(lo, hi, c) * (cut - a)
    t0 = max(a, c)
    if b <= t0:
        return total
    # integral of the branch function itself over [t0, b]
    k_const = 0.5 * (hi * hi - lo * lo)
    ell = hi - lo

    def antideriv_mid(x: float) -> float:
        return x ** 3 / 6.0 - lo * x * x / 2.0 + hi * hi * x / 2.0

    pieces = [
        (t0, min(b, lo)),
        (max(t0, lo), min(b, hi)),
        (max(t0, hi), b),
    ]
    lo_piece, mid_piece, hi_piece = pieces
    if lo_piece[1] > lo_piece[0]:
        total += k_const * (lo_piece[1] - lo_piece[0])
    if mid_piece[1] > mid_piece[0]:
        total += antideriv_mid(mid_piece[1]) - antideriv_mid(mid_piece[0])
    if hi_piece[1] > hi_piece[0]:
        total += ell * (hi_piece[1] ** 2 - hi_piece[0] ** 2) / 2.0
    return total


def _concentric_pieces(seg: Segment, v: Place) -> list[tuple[Fraction, float, float]]:
    """Split [a, b] into at most two concentric arcs (center, lo, hi)."""
    if seg.is_singleton:
        return []
    k = hsia_log_kernel(seg.a, seg.b, v)
    pieces = []
    if k - seg.a.log_radius > 0:
        pieces.append((seg.a.center, seg.a.log_radius, k))
    if k - seg.b.log_radius > 0:
        pieces.append((seg.b.center, seg.b.log_radius, k))
    return pieces


def segment_potential(mu: SegmentMeasure, z: TreePoint, v: Place) -> float:
    """U_mu(z) = integral of log kappa(x, z) d mu(x), exactly."""
    seg = mu.support
    if mu.kind == "dirac":
        return hsia_log_kernel(seg.a, z, v)
    total = 0.0
    for center, lo, hi in _concentric_pieces(seg, v):
        w = hsia_log_kernel(z, type1(center), v)
        total += _sigma_branch(lo, hi, w)
    return total / seg.length


# ---------------------------------------------------------------------------
# raw pairings (mu, nu) = - double integral of log kappa


def _as_atoms(mu: SegmentMeasure | Atoms) -> Atoms | None:
    if isinstance(mu, SegmentMeasure):
        if mu.kind == "dirac":
            return [(mu.support.a, 1.0)]
        return None
    return mu


def pair_raw(mu: SegmentMeasure | Atoms, nu: SegmentMeasure | Atoms, v: Place) -> float:
    """(mu, nu) for segment measures and weighted atom lists.

    Atom lists pair all atoms including coincident ones; the kernel is finite
    on type-2/3 atoms, and callers that need the off-diagonal convention for
    type-1 atom self-pairings handle it themselves.
    """
    atoms_mu = _as_atoms(mu)
    atoms_nu = _as_atoms(nu)
    if atoms_mu is not None and atoms_nu is not None:
        total = 0.0
        for x, wx in atoms_mu:
            for y, wy in atoms_nu:
                total += wx * wy * hsia_log_kernel(x, y, v)
        return -total
    if atoms_mu is not None:
        return pair_raw(nu, mu, v)
    # mu is Lebesgue on a genuine segment
    assert isinstance(mu, SegmentMeasure)
    pieces_mu = _concentric_pieces(mu.support, v)
    if atoms_nu is not None:
        total = 0.0
        for y, wy in atoms_nu:
            total += wy * segment_potential(mu, y, v)
        return -total
    assert isinstance(nu, SegmentMeasure)
    pieces_nu = _concentric_pieces(nu.support, v)
    total = 0.0
    for ca, lo_a, hi_a in pieces_mu:
        for cb, lo_b, hi_b in pieces_nu:
            c = hsia_log_kernel(type1(ca), type1(cb), v)  # log|ca - cb|, -inf if equal
            total += _sigma_integral(lo_a, hi_a, c, lo_b, hi_b)
    return -total / (mu.support.length * nu.support.length)


def mutual_energy_raw(mu: SegmentMeasure, nu: SegmentMeasure, v: Place) -> float:
    """<mu, nu> assembled from raw pairings; exact alternative to the closed form."""
    return 0.5 * (pair_raw(mu, mu, v) - 2.0 * pair_raw(mu, nu, v) + pair_raw(nu, nu, v))


# ---------------------------------------------------------------------------
# closed forms from the pair configuration


def _half_product(l1: float, l2: float, total: float) -> float:
    # degenerate quotient l1*l2/total at total=0 is the continuity limit 0
    if total == 0.0:
        return 0.0
    return l1 * l2 / total


def energy_from_configuration(cfg: PairConfiguration) -> float:
    if isinstance(cfg, Disjoint):
        return (
            cfg.la / 6.0
            + cfg.lb / 6.0
            + cfg.d_ab / 2.0
            - 0.5 * _half_product(cfg.la1, cfg.la2, cfg.la)
            - 0.5 * _half_product(cfg.lb1, cfg.lb2, cfg.lb)
        )
    la, lb, lab = cfg.la, cfg.lb, cfg.l_ab
    return (
        la / 6.0
        + lb / 6.0
        - lab / 2.0
        + lab ** 3 / (6.0 * la * lb)
        - 0.5 * _half_product(cfg.la1, cfg.la2, la)
        - 0.5 * _half_product(cfg.lb1, cfg.lb2, lb)
        - 0.5 * (cfg.la1 * cfg.lb1 + cfg.la2 * cfg.lb2) * lab / (la * lb)
    )


def energy_closed_form(ia: SegmentMeasure, ib: SegmentMeasure, v: Place) -> float:
    """<mu_{I_a}, mu_{I_b}> via the configuration closed forms.  Exact, >= 0."""
    cfg = classify_pair(ia.support, ib.support, v)
    return energy_from_configuration(cfg)


def energy_union_check(
    ia: SegmentMeasure, ib1: SegmentMeasure, ib2: SegmentMeasure, v: Place
) -> tuple[float, float]:
    """Both sides of the union recursion for I_b = I'_b u I''_b.

    lhs = E(I_a, I_b); rhs combines E(I_a, I'_b), E(I_a, I''_b) and
    E(I'_b, I''_b) with the length weights.  The two pieces must share exactly
    one endpoint and their union must again be a segment.
    """
    s1, s2 = ib1.support, ib2.support
    shared = None
    for e1 in (s1.a, s1.b):
        for e2 in (s2.a, s2.b):
            if points_equal(e1, e2, v):
                shared = e1
                other1 = s1.b if e1 is s1.a else s1.a
                other2 = s2.b if e2 is s2.a else s2.a
    if shared is None:
        raise NotAbuttable("the pieces share no endpoint")
    union = segment_between(other1, other2, v)
    l1, l2 = s1.length, s2.length
    if abs(union.length - (l1 + l2)) > 1e-9 * max(1.0, l1 + l2):
        raise NotAbuttable("the union of the pieces is not a segment")
    lhs = energy_closed_form(ia, segment_measure(union), v)
    lb = l1 + l2
    if lb == 0.0:
        return lhs, energy_closed_form(ia, ib1, v)
    rhs = (
        (l1 / lb) * energy_closed_form(ia, ib1, v)
        + (l2 / lb) * energy_closed_form(ia, ib2, v)
        - (l1 * l2 / lb ** 2) * energy_closed_form(ib1, ib2, v)
    )
    return lhs, rhs


# ---------------------------------------------------------------------------
# discretized kernel oracle


def _discretize(mu: SegmentMeasure, n: int, v: Place) -> list[tuple[Fraction, float, float]]:
    """Atoms (center, log_radius, weight) at arc-length midpoints."""
    seg = mu.support
    if mu.kind == "dirac":
        return [(seg.a.center, seg.a.log_radius, 1.0)]
    out = []
    w = 1.0 / n
    for k in range(n):
        s = (k + 0.5) * seg.length / n
        pt = point_on_path(seg.a, seg.b, v, s)
        out.append((pt.center, pt.log_radius, w))
    return out


def energy_oracle(ia: SegmentMeasure, ib: SegmentMeasure, v: Place, n: int = 2000) -> float:
    """Independent estimate of <mu_a, mu_b> by a signed kernel double sum.

    Each Lebesgue segment becomes n equal masses at arc-length midpoints and
    the full double sum (diagonal included; the kernel is finite on type-2/3
    points) is evaluated against the signed product measure.  Deterministic;
    error O((total length)^3 / n^2).
    """
    if n < 2:
        raise ValueError("oracle needs n >= 2")
    atoms = [(c, r, w) for c, r, w in _discretize(ia, n, v)]
    atoms += [(c, r, -w) for c, r, w in _discretize(ib, n, v)]

    # group by exact center so the p-adic distances reduce to a tiny matrix
    groups: dict[Fraction, list[tuple[float, float]]] = {}
    for c, r, w in atoms:
        groups.setdefault(c, []).append((r, w))
    centers = list(groups)
    arrs = {
        c: (np.array([r for r, _ in g]), np.array([w for _, w in g]))
        for c, g in groups.items()
    }
    total = 0.0
    for i, ci in enumerate(centers):
        ri, wi = arrs[ci]
        for cj in centers[i:]:
            rj, wj = arrs[cj]
            if ci == cj:
                log_d = NEG_INF
            else:
                log_d = hsia_log_kernel(type1(ci), type1(cj), v)
            kern = np.maximum(ri[:, None], rj[None, :])
            if log_d != NEG_INF:
                np.maximum(kern, log_d, out=kern)
            block = float(wi @ kern @ wj)
            total += block if ci == cj else 2.0 * block
    return -0.5 * total


def energy_potential_oracle(ia: SegmentMeasure, ib: SegmentMeasure, v: Place) -> float:
    """Potential-route evaluation of <mu_a, mu_b> for concentric segments.

    Both segments must lie on a common center ray; the general reference
    oracle is `energy_oracle`.
    """
    endpoints = [ia.support.a, ia.support.b, ib.support.a, ib.support.b]
    base = min(endpoints, key=lambda p: p.log_radius)
    for e in endpoints:
        if hsia_log_kernel(type1(base.center), e, v) > e.log_radius + 1e-9:
            raise ValueError("segments are not concentric, use energy_oracle")
    spans = []
    for seg in (ia.support, ib.support):
        lo = min(seg.a.log_radius, seg.b.log_radius)
        hi = max(seg.a.log_radius, seg.b.log_radius)
        spans.append((lo, hi))

    def cross(s1, s2):
        (lo1, hi1), (lo2, hi2) = s1, s2
        if hi1 == lo1 and hi2 == lo2:
            return max(lo1, lo2)
        if hi1 == lo1:
            return _sigma_branch(lo2, hi2, lo1) / (hi2 - lo2)
        if hi2 == lo2:
            return _sigma_branch(lo1, hi1, lo2) / (hi1 - lo1)
        return _sigma_integral(lo1, hi1, NEG_INF, lo2, hi2) / ((hi1 - lo1) * (hi2 - lo2))

    saa = cross(spans[0], spans[0])
    sbb = cross(spans[1], spans[1])
    sab = cross(spans[0], spans[1])
    # <a,b> = (1/2)[(a,a) - 2(a,b) + (b,b)] with (x,y) = -mean log kernel
    return 0.5 * (2.0 * sab - saa - sbb)


# ---------------------------------------------------------------------------
# lower bounds


def lower_bound_report(
    ia: SegmentMeasure,
    ib: SegmentMeasure,
    v: Place,
    lam: float | None = None,
    rho: float | None = None,
) -> dict:
    """Evaluate the applicable closed-form lower bounds against the energy.

    Disjoint pairs: E >= la/24 + lb/24 + d/2.  Meeting pairs: the quadratic
    bound in (m_a, m_b), the gap bound E >= (la - lb)^2 / (24 max(la, lb)),
    and the (lam, rho) bound E >= lam/(48 rho^2) when those parameters are
    supplied and admissible.

    The gap bound carries the constant 24 forced by the quadratic bound it is
    derived from (24 la lb E0 equals the cubic polynomial in l_ab that is
    minimized at l_ab = min(la, lb)); the variant with constant 6 is reported
    under ``meeting_gap_printed`` but fails on nested pairs, e.g.
    la = 4, lb = l_ab = 1 centered gives E = 3/32 < 9/24.
    """
    cfg = classify_pair(ia.support, ib.support, v)
    energy = energy_from_configuration(cfg)
    report: dict = {"energy": energy, "config": cfg.variant, "bounds": {}, "all_hold": True}

    def record(name: str, bound: float) -> None:
        ok = energy >= bound - BOUND_SLOP
        report["bounds"][name] = {"bound": bound, "holds": ok}
        report["all_hold"] = report["all_hold"] and ok

    if isinstance(cfg, Disjoint):
        record("disjoint_quarter", cfg.la / 24.0 + cfg.lb / 24.0 + cfg.d_ab / 2.0)
        if lam is not None or rho is not None:
            raise BadBoundParameters("the (lam, rho) bound needs a meeting configuration")
        return report

    la, lb, lab = cfg.la, cfg.lb, cfg.l_ab
    ma, mb = 0.5 * (la - lab), 0.5 * (lb - lab)
    record(
        "meeting_quadratic",
        ma * ma / (6.0 * la) + mb * mb / (6.0 * lb) - lab * ma * mb / (3.0 * la * lb),
    )
    record("meeting_gap", (la - lb) ** 2 / (24.0 * max(la, lb)))
    printed = (la - lb) ** 2 / (6.0 * max(la, lb))
    report["bounds"]["meeting_gap_printed"] = {
        "bound": printed,
        "holds": energy >= printed - BOUND_SLOP,
        "asserted": False,
    }
    if lam is not None or rho is not None:
        if lam is None or rho is None:
            raise BadBoundParameters("lam and rho must be supplied together")
        if not (0 <= lam <= max(la - lab, lb - lab) + BOUND_SLOP):
            raise BadBoundParameters("lam must lie in [0, max(la - lab, lb - lab)]")
        if rho <= 0 or max(la, lb) > rho * lam + BOUND_SLOP:
            raise BadBoundParameters("need max(la, lb) <= rho * lam with rho > 0")
        record("meeting_lam_rho", lam / (48.0 * rho * rho))
    return report


# ---------------------------------------------------------------------------
# local discrepancies I(P, u, r)


def local_discrepancy(points, u: Fraction | int | str, r: float, v: Place) -> float:
    """I(P, u, r) = |(mu_P, delta_u - chi_{u,r})| at a finite place, p != 2.

    Evaluated exactly through the segment potential.  r = 0 gives 0 by the
    convention eta_{u,0} = u; u must avoid the branch points of P.
    """
    from .lattes import as_quadruple, equilibrium_measure_ua

    quad = as_quadruple(points)
    if not v.is_finite:
        raise ResidueCharTwo("local discrepancies are ultrametric; use a finite place")
    if v.p == 2:
        raise ResidueCharTwo("residue characteristic 2 is excluded")
    u = parse_rational(u)
    if any(pt is not None and pt == u for pt in quad.finite_points()):
        raise BranchPointCenter(f"u = {u} is a branch point of the quadruple")
    if r < 0:
        raise BadRadii("radius must be nonnegative")
    if r == 0:
        return 0.0
    mu = equilibrium_measure_ua(quad, v)
    z_disk = TreePoint(u, v.epsilon * math.log(r))
    z_point = type1(u)
    return abs(segment_potential(mu, z_disk, v) - segment_potential(mu, z_point, v))
