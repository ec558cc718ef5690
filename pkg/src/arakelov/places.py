"""Places of Q, normalized absolute values, the flow scaling and height functions.

A place is the trivial absolute value, a p-adic absolute value (normalized by
|p|_p = 1/p) or the usual archimedean one, together with a positive scaling
exponent epsilon (the flow x -> x^epsilon on semi-norms).  All logarithms are
natural logs.  Finite-place logs are derived from exact integer valuations so
that identities which are integer relations in units of log(p) can be checked
exactly in that unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AllZero, TooFewValues, ZeroInput

INF = math.inf
NEG_INF = -math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n|, by trial division."""
    n = abs(n)
    out: list[int] = []
    if n < 2:
        return out
    for p in (2, 3):
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
    f = 5
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Place:
    """A point of the analytic spectrum of Z: trivial, finite p, or archimedean.

    ``epsilon`` is the flow exponent.  It must be positive, and at most 1 at
    the archimedean place (the archimedean branch of the spectrum stops at the
    usual absolute value).
    """

    kind: str  # "trivial" | "finite" | "archimedean"
    p: int | None = None
    epsilon: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("trivial", "finite", "archimedean"):
            raise ValueError(f"unknown place kind {self.kind!r}")
        if self.kind == "finite":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"finite place needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only finite places carry a prime")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.kind == "archimedean" and self.epsilon > 1:
            raise ValueError("archimedean epsilon must lie in (0, 1]")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_archimedean(self) -> bool:
        return self.kind == "archimedean"

    def log_uniformizer(self) -> float:
        """log(p) for a finite place; raises otherwise."""
        if not self.is_finite:
            raise ValueError("log_uniformizer only makes sense at a finite place")
        return math.log(self.p)

    def with_epsilon(self, epsilon: float) -> "Place":
        return Place(self.kind, self.p, epsilon)

    def __str__(self) -> str:
        if self.kind == "finite":
            core = f"v_{self.p}"
        elif self.kind == "archimedean":
            core = "v_inf"
        else:
            core = "v_0"
        return core if self.epsilon == 1.0 else f"{core}^{self.epsilon}"


TRIVIAL = Place("trivial")
ARCH = Place("archimedean")


def finite(p: int, epsilon: float = 1.0) -> Place:
    return Place("finite", p, epsilon)


def padic_valuation(x: Fraction | int, p: int) -> int | float:
    """v_p(x) with v_p(0) = +inf.  Additive: v_p(ab) = v_p(a) + v_p(b)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def log_abs(x: Fraction | int, v: Place) -> float:
    """epsilon * log|x|_v, with -inf at x = 0 for non-trivial places."""
    x = Fraction(x)
    if v.kind == "trivial":
        return NEG_INF if x == 0 else 0.0
    if x == 0:
        return NEG_INF
    if v.is_finite:
        val = padic_valuation(x, v.p)
        return v.epsilon * (-val * math.log(v.p))
    # archimedean; keep huge numerators safe by splitting the log
    return v.epsilon * (math.log(abs(x.numerator)) - math.log(x.denominator))


def support_primes(xs: Iterable[Fraction | int]) -> list[int]:
    """Sorted primes dividing some numerator or denominator of the inputs."""
    ps: set[int] = set()
    for x in xs:
        x = Fraction(x)
        if x == 0:
            continue
        ps.update(prime_factors(x.numerator))
        ps.update(prime_factors(x.denominator))
    return sorted(ps)


def product_formula_residual(x: Fraction | int) -> float:
    """Sum of log|x|_v over the archimedean place and all primes in the support.

    Zero by the product formula; returned so callers can assert the float
    residual (|residual| <= 1e-12 at desk scale).
    """
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("product formula needs a nonzero rational")
    total = log_abs(x, ARCH)
    for p in support_primes([x]):
        total += log_abs(x, finite(p))
    return total


def projective_height(coords: Sequence[Fraction | int]) -> float:
    """h([x_0 : ... : x_n]) = sum_v max_i log|x_i|_v over the places of Q.

    Invariant under scaling of the tuple; nonnegative.
    """
    xs = [Fraction(c) for c in coords]
    nonzero = [x for x in xs if x != 0]
    if not nonzero:
        raise AllZero("projective height needs a nonzero coordinate")
    total = max(log_abs(x, ARCH) for x in nonzero)
    for p in support_primes(nonzero):
        vp = finite(p)
        total += max(log_abs(x, vp) for x in nonzero)
    return total


def affine_height(xs: Sequence[Fraction | int] | Fraction | int) -> float:
    """h(x_1, ..., x_n) = h([1 : x_1 : ... : x_n]) = sum_v log+ max_i |x_i|_v."""
    if isinstance(xs, (Fraction, int)):
        xs = [xs]
    return projective_height([Fraction(1), *xs])


def submax(values: Sequence[float]) -> float:
    """Second largest entry (with multiplicity): smax(t_1 <= ... <= t_n) = t_{n-1}."""
    if len(values) < 2:
        raise TooFewValues("submax needs at least two values")
    return sorted(values)[-2]


# ---------------------------------------------------------------------------
# serialization helpers (rationals as "num/den" strings, "inf" for infinity)

_INF_TOKENS = ("inf", "Inf", "INF", "oo", "infinity")


@dataclass(frozen=True)
class _ProjectiveInfinity:
    """The point at infinity of P^1(Q); compares equal only to itself."""

    def __repr__(self) -> str:  # pragma: no cover
        return "INFINITY"


INFINITY = _ProjectiveInfinity()

P1Point = Fraction | _ProjectiveInfinity


def parse_rational(s: str | int | Fraction) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s.strip())


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_p1_point(s: str | int | Fraction | _ProjectiveInfinity) -> P1Point:
    if s is INFINITY or isinstance(s, _ProjectiveInfinity):
        return INFINITY
    if isinstance(s, str) and s.strip() in _INF_TOKENS:
        return INFINITY
    return parse_rational(s)


def format_p1_point(x: P1Point) -> str:
    return "inf" if x is INFINITY else format_rational(x)


def place_to_json(v: Place) -> dict:
    out: dict = {"kind": v.kind, "epsilon": v.epsilon}
    if v.is_finite:
        out["p"] = v.p
    if v.kind == "trivial":
        out.pop("epsilon")
    return out


def place_from_json(obj: dict) -> Place:
    kind = obj["kind"]
    if kind == "finite":
        return Place("finite", int(obj["p"]), float(obj.get("epsilon", 1.0)))
    if kind == "archimedean":
        return Place("archimedean", None, float(obj.get("epsilon", 1.0)))
    return TRIVIAL
