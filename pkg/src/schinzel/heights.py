"""Heights of points and hypersurfaces, and certified bound evaluators.

Every bound comes back as a :class:`CertifiedInterval`.  Sound usage for
consumers: to assert "quantity <= bound" compare against the lo endpoint; to
assert "quantity exceeds bound" compare against the hi endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import unipoly
from .exactnum import (
    DEFAULT_BITS,
    CertifiedInterval,
    interval_e,
    interval_log,
    interval_sqrt,
)
from .laurent import LaurentPolynomial, degree, norm_l1


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of projective space with exact rational coordinates."""

    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coordinates)
        if not coords or all(c == 0 for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coordinates", coords)


@dataclass(frozen=True)
class BoundInputs:
    """Instance data feeding the explicit bounds: dimension, degree, height."""

    n: int
    D: int
    h1: CertifiedInterval
    k: int

    def __post_init__(self):
        object.__setattr__(self, "h1", CertifiedInterval.coerce(self.h1))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.D < 1:
            raise ValueError("D must be at least 1")
        if self.h1.hi < 0:
            raise ValueError("h1 must be nonnegative")
        if not 2 <= self.k <= self.n:
            raise ValueError("codimension k must satisfy 2 <= k <= n")


def weil_height_rational_point(p: ProjectivePoint, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Product-formula height of a rational projective point.

    Clearing denominators to coprime integers kills all finite places, leaving
    log of the max coordinate.
    """
    lcm = 1
    for c in p.coordinates:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coordinates]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    m = max(abs(c) for c in ints) // g
    return interval_log(m, bits)


def weil_height_algebraic(minpoly, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Height of an algebraic number from its (squarefree) minimal polynomial.

    (1/deg f) * (log|lead| + sum over roots of log^+ |root|), with the root
    moduli taken from certified disjoint enclosures.
    """
    f = unipoly.primitive(minpoly)
    d = unipoly.deg(unipoly.poly(f))
    if d < 1:
        raise ValueError("minimal polynomial must be nonconstant")
    if not unipoly.is_squarefree(unipoly.poly(f)):
        raise ValueError("minimal polynomial must be squarefree")
    if d == 1:
        # root -c0/c1 with coprime c0, c1: height is log max(|c0|, |c1|)
        return interval_log(max(abs(f[0]), abs(f[1])), bits)
    disks = unipoly.certified_roots(f, None, bits + 32)
    total = interval_log(abs(f[-1]), bits + 8) if abs(f[-1]) != 1 else CertifiedInterval.point(0)
    for disk in disks:
        lo_abs, hi_abs = disk.abs_bounds(bits + 32)
        if hi_abs <= 1:
            continue  # log^+ is exactly 0
        hi_log = interval_log(hi_abs, bits + 8).hi
        lo_log = interval_log(lo_abs, bits + 8).lo if lo_abs > 1 else Fraction(0)
        total = total + CertifiedInterval(max(Fraction(0), lo_log), hi_log)
    return (total * Fraction(1, d)).round(bits + 4)


def harmonic(n: int) -> Fraction:
    if n < 1:
        raise ValueError("harmonic numbers start at 1")
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


def double_harmonic(n: int) -> Fraction:
    """Sum over i <= n of the first i harmonic terms: sum_{i<=n} H_i."""
    if n < 1:
        raise ValueError("double harmonic sums start at 1")
    total, h = Fraction(0), Fraction(0)
    for i in range(1, n + 1):
        h += Fraction(1, i)
        total += h
    return total


def hypersurface_height_upper(f: LaurentPolynomial, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Upper bound for the projective height of the hypersurface {f = 0}:
    log ||f||_1 + (1/2) * deg(f) * sum_{i<=n} H_i."""
    d = degree(f)
    extra = Fraction(d, 2) * double_harmonic(f.nvars)
    return interval_log(norm_l1(f), bits) + extra


def normalized_vs_projective_slack(dim: int, deg: int, n: int,
                                   bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """(7/2)(dim+1) log(n+1) deg: gap between normalized and projective height."""
    if n < 1:
        raise ValueError("ambient projective dimension must be at least 1")
    if not 0 <= dim <= n:
        raise ValueError("dimension out of range")
    if deg < 1:
        raise ValueError("degree must be positive")
    return interval_log(n + 1, bits) * Fraction(7 * (dim + 1) * deg, 2)


def zhang_interval(h_norm: CertifiedInterval, deg: int, dim: int) -> CertifiedInterval:
    """Enclosure of the essential minimum from the normalized height."""
    h_norm = CertifiedInterval.coerce(h_norm)
    if deg < 1:
        raise ValueError("degree must be positive")
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    if h_norm.hi < 0:
        raise ValueError("normalized height must be nonnegative")
    lo = max(Fraction(0), h_norm.lo) / ((dim + 1) * deg)
    return CertifiedInterval(lo, h_norm.hi / deg)


def bezout_bounds(deg_y: int, h_y, deg_w: int, h_w, dim_y: int, dim_w: int, n: int,
                  bits: int = DEFAULT_BITS) -> tuple[int, CertifiedInterval]:
    """Arithmetic Bezout: bounds on total degree and height of the components
    of an intersection, with the explicit constant
    c = (log 2 / 2)(codim Y + codim W) + (1/2) sum_{i,j} 1/(i+j+1)."""
    if not (0 <= dim_y <= n and 0 <= dim_w <= n):
        raise ValueError("dimensions must lie in [0, n]")
    h_y = CertifiedInterval.coerce(h_y)
    h_w = CertifiedInterval.coerce(h_w)
    codim_sum = (n - dim_y) + (n - dim_w)
    dsum = sum(Fraction(1, i + j + 1)
               for i in range(dim_y + 1) for j in range(dim_w + 1))
    c = interval_log(2, bits) * Fraction(codim_sum, 2) + dsum / 2
    height = h_y * deg_w + h_w * deg_y + c * (deg_y * deg_w)
    return deg_y * deg_w, height.round(bits + 4)


def component_bounds(n: int, D: int, h1, k: int,
                     bits: int = DEFAULT_BITS) -> tuple[int, CertifiedInterval]:
    """Degree and height bounds D^k and n h1 D^(k-1) + n (sum H_i) D^k for a
    codimension-k component of an intersection of degree-D hypersurfaces."""
    inputs = BoundInputs(n=n, D=D, h1=CertifiedInterval.coerce(h1), k=k)
    deg_bound = D ** k
    height = inputs.h1 * (n * D ** (k - 1)) + Fraction(n) * double_harmonic(n) * deg_bound
    return deg_bound, height.round(bits + 4)


def htilde(n: int, D: int, h1, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """h1 + (n+13) D log(n+1), the height surrogate entering the main bound.

    D multiplies the log term: that is the reading forced by the constant
    c3(n) <= (n+13) log(n+1) it has to dominate.
    """
    h1 = CertifiedInterval.coerce(h1)
    if n < 2 or D < 1 or h1.hi < 0:
        raise ValueError("need n >= 2, D >= 1, h1 >= 0")
    return (h1 + interval_log(n + 1, bits) * ((n + 13) * D)).round(bits + 4)


def main_bound(inputs: BoundInputs, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """The headline explicit bound (4n)^{17n} ht D^{k-1} log(ht D^k)^{2n}."""
    n, D, k = inputs.n, inputs.D, inputs.k
    ht = htilde(n, D, inputs.h1, bits)
    arg = ht * (D ** k)
    if arg.lo <= 1:
        raise ValueError("bound needs htilde * D^k > 1")
    log_term = arg.log(bits).ipow(2 * n, bits + 8)
    value = log_term * ht * ((4 * n) ** (17 * n) * D ** (k - 1))
    return value.round(bits + 4)


def complement_bound(inputs: BoundInputs, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """2^{n^2/2} times the main bound (the filtration-level variant)."""
    n = inputs.n
    base = main_bound(inputs, bits)
    if (n * n) % 2 == 0:
        scale = CertifiedInterval.point(2 ** (n * n // 2))
    else:
        scale = interval_sqrt(2, bits) * (2 ** ((n * n - 1) // 2))
    return (base * scale).round(bits + 4)


def dobrowolski_lower(n: int, t: int, y: int, deg_t: int, omega,
                      bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Dobrowolski-style lower bound for the essential minimum:
    binom(n,t)^-1 omega^-1 (935 t^5 log(t^2 deg_t omega))^-(t-y)(t-y+1)(t+1)."""
    if not 0 <= y < t <= n:
        raise ValueError("need 0 <= y < t <= n")
    if deg_t < 1:
        raise ValueError("deg_t must be positive")
    omega = CertifiedInterval.coerce(omega)
    if omega.lo < 1:
        raise ValueError("obstruction index is at least 1")
    arg = omega * (t * t * deg_t)
    if arg.lo <= 1:
        raise ValueError("log argument t^2 deg_t omega must exceed 1")
    exponent = (t - y) * (t - y + 1) * (t + 1)
    base = arg.log(bits) * (935 * t ** 5)
    value = base.ipow(-exponent, bits + 8) * omega.reciprocal() * Fraction(1, math.comb(n, t))
    return value.round(bits + 4)


def transfer_bounds(n: int, t: int, deg_t: int, value) -> tuple[CertifiedInterval, CertifiedInterval]:
    """Isogeny-transfer inequalities: the essential-minimum bound
    binom(n,t) deg_t^-1 * value and the obstruction-index bound deg_t * value."""
    if not 1 <= t <= n:
        raise ValueError("need 1 <= t <= n")
    if deg_t < 1:
        raise ValueError("deg_t must be positive")
    value = CertifiedInterval.coerce(value)
    return value * Fraction(math.comb(n, t), deg_t), value * deg_t


def solve_log_inequality(alpha, beta, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Enclosure of 2 alpha log(alpha beta): every x with x <= alpha log(beta x)
    satisfies x <= the hi endpoint, provided alpha beta >= e."""
    alpha = CertifiedInterval.coerce(alpha)
    beta = CertifiedInterval.coerce(beta)
    if alpha.lo <= 0 or beta.lo <= 0:
        raise ValueError("alpha and beta must be positive")
    prod = alpha * beta
    if prod.hi < interval_e(bits).lo:
        raise ValueError("precondition alpha*beta >= e is provably violated")
    return (alpha * prod.log(bits) * 2).round(bits + 4)


def gcd_complexity_estimate(N: int, h1, d: int, c, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Log of the lacunary-gcd cost estimate (2 h1)^{(cN)^N} (1 + log d):
    returns (cN)^N log(2 h1) + log(1 + log d)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if d < 2:
        raise ValueError("d must be at least 2")
    c = Fraction(c)
    if c < 1:
        raise ValueError("c must be at least 1")
    h1 = CertifiedInterval.coerce(h1)
    doubled = h1 * 2
    if doubled.lo <= 1:
        raise ValueError("need 2 h1 > 1 for a positive log")
    factor = (c * N) ** N
    tail = (interval_log(d, bits) + 1).log(bits)
    return (doubled.log(bits) * factor + tail).round(bits + 4)
