"""Univariate polynomial helpers over exact rationals.

Polynomials are tuples of Fractions in ascending degree order with no trailing
zeros; the zero polynomial is the empty tuple.  Includes certified complex
root enclosures (float seeds refined and then *verified* in exact rational
arithmetic) and exact irreducibility decisions up to degree 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactnum import PrecisionError, _sqrt_ceil, _sqrt_floor

Poly = tuple[Fraction, ...]


def poly(coeffs) -> Poly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def deg(f: Poly) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def padd(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return poly([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def pneg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def psub(f: Poly, g: Poly) -> Poly:
    return padd(f, pneg(g))


def pscale(f: Poly, s) -> Poly:
    s = Fraction(s)
    if s == 0:
        return ()
    return tuple(c * s for c in f)


def pmul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly(out)


def pdivmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    r = list(f)
    dg, lead = deg(g), g[-1]
    while len(r) >= len(g) and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        c = r[-1] / lead
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
        r.pop()
    return poly(q), poly(r)


def pgcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over the rationals."""
    a, b = f, g
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return ()
    return pscale(a, 1 / a[-1])


def pderiv(f: Poly) -> Poly:
    return poly([i * c for i, c in enumerate(f)][1:])


def peval(f: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def peval_gauss(f: Poly, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact evaluation at the Gaussian rational re + im*i."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(f):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def is_squarefree(f: Poly) -> bool:
    if deg(f) <= 0:
        return True
    return deg(pgcd(f, pderiv(f))) == 0


def content(f) -> int:
    """Positive gcd of the integer coefficients (0 for the zero polynomial)."""
    g = 0
    for c in f:
        fc = Fraction(c)
        if fc.denominator != 1:
            raise ValueError("content requires integer coefficients")
        g = math.gcd(g, abs(fc.numerator))
    return g


def primitive(f) -> tuple[int, ...]:
    """Primitive integer form with positive leading coefficient."""
    cs = [Fraction(c) for c in f]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return ()
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def x_pow_mod(e: int, f: Poly) -> Poly:
    """x^e reduced modulo f, e >= 0, by binary powering."""
    if deg(f) < 1:
        raise ValueError("modulus must have degree >= 1")
    result = poly([1])
    base = pdivmod(poly([0, 1]), f)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base), f)[1]
        base = pdivmod(pmul(base, base), f)[1]
        e >>= 1
    return result


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("totient of a nonpositive integer")
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def cyclotomic(m: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    if m not in _CYCLO_CACHE:
        num = poly([-1] + [0] * (m - 1) + [1])  # x^m - 1
        for d in range(1, m):
            if m % d == 0:
                num = pdivmod(num, poly(cyclotomic(d)))[0]
        _CYCLO_CACHE[m] = tuple(int(c) for c in num)
    return _CYCLO_CACHE[m]


# ---------------------------------------------------------------------------
# certified complex root enclosures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootDisk:
    """Disk |w - (re + im*i)| <= rad containing exactly one root."""

    re: Fraction
    im: Fraction
    rad: Fraction

    def abs_bounds(self, bits: int = 128) -> tuple[Fraction, Fraction]:
        """Rational bounds for the modulus of the enclosed root."""
        c2 = self.re * self.re + self.im * self.im
        lo = _sqrt_floor(c2, bits) - self.rad
        hi = _sqrt_ceil(c2, bits) + self.rad
        return (max(Fraction(0), lo), hi)


def _mp_to_fraction(x) -> Fraction:
    if x == 0:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def certified_roots(coeffs, max_radius: Fraction | None = None, bits: int = 128) -> list[RootDisk]:
    """Pairwise-disjoint rational disks, one per root of a squarefree poly.

    Seeds come from mpmath; every certificate is exact: the residual bound
    min_i |z - alpha_i| <= d*|f(z)/f'(z)| is evaluated in Gaussian-rational
    arithmetic, and disjointness of the d disks pins one root per disk.
    """
    f = poly(coeffs)
    d = deg(f)
    if d < 1:
        raise ValueError("root enclosure requires a nonconstant polynomial")
    if not is_squarefree(f):
        raise ValueError("root enclosure requires a squarefree polynomial")
    fp = pderiv(f)
    dps = max(50, bits)
    for _ in range(8):
        try:
            with mpmath.workdps(dps):
                seeds = mpmath.polyroots(
                    [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f)],
                    maxsteps=200, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            dps *= 2
            continue
        disks = []
        ok = True
        for z in seeds:
            zc = mpmath.mpc(z)
            re, im = _mp_to_fraction(zc.real), _mp_to_fraction(zc.imag)
            fr, fi = peval_gauss(f, re, im)
            gr, gi = peval_gauss(fp, re, im)
            g2 = gr * gr + gi * gi
            if g2 == 0:
                ok = False
                break
            r2 = Fraction(d * d) * (fr * fr + fi * fi) / g2
            rad = _sqrt_ceil(r2, bits + 8)
            if max_radius is not None and rad > max_radius:
                ok = False
                break
            disks.append(RootDisk(re, im, rad))
        if ok:
            for i in range(len(disks)):
                for j in range(i + 1, len(disks)):
                    dx = disks[i].re - disks[j].re
                    dy = disks[i].im - disks[j].im
                    if dx * dx + dy * dy <= (disks[i].rad + disks[j].rad) ** 2:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return disks
        dps *= 2
    raise PrecisionError("could not certify disjoint root enclosures")


# ---------------------------------------------------------------------------
# irreducibility over Q for degree <= 4
# ---------------------------------------------------------------------------


def _divisors(n: int, limit: int = 10 ** 6) -> list[int]:
    """All positive divisors of |n|; refuses if a factor beyond limit remains."""
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of zero")
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n and p <= limit:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if n > limit * limit:
            raise PrecisionError("coefficient too hard to factor for the irreducibility check")
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for q, e in factors.items():
        divs = [d * q ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _try_rational_roots(f: tuple[int, ...], disks: list[RootDisk]) -> bool:
    """True iff the primitive integer polynomial f has a rational root."""
    lead = f[-1]
    for q in _divisors(lead):
        for disk in disks:
            # a rational root enclosed here satisfies |q*re - p| <= q*rad < 1/2
            target = Fraction(q) * disk.re
            p = (2 * target.numerator + target.denominator) // (2 * target.denominator)
            if peval([Fraction(c) for c in f], Fraction(p, q)) == 0:
                return True
    return False


def irreducible_over_q(coeffs) -> bool:
    """Exact irreducibility over Q for a squarefree polynomial of degree <= 4."""
    f = primitive(coeffs)
    d = deg(f)
    if d < 1:
        raise ValueError("irreducibility is about nonconstant polynomials")
    if d > 4:
        raise ValueError("exact irreducibility check limited to degree <= 4")
    if d == 1:
        return True
    if f[0] == 0:
        return False  # divisible by x
    lead, const = abs(f[-1]), abs(f[0])
    fq = poly(f)
    # tight enclosures so rounding q*z recovers any rational root / factor coeff
    mbound = Fraction(1, 1)
    rough = certified_roots(f, None, 64)
    for disk in rough:
        mbound = max(mbound, disk.abs_bounds(64)[1])
    target = Fraction(1, 8 * (lead + 1) * (math.ceil(mbound) + 1))
    disks = certified_roots(f, target, 192)
    if _try_rational_roots(f, disks):
        return False
    if d <= 3:
        return True
    # degree 4: remaining factorizations are quadratic * quadratic
    idx = range(4)
    for p in _divisors(lead):
        for i in idx:
            for j in idx:
                if j <= i:
                    continue
                zi, zj = disks[i], disks[j]
                s_re = zi.re + zj.re
                pr_re = zi.re * zj.re - zi.im * zj.im
                b_t = Fraction(-p) * s_re
                c_t = Fraction(p) * pr_re
                b = (2 * b_t.numerator + b_t.denominator) // (2 * b_t.denominator)
                c = (2 * c_t.numerator + c_t.denominator) // (2 * c_t.denominator)
                quad = poly([c, b, p])
                if deg(quad) == 2:
                    q, r = pdivmod(fq, quad)
                    if not r and deg(q) == 2:
                        return False
    return True
