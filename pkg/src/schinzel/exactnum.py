"""Exact rationals and certified interval arithmetic.

Every transcendental quantity in this package (logarithms, powers of pi,
sqrt(e), ...) is represented by a :class:`CertifiedInterval`: a pair of
rationals guaranteed to enclose the exact real value.  Intervals are produced
by truncated series evaluated in scaled-integer arithmetic with explicit
remainder bounds, followed by outward rational rounding.  All operations are
pure; values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

DEFAULT_BITS = 128

_MIN_BITS = 8


class PrecisionError(ArithmeticError):
    """A comparison or check could not be decided at the working precision."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _round_down(x: Fraction, bits: int) -> Fraction:
    """Largest dyadic rational with ~bits significant bits that is <= x."""
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    e = p.bit_length() - q.bit_length() - bits
    if e >= 0:
        return Fraction(p // (q << e)) * (1 << e)
    return Fraction((p << -e) // q, 1 << -e)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return -_round_down(-x, bits)


def _sqrt_floor(x: Fraction, bits: int) -> Fraction:
    """Rational lower bound for sqrt(x), x >= 0."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Fraction(0)
    a, b = x.numerator, x.denominator
    # sqrt(a/b) = sqrt(a*b)/b
    t = (a * b) << (2 * bits)
    return Fraction(math.isqrt(t), b << bits)


def _sqrt_ceil(x: Fraction, bits: int) -> Fraction:
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Fraction(0)
    a, b = x.numerator, x.denominator
    t = (a * b) << (2 * bits)
    s = math.isqrt(t)
    if s * s < t:
        s += 1
    return Fraction(s, b << bits)


def decimal_str(x: Fraction, sig: int = 20) -> str:
    """Deterministic decimal rendering of a rational, sig significant digits.

    Uses normalized scientific notation, e.g. ``1.0986122886681096914e+0``.
    """
    x = _to_fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    a = -x if x < 0 else x
    # e10 = floor(log10(a)), computed exactly.
    if a >= 1:
        e10 = len(str(a.numerator // a.denominator)) - 1
    else:
        e10 = -len(str(a.denominator // a.numerator))
    while 10 ** e10 > a:
        e10 -= 1
    while 10 ** (e10 + 1) <= a:
        e10 += 1
    # round a / 10^e10 to sig digits, half away from zero
    shift = sig - 1 - e10
    if shift >= 0:
        num = a.numerator * 10 ** shift
        den = a.denominator
    else:
        num = a.numerator
        den = a.denominator * 10 ** (-shift)
    digits, rem = divmod(num, den)
    if 2 * rem >= den:
        digits += 1
    if digits >= 10 ** sig:
        digits //= 10
        e10 += 1
    s = str(digits)
    mantissa = s[0] + "." + s[1:]
    return f"{sign}{mantissa}e{'+' if e10 >= 0 else '-'}{abs(e10)}"


@dataclass(frozen=True)
class CertifiedInterval:
    """Closed interval [lo, hi] of rationals enclosing an exact real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _to_fraction(self.lo))
        object.__setattr__(self, "hi", _to_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, x) -> "CertifiedInterval":
        x = _to_fraction(x)
        return cls(x, x)

    @classmethod
    def coerce(cls, x) -> "CertifiedInterval":
        if isinstance(x, CertifiedInterval):
            return x
        return cls.point(x)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = _to_fraction(x)
        return self.lo <= x <= self.hi

    def intersects(self, other: "CertifiedInterval") -> bool:
        other = CertifiedInterval.coerce(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        o = CertifiedInterval.coerce(other)
        return CertifiedInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-CertifiedInterval.coerce(other))

    def __rsub__(self, other):
        return CertifiedInterval.coerce(other) + (-self)

    def __mul__(self, other):
        o = CertifiedInterval.coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CertifiedInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def reciprocal(self) -> "CertifiedInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return CertifiedInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * CertifiedInterval.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return CertifiedInterval.coerce(other) * self.reciprocal()

    def ipow(self, k: int, bits: int | None = None) -> "CertifiedInterval":
        """Integer power, exact on the dependency (no straddle blow-up).

        With ``bits`` given, endpoints are rounded outward between squarings so
        huge exponents stay cheap.
        """
        if k == 0:
            return CertifiedInterval.point(1)
        if k < 0:
            return self.ipow(-k, bits).reciprocal()
        if k % 2 == 0 and self.lo < 0 <= self.hi:
            m = max(-self.lo, self.hi)
            res = CertifiedInterval(Fraction(0), m ** k)
        else:
            cands = (self.lo ** k, self.hi ** k)
            res = CertifiedInterval(min(cands), max(cands))
        return res.round(bits) if bits else res

    def sqrt(self, bits: int = DEFAULT_BITS) -> "CertifiedInterval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative lower endpoint")
        return CertifiedInterval(_sqrt_floor(self.lo, bits), _sqrt_ceil(self.hi, bits))

    def log(self, bits: int = DEFAULT_BITS) -> "CertifiedInterval":
        if self.lo <= 0:
            raise ValueError("log of interval touching zero or negative values")
        return CertifiedInterval(interval_log(self.lo, bits).lo, interval_log(self.hi, bits).hi)

    def round(self, bits: int) -> "CertifiedInterval":
        return CertifiedInterval(_round_down(self.lo, bits), _round_up(self.hi, bits))

    # sound comparisons: True only when provable from the endpoints
    def provably_le(self, other) -> bool:
        return self.hi <= CertifiedInterval.coerce(other).lo

    def provably_lt(self, other) -> bool:
        return self.hi < CertifiedInterval.coerce(other).lo

    def provably_ge(self, other) -> bool:
        return CertifiedInterval.coerce(other).provably_le(self)

    def provably_gt(self, other) -> bool:
        return CertifiedInterval.coerce(other).provably_lt(self)

    def to_json(self, sig: int = 20) -> dict:
        return {
            "lo": {"rational": f"{self.lo.numerator}/{self.lo.denominator}", "decimal": decimal_str(self.lo, sig)},
            "hi": {"rational": f"{self.hi.numerator}/{self.hi.denominator}", "decimal": decimal_str(self.hi, sig)},
        }

    def __repr__(self):
        return f"CertifiedInterval({decimal_str(self.lo, 12)}, {decimal_str(self.hi, 12)})"


def _check_bits(bits: int) -> None:
    if bits < _MIN_BITS:
        raise ValueError(f"precision budget must be at least {_MIN_BITS} bits")


def _atanh_scaled(z: Fraction, p: int) -> tuple[int, int]:
    """Integer bounds [lo, hi] at scale 2^p for atanh(z), 0 <= z <= 1/3."""
    if z == 0:
        return 0, 0
    if not 0 < z <= Fraction(1, 3):
        raise ValueError("series argument out of range")
    one = 1 << p
    zlo = (z.numerator << p) // z.denominator
    zhi = zlo + 1
    z2 = z * z
    z2lo = (z2.numerator << p) // z2.denominator
    z2hi = z2lo + 1
    slo, shi = zlo, zhi
    plo, phi = zlo, zhi
    j = 1
    while True:
        plo = (plo * z2lo) >> p
        phi = ((phi * z2hi) + one - 1) >> p
        tlo = plo // (2 * j + 1)
        thi = -((-phi) // (2 * j + 1))
        slo += tlo
        shi += thi
        j += 1
        if phi < 2:
            break
    # remainder of the tail: sum_{i>=j} z^{2i+1}/(2i+1) <= z^{2j+1}/((2j+1)(1-z^2))
    # with current [plo, phi] ~ z^{2j-1}*2^p the next power is <= phi*z2hi/2^p
    tail_hi = ((phi * z2hi) >> p) + 1
    rem = (tail_hi * 9) // (8 * (2 * j + 1)) + 2  # 1/(1-z^2) <= 9/8 for z <= 1/3
    shi += rem
    return slo, shi


_LN2_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def _ln2(p: int) -> tuple[Fraction, Fraction]:
    if p not in _LN2_CACHE:
        lo, hi = _atanh_scaled(Fraction(1, 3), p)
        _LN2_CACHE[p] = (Fraction(2 * lo, 1 << p), Fraction(2 * hi, 1 << p))
    return _LN2_CACHE[p]


def interval_log(x, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified enclosure of ln(x) for a positive rational x.

    Width is at most 2^(1-bits) * max(1, |ln x|).
    """
    _check_bits(bits)
    x = _to_fraction(x)
    if x <= 0:
        raise ValueError("interval_log requires a positive argument")
    if x == 1:
        return CertifiedInterval.point(0)
    # write x = 2^e * m with m in [2/3, 4/3)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** e
    while m >= Fraction(4, 3):
        m /= 2
        e += 1
    while m < Fraction(2, 3):
        m *= 2
        e -= 1
    p = bits + 12 + abs(e).bit_length()
    neg = m < 1
    if neg:
        m = 1 / m  # now in (1, 3/2]
    z = (m - 1) / (m + 1)  # in [0, 1/5]
    slo, shi = _atanh_scaled(z, p)
    lo = Fraction(2 * slo, 1 << p)
    hi = Fraction(2 * shi, 1 << p)
    if neg:
        lo, hi = -hi, -lo
    l2lo, l2hi = _ln2(p)
    if e >= 0:
        lo += e * l2lo
        hi += e * l2hi
    else:
        lo += e * l2hi
        hi += e * l2lo
    return CertifiedInterval(lo, hi).round(bits + 4)


_PI_CACHE: dict[int, CertifiedInterval] = {}


def _arctan_inv_scaled(q: int, p: int) -> tuple[int, int]:
    """Integer bounds at scale 2^p for arctan(1/q), integer q >= 2."""
    one = 1 << p
    slo = shi = 0
    j = 0
    qq = q * q
    power = q  # q^(2j+1)
    while True:
        den = (2 * j + 1) * power
        t = one // den
        if j % 2 == 0:
            slo += t
            shi += t + 1
        else:
            slo -= t + 1
            shi -= t
        if t == 0:
            # alternating series: remainder bounded by the first omitted term,
            # already below one ulp; widen by one ulp on the open side
            if j % 2 == 0:
                slo -= 1
            else:
                shi += 1
            break
        j += 1
        power *= qq
    return slo, shi


def interval_pi(bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified enclosure of pi (Machin's formula, exact integer series)."""
    _check_bits(bits)
    if bits not in _PI_CACHE:
        p = bits + 16
        a5 = _arctan_inv_scaled(5, p)
        a239 = _arctan_inv_scaled(239, p)
        lo = 16 * a5[0] - 4 * a239[1]
        hi = 16 * a5[1] - 4 * a239[0]
        _PI_CACHE[bits] = CertifiedInterval(Fraction(lo, 1 << p), Fraction(hi, 1 << p)).round(bits + 4)
    return _PI_CACHE[bits]


def interval_pi_power(halfsteps: int, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified enclosure of pi^(halfsteps/2) for a nonnegative integer."""
    _check_bits(bits)
    if halfsteps < 0:
        raise ValueError("halfsteps must be nonnegative")
    if halfsteps == 0:
        return CertifiedInterval.point(1)
    pi = interval_pi(bits)
    res = pi.ipow(halfsteps // 2, bits) if halfsteps >= 2 else CertifiedInterval.point(1)
    if halfsteps % 2:
        res = res * pi.sqrt(bits)
    return res.round(bits + 4)


_E_CACHE: dict[int, CertifiedInterval] = {}


def interval_e(bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified enclosure of e = exp(1)."""
    _check_bits(bits)
    if bits not in _E_CACHE:
        p = bits + 16
        one = 1 << p
        slo = shi = 0
        fact = 1
        j = 0
        while True:
            t = one // fact
            slo += t
            shi += t + 1
            if t == 0:
                shi += 2  # tail sum_{i>j} 1/i! <= 2/(j+1)! < 2 ulps
                break
            j += 1
            fact *= j
        _E_CACHE[bits] = CertifiedInterval(Fraction(slo, one), Fraction(shi, one)).round(bits + 4)
    return _E_CACHE[bits]


def interval_sqrt(x, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified enclosure of sqrt(x) for a nonnegative rational or interval."""
    _check_bits(bits)
    if isinstance(x, CertifiedInterval):
        return x.sqrt(bits)
    x = _to_fraction(x)
    return CertifiedInterval(_sqrt_floor(x, bits), _sqrt_ceil(x, bits))


def ball_volume_pi_form(i: int) -> tuple[Fraction, int]:
    """Euclidean unit-ball volume V_i as (rational multiplier, halfsteps of pi).

    V_i = r * pi^(h/2): even i gives (1/(i/2)!, i); odd i gives
    (2^((i+1)/2)/i!!, i-1), from the closed form of Gamma at half-integers.
    """
    if i < 0:
        raise ValueError("dimension must be nonnegative")
    if i == 0:
        return Fraction(1), 0
    if i % 2 == 0:
        return Fraction(1, math.factorial(i // 2)), i
    dfact = 1
    for t in range(i, 0, -2):
        dfact *= t
    return Fraction(2 ** ((i + 1) // 2), dfact), i - 1
