"""Machine verification of the ten supporting numerical inequalities.

Integer-indexed inequalities are checked for every n in the requested range
(and every admissible m), each comparison decided by strict interval
separation in certified arithmetic; squaring removes half-integer powers, and
powers of pi are isolated on one side so most comparisons reduce to one big
exact cross-multiplication against a pi-power enclosure.  The one real-variable
inequality is checked on a rational grid plus its analytic minimum point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    CertifiedInterval,
    PrecisionError,
    ball_volume_pi_form,
    interval_e,
    interval_log,
    interval_pi,
    interval_pi_power,
    interval_sqrt,
)
from .heights import double_harmonic

DEFAULT_SUITE_BITS = 256
ALL_IDS = tuple(range(1, 11))

_PI_POW: dict[tuple[int, int], CertifiedInterval] = {}


def _pi_pow(j: int, bits: int) -> CertifiedInterval:
    key = (j, bits)
    if key not in _PI_POW:
        _PI_POW[key] = interval_pi(bits).ipow(j, bits + 8)
    return _PI_POW[key]


@dataclass(frozen=True)
class InequalityCheck:
    """Outcome of one verification run; counterexample present iff it failed."""

    ineq_id: int
    domain: str
    verified_range: str
    passed: bool
    counterexample: str | None = None

    def __post_init__(self):
        if self.passed != (self.counterexample is None):
            raise ValueError("counterexample must be present exactly on failure")

    def to_json_dict(self) -> dict:
        return {
            "id": self.ineq_id,
            "domain": self.domain,
            "verified_range": self.verified_range,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


def _conclusive(cmp_fn, bits: int) -> bool:
    """Run a three-valued comparison, escalating precision when inconclusive."""
    b = bits
    for _ in range(5):
        res = cmp_fn(b)
        if res is not None:
            return res
        b *= 2
    raise PrecisionError("inconclusive precision even after escalation")


def _le_rational_vs_pi_multiple(lhs: Fraction, scale: Fraction, pi_power: int):
    """Three-valued test of lhs <= scale * pi^pi_power (both scales exact)."""

    def cmp(bits):
        rhs = _pi_pow(pi_power, bits) * scale
        if lhs <= rhs.lo:
            return True
        if lhs > rhs.hi:
            return False
        return None

    return cmp


def _interval_le_rational(make_lhs, rhs: Fraction):
    def cmp(bits):
        lhs = make_lhs(bits)
        if lhs.hi <= rhs:
            return True
        if lhs.lo > rhs:
            return False
        return None

    return cmp


def _interval_ge_rational(make_lhs, rhs: Fraction):
    def cmp(bits):
        lhs = make_lhs(bits)
        if lhs.lo >= rhs:
            return True
        if lhs.hi < rhs:
            return False
        return None

    return cmp


def _vol_sq_form(i: int) -> tuple[Fraction, int]:
    """V_i^2 as (rational, integer power of pi)."""
    r, h = ball_volume_pi_form(i)
    return r * r, h  # h is even by construction of the pi form


# ---------------------------------------------------------------------------
# the individual inequalities
# ---------------------------------------------------------------------------


def _check_1(n: int, bits: int) -> bool:
    # 7(1+1/n)log(n+1) + log 2 + (1/2n) sum 1/(i+j+1) + sum H_i <= (n+13)log(n+1)
    s1 = Fraction(0)
    for s in range(0, 2 * n + 1):
        cnt = s + 1 if s <= n else 2 * n - s + 1
        s1 += Fraction(cnt, s + 1)
    a_n = s1 / (2 * n) + double_harmonic(n)
    coeff = Fraction(n) + 6 - Fraction(7, n)  # (n+13) - 7(1+1/n)

    def make(b):
        return interval_log(n + 1, b) * coeff - interval_log(2, b) - a_n

    return _conclusive(_interval_ge_rational(make, Fraction(0)), bits)


def _c_sq_times(n: int, m: int, extra_two_exp: int) -> tuple[Fraction, Fraction, int]:
    """(lhs, rhs_scale, pi_power) for c-type bounds with squared comparison.

    Returns data so that c(n,m)-type^2 * front^2 <= target^2 becomes
    lhs <= rhs_scale * pi^pi_power.
    """
    vr_sq, vh = _vol_sq_form(m + 1)
    lhs = Fraction(2 ** (2 * m + 2 + extra_two_exp)) * math.comb(n, m + 1) * math.comb(n, m)
    return lhs, vr_sq, vh


def _check_2_all_m(n: int, bits: int) -> int | None:
    # n 2^n c(n,m) <= n^{2n}, squared and with V_{m+1}^2 moved to the right
    front = Fraction(n * n) * 4 ** n
    rhs_base = Fraction(n) ** (4 * n)
    for m in range(0, n - 1):
        lhs_c, vr_sq, vh = _c_sq_times(n, m, 0)
        ok = _conclusive(
            _le_rational_vs_pi_multiple(front * lhs_c, rhs_base * vr_sq, vh), bits)
        if not ok:
            return m
    return None


def _check_3(n: int, bits: int) -> bool:
    return n ** 4 * 2 ** n <= 9 ** n


def _check_4_grid(bits: int, t_max: int, steps_per_unit: int) -> tuple[bool, str | None]:
    # (sqrt(e)-1) t - log t - 1/2 >= 0 on the grid and at the minimum point
    def coeff(b):
        return interval_sqrt(interval_e(b), b) - 1

    def min_value(b):
        c = coeff(b)
        return c.log(b) + Fraction(1, 2)  # f(t0) = 1/2 + log(sqrt(e)-1)

    if not _conclusive(lambda b: (lambda v: True if v.lo > 0 else (False if v.hi <= 0 else None))(min_value(b)), bits):
        return False, "analytic minimum point"
    step = Fraction(1, steps_per_unit)
    t = Fraction(1)
    while t <= t_max:
        tt = t

        def value(b, tt=tt):
            return coeff(b) * tt - interval_log(tt, b) - Fraction(1, 2)

        ok = _conclusive(lambda b: (lambda v: True if v.lo > 0 else (False if v.hi <= 0 else None))(value(b)), bits)
        if not ok:
            return False, f"t={tt}"
        t += step
    return True, None


def _check_5(n: int, bits: int) -> bool:
    def make(b):
        inner = interval_log(n + 1, b) * (n + 13)
        return inner.log(b)

    return _conclusive(_interval_ge_rational(make, Fraction(2)), bits)


def _check_6(n: int, bits: int, doubled_exponent: int = 17) -> bool:
    # (2*1870*n^8 * log(3*1870*n^8))^2 <= (4n)^doubled_exponent
    rhs = Fraction(4 * n) ** doubled_exponent

    def make(b):
        log_term = interval_log(3 * 1870 * n ** 8, b)
        return log_term.ipow(2, b) * Fraction((2 * 1870 * n ** 8) ** 2)

    return _conclusive(_interval_le_rational(make, rhs), bits)


def _check_7(n: int, bits: int) -> bool:
    return n ** 4 * 2 ** (2 * (n - 2) ** 2 + n) <= 2 ** (2 * n * n)


def _check_8_all_m(n: int, bits: int) -> int | None:
    # n 2^n (935 n^6)^{2n} c'(n,m) <= 2^{n^2/2} (2^12 n^{25/4})^{2n}, squared
    front = Fraction(n * n) * 4 ** n * Fraction(935 * n ** 6) ** (4 * n)
    rhs_base = Fraction(2) ** (n * n + 48 * n) * Fraction(n) ** (25 * n)
    for m in range(0, n - 1):
        lhs_c, vr_sq, vh = _c_sq_times(n, m, m * (n - 2))
        ok = _conclusive(
            _le_rational_vs_pi_multiple(front * lhs_c, rhs_base * vr_sq, vh), bits)
        if not ok:
            return m
    return None


def _check_9(n: int, bits: int) -> bool:
    # log(2^{27 + n/2} n^{29/2}) <= 2^4 n
    def make(b):
        return interval_log(2, b) * (Fraction(27) + Fraction(n, 2)) \
            + interval_log(n, b) * Fraction(29, 2)

    return _conclusive(_interval_le_rational(make, Fraction(16 * n)), bits)


def _check_10(n: int, bits: int) -> bool:
    # (2^17 n^{33/4})^{2n} <= (4n)^{17n}, compared squared: exact integers
    return 2 ** (68 * n) * n ** (33 * n) <= 2 ** (68 * n) * n ** (34 * n)


def check_inequality(ineq_id: int, n_max: int = 200, bits: int = DEFAULT_SUITE_BITS,
                     grid: tuple[int, int] = (40, 4)) -> InequalityCheck:
    """Verify one of the ten numbered inequalities over its whole range."""
    if ineq_id not in ALL_IDS:
        raise ValueError(f"unknown inequality id {ineq_id}")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")

    domains = {
        1: "constant fold: double sums dominated by (n+13) log(n+1)",
        2: "ball-volume constant: n 2^n max_m c(n,m) <= n^{2n}",
        3: "n^2 2^{n/2} <= 3^n",
        4: "(sqrt(e)-1) t - log t - 1/2 >= 0 for t >= 1",
        5: "log((n+13) log(n+1)) >= 2",
        6: "2*1870 n^8 log(3*1870 n^8) <= (4n)^{17/2}",
        7: "n^2 2^{(n-2)^2 + n/2} <= 2^{n^2}",
        8: "LLL ball-volume constant: chain into 2^{n^2/2} (2^12 n^{25/4})^{2n}",
        9: "log(2^27 2^{n/2} n^{29/2}) <= 2^4 n",
        10: "(2^17 n^{33/4})^{2n} <= (4n)^{17n}",
    }

    if ineq_id == 4:
        t_max, steps = grid
        passed, bad = _check_4_grid(bits, t_max, steps)
        return InequalityCheck(4, domains[4],
                               f"grid t in [1, {t_max}] step 1/{steps} plus minimum point",
                               passed, bad)

    per_m = ineq_id in (2, 8)
    for n in range(2, n_max + 1):
        if per_m:
            bad_m = (_check_2_all_m if ineq_id == 2 else _check_8_all_m)(n, bits)
            if bad_m is not None:
                return InequalityCheck(ineq_id, domains[ineq_id],
                                       f"n in [2, {n_max}], m in [0, n-2]",
                                       False, f"n={n}, m={bad_m}")
        else:
            fn = {1: _check_1, 3: _check_3, 5: _check_5, 6: _check_6,
                  7: _check_7, 9: _check_9, 10: _check_10}[ineq_id]
            if not fn(n, bits):
                return InequalityCheck(ineq_id, domains[ineq_id],
                                       f"n in [2, {n_max}]", False, f"n={n}")
    rng = f"n in [2, {n_max}]" + (", m in [0, n-2]" if per_m else "")
    return InequalityCheck(ineq_id, domains[ineq_id], rng, True, None)


def ball_volume_interval(i: int, bits: int = DEFAULT_SUITE_BITS) -> CertifiedInterval:
    """Certified enclosure of the unit-ball volume V_i."""
    if i < 1:
        raise ValueError("dimension must be at least 1")
    r, h = ball_volume_pi_form(i)
    return interval_pi_power(h, bits) * r


def gamma_one_plus_half(i: int, bits: int = DEFAULT_SUITE_BITS) -> CertifiedInterval:
    """Certified enclosure of Gamma(1 + i/2) from its half-integer closed form."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i % 2 == 0:
        return CertifiedInterval.point(math.factorial(i // 2))
    dfact = 1
    for t in range(i, 0, -2):
        dfact *= t
    scale = Fraction(dfact, 2 ** ((i + 1) // 2))
    return interval_pi_power(1, bits) * scale


def check_harmonic_bound(n_max: int, bits: int = DEFAULT_SUITE_BITS) -> InequalityCheck:
    """Exact harmonic numbers against 1 + log k, for every k up to n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    h = Fraction(0)
    for k in range(1, n_max + 1):
        h += Fraction(1, k)
        hk = h

        def cmp(b, hk=hk, k=k):
            rhs = interval_log(k, b) + 1
            if hk <= rhs.lo:
                return True
            if hk > rhs.hi:
                return False
            return None

        if not _conclusive(cmp, bits):
            return InequalityCheck(0, "harmonic numbers: H_k <= 1 + log k",
                                   f"k in [1, {n_max}]", False, f"k={k}")
    return InequalityCheck(0, "harmonic numbers: H_k <= 1 + log k",
                           f"k in [1, {n_max}]", True, None)


def check_constant_chain(n_max: int = 200, bits: int = DEFAULT_SUITE_BITS,
                         four_n_exponent: Fraction = Fraction(17, 2)) -> list[InequalityCheck]:
    """Verify the derivation chain behind the final explicit constants.

    Covers the ball-volume maxima (ids 2 and 8), the folding estimates (3, 7,
    9, 10), the log floors that license x + y <= x*y, and the final collapse
    into (4n)^(2*four_n_exponent) -- the exponent is parametrizable so tests
    can confirm a weakened constant is caught.
    """
    doubled = Fraction(2) * four_n_exponent
    if doubled.denominator != 1:
        raise ValueError("four_n_exponent must be a half-integer")
    doubled = int(doubled)
    out = []
    for ineq_id in (2, 3, 5, 7, 9, 10):
        out.append(check_inequality(ineq_id, n_max=n_max, bits=bits))

    # log floor used with x + y <= xy: log(3 (1870 n^8)^{2n}) >= 2
    bad = None
    for n in range(2, n_max + 1):
        def make(b, n=n):
            return interval_log(3, b) + interval_log(1870 * n ** 8, b) * (2 * n)

        if not _conclusive(_interval_ge_rational(make, Fraction(2)), bits):
            bad = f"n={n}"
            break
    out.append(InequalityCheck(5, "log floor: log(3 (1870 n^8)^{2n}) >= 2",
                               f"n in [2, {n_max}]", bad is None, bad))

    # n^7 -> n^8 absorption: 1870 n^7 log(3 (1870 n^8)^{2n}) <= 2*1870 n^8 log(3*1870 n^8)
    bad = None
    for n in range(2, n_max + 1):
        def cmp(b, n=n):
            lhs = (interval_log(3, b) + interval_log(1870 * n ** 8, b) * (2 * n)) \
                * Fraction(1870 * n ** 7)
            rhs = interval_log(3 * 1870 * n ** 8, b) * Fraction(2 * 1870 * n ** 8)
            if lhs.hi <= rhs.lo:
                return True
            if lhs.lo > rhs.hi:
                return False
            return None

        if not _conclusive(cmp, bits):
            bad = f"n={n}"
            break
    out.append(InequalityCheck(6, "absorption: 1870 n^7 log(3 (1870 n^8)^{2n}) "
                               "<= 2*1870 n^8 log(3*1870 n^8)",
                               f"n in [2, {n_max}]", bad is None, bad))

    # final collapse with the (possibly weakened) exponent
    bad = None
    for n in range(2, n_max + 1):
        if not _check_6(n, bits, doubled_exponent=doubled):
            bad = f"n={n}"
            break
    out.append(InequalityCheck(6, f"final collapse: 2*1870 n^8 log(3*1870 n^8) "
                               f"<= (4n)^{four_n_exponent}",
                               f"n in [2, {n_max}]", bad is None, bad))

    out.append(check_inequality(8, n_max=n_max, bits=bits))
    return out
