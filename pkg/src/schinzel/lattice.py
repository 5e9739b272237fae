"""Exact geometry of numbers on subgroups of Z^n.

Everything is integer or rational arithmetic: orthogonal lattices via
unimodular column reduction, LLL over exact rationals (delta = 3/4 by
default), Fincke-Pohst style enumeration for short vectors and successive
minima, minor profiles for torus degree intervals, and the filtration of
nested subtori attached to a direction vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    DEFAULT_BITS,
    CertifiedInterval,
    ball_volume_pi_form,
    interval_pi_power,
    interval_sqrt,
)

DEFAULT_ENUMERATION_CAP = 10
DEFAULT_RESULT_GUARD = 10 ** 6
DEFAULT_MINOR_DIM_GUARD = 20


class EnumerationCapError(RuntimeError):
    """Exact enumeration was refused because the rank exceeds the cap."""


def _as_int_vector(v) -> tuple[int, ...]:
    out = []
    for c in v:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("lattice data must be integral")
            c = c.numerator
        if not isinstance(c, int):
            raise ValueError("lattice data must be integral")
        out.append(c)
    return tuple(out)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _norm_sq(v) -> int:
    return sum(c * c for c in v)


def _rational_rank(rows) -> int:
    m = [[Fraction(c) for c in r] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [c * inv for c in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _bareiss_det(mat) -> int:
    """Exact determinant of a square integer matrix (fraction-free)."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def row_hnf(rows) -> tuple[tuple[int, ...], ...]:
    """Canonical row Hermite normal form of the row span (zero rows dropped)."""
    h = [list(r) for r in rows]
    ncols = len(h[0]) if h else 0
    top = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(top, len(h)) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][col]), i))
            h[top], h[i0] = h[i0], h[top]
            done = True
            for i in range(top + 1, len(h)):
                if h[i][col] != 0:
                    q = h[i][col] // h[top][col]
                    h[i] = [a - q * b for a, b in zip(h[i], h[top])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if top < len(h) and h[top][col] != 0:
            if h[top][col] < 0:
                h[top] = [-c for c in h[top]]
            for i in range(top):
                q = h[i][col] // h[top][col]
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[top])]
            top += 1
    return tuple(tuple(r) for r in h[:top])


def _hnf_contains(hnf, vec) -> bool:
    v = list(vec)
    pivots = []
    for row in hnf:
        pc = next(i for i, c in enumerate(row) if c != 0)
        pivots.append(pc)
    for row, pc in zip(hnf, pivots):
        if v[pc] % row[pc] != 0:
            return False
        q = v[pc] // row[pc]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return all(c == 0 for c in v)


def integer_kernel(rows, n: int) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice {x in Z^n : <r, x> = 0 for all rows r}.

    Unimodular column reduction: the untouched columns of the transform are a
    basis of the kernel, hence the result is automatically saturated.
    """
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # columns tracked as rows of u^T

    def col_addmul(j, i, q):  # col_j -= q * col_i
        for r in a:
            r[j] -= q * r[i]
        for r in u:
            r[j] -= q * r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    lead = 0
    for i in range(len(a)):
        while True:
            nz = [j for j in range(lead, n) if a[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(a[i][j]), j))
            col_swap(lead, j0)
            if len(nz) == 1:
                break
            for j in range(lead + 1, n):
                if a[i][j] != 0:
                    col_addmul(j, lead, a[i][j] // a[i][lead])
        if lead < n and a[i][lead] != 0:
            lead += 1
    kernel = [tuple(u[r][j] for r in range(n)) for j in range(lead, n)]
    return kernel


def smith_normal_form(rows):
    """Diagonal d with U*M*V = diag(d); returns (d, U, V), U and V unimodular."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, k, q):  # row_i -= q*row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j, k, q):  # col_j -= q*col_k
        for r in a:
            r[j] -= q * r[k]
        for r in v:
            r[j] -= q * r[k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j] != 0]
        if not entries:
            break
        _, i0, j0 = min(entries)
        row_swap(t, i0)
        col_swap(t, j0)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                row_op(i, t, a[i][t] // a[t][t])
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j] != 0:
                col_op(j, t, a[t][j] // a[t][t])
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] for i in range(min(m, n)) if a[i][i] != 0]
    return diag, u, v


def elementary_divisors(rows) -> list[int]:
    return smith_normal_form(rows)[0]


class Lattice:
    """Subgroup of Z^n given by a basis of linearly independent integer rows."""

    __slots__ = ("ambient_dim", "basis", "_hnf")

    def __init__(self, basis, ambient_dim: int | None = None):
        rows = [_as_int_vector(r) for r in basis]
        if not rows:
            raise ValueError("a lattice needs at least one basis vector")
        n = len(rows[0])
        if ambient_dim is not None and ambient_dim != n:
            raise ValueError("ambient dimension does not match the vectors")
        if any(len(r) != n for r in rows):
            raise ValueError("basis vectors must share one length")
        if len(rows) > n:
            raise ValueError("more vectors than the ambient dimension")
        if _rational_rank(rows) != len(rows):
            raise ValueError("basis rows are linearly dependent")
        self.ambient_dim = n
        self.basis = tuple(rows)
        self._hnf = None

    @property
    def rank(self) -> int:
        return len(self.basis)

    def hnf(self):
        if self._hnf is None:
            self._hnf = row_hnf(self.basis)
        return self._hnf

    def contains(self, v) -> bool:
        v = _as_int_vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        return _hnf_contains(self.hnf(), v)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.basis)

    def gram(self):
        return [[_dot(u, v) for v in self.basis] for u in self.basis]

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.hnf() == other.hnf()

    def __hash__(self):
        return hash((self.ambient_dim, self.hnf()))

    def __repr__(self):
        return f"Lattice(rank {self.rank} in Z^{self.ambient_dim}: {list(self.basis)})"


def orthogonal_lattice(a) -> Lattice:
    """Saturated lattice a^perp = {b : <a, b> = 0}, rank n-1."""
    a = _as_int_vector(a)
    n = len(a)
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    if all(c == 0 for c in a):
        raise ValueError("direction vector must be nonzero")
    kernel = integer_kernel([a], n)
    lat = Lattice(kernel, n)
    if any(d != 1 for d in elementary_divisors(lat.basis)):
        raise RuntimeError("orthogonal lattice postcondition failed: not saturated")
    return lat


def saturate(lat: Lattice) -> Lattice:
    """Basis of (Q*L) intersected with Z^n (the saturation of L)."""
    dual = integer_kernel(lat.basis, lat.ambient_dim)
    if not dual:  # full rank: saturation is all of Z^n
        sat_rows = [tuple(1 if i == j else 0 for j in range(lat.ambient_dim))
                    for i in range(lat.ambient_dim)]
    else:
        sat_rows = integer_kernel(dual, lat.ambient_dim)
    sat = Lattice(sat_rows, lat.ambient_dim)
    if not sat.contains_lattice(lat) or any(d != 1 for d in elementary_divisors(sat.basis)):
        raise RuntimeError("saturation postcondition failed")
    return sat


@dataclass(frozen=True)
class VolumeProfile:
    """Gram determinant and L1/Linf norms of the vector of maximal minors."""

    vol_sq: int
    vol_1: int
    vol_inf: int

    def __post_init__(self):
        if not (self.vol_inf <= self.vol_1
                and self.vol_inf ** 2 <= self.vol_sq <= self.vol_1 ** 2):
            raise ValueError("inconsistent volume profile")


def volume_profile(lat: Lattice) -> VolumeProfile:
    if lat.ambient_dim > DEFAULT_MINOR_DIM_GUARD:
        raise EnumerationCapError(
            f"minor enumeration limited to ambient dimension {DEFAULT_MINOR_DIM_GUARD}")
    vol_sq = _bareiss_det(lat.gram())
    k = lat.rank
    minors = []
    for cols in _combinations(lat.ambient_dim, k):
        sub = [[row[c] for c in cols] for row in lat.basis]
        minors.append(_bareiss_det(sub))
    sq = sum(m * m for m in minors)
    if sq != vol_sq:
        raise RuntimeError("Cauchy-Binet identity violated")
    return VolumeProfile(vol_sq=vol_sq, vol_1=sum(abs(m) for m in minors),
                         vol_inf=max(abs(m) for m in minors))


def _combinations(n, k):
    return itertools.combinations(range(n), k)


def torus_degree_interval(lat: Lattice) -> tuple[int, int]:
    """Integer interval guaranteed to contain the degree of the subtorus.

    Lower end is the largest maximal minor; upper end is the smaller of the
    binomial multiple and the L1 minor norm.
    """
    prof = volume_profile(lat)
    hi = min(math.comb(lat.ambient_dim, lat.rank) * prof.vol_inf, prof.vol_1)
    return (prof.vol_inf, hi)


# ---------------------------------------------------------------------------
# LLL over exact rationals
# ---------------------------------------------------------------------------


def _gso(rows):
    """Gram-Schmidt data (mu, B, bstar) over exact rationals."""
    k = len(rows)
    bstar = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    b_norm = []
    for i in range(k):
        vec = [Fraction(c) for c in rows[i]]
        for j in range(i):
            num = sum(Fraction(a) * b for a, b in zip(rows[i], bstar[j]))
            m = num / b_norm[j]
            mu[i][j] = m
            vec = [a - m * b for a, b in zip(vec, bstar[j])]
        bstar.append(vec)
        b_norm.append(sum(c * c for c in vec))
    return mu, b_norm, bstar


def lll_reduce(lat: Lattice, delta=Fraction(3, 4)) -> Lattice:
    """LLL reduction in exact rational arithmetic.

    The output generates the same lattice and is verified, exactly, to be
    size-reduced and to satisfy the Lovasz condition with the given delta.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie strictly between 1/4 and 1")
    b = [list(r) for r in lat.basis]
    k_dim = len(b)
    if k_dim > 1:
        mu, bn, bstar = _gso(b)

        def red(k, l):
            m = mu[k][l]
            q = (2 * m.numerator + m.denominator) // (2 * m.denominator)  # nearest int
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[l])]
                mu[k][l] -= q
                for i in range(l):
                    mu[k][i] -= q * mu[l][i]

        def refresh_row(i):
            vec = [Fraction(c) for c in b[i]]
            for j in range(i):
                num = sum(Fraction(a) * w for a, w in zip(b[i], bstar[j]))
                m = num / bn[j]
                mu[i][j] = m
                vec = [a - m * w for a, w in zip(vec, bstar[j])]
            bstar[i] = vec
            bn[i] = sum(c * c for c in vec)

        k = 1
        while k < k_dim:
            red(k, k - 1)
            if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
                for l in range(k - 2, -1, -1):
                    red(k, l)
                k += 1
            else:
                b[k - 1], b[k] = b[k], b[k - 1]
                refresh_row(k - 1)
                refresh_row(k)
                for i in range(k + 1, k_dim):
                    for j in (k - 1, k):
                        num = sum(Fraction(a) * w for a, w in zip(b[i], bstar[j]))
                        mu[i][j] = num / bn[j]
                k = max(k - 1, 1)

    out = Lattice(b, lat.ambient_dim)
    _check_lll_reduced(out, delta)
    if out.hnf() != lat.hnf():
        raise RuntimeError("LLL postcondition failed: output lattice differs from input")
    return out


def _check_lll_reduced(lat: Lattice, delta) -> None:
    mu, bn, _ = _gso(lat.basis)
    for i in range(lat.rank):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                raise RuntimeError("LLL postcondition failed: size reduction violated")
        if i >= 1 and bn[i] < (delta - mu[i][i - 1] ** 2) * bn[i - 1]:
            raise RuntimeError("LLL postcondition failed: Lovasz condition violated")


# ---------------------------------------------------------------------------
# enumeration and successive minima
# ---------------------------------------------------------------------------


def enumerate_short_vectors(lat: Lattice, radius_sq: int,
                            cap: int = DEFAULT_ENUMERATION_CAP,
                            limit: int = DEFAULT_RESULT_GUARD) -> list[tuple[int, ...]]:
    """All nonzero lattice vectors with squared norm <= radius_sq.

    One representative per +-pair (the lexicographically larger), sorted by
    (squared norm, lexicographic order).
    """
    if radius_sq < 1:
        raise ValueError("radius_sq must be at least 1")
    if lat.rank > cap:
        raise EnumerationCapError(
            f"enumeration infeasible: rank {lat.rank} exceeds cap {cap}")
    red = lll_reduce(lat)
    mu, bn, _ = _gso(red.basis)
    k = red.rank
    out = set()
    x = [0] * k

    def emit():
        v = [0] * red.ambient_dim
        for c, row in zip(x, red.basis):
            if c:
                for t in range(red.ambient_dim):
                    v[t] += c * row[t]
        v = tuple(v)
        if all(c == 0 for c in v):
            return
        ns = _norm_sq(v)
        if ns <= radius_sq:
            neg = tuple(-c for c in v)
            out.add(max(v, neg))
            if len(out) > limit:
                raise EnumerationCapError("enumeration result guard exceeded")

    def rec(j, rem):
        if j < 0:
            emit()
            return
        c = sum(mu[i][j] * x[i] for i in range(j + 1, k))
        base = (2 * c.numerator + c.denominator) // (2 * c.denominator)  # round(c)
        # ascending from the center, then descending
        xm = -base
        t = xm
        while True:
            val = (Fraction(t) + c) ** 2 * bn[j]
            if val > rem:
                break
            x[j] = t
            rec(j - 1, rem - val)
            t += 1
        t = xm - 1
        while True:
            val = (Fraction(t) + c) ** 2 * bn[j]
            if val > rem:
                break
            x[j] = t
            rec(j - 1, rem - val)
            t -= 1
        x[j] = 0

    rec(k - 1, Fraction(radius_sq))
    return sorted(out, key=lambda v: (_norm_sq(v), v))


def successive_minima(lat: Lattice, count: int,
                      cap: int = DEFAULT_ENUMERATION_CAP) -> list[int]:
    """Exact squared successive minima lambda_1^2..lambda_count^2."""
    if count < 1 or count > lat.rank:
        raise ValueError("count must lie between 1 and the rank")
    if lat.rank > cap:
        raise EnumerationCapError(
            f"enumeration infeasible: rank {lat.rank} exceeds cap {cap}")
    red = lll_reduce(lat)
    norms = [_norm_sq(r) for r in red.basis]
    radius = max(norms[:count])
    vecs = enumerate_short_vectors(red, radius, cap=cap)
    picked = []
    minima = []
    for v in vecs:
        cand = picked + [v]
        if _rational_rank(cand) == len(cand):
            picked.append(v)
            minima.append(_norm_sq(v))
            if len(minima) == count:
                break
    assert len(minima) == count, "enumeration radius missed a minimum"
    return minima


# ---------------------------------------------------------------------------
# filtration of nested subtori attached to a direction vector
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Filtration:
    """LLL-reduced flag of sublattices of a^perp with degree certificates.

    degree_intervals[i] is the integer interval for the degree of the
    codimension-i subtorus; sandwich[i] is the certified two-sided product
    estimate (ball-volume lower bound, LLL upper bound) for the same degree.
    minima_sq[i] encloses lambda_{i+1}(a^perp)^2 and is a point interval when
    minima_exact is set.
    """

    a: tuple[int, ...]
    reduced_basis: tuple[tuple[int, ...], ...]
    sublattices: tuple[Lattice, ...]
    degree_intervals: tuple[tuple[int, int], ...]
    minima_sq: tuple[tuple[Fraction, Fraction], ...]
    minima_exact: bool
    sandwich: tuple[tuple[CertifiedInterval, CertifiedInterval], ...]


def build_filtration(a, bits: int = DEFAULT_BITS,
                     cap: int = DEFAULT_ENUMERATION_CAP) -> Filtration:
    """Reduced basis of a^perp with per-level torus degree certificates."""
    a = _as_int_vector(a)
    perp = orthogonal_lattice(a)
    red = lll_reduce(perp)
    n = len(a)
    r = n - 1
    for row in red.basis:
        assert _dot(row, a) == 0
    subs = tuple(Lattice(red.basis[:i], n) for i in range(1, r + 1))
    deg_ints = [(1, 1)]
    deg_ints.extend(torus_degree_interval(s) for s in subs)

    if r <= cap:
        exact = successive_minima(red, r, cap=cap)
        minima = tuple((Fraction(m), Fraction(m)) for m in exact)
        minima_exact = True
    else:
        norms = [_norm_sq(row) for row in red.basis]
        running = []
        best = 0
        for ns in norms:
            best = max(best, ns)
            running.append((Fraction(best, 2 ** (n - 2)), Fraction(best)))
        minima = tuple(running)
        minima_exact = False

    sandwich = [(CertifiedInterval.point(1), CertifiedInterval.point(1))]
    prod = CertifiedInterval.point(1)
    for i in range(1, r + 1):
        lam = CertifiedInterval(minima[i - 1][0], minima[i - 1][1]).sqrt(bits)
        prod = (prod * lam).round(bits + 8)
        vr, vh = ball_volume_pi_form(i)
        v_i = vr * interval_pi_power(vh, bits)
        binom = math.comb(n, i)
        lo = v_i * prod * Fraction(1, 2 ** i) * interval_sqrt(Fraction(1, binom), bits)
        hi_scale = interval_sqrt(Fraction(binom * 2 ** (i * (n - 2))), bits)
        hi = prod * hi_scale
        sandwich.append((lo.round(bits + 8), hi.round(bits + 8)))

    return Filtration(
        a=a,
        reduced_basis=red.basis,
        sublattices=subs,
        degree_intervals=tuple(deg_ints),
        minima_sq=minima,
        minima_exact=minima_exact,
        sandwich=tuple(sandwich),
    )
