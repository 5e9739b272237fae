"""Sparse integer Laurent polynomials and their subgroup-vanishing tests.

A polynomial is a finite map from integer exponent vectors to nonzero integer
coefficients.  The key exact decision procedure here is
:func:`vanishes_on_subgroup`: restricted to the algebraic subgroup attached to
a lattice, monomials collapse along congruence classes of exponents modulo the
lattice, so the restriction vanishes identically iff every class has zero
coefficient sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import DEFAULT_BITS, CertifiedInterval, interval_log
from .lattice import EnumerationCapError, Lattice, row_hnf
from .numberfield import NFElement


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean: dict[tuple[int, ...], int] = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError("exponent vector length must equal nvars")
            c = int(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        self.nvars = nvars
        self.terms = {e: c for e, c in sorted(clean.items()) if c != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> "SupportSet":
        return SupportSet(frozenset(self.terms))

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"LaurentPolynomial({self.nvars}, 0)"
        bits = []
        for e, c in self.terms.items():
            mono = "*".join(f"x{i + 1}^{p}" for i, p in enumerate(e) if p != 0)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"LaurentPolynomial({self.nvars}, {' + '.join(bits)})"

    # wire format shared with the CLI
    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.terms.items()],
        }

    @classmethod
    def from_json_dict(cls, obj) -> "LaurentPolynomial":
        if not isinstance(obj, dict) or "nvars" not in obj or "terms" not in obj:
            raise ValueError("polynomial JSON needs 'nvars' and 'terms'")
        terms = {}
        for t in obj["terms"]:
            e = tuple(int(x) for x in t["e"])
            c = int(str(t["c"]))
            terms[e] = terms.get(e, 0) + c
        return cls(int(obj["nvars"]), terms)


@dataclass(frozen=True)
class SupportSet:
    """Deduplicated set of integer exponent vectors."""

    vectors: frozenset

    def sorted_vectors(self) -> list[tuple[int, ...]]:
        return sorted(self.vectors)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.sorted_vectors())


def _require_nonzero(f: LaurentPolynomial) -> None:
    if f.is_zero():
        raise ValueError("operation undefined for the zero polynomial")


def normalize(f: LaurentPolynomial) -> LaurentPolynomial:
    """Shift by a monomial so all exponents are >= 0 and each variable hits 0."""
    _require_nonzero(f)
    mins = [min(e[i] for e in f.terms) for i in range(f.nvars)]
    return LaurentPolynomial(
        f.nvars, {tuple(x - m for x, m in zip(e, mins)): c for e, c in f.terms.items()})


def degree(f: LaurentPolynomial) -> int:
    """Total degree of the normalized polynomial.

    Upper bound for the degree of the reduced closure of {f = 0}; exact when f
    is squarefree.
    """
    g = normalize(f)
    return max(sum(e) for e in g.terms)


def norm_l1(f: LaurentPolynomial) -> int:
    _require_nonzero(f)
    return sum(abs(c) for c in f.terms.values())


def D_of(polys) -> int:
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial list")
    return max(degree(f) for f in polys)


def h1_of(polys, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified enclosure of max_i log ||F_i||_1."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial list")
    return interval_log(max(norm_l1(f) for f in polys), bits)


def difference_set(polys) -> SupportSet:
    """All pairwise differences of exponents across the normalized supports."""
    union: set[tuple[int, ...]] = set()
    nvars = None
    for f in polys:
        if nvars is None:
            nvars = f.nvars
        elif f.nvars != nvars:
            raise ValueError("polynomials must share the variable count")
        if not f.is_zero():
            union.update(normalize(f).terms)
    diffs = {tuple(a - b for a, b in zip(u, v)) for u in union for v in union}
    if union:
        diffs.add(tuple([0] * nvars))
    return SupportSet(frozenset(diffs))


def vanishes_on_subgroup(f: LaurentPolynomial, lat: Lattice) -> bool:
    """Exact test: does f vanish identically on the subgroup H attached to lat?

    Exponents congruent modulo the lattice give equal characters on H, and
    distinct classes are linearly independent functions, so the restriction is
    zero iff every congruence class has vanishing coefficient sum.
    """
    if lat.ambient_dim != f.nvars:
        raise ValueError("lattice ambient dimension must equal nvars")
    classes: list[tuple[tuple[int, ...], int]] = []
    for e, c in f.terms.items():
        for idx, (rep, _) in enumerate(classes):
            if lat.contains(tuple(a - b for a, b in zip(e, rep))):
                classes[idx] = (rep, classes[idx][1] + c)
                break
        else:
            classes.append((e, c))
    return all(total == 0 for _, total in classes)


def maximal_vanishing_subgroups(polys, seed: Lattice | None = None,
                                cap: int = 12) -> list[Lattice]:
    """Inclusion-maximal lattices generated inside the difference set on whose
    subgroup every polynomial vanishes.

    The search runs over spans of subsets of the difference set (one generator
    per +-pair; the span is unchanged), always joined with the seed when one
    is given.  Vanishing tests are memoized by Hermite normal form.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial list")
    nvars = polys[0].nvars
    diffs = difference_set(polys)
    gens = sorted({max(v, tuple(-c for c in v)) for v in diffs if any(v)})
    if len(gens) > cap:
        raise EnumerationCapError(
            f"difference set too large for subset search: {len(gens)} > cap {cap}")
    seed_rows: list[tuple[int, ...]] = []
    if seed is not None:
        if seed.ambient_dim != nvars:
            raise ValueError("seed ambient dimension must equal nvars")
        seed_rows = list(seed.basis)

    memo: dict[tuple, bool] = {}
    found: dict[tuple, Lattice] = {}
    for r in range(0 if seed_rows else 1, len(gens) + 1):
        for subset in itertools.combinations(gens, r):
            rows = seed_rows + list(subset)
            hnf = row_hnf(rows)
            if not hnf:
                continue
            if hnf in memo:
                continue
            lat = Lattice(hnf, nvars)
            ok = all(vanishes_on_subgroup(f, lat) for f in polys)
            memo[hnf] = ok
            if ok:
                found[hnf] = lat
    maximal = []
    for key, lat in sorted(found.items()):
        if not any(other != lat and other.contains_lattice(lat)
                   for other in found.values()):
            maximal.append(lat)
    return maximal


def evaluate_at_power_point(f: LaurentPolynomial, xi, a) -> NFElement:
    """Exact residue of f(xi^{a_1}, ..., xi^{a_n}).

    xi may be an NFElement or an exact rational; negative powers go through
    exact inversion.
    """
    a = tuple(int(x) for x in a)
    if len(a) != f.nvars:
        raise ValueError("exponent vector length must equal nvars")
    if isinstance(xi, NFElement):
        base = xi
    else:
        q = Fraction(xi)
        if q == 0:
            raise ValueError("xi must be nonzero")
        base = NFElement.from_rational(q)
    if base.is_zero():
        raise ValueError("xi must be nonzero")
    powers: dict[int, NFElement] = {}
    acc = base * 0
    for e, c in f.terms.items():
        t = sum(m * am for m, am in zip(e, a))
        if t not in powers:
            powers[t] = base ** t
        acc = acc + powers[t] * c
    return acc


def evaluate_at_point(f: LaurentPolynomial, coords) -> NFElement:
    """Exact evaluation at a point with coordinates in one quotient ring."""
    coords = list(coords)
    if len(coords) != f.nvars:
        raise ValueError("need one coordinate per variable")
    base = coords[0]
    acc = base * 0
    for e, c in f.terms.items():
        term = base * 0 + c
        for x, m in zip(coords, e):
            if m:
                term = term * (x ** m)
        acc = acc + term
    return acc
