"""Residue arithmetic in Q[x]/(f) for a squarefree integer polynomial f.

Represents algebraic numbers such as xi and its powers xi^a exactly, so that
zero tests on evaluated polynomial expressions are decided with no rounding.
A zero residue always means the value vanishes at every root of f; when f is
irreducible (verified exactly for deg <= 4, otherwise trusted and flagged) a
nonzero residue conversely never vanishes.
"""

from __future__ import annotations

from fractions import Fraction

from . import unipoly
from .unipoly import deg, pdivmod, pmul, poly, primitive


class NFElement:
    """Element of Q[x]/(modulus), coordinates in the power basis."""

    __slots__ = ("modulus", "residue", "irreducible_checked")

    def __init__(self, modulus, residue, _checked=None):
        if _checked is None:
            # fresh modulus: normalize and validate once; wrapped results of
            # arithmetic skip this (the ring is already certified)
            mod = primitive(modulus)
            d = deg(poly(mod))
            if d < 1:
                raise ValueError("modulus must be nonconstant")
            if not unipoly.is_squarefree(poly(mod)):
                raise ValueError("modulus must be squarefree (gcd(f, f') = 1 fails)")
            if d <= 4:
                if not unipoly.irreducible_over_q(mod):
                    raise ValueError("modulus is reducible over the rationals")
                _checked = True
            else:
                _checked = False
        else:
            mod = tuple(int(c) for c in modulus)
            d = len(mod) - 1
        res = [Fraction(c) for c in residue]
        if len(res) > d:
            res = list(pdivmod(poly(res), poly(mod))[1])
        res += [Fraction(0)] * (d - len(res))
        self.modulus = mod
        self.residue = tuple(res)
        self.irreducible_checked = _checked

    # -- constructors -------------------------------------------------------
    @classmethod
    def generator(cls, modulus) -> "NFElement":
        return cls(modulus, [0, 1])

    @classmethod
    def from_rational(cls, q, modulus=None) -> "NFElement":
        q = Fraction(q)
        if modulus is None:
            if q == 0:
                raise ValueError("cannot build a quotient pinned to zero")
            # residue ring of den*x - num, a degree-one field where x maps to q
            modulus = (-q.numerator, q.denominator)
            return cls(modulus, [q], _checked=True)
        return cls(modulus, [q])

    # -- helpers ------------------------------------------------------------
    def _compat(self, other: "NFElement") -> None:
        if self.modulus != other.modulus:
            raise ValueError("operands live in different quotient rings")

    def _wrap(self, res) -> "NFElement":
        return NFElement(self.modulus, res, _checked=self.irreducible_checked)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.residue)

    def __eq__(self, other):
        if not isinstance(other, NFElement):
            return NotImplemented
        return self.modulus == other.modulus and self.residue == other.residue

    def __hash__(self):
        return hash((self.modulus, self.residue))

    def __repr__(self):
        return f"NFElement(mod={self.modulus}, residue={self.residue})"

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        self._compat(other)
        return self._wrap([a + b for a, b in zip(self.residue, other.residue)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-a for a in self.residue])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        self._compat(other)
        prod = pmul(poly(self.residue), poly(other.residue))
        return self._wrap(pdivmod(prod, poly(self.modulus))[1])

    __rmul__ = __mul__

    def _coerce(self, other) -> "NFElement":
        if isinstance(other, NFElement):
            return other
        return NFElement(self.modulus, [Fraction(other)], _checked=self.irreducible_checked)

    def inverse(self) -> "NFElement":
        if self.is_zero():
            raise ZeroDivisionError("inversion of the zero residue")
        f, r = poly(self.modulus), poly(self.residue)
        # extended Euclid: s*r + t*f = g
        old_s, s = poly([1]), poly([])
        old_r, rr = r, f
        while rr:
            q, rem = pdivmod(old_r, rr)
            old_r, rr = rr, rem
            old_s, s = s, unipoly.psub(old_s, pmul(q, s))
        if deg(old_r) != 0:
            raise ZeroDivisionError(
                "residue is a zero divisor: the modulus is reducible")
        return self._wrap(unipoly.pscale(old_s, 1 / old_r[0]))

    def __pow__(self, e: int) -> "NFElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self._wrap([Fraction(1)])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def nf_mul(a: NFElement, b: NFElement) -> NFElement:
    return a * b


def nf_pow(a: NFElement, e: int) -> NFElement:
    return a ** e


def nf_is_zero(a: NFElement) -> bool:
    return a.is_zero()
