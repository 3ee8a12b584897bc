"""Coefficient rings for the truncated series arithmetic.

Everything downstream (noncommutative series, commutative series in
(a, b, p), 2x2 matrices) is generic over a small ring adapter.  Two rings
are provided here:

* ``QQ`` -- exact rationals, backed by ``fractions.Fraction``;
* ``ComplexField(digits)`` -- arbitrary-precision complex numbers, backed
  by mpmath, with the working precision carried explicitly on the adapter.

l-adic integers live in ``ladic.py``; they have their own precision
semantics and never flow through these adapters.
"""

from __future__ import annotations

import contextlib
from fractions import Fraction
from functools import lru_cache

import mpmath


class RationalField:
    """Adapter for exact rational coefficients."""

    name = "QQ"
    exact = True

    zero = Fraction(0)
    one = Fraction(1)

    def context(self):
        """No-op context; exact arithmetic has no working precision."""
        return contextlib.nullcontext()

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return Fraction(fr)

    def is_zero(self, x):
        return x == 0

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return Fraction(1) / x

    def encode(self, x):
        fr = Fraction(x)
        return {"num": str(fr.numerator), "den": str(fr.denominator)}

    def decode(self, obj):
        return Fraction(int(obj["num"]), int(obj["den"]))


class ComplexField:
    """Adapter for mpmath complex coefficients at a fixed decimal precision.

    The precision is a property of the adapter, not global state; callers
    that need the full working precision should wrap computations in
    ``with ring.workprec():``.
    """

    exact = False

    def __init__(self, digits=50):
        self.digits = digits
        self.name = "CC%d" % digits
        with mpmath.workdps(digits):
            self.zero = mpmath.mpc(0)
            self.one = mpmath.mpc(1)

    def workprec(self):
        return mpmath.workdps(self.digits)

    def context(self):
        """Working-precision context for coefficient arithmetic; mpmath
        rounds every operation to the ambient precision, so all entry
        points processing complex coefficients must run inside this."""
        return mpmath.workdps(self.digits + 10)

    def from_int(self, n):
        with self.workprec():
            return mpmath.mpc(n)

    def from_fraction(self, fr):
        fr = Fraction(fr)
        with self.workprec():
            return mpmath.mpc(fr.numerator) / fr.denominator

    def is_zero(self, x):
        # Exact zero only: tolerance comparisons belong to the checks, not
        # to the arithmetic (pruning by tolerance would corrupt results).
        return x == 0

    def inv(self, x):
        with self.workprec():
            return 1 / x

    def encode(self, x):
        return {"re": mpmath.nstr(x.real, self.digits), "im": mpmath.nstr(x.imag, self.digits)}

    def decode(self, obj):
        with self.workprec():
            return mpmath.mpc(mpmath.mpf(obj["re"]), mpmath.mpf(obj["im"]))


QQ = RationalField()


@lru_cache(maxsize=None)
def complex_field(digits=50) -> ComplexField:
    """Shared adapter per precision; series arithmetic requires operands to
    carry the identical ring object."""
    return ComplexField(digits)


def abs_value(x):
    """|x| as a float, usable on Fraction and mpmath numbers alike."""
    if isinstance(x, Fraction):
        return abs(float(x))
    return float(mpmath.fabs(x))
