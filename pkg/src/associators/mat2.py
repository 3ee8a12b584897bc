"""2x2 matrices over an arbitrary entry ring (series, complex, l-adic)."""

from __future__ import annotations


class Mat2:
    __slots__ = ("e",)

    def __init__(self, e00, e01, e10, e11):
        self.e = (e00, e01, e10, e11)

    @classmethod
    def identity(cls, one, zero):
        return cls(one, zero, zero, one)

    def __getitem__(self, ij):
        i, j = ij
        return self.e[2 * i + j]

    def __repr__(self):
        return "Mat2(%r, %r, %r, %r)" % self.e

    def __add__(self, other):
        a, b = self.e, other.e
        return Mat2(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    def __sub__(self, other):
        a, b = self.e, other.e
        return Mat2(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    def __neg__(self):
        a = self.e
        return Mat2(-a[0], -a[1], -a[2], -a[3])

    def __mul__(self, other):
        a, b = self.e, other.e
        return Mat2(
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        )

    def scale(self, c):
        out = []
        for x in self.e:
            out.append(x.scale(c) if hasattr(x, "scale") else x * c)
        return Mat2(*out)

    def det(self):
        a = self.e
        return a[0] * a[3] - a[1] * a[2]

    def transpose(self):
        a = self.e
        return Mat2(a[0], a[2], a[1], a[3])

    def one_like(self):
        a = self.e[0]
        if hasattr(a, "one_like"):
            one = a.one_like()
            zero = one - one
            return Mat2.identity(one, zero)
        raise TypeError("entries do not expose one_like; build the identity explicitly")

    def adjugate(self):
        a = self.e
        return Mat2(a[3], -a[1], -a[2], a[0])

    def inverse(self, entry_inv=None):
        """Inverse via the adjugate; entry_inv inverts the determinant and
        defaults to the entries' own .inverse()."""
        d = self.det()
        dinv = entry_inv(d) if entry_inv is not None else d.inverse()
        return self.adjugate().scale_left(dinv)

    def scale_left(self, c):
        return Mat2(*(c * x for x in self.e))

    def conjugate_by(self, g, entry_inv=None):
        """g^(-1) * self * g."""
        return g.inverse(entry_inv) * self * g


def mat_exp_graded(m: Mat2, one, zero, max_power: int) -> Mat2:
    """exp of a matrix whose entries have positive grading (so the series
    terminates at the truncation order); used over CSeries entries."""
    from fractions import Fraction

    acc = Mat2.identity(one, zero)
    pw = Mat2.identity(one, zero)
    fact = 1
    for k in range(1, max_power + 1):
        pw = pw * m
        fact *= k
        acc = acc + pw.scale(Fraction(1, fact))
    return acc
