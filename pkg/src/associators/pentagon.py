"""The truncated enveloping algebra hosting the pentagon equation.

The Lie algebra is generated by symbols t_ij (unordered pairs of strands,
i != j in Z/5) subject to t_ii = 0, t_ij = t_ji, the five sum relations
sum_j t_ij = 0, and commutation of generators with disjoint index pairs.

The five sum relations are eliminated up front: t15, t25, t35, t45, t34 are
rewritten in terms of the five free generators (t12, t13, t14, t23, t24),
which turns the quotient into a free algebra on 5 symbols modulo the
two-sided ideal spanned by the 15 rewritten disjoint-pair commutators.
Each graded piece is handled by sparse integer row echelon; normal forms of
monomials are memoised as rational combinations of non-pivot monomials, so
elements over any coefficient ring reuse the same tables.
"""

from __future__ import annotations

import json
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd

NGENS = 5
GEN_NAMES = ("t12", "t13", "t14", "t23", "t24")

# expansion of every canonical pair {i<j} over the free generators
PAIR_EXPANSION = {
    (1, 2): {0: 1},
    (1, 3): {1: 1},
    (1, 4): {2: 1},
    (2, 3): {3: 1},
    (2, 4): {4: 1},
    (3, 4): {0: -1, 1: -1, 2: -1, 3: -1, 4: -1},
    (1, 5): {0: -1, 1: -1, 2: -1},
    (2, 5): {0: -1, 3: -1, 4: -1},
    (3, 5): {0: 1, 2: 1, 4: 1},
    (4, 5): {0: 1, 1: 1, 3: 1},
}


def pair(i, j):
    i, j = int(i), int(j)
    if i == j:
        raise ValueError("t_ii = 0 has no generator")
    return (i, j) if i < j else (j, i)


def disjoint_pairs():
    out = []
    pairs = sorted(PAIR_EXPANSION)
    for x in range(len(pairs)):
        for y in range(x + 1, len(pairs)):
            if not (set(pairs[x]) & set(pairs[y])):
                out.append((pairs[x], pairs[y]))
    return out


def _commutator_row(pa, pb):
    """[T_pa, T_pb] expanded over degree-2 monomials in the free generators."""
    ea, eb = PAIR_EXPANSION[pa], PAIR_EXPANSION[pb]
    row = {}
    for g1, c1 in ea.items():
        for g2, c2 in eb.items():
            for mono, sgn in (((g1, g2), 1), ((g2, g1), -1)):
                s = row.get(mono, 0) + sgn * c1 * c2
                if s:
                    row[mono] = s
                else:
                    row.pop(mono, None)
    return row


def _normalise(row):
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    lead = min(row)
    if row[lead] < 0:
        g = -g
    return {k: v // g for k, v in row.items()}


class P5Quotient:
    """Echelonised relation ideal up to a truncation degree, with normal-form
    reduction for vectors over any coefficient ring."""

    def __init__(self, truncation):
        self.truncation = truncation
        self.echelon = {d: {} for d in range(truncation + 1)}
        self._nf_memo = {}
        self._build()

    # -- construction --------------------------------------------------------

    def _insert(self, d, row):
        ech = self.echelon[d]
        while row:
            lead = min(row)
            piv = ech.get(lead)
            if piv is None:
                ech[lead] = _normalise(row)
                return True
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {k: ma * v for k, v in row.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - mb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = new
        return False

    def _build(self):
        if self.truncation < 2:
            return
        for pa, pb in disjoint_pairs():
            self._insert(2, _commutator_row(pa, pb))
        for d in range(3, self.truncation + 1):
            prev = list(self.echelon[d - 1].values())
            for row in prev:
                for g in range(NGENS):
                    self._insert(d, {(g,) + m: v for m, v in row.items()})
            for row in prev:
                for g in range(NGENS):
                    self._insert(d, {m + (g,): v for m, v in row.items()})

    # -- dimensions ------------------------------------------------------------

    def dimension(self, d):
        if d > self.truncation:
            raise ValueError("degree beyond truncation")
        return NGENS ** d - len(self.echelon[d])

    def dimensions(self):
        return [self.dimension(d) for d in range(self.truncation + 1)]

    # -- normal form -------------------------------------------------------------

    def nf_monomial(self, mono):
        """Normal form of a free monomial as a list of (monomial, Fraction)
        pairs supported on non-pivot monomials."""
        got = self._nf_memo.get(mono)
        if got is None:
            d = len(mono)
            vec = self.reduce_vector(d, {mono: Fraction(1)}, _RATIONAL_OPS)
            got = tuple(sorted(vec.items()))
            self._nf_memo[mono] = got
        return got

    def reduce_vector(self, d, vec, ops):
        """Reduce a degree-d vector {monomial: coefficient} modulo the
        relation ideal.  ops supplies (is_zero, zero) for the coefficients;
        pivot rows are integer, so only coefficient / int is needed."""
        ech = self.echelon[d]
        if not ech:
            return {k: v for k, v in vec.items() if not ops.is_zero(v)}
        out = dict(vec)
        heap = [m for m in out if m in ech]
        heapify(heap)
        while heap:
            m = heappop(heap)
            c = out.get(m)
            if c is None or ops.is_zero(c):
                out.pop(m, None)
                continue
            piv = ech[m]
            f = c / piv[m]
            for k, v in piv.items():
                if k == m:
                    continue
                s = out.get(k)
                s = -f * v if s is None else s - f * v
                if ops.is_zero(s):
                    out.pop(k, None)
                else:
                    if k not in out and k in ech:
                        heappush(heap, k)
                    out[k] = s
            out.pop(m, None)
        return {k: v for k, v in out.items() if not ops.is_zero(v)}

    # -- cache ----------------------------------------------------------------------

    def to_json(self):
        return {
            "truncation": self.truncation,
            "echelon": {
                str(d): [[list(map(list, row.keys())), list(row.values())] for row in ech.values()]
                for d, ech in self.echelon.items()
            },
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            obj = json.load(fh)
        self = cls.__new__(cls)
        self.truncation = int(obj["truncation"])
        self.echelon = {d: {} for d in range(self.truncation + 1)}
        self._nf_memo = {}
        for d_str, rows in obj["echelon"].items():
            d = int(d_str)
            for monos, vals in rows:
                row = {tuple(m): int(v) for m, v in zip(monos, vals)}
                self.echelon[d][min(row)] = row
        return self

    @classmethod
    def cached(cls, truncation, path=None):
        """Build, or load from a cache file when it matches the truncation."""
        if path is not None:
            try:
                self = cls.load(path)
                if self.truncation >= truncation:
                    return self
            except (OSError, ValueError, KeyError):
                pass
        self = cls(truncation)
        if path is not None:
            self.save(path)
        return self


class _RationalOps:
    zero = Fraction(0)

    @staticmethod
    def is_zero(x):
        return x == 0


_RATIONAL_OPS = _RationalOps()


class _RingOps:
    def __init__(self, ring):
        self.zero = ring.zero
        self.is_zero = ring.is_zero


class P5Element:
    """Element of the truncated quotient, stored in normal form per degree."""

    __slots__ = ("quotient", "ring", "truncation", "comps")

    def __init__(self, quotient, ring, truncation, comps=None):
        self.quotient = quotient
        self.ring = ring
        self.truncation = truncation
        self.comps = comps if comps is not None else {}

    @classmethod
    def zero(cls, quotient, ring, truncation):
        return cls(quotient, ring, truncation)

    @classmethod
    def one(cls, quotient, ring, truncation):
        return cls(quotient, ring, truncation, {0: {(): ring.one}})

    @classmethod
    def generator_combination(cls, quotient, ring, truncation, combo):
        """Degree-1 element from {gen_index: int} (already relation-free)."""
        vec = {(g,): ring.from_int(c) for g, c in combo.items() if c}
        return cls(quotient, ring, truncation, {1: vec} if vec else {})

    def one_like(self):
        return P5Element.one(self.quotient, self.ring, self.truncation)

    def _clean(self):
        self.comps = {
            d: vec for d, vec in self.comps.items()
            if vec and d <= self.truncation
        }
        return self

    def __add__(self, other):
        n = min(self.truncation, other.truncation)
        ring = self.ring
        comps = {d: dict(vec) for d, vec in self.comps.items() if d <= n}
        for d, vec in other.comps.items():
            if d > n:
                continue
            tgt = comps.setdefault(d, {})
            for m, c in vec.items():
                s = tgt.get(m)
                s = c if s is None else s + c
                if ring.is_zero(s):
                    tgt.pop(m, None)
                else:
                    tgt[m] = s
        return P5Element(self.quotient, ring, n, comps)._clean()

    def __neg__(self):
        return P5Element(
            self.quotient, self.ring, self.truncation,
            {d: {m: -c for m, c in vec.items()} for d, vec in self.comps.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)) and not isinstance(self.ring.one, Fraction):
            c = self.ring.from_fraction(Fraction(c))
        if self.ring.is_zero(c):
            return P5Element.zero(self.quotient, self.ring, self.truncation)
        return P5Element(
            self.quotient, self.ring, self.truncation,
            {d: {m: v * c for m, v in vec.items()} for d, vec in self.comps.items()},
        )._clean()

    def __mul__(self, other):
        n = min(self.truncation, other.truncation)
        ring = self.ring
        q = self.quotient
        comps = {}
        for da, veca in self.comps.items():
            for db, vecb in other.comps.items():
                d = da + db
                if d > n:
                    continue
                tgt = comps.setdefault(d, {})
                for ma, ca in veca.items():
                    for mb, cb in vecb.items():
                        c = ca * cb
                        for m, qcoef in q.nf_monomial(ma + mb):
                            s = tgt.get(m)
                            v = c * qcoef
                            s = v if s is None else s + v
                            if ring.is_zero(s):
                                tgt.pop(m, None)
                            else:
                                tgt[m] = s
        return P5Element(q, ring, n, comps)._clean()

    def is_zero(self):
        return not self.comps

    def component(self, d):
        return dict(self.comps.get(d, {}))

    def max_abs(self):
        from .rings import abs_value

        return max(
            (abs_value(c) for vec in self.comps.values() for c in vec.values()),
            default=0.0,
        )


def strand_generator(quotient, ring, truncation, i, j):
    """The class of t_ij as a degree-1 element."""
    return P5Element.generator_combination(
        quotient, ring, truncation, PAIR_EXPANSION[pair(i, j)]
    )


def embed(f, quotient, i, j, k):
    """Image of a two-letter series under e0 -> t_ij, e1 -> t_jk."""
    if f.truncation > quotient.truncation:
        raise ValueError("series truncation %d exceeds algebra truncation %d"
                         % (f.truncation, quotient.truncation))
    im0 = strand_generator(quotient, f.ring, f.truncation, i, j)
    im1 = strand_generator(quotient, f.ring, f.truncation, j, k)
    return f.substitute(im0, im1, one=P5Element.one(quotient, f.ring, f.truncation))


PENTAGON_POSITIONS = ((3, 4, 5), (5, 1, 2), (2, 3, 4), (4, 5, 1), (1, 2, 3))


def pentagon_product(f, quotient):
    acc = None
    for ijk in PENTAGON_POSITIONS:
        g = embed(f, quotient, *ijk)
        acc = g if acc is None else acc * g
    return acc


def pentagon_residual(f, quotient):
    """phi_345 phi_512 phi_234 phi_451 phi_123 - 1, in normal form."""
    if not f.ring.is_zero(f.constant_term() - f.ring.one):
        raise ValueError("pentagon residual requires constant term 1")
    prod = pentagon_product(f, quotient)
    return prod - P5Element.one(quotient, f.ring, f.truncation)


def ring_ops(ring):
    return _RingOps(ring)
