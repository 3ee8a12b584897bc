"""Associator candidates, their axioms, the degreewise pentagon solver, and
the Grothendieck-Teichmueller torsor machinery.

Group elements of the completed free group are represented throughout in
the exponential picture: a GT pair (lambda, f) carries the series
s = f(e^(e0), e^(e1)), so that evaluating f at group-like arguments alpha,
beta amounts to substituting log(alpha), log(beta) into s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import words as W
from .ncseries import NCSeries, bracket, lie_element, max_coeff
from .pentagon import P5Quotient, pentagon_residual, embed, PENTAGON_POSITIONS, P5Element
from .rings import QQ, abs_value


@dataclass
class AssociatorCandidate:
    mu: object
    phi: NCSeries
    truncation: int
    validity: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.phi.ring

    def to_json(self):
        return {
            "mu": self.ring.encode(self.mu),
            "truncation": self.truncation,
            "series": self.phi.to_json(),
            "validity": dict(self.validity),
        }

    @classmethod
    def from_json(cls, ring, obj):
        return cls(
            mu=ring.decode(obj["mu"]),
            phi=NCSeries.from_json(ring, obj["series"]),
            truncation=int(obj["truncation"]),
            validity=dict(obj.get("validity", {})),
        )


@dataclass
class GTElement:
    lam: object
    series: NCSeries  # f(e^(e0), e^(e1)) as a group-like series
    truncation: int

    @property
    def ring(self):
        return self.series.ring

    def quadratic_defect(self):
        """(f(e^e0, e^e1) | e0 e1) - (lambda^2 - 1)/24, zero for GT pairs."""
        ring = self.ring
        target = (self.lam * self.lam - ring.one) * ring.from_fraction(Fraction(1, 24))
        return self.series.coeff((0, 1)) - target

    def evaluate(self, log_image0, log_image1):
        """f(alpha, beta) where log_image0 = log alpha, log_image1 = log beta."""
        return self.series.substitute(log_image0, log_image1)

    def to_json(self):
        return {
            "lambda": self.ring.encode(self.lam),
            "truncation": self.truncation,
            "series": self.series.to_json(),
        }

    @classmethod
    def from_json(cls, ring, obj):
        return cls(
            lam=ring.decode(obj["lambda"]),
            series=NCSeries.from_json(ring, obj["series"]),
            truncation=int(obj["truncation"]),
        )

    @classmethod
    def identity(cls, ring, truncation):
        return cls(ring.one, NCSeries.one(ring, truncation), truncation)


# -- axioms ---------------------------------------------------------------------


def two_cycle_defect(phi: NCSeries) -> float:
    with phi.ring.context():
        prod = phi * phi.swap_letters()
        return max_coeff(prod - NCSeries.one(phi.ring, phi.truncation))


def three_cycle_defect(phi: NCSeries, mu) -> float:
    """e^(mu e0/2) phi(einf, e0) e^(mu einf/2) phi(e1, einf) e^(mu e1/2)
    phi(e0, e1) - 1."""
    ring, n = phi.ring, phi.truncation
    with ring.context():
        return _three_cycle_defect(phi, mu)


def _three_cycle_defect(phi, mu):
    ring, n = phi.ring, phi.truncation
    half = ring.from_fraction(Fraction(1, 2)) * mu
    e0 = NCSeries.letter(ring, n, 0)
    e1 = NCSeries.letter(ring, n, 1)
    einf = -(e0 + e1)
    prod = (
        e0.scale(half).exp()
        * phi.substitute_einf_pair(("einf", "e0"))
        * einf.scale(half).exp()
        * phi.substitute_einf_pair(("e1", "einf"))
        * e1.scale(half).exp()
        * phi
    )
    return max_coeff(prod - NCSeries.one(ring, n))


def check_associator(cand: AssociatorCandidate, quotient: P5Quotient = None,
                     tol: float = 0.0, pentagon_degree: int = None) -> dict:
    """Per-axiom report.  The derived 2- and 3-cycle relations are verified,
    not assumed.  For inexact rings a tolerance applies; for QQ every check
    is exact."""
    phi, mu, ring = cand.phi, cand.mu, cand.ring
    with ring.context():
        return _check_associator(cand, quotient, tol, pentagon_degree)


def _check_associator(cand, quotient, tol, pentagon_degree):
    phi, mu, ring = cand.phi, cand.mu, cand.ring
    report = {}
    report["mu_invertible"] = not ring.is_zero(mu)
    quad = phi.coeff((0, 1)) - mu * mu * ring.from_fraction(Fraction(1, 24))
    report["quadratic"] = abs_value(quad) <= tol
    report["commutator_grouplike"] = phi.is_commutator_grouplike(tol)
    report["even"] = phi.is_even(tol)
    if quotient is not None:
        deg = min(cand.truncation, quotient.truncation)
        if pentagon_degree is not None:
            deg = min(deg, pentagon_degree)
        res = pentagon_residual(phi.truncate(deg), quotient)
        report["pentagon"] = res.max_abs() <= tol
        report["pentagon_degree"] = deg
    report["two_cycle"] = two_cycle_defect(phi) <= tol
    report["three_cycle"] = three_cycle_defect(phi, mu) <= tol
    cand.validity = report
    return report


# -- exact linear algebra over QQ (small systems) ----------------------------------


class InconsistentSystem(ArithmeticError):
    pass


def solve_fraction_system(columns, rhs):
    """Solve sum_j x_j col_j = rhs over Fraction; the columns and rhs are
    sparse dicts key -> Fraction.  Returns (particular, nullspace) where
    particular is a list of Fractions (free variables set to 0) and
    nullspace is a list of basis vectors."""
    support = set(rhs)
    for col in columns:
        support.update(col)
    support = sorted(support)
    ncols = len(columns)
    rows = []
    for key in support:
        row = [col.get(key, Fraction(0)) for col in columns]
        row.append(rhs.get(key, Fraction(0)))
        if any(row):
            rows.append(row)

    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            raise InconsistentSystem("no solution")

    particular = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        particular[c] = rows[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    nullspace = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -rows[i][fc]
        nullspace.append(vec)
    return particular, nullspace


# -- the degreewise solver ------------------------------------------------------------


@dataclass
class SolveReport:
    tiebreak: str
    even: bool
    nullspace_dims: dict
    degree_notes: dict


def _embedding_column(beta_coords, degree, quotient):
    """Degree-d component of the sum over the five pentagon embeddings of a
    Lie basis element; this is the column of the linearised system."""
    elt = lie_element(QQ, degree, beta_coords)
    col = {}
    for ijk in PENTAGON_POSITIONS:
        img = embed(elt, quotient, *ijk)
        for m, c in img.component(degree).items():
            s = col.get(m, Fraction(0)) + c
            if s:
                col[m] = s
            else:
                col.pop(m, None)
    return col


def solve_unitary(n: int, quotient: P5Quotient, tiebreak: str = "zero",
                  even: bool = True):
    """Construct a unitary (mu = 1) associator up to degree n by solving the
    pentagon equation degree by degree.

    Unknowns at each degree are Lyndon-basis coordinates of the logarithm
    (so the output is commutator group-like by construction).  With
    even=True the odd degrees are forced to zero and the vanishing of the
    corresponding residual components is verified rather than assumed.
    Free parameters are resolved by the tiebreak policy: "zero" takes all
    zero, "lex" sets the lexicographically first free parameter to 1.
    """
    if n < 2:
        raise ValueError("need degree >= 2")
    if quotient.truncation < n:
        raise ValueError("pentagon algebra truncation too small")
    if tiebreak not in ("zero", "lex"):
        raise ValueError("unknown tiebreak policy %r" % tiebreak)

    coords = {(0, 1): Fraction(1, 24)}  # quadratic term: (phi|e0e1) = 1/24
    nullspace_dims = {}
    notes = {}

    for d in range(2, n + 1):
        phi_d = lie_element(QQ, d, coords).exp()
        res = pentagon_residual(phi_d, quotient)
        b = res.component(d)
        if d == 2 or (even and d % 2 == 1):
            # no unknowns at this degree: the residual must vanish by itself
            if b:
                raise InconsistentSystem(
                    "pentagon residual does not vanish at degree %d with no "
                    "free coefficients; this falsifies existence at truncation" % d)
            notes[d] = "forced zero" if d != 2 else "quadratic term fixed"
            continue
        basis = W.lie_basis(d)
        columns = [_embedding_column({lw: Fraction(1)}, d, quotient) for lw, _ in basis]
        rhs = {m: -c for m, c in b.items()}
        particular, nullspace = solve_fraction_system(columns, rhs)
        nullspace_dims[d] = len(nullspace)
        pick = list(particular)
        if tiebreak == "lex" and nullspace:
            pick = [x + y for x, y in zip(pick, nullspace[0])]
        for (lw, _), c in zip(basis, pick):
            if c:
                coords[lw] = c
        notes[d] = "solved (%d unknowns, nullspace %d)" % (len(basis), len(nullspace))

    phi = lie_element(QQ, n, coords).exp()
    cand = AssociatorCandidate(mu=QQ.one, phi=phi, truncation=n)
    report = SolveReport(tiebreak=tiebreak, even=even,
                         nullspace_dims=nullspace_dims, degree_notes=notes)
    return cand, report


def solve_even_unitary(n: int, quotient: P5Quotient, tiebreak: str = "zero"):
    return solve_unitary(n, quotient, tiebreak=tiebreak, even=True)


# -- torsor action ------------------------------------------------------------------------


def gt_act(gt: GTElement, cand: AssociatorCandidate, self_check: bool = True):
    """(lambda, f) acting on (mu, phi): (lambda mu,
    phi * f(e^(mu e0), phi^-1 e^(mu e1) phi)).

    The equivalent left-hand form f(phi e^(mu e0) phi^-1, e^(mu e1)) * phi
    is recomputed and compared when self_check is set; a mismatch would
    signal an implementation bug, not bad input.
    """
    phi, mu, ring = cand.phi, cand.mu, cand.ring
    n = min(cand.truncation, gt.truncation)
    phi = phi.truncate(n)
    s = gt.series.truncate(n)
    e0 = NCSeries.letter(ring, n, 0)
    e1 = NCSeries.letter(ring, n, 1)
    phi_inv = phi.inverse()
    right = phi * s.substitute(e0.scale(mu), (phi_inv * e1 * phi).scale(mu))
    if self_check:
        left = s.substitute((phi * e0 * phi_inv).scale(mu), e1.scale(mu)) * phi
        if max_coeff(left - right) > 0 and left != right:
            raise AssertionError("the two torsor-action forms disagree")
    return AssociatorCandidate(mu=gt.lam * mu, phi=right, truncation=n)


def gt_compose(g1: GTElement, g2: GTElement) -> GTElement:
    """Group law (lambda1, f1) * (lambda2, f2) =
    (lambda2 lambda1, f1(f2 x^(lambda2) f2^-1, y^(lambda2)) f2)."""
    ring = g1.ring
    n = min(g1.truncation, g2.truncation)
    s1 = g1.series.truncate(n)
    s2 = g2.series.truncate(n)
    e0 = NCSeries.letter(ring, n, 0)
    e1 = NCSeries.letter(ring, n, 1)
    arg0 = (s2 * e0 * s2.inverse()).scale(g2.lam)
    arg1 = e1.scale(g2.lam)
    series = s1.substitute(arg0, arg1) * s2
    return GTElement(lam=g1.lam * g2.lam, series=series, truncation=n)


def gt_from_pair(c1: AssociatorCandidate, c2: AssociatorCandidate) -> GTElement:
    """The unique lambda = 1 element f with gt_act((1, f), c1) = c2 for two
    associators sharing the same mu; solved degree by degree (the
    substitution x0 -> e^(mu e0), x1 -> phi^-1 e^(mu e1) phi is triangular
    in the degree)."""
    ring = c1.ring
    if abs_value(c1.mu - c2.mu) != 0.0:
        raise ValueError("gt_from_pair needs equal mu")
    n = min(c1.truncation, c2.truncation)
    mu = c1.mu
    mu_inv = ring.inv(mu)
    phi1 = c1.phi.truncate(n)
    target = phi1.inverse() * c2.phi.truncate(n)
    e0 = NCSeries.letter(ring, n, 0)
    e1 = NCSeries.letter(ring, n, 1)
    arg0 = e0.scale(mu)
    arg1 = (phi1.inverse() * e1 * phi1).scale(mu)

    terms = {(): ring.one}
    for d in range(1, n + 1):
        current = NCSeries(ring, n, dict(terms))
        image = current.substitute(arg0, arg1)
        diff = target - image
        scale = mu_inv
        for _ in range(d - 1):
            scale = scale * mu_inv
        for w in W.words_of_weight(d):
            c = diff.coeff(w)
            if not ring.is_zero(c):
                terms[w] = c * scale
    series = NCSeries(ring, n, terms)
    if max_coeff(series.substitute(arg0, arg1) - target) != 0.0 and \
            series.substitute(arg0, arg1) != target:
        raise InconsistentSystem("substitution inversion failed; inputs are not "
                                 "a torsor pair at this truncation")
    return GTElement(lam=ring.one, series=series, truncation=n)


# -- fake comparison map -------------------------------------------------------------------


def comp_fake(cand: AssociatorCandidate, element):
    """Image of a free-group element under x0 -> exp(mu e0),
    x1 -> phi^-1 exp(mu e1) phi.

    element is either a list of (generator, integer exponent) pairs with
    generator in {"x0", "x1"} or a group-like NCSeries in the exponential
    picture.
    """
    phi, mu, ring = cand.phi, cand.mu, cand.ring
    n = cand.truncation
    e0 = NCSeries.letter(ring, n, 0)
    e1 = NCSeries.letter(ring, n, 1)
    log0 = e0.scale(mu)
    log1 = (phi.inverse() * e1 * phi).scale(mu)
    if isinstance(element, NCSeries):
        return element.substitute(log0, log1)
    acc = NCSeries.one(ring, n)
    for gen, exp in element:
        base = log0 if gen == "x0" else log1
        acc = acc * base.scale(ring.from_int(int(exp))).exp()
    return acc


def comp_fake_xinf_defect(cand: AssociatorCandidate) -> float:
    """Check of the closed form for the image of x_inf = (x0 x1)^-1 at
    mu = 1: Ad(phi(e0, einf) e^(-e0/2))^-1 (e^(einf)) against the direct
    image of x1^-1 x0^-1."""
    ring, n = cand.ring, cand.truncation
    direct = comp_fake(cand, [("x1", -1), ("x0", -1)])
    e0 = NCSeries.letter(ring, n, 0)
    e1 = NCSeries.letter(ring, n, 1)
    einf = -(e0 + e1)
    u = cand.phi.substitute_einf_pair(("e0", "einf")) * e0.scale(Fraction(-1, 2)).exp()
    closed = u.inverse() * einf.exp() * u
    return max_coeff(direct - closed)
