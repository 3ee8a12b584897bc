"""The complex-analytic side: multiple polylogarithm coefficients of the
fundamental solution, the generating series of multiple zeta values, the
classical hypergeometric series, and the numeric identity suite.

The fundamental solution of d/dz G = (e0/z + e1/(z-1)) G with
G z^(-e0) -> 1 as z -> 0+ is carried as G = h(z) exp(log z * e0) where every
coefficient of h is an ordinary power series in z with rapidly computable
coefficients.  Evaluating the pair of solutions at z = 1/2 and letter-swap
yields the multiple zeta value generating series without any limit process:
the ratio G_10(z)^(-1) G_01(z) is constant in z, and at 1/2 both factors
converge geometrically (the half-point convolution scheme).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

from . import words as W
from .associator import AssociatorCandidate
from .mat2 import Mat2
from .ncseries import NCSeries, max_coeff
from .rings import complex_field


def _to_mpf(z):
    """Exact conversion of Fraction/int inputs at working precision."""
    if isinstance(z, Fraction):
        return mp.mpf(z.numerator) / z.denominator
    return mp.mpf(z)


def _to_mpc(x):
    """Fraction-aware conversion to mpc at working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpc(x.numerator) / x.denominator
    return mpmath.mpc(x)


# -- multiple polylogarithm coefficient engine ------------------------------------


class MPLEngine:
    """Power-series coefficients (in z) of the analytic factor h of the
    fundamental solution, per word, at a fixed working precision."""

    def __init__(self, digits=50, nterms=None):
        self.digits = digits
        self.nterms = nterms if nterms is not None else int(3.33 * (digits + 12)) + 20
        self._memo = {}

    def coeff_series(self, word):
        """Coefficients c_0..c_T of the z-expansion of the h-coefficient of
        the given word."""
        got = self._memo.get(word)
        if got is not None:
            return got
        T = self.nterms
        with mp.workdps(self.digits + 10):
            if word == ():
                cs = [mp.mpf(1)] + [mp.mpf(0)] * T
            elif word == (0,):
                cs = [mp.mpf(0)] * (T + 1)
            else:
                a = [mp.mpf(0)] * (T + 1)  # coefficients of the derivative
                if word[0] == W.E0 and len(word) > 1:
                    cu = self.coeff_series(word[1:])
                    for m in range(T):
                        a[m] += cu[m + 1]
                if word[0] == W.E1:
                    cu = self.coeff_series(word[1:])
                    run = mp.mpf(0)
                    for m in range(T + 1):
                        run += cu[m]
                        a[m] -= run
                if word[-1] == W.E0 and len(word) > 1:
                    cv = self.coeff_series(word[:-1])
                    for m in range(T):
                        a[m] -= cv[m + 1]
                cs = [mp.mpf(0)] * (T + 1)
                for n in range(1, T + 1):
                    cs[n] = a[n - 1] / n
        self._memo[word] = cs
        return cs

    def h_coefficient(self, word, z):
        """Value of the h-coefficient of the word at a real z in (0, 1)."""
        cs = self.coeff_series(word)
        with mp.workdps(self.digits + 10):
            zz = _to_mpf(z)
            acc = mp.mpf(0)
            for c in reversed(cs):
                acc = acc * zz + c
            return acc


def fundamental_solution(z, weight, digits=50, engine: MPLEngine = None):
    """G_01 at a real point z in (0, 1), as a group-like series over the
    complex coefficient ring, together with the ring."""
    if not (0 < z < 1):
        raise ValueError("z must lie in (0, 1)")
    ring = complex_field(digits)
    if engine is not None:
        eng = engine
    else:
        # geometric tail: enough terms for the worse of z and 1 - z
        import math

        r = float(max(z, Fraction(1, 2)))
        nterms = int((digits + 12) * math.log(10) / -math.log(r)) + 20
        eng = MPLEngine(digits, nterms)
    terms = {}
    with mp.workdps(digits + 10):
        for n in range(weight + 1):
            for w in W.words_of_weight(n):
                val = eng.h_coefficient(w, z)
                if val != 0:
                    terms[w] = mpmath.mpc(val)
        h = NCSeries(ring, weight, terms)
        e0 = NCSeries.letter(ring, weight, 0)
        zfac = e0.scale(mpmath.mpc(mp.log(_to_mpf(z)))).exp()
        return h * zfac, ring


def kz_residual_defect(z, weight, digits, step):
    """Finite-difference defect of the differential equation at a point; the
    defect decreases quadratically in the step until precision is hit."""
    eng = MPLEngine(digits)
    gm, ring = fundamental_solution(z - step, weight, digits, eng)
    gp, _r = fundamental_solution(z + step, weight, digits, eng)
    g, _r = fundamental_solution(z, weight, digits, eng)
    with mp.workdps(digits + 10):
        inv2h = mpmath.mpc(1) / (2 * _to_mpf(step))
        deriv = (gp - gm).scale(inv2h)
        e0 = NCSeries.letter(ring, weight, 0)
        e1 = NCSeries.letter(ring, weight, 1)
        zz = _to_mpf(z)
        op = e0.scale(mpmath.mpc(1 / zz)) + e1.scale(mpmath.mpc(1 / (zz - 1)))
        return max_coeff(deriv - op * g)


# -- the multiple zeta value generating series --------------------------------------


_PHI_CACHE = {}


def kz_series(weight, digits=50, z=Fraction(1, 2)):
    """The MZV generating series with mu = 2 pi i, computed as
    G_10(z)^(-1) G_01(z); the value is independent of z, which the tests
    exercise.  Returns an AssociatorCandidate over the complex ring.

    z is taken as a Fraction so that the two solutions are evaluated at
    exactly complementary points."""
    z = Fraction(z)
    key = (weight, digits, z)
    got = _PHI_CACHE.get(key)
    if got is not None:
        return got
    g01, ring = fundamental_solution(z, weight, digits)
    g10 = fundamental_solution(1 - z, weight, digits)[0].swap_letters()
    with mp.workdps(digits + 10):
        phi = g10.inverse() * g01
        mu = mpmath.mpc(0, 2) * mp.pi
    cand = AssociatorCandidate(mu=mu, phi=phi, truncation=weight)
    _PHI_CACHE[key] = cand
    return cand


def mzv(index, digits=40, weight_cap=10):
    """Multiple zeta value for an admissible index (k_1, ..., k_m), the sum
    over 0 < n_1 < ... < n_m of prod n_i^(-k_i)."""
    index = tuple(int(k) for k in index)
    if not W.is_admissible(index):
        raise ValueError("index %r is not admissible (last entry must exceed 1)" % (index,))
    wt = sum(index)
    if wt > weight_cap:
        raise ValueError("weight %d beyond cap %d" % (wt, weight_cap))
    cand = kz_series(wt, digits)
    word = W.word_from_index(index)
    with mp.workdps(digits + 10):
        c = cand.phi.coeff(word)
        return -c if len(index) % 2 else c


def mzv_direct(index, nterms=3000):
    """Slow direct nested summation, for low-precision cross-checks."""
    index = tuple(int(k) for k in index)
    if not W.is_admissible(index):
        raise ValueError("non-admissible index")
    with mp.workdps(30):
        def rec(pos, start):
            if pos == len(index):
                return mp.mpf(1)
            total = mp.mpf(0)
            k = index[pos]
            for n in range(start, nterms + 1):
                total += rec(pos + 1, n + 1) / mp.mpf(n) ** k
            return total
        # iterative from the inside out to avoid exponential recursion
        depth = len(index)
        tails = [mp.mpf(0)] * (nterms + 2)
        current = [mp.mpf(1)] * (nterms + 2)
        for pos in range(depth - 1, -1, -1):
            k = index[pos]
            newc = [mp.mpf(0)] * (nterms + 2)
            acc = mp.mpf(0)
            for n in range(nterms, 0, -1):
                acc += current[n + 1] / mp.mpf(n) ** k
                newc[n] = acc
            current = newc
        return current[1]


# -- shuffle regularization oracle ----------------------------------------------------


def shuffle_words(u, v):
    """Shuffle product of two words as a word -> multiplicity dict."""
    out = {}

    def rec(x, y, prefix):
        if not x and not y:
            out[prefix] = out.get(prefix, 0) + 1
            return
        if x:
            rec(x[1:], y, prefix + (x[0],))
        if y:
            rec(x, y[1:], prefix + (y[0],))

    rec(tuple(u), tuple(v), ())
    return out


def regularized_table(base_values, max_weight):
    """Extend iterated-integral values from convergent words (starting with
    e0 and ending with e1) to all words, using vanishing single-letter values
    and the shuffle relations: leading e1 runs and trailing e0 runs are
    peeled off through shuffle identities."""
    table = {(): 1}
    table.update(base_values)
    table[(0,)] = 0
    table[(1,)] = 0

    def value(w):
        if w in table:
            return table[w]
        # peel leading e1 block
        m = 0
        while m < len(w) and w[m] == W.E1:
            m += 1
        if 0 < m < len(w):
            rest = w[m:]
            e1s = (W.E1,) * m
            sh = shuffle_words(e1s, rest)
            # the target word appears with multiplicity m! in e1^sh m x rest
            fact = 1
            for i in range(2, m + 1):
                fact *= i
            acc = 0
            for word, mult in sh.items():
                if word == w:
                    continue
                acc += mult * value(word)
            val = -acc / fact  # value(e1)^m = 0
            table[w] = val
            return val
        if m == len(w):
            table[w] = 0  # pure e1 power
            return 0
        # now w starts with e0; peel trailing e0 block
        m = 0
        while m < len(w) and w[-1 - m] == W.E0:
            m += 1
        if 0 < m < len(w):
            head = w[:-m]
            e0s = (W.E0,) * m
            sh = shuffle_words(head, e0s)
            fact = 1
            for i in range(2, m + 1):
                fact *= i
            acc = 0
            for word, mult in sh.items():
                if word == w:
                    continue
                acc += mult * value(word)
            val = -acc / fact
            table[w] = val
            return val
        if m == len(w):
            table[w] = 0
            return 0
        raise AssertionError("word %r should have been convergent" % (w,))

    for n in range(max_weight + 1):
        for w in W.words_of_weight(n):
            value(w)
    return table


# -- the classical hypergeometric series ------------------------------------------------


def hyp2f1(a, b, c, z, digits=50):
    """Partial summation of the Gauss series for |z| < 1, and
    Euler-Maclaurin tail summation at z = 1 (requires Re(c-a-b) > 0).

    A non-positive-integer c is rejected.  At geometric z the tail is
    bounded by a ratio estimate; at z = 1 the tail handling is the
    heuristic-but-validated Euler-Maclaurin route.
    """
    with mp.workdps(digits + 15):
        a, b, c, z = _to_mpc(a), _to_mpc(b), _to_mpc(c), _to_mpc(z)
        if mpmath.isint(c.real) and c.imag == 0 and c.real <= 0:
            raise ValueError("c must not be a non-positive integer")
        if mpmath.fabs(z) < 1:
            eps = mp.mpf(10) ** (-(digits + 10))
            term = mpmath.mpc(1)
            total = mpmath.mpc(1)
            n = 0
            while True:
                term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
                total += term
                n += 1
                if mpmath.fabs(term) < eps and n > 8:
                    break
                if n > 100000:
                    raise ArithmeticError("series did not reach tolerance")
            return total
        if z == 1:
            if (c - a - b).real <= 0:
                raise ValueError("z = 1 requires Re(c - a - b) > 0")
            with mp.workdps(digits + 30):
                n0 = 1500
                term = mpmath.mpc(1)
                total = mpmath.mpc(1)
                for n in range(n0):
                    term = term * (a + n) * (b + n) / ((c + n) * (n + 1))
                    total += term
                pref = mpmath.gamma(c) / (mpmath.gamma(a) * mpmath.gamma(b))

                def tail_term(x):
                    return pref * mpmath.gamma(a + x) * mpmath.gamma(b + x) / (
                        mpmath.gamma(c + x) * mpmath.gamma(1 + x))

                # Euler-Maclaurin with three correction terms; the remainder
                # scales like n0^(Re(a+b-c)-6), far below the target here
                x0 = mpmath.mpf(n0 + 1)
                tail = mpmath.quad(tail_term, [x0, mp.inf])
                tail += tail_term(x0) / 2
                tail -= mpmath.diff(tail_term, x0, 1) / 12
                tail += mpmath.diff(tail_term, x0, 3) / 720
                tail -= mpmath.diff(tail_term, x0, 5) / 30240
                return total + tail
        raise ValueError("|z| must be < 1, or z = 1")


def gauss_summation_defect(a, b, c, digits=50):
    """Distance between the series value at z = 1 and the classical gamma
    quotient (the two routes are independent: partial sums plus
    Euler-Maclaurin against the gamma function)."""
    with mp.workdps(digits + 15):
        a, b, c = _to_mpc(a), _to_mpc(b), _to_mpc(c)
        lhs = hyp2f1(a, b, c, 1, digits)
        rhs = mpmath.gamma(c) * mpmath.gamma(c - a - b) / (
            mpmath.gamma(c - a) * mpmath.gamma(c - b))
        return float(mpmath.fabs(lhs - rhs))


def euler_transformation_defect(a, b, c, z, digits=50):
    with mp.workdps(digits + 15):
        a, b, c, z = _to_mpc(a), _to_mpc(b), _to_mpc(c), _to_mpc(z)
        lhs = hyp2f1(a, b, c, z, digits)
        rhs = mpmath.power(1 - z, c - a - b) * hyp2f1(c - a, c - b, c, z, digits)
        return float(mpmath.fabs(lhs - rhs))


# -- the numeric solution-matrix checks -----------------------------------------------------


def numeric_xy(a, b, c):
    """X0, Y0 over mpc for concrete parameter values: u = 1 - c,
    v = a + b + 1 - c."""
    a, b, c = _to_mpc(a), _to_mpc(b), _to_mpc(c)
    u = 1 - c
    v = a + b + 1 - c
    zero = mpmath.mpc(0)
    x0 = Mat2(zero, b, zero, u)
    y0 = Mat2(zero, zero, a, v)
    return x0, y0


def solution_matrix_at(a, b, c, z, weight, digits=50, star="01", engine=None):
    """Numeric evaluation of the fundamental solution at (X0, -Y0), column
    mixed; star selects the 01 or 10 solution."""
    with mp.workdps(digits + 10):
        x0, y0 = numeric_xy(a, b, c)
        one = Mat2.identity(mpmath.mpc(1), mpmath.mpc(0))
        if star == "01":
            g, _ = fundamental_solution(z, weight, digits, engine)
        elif star == "10":
            g = fundamental_solution(1 - z, weight, digits, engine)[0].swap_letters()
        else:
            raise ValueError("star must be 01 or 10 for the numeric row checks")
        gm = g.substitute(x0, -y0, one=one)
        a_, b_, c_ = _to_mpc(a), _to_mpc(b), _to_mpc(c)
        p_ = 1 - c_
        q_ = a_ + b_ + p_
        if star == "01":
            k = Mat2(mpmath.mpc(1), mpmath.mpc(1), mpmath.mpc(0), p_ / b_)
        else:
            k = Mat2(mpmath.mpc(1), mpmath.mpc(0), -a_ / q_, (q_ - 1) / b_)
        return gm * k


def hg11_defect(a, b, c, z, weight, digits=50):
    """[G_01(X0, -Y0)(z)]_11 against the hypergeometric series."""
    with mp.workdps(digits + 10):
        x0, y0 = numeric_xy(a, b, c)
        one = Mat2.identity(mpmath.mpc(1), mpmath.mpc(0))
        g, _ = fundamental_solution(z, weight, digits)
        gm = g.substitute(x0, -y0, one=one)
        return float(mpmath.fabs(gm[0, 0] - hyp2f1(a, b, c, z, digits)))


def kummer_row_defects(a, b, c, z, weight, digits=50):
    """First-row identities of the 01 and 10 solution matrices against
    hypergeometric values (four scalar checks)."""
    with mp.workdps(digits + 10):
        eng = MPLEngine(digits)
        v01 = solution_matrix_at(a, b, c, z, weight, digits, "01", eng)
        v10 = solution_matrix_at(a, b, c, z, weight, digits, "10", eng)
        a_, b_, c_, z_ = _to_mpc(a), _to_mpc(b), _to_mpc(c), _to_mpc(z)
        out = {}
        out["01_left"] = float(mpmath.fabs(v01[0, 0] - hyp2f1(a, b, c, z, digits)))
        rhs = mpmath.power(z_, 1 - c_) * hyp2f1(b_ + 1 - c_, a_ + 1 - c_, 2 - c_, z, digits)
        out["01_right"] = float(mpmath.fabs(v01[0, 1] - rhs))
        out["10_left"] = float(mpmath.fabs(
            v10[0, 0] - hyp2f1(a_, b_, a_ + b_ + 1 - c_, 1 - z_, digits)))
        rhs = mpmath.power(1 - z_, c_ - a_ - b_) * hyp2f1(
            c_ - a_, c_ - b_, c_ - a_ - b_ + 1, 1 - z_, digits)
        out["10_right"] = float(mpmath.fabs(v10[0, 1] - rhs))
        return out


def gamma_log_defect(weight, digits=50):
    """Log-coefficients of the gamma series of the MZV generating series
    against zeta values from an independent backend."""
    from .gammafn import gamma_of_associator

    cand = kz_series(weight, digits)
    g = gamma_of_associator(cand)
    with mp.workdps(digits + 10):
        worst = 0.0
        for n in range(2, weight + 1):
            expect = mpmath.zeta(n) * mpmath.mpc(-1) ** n / n
            worst = max(worst, float(mpmath.fabs(g.log_coeffs[n] - expect)))
        # the t^1 coefficient vanishes (no single-letter terms)
        worst = max(worst, float(mpmath.fabs(g.log_coeffs[1])))
        return worst
