from fractions import Fraction as F

import mpmath
import pytest
from mpmath import mp

from associators import words as W
from associators.hypcx import (
    MPLEngine,
    euler_transformation_defect,
    fundamental_solution,
    gamma_log_defect,
    gauss_summation_defect,
    hg11_defect,
    hyp2f1,
    kummer_row_defects,
    kz_residual_defect,
    kz_series,
    mzv,
    mzv_direct,
    regularized_table,
    shuffle_words,
)
from associators.ncseries import series_distance


def test_mzv_pi_oracles():
    with mp.workdps(50):
        assert abs(mzv((2,), 40) - mp.pi ** 2 / 6) < 1e-38
        assert abs(mzv((4,), 40) - mp.pi ** 4 / 90) < 1e-38


def test_mzv_euler_identity():
    with mp.workdps(50):
        assert abs(mzv((1, 2), 40) - mzv((3,), 40)) < 1e-38


def test_mzv_rejects_non_admissible():
    with pytest.raises(ValueError):
        mzv((2, 1), 30)
    with pytest.raises(ValueError):
        mzv((0, 2), 30)


def test_mzv_direct_sum_cross_check():
    with mp.workdps(30):
        assert abs(mzv_direct((3,), 4000) - mzv((3,), 30)) < 1e-6
        assert abs(mzv_direct((2, 3), 600) - mzv((2, 3), 30)) < 1e-5
        # zeta(1,2) converges like log(n)/n, so only a loose check
        assert abs(mzv_direct((1, 2), 3000) - mzv((1, 2), 30)) < 1e-2


def test_kz_series_quadratic_and_linear_terms():
    cand = kz_series(4, 40)
    with mp.workdps(50):
        assert abs(cand.phi.coeff((0,)) ) == 0
        assert abs(cand.phi.coeff((1,)) ) == 0
        target = cand.mu ** 2 / 24
        assert abs(cand.phi.coeff((0, 1)) - target) < 1e-38
        assert abs(target + mp.pi ** 2 / 6) < 1e-45


def test_kz_series_two_cycle_and_grouplike():
    from associators.associator import two_cycle_defect

    cand = kz_series(5, 40)
    assert two_cycle_defect(cand.phi) < 1e-35
    assert cand.phi.is_grouplike(tol=1e-35)
    assert not cand.phi.is_even(tol=1e-35)


def test_kz_series_pentagon_numeric():
    from associators.associator import check_associator
    from associators.pentagon import P5Quotient

    q4 = P5Quotient(4)
    cand = kz_series(4, 40)
    rep = check_associator(cand, q4, tol=1e-30, pentagon_degree=4)
    assert rep["pentagon"] and rep["quadratic"] and rep["two_cycle"] and rep["three_cycle"]


def test_kz_series_independent_of_base_point():
    base = kz_series(4, 35)
    for z in (F(3, 10), F(3, 4)):
        other = kz_series(4, 35, z=z)
        assert series_distance(other.phi.truncate(4), base.phi.truncate(4)) < 1e-30


def test_fundamental_solution_normalisation():
    # the analytic factor has no e0 coefficient: (G|e0) is exactly log z
    g, ring = fundamental_solution(F(1, 2), 3, 30)
    with mp.workdps(40):
        assert abs(g.coeff((0,)) - mp.log(mp.mpf(1) / 2)) < 1e-28
        # coefficient of e1 is log(1-z)
        assert abs(g.coeff((1,)) - mp.log(mp.mpf(1) / 2)) < 1e-28


def test_mpl_engine_log_series():
    eng = MPLEngine(30)
    cs = eng.coeff_series((1,))
    with mp.workdps(40):
        for n in (1, 2, 5):
            assert abs(cs[n] + mp.mpf(1) / n) < 1e-35


def test_kz_residual_decreases_quadratically():
    d1 = kz_residual_defect(F(2, 5), 4, 30, F(1, 10 ** 6))
    d2 = kz_residual_defect(F(2, 5), 4, 30, F(1, 10 ** 7))
    assert d1 < 1e-9
    assert d2 < d1 / 10


def test_shuffle_words():
    sh = shuffle_words((1,), (0, 1))
    assert sh == {(1, 0, 1): 1, (0, 1, 1): 2}
    assert sum(shuffle_words((0, 1), (0, 1)).values()) == 6


def test_regularization_shapes_on_kz_coefficients():
    cand = kz_series(4, 40)
    phi = cand.phi
    with mp.workdps(50):
        # shuffle peeling: I(e1 e0) = -I(e0 e1), I(e1 e0 e1) = -2 I(e0 e1 e1)
        assert abs(phi.coeff((1, 0)) + phi.coeff((0, 1))) < 1e-38
        assert abs(phi.coeff((1, 0, 1)) + 2 * phi.coeff((0, 1, 1))) < 1e-38


def test_regularized_table_matches_kz_coefficients():
    # base values from slow direct sums only (independent of the product
    # route), regularized by shuffle peeling, compared on every word
    cand = kz_series(4, 40)
    base = {}
    for n in range(2, 5):
        for w in W.words_of_weight(n):
            if w[0] == W.E0 and w[-1] == W.E1:
                idx = W.index_from_word(w)
                val = mzv_direct(idx, 800)
                base[w] = float(val) * (-1) ** len(idx)
    table = regularized_table(base, 4)
    with mp.workdps(40):
        for n in range(5):
            for w in W.words_of_weight(n):
                assert abs(table[w] - cand.phi.coeff(w)) < 2e-3, (w,)


def test_hyp2f1_values():
    with mp.workdps(50):
        assert hyp2f1(F(3, 10), F(7, 10), F(6, 5), 0, 40) == 1
        v = hyp2f1(1, 1, 2, F(1, 2), 40)
        expect = -mp.log(mp.mpf(1) / 2) * 2
        assert abs(v - expect) < 1e-38
    with pytest.raises(ValueError):
        hyp2f1(F(1, 10), F(1, 5), -1, F(1, 2), 30)
    with pytest.raises(ValueError):
        hyp2f1(F(1, 10), F(1, 5), F(11, 10), 2, 30)
    with pytest.raises(ValueError):
        # z = 1 needs Re(c - a - b) > 0
        hyp2f1(2, 3, 4, 1, 30)


def test_gauss_summation():
    assert gauss_summation_defect(F(1, 10), F(1, 5), 3, 50) < 1e-20


def test_euler_transformation():
    assert euler_transformation_defect(F(1, 10), F(1, 5), F(11, 10), F(3, 10), 50) < 1e-30


def test_hg11():
    assert hg11_defect(F(1, 100), F(1, 50), F(101, 100), F(1, 5), 8, 50) < 1e-10


def test_kummer_rows():
    rows = kummer_row_defects(F(1, 10), F(1, 5), F(23, 20), F(3, 10), 8, 40)
    # weight-8 truncation limits these to the size of the weight-9 tail
    assert all(v < 1e-5 for v in rows.values()), rows


def test_gamma_log_matches_zeta_backend():
    assert gamma_log_defect(6, 40) < 1e-30
