import math
from dataclasses import replace

import numpy as np
import pytest
from scipy import integrate as sci_integrate
from scipy.special import beta as scipy_beta

from exbeta.errors import DomainError, NonConvergence
from exbeta.extbeta import (ExtBetaParams, ext_beta, ext_beta_recurrence_rhs,
                            ext_beta_rep, ext_beta_sum_one_minus,
                            ext_beta_sum_shift, incomplete_lower,
                            incomplete_upper)
from exbeta.kernel import KernelOrder
from exbeta.quadrature import QuadConfig

# 400-bit partial sum of sum_l (0.5)_l/(l! (2+l)) over l < 60 (the
# classical one-minus series for xi1=2, xi2=0.5; the full series converges
# to B(2, 1/2) = 4/3 only like l^(-1.5), so the partial sum is the oracle)
ONE_MINUS_CLASSICAL_60 = 1.1887577468673088252


def P(xi1, xi2, p, q, eta):
    return ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta))


def test_classical_beta_reduction():
    v = ext_beta(P(2.0, 3.0, 0.0, 0.0, 0.5))
    assert v == pytest.approx(1.0 / 12.0, rel=1e-11)
    for eta in (-0.5, 0.0, 0.5, 2.0):
        for xi1 in (0.6, 1.0, 2.5, 4.0):
            for xi2 in (0.7, 1.8, 3.2):
                ref = float(scipy_beta(xi1, xi2))
                assert ext_beta(P(xi1, xi2, 0.0, 0.0, eta)) == pytest.approx(
                    ref, rel=1e-10), (xi1, xi2, eta)


def test_choi_reduction_independent_quadrature():
    # at eta = -1/2 the kernels become exponentials; scipy.quad of the
    # explicit weight is a fully independent route
    rng = np.random.default_rng(3)
    for _ in range(6):
        xi1, xi2 = rng.uniform(0.8, 3.0, 2)
        p, q = rng.uniform(0.05, 1.2, 2)
        ref, err = sci_integrate.quad(
            lambda y: y ** (xi1 - 1) * (1 - y) ** (xi2 - 1)
            * math.exp(-p / y - q / (1 - y)), 0.0, 1.0)
        v = ext_beta(P(xi1, xi2, p, q, -0.5))
        assert v == pytest.approx(ref, rel=max(1e-9, 2 * err / abs(ref)))


def test_chaudhry_reduction_q_equals_p():
    p = 0.25
    ref, err = sci_integrate.quad(
        lambda y: math.sqrt(y * (1 - y)) * math.exp(-p / (y * (1 - y))),
        0.0, 1.0)
    v = ext_beta(P(1.5, 1.5, p, p, -0.5))
    assert v == pytest.approx(ref, rel=1e-9)


def test_symmetry_exchange():
    a = ext_beta(P(1.3, 2.7, 0.8, 0.15, 0.9))
    b = ext_beta(P(2.7, 1.3, 0.15, 0.8, 0.9))
    assert a == pytest.approx(b, rel=1e-12)


def test_representation_agreement():
    rng = np.random.default_rng(11)
    for _ in range(6):
        xi1, xi2 = rng.uniform(0.6, 3.5, 2)
        p, q = rng.uniform(0.0, 2.0, 2)
        eta = rng.uniform(-0.4, 3.0)
        pa = P(xi1, xi2, p, q, eta)
        direct = ext_beta(pa)
        for rep in ("trig", "semiinf", "symmetric"):
            assert ext_beta_rep(pa, rep) == pytest.approx(direct, rel=1e-8), rep
        assert ext_beta_rep(pa, "affine", a=-3.0, c=7.0) == pytest.approx(
            direct, rel=1e-8)


def test_affine_bounds_independence():
    pa = P(1.2, 2.2, 0.3, 0.1, 0.0)
    v1 = ext_beta_rep(pa, "affine", a=-3.0, c=7.0)
    v2 = ext_beta_rep(pa, "affine", a=0.0, c=1.0)
    v3 = ext_beta_rep(pa, "affine", a=2.0, c=2.5)
    assert v1 == pytest.approx(v2, rel=1e-9)
    assert v1 == pytest.approx(v3, rel=1e-9)


def test_rep_validation():
    pa = P(1.0, 1.0, 0.1, 0.1, 0.0)
    with pytest.raises(DomainError):
        ext_beta_rep(pa, "nope")
    with pytest.raises(DomainError):
        ext_beta_rep(pa, "affine", a=2.0, c=1.0)


def test_recurrence_classical_unit():
    pa = P(1.0, 1.0, 0.0, 0.0, 0.5)
    # B(2,1) + B(1,2) = 1 = B(1,1)
    assert ext_beta_recurrence_rhs(pa) == pytest.approx(1.0, rel=1e-11)


def test_recurrence_extended():
    for pa in (P(1.5, 2.5, 0.2, 0.4, 0.0), P(3.0, 3.0, 1.0, 1.0, -0.5)):
        v = ext_beta(pa)
        assert ext_beta_recurrence_rhs(pa) == pytest.approx(v, rel=1e-8)


def test_domination_and_monotonicity():
    # 0 < B_ext <= B classical, nonincreasing in p and in q
    for eta in (0.0, 1.5):
        for xi1, xi2 in ((0.8, 2.0), (2.5, 1.1)):
            classical = float(scipy_beta(xi1, xi2))
            prev = classical
            for p in (0.0, 0.3, 0.9, 2.0):
                v = ext_beta(P(xi1, xi2, p, 0.4, eta))
                assert 0.0 < v <= classical * (1 + 1e-12)
                assert v <= prev * (1 + 1e-10)
                prev = v


def test_sum_one_minus_terminating():
    # xi2 = 0: single term; the l >= 1 coefficients vanish identically
    pa = P(2.0, 0.0, 0.3, 0.4, 0.0)
    r = ext_beta_sum_one_minus(pa, 50)
    assert r.terms_used == 1
    assert r.tail_estimate == 0.0
    assert r.value == pytest.approx(
        ext_beta(P(2.0, 1.0, 0.3, 0.4, 0.0)), rel=1e-10)
    # xi2 = -3: binomial, exact after 4 terms
    pa = P(2.0, -3.0, 0.1, 0.3, -0.5)
    r = ext_beta_sum_one_minus(pa, 50)
    assert r.terms_used == 4
    target = ext_beta(P(2.0, 4.0, 0.1, 0.3, -0.5))
    assert r.value == pytest.approx(target, rel=1e-12)


def test_sum_one_minus_classical_partial_sum_oracle():
    # p = q = 0, xi1 = 2, xi2 = 0.5: terms are (0.5)_l/(l! (2+l)); frozen
    # 400-bit value of the 60-term partial sum
    pa = P(2.0, 0.5, 0.0, 0.0, 0.5)
    cfg = QuadConfig(rel_tol=1e-13)
    r = ext_beta_sum_one_minus(pa, 60, cfg)
    assert r.terms_used == 60
    assert r.value == pytest.approx(ONE_MINUS_CLASSICAL_60, rel=1e-11)
    # it drifts toward B(2, 1/2) = 4/3 from below as terms are added
    r100 = ext_beta_sum_one_minus(pa, 100, cfg)
    assert abs(4.0 / 3.0 - r100.value) < abs(4.0 / 3.0 - r.value)


def test_sum_one_minus_exponential_weight_converges():
    pa = P(2.0, 0.5, 1.5, 1.5, -0.5)
    target = ext_beta(P(2.0, 0.5, 1.5, 1.5, -0.5))
    r = ext_beta_sum_one_minus(pa, 100)
    assert r.value == pytest.approx(target, rel=1e-8)
    assert r.terms_used < 100


def test_sum_shift_telescoping_partial():
    # classical xi1 = xi2 = 1: sum of 1/((l+1)(l+2)); 50-term partial is
    # exactly 1 - 1/51
    pa = P(1.0, 1.0, 0.0, 0.0, 0.5)
    r = ext_beta_sum_shift(pa, 50)
    assert r.terms_used == 50
    assert r.value == pytest.approx(1.0 - 1.0 / 51.0, rel=1e-10)


def test_sum_shift_converges_on_exponential_weight():
    pa = P(2.0, 1.5, 0.3, 1.0, -0.5)
    target = ext_beta(pa)
    r = ext_beta_sum_shift(pa, 100)
    assert r.value == pytest.approx(target, rel=1e-6)


def test_sum_shift_converges_algebraic_large_xi2():
    pa = P(1.5, 4.0, 0.4, 1.5, 1.5)
    target = ext_beta(pa)
    r = ext_beta_sum_shift(pa, 100)
    assert r.value == pytest.approx(target, rel=1e-6)


def test_sum_validation():
    pa = P(1.0, 1.0, 0.1, 0.1, 0.0)
    with pytest.raises(DomainError):
        ext_beta_sum_one_minus(pa, 0)
    with pytest.raises(DomainError):
        ext_beta_sum_shift(pa, -1)


def test_incomplete_bounds_and_additivity():
    pa = P(1.7, 1.7, 0.3, 0.3, 0.4)
    total = ext_beta(pa)
    assert incomplete_lower(pa, 0.0) == 0.0
    assert incomplete_lower(pa, 1.0) == total  # identical integration path
    assert incomplete_upper(pa, 0.0) == total
    assert incomplete_upper(pa, 1.0) == 0.0
    for x in (0.15, 0.5, 0.83):
        lo = incomplete_lower(pa, x)
        up = incomplete_upper(pa, x)
        assert lo + up == pytest.approx(total, rel=1e-12)
    # symmetric integrand: half the mass below 1/2
    cfg = QuadConfig(rel_tol=1e-12)
    assert incomplete_lower(pa, 0.5, cfg) == pytest.approx(
        ext_beta(pa, cfg) / 2.0, rel=1e-10)
    with pytest.raises(DomainError):
        incomplete_lower(pa, -0.1)
    with pytest.raises(DomainError):
        incomplete_upper(pa, 1.1)


def test_params_validation():
    with pytest.raises(DomainError):
        P(1.0, 1.0, -0.1, 0.0, 0.0)
    with pytest.raises(DomainError):
        P(1.0, 1.0, 0.0, -1e-3, 0.0)
    with pytest.raises(DomainError):
        P(1.0, 1.0, 0.1, 0.1, -1.0)  # order out of range
    # endpoint-convergence checks fire on evaluation
    with pytest.raises(DomainError):
        ext_beta(P(0.0, 1.0, 0.0, 0.0, 0.5))  # p=0 needs xi1 > 0
    with pytest.raises(DomainError):
        ext_beta(P(-1.0, 1.0, 0.5, 0.0, 0.5))  # p>0, eta>-1/2 needs xi1 > -1
    with pytest.raises(DomainError):
        ext_beta(P(1.0, -1.5, 0.5, 0.5, 0.0))
    # kernel decay admits -1 < xi1 <= 0 once p > 0
    assert ext_beta(P(-0.5, 1.5, 0.5, 0.0, 0.5)) > 0.0


def test_exponential_weight_allows_any_xi_at_minus_half():
    # e^(-p/y) crushes every power of y: xi1 <= -1 is integrable at eta=-1/2
    v = ext_beta(P(-2.0, 1.5, 0.5, 0.0, -0.5))
    ref, _ = sci_integrate.quad(
        lambda y: y ** -3.0 * (1 - y) ** 0.5 * math.exp(-0.5 / y), 0.0, 1.0)
    assert v == pytest.approx(ref, rel=1e-8)


def test_replace_keeps_validation():
    pa = P(1.5, 2.0, 0.3, 0.1, 0.2)
    shifted = replace(pa, xi1=pa.xi1 + 1.0)
    assert shifted.xi1 == 2.5
    assert shifted.order is pa.order
