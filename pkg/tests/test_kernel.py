import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exbeta.errors import CancellationLoss, DomainError
from exbeta.kernel import (TAU, KernelOrder, kernel_closed_form, kernel_eval,
                           kernel_integral_rep, kernel_series)
from exbeta.quadrature import QuadConfig

# 400-bit mpmath sums of the defining series, >= 200 terms
SERIES_ORACLE = {
    (0.3, -4.0): 0.21984743525657664815,
    (1.2, -50.0): 0.027349797176130044988,
    (2.5, -35.0): 0.053397358243588980542,
    (-0.75, -20.0): -0.042001824214804523015,
    (0.25, -30.5): 0.027379644398441925162,
    (0.0, -200.0): 0.0031831784572255880791,
}


def test_order_validation():
    assert KernelOrder(0.0).eta == 0.0
    with pytest.raises(DomainError):
        KernelOrder(-1.0)
    with pytest.raises(DomainError):
        KernelOrder(-2.5)
    with pytest.raises(DomainError):
        KernelOrder(float("nan"))


def test_integral_rep_flag():
    assert KernelOrder(0.0).has_integral_rep
    assert KernelOrder(-0.4999).has_integral_rep
    assert not KernelOrder(-0.5).has_integral_rep
    assert not KernelOrder(-0.75).has_integral_rep


def test_closed_forms():
    assert kernel_closed_form(KernelOrder(-0.5), 1.0) == pytest.approx(
        math.e, rel=1e-15)
    assert kernel_closed_form(KernelOrder(0.5), -2.0) == pytest.approx(
        (1.0 - math.exp(-2.0)) / 2.0, rel=1e-15)
    assert kernel_closed_form(KernelOrder(0.5), 0.0) == 1.0
    assert kernel_closed_form(KernelOrder(0.0), 1.0) is None
    assert kernel_closed_form(KernelOrder(1.7), -3.0) is None


def test_closed_form_range():
    for t in np.linspace(-20.0, 5.0, 101):
        t = float(t)
        assert kernel_eval(KernelOrder(-0.5), t) == pytest.approx(
            math.exp(t), rel=1e-12)
        ref = 1.0 if t == 0.0 else math.expm1(t) / t
        assert kernel_eval(KernelOrder(0.5), t) == pytest.approx(ref, rel=1e-12)


def test_series_at_zero():
    for eta in (-0.9, -0.5, 0.0, 0.7, 3.0):
        r = kernel_series(KernelOrder(eta), 0.0)
        assert r.value == 1.0
        assert r.tail_estimate == 0.0


def test_series_closed_form_reduction():
    r = kernel_series(KernelOrder(-0.5), 2.0)
    assert r.value == pytest.approx(math.e ** 2, rel=1e-14)


def test_series_against_extended_precision_oracle():
    for (eta, t), ref in SERIES_ORACLE.items():
        if (eta, t) == (0.0, -200.0):
            continue  # series raises there by design; covered below
        got = kernel_series(KernelOrder(eta), t).value
        assert got == pytest.approx(ref, rel=1e-11), (eta, t)


def test_series_validation():
    with pytest.raises(DomainError):
        kernel_series(KernelOrder(0.0), 1.0, tol=0.0)
    with pytest.raises(DomainError):
        kernel_series(KernelOrder(0.0), 1.0, max_terms=0)


def test_series_tail_estimate_bounds_next_term():
    r = kernel_series(KernelOrder(0.4), -3.0, tol=1e-10)
    tight = kernel_series(KernelOrder(0.4), -3.0, tol=1e-16)
    assert abs(r.value - tight.value) <= 4.0 * r.tail_estimate + 1e-15
    assert tight.terms_used >= r.terms_used


def test_series_cancellation_loss():
    with pytest.raises(CancellationLoss):
        kernel_series(KernelOrder(-0.75), -200.0)
    with pytest.raises(CancellationLoss):
        kernel_series(KernelOrder(-0.6), -90.0)


def test_integral_rep_normalization():
    # integral of the weight alone: S_eta(0) = 1
    assert kernel_integral_rep(KernelOrder(0.7), 0.0) == pytest.approx(
        1.0, rel=1e-11)


def test_integral_rep_closed_form_point():
    got = kernel_integral_rep(KernelOrder(0.5), -1.0)
    assert got == pytest.approx(1.0 - math.exp(-1.0), rel=1e-11)


def test_integral_rep_domain():
    with pytest.raises(DomainError):
        kernel_integral_rep(KernelOrder(-0.5), -1.0)
    with pytest.raises(DomainError):
        kernel_integral_rep(KernelOrder(-0.75), -1.0)


def test_integral_rep_deep_negative_vs_oracle():
    got = kernel_integral_rep(KernelOrder(1.2), -50.0)
    assert got == pytest.approx(SERIES_ORACLE[(1.2, -50.0)], rel=1e-8)


def test_eval_deep_negative_vs_oracle():
    got = kernel_eval(KernelOrder(0.0), -200.0)
    assert got == pytest.approx(SERIES_ORACLE[(0.0, -200.0)], rel=1e-10)


def test_eval_dispatch_continuity_at_tau():
    for eta in (0.0, 0.8, 2.0):
        lo = kernel_eval(KernelOrder(eta), -TAU - 1e-9)
        hi = kernel_eval(KernelOrder(eta), -TAU + 1e-9)
        assert lo == pytest.approx(hi, rel=1e-9)


def test_path_agreement_series_vs_integral():
    for eta in (0.0, 0.25, 1.0, 2.5):
        order = KernelOrder(eta)
        for t in np.linspace(-TAU - 5.0, -TAU + 5.0, 11):
            t = float(t)
            s = kernel_series(order, t).value
            r = kernel_integral_rep(order, t)
            assert abs(s - r) <= 1e-9 * abs(r), (eta, t)


def test_fast_rep_path_matches_quadrature_module():
    from exbeta.kernel import _rep_core, _rep_prefactor
    for eta in (0.1, 0.9, 2.2):
        for t in (-31.0, -75.0, -400.0, -1e6):
            fast = _rep_prefactor(eta) * _rep_core(eta, t)
            slow = kernel_integral_rep(KernelOrder(eta), t)
            assert fast == pytest.approx(slow, rel=1e-10), (eta, t)


def test_positive_monotone_for_integral_orders():
    # for eta > -1/2 and t <= 0 the kernel lies in (0, 1] and increases in t
    for eta in (-0.3, 0.0, 0.6, 2.0):
        order = KernelOrder(eta)
        vals = [kernel_eval(order, float(t)) for t in np.linspace(-60.0, 0.0, 41)]
        assert all(0.0 < v <= 1.0 + 1e-15 for v in vals)
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


def test_eval_cancellation_loss_only_below_minus_half():
    with pytest.raises(CancellationLoss):
        kernel_eval(KernelOrder(-0.75), -200.0)
    # same argument is fine when the integral representation exists
    assert kernel_eval(KernelOrder(-0.3), -200.0) > 0.0


def test_negative_kernel_value_for_sub_half_order():
    # S_eta(-x) is not positive on eta in (-1, -1/2); frozen oracle check
    got = kernel_eval(KernelOrder(-0.75), -20.0)
    assert got == pytest.approx(SERIES_ORACLE[(-0.75, -20.0)], rel=1e-11)
    assert got < 0.0


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.999, max_value=25.0))
def test_property_unit_at_zero(eta):
    assert kernel_eval(KernelOrder(eta), 0.0) == 1.0


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-0.45, max_value=4.0),
       st.floats(min_value=-25.0, max_value=5.0))
def test_property_series_matches_integral_rep(eta, t):
    order = KernelOrder(eta)
    s = kernel_series(order, t).value
    r = kernel_integral_rep(order, t, QuadConfig(rel_tol=1e-12))
    assert s == pytest.approx(r, rel=2e-10)
