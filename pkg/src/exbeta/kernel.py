"""Bessel-Struve kernel S_eta(t) for real t and real eta > -1.

Three evaluation routes, dispatched by kernel_eval:

* closed forms for eta = +-1/2 (exp and expm1),
* the power series, summed with error-free-transformation double-double
  arithmetic so the alternating sum for t < 0 keeps ~32 digits before
  cancellation eats them,
* an integral representation (valid for eta > -1/2) whose integrand is
  positive for t <= 0, used once the series would lose too many digits.

The series terms are generated by two ratio recurrences (even/odd index),
seeded from a single Gamma-ratio constant per order; no Gamma is ever
evaluated at a large argument.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ._jit import jit_scalar
from .errors import CancellationLoss, DomainError, NonConvergence
from .quadrature import (DEFAULT_QUAD, QuadConfig, QuadResult, endpoint_aware,
                         integrate_finite)
from .series import SeriesResult

# Series -> integral-representation switchover for negative arguments.
TAU = 30.0

# Unit roundoff of the double-double accumulator, and the safety factor of
# the cancellation guard: we refuse to return a sum smaller than
# DD_EPS * SAFETY times the largest partial sum (~10 digits would be left).
_DD_EPS = 2.0 ** -106
_CANCEL_SAFETY = 1e12

_SQRT_PI = math.sqrt(math.pi)
_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


@dataclass(frozen=True)
class KernelOrder:
    """Order eta of the kernel; construction enforces eta > -1."""

    eta: float

    def __post_init__(self) -> None:
        eta = float(self.eta)
        if not math.isfinite(eta) or not (eta > -1.0):
            raise DomainError(f"kernel order must satisfy eta > -1, got {self.eta}")
        object.__setattr__(self, "eta", eta)

    @property
    def has_integral_rep(self) -> bool:
        """True iff the integral representation is valid (eta > -1/2)."""
        return self.eta > -0.5


@lru_cache(maxsize=None)
def _odd_seed(eta: float) -> tuple[float, float]:
    """Gamma(eta+1)/(sqrt(pi)*Gamma(eta+3/2)) as a double-double pair.

    The odd-index track of the series starts from this constant; it must be
    accurate well beyond double precision or the t << 0 cancellation
    amplifies its rounding into the leading digits of the sum.
    """
    import mpmath as mp

    with mp.workprec(130):
        e = mp.mpf(eta)
        r = mp.gamma(e + 1) / (mp.sqrt(mp.pi) * mp.gamma(e + mp.mpf(3) / 2))
        hi = float(r)
        lo = float(r - hi)
    return hi, lo


@lru_cache(maxsize=None)
def _rep_prefactor(eta: float) -> float:
    # 2*Gamma(eta+1)/(sqrt(pi)*Gamma(eta+1/2)), finite for eta > -1/2
    return 2.0 * math.exp(math.lgamma(eta + 1.0) - math.lgamma(eta + 0.5)) / _SQRT_PI


# ---------------------------------------------------------------------------
# double-double primitives (error-free transformations, no FMA required)
# ---------------------------------------------------------------------------

@jit_scalar
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@jit_scalar
def _two_prod(a, b):
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


@jit_scalar
def _dd_add(xh, xl, yh, yl):
    sh, se = _two_sum(xh, yh)
    th, te = _two_sum(xl, yl)
    se += th
    h = sh + se
    se -= h - sh
    se += te
    hh = h + se
    return hh, se - (hh - h)


@jit_scalar
def _dd_mul(xh, xl, yh, yl):
    ph, pe = _two_prod(xh, yh)
    pe += xh * yl + xl * yh
    h = ph + pe
    return h, pe - (h - ph)


@jit_scalar
def _dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = _dd_mul(yh, yl, q1, 0.0)
    rh, rl = _dd_add(xh, xl, -th, -tl)
    q2 = rh / yh
    th, tl = _dd_mul(yh, yl, q2, 0.0)
    rh, rl = _dd_add(rh, rl, -th, -tl)
    q3 = rh / yh
    h, l = _two_sum(q1, q2)
    l += q3
    hh = h + l
    return hh, l - (hh - h)


@jit_scalar
def _series_core(eta, t, seed_hi, seed_lo, tol, max_terms):
    """Sum the kernel series in double-double arithmetic.

    Even terms start at 1 exactly; odd terms start at seed * t.  Term m+2 is
    term m times an exact-rational-in-m ratio, kept in dd so cancellation for
    t < 0 is limited only by the 2^-106 accumulator roundoff.

    Returns (sum_hi, sum_lo, terms_used, max_abs_partial, next_term_bound).
    """
    ev_h, ev_l = 1.0, 0.0
    od_h, od_l = _dd_mul(seed_hi, seed_lo, t, 0.0)
    t2h, t2l = _two_prod(t, t)
    sh, sl = _dd_add(1.0, 0.0, od_h, od_l)
    max_abs = abs(sh)
    j = 0.0
    nterms = 2
    while nterms < max_terms:
        # even:  ratio = t^2 (j + 1/2) / ((2j+1)(2j+2)(j + eta + 1))
        numh, numl = _dd_mul(t2h, t2l, j + 0.5, 0.0)
        dh, dl = _two_sum(j + 1.0, eta)
        dh, dl = _dd_mul(dh, dl, (2.0 * j + 1.0) * (2.0 * j + 2.0), 0.0)
        rh, rl = _dd_div(numh, numl, dh, dl)
        ev_h, ev_l = _dd_mul(ev_h, ev_l, rh, rl)
        # odd:   ratio = t^2 / (2 (2j+3) (j + eta + 3/2))
        dh, dl = _two_sum(j + 1.5, eta)
        dh, dl = _dd_mul(dh, dl, 2.0 * (2.0 * j + 3.0), 0.0)
        rh, rl = _dd_div(t2h, t2l, dh, dl)
        od_h, od_l = _dd_mul(od_h, od_l, rh, rl)
        sh, sl = _dd_add(sh, sl, ev_h, ev_l)
        sh, sl = _dd_add(sh, sl, od_h, od_l)
        a = abs(sh)
        if a > max_abs:
            max_abs = a
        j += 1.0
        nterms += 2
        if abs(ev_h) < tol * a and abs(od_h) < tol * a:
            break
    nxt = abs(ev_h)
    if abs(od_h) > nxt:
        nxt = abs(od_h)
    return sh, sl, nterms, max_abs, nxt


@jit_scalar
def _rep_core(eta, t):
    """Integral representation without its Gamma prefactor, tanh-sinh rule.

    For t >= -50 integrates (1-u^2)^(eta-1/2) e^(tu) over (0,1); below that
    substitutes v = -t u so the integrand becomes scale-free and returns the
    same quantity.  Self-contained so numba can compile the whole loop.
    """
    em = eta - 0.5
    half_pi = 1.5707963267948966
    if t >= -50.0:
        a, b = 0.0, 1.0
        x = 0.0
        vform = False
    else:
        x = -t
        a = 0.0
        b = x if x < 745.0 else 745.0
        vform = True
    xb = x - b  # gap between the reachable endpoint and the singular point
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    if vform:
        fm = ((xb + (b - mid)) / x * (1.0 + mid / x)) ** em * math.exp(-mid)
    else:
        fm = ((1.0 - mid) * (1.0 + mid)) ** em * math.exp(t * mid)
    total = half_pi * fm
    prev = 0.0
    value = 0.0
    for level in range(11):
        h = 0.5 ** level
        kmax = int(6.0 / h)
        step = 1 if level == 0 else 2
        k = 1
        while k <= kmax:
            u = k * h
            s = half_pi * math.sinh(u)
            es = math.exp(-s)
            es2 = es * es
            d = 2.0 * es2 / (1.0 + es2)
            sech = 2.0 * es / (1.0 + es2)
            w = half_pi * math.cosh(u) * sech * sech
            near = half * d
            ylo = a + near
            yhi = b - near
            # the singular factor uses the exact node offset, no subtraction
            if vform:
                total += w * (((x - ylo) / x * (1.0 + ylo / x)) ** em
                              * math.exp(-ylo))
                total += w * (((xb + near) / x * (1.0 + yhi / x)) ** em
                              * math.exp(-yhi))
            else:
                total += w * (((1.0 - ylo) * (1.0 + ylo)) ** em
                              * math.exp(t * ylo))
                total += w * ((near * (1.0 + yhi)) ** em * math.exp(t * yhi))
            k += step
        value = total * half * h
        if level >= 2 and abs(value - prev) <= 1e-12 * abs(value) + 1e-300:
            break
        prev = value
    if vform:
        return value / x
    return value


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def kernel_closed_form(order: KernelOrder, t: float) -> float | None:
    """Exponential closed forms at eta = -1/2 and +1/2; None otherwise."""
    if order.eta == -0.5:
        return math.exp(t)
    if order.eta == 0.5:
        if t == 0.0:
            return 1.0
        return math.expm1(t) / t
    return None


def kernel_series(order: KernelOrder, t: float, tol: float = 1e-16,
                  max_terms: int = 4000) -> SeriesResult:
    """Power-series evaluation with dd-compensated summation.

    Stops once the next term on both parity tracks drops below tol times the
    partial sum.  Raises NonConvergence when max_terms is hit first and
    CancellationLoss when the surviving sum is below the accumulator noise
    floor (DD_EPS * max partial * safety), i.e. t << 0 destroyed the digits.
    """
    if not (tol > 0.0):
        raise DomainError("tol must be positive")
    if max_terms < 1:
        raise DomainError("max_terms must be at least 1")
    if t == 0.0:
        return SeriesResult(1.0, 1, 0.0)
    hi, lo = _odd_seed(order.eta)
    sh, sl, nterms, max_abs, nxt = _series_core(
        order.eta, t, hi, lo, tol, max(max_terms, 2))
    value = sh + sl
    if not math.isfinite(value) or not math.isfinite(max_abs):
        if t < 0.0:
            raise CancellationLoss(
                f"kernel series at t={t}: partial sums overflow before cancelling")
        raise NonConvergence(f"kernel series at t={t}: value exceeds double range")
    if abs(value) < _DD_EPS * _CANCEL_SAFETY * max_abs:
        raise CancellationLoss(
            f"kernel series at eta={order.eta}, t={t}: cancellation left fewer "
            f"than ~10 reliable digits")
    if nterms >= max_terms and nxt >= tol * abs(value):
        raise NonConvergence(
            f"kernel series: {max_terms} terms without reaching tol={tol}")
    return SeriesResult(value, nterms, nxt)


def _integral_rep_result(order: KernelOrder, t: float,
                         quad: QuadConfig) -> QuadResult:
    if not order.has_integral_rep:
        raise DomainError(
            f"integral representation requires eta > -1/2, got eta={order.eta}")
    em = order.eta - 0.5
    c = _rep_prefactor(order.eta)
    if t >= -50.0:
        @endpoint_aware
        def f(u: float, ua: float, ub: float) -> float:
            return (ub * (1.0 + u)) ** em * math.exp(t * u)

        res = integrate_finite(f, 0.0, 1.0, quad)
        return QuadResult(c * res.value, c * res.error_estimate, res.evals)
    x = -t
    vmax = x if x < 745.0 else 745.0
    xb = x - vmax  # 0 whenever the singular point v = x is inside reach

    @endpoint_aware
    def g(v: float, va: float, vb: float) -> float:
        return ((xb + vb) / x * (1.0 + v / x)) ** em * math.exp(-v)

    res = integrate_finite(g, 0.0, vmax, quad)
    return QuadResult(c * res.value / x, c * res.error_estimate / x, res.evals)


def kernel_integral_rep(order: KernelOrder, t: float,
                        quad: QuadConfig = DEFAULT_QUAD) -> float:
    """Cancellation-free route for eta > -1/2 through the quadrature module.

    S_eta(t) = 2 Gamma(eta+1)/(sqrt(pi) Gamma(eta+1/2))
               * integral_0^1 (1-u^2)^(eta-1/2) e^(tu) du;
    for t <= 0 every sample of the integrand lies in (0, 1]-scaled range, so
    no digits are lost.  Deeply negative t integrates in v = -t*u instead.
    """
    return _integral_rep_result(order, t, quad).value


def kernel_eval(order: KernelOrder, t: float) -> float:
    """Best-route evaluation of S_eta(t).

    Closed form when available; otherwise the series for t >= -TAU, and the
    integral representation beyond that when eta > -1/2.  For
    eta in (-1, -1/2] only the series exists, so deeply negative arguments
    raise CancellationLoss rather than returning noise.
    """
    cf = kernel_closed_form(order, t)
    if cf is not None:
        return cf
    if t >= -TAU or not order.has_integral_rep:
        return kernel_series(order, t).value
    return _rep_prefactor(order.eta) * _rep_core(order.eta, t)
