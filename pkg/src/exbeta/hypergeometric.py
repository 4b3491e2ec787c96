"""Extended Gauss and confluent hypergeometric functions.

The classical series coefficients B(b+l, c-b)/B(b, c-b) are replaced by
their kernel-weighted extensions; p = q = 0 recovers the classical 2F1 and
1F1.  Every extended-beta coefficient costs a full quadrature, so values
are memoized keyed by (parameters, tolerance, index) and shared across
series, derivative, transformation and generating-function evaluations.

Note on the transformation identities: substituting y -> 1-y in the Euler
integral swaps the roles of p and q along with the parameter slots, so

  F(xi1, xi2; xi3; x | p, q) = (1-x)^(-xi1)
      * F(xi1, xi3-xi2; xi3; -x/(1-x) | q, p)

and likewise for the confluent Kummer form.  The p,q swap is invisible in
the classical limit and whenever p = q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, NonConvergence
from .extbeta import ExtBetaParams, ext_beta
from .kernel import KernelOrder, kernel_eval
from .quadrature import DEFAULT_QUAD, QuadConfig, endpoint_aware, integrate_finite
from .series import NeumaierSum, SeriesResult


@dataclass(frozen=True)
class GaussParams:
    """(xi1, xi2; xi3) with weights p, q and kernel order; xi3 > xi2 > 0."""

    xi1: float
    xi2: float
    xi3: float
    p: float
    q: float
    order: KernelOrder

    def __post_init__(self) -> None:
        _validate_upper_lower(self.xi2, self.xi3, self.p, self.q)


@dataclass(frozen=True)
class ConfluentParams:
    """(xi2; xi3) with weights p, q and kernel order; xi3 > xi2 > 0."""

    xi2: float
    xi3: float
    p: float
    q: float
    order: KernelOrder

    def __post_init__(self) -> None:
        _validate_upper_lower(self.xi2, self.xi3, self.p, self.q)


def _validate_upper_lower(xi2: float, xi3: float, p: float, q: float) -> None:
    for name, v in (("xi2", xi2), ("xi3", xi3), ("p", p), ("q", q)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    if not (xi3 > xi2 > 0.0):
        raise DomainError(f"require xi3 > xi2 > 0, got xi2={xi2}, xi3={xi3}")
    if p < 0.0 or q < 0.0:
        raise DomainError("p and q must be nonnegative")


def pochhammer(a: float, l: int) -> float:
    """Rising factorial a (a+1) ... (a+l-1); (a)_0 = 1."""
    if l < 0:
        raise DomainError("pochhammer index must be nonnegative")
    out = 1.0
    for k in range(l):
        out *= a + k
    return out


def _classical_beta(a: float, b: float) -> float:
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


# extended-beta coefficient cache; idempotent recomputation is harmless
_COEF_CACHE: dict[tuple, float] = {}


def _ext_coef(xi2: float, dxi: float, p: float, q: float, order: KernelOrder,
              l: int, cfg: QuadConfig) -> float:
    key = (xi2, dxi, p, q, order.eta, cfg.rel_tol, cfg.abs_tol, l)
    v = _COEF_CACHE.get(key)
    if v is None:
        v = ext_beta(ExtBetaParams(xi2 + l, dxi, p, q, order), cfg)
        _COEF_CACHE[key] = v
    return v


def _kernel_weights(order: KernelOrder, p: float, q: float):
    """Factor S(-p/ya) S(-q/yb) with the zero-weight slots skipped."""

    def w(ya: float, yb: float) -> float:
        v = 1.0
        if p != 0.0:
            v *= kernel_eval(order, -p / ya)
        if q != 0.0:
            v *= kernel_eval(order, -q / yb)
        return v

    return w


def gauss_series(gp: GaussParams, x: float, terms: int = 500,
                 cfg: QuadConfig = DEFAULT_QUAD) -> SeriesResult:
    """sum_l (xi1)_l [B_ext(xi2+l, xi3-xi2)/B(xi2, xi3-xi2)] x^l / l!.

    Converges for |x| < 1; the truncation bound uses the classical
    coefficient ratio, which dominates the extended one.
    """
    if not (abs(x) < 1.0):
        raise NonConvergence(f"series requires |x| < 1, got x={x}")
    xi1, xi2, xi3 = gp.xi1, gp.xi2, gp.xi3
    dxi = xi3 - xi2
    denom = _classical_beta(xi2, dxi)
    acc = NeumaierSum()
    poch = 1.0  # (xi1)_l x^l / l!
    cr = 1.0    # classical ratio (xi2)_l / (xi3)_l
    small = 0
    for l in range(terms):
        coef = _ext_coef(xi2, dxi, gp.p, gp.q, gp.order, l, cfg) / denom
        acc.add(poch * coef)
        poch_next = poch * (xi1 + l) * x / (l + 1.0)
        cr_next = cr * (xi2 + l) / (xi3 + l)
        bound = abs(poch_next) * cr_next
        if poch_next == 0.0:
            return SeriesResult(acc.total, l + 1, 0.0)
        if bound < cfg.rel_tol * abs(acc.total):
            small += 1
            if small >= 2:
                return SeriesResult(acc.total, l + 1, bound)
        else:
            small = 0
        poch = poch_next
        cr = cr_next
    raise NonConvergence(
        f"gauss series: {terms} terms without reaching rel_tol at x={x}")


def confluent_series(cp: ConfluentParams, x: float, terms: int = 500,
                     cfg: QuadConfig = DEFAULT_QUAD) -> SeriesResult:
    """sum_l [B_ext(xi2+l, xi3-xi2)/B(xi2, xi3-xi2)] x^l / l!.

    Entire in x: the coefficients are dominated by the classical confluent
    ones, so all real x are accepted.
    """
    xi2, xi3 = cp.xi2, cp.xi3
    dxi = xi3 - xi2
    denom = _classical_beta(xi2, dxi)
    acc = NeumaierSum()
    fac = 1.0  # x^l / l!
    cr = 1.0
    small = 0
    for l in range(terms):
        coef = _ext_coef(xi2, dxi, cp.p, cp.q, cp.order, l, cfg) / denom
        acc.add(fac * coef)
        fac_next = fac * x / (l + 1.0)
        cr_next = cr * (xi2 + l) / (xi3 + l)
        bound = abs(fac_next) * cr_next
        if fac_next == 0.0:
            return SeriesResult(acc.total, l + 1, 0.0)
        if bound < cfg.rel_tol * abs(acc.total):
            small += 1
            if small >= 2:
                return SeriesResult(acc.total, l + 1, bound)
        else:
            small = 0
        fac = fac_next
        cr = cr_next
    raise NonConvergence(
        f"confluent series: {terms} terms without reaching rel_tol at x={x}")


def gauss_integral(gp: GaussParams, x: float,
                   cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Euler-type integral; real branch requires x < 1."""
    if not (x < 1.0):
        raise DomainError(f"integral representation requires x < 1, got {x}")
    e2 = gp.xi2 - 1.0
    e3 = gp.xi3 - gp.xi2 - 1.0
    mxi1 = -gp.xi1
    omx = 1.0 - x
    w = _kernel_weights(gp.order, gp.p, gp.q)

    @endpoint_aware
    def f(y: float, ya: float, yb: float) -> float:
        # 1 - yx = (1-x) + x*yb stays accurate as y -> 1
        return ya ** e2 * yb ** e3 * (omx + x * yb) ** mxi1 * w(ya, yb)

    bc = _classical_beta(gp.xi2, gp.xi3 - gp.xi2)
    return integrate_finite(f, 0.0, 1.0, cfg).value / bc


def confluent_integral(cp: ConfluentParams, x: float,
                       cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Euler-type integral with the e^(xy) factor; valid for all real x."""
    e2 = cp.xi2 - 1.0
    e3 = cp.xi3 - cp.xi2 - 1.0
    w = _kernel_weights(cp.order, cp.p, cp.q)

    @endpoint_aware
    def f(y: float, ya: float, yb: float) -> float:
        return ya ** e2 * yb ** e3 * math.exp(x * y) * w(ya, yb)

    bc = _classical_beta(cp.xi2, cp.xi3 - cp.xi2)
    return integrate_finite(f, 0.0, 1.0, cfg).value / bc


def confluent_integral_alt(cp: ConfluentParams, x: float,
                           cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """The y -> 1-y reflection of confluent_integral.

    The power weights and the kernel arguments swap together:
    e^x * int (1-y)^(xi2-1) y^(xi3-xi2-1) e^(-xy) S(-p/(1-y)) S(-q/y) dy.
    """
    e2 = cp.xi2 - 1.0
    e3 = cp.xi3 - cp.xi2 - 1.0
    w = _kernel_weights(cp.order, cp.p, cp.q)

    @endpoint_aware
    def f(y: float, ya: float, yb: float) -> float:
        return yb ** e2 * ya ** e3 * math.exp(-x * y) * w(yb, ya)

    bc = _classical_beta(cp.xi2, cp.xi3 - cp.xi2)
    return math.exp(x) * integrate_finite(f, 0.0, 1.0, cfg).value / bc


def gauss_derivative(gp: GaussParams, x: float, k: int,
                     cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """k-th derivative: (xi1)_k (xi2)_k / (xi3)_k times the shifted series."""
    if k < 0:
        raise DomainError("derivative order must be nonnegative")
    factor = pochhammer(gp.xi1, k) * pochhammer(gp.xi2, k) / pochhammer(gp.xi3, k)
    shifted = replace(gp, xi1=gp.xi1 + k, xi2=gp.xi2 + k, xi3=gp.xi3 + k)
    return factor * gauss_series(shifted, x, cfg=cfg).value


def confluent_derivative(cp: ConfluentParams, x: float, k: int,
                         cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """k-th derivative: (xi2)_k / (xi3)_k times the shifted series."""
    if k < 0:
        raise DomainError("derivative order must be nonnegative")
    factor = pochhammer(cp.xi2, k) / pochhammer(cp.xi3, k)
    shifted = replace(cp, xi2=cp.xi2 + k, xi3=cp.xi3 + k)
    return factor * confluent_series(shifted, x, cfg=cfg).value


def gauss_transform_rhs(gp: GaussParams, x: float,
                        cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Pfaff-transformed right side, equal to gauss_series(gp, x).

    (1-x)^(-xi1) F(xi1, xi3-xi2; xi3; -x/(1-x)) with p and q swapped; the
    transformed series needs |x/(1-x)| < 1, i.e. x < 1/2.
    """
    if not (x < 0.5):
        raise DomainError(f"transformed series requires x < 1/2, got {x}")
    swapped = GaussParams(gp.xi1, gp.xi3 - gp.xi2, gp.xi3, gp.q, gp.p, gp.order)
    z = -x / (1.0 - x)
    return (1.0 - x) ** (-gp.xi1) * gauss_series(swapped, z, cfg=cfg).value


def confluent_transform_rhs(cp: ConfluentParams, x: float,
                            cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Kummer-transformed right side, equal to confluent_series(cp, x).

    e^x Phi(xi3-xi2; xi3; -x) with p and q swapped.
    """
    swapped = ConfluentParams(cp.xi3 - cp.xi2, cp.xi3, cp.q, cp.p, cp.order)
    return math.exp(x) * confluent_series(swapped, -x, cfg=cfg).value


def gauss_generating_lhs(gp: GaussParams, x: float, z: float, k_terms: int,
                         cfg: QuadConfig = DEFAULT_QUAD) -> SeriesResult:
    """sum_k (xi1)_k F(xi1+k, xi2; xi3; x) z^k / k!.

    Converges to (1-z)^(-xi1) F(xi1, xi2; xi3; x/(1-z)) for |z| < 1 and
    |x/(1-z)| < 1.
    """
    if not (abs(z) < 1.0):
        raise DomainError(f"generating variable requires |z| < 1, got {z}")
    if not (abs(x / (1.0 - z)) < 1.0):
        raise DomainError("require |x/(1-z)| < 1 for the resummed series")
    acc = NeumaierSum()
    c = 1.0  # (xi1)_k z^k / k!
    small = 0
    prev_mag = math.inf
    term = 0.0
    for k in range(k_terms):
        fk = gauss_series(replace(gp, xi1=gp.xi1 + k), x, cfg=cfg).value
        term = c * fk
        acc.add(term)
        mag = abs(term)
        if k >= 1 and mag < cfg.rel_tol * abs(acc.total) and mag <= prev_mag:
            small += 1
            if small >= 2:
                return SeriesResult(acc.total, k + 1, mag)
        else:
            small = 0
        prev_mag = mag
        c = c * (gp.xi1 + k) * z / (k + 1.0)
        if c == 0.0:
            return SeriesResult(acc.total, k + 1, 0.0)
    raise NonConvergence(
        f"generating series: {k_terms} terms without tail decay at "
        f"x={x}, z={z}")
