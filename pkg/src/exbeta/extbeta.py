"""The kernel-weighted extension of the beta function.

B(xi1, xi2; p, q, eta) = integral_0^1 y^(xi1-1) (1-y)^(xi2-1)
                         S_eta(-p/y) S_eta(-q/(1-y)) dy

with p = q = 0 reducing to the classical beta function (both kernel factors
are identically 1 there), and eta = -1/2 reducing to the two-parameter
exponential-weight extension (single parameter when q = p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, NonConvergence
from .kernel import KernelOrder, kernel_eval
from .quadrature import (DEFAULT_QUAD, QuadConfig, QuadResult, endpoint_aware,
                         integrate_finite, integrate_semi_infinite)
from .series import NeumaierSum, SeriesResult

REPRESENTATIONS = ("trig", "semiinf", "symmetric", "affine")


@dataclass(frozen=True)
class ExtBetaParams:
    """Parameter bundle (xi1, xi2, p, q, eta).

    Endpoint convergence: with p = 0 the y=0 endpoint needs xi1 > 0
    (classical); with p > 0 and eta > -1/2 the kernel contributes one extra
    power of y of decay, so xi1 > -1 suffices.  Symmetrically for q, xi2.
    At eta = -1/2 the weight is exponential and any real xi is integrable.
    These conditions are enforced wherever the defining integrand is
    actually evaluated (the summation formulas reuse the xi2 slot as a pure
    series parameter, which has no integrability constraint).
    """

    xi1: float
    xi2: float
    p: float
    q: float
    order: KernelOrder

    def __post_init__(self) -> None:
        xi1, xi2, p, q = (float(self.xi1), float(self.xi2),
                          float(self.p), float(self.q))
        for name, v in (("xi1", xi1), ("xi2", xi2), ("p", p), ("q", q)):
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
        if p < 0.0 or q < 0.0:
            raise DomainError("p and q must be nonnegative")
        object.__setattr__(self, "xi1", xi1)
        object.__setattr__(self, "xi2", xi2)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def check_integrable(self) -> None:
        """Raise DomainError unless the defining integral converges."""
        if self.p == 0.0:
            if self.xi1 <= 0.0:
                raise DomainError("xi1 must be positive when p = 0")
        elif self.order.eta > -0.5 and self.xi1 <= -1.0:
            raise DomainError("xi1 must exceed -1 when p > 0 and eta > -1/2")
        if self.q == 0.0:
            if self.xi2 <= 0.0:
                raise DomainError("xi2 must be positive when q = 0")
        elif self.order.eta > -0.5 and self.xi2 <= -1.0:
            raise DomainError("xi2 must exceed -1 when q > 0 and eta > -1/2")


def integrand_on(params: ExtBetaParams, a: float, b: float):
    """The defining integrand, for integration over (a, b) within (0, 1).

    Endpoint-aware: when an integration endpoint coincides with a support
    endpoint the engine's exact node offsets feed the singular factors, so
    precision survives arbitrarily deep into the corners; at interior
    endpoints the factors are smooth and plain arithmetic is exact enough.
    """
    params.check_integrable()
    e1 = params.xi1 - 1.0
    e2 = params.xi2 - 1.0
    p, q, order = params.p, params.q, params.order
    a_is_zero = a == 0.0
    b_is_one = b == 1.0

    @endpoint_aware
    def f(y: float, ya: float, yb: float) -> float:
        dist0 = ya if a_is_zero else y
        dist1 = yb if b_is_one else 1.0 - y
        k1 = kernel_eval(order, -p / dist0) if p != 0.0 else 1.0
        k2 = kernel_eval(order, -q / dist1) if q != 0.0 else 1.0
        v = dist0 ** e1 * dist1 ** e2 * k1 * k2
        if math.isinf(v):
            # a power overflowed at a deep node while the kernel factor is
            # tiny; the true product is finite, so redo it in log space
            # (kernel values are positive in every regime that reaches here)
            if k1 == 0.0 or k2 == 0.0:
                return 0.0
            return math.exp(e1 * math.log(dist0) + e2 * math.log(dist1)
                            + math.log(k1) + math.log(k2))
        return v

    return f


def integrand(params: ExtBetaParams):
    """The full-range (0,1) integrand; shared with the distribution pdf."""
    return integrand_on(params, 0.0, 1.0)


def _ext_beta_result(params: ExtBetaParams,
                     cfg: QuadConfig = DEFAULT_QUAD) -> QuadResult:
    return integrate_finite(integrand(params), 0.0, 1.0, cfg)


def ext_beta(params: ExtBetaParams, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """The defining integral over (0,1)."""
    return _ext_beta_result(params, cfg).value


def ext_beta_rep(params: ExtBetaParams, rep: str,
                 cfg: QuadConfig = DEFAULT_QUAD,
                 a: float = 0.0, c: float = 1.0) -> float:
    """Alternative integral representations; all agree with ext_beta.

    rep is one of "trig" (t in (0, pi/2)), "semiinf" (w in (0, inf)),
    "symmetric" (w in (-1, 1)) or "affine" (w in (a, c), any a < c; the
    value is independent of the chosen bounds).
    """
    params.check_integrable()
    xi1, xi2, p, q, order = (params.xi1, params.xi2, params.p, params.q,
                             params.order)
    e1 = xi1 - 1.0
    e2 = xi2 - 1.0

    if rep == "trig":
        c1 = 2.0 * xi1 - 1.0
        c2 = 2.0 * xi2 - 1.0

        @endpoint_aware
        def f(th: float, ta: float, tb: float) -> float:
            # cos(t) = sin(pi/2 - t): the exact endpoint distances keep both
            # factors accurate into the corners
            st = math.sin(ta)
            ct = math.sin(tb)
            k1 = kernel_eval(order, -p / (ct * ct)) if p != 0.0 else 1.0
            k2 = kernel_eval(order, -q / (st * st)) if q != 0.0 else 1.0
            v = ct ** c1 * st ** c2 * k1 * k2
            if math.isinf(v):
                if k1 == 0.0 or k2 == 0.0:
                    return 0.0
                return math.exp(c1 * math.log(ct) + c2 * math.log(st)
                                + math.log(k1) + math.log(k2))
            return v

        return 2.0 * integrate_finite(f, 0.0, math.pi / 2.0, cfg).value

    if rep == "semiinf":
        s = xi1 + xi2

        def g(w: float) -> float:
            # log-form keeps w^(xi1-1) (1+w)^(-xi1-xi2) in range out to w ~ 1e50
            v = math.exp(e1 * math.log(w) - s * math.log1p(w))
            if p != 0.0:
                v *= kernel_eval(order, -p * (1.0 + w) / w)
            if q != 0.0:
                v *= kernel_eval(order, -q * (1.0 + w))
            return v

        return integrate_semi_infinite(g, 0.0, cfg).value

    if rep == "symmetric":
        @endpoint_aware
        def g(w: float, wa: float, wb: float) -> float:
            # wa = 1+w, wb = 1-w exactly
            k1 = kernel_eval(order, -2.0 * p / wa) if p != 0.0 else 1.0
            k2 = kernel_eval(order, -2.0 * q / wb) if q != 0.0 else 1.0
            v = wa ** e1 * wb ** e2 * k1 * k2
            if math.isinf(v):
                if k1 == 0.0 or k2 == 0.0:
                    return 0.0
                return math.exp(e1 * math.log(wa) + e2 * math.log(wb)
                                + math.log(k1) + math.log(k2))
            return v

        return 2.0 ** (1.0 - xi1 - xi2) * integrate_finite(g, -1.0, 1.0, cfg).value

    if rep == "affine":
        if not (a < c):
            raise DomainError("affine representation requires a < c")
        span = c - a

        @endpoint_aware
        def g(w: float, wa: float, wb: float) -> float:
            # wa = w-a, wb = c-w exactly
            k1 = kernel_eval(order, -p * span / wa) if p != 0.0 else 1.0
            k2 = kernel_eval(order, -q * span / wb) if q != 0.0 else 1.0
            v = wa ** e1 * wb ** e2 * k1 * k2
            if math.isinf(v):
                if k1 == 0.0 or k2 == 0.0:
                    return 0.0
                return math.exp(e1 * math.log(wa) + e2 * math.log(wb)
                                + math.log(k1) + math.log(k2))
            return v

        return span ** (1.0 - xi1 - xi2) * integrate_finite(g, a, c, cfg).value

    raise DomainError(f"unknown representation {rep!r}; expected one of "
                      f"{REPRESENTATIONS}")


def ext_beta_recurrence_rhs(params: ExtBetaParams,
                            cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """B(xi1+1, xi2) + B(xi1, xi2+1); equals B(xi1, xi2) identically."""
    up1 = replace(params, xi1=params.xi1 + 1.0)
    up2 = replace(params, xi2=params.xi2 + 1.0)
    return ext_beta(up1, cfg) + ext_beta(up2, cfg)


def _tail_monotone(mags: list[float], n: int = 5) -> bool:
    tail = mags[-n:]
    return all(tail[i + 1] <= tail[i] for i in range(len(tail) - 1))


def ext_beta_sum_one_minus(params: ExtBetaParams, terms: int,
                           cfg: QuadConfig = DEFAULT_QUAD) -> SeriesResult:
    """Partial sum of sum_l (xi2)_l / l! * B(xi1+l, 1) -> B(xi1, 1-xi2).

    params.xi2 is the series parameter (the target's second argument is
    1 - xi2).  Terminates exactly when xi2 is a nonpositive integer; for
    xi2 in (0, 1) the terms decay like l^(xi2-2), so convergence at tight
    tolerances needs either small xi2 or the exponential eta = -1/2 weight.
    """
    if terms < 1:
        raise DomainError("terms must be at least 1")
    acc = NeumaierSum()
    mags: list[float] = []
    coef = 1.0
    tail = math.inf
    used = 0
    for l in range(terms):
        b_l = ext_beta(replace(params, xi1=params.xi1 + l, xi2=1.0), cfg)
        term = coef * b_l
        acc.add(term)
        mags.append(abs(term))
        used = l + 1
        nxt = coef * (params.xi2 + l) / (l + 1.0)
        tail = abs(nxt) * abs(b_l)  # B(.,1) is nonincreasing in its first slot
        if nxt == 0.0:
            tail = 0.0
            break
        if (len(mags) >= 5 and tail < cfg.rel_tol * abs(acc.total)
                and _tail_monotone(mags)):
            break
        coef = nxt
    else:
        if not _tail_monotone(mags):
            raise NonConvergence(
                "one-minus summation: term magnitudes not decreasing over "
                "the last 5 terms")
    return SeriesResult(acc.total, used, tail)


def ext_beta_sum_shift(params: ExtBetaParams, terms: int,
                       cfg: QuadConfig = DEFAULT_QUAD) -> SeriesResult:
    """Partial sum of sum_l B(xi1+l, xi2+1) -> B(xi1, xi2)."""
    if terms < 1:
        raise DomainError("terms must be at least 1")
    acc = NeumaierSum()
    mags: list[float] = []
    tail = math.inf
    used = 0
    for l in range(terms):
        term = ext_beta(replace(params, xi1=params.xi1 + l,
                                xi2=params.xi2 + 1.0), cfg)
        acc.add(term)
        mags.append(abs(term))
        used = l + 1
        tail = abs(term)  # nonincreasing in the first slot
        if (len(mags) >= 5 and tail < cfg.rel_tol * abs(acc.total)
                and _tail_monotone(mags)):
            break
    else:
        if not _tail_monotone(mags):
            raise NonConvergence(
                "shift summation: term magnitudes not decreasing over the "
                "last 5 terms")
    return SeriesResult(acc.total, used, tail)


def incomplete_lower(params: ExtBetaParams, x: float,
                     cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """The defining integral restricted to (0, x), 0 <= x <= 1."""
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    return integrate_finite(integrand_on(params, 0.0, x), 0.0, x, cfg).value


def incomplete_upper(params: ExtBetaParams, x: float,
                     cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Complement of incomplete_lower; the integral over (x, 1)."""
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    return ext_beta(params, cfg) - incomplete_lower(params, x, cfg)
