"""Seeded end-to-end identity suites behind the `verify` CLI command.

Every theorem the library implements is exercised numerically on random
grids: reductions, the five integral representations, the recurrence, the
two summation formulas (on their convergent domains), distribution
coherence, and the hypergeometric identities.  Output is deterministic for
a fixed seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import ExtBetaDistribution
from .extbeta import (ExtBetaParams, ext_beta, ext_beta_recurrence_rhs,
                      ext_beta_rep, ext_beta_sum_one_minus,
                      ext_beta_sum_shift, integrand)
from .hypergeometric import (ConfluentParams, GaussParams, confluent_derivative,
                             confluent_integral, confluent_integral_alt,
                             confluent_series, confluent_transform_rhs,
                             gauss_derivative, gauss_generating_lhs,
                             gauss_integral, gauss_series, gauss_transform_rhs)
from .kernel import KernelOrder, kernel_eval, kernel_integral_rep, kernel_series
from .quadrature import QuadConfig, integrate_finite


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    max_err: float
    tol: float

    def passed(self, tol_override: float | None) -> bool:
        tol = self.tol if tol_override is None else tol_override
        return self.max_err <= tol


def _lbeta(a: float, b: float) -> float:
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def _draw_params(rng: np.random.Generator, cases: int,
                 eta_lo: float = -0.4, eta_hi: float = 2.5,
                 pq_hi: float = 2.0) -> list[ExtBetaParams]:
    out = []
    for _ in range(cases):
        xi1 = rng.uniform(0.6, 3.5)
        xi2 = rng.uniform(0.6, 3.5)
        p = rng.uniform(0.0, pq_hi)
        q = rng.uniform(0.0, pq_hi)
        eta = rng.uniform(eta_lo, eta_hi)
        out.append(ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta)))
    return out


def _suite_kernel_closed(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for t in np.linspace(-20.0, 5.0, 41):
        t = float(t)
        worst = max(worst, _rel(kernel_eval(KernelOrder(-0.5), t), math.exp(t)))
        ref = 1.0 if t == 0.0 else math.expm1(t) / t
        worst = max(worst, _rel(kernel_eval(KernelOrder(0.5), t), ref))
        n += 2
    return SuiteResult("kernel-closed-forms", n, worst, 1e-12)


def _suite_kernel_paths(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for eta in (0.0, 0.25, 1.0, 2.5):
        for t in (-35.0, -30.0, -27.5, -25.0):
            order = KernelOrder(eta)
            s = kernel_series(order, t).value
            r = kernel_integral_rep(order, t, cfg)
            worst = max(worst, abs(s - r) / abs(r))
            n += 1
    return SuiteResult("kernel-path-agreement", n, worst, 1e-9)


def _suite_classical_reduction(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for pa in _draw_params(rng, cases):
        flat = ExtBetaParams(pa.xi1, pa.xi2, 0.0, 0.0, pa.order)
        ref = _lbeta(pa.xi1, pa.xi2)
        worst = max(worst, abs(ext_beta(flat, cfg) - ref) / ref)
        n += 1
    return SuiteResult("beta-classical-reduction", n, worst, 1e-10)


def _suite_lineage(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    order = KernelOrder(-0.5)
    for _ in range(cases):
        xi1 = rng.uniform(0.6, 3.0)
        xi2 = rng.uniform(0.6, 3.0)
        p = rng.uniform(0.05, 1.5)
        q = rng.uniform(0.05, 1.5)
        v = ext_beta(ExtBetaParams(xi1, xi2, p, q, order), cfg)
        ref = integrate_finite(
            lambda y: y ** (xi1 - 1) * (1 - y) ** (xi2 - 1)
            * math.exp(-p / y - q / (1 - y)), 0.0, 1.0, cfg).value
        worst = max(worst, abs(v - ref) / abs(ref))
        v = ext_beta(ExtBetaParams(xi1, xi2, p, p, order), cfg)
        ref = integrate_finite(
            lambda y: y ** (xi1 - 1) * (1 - y) ** (xi2 - 1)
            * math.exp(-p / (y * (1 - y))), 0.0, 1.0, cfg).value
        worst = max(worst, abs(v - ref) / abs(ref))
        n += 2
    return SuiteResult("beta-lineage-exponential", n, worst, 1e-9)


def _suite_representations(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for pa in _draw_params(rng, cases):
        vals = [ext_beta(pa, cfg),
                ext_beta_rep(pa, "trig", cfg),
                ext_beta_rep(pa, "semiinf", cfg),
                ext_beta_rep(pa, "symmetric", cfg),
                ext_beta_rep(pa, "affine", cfg, a=-3.0, c=7.0)]
        lo, hi = min(vals), max(vals)
        worst = max(worst, (hi - lo) / abs(vals[0]))
        n += 1
    return SuiteResult("beta-representations", n, worst, 1e-8)


def _suite_recurrence(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for pa in _draw_params(rng, cases):
        v = ext_beta(pa, cfg)
        worst = max(worst, abs(v - ext_beta_recurrence_rhs(pa, cfg)) / abs(v))
        n += 1
    return SuiteResult("beta-recurrence", n, worst, 1e-8)


# Convergent domains for the two summation formulas: the one-minus series
# terminates for nonpositive-integer xi2 and converges fast for tiny xi2 or
# for the exponential weight (eta = -1/2) with q around 1; the shift series
# needs the same exponential weight or a large xi2 with q > 0.
_SUM_ONE_MINUS = [
    (2.0, 0.0, 0.3, 0.4, 0.0),
    (1.5, -1.0, 0.2, 0.5, 0.7),
    (2.0, -3.0, 0.1, 0.3, -0.5),
    (2.0, 0.5, 1.5, 1.5, -0.5),
    (1.2, 1e-4, 0.5, 0.5, 0.25),
]
_SUM_SHIFT = [
    (2.0, 1.5, 0.3, 1.0, -0.5),
    (1.5, 4.0, 0.4, 1.5, 1.5),
    (1.0, 5.0, 0.0, 1.0, 0.0),
]


def _suite_summations(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, p, q, eta in _SUM_ONE_MINUS:
        order = KernelOrder(eta)
        pa = ExtBetaParams(xi1, xi2, p, q, order)
        target = ext_beta(ExtBetaParams(xi1, 1.0 - xi2, p, q, order), cfg)
        got = ext_beta_sum_one_minus(pa, 100, cfg).value
        worst = max(worst, abs(got - target) / abs(target))
        n += 1
    for xi1, xi2, p, q, eta in _SUM_SHIFT:
        pa = ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta))
        target = ext_beta(pa, cfg)
        got = ext_beta_sum_shift(pa, 100, cfg).value
        worst = max(worst, abs(got - target) / abs(target))
        n += 1
    return SuiteResult("beta-summations", n, worst, 1e-6)


_DIST_PARAMS = [
    (2.0, 3.0, 0.2, 0.1, 0.0),
    (1.5, 1.5, 0.5, 0.5, -0.5),
    (3.0, 2.0, 0.0, 0.8, 1.2),
]


def _suite_dist_normalization(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, p, q, eta in _DIST_PARAMS:
        d = ExtBetaDistribution(
            ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta)), cfg)
        total = integrate_finite(d.pdf, 0.0, 1.0, cfg).value
        worst = max(worst, abs(total - 1.0))
        n += 1
    return SuiteResult("dist-normalization", n, worst, 1e-10)


def _suite_dist_moments(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, p, q, eta in _DIST_PARAMS:
        d = ExtBetaDistribution(
            ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta)), cfg)
        for mom in (0.5, 1.0, 2.0, 3.0):
            direct = integrate_finite(
                lambda y: y ** mom * d.pdf(y), 0.0, 1.0, cfg).value
            worst = max(worst, _rel(d.moment(mom), direct))
            n += 1
        worst = max(worst, _rel(d.variance(),
                                d.moment(2.0) - d.mean() ** 2))
        n += 1
    return SuiteResult("dist-moments", n, worst, 1e-8)


def _suite_dist_mgf_charfn(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, p, q, eta in _DIST_PARAMS[:2]:
        d = ExtBetaDistribution(
            ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta)), cfg)
        for t in (-5.0, -1.0, 0.7, 5.0):
            direct = integrate_finite(
                lambda y: math.exp(t * y) * d.pdf(y), 0.0, 1.0, cfg).value
            worst = max(worst, _rel(d.mgf(t).value, direct))
            c = d.char_fn(t)
            dre = integrate_finite(
                lambda y: math.cos(t * y) * d.pdf(y), 0.0, 1.0, cfg).value
            dim = integrate_finite(
                lambda y: math.sin(t * y) * d.pdf(y), 0.0, 1.0, cfg).value
            worst = max(worst, abs(c.real - dre), abs(c.imag - dim))
            n += 3
    return SuiteResult("dist-mgf-charfn", n, worst, 1e-7)


def _suite_dist_cdf(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, p, q, eta in _DIST_PARAMS[:2]:
        d = ExtBetaDistribution(
            ExtBetaParams(xi1, xi2, p, q, KernelOrder(eta)), cfg)
        prev = -1.0
        for x in np.linspace(0.0, 1.0, 51):
            x = float(x)
            f = d.cdf(x)
            worst = max(worst, abs(f + d.reliability(x) - 1.0))
            if f < prev:
                worst = max(worst, 1.0)  # monotonicity violation
            prev = f
            n += 1
    return SuiteResult("dist-cdf-reliability", n, worst, 1e-12)


def _hyp_param_sets(rng, cases):
    sets = []
    for _ in range(max(2, cases // 2)):
        xi2 = rng.uniform(0.6, 2.0)
        xi3 = xi2 + rng.uniform(0.5, 2.0)
        xi1 = rng.uniform(0.5, 2.5)
        p = rng.uniform(0.0, 1.2)
        q = rng.uniform(0.0, 1.2)
        eta = rng.uniform(-0.4, 2.0)
        sets.append((xi1, xi2, xi3, p, q, eta))
    return sets


def _suite_hyp_series_integral(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, xi3, p, q, eta in _hyp_param_sets(rng, cases):
        order = KernelOrder(eta)
        gp = GaussParams(xi1, xi2, xi3, p, q, order)
        for x in (-0.7, 0.45):
            s = gauss_series(gp, x, cfg=cfg).value
            i = gauss_integral(gp, x, cfg)
            worst = max(worst, _rel(s, i))
            n += 1
        cp = ConfluentParams(xi2, xi3, p, q, order)
        for x in (-4.0, 2.5):
            s = confluent_series(cp, x, cfg=cfg).value
            i = confluent_integral(cp, x, cfg)
            a = confluent_integral_alt(cp, x, cfg)
            worst = max(worst, _rel(s, i), _rel(a, i))
            n += 2
    return SuiteResult("hyp-series-vs-integral", n, worst, 1e-7)


def _suite_hyp_derivatives(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, xi3, p, q, eta in _hyp_param_sets(rng, max(2, cases // 2)):
        order = KernelOrder(eta)
        gp = GaussParams(xi1, xi2, xi3, p, q, order)
        x, h = 0.3, 1e-5
        fd = (gauss_series(gp, x + h, cfg=cfg).value
              - gauss_series(gp, x - h, cfg=cfg).value) / (2 * h)
        worst = max(worst, _rel(gauss_derivative(gp, x, 1, cfg), fd))
        h2 = 1e-4
        fd2 = (gauss_series(gp, x + h2, cfg=cfg).value
               - 2 * gauss_series(gp, x, cfg=cfg).value
               + gauss_series(gp, x - h2, cfg=cfg).value) / h2 ** 2
        worst = max(worst, _rel(gauss_derivative(gp, x, 2, cfg), fd2))
        cp = ConfluentParams(xi2, xi3, p, q, order)
        fd = (confluent_series(cp, x + h, cfg=cfg).value
              - confluent_series(cp, x - h, cfg=cfg).value) / (2 * h)
        worst = max(worst, _rel(confluent_derivative(cp, x, 1, cfg), fd))
        n += 3
    return SuiteResult("hyp-derivatives", n, worst, 1e-6)


def _suite_hyp_transforms(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, xi3, p, q, eta in _hyp_param_sets(rng, cases):
        order = KernelOrder(eta)
        gp = GaussParams(xi1, xi2, xi3, p, q, order)
        for x in (-0.8, 0.35):
            lhs = gauss_series(gp, x, cfg=cfg).value
            worst = max(worst, _rel(lhs, gauss_transform_rhs(gp, x, cfg)))
            n += 1
        cp = ConfluentParams(xi2, xi3, p, q, order)
        for x in (-2.0, 1.5):
            lhs = confluent_series(cp, x, cfg=cfg).value
            worst = max(worst, _rel(lhs, confluent_transform_rhs(cp, x, cfg)))
            n += 1
    return SuiteResult("hyp-transforms", n, worst, 1e-7)


def _suite_hyp_generating(rng, cases, cfg) -> SuiteResult:
    worst = 0.0
    n = 0
    for xi1, xi2, xi3, p, q, eta in _hyp_param_sets(rng, max(2, cases // 2)):
        gp = GaussParams(xi1, xi2, xi3, p, q, KernelOrder(eta))
        for x, z in ((0.2, 0.4), (0.1, -0.5)):
            lhs = gauss_generating_lhs(gp, x, z, 120, cfg).value
            rhs = ((1.0 - z) ** (-xi1)
                   * gauss_series(gp, x / (1.0 - z), cfg=cfg).value)
            worst = max(worst, _rel(lhs, rhs))
            n += 1
    return SuiteResult("hyp-generating-function", n, worst, 1e-6)


def _suite_hyp_classical(rng, cases, cfg) -> SuiteResult:
    order = KernelOrder(0.5)
    gp = GaussParams(1.0, 1.0, 2.0, 0.0, 0.0, order)
    e1 = _rel(gauss_series(gp, 0.5, cfg=cfg).value, 2.0 * math.log(2.0))
    cp = ConfluentParams(1.0, 2.0, 0.0, 0.0, order)
    e2 = _rel(confluent_series(cp, 1.0, cfg=cfg).value, math.e - 1.0)
    return SuiteResult("hyp-classical-spot-values", 2, max(e1, e2), 1e-9)


_SUITES = [
    _suite_kernel_closed,
    _suite_kernel_paths,
    _suite_classical_reduction,
    _suite_lineage,
    _suite_representations,
    _suite_recurrence,
    _suite_summations,
    _suite_dist_normalization,
    _suite_dist_moments,
    _suite_dist_mgf_charfn,
    _suite_dist_cdf,
    _suite_hyp_series_integral,
    _suite_hyp_derivatives,
    _suite_hyp_transforms,
    _suite_hyp_generating,
    _suite_hyp_classical,
]


def run_verify(seed: int = 42, cases: int = 8, rel_tol: float = 1e-10,
               abs_tol: float = 1e-14,
               tolerance: float | None = None) -> tuple[str, bool]:
    """Run all identity suites; returns (report text, all passed)."""
    cfg = QuadConfig(rel_tol=rel_tol, abs_tol=abs_tol)
    rng = np.random.default_rng(seed)
    lines = [
        f"exbeta identity verification  (seed={seed}, cases={cases})",
        f"{'suite':<28}{'cases':>6}  {'max-err':>10}  {'tol':>8}  result",
    ]
    all_pass = True
    for suite in _SUITES:
        res = suite(rng, cases, cfg)
        ok = res.passed(tolerance)
        all_pass &= ok
        tol = res.tol if tolerance is None else tolerance
        lines.append(f"{res.name:<28}{res.cases:>6}  {res.max_err:>10.3e}  "
                     f"{tol:>8.1e}  {'pass' if ok else 'FAIL'}")
    lines.append(f"{'ALL PASS' if all_pass else 'FAILURES PRESENT'}")
    return "\n".join(lines) + "\n", all_pass
