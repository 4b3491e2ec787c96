"""Command-line front end.

Subcommands: kernel (point/grid evaluation of the kernel), beta (extended
beta and its integral representations), dist (distribution queries and
sampling), hyp (extended hypergeometric functions) and verify (the full
identity suite).

Output is JSON-lines by default or CSV via --format, one record per input
point, every float serialized with 17 significant digits.  stdout carries
data, stderr diagnostics.  Exit codes: 0 all records ok, 1 malformed
flags, 2 any domain error, 3 any nonconvergence or cancellation loss
(also used when verify reports a failing suite).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .distribution import ExtBetaDistribution
from .errors import CancellationLoss, DomainError, NonConvergence, NonFinite
from .extbeta import ExtBetaParams, _ext_beta_result, ext_beta_rep
from .hypergeometric import (ConfluentParams, GaussParams, confluent_integral,
                             confluent_series, gauss_integral, gauss_series)
from .kernel import (TAU, KernelOrder, _integral_rep_result,
                     kernel_closed_form, kernel_series)
from .quadrature import QuadConfig
from .verify import run_verify


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the CLI contract wants 1."""

    def error(self, message: str):  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


@dataclass
class OutputRecord:
    inputs: dict = field(default_factory=dict)
    value: object = None  # float, or (re, im) pair for complex results
    error_estimate: float = 0.0
    status: str = "ok"


def _f17(x) -> str:
    return f"{float(x):.17g}"


def _fmt_input(v) -> str:
    if isinstance(v, float):
        return _f17(v)
    return str(v)


def _jsonl(rec: OutputRecord) -> str:
    parts = ['{"inputs": {']
    parts.append(", ".join(f'"{k}": {json.dumps(_fmt_input(v)) if isinstance(v, str) else _fmt_input(v)}'
                           for k, v in rec.inputs.items()))
    parts.append("}")
    if rec.status == "ok":
        if isinstance(rec.value, tuple):
            parts.append(f', "value": [{_f17(rec.value[0])}, {_f17(rec.value[1])}]')
        else:
            parts.append(f', "value": {_f17(rec.value)}')
    parts.append(f', "error_estimate": {_f17(rec.error_estimate)}')
    parts.append(f', "status": "{rec.status}"}}')
    return "".join(parts)


def _csv(records: list[OutputRecord]) -> list[str]:
    if not records:
        return []
    keys = list(records[0].inputs.keys())
    complex_out = any(isinstance(r.value, tuple) for r in records)
    header = keys + (["value", "value_im"] if complex_out else ["value"]) \
        + ["error_estimate", "status"]
    lines = [",".join(header)]
    for r in records:
        row = [_fmt_input(r.inputs.get(k, "")) for k in keys]
        if r.status != "ok":
            row += ["", ""] if complex_out else [""]
        elif isinstance(r.value, tuple):
            row += [_f17(r.value[0]), _f17(r.value[1])]
        else:
            row += [_f17(r.value)] + ([""] if complex_out else [])
        row += [_f17(r.error_estimate), r.status]
        lines.append(",".join(row))
    return lines


def _parse_grid(spec: str) -> list[float]:
    try:
        start_s, stop_s, count_s = spec.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise SystemExit(1)
    if count < 1:
        raise SystemExit(1)
    return [float(v) for v in np.linspace(start, stop, count)]


def _status_of(exc: Exception) -> str:
    if isinstance(exc, DomainError):
        return "domain_error"
    if isinstance(exc, CancellationLoss):
        return "cancellation_loss"
    if isinstance(exc, (NonConvergence, NonFinite)):
        return "nonconvergent"
    raise exc


def _record(inputs, fn) -> OutputRecord:
    rec = OutputRecord(inputs=inputs)
    try:
        rec.value, rec.error_estimate = fn()
    except (DomainError, CancellationLoss, NonConvergence, NonFinite) as exc:
        rec.status = _status_of(exc)
        print(f"exbeta: {rec.status}: {exc}", file=sys.stderr)
    return rec


def _exit_code(records: list[OutputRecord]) -> int:
    statuses = {r.status for r in records}
    if "domain_error" in statuses:
        return 2
    if statuses & {"nonconvergent", "cancellation_loss"}:
        return 3
    return 0


def _emit(records: list[OutputRecord], args) -> None:
    if args.format == "csv":
        lines = _csv(records)
    else:
        lines = [_jsonl(r) for r in records]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quad_config(args) -> QuadConfig:
    return QuadConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_kernel(args) -> int:
    cfg = _quad_config(args)
    ts = _parse_grid(args.t_grid) if args.t_grid else [args.t]
    records = []
    for t in ts:
        def evaluate(t=t):
            order = KernelOrder(args.eta)
            cf = kernel_closed_form(order, t)
            if cf is not None:
                return cf, 0.0
            if t >= -TAU or not order.has_integral_rep:
                sr = kernel_series(order, t)
                return sr.value, sr.tail_estimate
            res = _integral_rep_result(order, t, cfg)
            return res.value, res.error_estimate

        records.append(_record({"eta": args.eta, "t": t}, evaluate))
    _emit(records, args)
    return _exit_code(records)


def _beta_params(args) -> ExtBetaParams:
    return ExtBetaParams(args.xi1, args.xi2, args.p, args.q,
                         KernelOrder(args.eta))


def _cmd_beta(args) -> int:
    cfg = _quad_config(args)
    inputs = {"xi1": args.xi1, "xi2": args.xi2, "p": args.p, "q": args.q,
              "eta": args.eta, "rep": args.rep}
    if args.rep == "affine":
        inputs["a"] = args.affine_a
        inputs["c"] = args.affine_c

    def evaluate():
        params = _beta_params(args)
        if args.rep == "direct":
            res = _ext_beta_result(params, cfg)
            return res.value, res.error_estimate
        if args.rep == "affine":
            v = ext_beta_rep(params, "affine", cfg,
                             a=args.affine_a, c=args.affine_c)
        else:
            v = ext_beta_rep(params, args.rep, cfg)
        return v, 0.0

    records = [_record(inputs, evaluate)]
    _emit(records, args)
    return _exit_code(records)


def _cmd_dist(args) -> int:
    cfg = _quad_config(args)
    base = {"action": args.action, "xi1": args.xi1, "xi2": args.xi2,
            "p": args.p, "q": args.q, "eta": args.eta}
    records: list[OutputRecord] = []
    try:
        dist = ExtBetaDistribution(_beta_params(args), cfg)
    except (DomainError, CancellationLoss, NonConvergence, NonFinite) as exc:
        rec = OutputRecord(inputs=base, status=_status_of(exc))
        print(f"exbeta: {rec.status}: {exc}", file=sys.stderr)
        _emit([rec], args)
        return _exit_code([rec])

    action = args.action
    if action in ("pdf", "cdf", "reliability"):
        if args.x is None and args.x_grid is None:
            print("exbeta: dist {pdf,cdf,reliability} need --x or --x-grid",
                  file=sys.stderr)
            return 1
        xs = _parse_grid(args.x_grid) if args.x_grid else [args.x]
        fn = {"pdf": dist.pdf, "cdf": dist.cdf,
              "reliability": dist.reliability}[action]
        for x in xs:
            records.append(_record({**base, "x": x},
                                   lambda x=x: (fn(x), 0.0)))
    elif action == "moment":
        records.append(_record({**base, "n": args.n},
                               lambda: (dist.moment(args.n), 0.0)))
    elif action == "mean":
        records.append(_record(base, lambda: (dist.mean(), 0.0)))
    elif action == "variance":
        records.append(_record(base, lambda: (dist.variance(), 0.0)))
    elif action == "cv":
        records.append(_record(base, lambda: (dist.coeff_variation(), 0.0)))
    elif action in ("mgf", "charfn"):
        if args.t is None:
            print("exbeta: dist mgf/charfn need --t", file=sys.stderr)
            return 1
        terms = args.terms
        if action == "mgf":
            def evaluate():
                sr = dist.mgf(args.t, terms)
                return sr.value, sr.tail_estimate
            records.append(_record({**base, "t": args.t}, evaluate))
        else:
            def evaluate():
                c = dist.char_fn(args.t, terms)
                return (c.real, c.imag), 0.0
            records.append(_record({**base, "t": args.t}, evaluate))
    elif action == "sample":
        count = int(args.n) if args.n is not None else 10
        def stream():
            return dist.sample(count, args.seed), 0.0
        try:
            values, _ = stream()
        except (DomainError, CancellationLoss, NonConvergence, NonFinite) as exc:
            rec = OutputRecord(inputs=base, status=_status_of(exc))
            print(f"exbeta: {rec.status}: {exc}", file=sys.stderr)
            records.append(rec)
            _emit(records, args)
            return _exit_code(records)
        for i, v in enumerate(values):
            records.append(OutputRecord(
                inputs={**base, "seed": args.seed, "index": i},
                value=float(v)))
    _emit(records, args)
    return _exit_code(records)


def _cmd_hyp(args) -> int:
    cfg = _quad_config(args)
    records: list[OutputRecord] = []
    if args.kind == "gauss":
        inputs = {"kind": "gauss", "xi1": args.xi1, "xi2": args.xi2,
                  "xi3": args.xi3, "p": args.p, "q": args.q,
                  "eta": args.eta, "x": args.x, "method": args.method}

        def evaluate():
            if args.method == "series" and not (abs(args.x) < 1.0):
                raise DomainError(f"gauss series needs |x| < 1, got {args.x}")
            gp = GaussParams(args.xi1, args.xi2, args.xi3, args.p, args.q,
                             KernelOrder(args.eta))
            if args.method == "series":
                sr = gauss_series(gp, args.x, args.max_terms, cfg)
                return sr.value, sr.tail_estimate
            return gauss_integral(gp, args.x, cfg), 0.0
    else:
        inputs = {"kind": "confluent", "xi2": args.xi2, "xi3": args.xi3,
                  "p": args.p, "q": args.q, "eta": args.eta, "x": args.x,
                  "method": args.method}

        def evaluate():
            cp = ConfluentParams(args.xi2, args.xi3, args.p, args.q,
                                 KernelOrder(args.eta))
            if args.method == "series":
                sr = confluent_series(cp, args.x, args.max_terms, cfg)
                return sr.value, sr.tail_estimate
            return confluent_integral(cp, args.x, cfg), 0.0

    records.append(_record(inputs, evaluate))
    _emit(records, args)
    return _exit_code(records)


def _cmd_verify(args) -> int:
    report, ok = run_verify(seed=args.seed, cases=args.cases,
                            rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                            tolerance=args.tolerance)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report)
    else:
        sys.stdout.write(report)
    return 0 if ok else 3


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="exbeta", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--rel-tol", type=float,
                       default=float(os.environ.get("EXBETA_REL_TOL", "1e-10")))
        p.add_argument("--abs-tol", type=float, default=1e-14)
        p.add_argument("--max-terms", type=int, default=500)
        p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
        p.add_argument("--out", default=None, help="write records to PATH")

    k = sub.add_parser("kernel", help="evaluate the kernel S_eta(t)")
    k.add_argument("--eta", type=float, required=True)
    g = k.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=float)
    g.add_argument("--t-grid", help="start:stop:count")
    common(k)
    k.set_defaults(func=_cmd_kernel)

    b = sub.add_parser("beta", help="extended beta function")
    for flag in ("--xi1", "--xi2", "--p", "--q", "--eta"):
        b.add_argument(flag, type=float, required=True)
    b.add_argument("--rep", choices=("direct", "trig", "semiinf",
                                     "symmetric", "affine"), default="direct")
    b.add_argument("--affine-a", type=float, default=0.0)
    b.add_argument("--affine-c", type=float, default=1.0)
    common(b)
    b.set_defaults(func=_cmd_beta)

    d = sub.add_parser("dist", help="extended beta distribution")
    d.add_argument("action", choices=("pdf", "cdf", "reliability", "moment",
                                      "mean", "variance", "cv", "mgf",
                                      "charfn", "sample"))
    for flag in ("--xi1", "--xi2", "--p", "--q", "--eta"):
        d.add_argument(flag, type=float, required=True)
    d.add_argument("--x", type=float)
    d.add_argument("--x-grid", help="start:stop:count")
    d.add_argument("--n", type=float, help="moment order, or sample count")
    d.add_argument("--t", type=float, help="mgf/charfn argument")
    d.add_argument("--terms", type=int, default=40)
    d.add_argument("--seed", type=int, default=0)
    common(d)
    d.set_defaults(func=_cmd_dist)

    h = sub.add_parser("hyp", help="extended hypergeometric functions")
    h.add_argument("kind", choices=("gauss", "confluent"))
    h.add_argument("--xi1", type=float, default=1.0)
    h.add_argument("--xi2", type=float, required=True)
    h.add_argument("--xi3", type=float, required=True)
    h.add_argument("--p", type=float, required=True)
    h.add_argument("--q", type=float, required=True)
    h.add_argument("--eta", type=float, required=True)
    h.add_argument("--x", type=float, required=True)
    h.add_argument("--method", choices=("series", "integral"),
                   default="series")
    common(h)
    h.set_defaults(func=_cmd_hyp)

    v = sub.add_parser("verify", help="run the identity suites")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--cases", type=int, default=8)
    v.add_argument("--tolerance", type=float, default=None,
                   help="override every suite tolerance (testing hook)")
    common(v)
    v.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
