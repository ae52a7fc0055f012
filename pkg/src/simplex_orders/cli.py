"""Command line front end.

    simplex-orders analytics {restrictiveness,cdf,joint-cdf,tail,moment,variance,hr-upper,f,volume}
    simplex-orders mc {restrictiveness,cdf,moment,hr-upper,joint-cdf}
    simplex-orders test {order,max-mean,table1}

Exit codes: 0 success, 2 usage or domain error, 3 malformed input data.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import identities, max_coordinate as mx, mc_oracle, rng_test
from .errors import DataError, SimplexError
from .simplex_core import SimplexVector, joint_cdf, simplex_volume, tail_prob
from .stochastic_orders import OrderKind, hr_upper_prob, restrictiveness_constant

EXIT_USAGE = 2
EXIT_DATA = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def fmt(x: float) -> str:
    """15 significant digits, '.' separator, independent of locale."""
    return format(float(x), ".15g")


def fmt_exact(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator} ({fmt(q)})"


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _order(text: str) -> OrderKind:
    try:
        return OrderKind.parse(text)
    except SimplexError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact_size(u: float) -> Fraction:
    # print "1/4", not the binary expansion, for sizes typed as short decimals
    return Fraction(repr(u))


# --- analytics -------------------------------------------------------------


def _analytics(args) -> str:
    cmd = args.what
    if cmd == "restrictiveness":
        return fmt_exact(restrictiveness_constant(args.order, args.n))
    if cmd == "cdf":
        # beyond ~100 coordinates even the shorter alternating sum loses digits
        method = "exact" if args.n > 100 else "auto"
        return fmt(mx.whitworth_cdf(mx.MaxDistParams(args.n, args.u), args.b, method))
    if cmd == "joint-cdf":
        return fmt(joint_cdf(args.theta, len(args.theta), args.u))
    if cmd == "tail":
        return fmt(tail_prob(args.theta, len(args.theta), args.u))
    if cmd == "moment":
        return fmt_exact(mx.moment_exact(args.n, args.t, _exact_size(args.u)))
    if cmd == "variance":
        return fmt_exact(mx.variance_exact(args.n, _exact_size(args.u)))
    if cmd == "hr-upper":
        return fmt(hr_upper_prob(SimplexVector(tuple(args.theta), args.u)))
    if cmd == "f":
        return fmt_exact(identities.f_nt(args.n, args.t))
    if cmd == "volume":
        return fmt(simplex_volume(args.n, args.u))
    raise _UsageError(f"unknown analytics command {cmd}")


# --- Monte Carlo -----------------------------------------------------------


def _estimate_line(est: mc_oracle.MCEstimate, target: str, label: str = "") -> str:
    prefix = f"{label} " if label else ""
    return (
        f"{prefix}estimate={fmt(est.estimate)} std_error={fmt(est.std_error)} "
        f"samples={est.samples} seed={est.seed} target={target}"
    )


def _mc(args) -> str:
    cmd = args.what
    if cmd == "restrictiveness":
        est = mc_oracle.mc_restrictiveness(args.order, args.n, args.samples, args.seed, args.threads)
        return _estimate_line(est, fmt_exact(restrictiveness_constant(args.order, args.n)))
    if cmd == "moment":
        est = mc_oracle.mc_moment(args.n, args.u, args.t, args.samples, args.seed, args.threads)
        return _estimate_line(est, fmt_exact(mx.moment_exact(args.n, args.t, _exact_size(args.u))))
    if cmd == "cdf":
        params = mx.MaxDistParams(args.n, args.u)
        ests = mc_oracle.mc_max_cdf(args.n, args.u, args.b, args.samples, args.seed, args.threads)
        return "\n".join(
            _estimate_line(e, fmt(mx.whitworth_cdf(params, b)), f"b={fmt(b)}") for b, e in zip(args.b, ests)
        )
    if cmd == "hr-upper":
        theta = SimplexVector(tuple(args.theta), args.u)
        est = mc_oracle.mc_hr_upper_prob(theta.coords, args.u, args.samples, args.seed, args.threads)
        return _estimate_line(est, fmt(hr_upper_prob(theta)))
    if cmd == "joint-cdf":
        est = mc_oracle.mc_joint_cdf(args.theta, args.u, args.samples, args.seed, args.threads)
        return _estimate_line(est, fmt(joint_cdf(args.theta, len(args.theta), args.u)))
    raise _UsageError(f"unknown mc command {cmd}")


# --- randomness tests ------------------------------------------------------


def _source(args) -> rng_test.StreamSource:
    if args.input is not None:
        if args.generator is not None:
            raise _UsageError("--input and --generator are mutually exclusive")
        return rng_test.StreamSource.file(args.input, binary=args.binary)
    if args.generator is None:
        raise _UsageError("one of --input or --generator is required")
    if args.seed is None:
        raise _UsageError("--generator needs an explicit --seed")
    if args.generator == "ar":
        if args.alpha is None:
            raise _UsageError("--generator ar needs --alpha")
        return rng_test.StreamSource.ar(args.alpha, args.seed)
    return rng_test.StreamSource.uniform(args.seed)


def _render_report(d: dict, header: list[str], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(d)
    if fmt_name == "csv":
        return rng_test._csv([header, [d[k] for k in header]]).rstrip("\n")
    return "\n".join(f"{k}: {fmt(v) if isinstance(v, float) else v}" for k, v in d.items())


def _test(args) -> str:
    cmd = args.what
    if cmd == "order":
        report = rng_test.run_order_test(_source(args), args.order, args.n, args.pairs)
        return _render_report(report.to_dict(), report.csv_header(), args.format)
    if cmd == "max-mean":
        report = rng_test.max_mean_test(_source(args), args.n, args.groups)
        d = report.to_dict()
        return _render_report(d, list(d), args.format)
    if cmd == "table1":
        summary = rng_test.table1_experiment(args.reps, args.n, args.pairs, args.alpha, args.seed, args.threads)
        if args.format == "json":
            return summary.to_json()
        if args.format == "csv":
            return summary.to_csv().rstrip("\n")
        lines = [f"{'model':<15} {'order':<5} {'mean p':>8} {'std p':>8}  p0"]
        for r in summary.rows:
            lines.append(
                f"{r.model:<15} {r.order.value:<5} {r.mean_p_value:8.3f} {r.std_p_value:8.3f}  "
                f"{r.p0.numerator}/{r.p0.denominator}"
            )
        return "\n".join(lines)
    raise _UsageError(f"unknown test command {cmd}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplex-orders", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    an = top.add_parser("analytics", help="exact and closed-form values")
    an_sub = an.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = an_sub.add_parser("restrictiveness")
    p.add_argument("--order", type=_order, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p = an_sub.add_parser("cdf", help="CDF of the largest coordinate")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--u", type=float, default=1.0)
    for name in ("joint-cdf", "tail", "hr-upper"):
        p = an_sub.add_parser(name)
        p.add_argument("--theta", type=_floats, required=True, help="comma-separated coordinates")
        p.add_argument("--u", type=float, default=1.0)
    p = an_sub.add_parser("moment")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--u", type=float, default=1.0)
    p = an_sub.add_parser("variance")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--u", type=float, default=1.0)
    p = an_sub.add_parser("f", help="f(n, t)")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--t", type=int, required=True)
    p = an_sub.add_parser("volume")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--u", type=float, default=1.0)

    mc = top.add_parser("mc", help="Monte Carlo estimates next to their analytic targets")
    mc_sub = mc.add_subparsers(dest="what", required=True, parser_class=_Parser)

    def mc_common(q):
        q.add_argument("--samples", type=_positive_int, default=1_000_000)
        q.add_argument("--seed", type=_seed, required=True)
        q.add_argument("--threads", type=_positive_int, default=1)

    p = mc_sub.add_parser("restrictiveness")
    p.add_argument("--order", type=_order, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    mc_common(p)
    p = mc_sub.add_parser("moment")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--u", type=float, default=1.0)
    mc_common(p)
    p = mc_sub.add_parser("cdf")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--b", type=_floats, required=True, help="comma-separated grid")
    p.add_argument("--u", type=float, default=1.0)
    mc_common(p)
    for name in ("hr-upper", "joint-cdf"):
        p = mc_sub.add_parser(name)
        p.add_argument("--theta", type=_floats, required=True)
        p.add_argument("--u", type=float, default=1.0)
        mc_common(p)

    te = top.add_parser("test", help="randomness tests")
    te_sub = te.add_subparsers(dest="what", required=True, parser_class=_Parser)

    def stream_opts(q):
        q.add_argument("--input", help="text file (one number per line) or binary doubles")
        q.add_argument("--binary", action="store_true", help="--input holds little-endian doubles")
        q.add_argument("--generator", choices=("uniform", "ar"))
        q.add_argument("--alpha", type=float)
        q.add_argument("--seed", type=_seed)
        q.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = te_sub.add_parser("order", help="stochastic-order binomial test")
    p.add_argument("--order", type=_order, required=True)
    p.add_argument("--n", type=_positive_int, default=2, help="numbers per group")
    p.add_argument("--pairs", type=_positive_int, required=True)
    stream_opts(p)
    p = te_sub.add_parser("max-mean", help="mean of the largest coordinate")
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--groups", type=_positive_int, required=True)
    stream_opts(p)
    p = te_sub.add_parser("table1", help="uniform vs autoregressive experiment")
    p.add_argument("--reps", type=_positive_int, default=100)
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--pairs", type=_positive_int, default=10_000)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return parser


_HANDLERS = {"analytics": _analytics, "mc": _mc, "test": _test}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = _HANDLERS[args.group](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SimplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
