"""Command-line front end.

Exit status: 0 on success, 2 on usage errors, 3 when the requested method is
infeasible under the enumeration cap and only bounds were emitted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import combinatorics, entropy, priors, sweep
from .domain import AffineSpec, DiscreteDistribution, IntegerInterval
from .errors import AffineLeakError, DomainTooLarge

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

SWEEP_COLUMNS = ["x", "beta", "gamma", "branch", "vulnerability", "entropy_bits"]
SPIKE_COLUMNS = ["weight", "lower_bits", "naive_bits", "upper_bits"]
BENCH_COLUMNS = ["p", "method", "seconds", "status"]
ANALYZE_COLUMNS = ["method", "vulnerability", "entropy_bits", "n_outputs"]
BOUNDS_COLUMNS = ["lower_bits", "upper_bits", "prior_entropy_y", "prior_entropy_z", "n_outputs"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument types -------------------------------------------------------------

def parse_range(text: str) -> IntegerInterval:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return IntegerInterval(int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r} (expected lo:hi with lo <= hi)") from None


def parse_poly(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed polynomial {text!r} (expected c0,c1,...)") from None


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer list {text!r}") from None


def parse_prior(text: str, support: IntegerInterval) -> DiscreteDistribution:
    """Prior source: ``uniform``, ``spiked:CENTER:P/Q`` or ``file:PATH``."""
    kind, _, rest = text.partition(":")
    if kind == "uniform" and not rest:
        return priors.uniform_prior(support)
    if kind == "spiked":
        center, sep, weight = rest.partition(":")
        try:
            if not sep:
                raise ValueError
            center_value = int(center)
            weight_value = priors.parse_rational(weight)
        except ValueError:
            raise UsageError(f"malformed prior {text!r} (expected spiked:CENTER:P/Q)") from None
        return priors.spiked_prior(support, center_value, weight_value)
    if kind == "file" and rest:
        return priors.load_distribution(rest, support)
    raise UsageError(f"unknown prior {text!r} (expected uniform, spiked:C:W or file:PATH)")


# -- parser -------------------------------------------------------------------

_VALUE_FLAGS = {
    "--alpha", "--beta", "--gamma", "--y-range", "--z-range", "--x-range",
    "--alpha-poly", "--beta-poly", "--gamma-poly", "--spike-center", "--cap",
}


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--flag -6,3`` as ``--flag=-6,3`` so negatives survive argparse."""
    out = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap on input pairs (default 10^8)")


def _add_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=int, default=0, help="constant term (default 0)")
    p.add_argument("--beta", type=int, required=True, help="coefficient of the target input y")
    p.add_argument("--gamma", type=int, required=True, help="coefficient of the spectator input z")
    p.add_argument("--y-range", type=parse_range, required=True, help="domain of y as LO:HI")
    p.add_argument("--z-range", type=parse_range, required=True, help="domain of z as LO:HI")
    p.add_argument("--prior-y", default="uniform", help="uniform, spiked:C:P/Q or file:PATH")
    p.add_argument("--prior-z", default="uniform", help="uniform, spiked:C:P/Q or file:PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="affine-leak", description="Min-entropy leakage of three-party affine computations.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    analyze = sub.add_parser("analyze", help="leakage of one affine computation")
    _add_spec(analyze)
    analyze.add_argument("--method", choices=["auto", "closed", "simplified", "naive"], default="auto")
    _add_common(analyze)

    sw = sub.add_parser("sweep", help="closed-form entropy over a range of attacker inputs")
    sw.add_argument("--alpha-poly", type=parse_poly, default=(0,), help="c0,c1,... in x (default 0)")
    sw.add_argument("--beta-poly", type=parse_poly, required=True, help="c0,c1,... in x")
    sw.add_argument("--gamma-poly", type=parse_poly, required=True, help="c0,c1,... in x")
    sw.add_argument("--x-range", type=parse_range, required=True, help="attacker inputs as LO:HI")
    sw.add_argument("--y-range", type=parse_range, required=True)
    sw.add_argument("--z-range", type=parse_range, required=True)
    _add_common(sw)

    bounds = sub.add_parser("bounds", help="entropy bounds, optionally over spike weights")
    _add_spec(bounds)
    bounds.add_argument("--spike-weights", type=int, default=None,
                        help="sweep K weights k/K, k=1..K, for a spiked Z prior")
    bounds.add_argument("--spike-center", type=int, default=None, help="spike location (default: low end of the z range)")
    _add_common(bounds)

    bench = sub.add_parser("bench", help="time the three methods on the attacker sweep")
    bench.add_argument("--p-list", type=parse_int_list, default=[0, 1, 2, 3, 4, 12], help="exponents p; inputs range over 0..5**p")
    bench.add_argument("--methods", default="naive,simplified,closed", help="comma-separated subset of naive,simplified,closed")
    bench.add_argument("--time-limit", type=float, default=60.0, help="seconds per cell (default 60)")
    _add_common(bench)
    return parser


def _resolve_cap(arg: Optional[int]) -> int:
    if arg is not None:
        if arg < 1:
            raise UsageError(f"--cap must be positive, got {arg}")
        return arg
    env = os.environ.get("AFFINE_LEAK_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"AFFINE_LEAK_CAP is not an integer: {env!r}") from None
    return combinatorics.DEFAULT_CAP


# -- output -------------------------------------------------------------------

def _fmt_float(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _fmt_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _write_csv(out, columns, rows) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)


def _write_text(out, mapping: dict) -> None:
    for key, value in mapping.items():
        out.write(f"{key}: {value}\n")


# -- subcommands ----------------------------------------------------------------

def _spec_from(args) -> AffineSpec:
    return AffineSpec(args.alpha, args.beta, args.gamma, args.y_range, args.z_range)


def _spec_dict(spec: AffineSpec) -> dict:
    return {
        "alpha": spec.alpha, "beta": spec.beta, "gamma": spec.gamma,
        "y_range": str(spec.y_domain), "z_range": str(spec.z_domain),
    }


def _bounds_or_none(spec, prior_y, prior_z):
    if spec.beta == 0 or spec.gamma == 0:
        return None
    return entropy.entropy_bounds(spec, prior_y, prior_z)


def cmd_analyze(args, out, err) -> int:
    spec = _spec_from(args)
    prior_y = parse_prior(args.prior_y, spec.y_domain)
    prior_z = parse_prior(args.prior_z, spec.z_domain)
    cap = _resolve_cap(args.cap)
    uniform = prior_y.is_uniform() and prior_z.is_uniform()
    if args.method in ("closed", "simplified") and not uniform:
        raise UsageError(f"--method {args.method} requires uniform priors")
    bounds = _bounds_or_none(spec, prior_y, prior_z)
    try:
        report = entropy.analyze(spec, prior_y, prior_z, args.method, cap)
    except DomainTooLarge as exc:
        err.write(f"affine-leak: {exc}; emitting bounds only\n")
        if bounds is None:
            err.write("affine-leak: bounds need non-zero beta and gamma\n")
            return EXIT_INFEASIBLE
        _emit_bounds(args.format, spec, bounds, out)
        return EXIT_INFEASIBLE

    if args.format == "json":
        payload = {"spec": _spec_dict(spec), **report.as_dict()}
        payload["bounds"] = bounds.as_dict() if bounds else None
        json.dump(payload, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        _write_csv(out, ANALYZE_COLUMNS, [[
            report.method.value, report.vulnerability_text(),
            _fmt_float(report.entropy_bits),
            "" if report.output_count is None else report.output_count,
        ]])
    else:
        _write_text(out, {
            "method": report.method.value,
            "vulnerability": report.vulnerability_text(),
            "entropy_bits": f"{report.entropy_bits:.12g}",
            "n_outputs": report.output_count,
        })
        if bounds:
            _write_text(out, {"lower_bits": f"{bounds.lower:.12g}", "upper_bits": f"{bounds.upper:.12g}"})
    return EXIT_OK


def _emit_bounds(fmt, spec, bounds, out) -> None:
    if fmt == "json":
        json.dump({"spec": _spec_dict(spec), "bounds": bounds.as_dict()}, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        _write_csv(out, BOUNDS_COLUMNS, [[
            _fmt_float(bounds.lower), _fmt_float(bounds.upper),
            _fmt_float(bounds.prior_entropy_y), _fmt_float(bounds.prior_entropy_z),
            bounds.output_count,
        ]])
    else:
        _write_text(out, {
            "lower_bits": f"{bounds.lower:.12g}",
            "upper_bits": f"{bounds.upper:.12g}",
            "prior_entropy_y": f"{bounds.prior_entropy_y:.12g}",
            "prior_entropy_z": f"{bounds.prior_entropy_z:.12g}",
            "n_outputs": bounds.output_count,
        })


def cmd_sweep(args, out, err) -> int:
    poly = sweep.PolynomialSpec(args.alpha_poly, args.beta_poly, args.gamma_poly)
    rows = sweep.sweep_attacker_input(poly, args.x_range, args.y_range, args.z_range)
    if args.format == "json":
        json.dump([
            {"x": r.x, "beta": r.beta, "gamma": r.gamma, "branch": r.branch.value,
             "vulnerability": r.vulnerability_text, "entropy_bits": r.entropy_bits}
            for r in rows
        ], out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        _write_csv(out, SWEEP_COLUMNS, [
            [r.x, r.beta, r.gamma, r.branch.value, r.vulnerability_text, _fmt_float(r.entropy_bits)]
            for r in rows
        ])
    else:
        for r in rows:
            out.write(f"x={r.x} beta={r.beta} gamma={r.gamma} branch={r.branch.value} "
                      f"H={r.entropy_bits:.12g}\n")
    return EXIT_OK


def cmd_bounds(args, out, err) -> int:
    spec = _spec_from(args)
    if spec.beta == 0 or spec.gamma == 0:
        raise UsageError("bounds need non-zero --beta and --gamma")
    cap = _resolve_cap(args.cap)
    if args.spike_weights is None:
        prior_y = parse_prior(args.prior_y, spec.y_domain)
        prior_z = parse_prior(args.prior_z, spec.z_domain)
        _emit_bounds(args.format, spec, entropy.entropy_bounds(spec, prior_y, prior_z), out)
        return EXIT_OK
    if args.spike_weights < 1:
        raise UsageError(f"--spike-weights must be positive, got {args.spike_weights}")
    center = spec.z_domain.lo if args.spike_center is None else args.spike_center
    weights = sweep.equally_spaced_weights(args.spike_weights)
    rows = sweep.sweep_spike_weight(spec, weights, center, cap)
    if args.format == "json":
        json.dump([
            {"weight": _fmt_fraction(r.weight), "lower_bits": r.lower,
             "naive_bits": r.naive_bits, "upper_bits": r.upper}
            for r in rows
        ], out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        _write_csv(out, SPIKE_COLUMNS, [
            [_fmt_fraction(r.weight), _fmt_float(r.lower), _fmt_float(r.naive_bits), _fmt_float(r.upper)]
            for r in rows
        ])
    else:
        for r in rows:
            naive = "-" if r.naive_bits is None else f"{r.naive_bits:.9g}"
            out.write(f"w={_fmt_fraction(r.weight)} lower={r.lower:.9g} naive={naive} upper={r.upper:.9g}\n")
    return EXIT_OK


def cmd_bench(args, out, err) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in sweep.BENCH_METHODS]
    if unknown:
        raise UsageError(f"unknown benchmark method {unknown[0]!r}")
    if args.time_limit <= 0:
        raise UsageError(f"--time-limit must be positive, got {args.time_limit}")
    rows = sweep.run_benchmark(args.p_list, methods, args.time_limit, cap=_resolve_cap(args.cap))
    if args.format == "json":
        json.dump([
            {"p": r.p, "method": r.method, "seconds": r.seconds, "status": r.status.value}
            for r in rows
        ], out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        _write_csv(out, BENCH_COLUMNS, [[r.p, r.method, _fmt_float(r.seconds), r.status.value] for r in rows])
    else:
        for r in rows:
            shown = f"{r.seconds:.3g}s" if r.seconds is not None else r.status.value
            out.write(f"p={r.p:<3} {r.method:<11} {shown}\n")
    return EXIT_OK


_COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep, "bounds": cmd_bounds, "bench": cmd_bench}


def run_cli(argv: Sequence[str], out=None, err=None) -> int:
    """Run one invocation, writing to ``out``/``err``; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        return _COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"affine-leak: error: {exc}\n")
        return EXIT_USAGE
    except AffineLeakError as exc:
        err.write(f"affine-leak: error: {exc}\n")
        return EXIT_USAGE


def run_captured(argv: Sequence[str]) -> tuple[int, str, str]:
    """Convenience for tests and notebooks: ``(status, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    status = run_cli(argv, out, err)
    return status, out.getvalue(), err.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_cli(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
