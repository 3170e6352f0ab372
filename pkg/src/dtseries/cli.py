"""Command-line front end.

Subcommands: check (numeric hypotheses), classes (contributing curve
classes), series (the assembled q-series), oracle (localization integrals),
verify (oracle vs. Euler-product coefficients).  Output is deterministic
for a fixed configuration and seed: timing goes to stderr, never stdout.

Exit codes: 0 success, 2 hypothesis checks failed, 3 verification
mismatch, 4 invalid input.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .classenum import enumerate_contributions
from .fixtures import FixtureError, get_fixture
from .geometry import delta_invariant, run_all_checks, virtual_dimension, ChernVector
from .localization import OracleError, co_series, trace_terms
from .qseries import (
    CONVENTION_MINUS,
    CONVENTION_PLUS,
    dt_series,
    euler_product,
    frac_str,
    parse_frac,
)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 2
EXIT_MISMATCH = 3
EXIT_BAD_INPUT = 4

NMAX_CEILING = 6


class CliError(ValueError):
    """Invalid command-line input (maps to exit code 4)."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; remap to the bad-input code
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


@dataclass
class RunConfig:
    command: str
    fixture: str
    gamma_spec: str | None = None
    order: int = 8
    window: int = 2
    n_max: int = 4
    k: int | None = None
    seed: int = 0
    fmt: str = "pretty"
    override_checks: bool = False
    bundle: str = "L"
    trace: str | None = None

    def validate(self):
        if self.order < 1:
            raise CliError("--order must be at least 1")
        if self.window < 0:
            raise CliError("--window must be nonnegative")
        if not (0 <= self.n_max <= NMAX_CEILING):
            raise CliError(f"--nmax must lie in 0..{NMAX_CEILING}")
        if self.fmt not in ("pretty", "json", "csv"):
            raise CliError(f"unknown format {self.fmt!r}")
        return self


def build_parser():
    parser = _Parser(prog="dtseries", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gamma=False, series_flags=False, oracle_flags=False):
        p.add_argument("--fixture", required=True, help="builtin fixture name or JSON file")
        p.add_argument("--format", default="pretty", choices=("pretty", "json", "csv"))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--k", type=int, default=None,
                       help="polarization parameter for the blow-up fixtures")
        if gamma:
            p.add_argument("--gamma", default=None,
                           help="character: named ('ell'), parameters ('r=0,s=-1'), "
                                "or a comma-separated rational vector")
        if series_flags:
            p.add_argument("--order", type=int, default=8,
                           help="truncation: keep exponents up to this power of q")
            p.add_argument("--window", type=int, default=2,
                           help="lattice search radius for curve classes")
        if oracle_flags:
            p.add_argument("--nmax", type=int, default=4,
                           help=f"largest number of points (at most {NMAX_CEILING})")
            p.add_argument("--bundle", default="L",
                           help="which linearized bundle to integrate against")

    p = sub.add_parser("check", help="run the positivity and stability-gap checks")
    common(p, gamma=True)

    p = sub.add_parser("classes", help="enumerate contributing curve classes")
    common(p, gamma=True, series_flags=True)

    p = sub.add_parser("series", help="assemble the generating series")
    common(p, gamma=True, series_flags=True)
    p.add_argument("--override-checks", action="store_true",
                   help="produce the series even when the checks fail")

    p = sub.add_parser("oracle", help="equivariant integrals on the Hilbert scheme")
    common(p, oracle_flags=True)
    p.add_argument("--trace", default=None,
                   help="write a per-fixed-point JSON trace (small n) to this file")

    p = sub.add_parser("verify", help="compare the oracle against the Euler product")
    common(p, oracle_flags=True)

    return parser


def config_from_args(args):
    cfg = RunConfig(
        command=args.command,
        fixture=args.fixture,
        gamma_spec=getattr(args, "gamma", None),
        order=getattr(args, "order", 8),
        window=getattr(args, "window", 2),
        n_max=getattr(args, "nmax", 4),
        k=getattr(args, "k", None),
        seed=args.seed,
        fmt=args.format,
        override_checks=getattr(args, "override_checks", False),
        bundle=getattr(args, "bundle", "L"),
        trace=getattr(args, "trace", None),
    )
    return cfg.validate()


def resolve_gamma(fx, spec):
    """Named character, parameter list, explicit vector, or the zero default."""
    if spec is None:
        return tuple(Fraction(0) for _ in range(fx.threefold.h4_rank))
    if spec in fx.gamma_names:
        return fx.gamma_names[spec]
    if "=" in spec:
        try:
            pairs = dict(item.split("=", 1) for item in spec.split(","))
            return tuple(fx.gamma_from_params(pairs))
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad character parameters {spec!r}: {exc}") from exc
    try:
        vec = tuple(parse_frac(x) for x in spec.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad character vector {spec!r}: {exc}") from exc
    if len(vec) != fx.threefold.h4_rank:
        raise CliError(
            f"character vector has length {len(vec)}, expected {fx.threefold.h4_rank}"
        )
    return vec


def emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _csv_print(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _report_dict(report):
    d = {
        "vanishing_asserted": report.vanishing_asserted,
        "irreducible": report.irreducible,
        "passed": report.passed,
        "failures": report.failures,
    }
    for key in ("ineq_KL2_gt_L3", "ineq_KLO1_pos"):
        iq = getattr(report, key)
        d[key] = None if iq is None else {
            "lhs": frac_str(iq.lhs), "rhs": frac_str(iq.rhs), "holds": iq.holds
        }
    d["stability_gap"] = [
        {
            "candidate": list(e.candidate),
            "forbidden_m": frac_str(e.forbidden_m),
            "is_integer": e.is_integer,
            "holds": e.gap_holds,
        }
        for e in (report.stability_gap or ())
    ]
    return d


def _print_report_pretty(fx, gamma, report):
    print(f"fixture {fx.name}")
    print(f"  character gamma     : ({', '.join(frac_str(g) for g in gamma)})")
    iq = report.ineq_KL2_gt_L3
    print(f"  -K.L^2 > L^3        : {frac_str(iq.lhs)} > {frac_str(iq.rhs)}  "
          f"{'ok' if iq.holds else 'FAIL'}")
    iq = report.ineq_KLO1_pos
    print(f"  -K.L.O(1) > 0       : {frac_str(iq.lhs)} > 0  {'ok' if iq.holds else 'FAIL'}")
    print(f"  vanishing asserted  : {'yes' if report.vanishing_asserted else 'NO'}")
    if report.irreducible and not report.stability_gap:
        print("  stability gap       : vacuous (irreducible support class)")
    elif not report.stability_gap:
        print("  stability gap       : no candidate decompositions supplied")
    else:
        for e in report.stability_gap:
            verdict = "ok" if e.gap_holds else "FAIL (integer twist)"
            print(f"  stability gap at {e.candidate}: forbidden m = "
                  f"{frac_str(e.forbidden_m)}  {verdict}")
    print(f"  overall             : {'PASS' if report.passed else 'FAIL'}")


def cmd_check(cfg):
    fx = get_fixture(cfg.fixture, cfg.k)
    gamma = resolve_gamma(fx, cfg.gamma_spec)
    report = run_all_checks(
        fx.threefold, ChernVector(gamma), fx.candidates, irreducible=fx.irreducible
    )
    if cfg.fmt == "json":
        emit_json({
            "command": "check",
            "fixture": fx.name,
            "gamma": [frac_str(g) for g in gamma],
            "report": _report_dict(report),
        })
    elif cfg.fmt == "csv":
        rows = [["check", "lhs", "rhs", "holds"]]
        rows.append(["-K.L^2>L^3", frac_str(report.ineq_KL2_gt_L3.lhs),
                     frac_str(report.ineq_KL2_gt_L3.rhs), report.ineq_KL2_gt_L3.holds])
        rows.append(["-K.L.O(1)>0", frac_str(report.ineq_KLO1_pos.lhs), "0",
                     report.ineq_KLO1_pos.holds])
        rows.append(["vanishing_asserted", "", "", bool(report.vanishing_asserted)])
        for e in report.stability_gap or ():
            rows.append([f"stability{list(e.candidate)}", frac_str(e.forbidden_m), "Z",
                         e.gap_holds])
        rows.append(["overall", "", "", report.passed])
        _csv_print(rows)
    else:
        _print_report_pretty(fx, gamma, report)
    return EXIT_OK if report.passed else EXIT_CHECKS_FAILED


def _table_rows_csv(fx, table):
    s = fx.surface.h2_rank
    header = [f"beta_{i}" for i in range(s)]
    header += ["beta_sq", "n", "xi_num", "xi_den", "q_exp_num", "q_exp_den"]
    rows = [header]
    for r in table.rows:
        rows.append(
            list(r.beta)
            + [r.beta_sq, r.n, r.xi.numerator, r.xi.denominator,
               r.q_exponent.numerator, r.q_exponent.denominator]
        )
    return rows


def cmd_classes(cfg):
    fx = get_fixture(cfg.fixture, cfg.k)
    gamma = resolve_gamma(fx, cfg.gamma_spec)
    table = enumerate_contributions(fx.surface, fx.threefold, gamma, cfg.order, cfg.window)
    if cfg.fmt == "json":
        emit_json({
            "command": "classes",
            "fixture": fx.name,
            "gamma": [frac_str(g) for g in gamma],
            "delta": table.delta,
            "window": table.window,
            "max_power": frac_str(table.max_power),
            "rows": [
                {
                    "beta": list(r.beta),
                    "beta_sq": r.beta_sq,
                    "n": r.n,
                    "xi": frac_str(r.xi),
                    "q_exponent": frac_str(r.q_exponent),
                }
                for r in table.rows
            ],
        })
    elif cfg.fmt == "csv":
        _csv_print(_table_rows_csv(fx, table))
    else:
        print(f"fixture {fx.name}  gamma=({', '.join(frac_str(g) for g in gamma)})  "
              f"delta={table.delta}")
        if not table.rows:
            print("  no curve classes satisfy the degree constraint")
        for r in table.rows:
            print(f"  beta={r.beta}  beta^2={r.beta_sq}  n={r.n}  xi={frac_str(r.xi)}  "
                  f"q^{frac_str(r.q_exponent)}")
    return EXIT_OK


def resolve_convention(fx, seed):
    """Pick the exponent sign from the localization oracle when the fixture
    has a toric surface; otherwise use the product-formula default."""
    if fx.toric is None:
        return CONVENTION_MINUS, "default", None
    lin = fx.toric.bundles[fx.toric_L]
    delta = delta_invariant(fx.surface, lin.surface_class)
    probe = co_series(fx.toric, lin, n_max=2, seed=seed)
    minus = euler_product(-delta, 3)
    plus = euler_product(delta, 3)
    vals = list(probe.values)
    if vals == [int(c) for c in minus.coeffs]:
        return CONVENTION_MINUS, "oracle-resolved", probe
    if vals == [int(c) for c in plus.coeffs]:
        return CONVENTION_PLUS, "oracle-resolved", probe
    raise OracleError(
        f"oracle values {vals} match neither Euler-product sign for delta={delta}"
    )


def cmd_series(cfg):
    fx = get_fixture(cfg.fixture, cfg.k)
    gamma = resolve_gamma(fx, cfg.gamma_spec)
    report = run_all_checks(
        fx.threefold, ChernVector(gamma), fx.candidates, irreducible=fx.irreducible
    )
    if not report.passed and not cfg.override_checks:
        if cfg.fmt == "json":
            emit_json({
                "command": "series",
                "fixture": fx.name,
                "error": "hypothesis checks failed",
                "report": _report_dict(report),
            })
        else:
            _print_report_pretty(fx, gamma, report)
            print("series not produced: checks failed (use --override-checks to force)")
        return EXIT_CHECKS_FAILED
    try:
        convention, provenance, _ = resolve_convention(fx, cfg.seed)
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    table = enumerate_contributions(fx.surface, fx.threefold, gamma, cfg.order, cfg.window)
    result = dt_series(fx.surface, table, cfg.order, convention)
    v = virtual_dimension(fx.threefold)
    if cfg.fmt == "json":
        emit_json({
            "command": "series",
            "fixture": fx.name,
            "gamma": [frac_str(g) for g in gamma],
            "delta": result.delta,
            "virtual_dimension": v,
            "convention": result.convention,
            "convention_provenance": provenance,
            "checks_passed": report.passed,
            "blocks": [
                {
                    "beta": list(b.beta),
                    "beta_sq": b.beta_sq,
                    "prefactor_exponent": frac_str(b.prefactor_exponent),
                    "n_series": b.n_series.to_json_dict(),
                }
                for b in result.blocks
            ],
            "total": result.total.to_json_dict(),
        })
    elif cfg.fmt == "csv":
        rows = [["q_exp_num", "q_exp_den", "coeff_num", "coeff_den"]]
        for i, c in enumerate(result.total.coeffs):
            e = result.total.offset + i
            rows.append([e.numerator, e.denominator, c.numerator, c.denominator])
        _csv_print(rows)
    else:
        print(f"fixture {fx.name}  gamma=({', '.join(frac_str(g) for g in gamma)})")
        print(f"  delta = {result.delta}   virtual dimension = {v}")
        print(f"  convention = {result.convention} ({provenance})")
        if not result.blocks:
            print("  no contributing curve classes in this window")
        for b in result.blocks:
            print(f"  block beta={b.beta} (beta^2={b.beta_sq}): "
                  f"q^({frac_str(b.prefactor_exponent)}) * [{b.n_series.pretty()}]")
        print(f"  total = {result.total.pretty()}")
    return EXIT_OK


def cmd_oracle(cfg):
    fx = get_fixture(cfg.fixture, cfg.k)
    if fx.toric is None:
        raise CliError(f"fixture {fx.name} has no toric surface model")
    if cfg.bundle not in fx.toric.bundles:
        raise CliError(
            f"no bundle {cfg.bundle!r}; available: {sorted(fx.toric.bundles)}"
        )
    lin = fx.toric.bundles[cfg.bundle]
    result = co_series(fx.toric, lin, cfg.n_max, seed=cfg.seed)
    print(f"oracle time: {result.elapsed:.3f}s ({result.backend})", file=sys.stderr)
    if cfg.trace:
        depth = min(cfg.n_max, 3)
        trace = []
        for n in range(depth + 1):
            terms = trace_terms(fx.toric, lin, n, result.eval_points[0], result.shift)
            trace.append({
                "n": n,
                "terms": [
                    {"point": t["point"], "term": frac_str(t["term"])} for t in terms
                ],
            })
        with open(cfg.trace, "w") as fh:
            json.dump(trace, fh, indent=2, sort_keys=True)
            fh.write("\n")
    payload = {
        "command": "oracle",
        "fixture": fx.name,
        "bundle": lin.name,
        "n_max": result.n_max,
        "values": list(result.values),
        "eval_points": [[frac_str(x), frac_str(y)] for (x, y) in result.eval_points],
        "shift": list(result.shift),
        "seed": result.seed,
        "backend": result.backend,
    }
    if cfg.fmt == "json":
        emit_json(payload)
    elif cfg.fmt == "csv":
        rows = [["n", "value"]] + [[n, v] for n, v in enumerate(result.values)]
        _csv_print(rows)
    else:
        print(f"fixture {fx.name}  bundle {lin.name}  backend {result.backend}")
        pts = ", ".join(f"({frac_str(x)}, {frac_str(y)})" for (x, y) in result.eval_points)
        print(f"  evaluation points: {pts}  shift: {result.shift}")
        for n, v in enumerate(result.values):
            print(f"  n={n}: {v}")
    return EXIT_OK


def cmd_verify(cfg):
    fx = get_fixture(cfg.fixture, cfg.k)
    if fx.toric is None:
        raise CliError(f"fixture {fx.name} has no toric surface model")
    if cfg.bundle not in fx.toric.bundles:
        raise CliError(
            f"no bundle {cfg.bundle!r}; available: {sorted(fx.toric.bundles)}"
        )
    lin = fx.toric.bundles[cfg.bundle]
    delta = delta_invariant(fx.surface, lin.surface_class)
    result = co_series(fx.toric, lin, cfg.n_max, seed=cfg.seed)
    print(f"oracle time: {result.elapsed:.3f}s ({result.backend})", file=sys.stderr)
    order = cfg.n_max + 1
    minus = [int(c) for c in euler_product(-delta, order).coeffs]
    plus = [int(c) for c in euler_product(delta, order).coeffs]
    vals = list(result.values)
    matches_minus = vals == minus
    matches_plus = vals == plus
    if matches_minus:
        sign = CONVENTION_MINUS
    elif matches_plus:
        sign = CONVENTION_PLUS
    else:
        sign = None
    payload = {
        "command": "verify",
        "fixture": fx.name,
        "bundle": lin.name,
        "delta": delta,
        "n_max": cfg.n_max,
        "oracle_values": vals,
        "euler_minus_delta": minus,
        "euler_plus_delta": plus,
        "matches_minus": matches_minus,
        "matches_plus": matches_plus,
        "resolved_convention": sign,
    }
    if cfg.fmt == "json":
        emit_json(payload)
    elif cfg.fmt == "csv":
        rows = [["n", "oracle", "euler_minus_delta", "euler_plus_delta"]]
        for n in range(order):
            rows.append([n, vals[n], minus[n], plus[n]])
        _csv_print(rows)
    else:
        print(f"fixture {fx.name}  bundle {lin.name}  delta={delta}")
        for n in range(order):
            mark = "==" if vals[n] == (minus[n] if matches_minus else plus[n]) else "!="
            print(f"  n={n}: oracle {vals[n]}  {mark}  "
                  f"minus:{minus[n]} plus:{plus[n]}")
        if sign:
            print(f"  resolved convention: {sign}")
        else:
            print("  MISMATCH: oracle agrees with neither exponent sign")
    return EXIT_OK if sign else EXIT_MISMATCH


COMMANDS = {
    "check": cmd_check,
    "classes": cmd_classes,
    "series": cmd_series,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_BAD_INPUT
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (CliError, FixtureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
