"""Command-line surface.

Subcommands:

* estimate -- run one estimator and print value, absolute error, work.
* table    -- reproduce one of the four convergence tables.
* soldner  -- the zero of the logarithmic integral at a given precision.
* fig1     -- Mersenne-exponent fit data (plot-ready CSV) plus summary.
* selftest -- the estimator cross-agreement web at a given precision.

Exit codes: 0 success, 2 precondition refusal, 3 data error, 4 internal
invariant failure.  Refusals print the formula that fired, never a stack
trace.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import mpmath as mp

from . import number_theory as nt
from . import zeros as zz
from .context import make_context, reference_gamma, working_precision
from .errors import (
    DataError,
    GammaLabError,
    InternalError,
    RefusalError,
    TautologyError,
)
from .estimators import (
    ESTIMATORS,
    est_ci_zero,
    required_working_digits,
)
from .quadrature import integrate
from .special import macleod_zero, soldner
from . import estimators as est_mod

EXIT_OK = 0
EXIT_REFUSED = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4

TABLE1_GRID = [10**k for k in range(3, 9)]
TABLE2_GRID = [2**k for k in range(15, 24)]
TABLE4_GRID = list(range(10, 101, 10))
SELFTEST_HEAVY_LIMIT = 300  # digits above which the quadrature-based
                            # estimators are skipped by selftest


@dataclass
class RunConfig:
    command: str
    method: str = ""
    digits: int = 30
    params: dict = field(default_factory=dict)
    output_format: str = "text"
    data_paths: dict = field(default_factory=dict)
    force: bool = False


def _fmt(x, sig: int) -> str:
    return mp.nstr(x, sig, strip_zeros=False)


def _emit_rows(header: list[str], rows: list[list[str]], fmt: str, out) -> None:
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for r in rows:
            out.write(",".join(r) + "\n")
    elif fmt == "markdown":
        out.write("| " + " | ".join(header) + " |\n")
        out.write("|" + "|".join("---" for _ in header) + "|\n")
        for r in rows:
            out.write("| " + " | ".join(r) + " |\n")
    else:
        widths = [
            max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
            for i, h in enumerate(header)
        ]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)) + "\n")
        for r in rows:
            out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)) + "\n")


def _print_estimate(est, digits: int, fmt: str, out) -> None:
    work = " ".join(f"{k}={v}" for k, v in est.work.items())
    if fmt == "text":
        out.write(f"method: {est.method}\n")
        if est.params:
            out.write(
                "params: "
                + " ".join(f"{k}={v}" for k, v in est.params.items())
                + "\n"
            )
        out.write(f"value: {_fmt(est.value, digits)}\n")
        out.write(f"abs_error: {_fmt(est.abs_error, 6)}\n")
        if work:
            out.write(f"work: {work}\n")
    else:
        header = ["method", "params", "value", "abs_error", "work"]
        params = ";".join(f"{k}={v}" for k, v in est.params.items())
        rows = [[est.method, params, _fmt(est.value, digits),
                 _fmt(est.abs_error, 6), work.replace(" ", ";")]]
        _emit_rows(header, rows, fmt, out)


def _run_estimate(cfg: RunConfig, out) -> int:
    method = cfg.method
    digits = cfg.digits

    if method == "mertens":
        limit = cfg.params.get("limit", 10**6)
        report = nt.sieve_log_product(limit)
        est = nt.mertens_gamma(report, make_context(digits))
        _print_estimate(est, digits, cfg.output_format, out)
        return EXIT_OK
    if method == "divisor":
        est = nt.divisor_gamma(cfg.params["n"], make_context(digits))
        _print_estimate(est, digits, cfg.output_format, out)
        return EXIT_OK
    if method == "zeros":
        path = cfg.data_paths.get("zeros") or zz.bundled_zeros_path()
        count = cfg.params.get("n", 10**5)
        zl = zz.load_zeros(path, count)
        est = zz.zeta_zero_gamma(zl, count, make_context(digits))
        _print_estimate(est, digits, cfg.output_format, out)
        return EXIT_OK

    if method not in ESTIMATORS:
        raise RefusalError(f"unknown method {method!r}")

    allowed = {
        "harmonic": {"n"}, "detemple": {"n"}, "hurwitz": {"n"},
        "fracpart": {"n", "J"}, "emrs1": {"n_max"}, "emrs2": {"n_max"},
        "em3": set(), "em4": {"n_max"}, "cosine": set(),
        "ci_zero": {"k"}, "kpi": {"k"},
    }[method]
    required_args = allowed & {"n", "k"}
    missing = [a for a in required_args if a not in cfg.params]
    if missing:
        raise RefusalError(
            f"method {method} requires --{'/'.join(missing)}"
        )
    params = {k: v for k, v in cfg.params.items() if k in allowed}

    ctx = make_context(digits)
    if method in ("ci_zero", "kpi"):
        k = params["k"]
        required = required_working_digits(digits, k)
        if ctx.working_digits < required:
            if not cfg.force:
                raise RefusalError(
                    f"method {method} at k={k} needs ~{required} working "
                    f"digits (digits + ceil(0.87*k*pi) + 10); rerun with "
                    f"--force to spend them"
                )
            ctx = make_context(digits, guard=required - digits)
    est = ESTIMATORS[method](ctx, **params)
    _print_estimate(est, digits, cfg.output_format, out)
    return EXIT_OK


def _run_table(cfg: RunConfig, out) -> int:
    name = cfg.method
    fmt = cfg.output_format
    digits = cfg.digits

    if name == "table1":
        limit = cfg.params.get("max", 10**8)
        ctx = make_context(max(digits, 30))
        header = ["n", "product", "asymptote", "ratio", "gamma", "abs_error"]
        rows = []
        grid = [n for n in TABLE1_GRID if n <= limit]
        for extra in (10**9, 10**10):
            if limit >= extra:
                grid.append(extra)
        gamma_ref = reference_gamma(ctx)
        for n in grid:
            report = nt.sieve_log_product(n)
            est = nt.mertens_gamma(report, ctx)
            with working_precision(ctx):
                # display-only comparison column; the reference value never
                # enters the estimator itself
                asym = 6 * mp.exp(gamma_ref) * mp.log(n) / mp.pi ** 2
                ratio = report.product / asym
            rows.append([str(n), f"{float(report.product):.7f}",
                         f"{float(asym):.7f}", f"{float(ratio):.7f}",
                         f"{float(est.value):.8f}", _fmt(est.abs_error, 4)])
        _emit_rows(header, rows, fmt, out)
        return EXIT_OK

    if name == "table2":
        ctx = make_context(max(digits, 25))
        header = ["n", "D", "gamma", "abs_error"]
        rows = []
        for n in TABLE2_GRID:
            est = nt.divisor_gamma(n, ctx)
            rows.append([str(n), str(est.work["D"]),
                         f"{float(est.value):.7f}", _fmt(est.abs_error, 4)])
        _emit_rows(header, rows, fmt, out)
        return EXIT_OK

    if name == "table3":
        path = cfg.data_paths.get("zeros") or zz.bundled_zeros_path()
        count = cfg.params.get("count", 10**5)
        zl = zz.load_zeros(path, count)
        ctx = make_context(max(digits, 25))
        header = ["n", "gamma", "abs_error"]
        rows = []
        n = 1000
        while n <= len(zl):
            est = zz.zeta_zero_gamma(zl, n, ctx)
            rows.append([str(n), f"{float(est.value):.7f}", _fmt(est.abs_error, 4)])
            n *= 10
        _emit_rows(header, rows, fmt, out)
        return EXIT_OK

    if name == "table4":
        header = ["k", "c_k", "gamma", "abs_error"]
        rows = []
        for k in TABLE4_GRID:
            required = required_working_digits(digits, k)
            ctx = make_context(digits, guard=required - digits)
            est = est_ci_zero(k, ctx)
            rows.append([str(k), _fmt(macleod_zero(k).value, 17),
                         _fmt(est.value, 17), _fmt(est.abs_error, 4)])
        _emit_rows(header, rows, fmt, out)
        return EXIT_OK

    raise RefusalError(f"unknown table {name!r} (table1..table4)")


def _run_fig1(cfg: RunConfig, out) -> int:
    path = cfg.data_paths.get("exponents")
    data = (
        nt.load_mersenne_exponents(path) if path else nt.MersenneExponents.embedded()
    )
    slope, intercept, gamma_est = nt.mersenne_fit(data)
    header = ["x", "cumulative_count", "fitted"]
    rows = []
    with mp.workdps(20):
        for i, p in enumerate(data.exponents, start=1):
            rows.append([str(p), str(i), _fmt(slope * mp.log(p) + intercept, 8)])
    _emit_rows(header, rows, cfg.output_format, out)
    out.write(
        f"fit: slope={_fmt(slope, 8)} intercept={_fmt(intercept, 8)} "
        f"gamma={_fmt(gamma_est, 6)}\n"
    )
    return EXIT_OK


def _run_soldner(cfg: RunConfig, out) -> int:
    ctx = make_context(cfg.digits)
    res = soldner(ctx)
    out.write(f"mu: {_fmt(res.mu, cfg.digits + 1)}\n")
    out.write(f"residual: {_fmt(res.residual, 4)}\n")
    out.write(f"iterations: {res.iterations}\n")
    return EXIT_OK


def _run_selftest(cfg: RunConfig, out) -> int:
    """Cross-agreement web; exit 0 iff every residual is within bounds.

    Above SELFTEST_HEAVY_LIMIT digits only the series-based estimators
    run (the quadrature-based ones get slow); below it the full web runs.
    """
    digits = cfg.digits
    ctx = make_context(digits)
    failures = []
    checks: list[tuple[str, mp.mpf, mp.mpf]] = []  # (name, observed, bound)

    gamma = reference_gamma(ctx)

    sol = soldner(ctx)
    checks.append(("soldner |li(mu)|", sol.residual, mp.mpf(10) ** (-digits)))

    e1r = est_mod.est_emrs1(ctx)
    e2r = est_mod.est_emrs2(ctx)
    bound = mp.mpf(10) ** (-(digits - 2))
    with working_precision(ctx):
        checks.append(("emrs1 vs reference", e1r.abs_error, bound))
        checks.append(("emrs2 vs reference", e2r.abs_error, bound))
        checks.append(("emrs1 vs emrs2", abs(e1r.value - e2r.value), bound))

    if digits <= SELFTEST_HEAVY_LIMIT:
        e3 = est_mod.est_em3(ctx)
        e4 = est_mod.est_em4(ctx)
        e5 = est_mod.est_cosine(ctx)
        with working_precision(ctx):
            checks.append(("em3 vs reference", e3.abs_error, bound))
            checks.append(("em3 vs em4", abs(e3.value - e4.value), bound))
            checks.append(("cosine vs reference", e5.abs_error, bound))
            checks.append(("cosine vs emrs1", abs(e5.value - e1r.value), bound))
        # oracle equalities
        hyp, naive = nt.divisor_sum(1000), nt.divisor_sum_naive(1000)
        checks.append(
            ("divisor hyperbola vs naive @1000", abs(mp.mpf(hyp - naive)), mp.mpf(0.5))
        )
        with working_precision(ctx):
            li_mu = integrate(
                lambda w: mp.log1p(-w * w) / (mp.log1p(w) * mp.log1p(-w)),
                0, 1, min(digits, 40),
            )
        # paired p.v. quadrature of li(2) against gamma-free kernel
        from .special import li_pv
        checks.append(
            ("li(2) pairing oracle vs kernel",
             abs(li_mu - li_pv(2, make_context(min(digits, 40)))),
             mp.mpf(10) ** (-(min(digits, 40) - 2))),
        )

    for name, observed, bnd in checks:
        status = "ok" if observed <= bnd else "FAIL"
        out.write(
            f"{status:4s} {name}: residual {_fmt(observed, 5)} "
            f"(bound {_fmt(bnd, 3)})\n"
        )
        if observed > bnd:
            failures.append(name)

    out.write(f"gamma reference: {_fmt(gamma, min(digits, 50))}...\n")
    if failures:
        out.write(f"selftest FAILED: {', '.join(failures)}\n")
        return EXIT_INTERNAL
    out.write("selftest passed\n")
    return EXIT_OK


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        if cfg.command == "estimate":
            return _run_estimate(cfg, out)
        if cfg.command == "table":
            return _run_table(cfg, out)
        if cfg.command == "soldner":
            return _run_soldner(cfg, out)
        if cfg.command == "fig1":
            return _run_fig1(cfg, out)
        if cfg.command == "selftest":
            return _run_selftest(cfg, out)
        raise RefusalError(f"unknown command {cfg.command!r}")
    except RefusalError as exc:
        out.write(f"refused: {exc}\n")
        return EXIT_REFUSED
    except DataError as exc:
        out.write(f"data error: {exc}\n")
        return EXIT_DATA
    except (InternalError, TautologyError) as exc:
        out.write(f"internal invariant failure: {exc}\n")
        return EXIT_INTERNAL
    except GammaLabError as exc:
        out.write(f"error: {exc}\n")
        return EXIT_REFUSED


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gammalab",
        description="Estimators and reproduction tables for the "
        "Euler-Mascheroni constant.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--digits", type=int, default=30)
        sp.add_argument("--format", choices=("text", "csv", "markdown"),
                        default="text", dest="output_format")

    e = sub.add_parser("estimate", help="run one estimator")
    add_common(e)
    e.add_argument("--method", required=True,
                   choices=sorted(ESTIMATORS) + ["mertens", "divisor", "zeros"])
    e.add_argument("--n", type=int)
    e.add_argument("--n-max", type=int, dest="n_max")
    e.add_argument("--k", type=int)
    e.add_argument("--J", type=int)
    e.add_argument("--limit", type=int, help="sieve limit for --method mertens")
    e.add_argument("--zeros-file", help="ordinate table for --method zeros")
    e.add_argument("--force", action="store_true",
                   help="auto-provision guard digits for ci_zero/kpi")

    t = sub.add_parser("table", help="reproduce a convergence table")
    add_common(t)
    t.add_argument("--name", required=True,
                   choices=("table1", "table2", "table3", "table4"))
    t.add_argument("--max", type=int, help="table1 sieve ceiling (default 1e8)")
    t.add_argument("--count", type=int, help="table3 zero count")
    t.add_argument("--zeros-file", help="table3 ordinate file")

    s = sub.add_parser("soldner", help="zero of the logarithmic integral")
    add_common(s)

    f = sub.add_parser("fig1", help="Mersenne-exponent fit data")
    add_common(f)
    f.add_argument("--exponent-file")

    st = sub.add_parser("selftest", help="estimator cross-agreement web")
    add_common(st)
    return p


def _config_from_args(args) -> RunConfig:
    params = {}
    data_paths = {}
    for key in ("n", "n_max", "k", "J", "limit", "max", "count"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    if getattr(args, "zeros_file", None):
        data_paths["zeros"] = args.zeros_file
    if getattr(args, "exponent_file", None):
        data_paths["exponents"] = args.exponent_file
    return RunConfig(
        command=args.command,
        method=getattr(args, "method", "") or getattr(args, "name", ""),
        digits=args.digits,
        params=params,
        output_format=args.output_format,
        data_paths=data_paths,
        force=getattr(args, "force", False),
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return run(_config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
