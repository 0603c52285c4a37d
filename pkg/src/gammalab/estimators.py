"""The estimator registry: every route to the Euler-Mascheroni constant.

Each operation returns a uniform :class:`Estimate`.  Values are computed
inside the tautology guard, so any code path that touched the embedded
reference would raise; the error column is filled in afterwards, outside
the guard.  ``tautology_flag`` is False for everything in this module.

Families:

* baselines      -- harmonic minus log, and the log(n + 1/2) variant.
* series         -- the Hurwitz-zeta family and the fractional-part family.
* soldner-based  -- the two series in log(mu) and the two alpha-based
                    differences (alpha - beta and the sqrt(e) series).
* cosine-based   -- the Ci(1) split, the Ci-zero family c_k, and the
                    finite-k limit at k*pi.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath as mp

from .context import (
    PrecisionContext,
    abs_error_vs_reference,
    forbid_reference_gamma,
    working_precision,
)
from .errors import GammaLabError, RefusalError
from .series import sum_until_negligible
from .special import (
    alpha_integral,
    ci_series,
    ci_series_required_working,
    ci_tail_integral,
    hurwitz_zeta,
    macleod_zero,
    soldner,
)

__all__ = [
    "Estimate",
    "ConvergenceTable",
    "TableRow",
    "est_harmonic",
    "est_detemple",
    "est_hurwitz",
    "est_fracpart",
    "est_emrs1",
    "est_emrs2",
    "est_em3",
    "est_em4",
    "est_cosine",
    "est_ci_zero",
    "est_kpi_limit",
    "required_working_digits",
    "convergence_table",
    "ESTIMATORS",
]


@dataclass(frozen=True)
class Estimate:
    """One approximation: method tag, inputs, value, honest error, work."""

    method: str
    params: dict
    value: mp.mpf
    abs_error: mp.mpf
    work: dict
    tautology_flag: bool = False


def _finish(method: str, params: dict, value: mp.mpf, work: dict,
            ctx: PrecisionContext) -> Estimate:
    with working_precision(ctx):
        value = +value  # round at the context precision, not the ambient one
    return Estimate(
        method=method,
        params=params,
        value=value,
        abs_error=abs_error_vs_reference(value, ctx),
        work=work,
        tautology_flag=False,
    )


def _harmonic_fixed(n: int, dps: int) -> mp.mpf:
    """H_n by fixed-point integer arithmetic.

    sum(scale // k) underestimates each term by < 1, so with
    scale = 10^(dps + 5 + #digits(n)) the total bias stays below
    10^-(dps+4).  Integer division is an order of magnitude faster than a
    million mpf divisions and bit-identical across runs.
    """
    scale = 10 ** (dps + 5 + len(str(n)))
    total = sum(scale // k for k in range(1, n + 1))
    with mp.workdps(dps + 10):
        return mp.mpf(total) / scale


def est_harmonic(n: int, ctx: PrecisionContext) -> Estimate:
    """sum_{k<=n} 1/k - log n; converges like 1/(2n)."""
    if n < 1:
        raise RefusalError(f"n={n} < 1")
    with forbid_reference_gamma(), working_precision(ctx):
        value = _harmonic_fixed(n, ctx.working_digits) - mp.log(n)
    return _finish("harmonic", {"n": n}, value, {"terms": n}, ctx)


def est_detemple(n: int, ctx: PrecisionContext) -> Estimate:
    """sum_{k<=n} 1/k - log(n + 1/2); error O(1/n^2)."""
    if n < 1:
        raise RefusalError(f"n={n} < 1")
    with forbid_reference_gamma(), working_precision(ctx):
        value = _harmonic_fixed(n, ctx.working_digits) - mp.log(n + mp.mpf(1) / 2)
    return _finish("detemple", {"n": n}, value, {"terms": n}, ctx)


def est_hurwitz(n: int, ctx: PrecisionContext) -> Estimate:
    """sum_{k<=n} 1/k - log n - sum_{k>=2} zeta(k, n+1)/k.

    The outer terms decay like (n+1)^(1-k), so truncation happens once
    zeta(k, n+1)/k drops below 10^-working_digits.
    """
    if n < 2:
        raise RefusalError(f"n={n} < 2")
    with forbid_reference_gamma(), working_precision(ctx):
        wd = ctx.working_digits
        thresh = mp.mpf(10) ** (-wd)
        total = mp.mpf(0)
        k = 1
        while True:
            k += 1
            term = hurwitz_zeta(k, n + 1, ctx) / k
            total += term
            if term < thresh:
                break
        value = _harmonic_fixed(n, wd) - mp.log(n) - total
    return _finish("hurwitz", {"n": n}, value, {"outer_terms": k - 1}, ctx)


def est_fracpart(n: int, J: int, ctx: PrecisionContext) -> Estimate:
    """sum_{k<=n} 1/k - log n - int_n^inf {x}/x^2 dx.

    The integral is evaluated exactly on each unit interval,
    int_j^{j+1} (x-j)/x^2 dx = log((j+1)/j) - 1/(j+1), for the J intervals
    starting at n, plus the midpoint tail estimate 1/(2(n+J)) for the
    remaining ~1/(2j^2) pieces; net accuracy O(1/J^2) after the correction.
    """
    if n < 1 or J < 1:
        raise RefusalError(f"need n >= 1 and J >= 1, got n={n}, J={J}")
    with forbid_reference_gamma(), working_precision(ctx):
        integral = mp.mpf(0)
        for j in range(n, n + J):
            integral += mp.log(mp.mpf(j + 1) / j) - mp.mpf(1) / (j + 1)
        integral += mp.mpf(1) / (2 * (n + J))
        value = _harmonic_fixed(n, ctx.working_digits) - mp.log(n) - integral
    return _finish("fracpart", {"n": n, "J": J}, value, {"intervals": J}, ctx)


def _log_mu_series(L: mp.mpf, ctx: PrecisionContext, n_max: int):
    """sum_{n=1..} L^n/(n n!) with the run-until-negligible engine."""
    state = {"n": 0, "u": mp.mpf(1)}

    def term(n: int) -> mp.mpf:
        # terms are requested in ascending order; keep L^n/n! incrementally
        assert n == state["n"] + 1
        state["n"] = n
        state["u"] *= L / n
        return state["u"] / n

    return sum_until_negligible(term, ctx, term_cap=n_max)


def est_emrs1(ctx: PrecisionContext, n_max: int = 10**6) -> Estimate:
    """-log log mu - sum_{n>=1} log^n(mu) / (n n!)."""
    if n_max < 1:
        raise RefusalError(f"n_max={n_max} < 1")
    with forbid_reference_gamma(), working_precision(ctx):
        mu = soldner(ctx).mu
        L = mp.log(mu)
        report = _log_mu_series(L, ctx, n_max)
        value = -mp.log(L) - report.value
    return _finish("emrs1", {"n_max": n_max}, value,
                   {"terms": report.terms_used,
                    "stop": report.stop_reason.value}, ctx)


def _odd_harmonic_series(L: mp.mpf, ctx: PrecisionContext, n_max: int):
    """sum_{n>=1} (-1)^n L^n/(n! 2^(n-1)) * sum_{k=0}^{floor((n-1)/2)} 1/(2k+1).

    The inner odd-harmonic sum is maintained incrementally (it gains the
    term 1/n exactly when n is odd), so each term costs O(1).
    """
    state = {"n": 0, "u": mp.mpf(2), "h": mp.mpf(0)}

    def term(n: int) -> mp.mpf:
        assert n == state["n"] + 1
        state["n"] = n
        state["u"] *= -L / (2 * n)  # (-1)^n L^n / (n! 2^(n-1))
        if n % 2 == 1:
            state["h"] += mp.mpf(1) / n
        return state["u"] * state["h"]

    return sum_until_negligible(term, ctx, term_cap=n_max)


def est_emrs2(ctx: PrecisionContext, n_max: int = 10**6) -> Estimate:
    """-log log mu + sqrt(mu) * (alternating log-mu series with odd-harmonic
    inner sums)."""
    if n_max < 1:
        raise RefusalError(f"n_max={n_max} < 1")
    with forbid_reference_gamma(), working_precision(ctx):
        mu = soldner(ctx).mu
        L = mp.log(mu)
        report = _odd_harmonic_series(L, ctx, n_max)
        value = -mp.log(L) + mp.sqrt(mu) * report.value
    return _finish("emrs2", {"n_max": n_max}, value,
                   {"terms": report.terms_used,
                    "stop": report.stop_reason.value}, ctx)


def est_em3(ctx: PrecisionContext) -> Estimate:
    """alpha - beta: the smooth integral past mu minus sum 1/(n n!)."""
    with forbid_reference_gamma(), working_precision(ctx):
        alpha = alpha_integral(ctx)
        beta = sum_until_negligible(
            lambda n: mp.mpf(1) / (n * mp.factorial(n)), ctx
        )
        value = alpha - beta.value
    return _finish("em3", {}, value, {"beta_terms": beta.terms_used}, ctx)


def est_em4(ctx: PrecisionContext, n_max: int = 10**6) -> Estimate:
    """alpha + sqrt(e) * (the odd-harmonic series at log x = 1).

    n_max = 0 is allowed and returns alpha alone (empty series).
    """
    if n_max < 0:
        raise RefusalError(f"n_max={n_max} < 0")
    with forbid_reference_gamma(), working_precision(ctx):
        alpha = alpha_integral(ctx)
        if n_max == 0:
            value = alpha
            terms = 0
        else:
            report = _odd_harmonic_series(mp.mpf(1), ctx, n_max)
            value = alpha + mp.sqrt(mp.e) * report.value
            terms = report.terms_used
    return _finish("em4", {"n_max": n_max}, value, {"terms": terms}, ctx)


def est_cosine(ctx: PrecisionContext) -> Estimate:
    """-int_1^inf cos(u)/u du + sum_{n>=1} (-1)^(n-1) / (2n (2n)!)."""
    with forbid_reference_gamma(), working_precision(ctx):
        integral = ci_tail_integral(1, ctx)
        series = sum_until_negligible(
            lambda n: mp.mpf(-1) ** (n - 1) / (2 * n * mp.factorial(2 * n)), ctx
        )
        value = -integral + series.value
    return _finish("cosine", {}, value, {"series_terms": series.terms_used}, ctx)


def required_working_digits(digits: int, k: int) -> int:
    """Working digits the Ci-series estimators need at zero index k.

    digits + ceil(0.87 * k*pi) + 10; exposed so callers can price a run
    (k = 8000 costs ~21900 working digits) before committing.
    """
    return ci_series_required_working(digits, k * mp.pi)


def _ci_series_gamma(x: mp.mpf, ctx: PrecisionContext) -> mp.mpf:
    """-(log x + sum (-x^2)^n/(2n (2n)!)) = gamma - Ci(x), via the series
    kernel with a zero constant supplied."""
    v = ci_series(x, mp.mpf(0), ctx)
    with working_precision(ctx):
        return -v


def est_ci_zero(k: int, ctx: PrecisionContext) -> Estimate:
    """-sum (-c_k^2)^n/(2n (2n)!) - log c_k with c_k from the asymptotic
    expansion; the estimate's error is |Ci(c_k)|."""
    if k < 1:
        raise RefusalError(f"k={k} < 1")
    required = required_working_digits(ctx.digits, k)
    if ctx.working_digits < required:
        raise RefusalError(
            f"est_ci_zero(k={k}) needs working precision >= {required} "
            f"(digits + ceil(0.87*k*pi) + 10); context has {ctx.working_digits}"
        )
    zero = macleod_zero(k)
    # c_k sits slightly above k*pi, so re-derive the guard for the series
    # kernel's own cancellation check
    inner_required = ci_series_required_working(ctx.digits, zero.value)
    inner_ctx = PrecisionContext(
        ctx.digits, max(ctx.guard, inner_required - ctx.digits)
    )
    with forbid_reference_gamma():
        value = _ci_series_gamma(zero.value, inner_ctx)
    return _finish("ci_zero", {"k": k}, value,
                   {"expansion_terms": zero.terms_used}, ctx)


def est_kpi_limit(k: int, ctx: PrecisionContext) -> Estimate:
    """The bracketed expression of the k*pi limit formula at finite k:

        sum_{n>=1} (-1)^(n-1) (k^2 pi^2)^n / (2n (2n)!) - log(k pi)

    Converges to the constant like the envelope of Ci(k pi) ~ 1/(k pi)^2.
    The cancellation guard makes large k deliberately expensive; the
    requirement is computed and reported before any work happens.
    """
    if k < 1:
        raise RefusalError(f"k={k} < 1")
    required = required_working_digits(ctx.digits, k)
    if ctx.working_digits < required:
        raise RefusalError(
            f"est_kpi_limit(k={k}) needs working precision >= {required} "
            f"(digits + ceil(0.87*k*pi) + 10); context has {ctx.working_digits}"
        )
    with forbid_reference_gamma():
        with mp.workdps(ctx.working_digits + 10):
            x = k * +mp.pi
        value = _ci_series_gamma(x, ctx)
    return _finish("kpi", {"k": k}, value, {}, ctx)


# ---------------------------------------------------------------------------
# convergence tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    param: int
    value: mp.mpf | None
    abs_error: mp.mpf | None
    note: str | None = None


@dataclass(frozen=True)
class ConvergenceTable:
    method: str
    rows: list[TableRow] = field(default_factory=list)


# name -> callable(ctx, **params); params are keyword-only by design so the
# CLI can pass them straight through
ESTIMATORS = {
    "harmonic": lambda ctx, n: est_harmonic(n, ctx),
    "detemple": lambda ctx, n: est_detemple(n, ctx),
    "hurwitz": lambda ctx, n: est_hurwitz(n, ctx),
    "fracpart": lambda ctx, n, J=10**5: est_fracpart(n, J, ctx),
    "emrs1": lambda ctx, n_max=10**6: est_emrs1(ctx, n_max),
    "emrs2": lambda ctx, n_max=10**6: est_emrs2(ctx, n_max),
    "em3": lambda ctx: est_em3(ctx),
    "em4": lambda ctx, n_max=10**6: est_em4(ctx, n_max),
    "cosine": lambda ctx: est_cosine(ctx),
    "ci_zero": lambda ctx, k: est_ci_zero(k, ctx),
    "kpi": lambda ctx, k: est_kpi_limit(k, ctx),
}


def convergence_table(method: str, params_grid, ctx: PrecisionContext,
                      param_name: str = "n", **fixed) -> ConvergenceTable:
    """Run one estimator over an ascending parameter grid.

    Per-row failures (precision refusals, domain errors) annotate the row
    and leave the remaining rows to run.
    """
    if method not in ESTIMATORS:
        raise RefusalError(f"unknown method {method!r}")
    grid = list(params_grid)
    if grid != sorted(grid):
        raise RefusalError("parameter grid must be ascending")
    fn = ESTIMATORS[method]
    rows = []
    for p in grid:
        try:
            est = fn(ctx, **{param_name: p}, **fixed)
            rows.append(TableRow(param=p, value=est.value,
                                 abs_error=est.abs_error))
        except GammaLabError as exc:
            rows.append(TableRow(param=p, value=None, abs_error=None,
                                 note=str(exc)))
    return ConvergenceTable(method=method, rows=rows)
