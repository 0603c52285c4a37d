"""Multiprecision special-function kernels.

Everything here that feeds an estimator of the target constant is free of
that constant by construction (marked ``@tautology_free`` and enforced at
runtime by the context guard):

* ``e1(x)``      -- tail integral of exp(-t)/t past x, via the exact
                    antiderivative difference over [x, A] with A chosen so
                    the remaining tail is below the working ulp.
* ``li_pv(x)``   -- principal value of the logarithmic integral for x > 1,
                    via the pairing  li(x) = int_0^L 2 sinh(v)/v dv - e1(L),
                    L = log x.  Pairing the integrand around the u = 1
                    singularity removes it analytically; the sinh integral
                    is an entire function evaluated by its Taylor series.
* ``soldner``    -- the unique positive zero of li, by bracket-guarded
                    Newton iteration x <- x - li(x) log x with a precision
                    ladder.
* ``alpha_integral`` -- int_mu^e du/log u, as int_{log mu}^1 e^t/t dt by
                    tanh-sinh quadrature (the integrand is smooth there).
* ``ci_tail_integral`` -- int_a^inf cos(u)/u du by splitting at the zeros
                    of cos and CVZ-accelerating the alternating segment
                    sums.

``ci_series`` is the one deliberately circular kernel (its series contains
the constant, which the caller must supply); it exists for validation and
for the zero-based estimators, never inside an integral path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .context import PrecisionContext, tautology_free, working_precision
from .errors import InternalError, RefusalError
from .quadrature import integrate
from .series import sum_alternating_cvz

__all__ = [
    "SoldnerResult",
    "CiZeroApprox",
    "e1",
    "li_pv",
    "soldner",
    "alpha_integral",
    "ci_tail_integral",
    "ci_series",
    "ci_series_required_working",
    "macleod_zero",
    "hurwitz_zeta",
    "CI_ZERO_EXPANSION",
]

LN10 = math.log(10)


@dataclass(frozen=True)
class SoldnerResult:
    mu: mp.mpf
    residual: mp.mpf  # |li(mu)| at the working precision
    iterations: int


@dataclass(frozen=True)
class CiZeroApprox:
    k: int
    value: mp.mpf
    terms_used: int  # correction terms of the asymptotic expansion


# ---------------------------------------------------------------------------
# exponential-integral tail and logarithmic integral
# ---------------------------------------------------------------------------


def _ein_series(t: mp.mpf) -> mp.mpf:
    """sum_{n>=1} (-t)^n / (n * n!) at the ambient precision.

    Antiderivative identity: d/dt [log t + _ein_series(t)] = exp(-t)/t.
    Partial sums swing up to ~exp(t) before collapsing, so the caller must
    provide ~0.435*t guard digits of ambient precision.
    """
    thresh = mp.mpf(10) ** (-mp.mp.dps + 2)
    u = mp.mpf(1)
    total = mp.mpf(0)
    n = 0
    while True:
        n += 1
        u *= -t / n
        term = u / n
        total += term
        if abs(term) < thresh:
            return total


def _e1_dps(x: mp.mpf, dps: int) -> mp.mpf:
    """E1(x) = int_x^inf exp(-t)/t dt to about `dps` digits, gamma-free.

    Truncates the integral at A = x + dps*ln(10) + 10, where the dropped
    tail is below exp(-x) * 10^-dps * e^-10, and evaluates the finite part
    exactly:

        int_x^A exp(-t)/t dt = log(A/x) + ein(A) - ein(x)

    with ein the alternating series of :func:`_ein_series`.  The series at
    A cancels down from ~exp(A), hence the 0.435*A internal guard.
    """
    A = x + dps * LN10 + 10
    guard = int(math.ceil(0.4343 * float(A))) + 15
    with mp.workdps(dps + guard):
        x = mp.mpf(x)
        A = mp.mpf(A)
        val = mp.log(A / x) + _ein_series(A) - _ein_series(x)
    with mp.workdps(dps):
        return +val


def _sinh_integral_dps(L: mp.mpf, dps: int) -> mp.mpf:
    """int_0^L 2 sinh(v)/v dv = 2 sum_{j>=0} L^(2j+1) / ((2j+1)(2j+1)!)."""
    with mp.workdps(dps + 10):
        L = mp.mpf(L)
        thresh = mp.mpf(10) ** (-dps - 5)
        L2 = L * L
        u = L  # L^(2j+1)/(2j+1)!
        total = mp.mpf(0)
        j = 0
        while True:
            total += u / (2 * j + 1)
            if abs(u) < thresh:
                break
            j += 1
            u *= L2 / ((2 * j) * (2 * j + 1))
        val = 2 * total
    with mp.workdps(dps):
        return +val


def _li_dps(x: mp.mpf, dps: int) -> mp.mpf:
    with mp.workdps(dps + 10):
        L = mp.log(mp.mpf(x))
    even = _sinh_integral_dps(L, dps + 5)
    tail = _e1_dps(L, dps + 5)
    with mp.workdps(dps + 5):
        val = even - tail
    with mp.workdps(dps):
        return +val


@tautology_free
def e1(x, ctx: PrecisionContext) -> mp.mpf:
    """Tail integral int_x^inf exp(-t)/t dt for x > 0, to ctx.digits."""
    if not x > 0:
        raise RefusalError(f"e1 requires x > 0, got {x}")
    with working_precision(ctx):
        x = mp.mpf(x)  # convert at full precision; x may carry many digits
    return _e1_dps(x, ctx.working_digits)


@tautology_free
def li_pv(x, ctx: PrecisionContext) -> mp.mpf:
    """Principal value of int_0^x du/log u for x > 1, to ctx.digits."""
    if not x > 1:
        raise RefusalError(f"li_pv requires x > 1, got {x} (x < 1 out of scope)")
    with working_precision(ctx):
        x = mp.mpf(x)
    return _li_dps(x, ctx.working_digits)


_SOLDNER_BRACKET = (mp.mpf("1.4"), mp.mpf("1.5"))
_SOLDNER_SEED = "1.45"


@tautology_free
def soldner(ctx: PrecisionContext) -> SoldnerResult:
    """Zero of the logarithmic integral by Newton iteration from 1.45.

    li'(x) = 1/log x, so the update is x <- x - li(x) * log x.  Runs a
    precision ladder (doubling digits, one quadratic step per level), with
    every iterate checked against the [1.4, 1.5] bracket: leaving it means
    a kernel bug, not a domain error.
    """
    target = ctx.working_digits + 5
    levels = [20]
    while levels[-1] < target:
        levels.append(min(2 * levels[-1], target))

    x = mp.mpf(_SOLDNER_SEED)
    iterations = 0
    for dps in levels:
        with mp.workdps(dps + 5):
            x = +x
            # a single quadratic step per level suffices once the seed
            # level has entered the quadratic regime from |x0 - mu| ~ 1.4e-3;
            # the final level polishes until the step stalls
            if dps == levels[0]:
                max_steps = 4
            elif dps == levels[-1]:
                max_steps = 3
            else:
                max_steps = 1
            for _ in range(max_steps):
                fx = _li_dps(x, dps)
                step = fx * mp.log(x)
                x = x - step
                iterations += 1
                if not (_SOLDNER_BRACKET[0] <= x <= _SOLDNER_BRACKET[1]):
                    raise InternalError(
                        f"Newton iterate {x} left the bracket [1.4, 1.5]"
                    )
                if abs(step) < mp.mpf(10) ** (-dps + 3):
                    break
    residual = abs(_li_dps(x, target))
    with working_precision(ctx):
        mu = +x
    return SoldnerResult(mu=mu, residual=residual, iterations=iterations)


@tautology_free
def alpha_integral(ctx: PrecisionContext, mu: mp.mpf | None = None) -> mp.mpf:
    """int_mu^e du/log u to ctx.digits.

    Substituting u = e^t turns it into int_{log mu}^1 e^t/t dt, whose
    integrand is smooth (log mu ~ 0.3725 > 0), handled by tanh-sinh
    quadrature.
    """
    wd = ctx.working_digits
    if mu is None:
        mu = soldner(ctx).mu
    with mp.workdps(wd + 10):
        L = mp.log(mp.mpf(mu))
    val = integrate(lambda t: mp.exp(t) / t, L, 1, wd + 5)
    with working_precision(ctx):
        return +val


@tautology_free
def ci_tail_integral(a, ctx: PrecisionContext) -> mp.mpf:
    """int_a^inf cos(u)/u du for a > 0, to ctx.digits, gamma-free.

    Splits at the zeros of cos ((2m+1) pi/2 past a).  The partial head
    segment is integrated directly; the following full-pi segments have
    magnitudes a_j = int_0^pi |cos| / (z_0 + j pi + v) dv, a moment
    sequence in j, so they alternate and are CVZ-accelerated.
    """
    if not a > 0:
        raise RefusalError(f"ci_tail_integral requires a > 0, got {a}")
    wd = ctx.working_digits
    qdps = wd + 10
    with mp.workdps(qdps + 10):
        a = mp.mpf(a)
        pi = +mp.pi
        # smallest (2m+1) pi/2 strictly above a
        m = int(mp.floor(a / pi - mp.mpf(0.5))) + 1
        while (2 * m + 1) * pi / 2 <= a:
            m += 1
        z0 = (2 * m + 1) * pi / 2
        head_sign = 1 if m % 2 == 0 else -1  # sign of cos on (a, z0)

        def f(u):
            return mp.cos(u) / u

        head = integrate(f, a, z0, qdps) if z0 - a > mp.mpf(10) ** (-qdps) else mp.mpf(0)

        def magnitude(j: int) -> mp.mpf:
            lo = z0 + j * pi
            return abs(integrate(f, lo, lo + pi, qdps))

        n_terms = int(math.ceil(wd / 0.7656)) + 8
        tail = sum_alternating_cvz(magnitude, n_terms, ctx)
        # first full segment has sign opposite to the head segment
        val = head - head_sign * tail
    with working_precision(ctx):
        return +val


def ci_series_required_working(digits: int, x) -> int:
    """Working digits needed by the Ci power series at argument x.

    Partial sums reach ~exp(x) before collapsing; 0.87 ~ 2*log10(e)
    rounded up doubles the strictly needed 0.435*x for safety margin.
    """
    return digits + int(math.ceil(0.87 * float(x))) + 10


def ci_series(x, gamma_value: mp.mpf, ctx: PrecisionContext) -> mp.mpf:
    """Ci(x) = gamma_value + log x + sum_{n>=1} (-x^2)^n / (2n (2n)!).

    Deliberately circular (the series contains the constant, which the
    caller supplies); used for validation and the zero-based estimators,
    never inside the integral paths.  Refuses up front when the context
    lacks the cancellation guard: working >= digits + ceil(0.87 x) + 10.
    """
    if not x > 0:
        raise RefusalError(f"ci_series requires x > 0, got {x}")
    required = ci_series_required_working(ctx.digits, x)
    if ctx.working_digits < required:
        raise RefusalError(
            f"ci_series at x={float(x):.6g} needs working precision >= "
            f"digits + ceil(0.87*x) + 10 = {required}, context has "
            f"{ctx.working_digits}"
        )
    with working_precision(ctx):
        x = mp.mpf(x)
        thresh = mp.mpf(10) ** (-ctx.working_digits)
        neg_x2 = -x * x
        u = mp.mpf(1)  # (-x^2)^n / (2n)!
        total = mp.mpf(0)
        n = 0
        while True:
            n += 1
            u *= neg_x2 / ((2 * n - 1) * (2 * n))
            term = u / (2 * n)
            total += term
            if abs(term) < thresh:
                break
        return +(gamma_value + mp.log(x) + total)


# Asymptotic expansion of the k-th positive zero of Ci:
#   c_k ~ q + 1/q - 16/(3 q^3) + 1673/(15 q^5) - 507746/(105 q^7) + ...,
# q = k pi.  Coefficients derived exactly by reverting tan(delta) = g/f for
# the large-x form Ci = f sin - g cos; the first four match the classic
# printed expansion.  Seven correction terms reproduce the reference zero
# table to its full printed precision.
CI_ZERO_EXPANSION: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-16, 3),
    Fraction(1673, 15),
    Fraction(-507746, 105),
    Fraction(111566353, 315),
    Fraction(-45402929006, 1155),
    Fraction(594827011510916, 96525),
    Fraction(-2630734021435652642, 2027025),
    Fraction(85306347063477318430397, 241215975),
)

MACLEOD_TERMS_DEFAULT = 7


def macleod_zero(k: int, terms: int = MACLEOD_TERMS_DEFAULT) -> CiZeroApprox:
    """Asymptotic approximation to the k-th Ci zero, k >= 1.

    Evaluated at 40 digits (well beyond double).  The series is
    asymptotic, so summation stops at the smallest term (optimal
    truncation) or after `terms` corrections, whichever comes first: all
    seven default corrections shrink monotonically for k >= 4, while
    k = 1..3 truncate earlier and stay crude (k = 1 is ~0.1 off the true
    zero).  k = 0 is refused.
    """
    if k < 1:
        raise RefusalError(f"macleod_zero requires k >= 1, got {k}")
    if not 1 <= terms <= len(CI_ZERO_EXPANSION):
        raise RefusalError(
            f"terms={terms} outside 1..{len(CI_ZERO_EXPANSION)}"
        )
    with mp.workdps(40):
        q = k * mp.pi
        val = +q
        qpow = q
        prev_mag = None
        used = 0
        for c in CI_ZERO_EXPANSION[:terms]:
            term = mp.mpf(c.numerator) / (mp.mpf(c.denominator) * qpow)
            if prev_mag is not None and abs(term) >= prev_mag:
                break
            val += term
            prev_mag = abs(term)
            used += 1
            qpow *= q * q
        return CiZeroApprox(k=k, value=+val, terms_used=used)


def hurwitz_zeta(s: int, a, ctx: PrecisionContext) -> mp.mpf:
    """zeta(s, a) = sum_{n>=0} (n+a)^-s for integer s >= 2, a > 0.

    Euler-Maclaurin: M leading terms summed directly, then the integral
    tail (M+a)^(1-s)/(s-1), the half-term (M+a)^(-s)/2, and Bernoulli
    corrections B_2v/(2v)! * (s)_(2v-1) * (M+a)^(-s-2v+1) until negligible.
    M >= working_digits makes the correction terms decay geometrically.
    """
    if s < 2 or int(s) != s:
        raise RefusalError(f"hurwitz_zeta requires integer s >= 2, got {s}")
    if not a > 0:
        raise RefusalError(f"hurwitz_zeta requires a > 0, got {a}")
    wd = ctx.working_digits
    with mp.workdps(wd + 10):
        a = mp.mpf(a)
        s = int(s)
        M = wd + 10
        total = mp.fsum((n + a) ** (-s) for n in range(M))
        N = M + a
        total += N ** (1 - s) / (s - 1)
        total += N ** (-s) / 2
        thresh = mp.mpf(10) ** (-wd - 5)
        poch = mp.mpf(s)  # (s)_(2v-1) = s (s+1) ... (s+2v-2)
        npow = N ** (-s - 1)
        v = 1
        while True:
            term = mp.bernoulli(2 * v) / mp.factorial(2 * v) * poch * npow
            total += term
            if abs(term) < thresh:
                break
            v += 1
            if v > 500:
                raise InternalError("Euler-Maclaurin corrections not converging")
            poch *= (s + 2 * v - 3) * (s + 2 * v - 2)
            npow /= N * N
    with working_precision(ctx):
        return +total
