"""Precision policy and shared reference constants.

Every numeric operation in the package receives a :class:`PrecisionContext`
and must deliver its result with error below ``10**-ctx.digits``; the extra
``guard`` digits absorb rounding accumulation.  Cancellation-heavy kernels
document their own stronger guard formulas and re-derive the working
precision internally.

The reference value of the target constant is an embedded published
constant (2560 decimal digits), never computed at startup: the error
columns reported by the estimators must not depend on the code under test.
The embedded digits are cross-checked at test time by independent
estimators that do not read them.
"""

from __future__ import annotations

import contextvars
import math
from contextlib import contextmanager
from dataclasses import dataclass

import mpmath as mp

from .errors import RefusalError, TautologyError

MIN_DIGITS = 10
MIN_GUARD = 10

# 2560 decimal digits of the Euler-Mascheroni constant (value 0.<digits>),
# as published; validated by the estimator cross-agreement suite.
_GAMMA_DIGITS = (
    "5772156649015328606065120900824024310421593359399235988057672348848677"
    "2677766467093694706329174674951463144724980708248096050401448654283622"
    "4173997644923536253500333742937337737673942792595258247094916008735203"
    "9481656708532331517766115286211995015079847937450857057400299213547861"
    "4669402960432542151905877553526733139925401296742051375413954911168510"
    "2807984234877587205038431093997361372553060889331267600172479537836759"
    "2713515772261027349291394079843010341777177808815495706610750101619166"
    "3340152278935867965497252036212879226555953669628176388792726801324310"
    "1047650596370394739495763890657296792960100901512519595092224350140934"
    "9871228247949747195646976318506676129063811051824197444867836380861749"
    "4551698927923018773910729457815543160050021828440960537724342032854783"
    "6701517739439870030237033951832869000155819398804270741154222781971652"
    "3011073565833967348717650491941812300040654693142999297779569303100503"
    "0863034185698032310836916400258929708909854868257773642882539549258736"
    "2959613329857473930237343884707037028441292016641785024873337908056275"
    "4998434590761643167103146710722370021810745044418664759134803669025532"
    "4586254422253451813879124345735013612977822782881489459098638460062931"
    "6947188714958752549236649352047324364109726827616087759508809512620840"
    "4544477992299157248292516251278427659657083214610298214617951957959095"
    "9227042089896279712553632179488737642106606070659825619901028807561251"
    "9913751167821764361905705844078357350158005607745793421314498850078641"
    "5171615194565706170432450750081687052307890937046143066848179164968425"
    "4915049672431218378387535648949508684541023406016225085155838672349441"
    "8788044094077010688379511130787202342639522692097160885690838251137871"
    "2836820491178925944784861991185293910293099059255266917274468920443869"
    "7111471745715745732039352091223160850868275588901094516811810168749754"
    "7096936667121020630482716589504932731486087494020700674259091824875962"
    "1373842311442653135029230317517225722162832488381124589574386239870375"
    "7662855130331439299954018531341415862127886480761100301521196578006811"
    "7773763501681838973389663986895793299145638864431037060807817448995795"
    "8324579418962026049841043922507860460362527726022919682995860988339013"
    "7871714226917883819529844560791605197279736047591025109957791335157917"
    "7225150254929324632502874767794842158405075992904018557645990186269267"
    "7643726605711768133655908815548107470000623363725288949554636971433012"
    "0079130855526395954978230231440391497404947468259473208461852460587766"
    "9488287953010406349172292185800870677069042792674328444696851497182567"
    "8095841654491851457533196406331199373822"
)

EMBEDDED_GAMMA_DIGITS = len(_GAMMA_DIGITS)


def default_guard(digits: int) -> int:
    """Default guard: 10 + ceil(log10(digits)).

    Covers rounding accumulation over up to ~10*digits additions; operations
    with cancellation state their own formula and re-derive internally.
    """
    return MIN_GUARD + int(math.ceil(math.log10(digits)))


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus guard digits of working precision.

    Immutable; safe to share between threads.
    """

    digits: int
    guard: int

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard


def make_context(digits: int, guard: int | None = None) -> PrecisionContext:
    """Build a PrecisionContext, rejecting toy precisions.

    ``guard`` defaults to ``10 + ceil(log10(digits))``.
    """
    if digits < MIN_DIGITS:
        raise RefusalError(
            f"digits={digits} < {MIN_DIGITS}: the methods here are meaningless "
            "at toy precision"
        )
    if guard is None:
        guard = default_guard(digits)
    if guard < MIN_GUARD:
        raise RefusalError(f"guard={guard} < {MIN_GUARD}")
    return PrecisionContext(digits=int(digits), guard=int(guard))


@contextmanager
def working_precision(ctx: PrecisionContext, extra: int = 0):
    """Run a block at ctx.working_digits (+extra) decimal digits."""
    with mp.workdps(ctx.working_digits + extra):
        yield


# ---------------------------------------------------------------------------
# Tautology guard: estimators compute inside forbid_reference_gamma(), which
# turns any read of the embedded constant into an error.  Error columns are
# filled in afterwards, outside the guard.
# ---------------------------------------------------------------------------

_TAUTOLOGY_GUARD: contextvars.ContextVar[bool] = contextvars.ContextVar(
    "gammalab_tautology_guard", default=False
)


@contextmanager
def forbid_reference_gamma():
    """Within this block, reference_gamma() raises TautologyError."""
    token = _TAUTOLOGY_GUARD.set(True)
    try:
        yield
    finally:
        _TAUTOLOGY_GUARD.reset(token)


def tautology_free(func):
    """Mark an operation as having no code path that reads reference_gamma.

    The marker is auditable (``func.tautology_free``) and the claim is
    enforced at runtime: estimator values are computed under
    :func:`forbid_reference_gamma`.
    """
    func.tautology_free = True
    return func


def reference_gamma(ctx: PrecisionContext) -> mp.mpf:
    """The embedded reference constant, rounded to ctx.digits digits.

    Used ONLY for error columns and explicitly tautology-flagged kernels,
    never inside an estimator's own arithmetic (enforced by the guard).
    """
    return _reference_gamma_at(ctx.digits)


def _reference_gamma_at(ndigits: int) -> mp.mpf:
    if _TAUTOLOGY_GUARD.get():
        raise TautologyError(
            "reference gamma was read inside a computation that must be "
            "independent of it"
        )
    if ndigits < 1:
        raise RefusalError(f"ndigits={ndigits} < 1")
    if ndigits > EMBEDDED_GAMMA_DIGITS:
        raise RefusalError(
            f"requested {ndigits} digits exceeds the embedded store of "
            f"{EMBEDDED_GAMMA_DIGITS} digits"
        )
    with mp.workdps(ndigits):
        return +mp.mpf("0." + _GAMMA_DIGITS[: ndigits + 2])


@dataclass(frozen=True)
class ReferenceConstants:
    """Shared constants at one working precision, built once per context."""

    gamma_ref: mp.mpf
    pi: mp.mpf
    log2: mp.mpf
    e: mp.mpf

    @classmethod
    def for_context(cls, ctx: PrecisionContext) -> "ReferenceConstants":
        with working_precision(ctx):
            return cls(
                gamma_ref=_reference_gamma_at(
                    min(ctx.working_digits, EMBEDDED_GAMMA_DIGITS)
                ),
                pi=+mp.pi,
                log2=+mp.log(2),
                e=+mp.e,
            )


def abs_error_vs_reference(value: mp.mpf, ctx: PrecisionContext) -> mp.mpf:
    """|value - reference|, evaluated at working_digits + 10.

    Evaluating above the working precision keeps the error column
    trustworthy down to the rounding floor of ``value`` itself (needed by
    the residual-magnitude checks, which resolve errors ~10**-(working+1)).
    Cancellation-heavy estimators can carry guards beyond the embedded
    store; their errors live near 10**-digits, so capping at the store is
    ample there (but at least digits + 5 must be available).
    """
    cmp_digits = min(ctx.working_digits + 10, EMBEDDED_GAMMA_DIGITS)
    if cmp_digits < ctx.digits + 5:
        raise RefusalError(
            f"error column needs {ctx.digits + 5} reference digits; the "
            f"embedded store has {EMBEDDED_GAMMA_DIGITS}"
        )
    gamma = _reference_gamma_at(cmp_digits)
    with mp.workdps(cmp_digits):
        return abs(mp.mpf(value) - gamma)
