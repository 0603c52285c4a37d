"""gammalab: multiprecision routes to the Euler-Mascheroni constant.

Analytic estimators (Soldner-constant series, cosine-integral splits, the
Ci-zero family), number-theoretic harnesses (Mertens product over a prime
sieve, Dirichlet divisor sums, zeta-zero reciprocal sums, the
Mersenne-exponent fit), and the multiprecision kernels they share.
"""

from .context import (
    PrecisionContext,
    ReferenceConstants,
    make_context,
    reference_gamma,
)
from .errors import (
    DataError,
    GammaLabError,
    InternalError,
    RefusalError,
    TautologyError,
)
from .estimators import (
    ConvergenceTable,
    Estimate,
    convergence_table,
    est_ci_zero,
    est_cosine,
    est_detemple,
    est_em3,
    est_em4,
    est_emrs1,
    est_emrs2,
    est_fracpart,
    est_harmonic,
    est_hurwitz,
    est_kpi_limit,
    required_working_digits,
)
from .number_theory import (
    MERSENNE_EXPONENTS,
    MersenneExponents,
    SieveSegmentReport,
    divisor_gamma,
    divisor_sum,
    divisor_sum_naive,
    load_mersenne_exponents,
    mersenne_fit,
    mertens_gamma,
    sieve_log_product,
)
from .series import StopReason, SumReport, sum_alternating_cvz, sum_until_negligible
from .special import (
    CiZeroApprox,
    SoldnerResult,
    alpha_integral,
    ci_series,
    ci_tail_integral,
    e1,
    hurwitz_zeta,
    li_pv,
    macleod_zero,
    soldner,
)
from .zeros import ZeroList, bundled_zeros_path, load_zeros, reciprocal_sum, zeta_zero_gamma

__version__ = "0.1.0"
