"""Ingestion of nontrivial zeta-zero ordinates and the reciprocal-sum route.

Each conjugate pair rho = 1/2 +- i t contributes
1/rho + 1/conj(rho) = 1/(1/4 + t^2) (folding the pair analytically removes
any ordering ambiguity inside it and halves the work), and the classical
identity

    sum over pairs of 1/(1/4 + t^2) = 1 + gamma/2 - log(4 pi)/2

gives the estimator

    gamma(n) = 2 * sum_{j<=n} 1/(1/4 + t_j^2) - 2 + log(4 pi),

with the doubled sum tending to 2 + gamma - log(4 pi) = 0.046191417932...
(the constant the reciprocal-sum route quotes; the table of gamma(n)
values only reproduces with the doubling in place).

Ordinates are external data (this package bundles the first 100000,
computed by scripts/generate_zeta_zeros.py; any ascending plain-text table
with one ordinate per line works).  Parsing carries 25 digits, far beyond
the ~1e-9 data accuracy; the sum's sensitivity to an ordinate error dt is
only ~2 t dt / (1/4 + t^2)^2 per term.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import mpmath as mp

from .context import PrecisionContext, working_precision
from .errors import DataError, RefusalError
from .estimators import Estimate, _finish

__all__ = [
    "ZeroList",
    "load_zeros",
    "bundled_zeros_path",
    "reciprocal_sum",
    "zeta_zero_gamma",
]

PARSE_DPS = 25
FIRST_ORDINATE_WINDOW = (14.0, 14.2)


@dataclass(frozen=True)
class ZeroList:
    ordinates: tuple[mp.mpf, ...]
    source: str

    def __len__(self) -> int:
        return len(self.ordinates)


def bundled_zeros_path():
    """Path to the bundled table of the first 100000 ordinates."""
    return resources.files("gammalab").joinpath("data/zeta_zeros_100k.txt")


def load_zeros(path, max_count: int) -> ZeroList:
    """Read up to max_count ascending positive ordinates from a text file.

    Guards against wrong-file ingestion: the first ordinate must lie in
    (14.0, 14.2).  '#' comment lines are permitted.
    """
    if max_count < 1:
        raise DataError(f"max_count={max_count} < 1 would load an empty list")
    ordinates: list[mp.mpf] = []
    with mp.workdps(PARSE_DPS):
        try:
            with open(path, "r", encoding="ascii") as fh:
                prev = None
                for lineno, raw in enumerate(fh, start=1):
                    line = raw.strip()
                    if not line or line.startswith("#"):
                        continue
                    try:
                        t = mp.mpf(line)
                    except ValueError as exc:
                        raise DataError(
                            f"{path}:{lineno}: not a number: {line!r}"
                        ) from exc
                    if t <= 0:
                        raise DataError(f"{path}:{lineno}: non-positive ordinate {line}")
                    if prev is not None and t <= prev:
                        raise DataError(
                            f"{path}:{lineno}: ordinates not strictly ascending"
                        )
                    if prev is None and not (
                        FIRST_ORDINATE_WINDOW[0] < t < FIRST_ORDINATE_WINDOW[1]
                    ):
                        raise DataError(
                            f"{path}: first ordinate {line} outside "
                            f"{FIRST_ORDINATE_WINDOW}; wrong file?"
                        )
                    prev = t
                    ordinates.append(t)
                    if len(ordinates) >= max_count:
                        break
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
    if not ordinates:
        raise DataError(f"{path}: no ordinates found")
    return ZeroList(ordinates=tuple(ordinates), source=str(path))


def reciprocal_sum(zeros: ZeroList, n: int, ctx: PrecisionContext) -> mp.mpf:
    """Partial paired sum  sum_{j<=n} 1/(1/4 + t_j^2); increasing in n."""
    if n < 1:
        raise RefusalError(f"n={n} < 1")
    if n > len(zeros):
        raise RefusalError(f"n={n} exceeds the {len(zeros)} loaded zeros")
    with working_precision(ctx):
        quarter = mp.mpf(1) / 4
        return +mp.fsum(
            1 / (quarter + t * t) for t in zeros.ordinates[:n]
        )


def zeta_zero_gamma(zeros: ZeroList, n: int, ctx: PrecisionContext) -> Estimate:
    """gamma(n) = 2 * sum_{j<=n} 1/(1/4 + t_j^2) - 2 + log(4 pi)."""
    partial = reciprocal_sum(zeros, n, ctx)
    with working_precision(ctx):
        value = 2 * partial - 2 + mp.log(4 * mp.pi)
    return _finish("zeta_zeros", {"n": n}, value, {"zeros": n}, ctx)
