"""Diagnostics: exact error norms, a-priori bounds, condition bounds, certificates.

Everything here is O(n^2) closed-form evaluation; spectral quantities of
actual matrices are only ever computed by the oracle module (in tests and the
compare command), never here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import BoundsConfig, PivotStrategy
from .errors import (
    NonPositiveLowerBoundError,
    NotPositiveDefiniteError,
    PreconditionViolatedError,
)
from .factorize import decompose
from .reconstruct import assemble, determinant

POSITIVE_DEFINITE = "positive-definite"
POSITIVE_SEMIDEFINITE = "positive-semidefinite"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class DiagnosticsReport:
    """Everything the CLI serializes about one approximation run."""

    err_inf: float
    err_fro: float
    err_inf_bound: float
    err_fro_bound: float
    kappa_L_bound: float
    kappa_D_bound: float
    kappa_B_bound: float
    definiteness: str
    det: float
    d_min: float
    d_max: float


def psd_certificate(dec):
    """Definiteness of the represented matrix, read off the pivot signs."""
    if np.all(dec.d > 0.0):
        return POSITIVE_DEFINITE
    if np.all(dec.d >= 0.0):
        return POSITIVE_SEMIDEFINITE
    return INDEFINITE


def error_norms(matrix, dec):
    """Row-sum and Frobenius norms of the approximation error, in closed form.

    Valid when every zero pivot is followed only by zero row scalings (always
    the case when the pivot lower bound was positive).

    Returns
    -------
    (float, float)
        ``(err_inf, err_fro)``.

    Raises
    ------
    PreconditionViolatedError
        If a zero pivot coexists with a nonzero later row scaling.
    """
    zero_positions = np.flatnonzero(dec.d == 0.0)
    if zero_positions.size:
        first = int(zero_positions[0])
        if np.any(dec.omega[dec.p[first:]] != 0.0):
            raise PreconditionViolatedError(
                "zero pivot followed by a nonzero row scaling; "
                "closed-form error norms do not apply")
    magnitudes = np.abs(matrix.entries)[np.ix_(dec.p, dec.p)]
    w = dec.omega[dec.p]
    shift = dec.delta[dec.p]
    lower = np.tril(magnitudes, -1)
    upper = np.triu(magnitudes, 1)
    row_inf = np.abs(shift) + (1.0 - w) * lower.sum(axis=1) + upper @ (1.0 - w)
    err_inf = float(np.max(row_inf)) if row_inf.size else 0.0
    err_fro = math.sqrt(float(np.sum(
        shift * shift + 2.0 * (1.0 - w) ** 2 * (lower * lower).sum(axis=1))))
    return err_inf, err_fro


def error_bounds(matrix, cfg):
    """A-priori bounds on the error norms from the diagonal upper bounds.

    With ``a = max diag_max``, ``b = max |A_ii|`` and ``c`` the largest
    off-diagonal magnitude: ``a + b + (n-1) c`` for the row-sum norm and
    ``sqrt(n ((a+b)^2 + (n-1) c^2))`` for the Frobenius norm.  Infinite
    diagonal bounds give infinite error bounds.
    """
    n = matrix.n
    a = float(np.max(cfg.diag_max)) if n else 0.0
    if not math.isfinite(a):
        return math.inf, math.inf
    b = float(np.max(np.abs(matrix.diagonal()))) if n else 0.0
    if n > 1:
        off = np.abs(matrix.entries).copy()
        np.fill_diagonal(off, 0.0)
        c = float(np.max(off))
    else:
        c = 0.0
    return a + b + (n - 1) * c, math.sqrt(n * ((a + b) ** 2 + (n - 1) * c * c))


def condition_bounds(cfg, n):
    """Closed-form condition-number bounds for the factor, pivots and result.

    ``kappa_2(L) <= 2 (a/l)^(n/2)``, ``kappa_2(D) <= b/l`` and
    ``kappa_2(B) <= 4 a^n b / l^(n+1)`` with ``a`` the mean of the diagonal
    upper bounds and ``b = min(pivot_max, max diag_max)``.

    Raises
    ------
    NonPositiveLowerBoundError
        If ``cfg.pivot_min <= 0``.
    """
    l = cfg.pivot_min
    if l <= 0.0:
        raise NonPositiveLowerBoundError(
            f"condition bounds require pivot_min > 0, got {l}")
    a = float(np.mean(cfg.diag_max))
    b = min(cfg.pivot_max, float(np.max(cfg.diag_max)))
    with np.errstate(over="ignore"):
        kappa_l = 2.0 * float(np.float64(a / l) ** (n / 2.0))
        kappa_d = b / l
        kappa_b = 4.0 * float(np.float64(a) ** n) * b / float(np.float64(l) ** (n + 1))
    return kappa_l, kappa_d, kappa_b


def ldl_condition_interval(matrix):
    """Enclosure of the condition number of the lower factor of a PD matrix.

    The exact LDL^H pivots give ``(trace(A)/(n max d))^(n/(2(n-1)))`` as the
    lower end and ``2 (trace(A)/(n min d))^(n/2)`` as the upper end; the lower
    end is 1 for ``n = 1``.

    Raises
    ------
    NotPositiveDefiniteError
        If the unconstrained decomposition is not an exact one with positive
        pivots.
    """
    n = matrix.n
    cfg = BoundsConfig.unconstrained(n, pivot_min=0.0)
    dec = decompose(matrix, cfg, PivotStrategy.NATURAL_ORDER)
    if np.any(dec.d <= 0.0) or np.any(dec.omega != 1.0):
        raise NotPositiveDefiniteError("matrix is not positive definite")
    trace = float(np.sum(matrix.diagonal()))
    lower = 1.0 if n == 1 else (trace / (n * float(np.max(dec.d)))) ** (n / (2.0 * (n - 1)))
    upper = 2.0 * (trace / (n * float(np.min(dec.d)))) ** (n / 2.0)
    return lower, upper


def diagnostics_report(matrix, cfg, dec):
    """Assemble a :class:`DiagnosticsReport` for a finished run.

    Error norms fall back to direct evaluation of the assembled difference
    when the closed forms do not apply; condition bounds are infinite when
    the pivot lower bound is not positive.
    """
    try:
        err_inf, err_fro = error_norms(matrix, dec)
    except PreconditionViolatedError:
        diff = assemble(matrix, dec).entries - matrix.entries
        err_inf = float(np.max(np.sum(np.abs(diff), axis=1))) if matrix.n else 0.0
        err_fro = float(np.sqrt(np.sum(np.abs(diff) ** 2)))
    err_inf_bound, err_fro_bound = error_bounds(matrix, cfg)
    try:
        kappa_l, kappa_d, kappa_b = condition_bounds(cfg, matrix.n)
    except NonPositiveLowerBoundError:
        kappa_l = kappa_d = kappa_b = math.inf
    return DiagnosticsReport(
        err_inf=err_inf,
        err_fro=err_fro,
        err_inf_bound=err_inf_bound,
        err_fro_bound=err_fro_bound,
        kappa_L_bound=kappa_l,
        kappa_D_bound=kappa_d,
        kappa_B_bound=kappa_b,
        definiteness=psd_certificate(dec),
        det=determinant(dec),
        d_min=float(np.min(dec.d)) if dec.n else 0.0,
        d_max=float(np.max(dec.d)) if dec.n else 0.0,
    )
