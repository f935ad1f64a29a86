"""Modified LDL^H decomposition with bounded pivots and row scaling.

The elimination runs in pivot order: at step ``i`` a pivot position is chosen
by the configured strategy, the minimal-change rule picks the pivot value
``d[i]`` and the row scaling ``omega[p[i]]``, the current row of the factor is
scaled, and the column below the pivot is formed by the usual inner-product
update.  The diagonal shift ``delta[p[i]]`` records how far the represented
diagonal moved from the input.
"""

import numpy as np

from .core import (
    HermitianMatrix,
    ModifiedDecomposition,
    PivotStrategy,
    validate_bounds,
)
from .errors import NonNegativePivotBoundRequiredError, NumericalBreakdownError
from .pivot import PivotState, minimal_change


def default_epsilon(matrix):
    """Matrix-dependent zero-pivot exclusion radius.

    Unit roundoff scaled by ``n * max_i |A_ii|``, floored away from zero so it
    stays positive for the zero matrix.
    """
    unit_roundoff = float(np.finfo(np.float64).eps) / 2.0
    scale = float(np.max(np.abs(matrix.diagonal()))) if matrix.n else 0.0
    return max(unit_roundoff * matrix.n * scale, 1e-300)


class FactorizeWorkspace:
    """Mutable per-call state of the elimination.

    ``alpha[k]`` and ``beta[k]`` are indexed by original index ``k``: after
    step ``i``, ``alpha[p[j]]`` holds ``sum_{k <= i} |L[j, k]|^2 d[k]`` for
    ``j > i`` and ``beta[p[k]]`` holds ``2 sum_{m < i} |A[p[k], p[m]]|^2``.
    """

    def __init__(self, matrix, dtype):
        n = matrix.n
        self.n = n
        self.p = np.arange(n)
        self.L = np.zeros((n, n), dtype=dtype)
        self.d = np.zeros(n)
        self.omega = np.zeros(n)
        self.delta = np.zeros(n)
        self.alpha = np.zeros(n)
        self.beta = np.zeros(n)


def update_beta(ws, matrix, i):
    """Advance the ``beta`` accumulators to elimination step ``i``.

    Resets ``beta`` at the first step; afterwards adds twice the squared
    magnitude of the previous pivot column for every remaining position.
    """
    if i == 0:
        ws.beta[:] = 0.0
        return ws
    tail = ws.p[i:]
    col = matrix.entries[tail, ws.p[i - 1]]
    ws.beta[tail] += 2.0 * (col * col.conj()).real
    return ws


def effective_lower_bound(matrix, cfg, index):
    """Per-index pivot lower bound used by the varying-lower-bound heuristic.

    Half the diagonal entry clipped to its diagonal bounds, then clamped to
    ``[pivot_min, pivot_max]``.
    """
    clipped = min(max(float(matrix.entries[index, index].real),
                      float(cfg.diag_min[index])), float(cfg.diag_max[index]))
    return min(max(0.5 * clipped, cfg.pivot_min), cfg.pivot_max)


def _pivot_choice_at(ws, matrix, cfg, k):
    idx = ws.p[k]
    lower = effective_lower_bound(matrix, cfg, idx) \
        if cfg.use_varying_lower_bound else cfg.pivot_min
    state = PivotState(float(ws.alpha[idx]), float(ws.beta[idx]),
                       float(matrix.entries[idx, idx].real))
    return minimal_change(float(cfg.diag_min[idx]), float(cfg.diag_max[idx]),
                          lower, cfg.pivot_max, cfg.epsilon, state)


def select_pivot(ws, matrix, cfg, i, strategy):
    """Choose the pivot position for step ``i`` under the given strategy.

    Returns
    -------
    (int, PivotChoice)
        The chosen position ``j`` in ``{i, ..., n-1}`` and its pivot choice.
        Natural order always returns ``j = i``; the max-d strategy minimizes
        ``(-d, f, omega, k)`` and the minimal-error strategy ``(f, -d,
        omega, k)``, so ties fall to the smallest position.
    """
    if strategy is PivotStrategy.NATURAL_ORDER:
        return i, _pivot_choice_at(ws, matrix, cfg, i)
    choices = [(k, _pivot_choice_at(ws, matrix, cfg, k)) for k in range(i, ws.n)]
    if strategy is PivotStrategy.MAX_D_PIVOT:
        return min(choices, key=lambda kc: (-kc[1].d, kc[1].f, kc[1].omega, kc[0]))
    return min(choices, key=lambda kc: (kc[1].f, -kc[1].d, kc[1].omega, kc[0]))


def decompose(matrix, cfg, strategy=PivotStrategy.MAX_D_PIVOT):
    """Modified LDL^H decomposition of a Hermitian matrix.

    Parameters
    ----------
    matrix : HermitianMatrix
    cfg : BoundsConfig
        Diagonal and pivot bounds.  A ``None`` epsilon is replaced by
        :func:`default_epsilon`.  ``pivot_min`` must be nonnegative (the
        minimal-change pivot rule requires it).
    strategy : PivotStrategy or str

    Returns
    -------
    ModifiedDecomposition

    Raises
    ------
    NonNegativePivotBoundRequiredError
        If ``cfg.pivot_min < 0``.
    NumericalBreakdownError
        If a computed factor entry is not finite.
    """
    strategy = PivotStrategy(strategy)
    n = matrix.n
    if cfg.epsilon is None:
        cfg = cfg.with_epsilon(default_epsilon(matrix))
    validate_bounds(cfg, n)
    if cfg.pivot_min < 0:
        raise NonNegativePivotBoundRequiredError(
            f"the minimal-change pivot rule requires pivot_min >= 0, got {cfg.pivot_min}")

    a = matrix.entries
    dtype = np.complex128 if matrix.is_complex else np.float64
    ws = FactorizeWorkspace(matrix, dtype)
    for i in range(n):
        update_beta(ws, matrix, i)
        j, choice = select_pivot(ws, matrix, cfg, i, strategy)
        if j != i:
            ws.p[[i, j]] = ws.p[[j, i]]
            if i > 0:
                ws.L[[i, j], :i] = ws.L[[j, i], :i]
        pivot_index = ws.p[i]
        d_i = choice.d
        omega_i = choice.omega
        if omega_i != 1.0 and i > 0:
            ws.L[i, :i] *= omega_i
        ws.d[i] = d_i
        ws.omega[pivot_index] = omega_i
        ws.delta[pivot_index] = d_i + omega_i * omega_i * ws.alpha[pivot_index] \
            - a[pivot_index, pivot_index].real
        tail = ws.p[i + 1:]
        if d_i != 0.0:
            column = a[tail, pivot_index].astype(dtype)
            if i > 0:
                column -= ws.L[i + 1:, :i] @ (np.conj(ws.L[i, :i]) * ws.d[:i])
            column /= d_i
            if not np.all(np.isfinite(column)):
                raise NumericalBreakdownError(
                    f"non-finite factor entry in column {i} (pivot {d_i})")
            ws.L[i + 1:, i] = column
            ws.alpha[tail] += (column * column.conj()).real * d_i
        else:
            ws.L[i + 1:, i] = 0.0
    diag = np.arange(n)
    ws.L[diag, diag] = 1.0
    return ModifiedDecomposition(ws.L, ws.d, ws.p, ws.omega, ws.delta)
