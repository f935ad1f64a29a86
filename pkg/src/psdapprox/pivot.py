"""Per-pivot choice of the pivot value and row scaling.

Given the elimination state (accumulators ``alpha``, ``beta`` and the current
diagonal entry ``gamma``), :func:`minimal_change` picks the pair
``(d, omega)`` that minimizes the incremental squared Frobenius error

    f(d, omega) = (d + omega^2 alpha - gamma)^2 + (omega - 1)^2 beta

subject to ``d in [max(pivot_min, epsilon), pivot_max]``, ``omega in [0, 1]``
and ``d + omega^2 alpha in [diag_min, diag_max]``; the pair ``(0, 0)`` is
additionally admissible when ``max(pivot_min, diag_min) <= 0``.  Ties are
broken towards larger ``d`` (better conditioning), then smaller ``omega``.
"""

import math
from dataclasses import dataclass

from .errors import DegenerateCubicError, InfeasiblePivotError

_ROOT_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class PivotState:
    """Elimination-state scalars feeding one pivot choice.

    ``alpha`` accumulates the squared factor entries weighted by earlier
    pivots, ``beta`` twice the squared off-diagonal magnitudes of earlier
    pivot columns, ``gamma`` is the current diagonal entry.  With a
    nonnegative pivot lower bound both accumulators are nonnegative, and in
    exact arithmetic ``beta == 0`` implies ``alpha == 0``.
    """

    alpha: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class PivotChoice:
    """A pivot/scaling pair together with its objective value."""

    d: float
    omega: float
    f: float


def _cbrt(v):
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def _polish_root(t, a3, a1, a0):
    # a few Newton steps; keep the iterate with the smallest residual
    best_t = t
    best_r = abs(((a3 * t) * t + a1) * t + a0)
    for _ in range(3):
        slope = (3.0 * a3 * t) * t + a1
        if slope == 0.0:
            break
        t2 = t - (((a3 * t) * t + a1) * t + a0) / slope
        if not math.isfinite(t2) or t2 == t:
            break
        t = t2
        r = abs(((a3 * t) * t + a1) * t + a0)
        if r < best_r:
            best_t, best_r = t, r
        if r == 0.0:
            break
    return best_t


def solve_cubic_real_roots(a3, a1, a0):
    """All real roots of the depressed cubic ``a3 t^3 + a1 t + a0 = 0``.

    Closed forms selected by the sign of the discriminant (Cardano for one
    real root, trigonometric for three), each root polished by Newton steps.
    Roots closer than ``1e-12`` relative to ``max(1, |root|)`` are merged.

    Returns
    -------
    list of float
        The real roots in ascending order; length 1, 2 or 3.

    Raises
    ------
    DegenerateCubicError
        If ``a3 == 0``.
    """
    if a3 == 0.0:
        raise DegenerateCubicError("leading coefficient is zero")
    p = a1 / a3
    q = a0 / a3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0.0:
        s = math.sqrt(disc)
        roots = [_cbrt(-q / 2.0 + s) + _cbrt(-q / 2.0 - s)]
    elif disc < 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = min(1.0, max(-1.0, 3.0 * q / (p * m)))
        theta = math.acos(arg) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in (0, 1, 2)]
    elif p == 0.0:
        roots = [0.0]
    else:
        simple = 3.0 * q / p
        roots = [simple, -simple / 2.0]
    roots = sorted(_polish_root(t, a3, a1, a0) for t in roots)
    merged = [roots[0]]
    for t in roots[1:]:
        if t - merged[-1] > _ROOT_MERGE_TOL * max(1.0, abs(t), abs(merged[-1])):
            merged.append(t)
    return merged


def objective(d, omega, state):
    """Incremental squared Frobenius error ``f(d, omega)`` for ``state``."""
    t = d + omega * omega * state.alpha - state.gamma
    return t * t + (omega - 1.0) ** 2 * state.beta


def minimal_change(diag_min, diag_max, pivot_min, pivot_max, epsilon, state):
    """Feasible ``(d, omega)`` with minimal incremental Frobenius error.

    Parameters
    ----------
    diag_min, diag_max : float
        Bounds on ``d + omega^2 alpha`` (``-inf`` / ``+inf`` allowed).
    pivot_min, pivot_max : float
        Bounds on ``d``; ``pivot_min`` must be nonnegative.
    epsilon : float
        Exclusion radius around zero for ``d``, positive.
    state : PivotState

    Returns
    -------
    PivotChoice
        The minimizer; among minimizers the one with the largest ``d``, then
        the smallest ``omega``.

    Raises
    ------
    InfeasiblePivotError
        If ``max(pivot_min, epsilon, diag_min) > min(pivot_max, diag_max)``.
    """
    x, y, l, u = float(diag_min), float(diag_max), float(pivot_min), float(pivot_max)
    eps = float(epsilon)
    alpha, beta, gamma = float(state.alpha), float(state.beta), float(state.gamma)
    assert eps > 0.0 and l >= 0.0 and alpha >= 0.0 and beta >= 0.0
    assert math.isfinite(alpha) and math.isfinite(beta) and math.isfinite(gamma)
    if max(l, eps, x) > min(u, y):
        raise InfeasiblePivotError(
            f"no feasible pivot: max({l}, {eps}, {x}) > min({u}, {y})")

    lo = max(l, eps, x - alpha)
    hi = min(u, y - alpha)
    if lo <= gamma - alpha <= hi:
        return PivotChoice(gamma - alpha, 1.0, 0.0)

    candidates = []
    if lo <= hi:
        candidates.append((min(max(l, eps, x - alpha, gamma - alpha), u, y - alpha), 1.0))
    if alpha != 0.0:
        boundary_d = []
        if max(l, eps) >= x - alpha:
            boundary_d.append(max(l, eps))
        if math.isfinite(u) and u <= y:
            boundary_d.append(u)
        for d in boundary_d:
            if beta == 0.0:
                # degenerate stationarity (rounding upstream): roots of
                # 2 alpha^2 w^3 + 2 alpha (d - gamma) w = 0
                roots = [0.0]
                if gamma > d:
                    roots.append(math.sqrt((gamma - d) / alpha))
            else:
                roots = solve_cubic_real_roots(
                    2.0 * alpha * alpha, 2.0 * alpha * (d - gamma) + beta, -beta)
            w_floor = math.sqrt(max(x - d, 0.0) / alpha)
            w_ceil = math.sqrt((y - d) / alpha)
            for w in roots:
                candidates.append((d, min(max(w, w_floor), w_ceil, 1.0)))
    if l == 0.0 and x <= 0.0 and 2.0 * gamma <= eps:
        candidates.append((0.0, 0.0))

    assert candidates
    best = min(candidates, key=lambda dw: (objective(dw[0], dw[1], state), -dw[0], dw[1]))
    return PivotChoice(best[0], best[1], objective(best[0], best[1], state))
