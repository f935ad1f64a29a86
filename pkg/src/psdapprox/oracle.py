"""Self-contained reference computations for tests and the compare command.

The eigensolver is a cyclic Jacobi iteration with the usual small-element
threshold; it is kept in-repo (real symmetric only) so the package has no
linear-algebra dependency beyond numpy array plumbing and so the oracle used
to certify results stays auditable.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasiblePivotError, NoConvergenceError
from .pivot import PivotChoice

_OFFDIAG_TOL = 1e-14
_MAX_SWEEPS = 30


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order and the matching orthogonal eigenbasis."""

    values: np.ndarray
    vectors: np.ndarray


def _offdiag_norm(a):
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return math.sqrt(float(np.sum(b * b)))


def _round_robin_rounds(n):
    # circle-method tournament: n-1 (or n) rounds of disjoint index pairs
    m = n if n % 2 == 0 else n + 1
    others = list(range(1, m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(0, others[0])]
        pairs += [(others[k], others[m - 1 - k]) for k in range(1, m // 2)]
        pairs = [(p, q) for p, q in pairs if p < n and q < n]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        others = others[1:] + others[:1]
    return rounds


def jacobi_eigendecomposition(a, max_sweeps=_MAX_SWEEPS):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every index pair once, round-robin: the rotations of one
    round act on disjoint planes, commute exactly, and are applied jointly as
    one orthogonal similarity.  Sweeps run until the off-diagonal Frobenius
    mass drops below ``1e-14 * ||A||_F`` or ``max_sweeps`` sweeps are
    exhausted.

    Raises
    ------
    NoConvergenceError
        If the sweep limit is reached before the tolerance.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    assert a.ndim == 2 and a.shape[0] == a.shape[1]
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return EigenDecomposition(np.diag(a).copy(), v)
    goal = _OFFDIAG_TOL * math.sqrt(float(np.sum(a * a)))
    rounds = _round_robin_rounds(n)
    converged = _offdiag_norm(a) <= goal
    for sweep in range(max_sweeps):
        if converged:
            break
        abs_off_sum = float(np.sum(np.abs(a))) - float(np.sum(np.abs(np.diag(a))))
        threshold = 0.2 * abs_off_sum / (n * n) if sweep < 3 else 0.0
        for p_all, q_all in rounds:
            apq = a[p_all, q_all]
            app = a[p_all, p_all]
            aqq = a[q_all, q_all]
            if sweep > 3:
                tiny = 100.0 * np.abs(apq)
                negligible = (np.abs(app) + tiny == np.abs(app)) \
                    & (np.abs(aqq) + tiny == np.abs(aqq))
                if np.any(negligible):
                    a[p_all[negligible], q_all[negligible]] = 0.0
                    a[q_all[negligible], p_all[negligible]] = 0.0
            active = np.abs(apq) > threshold
            if sweep > 3:
                active &= ~negligible
            if not np.any(active):
                continue
            p, q = p_all[active], q_all[active]
            apq, app, aqq = apq[active], app[active], aqq[active]
            with np.errstate(over="ignore"):
                theta = 0.5 * (aqq - app) / apq
                huge = np.abs(theta) > 1e154
                t = np.where(
                    huge,
                    0.5 / theta,
                    np.copysign(1.0, theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0)))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            col_p = a[:, p]
            col_q = a[:, q]
            a[:, p] = c * col_p - s * col_q
            a[:, q] = s * col_p + c * col_q
            row_p = a[p, :]
            row_q = a[q, :]
            a[p, :] = c[:, None] * row_p - s[:, None] * row_q
            a[q, :] = s[:, None] * row_p + c[:, None] * row_q
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vec_p = v[:, p]
            vec_q = v[:, q]
            v[:, p] = c * vec_p - s * vec_q
            v[:, q] = s * vec_p + c * vec_q
        converged = _offdiag_norm(a) <= goal
    else:
        if not converged:
            raise NoConvergenceError(f"no convergence after {max_sweeps} sweeps")
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], v[:, order])


def min_eigenvalue(a):
    """Smallest eigenvalue of a real symmetric matrix."""
    return float(jacobi_eigendecomposition(a).values[0])


def nearest_psd_eigclip(a):
    """Frobenius-nearest positive semidefinite matrix, by clipping eigenvalues."""
    eig = jacobi_eigendecomposition(a)
    clipped = np.maximum(eig.values, 0.0)
    b = (eig.vectors * clipped) @ eig.vectors.T
    return (b + b.T) / 2.0


def grid_minimal_change(diag_min, diag_max, pivot_min, pivot_max, epsilon,
                        alpha, beta, gamma, grid_n=400):
    """Brute-force lattice minimizer of the pivot-choice objective.

    Evaluates ``f(d, omega) = (d + omega^2 alpha - gamma)^2 + (omega - 1)^2 beta``
    on a ``grid_n x grid_n`` lattice restricted to the feasible set, plus the
    exact boundary candidates (the unconstrained stationary point with
    ``omega = 1``, the two pivot bounds, and ``(0, 0)`` when admissible).

    Raises
    ------
    InfeasiblePivotError
        If ``max(pivot_min, epsilon, diag_min) > min(pivot_max, diag_max)``.
    """
    x, y, l, u = float(diag_min), float(diag_max), float(pivot_min), float(pivot_max)
    eps = float(epsilon)
    alpha, beta, gamma = float(alpha), float(beta), float(gamma)
    if grid_n < 100:
        raise ValueError(f"grid_n must be at least 100, got {grid_n}")
    if max(l, eps, x) > min(u, y):
        raise InfeasiblePivotError(
            f"no feasible pivot: max({l}, {eps}, {x}) > min({u}, {y})")

    d_lo = max(l, eps, x - alpha)
    d_cap = u if math.isfinite(u) else gamma + alpha + abs(gamma) + 1.0
    d_hi = min(y, max(d_cap, d_lo))
    d_values = np.linspace(d_lo, d_hi, grid_n)
    exact = [gamma - alpha, max(l, eps)]
    if math.isfinite(u):
        exact.append(u)
    for d in exact:
        if d_lo <= d <= d_hi:
            d_values = np.append(d_values, d)

    if alpha > 0.0:
        w_lo = np.sqrt(np.maximum(x - d_values, 0.0) / alpha)
        w_hi = np.minimum(np.sqrt(np.maximum(y - d_values, 0.0) / alpha), 1.0)
        keep = w_lo <= w_hi
        d_values, w_lo, w_hi = d_values[keep], w_lo[keep], w_hi[keep]
    else:
        w_lo = np.zeros_like(d_values)
        w_hi = np.ones_like(d_values)
    base = np.linspace(0.0, 1.0, grid_n)
    w = w_lo[:, None] + (w_hi - w_lo)[:, None] * base[None, :]
    d = d_values[:, None]
    f = (d + w * w * alpha - gamma) ** 2 + (w - 1.0) ** 2 * beta

    flat = int(np.argmin(f))
    best = (float(f.flat[flat]), -float(np.broadcast_to(d, f.shape).flat[flat]),
            float(w.flat[flat]))
    if max(l, x) <= 0.0:
        zero = (gamma * gamma + beta, -0.0, 0.0)
        if zero < best:
            best = zero
    return PivotChoice(-best[1], best[2], best[0])
