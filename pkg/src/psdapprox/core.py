"""Domain types, bounds validation and permutation utilities.

Conventions used throughout the package:

* all vectors and matrices are 0-indexed (documentation of the underlying
  method is 1-based; the conversion happens once, here at the API boundary),
* unbounded diagonal or pivot bounds are IEEE infinities,
* scalars are double precision reals or complex numbers with double
  precision parts.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DimensionMismatchError,
    EpsilonWindowViolationError,
    InfeasibleBoundsError,
    NonPositiveEpsilonError,
    NotAPermutationError,
    NotHermitianError,
    NotSquareError,
)

HERMITIAN_TOL = 1e-12


def _as_readonly(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


class HermitianMatrix:
    """Dense Hermitian matrix with double precision entries.

    The constructor checks the input for Hermitian symmetry up to
    ``HERMITIAN_TOL * max(1, max_ij |A_ij|)``, then enforces exact symmetry by
    averaging with the conjugate transpose and forcing the diagonal to be
    real.  Instances are immutable.

    Parameters
    ----------
    entries : array_like
        Square matrix of real or complex scalars.

    Raises
    ------
    NotSquareError
        If the input is not a square 2-d array.
    NotHermitianError
        If the input differs from its conjugate transpose beyond tolerance.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        a = np.asarray(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NotSquareError(f"expected a square matrix, got shape {a.shape}")
        if np.iscomplexobj(a):
            a = a.astype(np.complex128, copy=True)
        else:
            a = a.astype(np.float64, copy=True)
        if a.size:
            if not np.all(np.isfinite(a.view(np.float64) if a.dtype == np.complex128 else a)):
                raise NotHermitianError("matrix entries must be finite")
            scale = max(1.0, float(np.max(np.abs(a))))
            deviation = float(np.max(np.abs(a - a.conj().T)))
            if deviation > HERMITIAN_TOL * scale:
                raise NotHermitianError(
                    f"matrix is not Hermitian: max |A_ij - conj(A_ji)| = {deviation:.3e} "
                    f"exceeds {HERMITIAN_TOL:.0e} * {scale:.3e}"
                )
        a = (a + a.conj().T) / 2
        if np.iscomplexobj(a):
            idx = np.arange(a.shape[0])
            a[idx, idx] = a[idx, idx].real
        self._entries = _as_readonly(a)

    @property
    def n(self):
        """Matrix dimension."""
        return self._entries.shape[0]

    @property
    def entries(self):
        """Read-only ``(n, n)`` array of matrix entries."""
        return self._entries

    @property
    def is_complex(self):
        return np.iscomplexobj(self._entries)

    def diagonal(self):
        """Real diagonal of the matrix."""
        return self._entries.diagonal().real

    def __repr__(self):
        kind = "complex" if self.is_complex else "real"
        return f"HermitianMatrix(n={self.n}, {kind})"


class PivotStrategy(Enum):
    """Strategy for choosing the pivot row/column in each elimination step."""

    NATURAL_ORDER = "natural-order"
    MINIMAL_ERROR_PIVOT = "minimal-error-pivot"
    MAX_D_PIVOT = "max-d-pivot"


@dataclass(frozen=True)
class BoundsConfig:
    """Bounds on the approximation's diagonal and on the pivot values.

    Attributes
    ----------
    diag_min, diag_max : ndarray
        Per-index lower/upper bounds on the diagonal of the approximation
        (``-inf`` / ``+inf`` for unbounded).
    pivot_min, pivot_max : float
        Scalar bounds on the pivot values (entries of the diagonal factor).
    epsilon : float or None
        Exclusion radius around zero for pivot magnitudes.  ``None`` selects
        a matrix-dependent default at decomposition time.
    use_varying_lower_bound : bool
        Replace ``pivot_min`` by a per-index heuristic bound derived from the
        matrix diagonal (half the clipped diagonal value, clamped to
        ``[pivot_min, pivot_max]``).
    """

    diag_min: np.ndarray
    diag_max: np.ndarray
    pivot_min: float
    pivot_max: float
    epsilon: float | None = None
    use_varying_lower_bound: bool = field(default=False)

    @classmethod
    def from_scalars(cls, n, diag_min=-np.inf, diag_max=np.inf,
                     pivot_min=0.0, pivot_max=np.inf, epsilon=None,
                     use_varying_lower_bound=False):
        """Build a config from scalars or per-index vectors for ``diag_*``."""
        x = np.broadcast_to(np.asarray(diag_min, dtype=np.float64), (n,)).copy()
        y = np.broadcast_to(np.asarray(diag_max, dtype=np.float64), (n,)).copy()
        return cls(x, y, float(pivot_min), float(pivot_max),
                   None if epsilon is None else float(epsilon),
                   use_varying_lower_bound)

    @classmethod
    def unconstrained(cls, n, pivot_min=0.0, epsilon=None):
        """Config with no diagonal bounds and no pivot upper bound."""
        return cls.from_scalars(n, pivot_min=pivot_min, epsilon=epsilon)

    def __post_init__(self):
        object.__setattr__(self, "diag_min", _as_readonly(np.asarray(self.diag_min, dtype=np.float64)))
        object.__setattr__(self, "diag_max", _as_readonly(np.asarray(self.diag_max, dtype=np.float64)))

    def with_epsilon(self, epsilon):
        return BoundsConfig(self.diag_min, self.diag_max, self.pivot_min,
                            self.pivot_max, float(epsilon),
                            self.use_varying_lower_bound)


@dataclass(frozen=True)
class ModifiedDecomposition:
    """Output of the modified LDL^H decomposition.

    Attributes
    ----------
    L : ndarray
        Unit lower triangular factor, in pivot order.
    d : ndarray
        Pivot values (diagonal of the real diagonal factor), in pivot order.
    p : ndarray
        Permutation vector: position ``i`` of the factorization corresponds
        to original index ``p[i]``.
    omega : ndarray
        Row scaling factors in ``[0, 1]``, indexed by original index.
    delta : ndarray
        Diagonal shifts, indexed by original index.
    """

    L: np.ndarray
    d: np.ndarray
    p: np.ndarray
    omega: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        n = self.L.shape[0]
        for name in ("L", "d", "p", "omega", "delta"):
            a = getattr(self, name)
            expected = (n, n) if name == "L" else (n,)
            if a.shape != expected:
                raise DimensionMismatchError(f"{name} has shape {a.shape}, expected {expected}")
            object.__setattr__(self, name, _as_readonly(a))

    @property
    def n(self):
        return self.L.shape[0]


def validate_bounds(cfg, n):
    """Check a :class:`BoundsConfig` against the decomposition preconditions.

    Parameters
    ----------
    cfg : BoundsConfig
        Configuration with a concrete (non-``None``) ``epsilon``.
    n : int
        Matrix dimension; the diagonal bound vectors must have this length.

    Returns
    -------
    BoundsConfig
        ``cfg`` unchanged.

    Raises
    ------
    NonPositiveEpsilonError
        If ``epsilon`` is missing or not positive.
    DimensionMismatchError
        If the bound vectors do not have length ``n``.
    InfeasibleBoundsError
        If ``max(diag_min[i], pivot_min) > min(diag_max[i], pivot_max)``.
    EpsilonWindowViolationError
        If neither ``|diag_min[i]|, |pivot_min| >= epsilon`` nor
        ``|diag_max[i]|, |pivot_max| >= epsilon`` holds.
    """
    eps = cfg.epsilon
    if eps is None or not eps > 0:
        raise NonPositiveEpsilonError(f"epsilon must be positive, got {eps}")
    if cfg.diag_min.shape != (n,) or cfg.diag_max.shape != (n,):
        raise DimensionMismatchError(
            f"diagonal bounds have shapes {cfg.diag_min.shape} and {cfg.diag_max.shape}, expected ({n},)")
    x, y, l, u = cfg.diag_min, cfg.diag_max, cfg.pivot_min, cfg.pivot_max
    for i in range(n):
        if max(x[i], l) > min(y[i], u):
            raise InfeasibleBoundsError(i)
        if not ((abs(x[i]) >= eps and abs(l) >= eps) or (abs(y[i]) >= eps and abs(u) >= eps)):
            raise EpsilonWindowViolationError(i)
    return cfg


def _check_permutation(p):
    p = np.asarray(p)
    n = p.shape[0] if p.ndim == 1 else -1
    if p.ndim != 1 or not np.issubdtype(p.dtype, np.integer):
        raise NotAPermutationError(f"expected a 1-d integer vector, got {p!r}")
    seen = np.zeros(n, dtype=bool)
    for v in p:
        if v < 0 or v >= n or seen[v]:
            raise NotAPermutationError(f"{p!r} is not a permutation of 0..{n - 1}")
        seen[v] = True
    return p


def inverse_permutation(p):
    """Inverse ``q`` of a permutation ``p``, with ``q[p[i]] = p[q[i]] = i``.

    Raises
    ------
    NotAPermutationError
        If ``p`` has duplicate or out-of-range entries.
    """
    p = _check_permutation(p)
    q = np.empty_like(p)
    q[p] = np.arange(p.shape[0], dtype=p.dtype)
    return q


def apply_symmetric_permutation(matrix, p):
    """Symmetric reordering: entry ``(i, j)`` of the result is ``A[p[i], p[j]]``.

    Raises
    ------
    DimensionMismatchError
        If ``p`` does not have length ``n``.
    NotAPermutationError
        If ``p`` is not a permutation.
    """
    a = matrix.entries
    p = np.asarray(p)
    if p.shape != (a.shape[0],):
        raise DimensionMismatchError(f"permutation has shape {p.shape}, matrix has n = {a.shape[0]}")
    p = _check_permutation(p)
    return HermitianMatrix(a[np.ix_(p, p)])
