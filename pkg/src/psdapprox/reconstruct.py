"""Assembly of the approximation from a decomposition, and solve utilities.

The fast assembly reads the approximation directly off the input matrix, the
row scalings and the diagonal shifts; entries blocked by a zero pivot fall
back to a partial inner product of the factor.  The explicit triple product
is kept alongside as an oracle.
"""

import numpy as np

from .core import HermitianMatrix, ModifiedDecomposition, PivotStrategy, inverse_permutation
from .errors import DimensionMismatchError, SingularDecompositionError
from .factorize import decompose


def assemble(matrix, dec):
    """Approximation represented by ``dec``, computed from ``matrix`` in O(n^2).

    The diagonal is ``A_ii + delta_i``.  An off-diagonal entry ``(i, j)`` is
    ``A_ij * omega_b`` where ``b`` is the later-eliminated of the two indices,
    unless the earlier position has a zero pivot and ``omega_b != 0``; then it
    is the partial factor product up to that position.

    Raises
    ------
    DimensionMismatchError
        If ``dec`` does not match the dimension of ``matrix``.
    """
    n = matrix.n
    if dec.n != n:
        raise DimensionMismatchError(f"decomposition has n = {dec.n}, matrix has n = {n}")
    a = matrix.entries
    q = inverse_permutation(dec.p)
    omega, delta, d, ell = dec.omega, dec.delta, dec.d, dec.L

    # omega_b and q_a, with b the index eliminated later and a the earlier one
    later = q[:, None] > q[None, :]
    omega_b = np.where(later, omega[:, None], omega[None, :])
    b = a * omega_b
    idx = np.arange(n)
    b[idx, idx] = a[idx, idx].real + delta

    earlier_pos = np.minimum(q[:, None], q[None, :])
    blocked = (d[earlier_pos] == 0.0) & (omega_b != 0.0)
    blocked[idx, idx] = False
    for i, j in zip(*np.nonzero(np.triu(blocked, 1))):
        k = earlier_pos[i, j]
        value = ell[q[i], :k] @ (d[:k] * np.conj(ell[q[j], :k]))
        b[i, j] = value
        b[j, i] = np.conj(value)
    return HermitianMatrix(b)


def compose_explicit(dec):
    """Literal triple product of the decomposition (permutation applied).

    Used as an oracle for :func:`assemble`.
    """
    q = inverse_permutation(dec.p)
    m = (dec.L * dec.d) @ dec.L.conj().T
    m = (m + m.conj().T) / 2.0
    return HermitianMatrix(m[np.ix_(q, q)])


def approximate(matrix, cfg, strategy=PivotStrategy.MAX_D_PIVOT):
    """Decompose and assemble in one call.

    Returns
    -------
    (HermitianMatrix, ModifiedDecomposition)
        The approximation and its decomposition.
    """
    dec = decompose(matrix, cfg, strategy)
    return assemble(matrix, dec), dec


def solve_with_decomposition(dec, rhs):
    """Solve ``B z = rhs`` where ``B`` is the matrix represented by ``dec``.

    Permute, forward-substitute, scale by the pivots, back-substitute,
    unpermute.

    Raises
    ------
    SingularDecompositionError
        If any pivot is zero.
    """
    if np.any(dec.d == 0.0):
        raise SingularDecompositionError("decomposition has a zero pivot")
    rhs = np.asarray(rhs)
    if rhs.shape != (dec.n,):
        raise DimensionMismatchError(f"rhs has shape {rhs.shape}, expected ({dec.n},)")
    ell = dec.L
    dtype = np.result_type(ell.dtype, rhs.dtype, np.float64)
    n = dec.n
    forward = np.zeros(n, dtype=dtype)
    permuted = rhs[dec.p].astype(dtype)
    for i in range(n):
        forward[i] = permuted[i] - ell[i, :i] @ forward[:i]
    scaled = forward / dec.d
    back = np.zeros(n, dtype=dtype)
    for i in reversed(range(n)):
        back[i] = scaled[i] - np.conj(ell[i + 1:, i]) @ back[i + 1:]
    solution = np.empty(n, dtype=dtype)
    solution[dec.p] = back
    return solution


def determinant(dec):
    """Determinant of the represented matrix: the product of the pivots."""
    return float(np.prod(dec.d))
