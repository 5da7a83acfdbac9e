"""
Banded linear systems for the mode oracle
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse
from scipy.linalg import LinAlgError, solve_banded

from ..models.errors import OracleError

logger = logging.getLogger(__name__)


@dataclass
class BandedSolution:
    """
    Solution of a banded system with its backward error

    Attributes:
        x: Solution vector (or matrix for several right-hand sides)
        residual: ||A x - b|| / (||A|| ||x|| + ||b||) in the max norm
    """

    x: np.ndarray
    residual: float


def to_banded(matrix: scipy.sparse.spmatrix, lower: int, upper: int) -> np.ndarray:
    """
    Convert a sparse matrix to the (l + u + 1, n) storage of solve_banded

    Args:
        matrix: Square sparse matrix
        lower: Number of subdiagonals
        upper: Number of superdiagonals

    Returns:
        Complex array ab with ab[u + i - j, j] = A[i, j]
    """
    coo = matrix.tocoo()
    offsets = coo.row - coo.col
    if coo.nnz and (offsets.max() > lower or -offsets.min() > upper):
        raise OracleError(
            f"matrix bandwidth ({offsets.max()}, {-offsets.min()}) exceeds "
            f"({lower}, {upper})"
        )
    ab = np.zeros((lower + upper + 1, matrix.shape[1]), dtype=complex)
    ab[upper + offsets, coo.col] = coo.data
    return ab


def solve_banded_system(
    rows: Sequence[int],
    cols: Sequence[int],
    values: Sequence[complex],
    rhs: np.ndarray,
    lower: int,
    upper: int,
) -> BandedSolution:
    """
    Assemble a sparse matrix from triplets and solve it by banded LU

    Duplicate triplets are summed. A singular matrix raises OracleError
    rather than being regularized.

    Args:
        rows: Row indices
        cols: Column indices
        values: Matrix entries
        rhs: Right-hand side (vector or one column per system)
        lower: Number of subdiagonals
        upper: Number of superdiagonals

    Returns:
        BandedSolution
    """
    size = rhs.shape[0]
    matrix = scipy.sparse.coo_matrix(
        (np.asarray(values, dtype=complex), (np.asarray(rows), np.asarray(cols))),
        shape=(size, size),
    ).tocsr()
    matrix.sum_duplicates()
    ab = to_banded(matrix, lower, upper)

    try:
        x = solve_banded((lower, upper), ab, rhs)
    except (LinAlgError, ValueError) as e:
        raise OracleError(f"singular oracle system: {e}") from e
    if not np.all(np.isfinite(x)):
        raise OracleError("oracle system produced non-finite values")

    defect = matrix @ x - rhs
    norm_a = float(abs(matrix).sum(axis=1).max())
    denominator = norm_a * float(np.max(np.abs(x), initial=0.0)) + float(
        np.max(np.abs(rhs), initial=0.0)
    )
    residual = float(np.max(np.abs(defect), initial=0.0))
    if denominator > 0.0:
        residual /= denominator
    logger.debug(f"Banded solve of size {size}: backward error {residual:.2e}")
    return BandedSolution(x=x, residual=residual)
