"""
banded
------

Symmetric banded matrices stored by diagonals (LAPACK "upper" layout, the one
``scipy.linalg.solveh_banded`` and ``eigvals_banded`` consume).
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
import scipy.linalg
import scipy.sparse

from .utils import InvalidParameterError


@dataclass(frozen=True)
class BandedSymmetricMatrix:
    """
    Real symmetric matrix with ``A[i, j] == 0`` for ``|i - j| > bandwidth``.

    ``upper[bandwidth + i - j, j] == A[i, j]`` for ``i <= j``; unused corner
    cells are zero.
    """
    upper: np.ndarray

    def __post_init__(self):
        upper = np.array(self.upper, dtype=float)
        if upper.ndim != 2:
            raise InvalidParameterError("banded storage must be two-dimensional")
        upper.flags.writeable = False
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return self.upper.shape[1]

    @property
    def bandwidth(self) -> int:
        return self.upper.shape[0] - 1

    @classmethod
    def from_dense(cls, matrix: np.ndarray, bandwidth: Optional[int] = None) -> "BandedSymmetricMatrix":
        """
        Pack the upper triangle of a dense square matrix.

        Args:
            matrix: square array; only the upper triangle is read
            bandwidth: number of super-diagonals kept (detected when omitted)
        """
        matrix = np.asarray(matrix, dtype=float)
        n = matrix.shape[0]
        if matrix.shape != (n, n):
            raise InvalidParameterError(f"matrix must be square, got {matrix.shape}")
        if bandwidth is None:
            rows, cols = np.nonzero(np.triu(matrix))
            bandwidth = int(np.max(cols - rows)) if rows.size else 0
        upper = np.zeros((bandwidth + 1, n))
        for k in range(min(bandwidth, n - 1) + 1):
            upper[bandwidth - k, k:] = np.diagonal(matrix, offset=k)
        return cls(upper)

    @classmethod
    def from_sparse(cls, matrix: scipy.sparse.spmatrix, bandwidth: int) -> "BandedSymmetricMatrix":
        matrix = scipy.sparse.csr_matrix(matrix)
        n = matrix.shape[0]
        upper = np.zeros((bandwidth + 1, n))
        for k in range(min(bandwidth, n - 1) + 1):
            upper[bandwidth - k, k:] = matrix.diagonal(k)
        return cls(upper)

    def diagonal(self, offset: int = 0) -> np.ndarray:
        k = abs(offset)
        if k > self.bandwidth:
            return np.zeros(max(self.dimension - k, 0))
        return self.upper[self.bandwidth - k, k:].copy()

    def to_dense(self) -> np.ndarray:
        n = self.dimension
        dense = np.zeros((n, n))
        for k in range(min(self.bandwidth, n - 1) + 1):
            band = self.upper[self.bandwidth - k, k:]
            dense += np.diag(band, k)
            if k:
                dense += np.diag(band, -k)
        return dense

    def to_sparse(self) -> scipy.sparse.csr_matrix:
        n = self.dimension
        offsets, bands = [], []
        for k in range(min(self.bandwidth, n - 1) + 1):
            band = self.upper[self.bandwidth - k, k:]
            offsets.append(k)
            bands.append(band)
            if k:
                offsets.append(-k)
                bands.append(band)
        return scipy.sparse.diags(bands, offsets, shape=(n, n), format="csr")

    def leading_block(self, size: int) -> "BandedSymmetricMatrix":
        if not 1 <= size <= self.dimension:
            raise InvalidParameterError(f"block size {size} outside 1..{self.dimension}")
        return BandedSymmetricMatrix(self.upper[:, :size])

    def eigvalsh(self) -> np.ndarray:
        return scipy.linalg.eigvals_banded(self.upper, lower=False)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve ``A x = rhs`` for a positive definite ``A`` (Cholesky, banded)."""
        return scipy.linalg.solveh_banded(self.upper, rhs, lower=False)

    def to_frame(self) -> pd.DataFrame:
        dense = self.to_dense()
        return pd.DataFrame(dense, columns=[f"k{j}" for j in range(self.dimension)])
