import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from soliton_coherent.banded import BandedSymmetricMatrix
from soliton_coherent.utils import InvalidParameterError


def _pentadiagonal(n: int) -> np.ndarray:
    matrix = np.diag(np.full(n, 6.0)) + np.diag(np.full(n - 1, -1.0), 1) + np.diag(np.full(n - 2, 0.5), 2)
    return np.triu(matrix) + np.triu(matrix, 1).T


def test_dense_round_trip_detects_bandwidth():
    dense = _pentadiagonal(7)
    banded = BandedSymmetricMatrix.from_dense(dense)
    assert banded.bandwidth == 2
    assert banded.dimension == 7
    np.testing.assert_array_equal(banded.to_dense(), dense)
    np.testing.assert_array_equal(banded.to_sparse().toarray(), dense)
    np.testing.assert_array_equal(banded.diagonal(2), np.full(5, 0.5))
    np.testing.assert_array_equal(banded.diagonal(3), np.zeros(4))


def test_storage_is_read_only():
    banded = BandedSymmetricMatrix.from_dense(_pentadiagonal(4))
    with pytest.raises(ValueError):
        banded.upper[0, 0] = 1.0


def test_leading_block_matches_dense_slice():
    dense = _pentadiagonal(8)
    block = BandedSymmetricMatrix.from_dense(dense).leading_block(5)
    np.testing.assert_array_equal(block.to_dense(), dense[:5, :5])
    with pytest.raises(InvalidParameterError):
        BandedSymmetricMatrix.from_dense(dense).leading_block(9)


def test_to_frame_columns():
    frame = BandedSymmetricMatrix.from_dense(_pentadiagonal(3)).to_frame()
    assert list(frame.columns) == ["k0", "k1", "k2"]


@settings(deadline=None, max_examples=30)
@given(
    diagonal=arrays(np.float64, (6,), elements=st.floats(min_value=4.0, max_value=10.0)),
    off=arrays(np.float64, (5,), elements=st.floats(min_value=-1.0, max_value=1.0)),
)
def test_solve_and_eigenvalues_agree_with_dense(diagonal, off):
    dense = np.diag(diagonal) + np.diag(off, 1) + np.diag(off, -1)
    banded = BandedSymmetricMatrix.from_dense(dense, bandwidth=1)
    rhs = np.arange(1.0, 7.0)
    np.testing.assert_allclose(banded.solve(rhs), np.linalg.solve(dense, rhs), rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(np.sort(banded.eigvalsh()), np.linalg.eigvalsh(dense), rtol=1e-10, atol=1e-12)
