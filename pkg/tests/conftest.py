import numpy as np
import pytest

from varid import SparseVector


@pytest.fixture
def rng():
    return np.random.default_rng(20180528)


def dense_to_sparse(row: np.ndarray) -> SparseVector:
    """Dense row -> SparseVector, keeping nonzero entries."""
    nz = np.flatnonzero(row)
    if len(nz) == 0:
        return SparseVector.empty()
    return SparseVector(nz.astype(np.int64), row[nz].astype(np.float64))
