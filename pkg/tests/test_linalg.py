import numpy as np
import pytest

from flagforge.errors import ResourceCapExceeded
from flagforge.linalg import (
    columns_from_dense,
    dense_rank_oracle,
    kernel_vectors_dense,
    sparse_kernel,
    sparse_rank,
)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_sparse_rank_matches_dense_oracle_random(p):
    rng = np.random.default_rng(1234 + p)
    for trial in range(1000):
        nr = int(rng.integers(1, 65))
        nc = int(rng.integers(1, 65))
        density = rng.uniform(0.02, 0.3)
        A = (rng.random((nr, nc)) < density) * rng.integers(1, p, size=(nr, nc))
        got = sparse_rank(p, nr, columns_from_dense(A))
        want = dense_rank_oracle(p, A)
        assert got == want, (trial, nr, nc)


def test_sparse_rank_transposed_path():
    # wide matrix forces the transposed stream
    rng = np.random.default_rng(5)
    nr, nc = 12, 40000
    cols = []
    A = np.zeros((nr, nc), dtype=np.int64)
    for j in range(nc):
        r = int(rng.integers(0, nr))
        cols.append([(r, 1), ((r + 1) % nr, 1)])
        A[r, j] ^= 1
        A[(r + 1) % nr, j] ^= 1
    assert sparse_rank(2, nr, cols) == dense_rank_oracle(2, A)


def test_permutation_matrix_full_rank():
    P = np.eye(7)[np.random.default_rng(0).permutation(7)]
    assert sparse_rank(2, 7, columns_from_dense(P)) == 7
    assert sparse_rank(3, 7, columns_from_dense(P)) == 7


@pytest.mark.parametrize("p", [2, 3])
def test_sparse_kernel_is_kernel(p):
    rng = np.random.default_rng(99 + p)
    for _ in range(60):
        nr = int(rng.integers(1, 20))
        nc = int(rng.integers(1, 20))
        A = rng.integers(0, p, size=(nr, nc))
        ker = kernel_vectors_dense(p, A)
        assert len(ker) == nc - dense_rank_oracle(p, A)
        for v in ker:
            assert not ((A @ v.astype(np.int64)) % p).any()
        # kernel vectors independent
        if ker:
            K = np.stack(ker)
            assert dense_rank_oracle(p, K.T) == len(ker)


def test_reduced_point_boundary_rank():
    # reduced boundary of 3 isolated points onto the empty simplex
    cols = [[(0, 1)], [(0, 1)], [(0, 1)]]
    assert sparse_rank(2, 1, cols) == 1
    assert sparse_rank(3, 1, cols) == 1


def test_nnz_cap():
    cols = [[(0, 1)]] * 10
    with pytest.raises(ResourceCapExceeded):
        sparse_rank(2, 1, cols, nnz_cap=5)
