import itertools

import numpy as np
import pytest

from flagforge.errors import NotPrime
from flagforge.ffield import (
    FieldSpec,
    Subspace,
    all_proper_nonzero_subspaces,
    complement_containing,
    enumerate_subspaces,
    field_make,
    gaussian_binomial,
    inverse,
    kernel_basis,
    rref,
)


def test_field_make_prime_fields():
    f2 = field_make(2, 1)
    assert f2.q == 2 and f2.modulus == (0, 1)
    f3 = field_make(3, 1)
    assert f3.q == 3
    assert f3.add_scalar(2, 2) == 1
    assert f3.mul_scalar(2, 2) == 1


def test_field_make_f4_modulus():
    # x^2 + x + 1 is the only monic irreducible quadratic over F_2
    f4 = field_make(2, 2)
    assert f4.modulus == (1, 1, 1)
    # codes: 0, 1, x=2, x+1=3; x * (x+1) = x^2 + x = 1
    assert f4.mul_scalar(2, 3) == 1
    assert f4.add_scalar(2, 3) == 1
    assert f4.inv_scalar(2) == 3


def test_field_make_rejects_composite():
    with pytest.raises(NotPrime):
        field_make(4, 1)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_field_axioms_exhaustive(p, r):
    f = field_make(p, r)
    els = range(f.q)
    for a in els:
        assert f.add_scalar(a, 0) == a
        assert f.mul_scalar(a, 1) == a
        assert f.add_scalar(a, f.neg_scalar(a)) == 0
        if a:
            assert f.mul_scalar(a, f.inv_scalar(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert f.add_scalar(a, b) == f.add_scalar(b, a)
        assert f.mul_scalar(a, b) == f.mul_scalar(b, a)
    # distributivity on a sample
    for a, b, c in itertools.islice(itertools.product(els, repeat=3), 600):
        lhs = f.mul_scalar(a, f.add_scalar(b, c))
        rhs = f.add_scalar(f.mul_scalar(a, b), f.mul_scalar(a, c))
        assert lhs == rhs


def test_vectorized_matches_scalar():
    for p, r in [(2, 2), (3, 1), (5, 1), (2, 3)]:
        f = field_make(p, r)
        a = np.arange(f.q)
        b = np.arange(f.q)[::-1].copy()
        add = f.add(a, b)
        mul = f.mul(a, b)
        for i in range(f.q):
            assert add[i] == f.add_scalar(int(a[i]), int(b[i]))
            assert mul[i] == f.mul_scalar(int(a[i]), int(b[i]))


def test_rref_examples():
    f2 = field_make(2)
    I3 = f2.eye(3)
    R, rank, piv = rref(f2, I3)
    assert np.array_equal(R, I3) and rank == 3
    Z = f2.zeros((2, 2))
    R, rank, _ = rref(f2, Z)
    assert np.array_equal(R, Z) and rank == 0
    A = np.array([[1, 1], [1, 1]], dtype=np.uint8)
    R, rank, _ = rref(f2, A)
    assert rank == 1 and np.array_equal(R, [[1, 1], [0, 0]])


def test_rref_rank_invariant_under_permutation():
    rng = np.random.default_rng(7)
    f3 = field_make(3)
    for _ in range(25):
        A = rng.integers(0, 3, size=(4, 5)).astype(np.uint8)
        _, rank, _ = rref(f3, A)
        rp = rng.permutation(4)
        cp = rng.permutation(5)
        _, rank2, _ = rref(f3, A[rp][:, cp])
        assert rank == rank2


def test_inverse_and_kernel():
    f5 = field_make(5)
    A = np.array([[1, 2], [3, 4]], dtype=np.uint8)
    Ainv = inverse(f5, A)
    assert np.array_equal(f5.matmul(A, Ainv), f5.eye(2))
    B = np.array([[1, 2, 3]], dtype=np.uint8)
    K = kernel_basis(f5, B)
    assert K.shape[0] == 2
    assert not f5.matmul(B, K.T).any()


def test_enumerate_subspace_counts():
    assert len(enumerate_subspaces(field_make(2), 3, 1)) == 7
    assert len(enumerate_subspaces(field_make(2), 2, 1)) == 3
    assert len(enumerate_subspaces(field_make(3), 2, 1)) == 4


@pytest.mark.parametrize("q,spec", [(2, (2, 1)), (3, (3, 1)), (4, (2, 2)), (5, (5, 1))])
def test_gaussian_binomial_grid(q, spec):
    f = field_make(*spec)
    for n in range(1, 5):
        if q >= 4 and n == 4:
            continue  # counts in the tens of thousands; covered by smaller n
        for k in range(n + 1):
            assert len(enumerate_subspaces(f, n, k)) == gaussian_binomial(n, k, q)


def test_subspace_sum_of_two_lines():
    f2 = field_make(2)
    l1 = Subspace(f2, 2, [[1, 0]])
    l2 = Subspace(f2, 2, [[0, 1]])
    assert l1.sum(l2).dim == 2


def test_complement_greedy_rule():
    f2 = field_make(2)
    e1 = Subspace(f2, 2, [[1, 0]])
    c = e1.complement()
    assert c == Subspace(f2, 2, [[0, 1]])


def test_annihilator_involution_and_reversal():
    for f, n in [(field_make(2), 3), (field_make(3), 2)]:
        subs = [Subspace.zero(f, n), Subspace.full(f, n)] + all_proper_nonzero_subspaces(f, n)
        for w in subs:
            assert w.annihilator().annihilator() == w
            assert w.annihilator().dim == n - w.dim
        for a, b in itertools.product(subs, repeat=2):
            if a.contains(b):
                assert b.annihilator().contains(a.annihilator())


def test_modular_law_exhaustive():
    for n in range(1, 5):
        f2 = field_make(2)
        subs = [Subspace.zero(f2, n), Subspace.full(f2, n)] + all_proper_nonzero_subspaces(f2, n)
        for a, b in itertools.product(subs, repeat=2):
            s = a.sum(b)
            i = a.intersection(b)
            assert a.dim + b.dim == s.dim + i.dim
            assert s.contains(a) and s.contains(b)
            assert a.contains(i) and b.contains(i)


def test_complement_containing():
    f2 = field_make(2)
    w = Subspace(f2, 4, [[1, 0, 0, 0]])
    v = Subspace(f2, 4, [[0, 1, 1, 0]])
    c = complement_containing(w, v)
    assert c.contains(v) and c.dim == 3
    assert c.intersection(w).dim == 0


def test_quotient_map():
    f2 = field_make(2)
    w = Subspace(f2, 3, [[1, 1, 0]])
    Q = w.quotient_map()
    assert Q.shape == (2, 3)
    assert not f2.matmul(Q, w.basis.T).any()
    # full space maps onto the quotient
    img = Subspace.full(f2, 3).image_under(Q)
    assert img.dim == 2


def test_subspace_apply_matrix():
    f3 = field_make(3)
    g = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    l = Subspace(f3, 2, [[1, 0]])
    assert l.apply_matrix(g) == Subspace(f3, 2, [[0, 1]])
