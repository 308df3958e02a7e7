import itertools

import numpy as np
import pytest

from flagforge.errors import GroupTooLarge
from flagforge.ffield import Subspace, enumerate_subspaces, field_make
from flagforge.glgroup import (
    MatGroup,
    SubgroupSpec,
    block_sum,
    double_cosets,
    free_cell_group,
    full_gl,
    gl_order,
    group_make,
    is_conjugate_subgroup,
    left_transversal,
    orbit_and_stabilizer,
    rho_diagonal_blocks,
    stabilization_embed,
    swap_block_matrix,
    sylow_subgroup,
)

F2 = field_make(2)
F3 = field_make(3)
F4 = field_make(2, 2)


def test_full_gl_orders():
    assert len(full_gl(F2, 2)) == 6
    assert len(full_gl(F2, 3)) == 168
    assert len(full_gl(F3, 2)) == 48
    assert len(full_gl(F4, 2)) == 180
    assert len(full_gl(field_make(5), 2)) == 480


def test_gl_order_formula():
    for q, f in [(2, F2), (3, F3), (4, F4)]:
        g = full_gl(f, 2)
        assert len(g) == gl_order(q, 2)


def test_group_cap():
    with pytest.raises(GroupTooLarge):
        full_gl(F2, 6, cap=1000)


def test_kprime_structure_f3():
    # pres L, fix quotient by L: order (q-1) q^{n-1}; for q=3, n=2 a nonabelian
    # order-6 group with normal subgroup F_3 and complement F_3^x
    l = Subspace(F3, 2, [[1, 0]])
    kp = group_make(SubgroupSpec(F3, 2, "pres_l_fix_quot", l=l))
    assert len(kp) == 6
    translations = [i for i in range(6) if kp.elements[i][0, 0] == 1 and i != kp.identity]
    assert len(translations) == 2  # the two nontrivial unipotents, order 3
    assert all(kp.element_order(i) == 3 for i in translations)
    torus = [i for i in range(6) if not kp.elements[i][0, 1]]
    assert len(torus) == 2
    # nonabelian: some pair fails to commute
    assert any(
        kp.mul(i, j) != kp.mul(j, i) for i in range(6) for j in range(6)
    )


def test_kprime_f4_order():
    l = Subspace(F4, 2, [[1, 0]])
    kp = group_make(SubgroupSpec(F4, 2, "pres_l_fix_quot", l=l))
    assert len(kp) == 12


def test_subgroup_kind_orders_gl3():
    w = Subspace(F2, 3, [[1, 0, 0], [0, 1, 0]])
    assert len(group_make(SubgroupSpec(F2, 3, "fix_w", w=w))) == 4 * 1
    assert len(group_make(SubgroupSpec(F2, 3, "pres_w", w=w))) == 4 * 6
    assert len(group_make(SubgroupSpec(F2, 3, "pres_w_fix_quot", w=w))) == 4 * 6
    assert len(group_make(SubgroupSpec(F2, 3, "borel"))) == 8
    assert len(group_make(SubgroupSpec(F2, 3, "unipotent_upper"))) == 8
    assert len(group_make(SubgroupSpec(F2, 3, "permutation"))) == 6


def test_general_position_subgroup():
    # fix a non-coordinate plane in F_2^3 and re-verify the defining condition
    w = Subspace(F2, 3, [[1, 1, 0], [0, 0, 1]])
    g = group_make(SubgroupSpec(F2, 3, "fix_w", w=w))
    assert len(g) == 4
    for i in range(len(g)):
        assert np.array_equal(F2.matmul(w.basis, g.elements[i].T), w.basis)


def test_stabilization_embed_is_homomorphism():
    g6 = full_gl(F2, 2)
    for i in range(len(g6)):
        for j in range(len(g6)):
            a, b = g6.elements[i], g6.elements[j]
            ab = F2.matmul(a, b)
            lhs = stabilization_embed(F2, ab, 1)
            rhs = F2.matmul(stabilization_embed(F2, a, 1), stabilization_embed(F2, b, 1))
            assert np.array_equal(lhs, rhs)
    swap = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    emb = stabilization_embed(F2, swap, 1)
    assert np.array_equal(emb, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


def test_swap_block_matrix_and_symmetry():
    assert np.array_equal(swap_block_matrix(F2, 1, 1), [[0, 1], [1, 0]])
    from flagforge.ffield import inverse

    T = swap_block_matrix(F2, 1, 2)
    Tinv = inverse(F2, T)
    g1 = full_gl(F2, 1)
    g2 = full_gl(F2, 2)
    for i in range(len(g1)):
        for j in range(len(g2)):
            a, b = g1.elements[i], g2.elements[j]
            conj = F2.matmul(F2.matmul(Tinv, block_sum(F2, a, b)), T)
            assert np.array_equal(conj, block_sum(F2, b, a))


def test_block_sum_multiplicative():
    rng = np.random.default_rng(0)
    g2 = full_gl(F3, 2)
    for _ in range(20):
        i, j, k, l = rng.integers(0, len(g2), size=4)
        a, b, c, d = (g2.elements[x] for x in (i, j, k, l))
        lhs = F3.matmul(block_sum(F3, a, b), block_sum(F3, c, d))
        rhs = block_sum(F3, F3.matmul(a, c), F3.matmul(b, d))
        assert np.array_equal(lhs, rhs)


def test_orbit_stabilizer_lines():
    g = full_gl(F2, 2)
    lines = enumerate_subspaces(F2, 2, 1)
    act = lambda mat, sub: sub.apply_matrix(mat)
    orbit, stab = orbit_and_stabilizer(g, act, lines[0])
    assert len(orbit) == 3 and len(stab) == 2


def test_line_stabilizer_index_mod_p():
    # the subgroup preserving W and fixing F^n/W acts transitively on lines of W,
    # with stabilizer of index (q^w - 1)/(q - 1) = 1 mod p
    w = Subspace(F3, 3, F3.eye(3)[:2])
    g = group_make(SubgroupSpec(F3, 3, "pres_w_fix_quot", w=w))
    assert len(g) == 9 * 48
    lines_in_w = [l for l in enumerate_subspaces(F3, 3, 1) if w.contains(l)]
    act = lambda mat, sub: sub.apply_matrix(mat)
    orbit, stab = orbit_and_stabilizer(g, act, lines_in_w[0])
    assert len(orbit) == len(lines_in_w) == 4
    index = len(g) // len(stab)
    assert index == 4 and index % 3 == 1


def test_trivial_group_orbits():
    triv = MatGroup(F2, 2, [F2.eye(2)])
    act = lambda mat, sub: sub.apply_matrix(mat)
    for l in enumerate_subspaces(F2, 2, 1):
        orbit, stab = orbit_and_stabilizer(triv, act, l)
        assert len(orbit) == 1 and len(stab) == 1


def test_double_cosets_extremes():
    g = full_gl(F2, 2)
    reps = double_cosets(g, g, g)
    assert reps == [0]  # one coset; the representative is the least element
    triv = MatGroup(F2, 2, [F2.eye(2)])
    reps = double_cosets(g, triv, triv)
    assert len(reps) == len(g)


def test_double_cosets_sylow_gl3():
    g = full_gl(F2, 3)
    s = sylow_subgroup(g, 2)
    reps = double_cosets(g, s, s)
    # Bruhat: |B \ G / B| equals the Weyl group order
    assert len(reps) == 6


def test_sylow_subgroups():
    g3 = full_gl(F2, 3)
    s = sylow_subgroup(g3, 2)
    assert len(s) == 8 and s.kind == "unipotent_upper"
    assert len(sylow_subgroup(full_gl(F2, 2), 3)) == 3
    assert len(sylow_subgroup(full_gl(F3, 2), 2)) == 16


def test_conjugate_subgroup_basics():
    g = full_gl(F2, 2)
    b = group_make(SubgroupSpec(F2, 2, "borel"))
    conj = b.conjugate(F2.eye(2))
    assert is_conjugate_subgroup(b, b, F2.eye(2))
    assert len(conj) == len(b)
    swap = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    conj = b.conjugate(swap)
    assert len(conj) == len(b)
    assert not is_conjugate_subgroup(b, b, swap)  # lower triangular now


def test_milgram_priddy_block_conjugacy():
    # three superdiagonal unipotent pairs in GL_6, conjugated by the permutation
    # swapping basis vectors 2 and 5 (0-indexed: 1 and 4)
    g1 = free_cell_group(F2, 6, [(0, 1), (2, 3), (4, 5)])
    g2 = free_cell_group(F2, 6, [(0, 4), (1, 5), (2, 3)])
    assert len(g1) == 8 and len(g2) == 8
    perm = F2.eye(6).copy()
    perm[1, 1] = perm[4, 4] = 0
    perm[1, 4] = perm[4, 1] = 1
    assert is_conjugate_subgroup(g1, g2, perm)


def test_unipotent_block_orders():
    assert len(group_make(SubgroupSpec(F2, 2, "unipotent_block", blocks=(1, 1)))) == 2
    assert len(group_make(SubgroupSpec(F2, 4, "unipotent_block", blocks=(2, 2)))) == 16


def test_gl2_f2_is_symmetric_group_on_nonzero_vectors():
    g = full_gl(F2, 2)
    vectors = [(0, 1), (1, 0), (1, 1)]
    perms = {}
    for i in range(len(g)):
        m = g.elements[i]
        img = tuple(tuple(F2.matmul(m, np.array(v, dtype=np.uint8).reshape(2, 1)).ravel()) for v in vectors)
        perms[i] = img
    assert len(set(perms.values())) == 6  # faithful, so all of S_3
    # homomorphism: permutation of product = composition of permutations
    for i in range(len(g)):
        for j in range(len(g)):
            k = g.mul(i, j)
            composed = tuple(perms[i][vectors.index(v)] for v in perms[j])
            assert perms[k] == composed


def test_rho_block_retraction_and_kernel():
    for n, blocks in [(2, (1, 1)), (3, (1, 2)), (3, (2, 1)), (4, (2, 2)), (3, (1, 1, 1))]:
        but = group_make(SubgroupSpec(F2, n, "block_upper_triangular", blocks=blocks))
        bd = group_make(SubgroupSpec(F2, n, "block_diagonal", blocks=blocks))
        kernel = 0
        for i in range(len(but)):
            img = rho_diagonal_blocks(F2, but.elements[i], blocks)
            assert bd.contains(img)
            if np.array_equal(but.elements[i], F2.eye(n)) or (img == F2.eye(n)).all():
                kernel += int((img == F2.eye(n)).all())
        # rho is a homomorphism on a sample
        rng = np.random.default_rng(1)
        for _ in range(30):
            i, j = rng.integers(0, len(but), size=2)
            prod = F2.matmul(but.elements[i], but.elements[j])
            lhs = rho_diagonal_blocks(F2, prod, blocks)
            rhs = F2.matmul(
                rho_diagonal_blocks(F2, but.elements[i], blocks),
                rho_diagonal_blocks(F2, but.elements[j], blocks),
            )
            assert np.array_equal(lhs, rhs)
        # kernel order is a power of the characteristic
        assert kernel == len(but) // len(bd)
        while kernel % 2 == 0:
            kernel //= 2
        assert kernel == 1


def test_left_transversal_partition():
    g = full_gl(F2, 2)
    b = group_make(SubgroupSpec(F2, 2, "borel"))
    reps = left_transversal(g, b)
    assert len(reps) == 3


def test_membership_reverified_on_conjugated_kind():
    l = Subspace(F3, 2, [[1, 1]])
    kp = group_make(SubgroupSpec(F3, 2, "pres_l_fix_quot", l=l))
    assert len(kp) == 6
    pred = SubgroupSpec(F3, 2, "pres_l_fix_quot", l=l).membership_predicate()
    assert all(pred(kp.elements[i]) for i in range(len(kp)))
