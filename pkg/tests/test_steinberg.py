import numpy as np
import pytest

from flagforge.buildings import BuildingKind
from flagforge.errors import GroupMismatch
from flagforge.ffield import Subspace, field_make
from flagforge.glgroup import MatGroup, SubgroupSpec, full_gl, group_make, sylow_subgroup
from flagforge.linalg import dense_rank_oracle
from flagforge.steinberg import (
    GModule,
    induce_module,
    phi_map,
    restrict_module,
    tensor_module,
    top_homology_module,
    trivial_module,
)

F2 = field_make(2)
F3 = field_make(3)
F4 = field_make(2, 2)


def test_st_dims_small():
    assert top_homology_module(BuildingKind(F2, 2, "tits"), full_gl(F2, 2), 2).dim == 2
    assert top_homology_module(BuildingKind(F2, 3, "tits"), full_gl(F2, 3), 2).dim == 8
    assert top_homology_module(BuildingKind(F3, 2, "tits"), full_gl(F3, 2), 3).dim == 3
    assert top_homology_module(BuildingKind(F2, 2, "split"), full_gl(F2, 2), 2).dim == 5


@pytest.mark.parametrize(
    "field,n,expected",
    [(F2, 2, 2), (F2, 3, 8), (F3, 2, 3), (F3, 3, 27), (F4, 2, 4)],
)
def test_st_dim_closed_form(field, n, expected):
    g = full_gl(field, n)
    m = top_homology_module(BuildingKind(field, n, "tits"), g, 2)
    assert m.dim == expected == field.q ** (n * (n - 1) // 2)


def test_st_f2_2_is_standard_rep_of_s3():
    g = full_gl(F2, 2)
    m = top_homology_module(BuildingKind(F2, 2, "tits"), g, 2).verify()
    assert m.dim == 2
    # permutation character on the three lines minus 1 matches the action trace
    lines_poset = BuildingKind(F2, 2, "tits")
    from flagforge.buildings import build

    poset = build(lines_poset)
    for i in range(len(g)):
        mat = g.elements[i]
        fixed = sum(1 for l in poset.labels if l.apply_matrix(mat) == l)
        trace = int(np.trace(m.action(i)) % 2)
        assert trace == (fixed - 1) % 2


def test_module_product_law_exhaustive():
    g = full_gl(F2, 2)
    top_homology_module(BuildingKind(F2, 2, "split"), g, 2).verify()
    top_homology_module(BuildingKind(F2, 2, "tits"), g, 3).verify()


def test_relative_module_over_stabilizer():
    w = Subspace(F2, 3, [[1, 0, 0]])
    h = group_make(SubgroupSpec(F2, 3, "pres_w", w=w))
    m = top_homology_module(BuildingKind(F2, 3, "rel_split", w=w), h, 2).verify()
    assert m.dim == 9


def test_phi_map_f2_2():
    rep = phi_map(F2, 2, 2)
    assert rep["source"].dim == 5 and rep["target"].dim == 2
    assert rep["rank"] == 2  # onto


def test_phi_map_f2_3_and_f3_2():
    rep = phi_map(F2, 3, 3)
    assert rep["source"].dim == 113 and rep["target"].dim == 8
    rep = phi_map(F3, 2, 2)
    assert rep["source"].dim == 11 and rep["target"].dim == 3
    assert rep["rank"] == 3


def test_induce_trivial_from_identity_is_regular():
    z2 = MatGroup(F3, 1, [np.array([[1]], dtype=np.uint8), np.array([[2]], dtype=np.uint8)])
    triv_sub = MatGroup(F3, 1, [np.array([[1]], dtype=np.uint8)])
    m = trivial_module(triv_sub, 2)
    ind = induce_module(triv_sub, z2, m).verify()
    assert ind.dim == 2
    # regular representation: the nonidentity element acts by the swap
    other = 1 - z2.identity
    assert np.array_equal(ind.action(other), [[0, 1], [1, 0]])


def test_induce_dimension_formula():
    g = full_gl(F2, 2)
    s = sylow_subgroup(g, 2)
    m = trivial_module(s, 2, dim=3)
    ind = induce_module(s, g, m)
    assert ind.dim == (len(g) // len(s)) * 3
    ind.verify()


def test_tensor_and_restrict():
    g = full_gl(F2, 2)
    st = top_homology_module(BuildingKind(F2, 2, "tits"), g, 2)
    triv = trivial_module(g, 2)
    t = tensor_module(st, triv).verify()
    assert t.dim == st.dim
    for i in g.generators:
        assert np.array_equal(t.action(i), st.action(i))
    t2 = tensor_module(st, st)
    assert t2.dim == 4
    s = sylow_subgroup(g, 2)
    res = restrict_module(st, s).verify()
    assert res.dim == 2
    nonid = [i for i in range(len(s)) if i != s.identity][0]
    inv_action = res.action(nonid)
    assert np.array_equal(inv_action @ inv_action % 2, np.eye(2, dtype=np.int64))


def test_tensor_group_mismatch():
    g = full_gl(F2, 2)
    h = sylow_subgroup(g, 2)
    with pytest.raises(GroupMismatch):
        tensor_module(trivial_module(g, 2), trivial_module(h, 2))
