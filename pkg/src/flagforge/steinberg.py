"""Top-homology modules of buildings as explicit group representations.

A GModule stores, lazily, one matrix per group element over the coefficient
prime.  For a building module the matrix of g is obtained by permuting top
flags and re-expressing the permuted cycle basis in the original one; the
product law is spot checked (exhaustively for small groups) rather than
trusted.
"""

from __future__ import annotations

import numpy as np

from .buildings import BuildingKind, apply_to_label, build
from .errors import ActionMismatch, GroupMismatch, TooLarge, TopChainAboveTop
from .ffield import field_make, solve_right
from .glgroup import MatGroup, left_transversal
from .linalg import sparse_kernel


class GModule:
    """A finite-dimensional module over F_p for an enumerated matrix group."""

    def __init__(self, group: MatGroup, p: int, dim: int, action_fn, name="module"):
        self.group = group
        self.p = p
        self.dim = dim
        self.name = name
        self._action_fn = action_fn
        self._cache: dict[int, np.ndarray] = {}

    def action(self, idx: int) -> np.ndarray:
        if idx not in self._cache:
            mat = np.asarray(self._action_fn(idx), dtype=np.int64) % self.p
            assert mat.shape == (self.dim, self.dim)
            self._cache[idx] = mat
        return self._cache[idx]

    def right_translate(self, idx: int) -> np.ndarray:
        """Matrix of the right action v -> v.g, i.e. the left action of g^{-1}."""
        return self.action(self.group.inv(idx))

    def verify(self, rng=None, samples=40):
        e = self.group.identity
        assert np.array_equal(self.action(e), np.eye(self.dim, dtype=np.int64))
        n = len(self.group)
        if n <= 200:
            pairs = ((i, j) for i in range(n) for j in range(n))
        else:
            rng = rng or np.random.default_rng(0)
            pairs = ((int(rng.integers(0, n)), int(rng.integers(0, n))) for _ in range(samples))
        for i, j in pairs:
            lhs = self.action(i) @ self.action(j) % self.p
            rhs = self.action(self.group.mul(i, j))
            assert np.array_equal(lhs, rhs), "action is not a homomorphism"
        return self

    def __repr__(self):
        return f"GModule({self.name}, dim {self.dim} over F_{self.p}, {self.group.kind})"


def trivial_module(group: MatGroup, p: int, dim: int = 1) -> GModule:
    eye = np.eye(dim, dtype=np.int64)
    return GModule(group, p, dim, lambda idx: eye, name="trivial")


def _chain_permutation(poset, levels, d, mat):
    """Index permutation of d-chains induced by relabeling with mat."""
    label_map = {}
    for i, label in enumerate(poset.labels):
        moved = apply_to_label(mat, label)
        j = poset.index.get(moved)
        if j is None:
            raise ActionMismatch("group element does not act on the building")
        label_map[i] = j
    chain_index = {c: k for k, c in enumerate(levels[d])}
    out = np.empty(len(levels[d]), dtype=np.int64)
    for k, chain in enumerate(levels[d]):
        # an order automorphism maps a poset-increasing tuple to one, in order
        moved = tuple(label_map[i] for i in chain)
        out[k] = chain_index[moved]
    return out


def top_homology_module(kind: BuildingKind, group: MatGroup, p: int,
                        expected_top: int | None = None) -> GModule:
    """Kernel of the top boundary of the building, with the permuted-flag action."""
    poset = build(kind)
    levels = poset.chains()
    top = len(levels) - 1
    expect = expected_top if expected_top is not None else kind.top_degree()
    if top != expect:
        raise TopChainAboveTop(f"chains reach dimension {top}, expected {expect}")
    field_p = field_make(p)
    lower_index = {c: i for i, c in enumerate(levels[top - 1])} if top >= 1 else {(): 0}
    cols = []
    for chain in levels[top]:
        if top == 0:
            cols.append([(0, 1)])
            continue
        col = []
        for i in range(top + 1):
            face = chain[:i] + chain[i + 1 :]
            col.append((lower_index[face], (-1) ** i % p))
        cols.append(col)
    nrows = len(levels[top - 1]) if top >= 1 else 1
    kernel = sparse_kernel(p, nrows, cols)
    dim = len(kernel)
    K = (
        np.stack(kernel, axis=1).astype(np.int64)
        if dim
        else np.zeros((len(levels[top]), 0), dtype=np.int64)
    )

    def action_fn(idx):
        perm = _chain_permutation(poset, levels, top, group.elements[idx])
        PK = np.zeros_like(K)
        PK[perm] = K
        X = solve_right(field_p, K.astype(np.uint8), PK.astype(np.uint8))
        if X is None:
            raise ActionMismatch("permuted cycles left the cycle space")
        return X.astype(np.int64)

    name = f"H_{top}({kind.name})"
    module = GModule(group, p, dim, action_fn, name=name)
    # sanity: identity acts as identity, generators act invertibly
    module.action(group.identity)
    return module


def _poset_chain_map_matrix(src_poset, src_levels, dst_poset, dst_levels, label_fn, d, p):
    """Matrix of the chain map induced by a strictly order-reversing poset map.

    Chains map to reversed chains; the reversal carries the sign of the
    order-reversing permutation of d+1 letters.
    """
    sign = (-1) ** (d * (d + 1) // 2) % p
    dst_index = {c: i for i, c in enumerate(dst_levels[d])}
    out = np.zeros((len(dst_levels[d]), len(src_levels[d])), dtype=np.int64)
    for k, chain in enumerate(src_levels[d]):
        image = tuple(dst_poset.index[label_fn(src_poset.labels[i])] for i in reversed(chain))
        assert all(dst_poset.less(image[i], image[i + 1]) for i in range(len(image) - 1)), (
            "image chain not strictly increasing"
        )
        out[dst_index[image], k] = sign
    return out


def phi_map(field, n: int, p: int, group: MatGroup | None = None) -> dict:
    """The forget-the-second-summand comparison from the splitting module to
    the subspace-poset module, certified equivariant and a chain map."""
    from .glgroup import full_gl

    group = group or full_gl(field, n)
    split_kind = BuildingKind(field, n, "split")
    tits_kind = BuildingKind(field, n, "tits")
    m_split = top_homology_module(split_kind, group, p)
    m_tits = top_homology_module(tits_kind, group, p)

    src_poset, dst_poset = build(split_kind), build(tits_kind)
    src_levels, dst_levels = src_poset.chains(), dst_poset.chains()
    top = n - 2
    label_fn = lambda pair: pair[0]
    phi_top = _poset_chain_map_matrix(src_poset, src_levels, dst_poset, dst_levels, label_fn, top, p)
    if top >= 1:
        phi_lower = _poset_chain_map_matrix(
            src_poset, src_levels, dst_poset, dst_levels, label_fn, top - 1, p
        )
        d_src = _boundary_dense(src_levels, top, p)
        d_dst = _boundary_dense(dst_levels, top, p)
        lhs = d_dst @ phi_top % p
        rhs = phi_lower @ d_src % p
        assert np.array_equal(lhs, rhs), "not a chain map"

    K_src = _cycle_matrix(src_levels, top, p)
    K_dst = _cycle_matrix(dst_levels, top, p)
    field_p = field_make(p)
    image = phi_top @ K_src % p
    X = solve_right(field_p, K_dst.astype(np.uint8), image.astype(np.uint8))
    assert X is not None, "image cycles left the target cycle space"
    X = X.astype(np.int64)
    for gi in group.generators:
        lhs = m_tits.action(gi) @ X % p
        rhs = X @ m_split.action(gi) % p
        assert np.array_equal(lhs, rhs), "comparison map is not equivariant"
    return {"matrix": X, "source": m_split, "target": m_tits, "rank": _rank_mod_p(X, p)}


def _boundary_dense(levels, d, p):
    lower = {c: i for i, c in enumerate(levels[d - 1])}
    out = np.zeros((len(levels[d - 1]), len(levels[d])), dtype=np.int64)
    for k, chain in enumerate(levels[d]):
        for i in range(d + 1):
            face = chain[:i] + chain[i + 1 :]
            out[lower[face], k] = (out[lower[face], k] + (-1) ** i) % p
    return out


def _cycle_matrix(levels, top, p):
    if top == 0:
        cols = [[(0, 1)] for _ in levels[0]]
        nrows = 1
    else:
        lower = {c: i for i, c in enumerate(levels[top - 1])}
        cols = []
        for chain in levels[top]:
            cols.append(
                [(lower[chain[:i] + chain[i + 1 :]], (-1) ** i % p) for i in range(top + 1)]
            )
        nrows = len(levels[top - 1])
    kernel = sparse_kernel(p, nrows, cols)
    return np.stack(kernel, axis=1).astype(np.int64)


def _rank_mod_p(A, p):
    from .linalg import dense_rank_oracle

    return dense_rank_oracle(p, A)


def induce_module(sub: MatGroup, group: MatGroup, module: GModule, cap=200_000) -> GModule:
    """k[G] tensor over k[H] of an H-module, with the coset-permutation action."""
    if module.group is not sub:
        raise GroupMismatch("module must live over the subgroup")
    reps = left_transversal(group, sub)
    dm = module.dim
    out_dim = len(reps) * dm
    if out_dim > cap:
        raise TooLarge(f"induced dimension {out_dim}")
    # decompose g = rep * h once, for every group element
    rep_pos = {r: i for i, r in enumerate(reps)}
    decomp = {}
    for i, r in enumerate(reps):
        for hi in range(len(sub)):
            h_in_g = group.index_of(sub.elements[hi])
            decomp[group.mul(r, h_in_g)] = (i, hi)
    assert len(decomp) == len(group)

    def action_fn(gi):
        out = np.zeros((out_dim, out_dim), dtype=np.int64)
        for i, r in enumerate(reps):
            t = group.mul(gi, r)
            i2, hi = decomp[t]
            out[i2 * dm : (i2 + 1) * dm, i * dm : (i + 1) * dm] = module.action(hi)
        return out

    return GModule(group, module.p, out_dim, action_fn, name=f"Ind({module.name})")


def tensor_module(m1: GModule, m2: GModule) -> GModule:
    if m1.group is not m2.group or m1.p != m2.p:
        raise GroupMismatch("tensor factors must share the group and coefficients")

    def action_fn(gi):
        return np.kron(m1.action(gi), m2.action(gi)) % m1.p

    return GModule(m1.group, m1.p, m1.dim * m2.dim, action_fn, name=f"{m1.name}(x){m2.name}")


def restrict_module(module: GModule, sub: MatGroup) -> GModule:
    parent = module.group

    def action_fn(hi):
        return module.action(parent.index_of(sub.elements[hi]))

    return GModule(sub, module.p, module.dim, action_fn, name=f"Res({module.name})")
