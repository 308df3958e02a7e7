"""Finite matrix groups GL_n(F_q) and named subgroups, fully enumerated.

Everything here is explicit enumeration under a resource cap: element lists
are sorted lexicographically by row-major entries (so coset representatives
and fixtures are reproducible), membership is a hash lookup, and subgroup
kinds are enumerated from their defining linear conditions in a standard
position, then conjugated into general position.  Defining conditions are
re-verified on every enumerated element.

Kinds, with W the span of the first w basis vectors and L the first line:

    full                     all of GL_n
    fix_w                    [[I, B], [0, D]]     identity on W
    pres_w                   [[A, B], [0, D]]     preserves W
    pres_w_fix_quot          [[A, B], [0, I]]     preserves W, identity on F^n/W
    pres_l_pres_w_fix_quot   as above, A preserving L
    pres_l_fix_quot          [[a, v], [0, I]]     a unit, v arbitrary
    borel                    upper triangular, unit diagonal
    unipotent_upper          upper triangular, diagonal 1
    block_diagonal           GL_{b_1} x ... x GL_{b_k}
    block_upper_triangular   block diagonal plus arbitrary blocks above
    unipotent_block          [[I_a, *], [0, I_b]]
    permutation              permutation matrices
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from .errors import GroupTooLarge
from .ffield import FieldSpec, Subspace, inverse, rref

GROUP_CAP = 1 << 21
MUL_TABLE_CAP = 4096


def gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def _enumerate_gl(field: FieldSpec, n: int):
    """All invertible n x n matrices by column filling (new column off the span)."""
    if n == 0:
        return [field.eye(0)]
    q = field.q
    vectors = [np.array(v, dtype=field.dtype) for v in product(range(q), repeat=n)]
    codes = {v.tobytes(): i for i, v in enumerate(vectors)}
    out = []
    cols: list = []

    def rec(span_codes):
        if len(cols) == n:
            out.append(np.stack(cols, axis=1))
            return
        for v in vectors:
            if v.tobytes() in span_codes:
                continue
            new_span = set(span_codes)
            for c in range(1, q):
                cv = field.mul(np.full(n, c), v)
                for s in span_codes:
                    sv = np.frombuffer(s, dtype=field.dtype)
                    new_span.add(field.add(sv, cv).tobytes())
            cols.append(v)
            rec(new_span)
            cols.pop()

    rec({field.zeros(n).tobytes()})
    assert len(out) == gl_order(q, n)
    return out


class MatGroup:
    """An enumerated matrix group with a deterministic element order."""

    def __init__(self, field: FieldSpec, n: int, elements, generators=None, kind="explicit", check=True):
        self.field = field
        self.n = n
        uniq = {np.asarray(e, dtype=field.dtype).tobytes() for e in elements}
        arr = np.stack([np.frombuffer(b, dtype=field.dtype).reshape(n, n) for b in sorted(uniq)])
        assert len(arr) == len(elements), "duplicate elements in input"
        arr.setflags(write=False)
        self.elements = arr
        self.index = {arr[i].tobytes(): i for i in range(len(arr))}
        self.kind = kind
        self.identity = self.index[field.eye(n).tobytes()]
        self._inverses = np.full(len(arr), -1, dtype=np.int64)
        self._table = None
        self._right_maps: dict[int, np.ndarray] = {}
        if generators is None:
            self.generators = self._greedy_generators()
        else:
            self.generators = [self.index[np.asarray(g, dtype=field.dtype).tobytes()] for g in generators]
            if check:
                self._verify_generated()
        if check:
            for i in range(len(self)):
                self.inv(i)  # raises if some inverse is missing

    # -- core structure ----------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def element(self, i: int):
        return self.elements[i]

    def index_of(self, mat) -> int:
        return self.index[np.asarray(mat, dtype=self.field.dtype).tobytes()]

    def contains(self, mat) -> bool:
        return np.asarray(mat, dtype=self.field.dtype).tobytes() in self.index

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return self.index_of(self.field.matmul(self.elements[i], self.elements[j]))

    def inv(self, i: int) -> int:
        if self._inverses[i] < 0:
            self._inverses[i] = self.index_of(inverse(self.field, self.elements[i]))
        return int(self._inverses[i])

    def right_map(self, h: int) -> np.ndarray:
        """Index array of x -> x·h over the whole element list."""
        if h not in self._right_maps:
            f = self.field
            g = self.elements[h]
            if f.r == 1:
                prods = (
                    self.elements.astype(np.int64) @ g.astype(np.int64) % f.p
                ).astype(f.dtype)
            else:
                prods = np.stack([f.matmul(self.elements[k], g) for k in range(len(self))])
            self._right_maps[h] = np.array(
                [self.index[prods[k].tobytes()] for k in range(len(self))], dtype=np.int64
            )
        return self._right_maps[h]

    def left_map(self, h: int) -> np.ndarray:
        f = self.field
        g = self.elements[h]
        if f.r == 1:
            prods = (g.astype(np.int64) @ self.elements.astype(np.int64) % f.p).astype(f.dtype)
        else:
            prods = np.stack([f.matmul(g, self.elements[k]) for k in range(len(self))])
        return np.array([self.index[prods[k].tobytes()] for k in range(len(self))], dtype=np.int64)

    def mul_table(self):
        if self._table is None:
            if len(self) > MUL_TABLE_CAP:
                raise GroupTooLarge(f"multiplication table capped at {MUL_TABLE_CAP}")
            self._table = np.stack([self.left_map(i) for i in range(len(self))]).astype(np.int32)
        return self._table

    def element_order(self, i: int) -> int:
        acc, k = i, 1
        while acc != self.identity:
            acc = self.mul(acc, i)
            k += 1
        return k

    def _reach_mask(self, gen_indices) -> np.ndarray:
        """Membership mask of the subgroup generated by right products."""
        maps = [self.right_map(g) for g in gen_indices]
        reached = np.zeros(len(self), dtype=bool)
        reached[self.identity] = True
        frontier = np.array([self.identity])
        while frontier.size:
            new = []
            for m in maps:
                hit = m[frontier]
                fresh = hit[~reached[hit]]
                if fresh.size:
                    reached[fresh] = True
                    new.append(np.unique(fresh))
            frontier = np.concatenate(new) if new else np.array([], dtype=np.int64)
        return reached

    def _greedy_generators(self):
        """Smallest-first generating set; a candidate already reached is skipped
        without a closure pass, so the number of passes is the number of
        generators kept."""
        gens: list[int] = []
        reached = self._reach_mask(gens)
        for cand in range(len(self)):
            if reached.all():
                break
            if reached[cand]:
                continue
            gens.append(cand)
            reached = self._reach_mask(gens)
        assert reached.all(), "element list is not closed under products"
        return gens

    def _verify_generated(self):
        assert self._reach_mask(self.generators).all(), "generators do not generate"

    def conjugate(self, s) -> "MatGroup":
        """s^{-1} H s as an enumerated group."""
        f = self.field
        s = np.asarray(s, dtype=f.dtype)
        sinv = inverse(f, s)
        els = [f.matmul(f.matmul(sinv, self.elements[i]), s) for i in range(len(self))]
        return MatGroup(f, self.n, els, kind=f"conj({self.kind})")

    def __repr__(self):
        return f"MatGroup({self.kind}, n={self.n}, {self.field}, order {len(self)})"


class SubgroupSpec:
    """Defining data for a named subgroup of GL_n(F_q)."""

    KINDS = (
        "full",
        "fix_w",
        "pres_w",
        "pres_w_fix_quot",
        "pres_l_pres_w_fix_quot",
        "pres_l_fix_quot",
        "borel",
        "unipotent_upper",
        "block_diagonal",
        "block_upper_triangular",
        "unipotent_block",
        "permutation",
    )

    def __init__(self, field: FieldSpec, n: int, kind: str, w: Subspace | None = None,
                 l: Subspace | None = None, blocks=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.field = field
        self.n = n
        self.kind = kind
        self.w = w
        self.l = l
        self.blocks = tuple(blocks) if blocks else None
        if kind == "pres_l_pres_w_fix_quot":
            assert w is not None and l is not None and w.contains(l) and l.dim == 1

    def predicted_order(self) -> int:
        q, n = self.field.q, self.n
        k = self.kind
        w = self.w.dim if self.w is not None else None
        if k == "full":
            return gl_order(q, n)
        if k == "fix_w":
            return q ** (w * (n - w)) * gl_order(q, n - w)
        if k == "pres_w":
            return q ** (w * (n - w)) * gl_order(q, w) * gl_order(q, n - w)
        if k == "pres_w_fix_quot":
            return q ** (w * (n - w)) * gl_order(q, w)
        if k == "pres_l_pres_w_fix_quot":
            inner = (q - 1) * q ** (w - 1) * gl_order(q, w - 1)
            return q ** (w * (n - w)) * inner
        if k == "pres_l_fix_quot":
            return (q - 1) * q ** (n - 1)
        if k == "borel":
            return (q - 1) ** n * q ** (n * (n - 1) // 2)
        if k == "unipotent_upper":
            return q ** (n * (n - 1) // 2)
        if k == "block_diagonal":
            out = 1
            for b in self.blocks:
                out *= gl_order(q, b)
            return out
        if k == "block_upper_triangular":
            out = 1
            for b in self.blocks:
                out *= gl_order(q, b)
            return out * self._above_block_cells()
        if k == "unipotent_block":
            a, b = self.blocks
            return q ** (a * b)
        if k == "permutation":
            out = 1
            for i in range(2, n + 1):
                out *= i
            return out
        raise AssertionError

    def _above_block_cells(self):
        cells = 0
        sizes = self.blocks
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                cells += sizes[i] * sizes[j]
        return self.field.q**cells

    def membership_predicate(self):
        """A callable re-verifying the defining conditions on one element."""
        field, n = self.field, self.n
        w, l = self.w, self.l

        def pres(sub, g):
            return sub.apply_matrix(g) == sub

        def fixes_pointwise(sub, g):
            return np.array_equal(field.matmul(sub.basis, np.asarray(g).T), sub.basis)

        def fixes_quotient(sub, g):
            delta = field.add(np.asarray(g), field.neg(field.eye(n)))
            return all(sub.contains_vector(delta[:, j]) for j in range(n))

        k = self.kind
        if k == "full":
            return lambda g: True
        if k == "fix_w":
            return lambda g: fixes_pointwise(w, g)
        if k == "pres_w":
            return lambda g: pres(w, g)
        if k == "pres_w_fix_quot":
            return lambda g: pres(w, g) and fixes_quotient(w, g)
        if k == "pres_l_pres_w_fix_quot":
            return lambda g: pres(l, g) and pres(w, g) and fixes_quotient(w, g)
        if k == "pres_l_fix_quot":
            return lambda g: pres(l, g) and fixes_quotient(l, g)
        if k == "borel":
            return lambda g: not np.tril(np.asarray(g), -1).any()
        if k == "unipotent_upper":
            return lambda g: (not np.tril(np.asarray(g), -1).any()) and all(
                np.asarray(g)[i, i] == 1 for i in range(n)
            )
        if k in ("block_diagonal", "block_upper_triangular", "unipotent_block"):
            sizes = self.blocks
            starts = np.cumsum((0,) + sizes)
            kk = k

            def block_pred(g):
                g = np.asarray(g)
                for bi in range(len(sizes)):
                    for bj in range(len(sizes)):
                        blk = g[starts[bi] : starts[bi + 1], starts[bj] : starts[bj + 1]]
                        if bi > bj and blk.any():
                            return False
                        if bi < bj and kk == "block_diagonal" and blk.any():
                            return False
                        if bi == bj and kk == "unipotent_block" and not np.array_equal(
                            blk, field.eye(sizes[bi])
                        ):
                            return False
                return True

            return block_pred
        if k == "permutation":

            def perm_pred(g):
                g = np.asarray(g)
                return all((g[i] != 0).sum() == 1 and (g[i] == 1).sum() == 1 for i in range(n)) and all(
                    (g[:, j] == 1).sum() == 1 for j in range(n)
                )

            return perm_pred
        raise AssertionError


def _standard_position_change(spec: SubgroupSpec):
    """Invertible S whose first columns span L then W, so S conjugates the
    standard-position subgroup into the requested one."""
    field, n = spec.field, spec.n
    rows: list = []

    def try_add(v):
        cand = np.array(rows + [v])
        _, rank, _ = rref(field, cand)
        if rank == len(rows) + 1:
            rows.append(np.asarray(v, dtype=field.dtype))

    if spec.l is not None:
        for v in spec.l.basis:
            try_add(v)
    if spec.w is not None:
        for v in spec.w.basis:
            try_add(v)
    for j in range(n):
        if len(rows) == n:
            break
        e = field.zeros(n)
        e[j] = 1
        try_add(e)
    return np.array(rows, dtype=field.dtype).T


def _free_cells_enumeration(field, n, free_cells, diag_blocks):
    """Matrices = identity, overwritten on diagonal blocks and free cells."""
    q = field.q
    free_cells = list(free_cells)

    out: list = []

    def rec(idx, current):
        if idx == len(diag_blocks):
            if not free_cells:
                out.append(current.copy())
                return
            for values in product(range(q), repeat=len(free_cells)):
                g = current.copy()
                for (i, j), v in zip(free_cells, values):
                    g[i, j] = v
                out.append(g)
            return
        rows, cols, choices = diag_blocks[idx]
        for blk in choices:
            g = current.copy()
            g[np.ix_(rows, cols)] = blk
            rec(idx + 1, g)

    rec(0, field.eye(n))
    return out


_GL_CACHE: dict = {}


def _gl_elements(field, k):
    key = (field.p, field.r, k)
    if key not in _GL_CACHE:
        _GL_CACHE[key] = _enumerate_gl(field, k)
    return _GL_CACHE[key]


_GROUP_CACHE: dict = {}


def group_make(spec: SubgroupSpec, cap: int = GROUP_CAP, verify_membership: bool = True) -> MatGroup:
    """Enumerate the subgroup by constrained cell filling, then sort and index."""
    cache_key = (
        spec.field.p,
        spec.field.r,
        spec.n,
        spec.kind,
        spec.w._key if spec.w is not None else None,
        spec.l._key if spec.l is not None else None,
        spec.blocks,
    )
    if cache_key in _GROUP_CACHE:
        return _GROUP_CACHE[cache_key]
    predicted = spec.predicted_order()
    if predicted > cap:
        raise GroupTooLarge(f"predicted order {predicted} exceeds cap {cap}")
    field, n, kind = spec.field, spec.n, spec.kind
    w = spec.w.dim if spec.w is not None else None

    if kind == "full":
        std = _gl_elements(field, n)
    elif kind == "fix_w":
        std = _free_cells_enumeration(
            field, n,
            [(i, j) for i in range(w) for j in range(w, n)],
            [(list(range(w, n)), list(range(w, n)), _gl_elements(field, n - w))],
        )
    elif kind == "pres_w":
        std = _free_cells_enumeration(
            field, n,
            [(i, j) for i in range(w) for j in range(w, n)],
            [
                (list(range(w)), list(range(w)), _gl_elements(field, w)),
                (list(range(w, n)), list(range(w, n)), _gl_elements(field, n - w)),
            ],
        )
    elif kind == "pres_w_fix_quot":
        std = _free_cells_enumeration(
            field, n,
            [(i, j) for i in range(w) for j in range(w, n)],
            [(list(range(w)), list(range(w)), _gl_elements(field, w))],
        )
    elif kind == "pres_l_pres_w_fix_quot":
        if w == 1:
            inner = [np.array([[c]], dtype=field.dtype) for c in range(1, field.q)]
        else:
            std_l = Subspace(field, w, field.eye(w)[:1])
            inner_spec = SubgroupSpec(field, w, "pres_l_fix_quot", l=std_l)
            # A in GL_w preserving the first line: unit, free row, GL_{w-1} block
            inner = _free_cells_enumeration(
                field, w,
                [(0, j) for j in range(1, w)],
                [
                    ([0], [0], [np.array([[c]], dtype=field.dtype) for c in range(1, field.q)]),
                    (list(range(1, w)), list(range(1, w)), _gl_elements(field, w - 1)),
                ],
            )
            del inner_spec
        std = _free_cells_enumeration(
            field, n,
            [(i, j) for i in range(w) for j in range(w, n)],
            [(list(range(w)), list(range(w)), inner)],
        )
    elif kind == "pres_l_fix_quot":
        std = _free_cells_enumeration(
            field, n,
            [(0, j) for j in range(1, n)],
            [([0], [0], [np.array([[c]], dtype=field.dtype) for c in range(1, field.q)])],
        )
    elif kind == "borel":
        std = _free_cells_enumeration(
            field, n,
            [(i, j) for i in range(n) for j in range(i + 1, n)],
            [([i], [i], [np.array([[c]], dtype=field.dtype) for c in range(1, field.q)]) for i in range(n)],
        )
    elif kind == "unipotent_upper":
        std = _free_cells_enumeration(
            field, n, [(i, j) for i in range(n) for j in range(i + 1, n)], []
        )
    elif kind in ("block_diagonal", "block_upper_triangular"):
        sizes = spec.blocks
        assert sum(sizes) == n
        starts = np.cumsum((0,) + sizes)
        diag = [
            (list(range(starts[b], starts[b + 1])), list(range(starts[b], starts[b + 1])), _gl_elements(field, sizes[b]))
            for b in range(len(sizes))
        ]
        free = []
        if kind == "block_upper_triangular":
            for bi in range(len(sizes)):
                for bj in range(bi + 1, len(sizes)):
                    free.extend(
                        (i, j)
                        for i in range(starts[bi], starts[bi + 1])
                        for j in range(starts[bj], starts[bj + 1])
                    )
        std = _free_cells_enumeration(field, n, free, diag)
    elif kind == "unipotent_block":
        a, b = spec.blocks
        assert a + b == n
        std = _free_cells_enumeration(field, n, [(i, j) for i in range(a) for j in range(a, n)], [])
    elif kind == "permutation":
        std = []
        for perm in permutations(range(n)):
            g = field.zeros((n, n))
            for i, j in enumerate(perm):
                g[j, i] = 1
            std.append(g)
    else:
        raise AssertionError(kind)

    assert len(std) == predicted, (kind, len(std), predicted)

    if _needs_conjugation(spec):
        S = _standard_position_change(spec)
        Sinv = inverse(field, S)
        std = [field.matmul(field.matmul(S, g), Sinv) for g in std]

    group = MatGroup(field, n, std, kind=kind)
    if verify_membership:
        pred = spec.membership_predicate()
        for i in range(len(group)):
            assert pred(group.elements[i]), f"membership violated for {kind}"
    _GROUP_CACHE[cache_key] = group
    return group


def _needs_conjugation(spec: SubgroupSpec) -> bool:
    field, n = spec.field, spec.n
    if spec.w is not None and spec.w != Subspace(field, n, field.eye(n)[: spec.w.dim]):
        return True
    if spec.l is not None and spec.l != Subspace(field, n, field.eye(n)[:1]):
        return True
    return False


def full_gl(field: FieldSpec, n: int, cap: int = GROUP_CAP) -> MatGroup:
    return group_make(SubgroupSpec(field, n, "full"), cap=cap)


# ---------------------------------------------------------------------------
# block sums, symmetry, stabilization


def block_sum(field: FieldSpec, a, b):
    a = np.asarray(a, dtype=field.dtype)
    b = np.asarray(b, dtype=field.dtype)
    n, m = a.shape[0], b.shape[0]
    out = field.zeros((n + m, n + m))
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def swap_block_matrix(field: FieldSpec, n: int, m: int):
    """The block permutation matrix conjugating a (+) b to b (+) a."""
    T = field.zeros((n + m, n + m))
    T[:n, m:] = field.eye(n)
    T[n:, :m] = field.eye(m)
    return T


def stabilization_embed(field: FieldSpec, g, k: int = 1):
    return block_sum(field, g, field.eye(k))


# ---------------------------------------------------------------------------
# orbits, stabilizers, cosets


def orbit_and_stabilizer(group: MatGroup, act, x):
    """Orbit of x under the group and the stabilizer subgroup of x.

    `act(mat, point)` must return a hashable point.  The orbit-stabilizer
    product is asserted.
    """
    orbit = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for pt in frontier:
            for gi in group.generators:
                y = act(group.elements[gi], pt)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    stab = [group.elements[i] for i in range(len(group)) if act(group.elements[i], x) == x]
    stab_group = MatGroup(group.field, group.n, stab, kind=f"stab({group.kind})")
    assert len(orbit) * len(stab_group) == len(group)
    return orbit, stab_group


def left_transversal(group: MatGroup, sub: MatGroup):
    """Deterministic representatives of G/H (least element per coset)."""
    sub_maps = [group.right_map(group.index_of(sub.elements[i])) for i in range(len(sub))]
    seen = np.zeros(len(group), dtype=bool)
    reps = []
    for g in range(len(group)):
        if seen[g]:
            continue
        reps.append(g)
        for m in sub_maps:
            seen[m[g]] = True
    assert len(reps) * len(sub) == len(group)
    return reps


def double_cosets(group: MatGroup, h1: MatGroup, h2: MatGroup):
    """Least-element representatives of H1 \\ G / H2; the cosets partition G."""
    left_maps = [group.left_map(group.index_of(h1.elements[i])) for i in h1.generators] or []
    right_maps = [group.right_map(group.index_of(h2.elements[i])) for i in h2.generators] or []
    seen = np.zeros(len(group), dtype=bool)
    reps = []
    sizes = []
    for g in range(len(group)):
        if seen[g]:
            continue
        reps.append(g)
        seen[g] = True
        frontier = [g]
        size = 1
        while frontier:
            nxt = []
            for x in frontier:
                for m in left_maps + right_maps:
                    y = int(m[x])
                    if not seen[y]:
                        seen[y] = True
                        nxt.append(y)
                        size += 1
            frontier = nxt
        sizes.append(size)
    assert sum(sizes) == len(group)
    return reps


def sylow_subgroup(group: MatGroup, p: int) -> MatGroup:
    """A Sylow p-subgroup; at the defining characteristic of a full GL this is
    the unipotent upper-triangular group, taken directly without search."""
    order = len(group)
    pp = 1
    while order % p == 0:
        pp *= p
        order //= p
    field, n = group.field, group.n
    if pp == 1:
        return MatGroup(field, n, [field.eye(n)], kind="trivial")
    if group.kind == "full" and p == field.p:
        syl = group_make(SubgroupSpec(field, n, "unipotent_upper"))
        assert len(syl) == pp
        return syl

    current = {group.identity}
    while len(current) < pp:
        normalizer = _normalizer(group, current)
        grown = False
        for x in normalizer:
            if x in current:
                continue
            m, acc = 1, x
            while acc not in current:
                acc = group.mul(acc, x)
                m += 1
            if m % p == 0:
                z = x
                for _ in range(m // p - 1):
                    z = group.mul(z, x)
                new = _closure_indices(group, current, z)
                if len(new) == len(current) * p:
                    current = new
                    grown = True
                    break
        assert grown, "sylow growth stalled"
    syl = MatGroup(field, n, [group.elements[i] for i in sorted(current)], kind=f"sylow_{p}")
    assert len(syl) == pp
    return syl


def _normalizer(group: MatGroup, sub_idx: set):
    out = []
    for g in range(len(group)):
        ginv = group.inv(g)
        if all(group.mul(group.mul(g, h), ginv) in sub_idx for h in sub_idx):
            out.append(g)
    return out


def _closure_indices(group: MatGroup, base: set, extra: int):
    out = set(base)
    out.add(extra)
    frontier = [extra]
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(out):
                for c in (group.mul(a, b), group.mul(b, a)):
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
        frontier = nxt
    return out


def is_conjugate_subgroup(h1: MatGroup, h2: MatGroup, s) -> bool:
    """Whether s^{-1} h1 s = h2 as element sets."""
    conj = h1.conjugate(s)
    if len(conj) != len(h2):
        return False
    return all(h2.contains(conj.elements[i]) for i in range(len(conj)))


def free_cell_group(field: FieldSpec, n: int, cells) -> MatGroup:
    """The group {I + sum a_c E_c} over the given off-diagonal cells.

    The cell pattern must be product-closed (e.g. disjoint superdiagonal
    pairs, or a full upper-right block); the constructor verifies groupness.
    """
    els = _free_cells_enumeration(field, n, list(cells), [])
    return MatGroup(field, n, els, kind="free_cells")


def rho_diagonal_blocks(field: FieldSpec, g, blocks):
    """Forget above-diagonal blocks: the retraction of block upper triangular
    onto block diagonal."""
    g = np.asarray(g)
    starts = np.cumsum((0,) + tuple(blocks))
    out = field.zeros(g.shape)
    for b in range(len(blocks)):
        s, e = starts[b], starts[b + 1]
        out[s:e, s:e] = g[s:e, s:e]
    return out
