"""Group homology at desk scale: coinvariants, the normalized bar complex,
cochain restriction maps, and the stable-elements method through a Sylow
subgroup.

The normalized bar complex of G with coefficients in a right module M has
C_d = M tensor k[(G-e)^d], so degrees grow like (|G|-1)^d; caps are expressed
in nonzero-entry counts.  Cohomology (used by the stable-elements method) is
computed on normalized cochains with trivial F_p coefficients; over a field
dim H^d = dim H_d, which is asserted wherever both sides are computed.
"""

from __future__ import annotations

import numpy as np

from .errors import ResourceCapExceeded
from .glgroup import MatGroup, SubgroupSpec, double_cosets, group_make, sylow_subgroup
from .linalg import F2Echelon, FpEchelon, sparse_kernel, sparse_rank
from .steinberg import GModule, induce_module, top_homology_module, trivial_module

BAR_NNZ_CAP = 120_000_000


class HomologyReport:
    def __init__(self, dims: dict, method: str, notes=None):
        self.dims = dict(dims)
        self.method = method
        self.notes = notes or {}

    def __getitem__(self, d):
        return self.dims[d]

    def __repr__(self):
        return f"HomologyReport({self.dims}, method={self.method!r})"


def coinvariants(module: GModule):
    """dim and pivot data of M_G = M / span(g.x - x), from the generators.

    A generating set suffices: (gh - 1) = (g - 1)h + (h - 1), so the span over
    generators equals the span over the group; for groups of order <= 200 the
    equality is re-verified exhaustively.
    """
    p, dim = module.p, module.dim
    ech = FpEchelon(p, dim) if p != 2 else F2Echelon(dim)
    group = module.group

    def feed(idx, echelon):
        mat = (module.action(idx) - np.eye(dim, dtype=np.int64)) % p
        for col in mat.T:
            if p == 2:
                v = 0
                for r in np.flatnonzero(col % 2):
                    v |= 1 << int(r)
                if v:
                    echelon.add(v)
            else:
                if col.any():
                    echelon.add(col)

    for gi in group.generators:
        feed(gi, ech)
    rank = ech.rank
    if len(group) <= 200:
        full = FpEchelon(p, dim) if p != 2 else F2Echelon(dim)
        for gi in range(len(group)):
            feed(gi, full)
        assert full.rank == rank, "generator span differs from group span"
    return dim - rank


class _BarBasis:
    """Indexing for normalized bar chains: tuples of non-identity elements."""

    def __init__(self, group: MatGroup):
        self.group = group
        self.nid = [i for i in range(len(group)) if i != group.identity]
        self.pos = {g: k for k, g in enumerate(self.nid)}
        self.rad = len(self.nid)

    def tuple_count(self, d):
        return self.rad**d

    def tindex(self, positions):
        # big-endian, matching itertools.product enumeration order
        idx = 0
        for t in positions:
            idx = idx * self.rad + t
        return idx


def bar_boundary_columns(group: MatGroup, module: GModule, d: int):
    """Columns of the boundary C_d -> C_{d-1} of the normalized bar complex."""
    from itertools import product as iproduct

    assert d >= 1
    basis = _BarBasis(group)
    p, dim = module.p, module.dim
    rad = basis.rad
    sign_last = (-1) ** d % p
    translates = {}
    for tup in iproduct(range(rad), repeat=d):
        g1 = basis.nid[tup[0]]
        if g1 not in translates:
            translates[g1] = module.right_translate(g1) % p
        A = translates[g1]
        tail = basis.tindex(tup[1:])
        merged_rows = []
        for i in range(d - 1):
            prod = group.mul(basis.nid[tup[i]], basis.nid[tup[i + 1]])
            if prod == group.identity:
                continue
            m = tup[:i] + (basis.pos[prod],) + tup[i + 2 :]
            merged_rows.append((basis.tindex(m), (-1) ** (i + 1) % p))
        front = basis.tindex(tup[:-1])
        for j in range(dim):
            acc = {}
            for j2 in np.flatnonzero(A[:, j]):
                acc[tail * dim + int(j2)] = int(A[j2, j])
            for row, sgn in merged_rows:
                key = row * dim + j
                acc[key] = (acc.get(key, 0) + sgn) % p
            key = front * dim + j
            acc[key] = (acc.get(key, 0) + sign_last) % p
            yield [(r, c) for r, c in acc.items() if c % p]


def bar_homology(group: MatGroup, module: GModule, max_degree: int,
                 nnz_cap: int = BAR_NNZ_CAP) -> HomologyReport:
    """H_d(G; M) for d <= max_degree via ranks of the normalized bar boundaries."""
    basis = _BarBasis(group)
    p, dim = module.p, module.dim
    est = sum(
        dim * basis.tuple_count(d) * (dim + d + 1) for d in range(1, max_degree + 2)
    )
    if est > nnz_cap:
        raise ResourceCapExceeded(
            f"bar complex needs about {est} entries up to degree {max_degree + 1}"
        )
    ranks = {0: 0}
    for d in range(1, max_degree + 2):
        ncols = dim * basis.tuple_count(d)
        nrows = dim * basis.tuple_count(d - 1)
        if ncols == 0:
            ranks[d] = 0
            continue
        cols = bar_boundary_columns(group, module, d)
        ranks[d] = sparse_rank(p, nrows, list(cols), nnz_cap=nnz_cap)
    dims = {}
    for d in range(0, max_degree + 1):
        dims[d] = dim * basis.tuple_count(d) - ranks[d] - ranks[d + 1]
        assert dims[d] >= 0
    assert dims[0] == coinvariants(module), "H_0 disagrees with coinvariants"
    return HomologyReport(dims, "bar")


# ---------------------------------------------------------------------------
# cochains with trivial F_p coefficients


class CochainComplex:
    """Normalized cochains of a group with trivial F_p coefficients."""

    def __init__(self, group: MatGroup, p: int):
        self.group = group
        self.p = p
        self.basis = _BarBasis(group)

    def dim_cochains(self, d):
        return self.basis.tuple_count(d)

    def delta_columns(self, d):
        """Columns of delta: C^d -> C^{d+1}, one per d-tuple basis cochain."""
        from itertools import product as iproduct

        b = self.basis
        rad, p = b.rad, self.p
        group = self.group
        cols = []
        for tup in iproduct(range(rad), repeat=d):
            acc: dict = {}

            def bump(u, c):
                acc[b.tindex(u)] = (acc.get(b.tindex(u), 0) + c) % p

            for a in range(rad):
                bump((a,) + tup, 1)
                bump(tup + (a,), (-1) ** (d + 1))
            for i in range(d):
                target = b.nid[tup[i]]
                for a in range(rad):
                    y = group.mul(group.inv(b.nid[a]), target)
                    if y == group.identity:
                        continue
                    u = tup[:i] + (a, b.pos[y]) + tup[i + 1 :]
                    bump(u, (-1) ** (i + 1))
            cols.append([(r, c % p) for r, c in acc.items() if c % p])
        return cols

    def cocycle_basis(self, d):
        """Kernel of delta^d as dense vectors over d-tuples."""
        if d == 0:
            # constants; delta of a constant c is c on every 1-tuple
            return []
        cols = self.delta_columns(d)
        return sparse_kernel(self.p, self.dim_cochains(d + 1), cols)

    def coboundary_echelon(self, d):
        """Echelon of im(delta^{d-1}) inside C^d."""
        ech = F2Echelon(self.dim_cochains(d)) if self.p == 2 else FpEchelon(self.p, self.dim_cochains(d))
        if d == 0:
            return ech
        for col in self.delta_columns(d - 1):
            if self.p == 2:
                v = 0
                for r, c in col:
                    if c % 2:
                        v ^= 1 << r
                if v:
                    ech.add(v)
            else:
                v = np.zeros(self.dim_cochains(d), dtype=np.int64)
                for r, c in col:
                    v[r] = c
                if v.any():
                    ech.add(v)
        return ech

    def cohomology_dim(self, d):
        if d == 0:
            return 1
        z = len(self.cocycle_basis(d))
        return z - self.coboundary_echelon(d).rank

    def reduce_mod_coboundaries(self, vec, ech):
        if self.p == 2:
            v = 0
            for r in np.flatnonzero(np.asarray(vec) % 2):
                v |= 1 << int(r)
            res = ech.reduce_full(v)
            out = np.zeros(len(vec), dtype=np.int64)
            while res:
                low = res & -res
                out[low.bit_length() - 1] = 1
                res ^= low
            return out
        return ech.reduce_full(np.asarray(vec))


def restrict_cochain(parent: CochainComplex, sub: CochainComplex, embed, vec, d):
    """Restriction of a parent cochain vector along sub -> parent positions."""
    from itertools import product as iproduct

    pb, sb = parent.basis, sub.basis
    out = np.zeros(sb.tuple_count(d), dtype=np.int64)
    for tup in iproduct(range(sb.rad), repeat=d):
        ptup = tuple(embed[t] for t in tup)
        out[sb.tindex(tup)] = vec[pb.tindex(ptup)]
    return out % parent.p


def conjugated_restriction(parent: CochainComplex, sub: CochainComplex,
                           conj_embed, vec, d):
    """Value of the parent cochain on tuples conjugated entrywise.

    conj_embed[k] is the parent position of x^{-1} g_k x for the k-th
    non-identity element g_k of the subgroup.
    """
    return restrict_cochain(parent, sub, conj_embed, vec, d)


def _sub_nonidentity_in_order(sub_group: MatGroup):
    return [i for i in range(len(sub_group)) if i != sub_group.identity]


def stable_elements_homology(group: MatGroup, p: int, max_degree: int) -> HomologyReport:
    """H_d(G; F_p) for d <= max_degree via stable elements in a Sylow subgroup.

    Over a field H^d and H_d have equal dimension, so the cohomological
    computation is reported as homology.  Stable cocycle representatives are
    kept in the notes for downstream restriction checks.
    """
    field, n = group.field, group.n
    syl = sylow_subgroup(group, p)
    cs = CochainComplex(syl, p)
    if len(syl) == len(group):
        dims = {d: cs.cohomology_dim(d) for d in range(max_degree + 1)}
        return HomologyReport(dims, "stable_elements", notes={"sylow_order": len(syl)})

    reps = double_cosets(group, syl, syl)
    syl_in_g = {group.index_of(syl.elements[i]) for i in range(len(syl))}

    conditions = []
    for x in reps:
        xinv = group.inv(x)
        conj = {g: group.mul(group.mul(x, g), xinv) for g in syl_in_g}
        k1_idx = sorted(g for g in syl_in_g if group.mul(group.mul(xinv, g), x) in syl_in_g)
        if len(k1_idx) == len(syl):
            # x normalizes S up to equality of the intersection with S itself;
            # the identity coset in particular imposes nothing new only when
            # the conjugation map is the identity
            if all(conj[g] == g for g in syl_in_g):
                continue
        k1 = MatGroup(field, n, [group.elements[g] for g in k1_idx], kind="dcos_intersection")
        ck = CochainComplex(k1, p)
        embed_res = []
        embed_conj = []
        sylpos = cs.basis.pos
        for i in _sub_nonidentity_in_order(k1):
            g = group.index_of(k1.elements[i])
            embed_res.append(sylpos[syl.index_of(group.elements[g])])
            gc = group.mul(group.mul(xinv, g), x)
            embed_conj.append(sylpos[syl.index_of(group.elements[gc])])
        conditions.append((ck, embed_res, embed_conj))

    dims = {}
    stable_reps = {}
    for d in range(max_degree + 1):
        if d == 0:
            dims[0] = 1
            continue
        Z = cs.cocycle_basis(d)
        bs = cs.coboundary_echelon(d)
        if not Z:
            dims[d] = 0
            stable_reps[d] = []
            continue
        residual_rows = []
        for ck, embed_res, embed_conj in conditions:
            bk = ck.coboundary_echelon(d)
            for z in Z:
                r1 = restrict_cochain(cs, ck, embed_res, z, d)
                r2 = restrict_cochain(cs, ck, embed_conj, z, d)
                diff = (r1 - r2) % p
                red = ck.reduce_mod_coboundaries(diff, bk)
                residual_rows.append(red)
        if residual_rows:
            ncond = len(conditions)
            per = len(Z)
            cols = []
            for j in range(per):
                col = []
                base = 0
                for c in range(ncond):
                    vec = residual_rows[c * per + j]
                    for r in np.flatnonzero(vec):
                        col.append((base + int(r), int(vec[r])))
                    base += len(vec)
                cols.append(col)
            total_rows = sum(len(residual_rows[c * per]) for c in range(ncond)) if ncond else 0
            stable_coeffs = sparse_kernel(p, total_rows, cols)
        else:
            stable_coeffs = [np.eye(len(Z), dtype=np.uint8)[j] for j in range(len(Z))]
        b_rank = bs.rank
        s_dim = len(stable_coeffs)
        assert s_dim >= b_rank, "coboundaries must be stable"
        dims[d] = s_dim - b_rank
        kept = []
        probe = F2Echelon(cs.dim_cochains(d)) if p == 2 else FpEchelon(p, cs.dim_cochains(d))
        # seed with the coboundaries so only genuinely new classes are kept
        if p == 2:
            for h, v in bs.pivots.items():
                probe.pivots[h] = v
        else:
            probe.pivot_pos = dict(bs.pivot_pos)
            probe.rows = list(bs.rows)
        for coeff in stable_coeffs:
            vec = np.zeros(cs.dim_cochains(d), dtype=np.int64)
            for j in np.flatnonzero(coeff):
                vec = (vec + int(coeff[j]) * np.asarray(Z[j], dtype=np.int64)) % p
            if p == 2:
                v = 0
                for r in np.flatnonzero(vec):
                    v |= 1 << int(r)
                if probe.add(v) is None and v:
                    kept.append(vec)
            else:
                if probe.add(vec) is None and vec.any():
                    kept.append(vec)
        assert len(kept) == dims[d]
        stable_reps[d] = kept
    return HomologyReport(
        dims, "stable_elements", notes={"sylow": syl, "cochains": cs, "reps": stable_reps}
    )


def restriction_on_cohomology(parent_group: MatGroup, sub_group: MatGroup, p: int, d: int):
    """The matrix of res: H^d(parent) -> H^d(sub) in chosen cocycle bases.

    Returns (matrix, parent_classes, sub_classes); entries are coordinates of
    restricted representatives in the sub's cohomology basis.
    """
    cp = CochainComplex(parent_group, p)
    csub = CochainComplex(sub_group, p)
    embed = []
    for i in _sub_nonidentity_in_order(sub_group):
        embed.append(cp.basis.pos[parent_group.index_of(sub_group.elements[i])])

    parent_classes = _cohomology_class_reps(cp, d)
    sub_classes = _cohomology_class_reps(csub, d)
    bsub = csub.coboundary_echelon(d)
    ncls = len(sub_classes)
    mat = np.zeros((ncls, len(parent_classes)), dtype=np.int64)
    for j, z in enumerate(parent_classes):
        r = restrict_cochain(cp, csub, embed, z, d)
        coords = _coords_in_quotient(r, sub_classes, bsub, csub, d)
        mat[:, j] = coords
    return mat, parent_classes, sub_classes


def _echelon_cols(ech, dim, p):
    out = []
    if p == 2:
        for h, v in ech.pivots.items():
            vec = np.zeros(dim, dtype=np.int64)
            while v:
                low = v & -v
                vec[low.bit_length() - 1] = 1
                v ^= low
            out.append(vec)
    else:
        out.extend(ech.rows)
    return out


def _coords_in_quotient(vec, class_reps, cob_ech, cochains, d):
    """Coordinates of a cocycle in the span of class representatives modulo
    coboundaries, by elimination against [coboundaries | classes]."""
    p = cochains.p
    dim = cochains.dim_cochains(d)
    ech = F2Echelon(dim, track=True) if p == 2 else FpEchelon(p, dim, track=True)
    for col in _echelon_cols(cob_ech, dim, p):
        if p == 2:
            v = 0
            for r in np.flatnonzero(col):
                v |= 1 << int(r)
            ech.add(v, 0)
        else:
            ech.add(col, np.zeros(len(class_reps), dtype=np.int64))
    for k, rep in enumerate(class_reps):
        if p == 2:
            v = 0
            for r in np.flatnonzero(rep):
                v |= 1 << int(r)
            ech.add(v, 1 << k)
        else:
            unit = np.zeros(len(class_reps), dtype=np.int64)
            unit[k] = 1
            ech.add(np.asarray(rep), unit)
    if p == 2:
        v = 0
        for r in np.flatnonzero(np.asarray(vec) % 2):
            v |= 1 << int(r)
        res, combo = ech.reduce(v, 0)
        assert res == 0, "vector not in the span of classes modulo coboundaries"
        out = np.zeros(len(class_reps), dtype=np.int64)
        while combo:
            low = combo & -combo
            out[low.bit_length() - 1] = 1
            combo ^= low
        return out
    res, combo = ech.reduce(np.asarray(vec) % p, np.zeros(len(class_reps), dtype=np.int64))
    assert not res.any(), "vector not in the span of classes modulo coboundaries"
    return (-combo) % p


def _cohomology_class_reps(cochains: CochainComplex, d):
    """Cocycle vectors spanning H^d, i.e. kernel vectors completing the
    coboundary echelon."""
    p = cochains.p
    dim = cochains.dim_cochains(d)
    Z = cochains.cocycle_basis(d)
    ech = cochains.coboundary_echelon(d)
    probe = F2Echelon(dim) if p == 2 else FpEchelon(p, dim)
    if p == 2:
        probe.pivots = dict(ech.pivots)
    else:
        probe.pivot_pos = dict(ech.pivot_pos)
        probe.rows = list(ech.rows)
    out = []
    for z in Z:
        if p == 2:
            v = 0
            for r in np.flatnonzero(z):
                v |= 1 << int(r)
            if v and probe.add(v) is None:
                out.append(np.asarray(z, dtype=np.int64))
        else:
            if z.any() and probe.add(z) is None:
                out.append(np.asarray(z, dtype=np.int64))
    return out


def is_coboundary(cochains: CochainComplex, vec, d) -> bool:
    ech = cochains.coboundary_echelon(d)
    red = cochains.reduce_mod_coboundaries(np.asarray(vec), ech)
    return not red.any()


# ---------------------------------------------------------------------------
# named checks


def shapiro_check(sub: MatGroup, group: MatGroup, module: GModule, max_degree: int) -> dict:
    ind = induce_module(sub, group, module)
    lhs = bar_homology(group, ind, max_degree)
    rhs = bar_homology(sub, module, max_degree)
    return {
        "induced": lhs.dims,
        "original": rhs.dims,
        "equal": lhs.dims == rhs.dims,
    }


def bd_but_comparison(field, n: int, blocks, ell: int, max_degree: int) -> dict:
    """The block-diagonal inclusion into block upper triangular is an
    F_ell-homology equality away from the characteristic: the unipotent kernel
    of the block retraction has order a power of the characteristic."""
    assert ell != field.p
    bd = group_make(SubgroupSpec(field, n, "block_diagonal", blocks=blocks))
    but = group_make(SubgroupSpec(field, n, "block_upper_triangular", blocks=blocks))
    kernel_order = len(but) // len(bd)
    k = kernel_order
    while k % field.p == 0:
        k //= field.p
    lhs = bar_homology(bd, trivial_module(bd, ell), max_degree)
    rhs = bar_homology(but, trivial_module(but, ell), max_degree)
    return {
        "bd": lhs.dims,
        "but": rhs.dims,
        "kernel_order": kernel_order,
        "kernel_is_char_power": k == 1,
        "equal": lhs.dims == rhs.dims,
    }


def semidirect_vanishing_check(field, n: int, max_degree: int | None = None) -> dict:
    """H_d of the (units x translations) line stabilizer acting trivially:
    vanishing for 0 < d < r(p-1), vacuous over F_2."""
    from .ffield import Subspace

    p, r = field.p, field.r
    bound = r * (p - 1)
    if bound <= 1:
        return {"vacuous": True, "bound": bound, "dims": {}}
    cap = max_degree if max_degree is not None else bound - 1
    l = Subspace(field, n, field.eye(n)[:1])
    kp = group_make(SubgroupSpec(field, n, "pres_l_fix_quot", l=l))
    assert len(kp) == (field.q - 1) * field.q ** (n - 1)
    # structure: translations (unipotent part) form a normal subgroup of order q^{n-1}
    translations = [
        i for i in range(len(kp)) if kp.elements[i][0, 0] == 1
    ]
    assert len(translations) == field.q ** (n - 1)
    report = bar_homology(kp, trivial_module(kp, p), cap)
    ok = all(report.dims[d] == 0 for d in range(1, min(cap, bound - 1) + 1))
    return {"vacuous": False, "bound": bound, "dims": report.dims, "vanishes_in_range": ok}


def e1_steinberg_vanishing(field, n: int, max_degree: int) -> dict:
    """H_d(GL_n; top splitting-complex homology tensor F_p) with the expected
    vanishing for d < r(p-1) - 1 (empty over F_2)."""
    from .buildings import BuildingKind
    from .glgroup import full_gl

    p, r = field.p, field.r
    g = full_gl(field, n)
    m = top_homology_module(BuildingKind(field, n, "split"), g, p)
    report = bar_homology(g, m, max_degree)
    bound = r * (p - 1) - 1
    ok = all(report.dims[d] == 0 for d in range(0, min(max_degree + 1, bound)))
    return {"dims": report.dims, "bound": bound, "vanishes_in_range": ok, "dim_module": m.dim}
