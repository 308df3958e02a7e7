"""Subspace-poset buildings over F_q and the lemma-level comparisons between them.

Six poset families, all on explicit subspace labels:

    tits            proper nonzero subspaces, ordered by inclusion
    rel_tits(W)     those V with V /\\ W = 0
    dual_rel_tits(W)  those V with V + W = everything
    split           splittings (V0, V1), V0 shrinking / V1 growing upward
    rel_split(W)    splittings with W <= V1
    cut_split(V,W|C)  splittings (A, B) of an ambient subspace C with A <= V, W <= B

Comparisons: the homological consequence of the join decomposition along a
line of W, the annihilator duality between relative and dual-relative posets,
and the cut-down isomorphism onto a complement of W.  All are certified
elementwise rather than assumed.
"""

from __future__ import annotations

import os
import pickle
import tempfile

import numpy as np

from .complexes import BettiProfile, Poset, order_complex
from .errors import BadParameters, PreconditionFailed, TooLarge
from .ffield import (
    FieldSpec,
    Subspace,
    all_proper_nonzero_subspaces,
    complement_containing,
    enumerate_subspaces,
    field_make,
)

BUILDING_CAP = 200_000

_VECSET_CACHE: dict = {}


def vector_codes(sub: Subspace) -> frozenset:
    """All vectors of the subspace as integer codes; containment = subset."""
    key = sub._key
    if key not in _VECSET_CACHE:
        field, n = sub.field, sub.n
        vecs = {0}
        for row in sub.basis:
            new = set()
            for c in range(1, field.q):
                cv = field.mul(np.full(n, c), row)
                for code in vecs:
                    v = _decode(field, code, n)
                    new.add(_encode(field, field.add(v, cv)))
            vecs |= new
        assert len(vecs) == field.q**sub.dim
        _VECSET_CACHE[key] = frozenset(vecs)
    return _VECSET_CACHE[key]


def _encode(field, v):
    code = 0
    for x in reversed(v):
        code = code * field.q + int(x)
    return code


def _decode(field, code, n):
    out = np.zeros(n, dtype=field.dtype)
    for i in range(n):
        out[i] = code % field.q
        code //= field.q
    return out


def _contained(a: Subspace, b: Subspace) -> bool:
    return a.dim <= b.dim and vector_codes(a) <= vector_codes(b)


def _meets_trivially(a: Subspace, b: Subspace) -> bool:
    return len(vector_codes(a) & vector_codes(b)) == 1


class BuildingKind:
    """Which building, over which ambient space, with which parameters."""

    NAMES = ("tits", "rel_tits", "dual_rel_tits", "split", "rel_split", "cut_split")

    def __init__(self, field: FieldSpec, n: int, name: str,
                 w: Subspace | None = None, v: Subspace | None = None):
        if name not in self.NAMES:
            raise BadParameters(f"unknown building {name!r}")
        if name in ("rel_tits", "dual_rel_tits", "rel_split"):
            if w is None or w.dim == 0 or w.dim == n:
                raise BadParameters(f"{name} needs a nonzero proper subspace")
        if name == "cut_split" and (v is None or w is None):
            raise BadParameters("cut_split needs both V and W")
        self.field = field
        self.n = n
        self.name = name
        self.w = w
        self.v = v

    def key(self):
        return (
            self.field.p,
            self.field.r,
            self.n,
            self.name,
            self.w._key if self.w is not None else None,
            self.v._key if self.v is not None else None,
        )

    def top_degree(self) -> int:
        if self.name in ("tits", "split"):
            return self.n - 2
        if self.name in ("rel_tits", "rel_split"):
            return self.n - self.w.dim - 1
        if self.name == "dual_rel_tits":
            return self.w.dim - 1
        raise BadParameters(f"no uniform top degree for {self.name}")

    def __repr__(self):
        bits = [self.name, f"F_{self.field.q}^{self.n}"]
        if self.w is not None:
            bits.append(f"w={self.w.dim}")
        if self.v is not None:
            bits.append(f"v={self.v.dim}")
        return "Building(" + ", ".join(bits) + ")"


def subspace_sort_key(label):
    if isinstance(label, tuple):
        return tuple(s.sort_key() for s in label)
    return label.sort_key()


def _splittings(field, n, first_filter=None, second_filter=None, ambient: Subspace | None = None):
    """Ordered pairs (V0, V1) of nonzero subspaces with V0 (+) V1 = ambient."""
    if ambient is None:
        ambient = Subspace.full(field, n)
    inside = [
        s
        for k in range(1, ambient.dim)
        for s in enumerate_subspaces(field, n, k)
        if _contained(s, ambient)
    ]
    out = []
    for v0 in inside:
        if first_filter is not None and not first_filter(v0):
            continue
        for v1 in inside:
            if v0.dim + v1.dim != ambient.dim:
                continue
            if second_filter is not None and not second_filter(v1):
                continue
            if _meets_trivially(v0, v1):
                out.append((v0, v1))
    return out


def _split_less(x, y):
    # (V0, V1) < (V0', V1'): V0' strictly inside V0, V1 inside V1'
    return x != y and _contained(y[0], x[0]) and _contained(x[1], y[1])


def build(kind: BuildingKind, cap: int = BUILDING_CAP) -> Poset:
    """The building as a poset with Subspace or splitting-pair labels."""
    cached = _cache_get(kind.key())
    if cached is not None:
        return cached
    field, n = kind.field, kind.n
    name = kind.name
    if name == "tits":
        labels = all_proper_nonzero_subspaces(field, n)
        less = lambda a, b: a != b and _contained(a, b)
    elif name == "rel_tits":
        labels = [s for s in all_proper_nonzero_subspaces(field, n) if _meets_trivially(s, kind.w)]
        less = lambda a, b: a != b and _contained(a, b)
    elif name == "dual_rel_tits":
        wcodes = vector_codes(kind.w)
        full = field.q**n
        labels = [
            s
            for s in all_proper_nonzero_subspaces(field, n)
            if len(vector_codes(s)) * len(wcodes) // len(vector_codes(s) & wcodes) == full
        ]
        less = lambda a, b: a != b and _contained(a, b)
    elif name == "split":
        labels = _splittings(field, n)
        less = _split_less
    elif name == "rel_split":
        labels = _splittings(field, n, second_filter=lambda v1: _contained(kind.w, v1))
        less = _split_less
    elif name == "cut_split":
        labels = _splittings(
            field,
            n,
            first_filter=lambda a: _contained(a, kind.v),
            second_filter=None if kind.w.dim == 0 else (lambda b: _contained(kind.w, b)),
        )
        less = _split_less
    else:
        raise BadParameters(name)
    if len(labels) > cap:
        raise TooLarge(f"{kind} has {len(labels)} elements")
    poset = Poset.from_labels(labels, less, sort_key=subspace_sort_key, check=False)
    _cache_put(kind.key(), poset)
    return poset


def cut_split_poset(field, n, v: Subspace, w: Subspace, ambient: Subspace | None = None,
                    cap: int = BUILDING_CAP) -> Poset:
    """Splittings (A, B) of `ambient` with A <= v and w <= B."""
    labels = _splittings(
        field,
        n,
        first_filter=lambda a: _contained(a, v),
        second_filter=None if w.dim == 0 else (lambda b: _contained(w, b)),
        ambient=ambient,
    )
    if len(labels) > cap:
        raise TooLarge(f"cut split has {len(labels)} elements")
    return Poset.from_labels(labels, _split_less, sort_key=subspace_sort_key, check=False)


# dim(V0+V1) via |V0||V1|/|V0 /\ V1| in the dual_rel filter needs exact division;
# the quotient above is integral because all sizes are powers of q.


def betti_profile(kind: BuildingKind, p: int = 2) -> BettiProfile:
    cached = _cache_get(kind.key() + (p,))
    if cached is not None:
        return cached
    profile = order_complex(build(kind), p).betti()
    _cache_put(kind.key() + (p,), profile)
    return profile


def sphericality_report(kind: BuildingKind, p: int = 2) -> dict:
    """Assert homology concentrated in the kind's top degree; return it."""
    top = kind.top_degree()
    profile = betti_profile(kind, p)
    return {
        "kind": repr(kind),
        "top_degree": top,
        "concentrated": profile.concentrated_in(top),
        "top_betti": profile[top],
        "profile": dict(profile.betti),
    }


def join_decomposition_check(field: FieldSpec, n: int, w: Subspace, l: Subspace, p: int = 2) -> dict:
    """Betti consequence of decomposing the dual-relative poset along a line of W.

    The top homology of the poset for (P, W) factors as the product of the top
    homologies for (P/L, W/L) and (P, L): joins multiply top Betti numbers and
    add one to the degree.
    """
    if n < 2 or w.dim == 0 or w.dim == n or l.dim != 1 or not _contained(l, w):
        raise BadParameters("need 0 < W < P proper, L a line inside W")
    wdim = w.dim
    lhs = betti_profile(BuildingKind(field, n, "dual_rel_tits", w=w), p)[wdim - 1]
    # quotient data: P/L with the image of W
    Q = l.quotient_map()
    w_bar = w.image_under(Q)
    if w_bar.dim == 0:
        quot_betti = 1  # empty poset contributes its (-1)-sphere class
    else:
        quot_kind = BuildingKind(field, n - 1, "dual_rel_tits", w=w_bar)
        quot_betti = betti_profile(quot_kind, p)[wdim - 2]
    line_betti = betti_profile(BuildingKind(field, n, "dual_rel_tits", w=l), p)[0]
    return {
        "lhs": lhs,
        "rhs": quot_betti * line_betti,
        "factors": (quot_betti, line_betti),
        "equal": lhs == quot_betti * line_betti,
    }


def dualize_building(field: FieldSpec, n: int, w: Subspace) -> dict:
    """The annihilator map rel_tits(P|W) -> dual_rel_tits(P|W deg), certified
    to be an order-reversing bijection."""
    src = build(BuildingKind(field, n, "rel_tits", w=w))
    dst = build(BuildingKind(field, n, "dual_rel_tits", w=w.annihilator()))
    mapping = {}
    for label in src.labels:
        img = label.annihilator()
        assert img in dst.index, "annihilator left the target poset"
        mapping[label] = img
    assert len(set(mapping.values())) == len(src.labels) == len(dst.labels)
    for a in src.labels:
        for b in src.labels:
            if a != b and _contained(a, b):
                assert _contained(mapping[b], mapping[a]), "order reversal failed"
    return {"size": len(src.labels), "mapping": mapping}


def cutting_down_iso(field: FieldSpec, n: int, v: Subspace, w: Subspace) -> dict:
    """The isomorphism of cut splittings onto a complement of W containing V.

    Records W so the inverse (A', B') -> (A', B' + W) is well-defined; both
    directions are checked to be mutually inverse and order-preserving.
    """
    if v.dim == 0 or w.dim == 0 or v.intersection(w).dim != 0:
        raise BadParameters("need nonzero V, W meeting trivially")
    if v.sum(w).dim == n:
        raise PreconditionFailed("V (+) W is everything: the cut poset is a cone")
    c = complement_containing(w, v)
    src = cut_split_poset(field, n, v, w)
    dst = cut_split_poset(field, n, v, Subspace.zero(field, n), ambient=c)

    fwd = {}
    for a, b in src.labels:
        img = (a, b.intersection(c))
        assert img in dst.index, "forward image missed the target"
        fwd[(a, b)] = img
    bwd = {}
    for a, b in dst.labels:
        img = (a, b.sum(w))
        assert img in src.index, "inverse image missed the source"
        bwd[(a, b)] = img
    assert all(bwd[fwd[x]] == x for x in fwd)
    assert all(fwd[bwd[y]] == y for y in bwd)
    for x in src.labels:
        for y in src.labels:
            if x != y and _split_less(x, y):
                assert _split_less(fwd[x], fwd[y]), "order not preserved"
    for x in dst.labels:
        for y in dst.labels:
            if x != y and _split_less(x, y):
                assert _split_less(bwd[x], bwd[y]), "inverse order not preserved"
    return {"complement": c, "size": len(src.labels)}


def ordered_decompositions(field, n, parts: int, ambient: Subspace | None = None):
    """Ordered tuples of `parts` nonzero subspaces whose direct sum is the ambient."""
    if ambient is None:
        ambient = Subspace.full(field, n)
    inside = [
        s
        for k in range(1, ambient.dim + 1)
        for s in enumerate_subspaces(field, n, k)
        if _contained(s, ambient)
    ]
    out = []

    def rec(sofar, span_dim, span_codes):
        if len(sofar) == parts:
            if span_dim == ambient.dim:
                out.append(tuple(sofar))
            return
        remaining = parts - len(sofar)
        for s in inside:
            if span_dim + s.dim > ambient.dim - (remaining - 1):
                continue
            if len(span_codes & vector_codes(s)) != 1:
                continue
            rec(sofar + [s], span_dim + s.dim, frozenset(
                _encode(field, field.add(_decode(field, a, n), _decode(field, b, n)))
                for a in span_codes
                for b in vector_codes(s)
            ))

    rec([], 0, frozenset({0}))
    out.sort(key=lambda t: tuple(s.sort_key() for s in t))
    return out


def split_semisimplicial(field, n: int):
    """The splitting complex as a semisimplicial set: p-simplices are ordered
    decompositions into p+2 nonzero parts, faces merge adjacent parts."""
    from .complexes import SemisimplicialSet

    levels = []
    for p in range(0, n - 1):
        levels.append(ordered_decompositions(field, n, p + 2))
    index = [{t: i for i, t in enumerate(level)} for level in levels]
    faces = {}
    for p in range(1, len(levels)):
        fp = []
        for simplex in levels[p]:
            row = []
            for i in range(p + 1):
                merged = simplex[:i] + (simplex[i].sum(simplex[i + 1]),) + simplex[i + 2 :]
                row.append(index[p - 1][merged])
            fp.append(tuple(row))
        faces[p] = fp
    return SemisimplicialSet(levels, faces)


def relabel_is_automorphism(poset: Poset, mat, apply_label) -> bool:
    """Whether relabeling by a group element permutes the poset compatibly."""
    try:
        perm = [poset.index[apply_label(mat, l)] for l in poset.labels]
    except KeyError:
        return False
    if len(set(perm)) != len(perm):
        return False
    for i in range(len(poset)):
        im = 0
        for j in _iter_bits(poset.up[i]):
            im |= 1 << perm[j]
        if im != poset.up[perm[i]]:
            return False
    return True


def apply_to_label(mat, label):
    if isinstance(label, tuple):
        return tuple(s.apply_matrix(mat) for s in label)
    return label.apply_matrix(mat)


def _iter_bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


# ---------------------------------------------------------------------------
# cache: in-memory always, on-disk when FLAGFORGE_CACHE is set

_MEM_CACHE: dict = {}


def _cache_dir():
    return os.environ.get("FLAGFORGE_CACHE")


def _cache_get(key):
    if key in _MEM_CACHE:
        return _MEM_CACHE[key]
    d = _cache_dir()
    if d:
        path = os.path.join(d, _key_filename(key))
        if os.path.exists(path):
            with open(path, "rb") as fh:
                obj = pickle.load(fh)
            _MEM_CACHE[key] = obj
            return obj
    return None


def _cache_put(key, obj):
    _MEM_CACHE[key] = obj
    d = _cache_dir()
    if d:
        os.makedirs(d, exist_ok=True)
        path = os.path.join(d, _key_filename(key))
        fd, tmp = tempfile.mkstemp(dir=d)
        with os.fdopen(fd, "wb") as fh:
            pickle.dump(obj, fh)
        os.replace(tmp, path)  # atomic under concurrent writers


def _key_filename(key):
    import hashlib

    h = hashlib.sha256(repr(key).encode()).hexdigest()[:24]
    return f"bldg_{h}.pkl"


def clear_memory_cache():
    _MEM_CACHE.clear()
    _VECSET_CACHE.clear()
