"""Finite posets, order complexes, semisimplicial sets, and reduced homology.

All homology is reduced (the empty chain sits in degree -1) and taken over a
prime coefficient field.  Boundary signs are the alternating omit-a-vertex
convention; over F_2 they are irrelevant but they are always recorded so odd
primes work unchanged.
"""

from __future__ import annotations

import numpy as np

from .errors import FaceIdentityViolation, HypothesisFailed, NotMonotone, TooManyFlags
from .linalg import sparse_rank

FLAG_CAP = 4_000_000


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class Poset:
    """A finite strict poset; the full relation is held as bitmasks."""

    def __init__(self, labels, up_masks, check=True):
        self.labels = list(labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        assert len(self.index) == len(self.labels), "duplicate labels"
        self.up = list(up_masks)  # up[i] = bitmask of j with labels[i] < labels[j]
        if check:
            self._verify()

    @classmethod
    def from_labels(cls, labels, less, sort_key=None, check=True):
        """Build from a comparison callable; labels get a deterministic order."""
        labels = sorted(labels, key=sort_key) if sort_key else list(labels)
        n = len(labels)
        up = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and less(labels[i], labels[j]):
                    up[i] |= 1 << j
        return cls(labels, up, check=check)

    def _verify(self):
        n = len(self.labels)
        for i in range(n):
            if (self.up[i] >> i) & 1:
                raise AssertionError("relation not irreflexive")
            for j in _bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    raise AssertionError("relation not transitive")

    def __len__(self):
        return len(self.labels)

    def less(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def opposite(self) -> "Poset":
        n = len(self.labels)
        down = [0] * n
        for i in range(n):
            for j in _bits(self.up[i]):
                down[j] |= 1 << i
        return Poset(self.labels, down, check=False)

    def subposet(self, indices) -> "Poset":
        indices = list(indices)
        pos = {old: new for new, old in enumerate(indices)}
        up = []
        for old in indices:
            m = 0
            for j in _bits(self.up[old]):
                if j in pos:
                    m |= 1 << pos[j]
            up.append(m)
        return Poset([self.labels[i] for i in indices], up, check=False)

    def chains(self, max_dim=None, cap=FLAG_CAP):
        """Strictly increasing chains per dimension; chains[d] has length d+1 tuples."""
        n = len(self.labels)
        levels = [[(i,) for i in range(n)]]
        while True:
            if max_dim is not None and len(levels) > max_dim:
                break
            nxt = []
            for chain in levels[-1]:
                for j in _bits(self.up[chain[-1]]):
                    nxt.append(chain + (j,))
            if not nxt:
                break
            if len(nxt) > cap:
                raise TooManyFlags(f"{len(nxt)} chains in dimension {len(levels)}")
            nxt.sort()
            levels.append(nxt)
        return levels

    def has_cone_point(self) -> bool:
        """True when the poset has a maximum or minimum element."""
        n = len(self.labels)
        if n == 0:
            return False
        full = (1 << n) - 1
        has_min = any(self.up[i] | (1 << i) == full for i in range(n))
        above_counts = [0] * n
        for i in range(n):
            for j in _bits(self.up[i]):
                above_counts[j] += 1
        has_max = any(
            above_counts[m] == n - 1 and self.up[m] == 0 for m in range(n)
        )
        return has_min or has_max


class BettiProfile:
    """Reduced Betti numbers b_d, d >= -1."""

    def __init__(self, betti: dict, dims: dict):
        self.betti = dict(betti)
        self.dims = dict(dims)

    def __getitem__(self, d: int) -> int:
        return self.betti.get(d, 0)

    def concentrated_in(self, top: int) -> bool:
        return all(b == 0 for d, b in self.betti.items() if d != top)

    def euler(self) -> int:
        return sum((-1) ** d * b for d, b in self.betti.items())

    def __repr__(self):
        return f"BettiProfile({self.betti})"


class ChainComplex:
    """A chain complex over F_p given by sparse boundary columns.

    dims[d] is the rank of C_d; boundaries[d] maps C_d -> C_{d-1}, one column
    of (row, coeff) pairs per basis element of C_d.
    """

    def __init__(self, p: int, dims: dict, boundaries: dict, check=True):
        self.p = p
        self.dims = dict(dims)
        self.boundaries = boundaries
        if check and max(self.dims.values(), default=0) <= 20000:
            self.verify_dd()

    def verify_dd(self):
        for d, cols in self.boundaries.items():
            lower = self.boundaries.get(d - 1)
            if lower is None:
                continue
            for col in cols:
                acc = {}
                for r, c in col:
                    for r2, c2 in lower[r]:
                        acc[r2] = (acc.get(r2, 0) + c * c2) % self.p
                assert not any(acc.values()), f"dd != 0 in degree {d}"

    def rank_of_boundary(self, d: int) -> int:
        cols = self.boundaries.get(d)
        if cols is None or self.dims.get(d - 1, 0) == 0 or not cols:
            return 0
        return sparse_rank(self.p, self.dims[d - 1], cols)

    def betti(self) -> BettiProfile:
        ranks = {d: self.rank_of_boundary(d) for d in self.boundaries}
        out = {}
        for d, dim in self.dims.items():
            out[d] = dim - ranks.get(d, 0) - ranks.get(d + 1, 0)
            assert out[d] >= 0
        profile = BettiProfile(out, self.dims)
        chi_dims = sum((-1) ** d * n for d, n in self.dims.items())
        assert profile.euler() == chi_dims, "Euler characteristic mismatch"
        return profile


def order_complex(poset: Poset, p: int = 2, cap=FLAG_CAP) -> ChainComplex:
    """Reduced chain complex of the nerve of a poset over F_p."""
    levels = poset.chains(cap=cap)
    dims = {-1: 1}
    index = {}
    for d, level in enumerate(levels):
        dims[d] = len(level)
        index[d] = {chain: i for i, chain in enumerate(level)}
    boundaries = {}
    if 0 in dims:
        boundaries[0] = [[(0, 1)] for _ in range(dims[0])]
    for d in range(1, len(levels)):
        cols = []
        for chain in levels[d]:
            col = []
            for i in range(d + 1):
                face = chain[:i] + chain[i + 1 :]
                col.append((index[d - 1][face], (-1) ** i % p))
            cols.append(col)
        boundaries[d] = cols
    return ChainComplex(p, dims, boundaries)


def is_spherical(complex_or_profile, top: int) -> bool:
    """True when reduced homology is concentrated in the given degree.

    A contractible complex passes for every `top` (the empty wedge).
    """
    profile = complex_or_profile
    if isinstance(profile, ChainComplex):
        profile = profile.betti()
    return profile.concentrated_in(top)


class SemisimplicialSet:
    """Levelwise simplices with face maps d_i, checked for the face identities."""

    def __init__(self, levels, faces):
        # levels[p]: list of labels; faces[p][s] = tuple of indices d_0..d_p into level p-1
        self.levels = levels
        self.faces = faces
        self._verify()

    def _verify(self):
        for pdim in range(2, len(self.levels)):
            fp = self.faces[pdim]
            fq = self.faces[pdim - 1]
            for s in range(len(self.levels[pdim])):
                for j in range(1, pdim + 1):
                    for i in range(j):
                        # d_i d_j = d_{j-1} d_i
                        lhs = fq[fp[s][j]][i]
                        rhs = fq[fp[s][i]][j - 1]
                        if lhs != rhs:
                            raise FaceIdentityViolation(
                                f"d_{i} d_{j} != d_{j-1} d_{i} at simplex {s} of level {pdim}"
                            )

    def chain_complex(self, p: int = 2) -> ChainComplex:
        dims = {-1: 1}
        for d, level in enumerate(self.levels):
            dims[d] = len(level)
        boundaries = {}
        if self.levels:
            boundaries[0] = [[(0, 1)] for _ in range(len(self.levels[0]))]
        for d in range(1, len(self.levels)):
            cols = []
            for s in range(len(self.levels[d])):
                acc = {}
                for i, target in enumerate(self.faces[d][s]):
                    acc[target] = (acc.get(target, 0) + (-1) ** i) % p
                cols.append([(r, c) for r, c in sorted(acc.items()) if c])
            boundaries[d] = cols
        return ChainComplex(p, dims, boundaries)


class PosetMap:
    """An order-preserving map of posets, stored on element indices."""

    def __init__(self, src: Poset, dst: Poset, mapping):
        self.src = src
        self.dst = dst
        self.mapping = list(mapping)
        for i in range(len(src)):
            fi = self.mapping[i]
            for j in _bits(src.up[i]):
                fj = self.mapping[j]
                if fi != fj and not dst.less(fi, fj):
                    raise NotMonotone(f"{src.labels[i]} < {src.labels[j]} not preserved")

    @classmethod
    def from_function(cls, src: Poset, dst: Poset, fn):
        return cls(src, dst, [dst.index[fn(l)] for l in src.labels])

    def fiber_below(self, y: int) -> Poset:
        """The subposet f_{<=y} of the source."""
        keep = [i for i in range(len(self.src)) if self.mapping[i] == y or self.dst.less(self.mapping[i], y)]
        return self.src.subposet(keep)

    def strictly_above(self, y: int) -> Poset:
        keep = list(_bits(self.dst.up[y]))
        return self.dst.subposet(keep)


def poset_map_fibers(f: PosetMap, y_label):
    y = f.dst.index[y_label]
    return f.fiber_below(y), f.strictly_above(y)


def filtration_identity_check(f: PosetMap, t_values, n_top: int, p: int = 2):
    """Verify the spherical-fibration bookkeeping identity for a poset map.

    t_values maps dst labels to integers.  Hypotheses checked: the target is
    n_top-spherical, each fiber f_{<=y} is (n_top - t(y))-spherical, and each
    upper interval above y is (t(y)-1)-spherical.  On success returns a report
    with both sides of

        b_n(X) = b_n(Y) + sum_y  b_{t(y)-1}(Y_{>y}) * b_{n-t(y)}(f_{<=y}).
    """
    X, Y = f.src, f.dst
    bY = order_complex(Y, p).betti()
    if not bY.concentrated_in(n_top):
        raise HypothesisFailed("target spherical", None)
    rhs = bY[n_top]
    contributions = []
    for y in range(len(Y)):
        t = t_values[Y.labels[y]]
        fiber = f.fiber_below(y)
        above = f.strictly_above(y)
        b_fiber = order_complex(fiber, p).betti()
        b_above = order_complex(above, p).betti()
        if not b_fiber.concentrated_in(n_top - t):
            raise HypothesisFailed("fiber spherical", Y.labels[y])
        if not b_above.concentrated_in(t - 1):
            raise HypothesisFailed("upper interval spherical", Y.labels[y])
        term = b_above[t - 1] * b_fiber[n_top - t]
        if term:
            contributions.append((Y.labels[y], term))
        rhs += term
    bX = order_complex(X, p).betti()
    if not bX.concentrated_in(n_top):
        raise HypothesisFailed("source spherical", None)
    lhs = bX[n_top]
    return {
        "lhs": lhs,
        "rhs": rhs,
        "target": bY[n_top],
        "contributions": contributions,
        "equal": lhs == rhs,
    }
