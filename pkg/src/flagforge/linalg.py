"""Sparse exact rank/kernel computation over prime fields.

Boundary and bar matrices arrive column by column; elimination is streaming,
so memory stays O(rank x rowdim).  Over F_2 a column is a Python int bitset
(word-parallel XOR); over odd primes a column is a numpy vector.  Rank-only
jobs stream along the shorter axis, since rank(A) = rank(A^T) and the cost is
(#streamed columns) x (#pivots) vector operations.
"""

from __future__ import annotations

import numpy as np

from .errors import ResourceCapExceeded

DEFAULT_NNZ_CAP = 600_000_000
DEFAULT_DIM_CAP = 8_000_000


class F2Echelon:
    """Streaming echelon form over F_2 with optional combination tracking."""

    def __init__(self, nrows: int, track: bool = False):
        self.nrows = nrows
        self.track = track
        self.pivots: dict[int, int] = {}
        self.combos: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int, combo: int = 0):
        pivots = self.pivots
        combos = self.combos
        while v:
            h = v.bit_length() - 1
            w = pivots.get(h)
            if w is None:
                return v, combo
            v ^= w
            if self.track:
                combo ^= combos[h]
        return v, combo

    def add(self, v: int, combo: int = 0):
        """Insert a column; returns the kernel combination if v was dependent."""
        v, combo = self.reduce(v, combo)
        if v:
            h = v.bit_length() - 1
            self.pivots[h] = v
            if self.track:
                self.combos[h] = combo
            return None
        return combo

    def reduce_full(self, v: int) -> int:
        """Canonical representative of v modulo the span: no bit remains at any
        pivot position, so the map is linear (unlike the early-stopping reduce)."""
        for h in sorted(self.pivots, reverse=True):
            if (v >> h) & 1:
                v ^= self.pivots[h]
        return v


class FpEchelon:
    """Streaming echelon form over F_p (p an odd prime) with numpy columns."""

    def __init__(self, p: int, nrows: int, track: bool = False):
        self.p = p
        self.nrows = nrows
        self.track = track
        self.pivot_pos: dict[int, int] = {}
        self.rows: list[np.ndarray] = []
        self.combo_rows: list[np.ndarray] = []
        self.ncols_seen = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v, combo=None):
        p = self.p
        v = np.asarray(v, dtype=np.int64) % p
        while True:
            nz = np.flatnonzero(v)
            if nz.size == 0:
                return v, combo
            pos = int(nz[0])
            idx = self.pivot_pos.get(pos)
            if idx is None:
                return v, combo
            c = int(v[pos])
            v = (v - c * self.rows[idx]) % p
            if self.track and combo is not None:
                combo = (combo - c * self.combo_rows[idx]) % p

    def add(self, v, combo=None):
        v, combo = self.reduce(v, combo)
        nz = np.flatnonzero(v)
        if nz.size:
            pos = int(nz[0])
            inv = pow(int(v[pos]), -1, self.p)
            self.pivot_pos[pos] = len(self.rows)
            self.rows.append((v * inv) % self.p)
            if self.track and combo is not None:
                self.combo_rows.append((combo * inv) % self.p)
            return None
        # dependent: always return a non-None witness, even untracked
        return combo if combo is not None else 0

    def reduce_full(self, v):
        """Canonical representative mod the span; linear in v."""
        v = np.asarray(v, dtype=np.int64) % self.p
        for pos in sorted(self.pivot_pos):
            c = int(v[pos])
            if c:
                v = (v - c * self.rows[self.pivot_pos[pos]]) % self.p
        return v


def _columns_to_ints(nrows, columns):
    for col in columns:
        v = 0
        for r, c in col:
            if c % 2:
                v ^= 1 << r
        yield v


def sparse_rank(p: int, nrows: int, columns, ncols=None, nnz_cap=DEFAULT_NNZ_CAP):
    """Exact rank of a sparse matrix given as columns of (row, coeff) pairs.

    `columns` may be any iterable; it is consumed once.  For F_2 and a wide
    matrix the stream is transposed first so elimination runs along the
    shorter side.
    """
    if nrows > DEFAULT_DIM_CAP:
        raise ResourceCapExceeded(f"{nrows} rows")
    columns = list(columns) if not isinstance(columns, list) else columns
    ncols = len(columns)
    nnz = sum(len(c) for c in columns)
    if nnz > nnz_cap:
        raise ResourceCapExceeded(f"nnz {nnz} exceeds cap {nnz_cap}")
    if p == 2:
        if ncols > 4 * nrows and ncols > 4096:
            # transpose: build row bitsets over column indices, stream those
            rows = [0] * nrows
            for j, col in enumerate(columns):
                bit = 1 << j
                for r, c in col:
                    if c % 2:
                        rows[r] ^= bit
            ech = F2Echelon(ncols)
            for v in rows:
                if v:
                    ech.add(v)
            return ech.rank
        ech = F2Echelon(nrows)
        for v in _columns_to_ints(nrows, columns):
            if v:
                ech.add(v)
        return ech.rank
    ech = FpEchelon(p, nrows)
    for col in columns:
        v = np.zeros(nrows, dtype=np.int64)
        for r, c in col:
            v[r] = (v[r] + c) % p
        if v.any():
            ech.add(v)
    return ech.rank


def sparse_kernel(p: int, nrows: int, columns):
    """Basis of {x : sum_j x_j col_j = 0} as dense numpy vectors of length ncols."""
    columns = list(columns)
    ncols = len(columns)
    out = []
    if p == 2:
        ech = F2Echelon(nrows, track=True)
        for j, col in enumerate(columns):
            v = 0
            for r, c in col:
                if c % 2:
                    v ^= 1 << r
            combo = ech.add(v, 1 << j)
            if combo is not None:
                vec = np.zeros(ncols, dtype=np.uint8)
                for b in _bits(combo):
                    vec[b] = 1
                out.append(vec)
        return out
    ech = FpEchelon(p, nrows, track=True)
    for j, col in enumerate(columns):
        v = np.zeros(nrows, dtype=np.int64)
        for r, c in col:
            v[r] = (v[r] + c) % p
        combo = np.zeros(ncols, dtype=np.int64)
        combo[j] = 1
        combo = ech.add(v, combo)
        if combo is not None:
            out.append((combo % p).astype(np.uint8))
    return out


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def dense_rank_oracle(p: int, A) -> int:
    """Plain dense row reduction, used as the independent rank oracle."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    rank = 0
    for j in range(cols):
        sel = None
        for i in range(rank, rows):
            if A[i, j]:
                sel = i
                break
        if sel is None:
            continue
        A[[rank, sel]] = A[[sel, rank]]
        inv = pow(int(A[rank, j]), -1, p)
        A[rank] = A[rank] * inv % p
        for i in range(rows):
            if i != rank and A[i, j]:
                A[i] = (A[i] - A[i, j] * A[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def columns_from_dense(A):
    A = np.asarray(A)
    return [
        [(i, int(A[i, j])) for i in range(A.shape[0]) if A[i, j]]
        for j in range(A.shape[1])
    ]


def kernel_vectors_dense(p: int, A):
    """Right-kernel basis of a dense matrix over F_p as a list of vectors."""
    return sparse_kernel(p, A.shape[0], columns_from_dense(np.asarray(A)))
