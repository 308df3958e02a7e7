"""Exact arithmetic in F_{p^r} and dense linear algebra over it.

Field elements are integer codes 0..q-1.  For a prime field the code is the
residue; for an extension field the code packs the coefficient vector of the
representative polynomial in base p (low degree first), taken modulo a fixed
irreducible modulus.  The modulus is the lexicographically least monic
irreducible of degree r, coefficients compared low-degree-first, so a field is
reproducible from (p, r) alone.

Matrices are numpy arrays of codes; vectors are rows, and subspaces are stored
as reduced-row-echelon bases, which makes subspace equality representational.
Group elements elsewhere act on column vectors, so a subspace with row basis B
moves by g as rref(B @ g^T).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import AmbientMismatch, FieldTooLarge, NotPrime, TooManySubspaces

FIELD_CAP = 1 << 16
SUBSPACE_CAP = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mul_mod(a, b, modulus, p):
    """Multiply coefficient tuples mod (modulus, p); modulus monic, low-first."""
    r = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for i in range(len(out) - 1, r - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(r):
                out[i - r + j] = (out[i - r + j] - c * modulus[j]) % p
    out = out[:r]
    out += [0] * (r - len(out))
    return tuple(out)


def _poly_is_irreducible(coeffs, p) -> bool:
    """Exhaustive check: no root for small degree, no factor in general.

    coeffs is monic, low-degree-first, degree = len(coeffs)-1.  Degrees here
    are tiny (q <= 2^16), so trial division by all lower-degree monics is fine.
    """
    r = len(coeffs) - 1
    if r == 1:
        return True
    # trial divide by monic polynomials of degree 1..r//2
    for d in range(1, r // 2 + 1):
        for code in range(p**d):
            div = _decode_poly(code, p, d) + (1,)
            if _poly_divides(div, coeffs, p):
                return False
    return True


def _poly_divides(div, poly, p) -> bool:
    rem = list(poly)
    dd = len(div) - 1
    inv_lead = pow(div[-1], -1, p)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] * inv_lead % p
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * div[j]) % p
    return not any(rem[:dd])


def _decode_poly(code, p, r):
    out = []
    for _ in range(r):
        out.append(code % p)
        code //= p
    return tuple(out)


def _encode_poly(coeffs, p):
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


class FieldSpec:
    """The field F_{p^r} with a deterministically chosen modulus.

    Carries add/mul tables as numpy arrays so matrix arithmetic vectorizes.
    Instances are immutable and interned by (p, r).
    """

    def __init__(self, p: int, r: int, modulus):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = modulus  # monic, low-degree-first, length r+1
        self.dtype = np.uint8 if self.q <= 256 else np.uint16
        self._build_tables()

    def _build_tables(self):
        p, r, q = self.p, self.r, self.q
        # digit matrix: code -> coefficient vector
        digits = np.zeros((q, r), dtype=np.int64)
        for code in range(q):
            digits[code] = _decode_poly(code, p, r)
        self._digits = digits
        self._powers = p ** np.arange(r, dtype=np.int64)
        if r == 1:
            self._log = None
            self._exp = None
            return
        # discrete log tables relative to the least primitive element
        gen = self._find_generator()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        acc = 1
        for k in range(q - 1):
            exp[k] = acc
            log[acc] = k
            acc = self.mul_scalar(acc, gen)
        assert acc == 1 and sorted(exp) == list(range(1, q)), "generator order wrong"
        self._exp = exp
        self._log = log
        self.generator = gen

    def _find_generator(self):
        order = self.q - 1
        prime_factors = set()
        m, d = order, 2
        while d * d <= m:
            while m % d == 0:
                prime_factors.add(d)
                m //= d
            d += 1
        if m > 1:
            prime_factors.add(m)
        for cand in range(1, self.q):
            if all(self._pow_scalar(cand, order // f) != 1 for f in prime_factors):
                return cand
        raise AssertionError("no generator found")

    def _pow_scalar(self, a, e):
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self.mul_scalar(acc, base)
            base = self.mul_scalar(base, base)
            e >>= 1
        return acc

    # scalar ops ---------------------------------------------------------
    def add_scalar(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        da = _decode_poly(a, self.p, self.r)
        db = _decode_poly(b, self.p, self.r)
        return _encode_poly(tuple((x + y) % self.p for x, y in zip(da, db)), self.p)

    def neg_scalar(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        da = _decode_poly(a, self.p, self.r)
        return _encode_poly(tuple((-x) % self.p for x in da), self.p)

    def mul_scalar(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        da = _decode_poly(a, self.p, self.r)
        db = _decode_poly(b, self.p, self.r)
        return _encode_poly(_poly_mul_mod(da, db, self.modulus, self.p), self.p)

    def inv_scalar(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        if self.r == 1:
            return pow(a, -1, self.p)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    # vectorized ops (arrays of codes) ------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return ((a + b) % self.p).astype(self.dtype)
        s = (self._digits[a] + self._digits[b]) % self.p
        return (s @ self._powers).astype(self.dtype)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.r == 1:
            return ((-a) % self.p).astype(self.dtype)
        s = (-self._digits[a]) % self.p
        return (s @ self._powers).astype(self.dtype)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a * b % self.p).astype(self.dtype)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        if nz.any():
            k = (self._log[a[nz]] + self._log[b[nz]]) % (self.q - 1)
            out[nz] = self._exp[k]
        return out.astype(self.dtype)

    def matmul(self, A, B):
        """Matrix product of code matrices."""
        A = np.asarray(A)
        B = np.asarray(B)
        if self.r == 1:
            return (A.astype(np.int64) @ B.astype(np.int64) % self.p).astype(self.dtype)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=self.dtype)
        for k in range(A.shape[1]):
            out = self.add(out, self.mul(A[:, k : k + 1], B[k : k + 1, :]))
        return out

    def zeros(self, shape):
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n):
        return np.eye(n, dtype=self.dtype)

    def __repr__(self):
        return f"F_{self.q}" if self.r > 1 else f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))


@lru_cache(maxsize=None)
def field_make(p: int, r: int = 1) -> FieldSpec:
    """F_{p^r} with the lexicographically least monic irreducible modulus."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1 or p**r > FIELD_CAP:
        raise FieldTooLarge(f"p^r = {p}^{r} exceeds cap {FIELD_CAP}")
    for code in range(p**r):
        cand = _decode_poly(code, p, r) + (1,)
        if _poly_is_irreducible(cand, p):
            return FieldSpec(p, r, cand)
    raise AssertionError("no irreducible found")  # cannot happen


# ---------------------------------------------------------------------------
# dense matrix routines


def rref(field: FieldSpec, m):
    """Reduced row echelon form; returns (rref matrix, rank, pivot columns)."""
    A = np.array(m, dtype=field.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots = []
    rank = 0
    for j in range(cols):
        sel = None
        for i in range(rank, rows):
            if A[i, j]:
                sel = i
                break
        if sel is None:
            continue
        if sel != rank:
            A[[rank, sel]] = A[[sel, rank]]
        inv = field.inv_scalar(int(A[rank, j]))
        A[rank] = field.mul(A[rank], inv)
        for i in range(rows):
            if i != rank and A[i, j]:
                A[i] = field.add(A[i], field.mul(A[rank], field.neg_scalar(int(A[i, j]))))
        pivots.append(j)
        rank += 1
        if rank == rows:
            break
    return A, rank, tuple(pivots)


def kernel_basis(field: FieldSpec, m):
    """Row basis (in RREF) of the right kernel {x : m @ x^T = 0}."""
    A, rank, pivots = rref(field, m)
    cols = A.shape[1]
    free = [j for j in range(cols) if j not in pivots]
    basis = field.zeros((len(free), cols))
    for idx, j in enumerate(free):
        basis[idx, j] = 1
        for i, pj in enumerate(pivots):
            basis[idx, pj] = field.neg_scalar(int(A[i, j]))
    B, _, _ = rref(field, basis)
    return B


def inverse(field: FieldSpec, m):
    m = np.asarray(m)
    n = m.shape[0]
    aug = np.concatenate([m, field.eye(n)], axis=1)
    R, rank, _ = rref(field, aug)
    if rank < n:
        raise ZeroDivisionError("matrix not invertible")
    return R[:, n:].copy()


def solve_right(field: FieldSpec, A, B):
    """One solution X of A @ X = B, or None when inconsistent."""
    A = np.asarray(A)
    B = np.asarray(B)
    n, k = A.shape
    aug = np.concatenate([A, B.reshape(n, -1)], axis=1)
    R, rank, pivots = rref(field, aug)
    if any(p >= k for p in pivots):
        return None
    X = field.zeros((k, aug.shape[1] - k))
    for i, p in enumerate(pivots):
        X[p] = R[i, k:]
    return X


class Subspace:
    """A subspace of F_q^n held by its unique RREF row basis."""

    __slots__ = ("field", "n", "basis", "_key")

    def __init__(self, field: FieldSpec, n: int, basis):
        self.field = field
        self.n = n
        B = np.asarray(basis, dtype=field.dtype)
        if B.size == 0:
            B = field.zeros((0, n))
        B, rank, pivots = rref(field, B)
        B = B[:rank].copy()
        B.setflags(write=False)
        self.basis = B
        self._key = (field.p, field.r, n, B.tobytes())
        assert 0 <= self.dim <= n

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, field.zeros((0, n)))

    @classmethod
    def full(cls, field, n):
        return cls(field, n, field.eye(n))

    @classmethod
    def span(cls, field, vectors):
        vectors = np.asarray(vectors)
        return cls(field, vectors.shape[1], vectors)

    def _check_ambient(self, other: "Subspace"):
        if self.field != other.field or self.n != other.n:
            raise AmbientMismatch(f"{self} vs {other}")

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F_{self.field.q}^{self.n})"

    def sort_key(self):
        return (self.dim, self.basis.tobytes())

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        if other.dim > self.dim:
            return False
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        _, rank, _ = rref(self.field, stacked)
        return rank == self.dim

    def contains_vector(self, v) -> bool:
        stacked = np.concatenate([self.basis, np.asarray(v).reshape(1, self.n)], axis=0)
        _, rank, _ = rref(self.field, stacked)
        return rank == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.field, self.n, np.concatenate([self.basis, other.basis], axis=0))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.n)
        # rows (a | a) of the kernel of [B1; -B2]^T give common vectors a@B1
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        K = kernel_basis(self.field, stacked.T)
        coeffs = K[:, : self.dim]
        vecs = self.field.matmul(coeffs, self.basis)
        return Subspace(self.field, self.n, vecs)

    def complement(self) -> "Subspace":
        """Greedy complement over standard basis vectors, in order."""
        rows = [v for v in self.basis]
        base_dim = len(rows)
        out = []
        for j in range(self.n):
            e = self.field.zeros(self.n)
            e[j] = 1
            cand = np.array(rows + out + [e])
            _, rank, _ = rref(self.field, cand)
            if rank == base_dim + len(out) + 1:
                out.append(e)
        C = Subspace(self.field, self.n, np.array(out) if out else self.field.zeros((0, self.n)))
        assert C.dim + self.dim == self.n
        return C

    def annihilator(self) -> "Subspace":
        """W° under the standard bilinear form, as a subspace of F_q^n."""
        if self.dim == 0:
            return Subspace.full(self.field, self.n)
        return Subspace(self.field, self.n, kernel_basis(self.field, self.basis))

    def quotient_map(self):
        """A full-rank (n-dim)x(n) matrix Q acting on column vectors with kernel self."""
        C = self.complement()
        M = np.concatenate([C.basis, self.basis], axis=0)  # invertible rows
        Minv = inverse(self.field, M.T)  # maps column v to coords in (C, self) basis
        return Minv[: C.dim, :].copy()

    def apply_matrix(self, g) -> "Subspace":
        """Image under an invertible matrix acting on column vectors."""
        return Subspace(self.field, self.n, self.field.matmul(self.basis, np.asarray(g).T))

    def image_under(self, Q) -> "Subspace":
        """Image in the quotient/other space under a (m x n) column-vector map."""
        Q = np.asarray(Q)
        return Subspace(self.field, Q.shape[0], self.field.matmul(self.basis, Q.T))


def complement_containing(w: Subspace, v: Subspace) -> Subspace:
    """A complement C of w with v <= C, greedy over standard basis vectors.

    Requires v and w to intersect trivially.  Any e_i outside the running span
    of (C, w) extends C, so the greedy sweep always completes.
    """
    w._check_ambient(v)
    assert v.intersection(w).dim == 0, "v must meet w trivially"
    field, n = w.field, w.n
    fixed = [row for row in w.basis]
    out = [row for row in v.basis]
    for j in range(n):
        if len(out) == n - w.dim:
            break
        e = field.zeros(n)
        e[j] = 1
        cand = np.array(fixed + out + [e])
        _, rank, _ = rref(field, cand)
        if rank == len(fixed) + len(out) + 1:
            out.append(e)
    C = Subspace(field, n, np.array(out) if out else field.zeros((0, n)))
    assert C.dim == n - w.dim and C.contains(v)
    return C


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(field: FieldSpec, n: int, k: int):
    """All k-dimensional subspaces of F_q^n in deterministic RREF order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    count = gaussian_binomial(n, k, field.q)
    if count > SUBSPACE_CAP:
        raise TooManySubspaces(f"{count} subspaces of dim {k} in F_{field.q}^{n}")
    if k == 0:
        return [Subspace.zero(field, n)]
    out = []
    from itertools import combinations, product

    for pivots in combinations(range(n), k):
        free_pos = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivots
        ]
        for values in product(range(field.q), repeat=len(free_pos)):
            B = field.zeros((k, n))
            for i, p in enumerate(pivots):
                B[i, p] = 1
            for (i, j), v in zip(free_pos, values):
                B[i, j] = v
            out.append(Subspace(field, n, B))
    assert len(out) == count
    out.sort(key=lambda s: s.sort_key())
    return out


def all_proper_nonzero_subspaces(field: FieldSpec, n: int):
    out = []
    for k in range(1, n):
        out.extend(enumerate_subspaces(field, n, k))
    out.sort(key=lambda s: s.sort_key())
    return out
