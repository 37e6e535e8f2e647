"""Exact dense linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` integer arrays whose entries are kept reduced
into ``[0, p)``.  Pivoting is deterministic (leftmost column, topmost row) so
every canonical form computed downstream is reproducible.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

DTYPE = np.int64


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@lru_cache(maxsize=None)
def _inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=DTYPE)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def inv_scalar(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return int(_inverses(p)[a])


def as_mat(m, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``m`` to a reduced 2-d array (``shape`` is used for empty input)."""
    a = np.asarray(m, dtype=DTYPE)
    if a.size == 0 and shape is not None:
        return np.zeros(shape, dtype=DTYPE)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def as_cols(m, n: int) -> np.ndarray:
    """``m`` as an ``n``-row matrix of column vectors (safe for empty input)."""
    a = np.asarray(m, dtype=DTYPE)
    if a.ndim == 2 and a.shape[0] == n:
        return a
    if a.size == 0:
        return np.zeros((n, 0), dtype=DTYPE)
    return a.reshape(n, -1)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # int64 is safe: entries < p and inner dimension stays far below 2**40 / p**2
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of ``m`` over GF(p).

    Returns ``(R, rank, pivot_columns)``.
    """
    R = np.array(m, dtype=DTYPE) % p
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = R.shape
    inv = _inverses(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * inv[R[r, c]]) % p
        factors = R[:, c].copy()
        factors[r] = 0
        nzr = np.nonzero(factors)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(factors[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, len(pivots), pivots


def rank(m: np.ndarray, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return rref(m, p)[1]


def kernel_basis(m: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of ``{v : m v = 0}``; the free variables run over unit vectors."""
    m = np.asarray(m, dtype=DTYPE)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [v for v in eye(cols)]
    R, rk, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=DTYPE)
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-R[i, f]) % p
        basis.append(v)
    return basis


def kernel_matrix(m: np.ndarray, p: int) -> np.ndarray:
    """Kernel basis as the columns of a ``cols x nullity`` matrix."""
    basis = kernel_basis(m, p)
    cols = np.asarray(m).shape[1]
    if not basis:
        return zeros(cols, 0)
    return np.stack(basis, axis=1)


def solve(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``m x = b``, or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = np.asarray(m, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE).reshape(-1)
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError("right-hand side has length %d, expected %d" % (b.shape[0], rows))
    if rows == 0:
        return np.zeros(cols, dtype=DTYPE)
    aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
    R, rk, piv = rref(aug, p)
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=DTYPE)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return x


def solve_matrix(m: np.ndarray, B: np.ndarray, p: int) -> np.ndarray | None:
    """Solve ``m X = B`` column by column; ``None`` if any column fails."""
    m = np.asarray(m, dtype=DTYPE)
    B = np.asarray(B, dtype=DTYPE)
    cols = m.shape[1]
    if B.shape[1] == 0:
        return zeros(cols, 0)
    if m.shape[0] == 0:
        return zeros(cols, B.shape[1])
    aug = np.concatenate([m, B], axis=1)
    R, rk, piv = rref(aug, p)
    if any(pc >= cols for pc in piv):
        return None
    X = zeros(cols, B.shape[1])
    for i, pc in enumerate(piv):
        X[pc] = R[i, cols:]
    return X


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    m = np.asarray(m, dtype=DTYPE)
    n = m.shape[0]
    if m.shape != (n, n):
        return None
    if n == 0:
        return zeros(0, 0)
    R, rk, piv = rref(np.concatenate([m, eye(n)], axis=1), p)
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:]


def mat_pow(m: np.ndarray, k: int, p: int) -> np.ndarray:
    result = eye(m.shape[0])
    base = np.asarray(m, dtype=DTYPE) % p
    while k:
        if k & 1:
            result = mul(result, base, p)
        base = mul(base, base, p)
        k >>= 1
    return result


def column_space(m: np.ndarray, p: int) -> np.ndarray:
    """An rref-normalised basis of the column space, as columns."""
    m = np.asarray(m, dtype=DTYPE)
    if m.size == 0:
        return zeros(m.shape[0], 0)
    R, rk, _ = rref(m.T, p)
    return R[:rk].T.copy()


class Quotient:
    """Coordinates on ``F_p^n / W`` for a subspace ``W`` given by spanning columns.

    The complement basis is the set of unit vectors at the non-pivot
    positions of ``rref(W^T)``; :meth:`coords` reduces a vector against the
    pivot rows and reads off those positions.
    """

    def __init__(self, span: np.ndarray, n: int, p: int):
        self.p = p
        self.n = n
        span = as_cols(span, n)
        if span.shape[1] and n:
            R, rk, piv = rref(span.T, p)
            self.rows = R[:rk]
            self.pivots = piv
        else:
            self.rows = zeros(0, n)
            self.pivots = []
        pset = set(self.pivots)
        self.free = [i for i in range(n) if i not in pset]

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=DTYPE).reshape(-1) % self.p
        for i, pc in enumerate(self.pivots):
            if v[pc]:
                v = (v - v[pc] * self.rows[i]) % self.p
        return v

    def coords(self, v: np.ndarray) -> np.ndarray:
        return self.reduce(v)[self.free]

    def lift(self, c: np.ndarray) -> np.ndarray:
        v = np.zeros(self.n, dtype=DTYPE)
        v[self.free] = np.asarray(c, dtype=DTYPE) % self.p
        return v


def all_vectors(dim: int, p: int):
    """Every vector of ``F_p^dim`` in lexicographic order."""
    if dim == 0:
        yield np.zeros(0, dtype=DTYPE)
        return
    for idx in range(p**dim):
        v = np.zeros(dim, dtype=DTYPE)
        k = idx
        for i in range(dim - 1, -1, -1):
            v[i] = k % p
            k //= p
        yield v


def subspaces(n: int, max_dim: int, p: int):
    """All subspaces of ``F_p^n`` of dimension ``<= max_dim`` as rref row bases."""
    from itertools import combinations

    for d in range(0, min(n, max_dim) + 1):
        for piv in combinations(range(n), d):
            free_slots = [
                (i, c) for i in range(d) for c in range(piv[i] + 1, n) if c not in piv
            ]
            for vals in all_vectors(len(free_slots), p):
                B = zeros(d, n)
                for i, c in enumerate(piv):
                    B[i, c] = 1
                for (i, c), v in zip(free_slots, vals):
                    B[i, c] = v
                yield B
